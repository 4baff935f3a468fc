"""Tensor powers T^n F of a polynomial algebra and the symmetric tensors TS^n F.

A tensor term is an n-tuple of exponent tuples (one monomial per slot).  A
:class:`SymTensor` stores one coefficient per *orbit*: the key is the
graded-lex sorted tuple of monomials and stands for the sum of its distinct
arrangements, each arrangement counted once.  With this convention the
orbit of a multiset with multiplicities k_1..k_s is exactly the divided
power monomial gamma^{k_1}(m_1) * ... * gamma^{k_s}(m_s).
"""
import json

from . import kernels
from .errors import DegreeMismatch, GhilbError, IndexOutOfRange, NotSymmetric, RingMismatch
from .rings import grlex_key, monomial_str

__all__ = [
    "TensorElem",
    "SymTensor",
    "embed_factor",
    "tensor_mul",
    "nu_vector",
    "nu_vector_det",
    "orbit_expand",
    "orbit_compress",
    "is_sorted_key",
    "tensor_to_json",
    "tensor_from_json",
]


def is_sorted_key(key):
    return all(grlex_key(key[i]) <= grlex_key(key[i + 1]) for i in range(len(key) - 1))


def _sort_key(key):
    return tuple(sorted(key, key=grlex_key))


class _TermMap:
    """Shared arithmetic for tensors stored as ``{key: coeff}``."""

    __slots__ = ("ring", "n", "terms")

    def __init__(self, ring, n, terms):
        self.ring = ring
        self.n = n
        self.terms = terms

    @classmethod
    def from_terms(cls, ring, n, raw):
        red = ring.coeffs.reduce
        out = {}
        for k, c in raw.items():
            c = red(c)
            if c:
                out[k] = c
        return cls(ring, n, out)

    @classmethod
    def zero(cls, ring, n):
        return cls(ring, n, {})

    def _check(self, other):
        if type(other) is not type(self):
            raise GhilbError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"ambient rings differ: {self.ring} vs {other.ring}")
        if other.n != self.n:
            raise DegreeMismatch(f"degrees differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if other == 0:
            return self
        self._check(other)
        red = self.ring.coeffs.reduce
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = red(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return type(self)(self.ring, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.coeffs.reduce
        return type(self)(self.ring, self.n, {k: red(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        cr = self.ring.coeffs
        c = cr.coerce(c)
        red = cr.reduce
        out = {}
        if c:
            for k, v in self.terms.items():
                w = red(v * c)
                if w:
                    out[k] = w
        return type(self)(self.ring, self.n, out)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if type(other) is not type(self):
            return NotImplemented
        return self.ring == other.ring and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, self.ring, self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def sorted_items(self):
        return sorted(
            self.terms.items(), key=lambda kv: tuple(grlex_key(m) for m in kv[0]), reverse=True
        )

    def key_str(self, key):
        return [monomial_str(m, self.ring.names) for m in key]


class TensorElem(_TermMap):
    """Element of T^n F; keys are n-tuples of monomials."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, TensorElem):
            return tensor_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def permute(self, perm):
        """Move the factor in slot i to slot perm[i] (0-based)."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.n)):
            raise GhilbError(f"{perm} is not a permutation of {self.n} slots")
        out = {}
        for k, c in self.terms.items():
            nk = [None] * self.n
            for i, m in enumerate(k):
                nk[perm[i]] = m
            out[tuple(nk)] = c
        return TensorElem(self.ring, self.n, out)

    def symmetry_violation(self):
        """First adjacent transposition (i, i+1), 1-based, that does not fix self, or None."""
        for i in range(self.n - 1):
            for k, c in self.terms.items():
                swapped = k[:i] + (k[i + 1], k[i]) + k[i + 2:]
                if self.terms.get(swapped) != c:
                    return (i + 1, i + 2)
        return None

    def is_symmetric(self):
        return self.symmetry_violation() is None

    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.ring.coeffs.fmt
        parts = []
        for k, c in self.sorted_items():
            parts.append(f"{fmt(c)}*({' ⊗ '.join(self.key_str(k))})")
        return " + ".join(parts)

    __repr__ = __str__


class SymTensor(_TermMap):
    """Element of TS^n F (= Gamma^n F for free F) in orbit-sum form."""

    __slots__ = ()

    @property
    def orbits(self):
        return self.terms

    def __mul__(self, other):
        if isinstance(other, SymTensor):
            from .divided import internal_mul

            return internal_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def expand(self):
        return orbit_expand(self)

    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.ring.coeffs.fmt
        parts = []
        for k, c in self.sorted_items():
            parts.append(f"{fmt(c)}*{{{', '.join(self.key_str(k))}}}")
        return " + ".join(parts)

    __repr__ = __str__


def unit_tensor(ring, n):
    return TensorElem(ring, n, {((0,) * ring.nvars,) * n: ring.coeffs.one})


def embed_factor(f, j, n):
    """1 ⊗ ... ⊗ f ⊗ ... ⊗ 1 with f in slot j (1-based)."""
    if not 1 <= j <= n:
        raise IndexOutOfRange(f"slot {j} outside 1..{n}")
    one = (0,) * f.ring.nvars
    terms = {}
    for e, c in f.terms.items():
        key = [one] * n
        key[j - 1] = e
        terms[tuple(key)] = c
    return TensorElem(f.ring, n, terms)


def tensor_mul(u, v):
    """Componentwise (internal) product of T^n F."""
    u._check(v)
    raw = kernels.tensor_mul_terms(u.terms, v.terms)
    return TensorElem.from_terms(u.ring, u.n, raw)


def _permutations_with_sign(n):
    """All permutations of range(n) with their signs (Heap-free, via inversions)."""
    from itertools import permutations

    out = []
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        out.append((p, -1 if inv % 2 else 1))
    return out


def nu_vector(xs):
    """sum over sigma of sign(sigma) x_{sigma(1)} ⊗ ... ⊗ x_{sigma(n)}."""
    xs = list(xs)
    if not xs:
        raise GhilbError("norm vector needs at least one element")
    ring = xs[0].ring
    for x in xs:
        if x.ring != ring:
            raise RingMismatch("all entries must lie in the same ring")
    n = len(xs)
    red = ring.coeffs.reduce
    acc = {}
    for perm, sign in _permutations_with_sign(n):
        # multilinear expansion of x_{perm(0)} ⊗ ... ⊗ x_{perm(n-1)}
        partial = {(): sign}
        for slot in range(n):
            nxt = {}
            for k, c in partial.items():
                for e, d in xs[perm[slot]].terms.items():
                    nk = k + (e,)
                    nxt[nk] = nxt.get(nk, 0) + c * d
            partial = nxt
        for k, c in partial.items():
            acc[k] = acc.get(k, 0) + c
    return TensorElem.from_terms(ring, n, {k: red(c) for k, c in acc.items()})


def nu_vector_det(xs):
    """det(x_{i,[j]}) computed in T^n F by cofactor expansion along the first row."""
    xs = list(xs)
    if not xs:
        raise GhilbError("norm vector needs at least one element")
    n = len(xs)
    ring = xs[0].ring
    M = [[embed_factor(xs[i], j + 1, n) for j in range(n)] for i in range(n)]

    def cofactor(rows, cols):
        if not rows:
            return unit_tensor(ring, n)
        r = rows[0]
        total = TensorElem.zero(ring, n)
        for idx, c in enumerate(cols):
            sub = cofactor(rows[1:], cols[:idx] + cols[idx + 1:])
            term = tensor_mul(M[r][c], sub)
            total = total + term if idx % 2 == 0 else total - term
        return total

    return cofactor(tuple(range(n)), tuple(range(n)))


def _arrangements(key):
    """Distinct arrangements of a sorted key (each exactly once)."""
    ranks = []
    distinct = []
    for m in key:
        if not distinct or distinct[-1] != m:
            distinct.append(m)
        ranks.append(len(distinct) - 1)
    return [tuple(distinct[r] for r in perm) for perm in kernels.multiset_permutations(tuple(ranks))]


def orbit_expand(s):
    terms = {}
    for key, c in s.terms.items():
        for arr in _arrangements(key):
            terms[arr] = c
    return TensorElem(s.ring, s.n, terms)


def orbit_compress(u, check=True):
    """Inverse of orbit_expand; raises NotSymmetric if u is not fixed by all permutations."""
    if check:
        bad = u.symmetry_violation()
        if bad is not None:
            raise NotSymmetric(f"tensor is not symmetric: transposition {bad} moves it")
    return SymTensor(u.ring, u.n, {k: c for k, c in u.terms.items() if is_sorted_key(k)})


def symtensor_from_monomial_keys(ring, n, raw):
    """Build a SymTensor from keys in any slot order (sorted here)."""
    out = {}
    for k, c in raw.items():
        sk = _sort_key(k)
        out[sk] = out.get(sk, 0) + c
    return SymTensor.from_terms(ring, n, out)


# --- JSON ------------------------------------------------------------------

def tensor_to_json(t):
    """List of {tuple: [monomial strings], coeff: string} in canonical order."""
    fmt = t.ring.coeffs.fmt
    return [{"tuple": t.key_str(k), "coeff": fmt(c)} for k, c in t.sorted_items()]


def _parse_monomial(text, ring):
    p = ring.parse(text)
    if len(p.terms) != 1 or next(iter(p.terms.values())) != 1:
        raise GhilbError(f"{text!r} is not a monomial")
    return next(iter(p.terms))


def tensor_from_json(doc, ring, symmetric=True):
    if isinstance(doc, str):
        doc = json.loads(doc)
    terms = {}
    n = None
    for entry in doc:
        key = tuple(_parse_monomial(m, ring) for m in entry["tuple"])
        if n is None:
            n = len(key)
        elif len(key) != n:
            raise DegreeMismatch("tensor terms of different lengths")
        c = ring.coeffs.coerce(entry["coeff"])
        if symmetric:
            key = _sort_key(key)
        terms[key] = terms.get(key, 0) + c
    cls = SymTensor if symmetric else TensorElem
    return cls.from_terms(ring, n or 0, terms)
