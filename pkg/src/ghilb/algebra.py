"""Free finite-rank commutative algebras given by structure constants.

The base ring is a coefficient domain: a :class:`BaseRing`, or a
:class:`PolyRing` over one when the algebra depends on parameters
(``QQ[s][t]/(t^2 - s)``).  Coordinates are lists of base elements.
"""
import re
from itertools import product

from .errors import AlgebraValidationError, DegreeMismatch, DimensionMismatch, GhilbError, InputError
from .linalg import det
from .rings import BaseRing, PolyRing
from .tensor import SymTensor, is_sorted_key, orbit_expand

__all__ = ["FiniteAlgebra", "parse_base", "base_to_str", "mult_matrix", "charpoly", "discriminant", "sigma_canonical"]


def parse_base(text):
    """'QQ', 'GF(5)', 'ZZ' or with parameters 'QQ[s]' / 'QQ[s,u]'."""
    m = re.fullmatch(r"\s*([^\[\]]+?)\s*(?:\[([^\]]*)\])?\s*", text)
    if not m:
        raise InputError(f"cannot parse base {text!r}")
    ring = BaseRing.parse(m.group(1))
    if m.group(2) is None:
        return ring
    names = [v.strip() for v in m.group(2).split(",") if v.strip()]
    return PolyRing(ring, names) if names else ring


def base_to_str(base):
    if isinstance(base, BaseRing):
        return repr(base)
    return f"{base.coeffs!r}[{','.join(base.names)}]"


class FiniteAlgebra:
    """Commutative algebra free of rank n over ``base`` with e_i e_j = sum_k c[i][j][k] e_k.

    Construction checks commutativity, associativity on all triples and the
    unit; it is the only validation gate.
    """

    def __init__(self, base, constants, unit, names=None, validate=True):
        self.base = base
        self.n = len(unit)
        n = self.n
        coerce = base.coerce
        self.c = [[[coerce(constants[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
        self.unit = [coerce(u) for u in unit]
        self.names = tuple(names) if names else tuple(f"e{i + 1}" for i in range(n))
        self._alphabet = None
        self._norm_form = None
        self._slot_cache = {}
        if validate:
            self.validate()

    # --- construction helpers ---------------------------------------------
    @classmethod
    def from_table(cls, base, n, table, unit, names=None):
        """``table`` maps (i, j) (0-based) to a coordinate list; symmetric entries may be omitted."""
        zero = base.zero
        c = [[[zero] * n for _ in range(n)] for _ in range(n)]
        for (i, j), vec in table.items():
            c[i][j] = list(vec)
            c[j][i] = list(vec)
        return cls(base, c, unit, names)

    @classmethod
    def monogenic(cls, base, coeffs, var="t"):
        """base[t]/(t^n + a_{n-1} t^{n-1} + ... + a_0) with basis 1, t, ..., t^{n-1}.

        ``coeffs`` lists a_0 .. a_{n-1}.
        """
        n = len(coeffs)
        coeffs = [base.coerce(a) for a in coeffs]
        red = base.reduce

        def reduce_power(k):
            # coordinates of t^k
            vec = [base.zero] * n
            if k < n:
                vec[k] = base.one
                return vec
            prev = reduce_power(k - 1)
            # t * (sum v_i t^i) ; t^n = -sum a_i t^i
            out = [base.zero] + prev[:-1]
            top = prev[-1]
            return [red(o - top * a) for o, a in zip(out, coeffs)]

        table = {(i, j): reduce_power(i + j) for i in range(n) for j in range(i, n)}
        names = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, n)]
        unit = [base.one] + [base.zero] * (n - 1)
        return cls.from_table(base, n, table, unit, names=[_safe(nm) for nm in names])

    @classmethod
    def split(cls, base, n):
        """base^n with the idempotent basis."""
        table = {(i, i): [base.one if k == i else base.zero for k in range(n)] for i in range(n)}
        return cls.from_table(base, n, table, [base.one] * n)

    @classmethod
    def product(cls, *algebras):
        base = algebras[0].base
        n = sum(E.n for E in algebras)
        zero = base.zero
        c = [[[zero] * n for _ in range(n)] for _ in range(n)]
        unit = []
        off = 0
        for E in algebras:
            if E.base != base:
                raise GhilbError("factors must share a base")
            for i, j, k in product(range(E.n), repeat=3):
                c[off + i][off + j][off + k] = E.c[i][j][k]
            unit.extend(E.unit)
            off += E.n
        return cls(base, c, unit)

    # --- validation ---------------------------------------------------------
    def validate(self):
        n = self.n
        for i in range(n):
            for j in range(n):
                if self.c[i][j] != self.c[j][i]:
                    raise AlgebraValidationError(f"not commutative: e{i + 1}e{j + 1} != e{j + 1}e{i + 1}")
        basis = [self.basis_vector(i) for i in range(n)]
        for i, j, k in product(range(n), repeat=3):
            left = self.mul(self.c[i][j], basis[k])
            right = self.mul(basis[i], self.c[j][k])
            if left != right:
                raise AlgebraValidationError(
                    f"not associative: (e{i + 1}e{j + 1})e{k + 1} != e{i + 1}(e{j + 1}e{k + 1})"
                )
        for i in range(n):
            if self.mul(self.unit, basis[i]) != basis[i]:
                raise AlgebraValidationError(f"unit does not act as identity on e{i + 1}")

    # --- arithmetic -----------------------------------------------------------
    def basis_vector(self, i):
        return [self.base.one if k == i else self.base.zero for k in range(self.n)]

    def coords(self, x):
        x = [self.base.coerce(v) for v in x]
        if len(x) != self.n:
            raise DimensionMismatch(f"expected {self.n} coordinates, got {len(x)}")
        return x

    def mul(self, a, b):
        n = self.n
        red = self.base.reduce
        out = [self.base.zero] * n
        for i in range(n):
            if not a[i]:
                continue
            for j in range(n):
                if not b[j]:
                    continue
                ab = a[i] * b[j]
                cij = self.c[i][j]
                for k in range(n):
                    if cij[k]:
                        out[k] = out[k] + ab * cij[k]
        return [red(v) for v in out]

    def add(self, a, b):
        red = self.base.reduce
        return [red(x + y) for x, y in zip(a, b)]

    def scale(self, s, a):
        red = self.base.reduce
        return [red(s * x) for x in a]

    def power(self, a, k):
        acc = list(self.unit)
        for _ in range(k):
            acc = self.mul(acc, a)
        return acc

    def mult_matrix(self, x):
        """Matrix of e -> e x; column j holds the coordinates of x e_j."""
        x = self.coords(x)
        n = self.n
        red = self.base.reduce
        M = [[self.base.zero] * n for _ in range(n)]
        for j in range(n):
            for i in range(n):
                if x[i]:
                    for k in range(n):
                        if self.c[i][j][k]:
                            M[k][j] = M[k][j] + x[i] * self.c[i][j][k]
        return [[red(v) for v in row] for row in M]

    def trace(self, x):
        M = self.mult_matrix(x)
        return self.base.reduce(sum((M[i][i] for i in range(self.n)), self.base.zero))

    def norm(self, x):
        return det(self.mult_matrix(x), self.base)

    def charpoly(self, x, var="L"):
        """det(L * Id - mult_matrix(x)) as a polynomial in L over the base."""
        M = self.mult_matrix(x)
        R = PolyRing(self.base, [var])
        L = R.gen(0)
        A = [[(L if i == j else R.zero) - R.const(M[i][j]) for j in range(self.n)] for i in range(self.n)]
        return det(A, R)

    def trace_form(self):
        n = self.n
        return [[self.trace(self.c[i][j]) for j in range(n)] for i in range(n)]

    def discriminant(self):
        return det(self.trace_form(), self.base)

    def is_etale(self):
        return self.base.is_unit(self.discriminant())

    # --- symmetric tensors over the basis alphabet ---------------------------
    @property
    def alphabet(self):
        """PolyRing whose variables are the basis symbols; slot monomials are single symbols."""
        if self._alphabet is None:
            self._alphabet = PolyRing(self.base, [f"e{i + 1}" for i in range(self.n)])
        return self._alphabet

    def element(self, x):
        """Coordinates -> linear polynomial sum x_i e_i in the alphabet ring."""
        A = self.alphabet
        x = self.coords(x)
        return A.from_terms({tuple(1 if k == i else 0 for k in range(self.n)): x[i] for i in range(self.n)})

    def slot_vector(self, mono):
        """Coordinates of the element of E named by an alphabet monomial (1 is the unit)."""
        if len(mono) != self.n:
            raise GhilbError(f"slot {mono} does not match rank {self.n}")
        hit = self._slot_cache.get(mono)
        if hit is None:
            vec = list(self.unit)
            for i, k in enumerate(mono):
                for _ in range(k):
                    vec = self.mul(vec, self.basis_vector(i))
            hit = self._slot_cache[mono] = vec
        return hit

    def _symbol(self, i):
        return tuple(1 if k == i else 0 for k in range(self.n))

    def _linear_expand(self, key, coeff, vectors=None):
        """Multilinear expansion of one tensor term into basis-symbol terms."""
        vectors = vectors if vectors is not None else [self.slot_vector(m) for m in key]
        partial = {(): coeff}
        for vec in vectors:
            nxt = {}
            for k, c in partial.items():
                for idx in range(self.n):
                    if vec[idx]:
                        nk = k + (idx,)
                        nxt[nk] = nxt.get(nk, 0) + c * vec[idx]
            partial = nxt
        return partial

    def linearize(self, s):
        """Rewrite a symmetric tensor over the alphabet so every slot is a basis symbol."""
        if s.ring != self.alphabet:
            raise GhilbError("symmetric tensor is not over this algebra's basis alphabet")
        if all(sum(m) == 1 for key in s.terms for m in key):
            return s
        red = self.base.reduce
        out = {}
        for key, c in orbit_expand(s).terms.items():
            for idxs, v in self._linear_expand(key, c).items():
                if all(idxs[i] <= idxs[i + 1] for i in range(len(idxs) - 1)):
                    nk = tuple(self._symbol(i) for i in idxs)
                    out[nk] = out.get(nk, 0) + v
        # symbols sort by descending index under graded-lex; rebuild canonical keys
        canon = {}
        for k, v in out.items():
            sk = tuple(sorted(k, key=lambda e: (sum(e), e)))
            canon[sk] = canon.get(sk, 0) + v
        return SymTensor.from_terms(self.alphabet, s.n, {k: red(v) for k, v in canon.items()})

    def norm_form(self):
        """D(t) = det(mult_matrix(sum t_i e_i)) over base[t_1..t_n]."""
        if self._norm_form is None:
            n = self.n
            T = PolyRing(self.base, [f"t{i + 1}" for i in range(n)])
            ts = T.gens
            M = [[T.zero] * n for _ in range(n)]
            for j in range(n):
                for i in range(n):
                    for k in range(n):
                        if self.c[i][j][k]:
                            M[k][j] = M[k][j] + ts[i] * T.const(self.c[i][j][k])
            self._norm_form = det(M, T)
        return self._norm_form

    def sigma(self, s):
        """Canonical homomorphism Gamma^n E -> base via coefficient extraction from D(t)."""
        if s.ring != self.alphabet:
            raise GhilbError("symmetric tensor is not over this algebra's basis alphabet")
        if s.n != self.n and s.terms:
            raise DegreeMismatch(f"degree {s.n} differs from rank {self.n}")
        s = self.linearize(s)
        D = self.norm_form()
        red = self.base.reduce
        total = self.base.zero
        for key, c in s.terms.items():
            alpha = [0] * self.n
            for mono in key:
                alpha[mono.index(1)] += 1
            coeff = D.terms.get(tuple(alpha))
            if coeff:
                total = total + c * coeff
        return red(total)

    def basis_internal_mul(self, u, v):
        """Internal product on Gamma^n E using E's structure constants slotwise."""
        if u.ring != self.alphabet or v.ring != self.alphabet:
            raise GhilbError("tensors must be over this algebra's basis alphabet")
        if u.n != v.n:
            raise DegreeMismatch("internal product needs equal degrees")
        red = self.base.reduce
        U = orbit_expand(u).terms
        V = orbit_expand(v).terms
        out = {}
        for ka, ca in U.items():
            va = [self.slot_vector(m) for m in ka]
            for kb, cb in V.items():
                vecs = [self.mul(a, self.slot_vector(b)) for a, b in zip(va, kb)]
                for idxs, c in self._linear_expand(None, ca * cb, vecs).items():
                    nk = tuple(self._symbol(i) for i in idxs)
                    if is_sorted_key(nk):
                        out[nk] = out.get(nk, 0) + c
        return SymTensor.from_terms(self.alphabet, u.n, {k: red(c) for k, c in out.items()})

    # --- serialization / base change -----------------------------------------
    def to_json(self):
        fmt = self.base.fmt if isinstance(self.base, BaseRing) else str
        consts = []
        for i in range(self.n):
            for j in range(i, self.n):
                for k in range(self.n):
                    if self.c[i][j][k]:
                        consts.append({"i": i + 1, "j": j + 1, "k": k + 1, "c": fmt(self.c[i][j][k])})
        return {
            "rank": self.n,
            "base": base_to_str(self.base),
            "unit": [fmt(u) for u in self.unit],
            "constants": consts,
        }

    @classmethod
    def from_json(cls, doc):
        try:
            base = parse_base(doc["base"])
            n = int(doc["rank"])
            zero = base.zero
            c = [[[zero] * n for _ in range(n)] for _ in range(n)]
            for entry in doc["constants"]:
                i, j, k = int(entry["i"]) - 1, int(entry["j"]) - 1, int(entry["k"]) - 1
                if not (0 <= i <= j < n and 0 <= k < n):
                    raise InputError(f"constant index out of range or i > j: {entry}")
                val = base.coerce(str(entry["c"]))
                c[i][j][k] = val
                c[j][i][k] = val
            unit = [base.coerce(str(u)) for u in doc["unit"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed algebra document: {exc}") from None
        if len(unit) != n:
            raise InputError("unit length differs from rank")
        return cls(base, c, unit)

    def change_ring(self, target):
        """Same constants read in another base (e.g. reduction mod p)."""
        conv = (lambda v: v.change_ring(target)) if isinstance(target, PolyRing) else target.coerce
        n = self.n
        c = [[[conv(self.c[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
        return FiniteAlgebra(target, c, [conv(u) for u in self.unit], self.names)

    def __repr__(self):
        return f"FiniteAlgebra(rank={self.n}, base={base_to_str(self.base)})"


def _safe(name):
    return name.replace("^", "")


# functional aliases matching the operation names
def mult_matrix(E, x):
    return E.mult_matrix(x)


def charpoly(E, x):
    return E.charpoly(x)


def discriminant(E):
    return E.discriminant()


def sigma_canonical(E, s):
    return E.sigma(s)


def geometric_sigma(E, s, residues):
    """sigma via the residue maps: ``residues`` is a list of (functional, multiplicity);
    a functional is a coordinate vector r with rho(e_k) = r[k].  Slots are assigned
    rho_1 (m_1 times), ..., rho_p (m_p times) and the expanded tensor is evaluated."""
    slots = []
    for functional, mult in residues:
        slots.extend([functional] * mult)
    if len(slots) != s.n:
        raise DegreeMismatch("residue multiplicities must add up to the degree")
    red = E.base.reduce
    total = E.base.zero
    for key, c in orbit_expand(s).terms.items():
        term = c
        for rho, mono in zip(slots, key):
            vec = E.slot_vector(mono)
            term = term * red(sum((r * v for r, v in zip(rho, vec)), E.base.zero))
            if not term:
                break
        total = total + term
    return red(total)
