"""The Grothendieck-Deligne norm map for explicit points F -> E of the Hilbert functor.

A point is an :class:`AlgebraMap`: a polynomial ring F = A[T_1..T_r], a free
algebra E over B given by structure constants, and the coordinates of the
image of each T_i.  The norm of s in Gamma^n_A F is sigma_E applied to the
slotwise reduction of s into Gamma^n_B E.
"""
from itertools import combinations

from .errors import DegreeMismatch, InputError, NotSufficientlyBig, NotSurjective, RingMismatch
from .linalg import det, is_pid, pid_gcd, rank
from .rings import BaseRing, PolyRing, box_monomials, all_monomials
from .tensor import SymTensor, orbit_expand

__all__ = [
    "AlgebraMap",
    "reduce_symmetric_tensor",
    "norm_value",
    "norm_ideal_image",
    "pid_ideal_equal",
    "sufficiently_big_check",
]


class AlgebraMap:
    """The composite F -> F ⊗ B -> E, determined by the images of the variables."""

    def __init__(self, source, target, images, check=True):
        if not isinstance(source, PolyRing) or not isinstance(source.coeffs, BaseRing):
            raise InputError("source must be a polynomial ring over a base ring")
        self.source = source
        self.target = target
        if isinstance(images, dict):
            try:
                images = [images[name] for name in source.names]
            except KeyError as exc:
                raise InputError(f"no image given for variable {exc}") from None
        if len(images) != source.nvars:
            raise InputError(f"expected {source.nvars} images, got {len(images)}")
        self.images = [target.coords(v) for v in images]
        self._mono_cache = {}
        if check:
            self.check_surjective()

    def _coeff(self, c):
        """A -> B on coefficients."""
        return self.target.base.coerce(c)

    def monomial_image(self, exps):
        hit = self._mono_cache.get(exps)
        if hit is None:
            E = self.target
            vec = list(E.unit)
            for img, k in zip(self.images, exps):
                for _ in range(k):
                    vec = E.mul(vec, img)
            hit = self._mono_cache[exps] = vec
        return hit

    def __call__(self, f):
        """Coordinates of the image of f in E."""
        if f.ring != self.source:
            raise RingMismatch(f"{f} is not in {self.source}")
        E = self.target
        red = E.base.reduce
        out = [E.base.zero] * E.n
        for e, c in f.terms.items():
            b = self._coeff(c)
            for k, v in enumerate(self.monomial_image(e)):
                if v:
                    out[k] = out[k] + b * v
        return [red(v) for v in out]

    def check_surjective(self):
        """Products of the images must span E (over the fraction field of B)."""
        E = self.target
        mons = all_monomials(self.source.nvars, max(E.n - 1, 0))
        rows = [self.monomial_image(m) for m in mons]
        if rank(rows, E.base) != E.n:
            raise NotSurjective("images of the variables do not generate E")


def reduce_symmetric_tensor(s, phi):
    """Gamma^n_A F -> Gamma^n_B E: map every slot through phi, re-symmetrize."""
    E = phi.target
    if s.ring != phi.source:
        raise RingMismatch("tensor is not over the source ring of the map")
    if s.terms and s.n != E.n:
        raise DegreeMismatch(f"degree {s.n} differs from rank {E.n}")
    red = E.base.reduce
    symbols = [tuple(1 if k == i else 0 for k in range(E.n)) for i in range(E.n)]
    out = {}
    for key, c in orbit_expand(s).terms.items():
        partial = {(): phi._coeff(c)}
        for mono in key:
            vec = phi.monomial_image(mono)
            nxt = {}
            for k, v in partial.items():
                # the result is symmetric, so orbit coefficients are read off at a
                # single arrangement: non-increasing symbol indices (= sorted key)
                top = k[-1] + 1 if k else E.n
                for idx in range(top):
                    if vec[idx]:
                        nk = k + (idx,)
                        nxt[nk] = nxt.get(nk, 0) + v * vec[idx]
            partial = nxt
        for idxs, v in partial.items():
            nk = tuple(symbols[i] for i in idxs)
            out[nk] = out.get(nk, 0) + v
    return SymTensor.from_terms(E.alphabet, E.n, {k: red(v) for k, v in out.items()})


def norm_value(s, phi):
    """n_F(s) = sigma_E(reduce_symmetric_tensor(s, phi))."""
    return phi.target.sigma(reduce_symmetric_tensor(s, phi))


def sufficiently_big_check(V_basis, phi):
    """Raise NotSufficientlyBig unless the images of V_basis span E over B."""
    E = phi.target
    rows = [phi(v) for v in V_basis]
    if len(rows) < E.n:
        raise NotSufficientlyBig("V not sufficiently big for this point")
    base = E.base
    if base.is_field:
        ok = rank(rows, base) == E.n
    elif is_pid(base):
        g = pid_gcd([det([rows[i] for i in sub], base) for sub in combinations(range(len(rows)), E.n)], base)
        ok = bool(g) and base.is_unit(g)
    else:
        ok = rank(rows, base) == E.n
    if not ok:
        raise NotSufficientlyBig("V not sufficiently big for this point")


def norm_ideal_image(gens, phi, check=True):
    """n_F(delta) for every generator of the ideal of norms."""
    if check:
        sufficiently_big_check(gens.V_basis, phi)
    return [norm_value(g, phi) if g else phi.target.base.zero for g in gens.gens]


def pid_ideal_equal(gens_a, gens_b, dom):
    """Whether two finitely generated ideals of a PID coincide (gcds equal up to a unit)."""
    return pid_gcd(list(gens_a), dom) == pid_gcd(list(gens_b), dom)


def modpolyring_basis(ring, n):
    """Monomials whose degree in each variable is < n."""
    return [ring.monomial(e) for e in box_monomials(ring.nvars, n)]
