"""Affine charts of the blow-up of Spec Gamma^n F along the ideal of norms.

A chart is given by a tuple x = (x_1..x_n) of polynomials with delta(x, x) != 0.
Its coordinate ring is generated by fractions delta(x, y)/delta(x, x); the
tautological algebra on the chart has basis [x_1]..[x_n] and structure
constants alpha^{i,j}_k = delta(x, x^{i,j}_k)/delta(x, x), where x^{i,j}_k is x
with its k-th entry replaced by x_i x_j.

Everything here is exact.  Geometric points are replaced by split point
configurations with coordinates in the fraction field of the base.
"""
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .algebra import FiniteAlgebra
from .divided import delta, gamma, internal_mul, shuffle_all, unit
from .errors import (
    DegenerateChart,
    DegreeMismatch,
    DiagonalConfig,
    IndexOutOfRange,
    InfeasibleSize,
    InputError,
    NotABasis,
    NotEtale,
    NotSufficientlyBig,
    OutsideChart,
    RingMismatch,
)
from .linalg import det, inverse, minors, rank, solve
from .norm import AlgebraMap
from .rings import BaseRing, PolyRing, all_monomials
from .tensor import SymTensor, _arrangements

__all__ = [
    "PointConfig",
    "eval_point",
    "separating_tuple",
    "ChartFraction",
    "ChartAlgebra",
    "universal_coeff",
    "chart_algebra",
    "chart_specialize",
    "split_algebra",
    "etale_family_coeffs",
    "transition_check",
    "kernel_check",
    "pluecker_coords",
    "powersum_generation_check",
]


class PointConfig:
    """An ordered list of n points of affine r-space over the fraction field of ``base``."""

    def __init__(self, points, base):
        if not isinstance(base, BaseRing):
            raise InputError("point configurations need a base ring ZZ, QQ or GF(p)")
        self.base = base
        self.field = base.fraction_field()
        pts = []
        for p in points:
            if not isinstance(p, (list, tuple)):
                p = (p,)
            pts.append(tuple(self.field.coerce(c) for c in p))
        if not pts:
            raise InputError("a point configuration needs at least one point")
        r = len(pts[0])
        if any(len(p) != r for p in pts):
            raise DegreeMismatch("points have different numbers of coordinates")
        self.points = pts
        self.n = len(pts)
        self.r = r
        self.distinct = len(set(pts)) == len(pts)

    @classmethod
    def parse(cls, text, base):
        """``"0;1"`` or ``"0,0;1,1"``: points separated by ';', coordinates by ','."""
        return cls([[c for c in chunk.split(",")] for chunk in text.split(";")], base)

    def __repr__(self):
        return f"PointConfig({self.points})"

    def _check_ring(self, ring):
        if ring.nvars != self.r:
            raise RingMismatch(f"points have {self.r} coordinates, ring has {ring.nvars} variables")


def _monomial_value(exps, point, field):
    v = field.one
    for c, k in zip(point, exps):
        if k:
            v = v * c**k
    return field.reduce(v)


def poly_value(f, point, field):
    """f(point) in ``field``."""
    red = field.reduce
    total = field.zero
    for e, c in f.terms.items():
        total = total + field.coerce(c) * _monomial_value(e, point, field)
    return red(total)


def eval_point(s, P):
    """The ring homomorphism Gamma^n F -> L attached to n points: each slot at its own point."""
    if s.terms and s.n != P.n:
        raise DegreeMismatch(f"tensor degree {s.n} differs from {P.n} points")
    P._check_ring(s.ring)
    field = P.field
    cache = {}

    def val(mono, j):
        key = (mono, j)
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = _monomial_value(mono, P.points[j], field)
        return hit

    total = field.zero
    for key, c in s.terms.items():
        orbit_sum = field.zero
        for arr in _arrangements(key):
            v = field.one
            for j, mono in enumerate(arr):
                v = v * val(mono, j)
                if not v:
                    break
            orbit_sum = orbit_sum + v
        if orbit_sum:
            total = total + field.coerce(c) * orbit_sum
    return field.reduce(total)


def separating_tuple(P, ring):
    """x_i = prod_{j != i} (T_l - p_{j,l}) / (p_{i,l} - p_{j,l}), l the first coordinate
    where p_i and p_j differ; so x_i(p_j) is 1 for i = j and 0 otherwise.

    Over ZZ the denominators are dropped and x_i(p_i) is merely nonzero.
    """
    P._check_ring(ring)
    if not P.distinct:
        raise DiagonalConfig("configuration lies on a diagonal")
    field = P.field
    normalize = ring.coeffs.is_field
    out = []
    for i, p in enumerate(P.points):
        x = ring.one
        for j, q in enumerate(P.points):
            if j == i:
                continue
            l = next(k for k in range(P.r) if p[k] != q[k])
            factor = ring.gen(l) - ring.const(q[l])
            if normalize:
                factor = factor * ring.const(field.inv(field.reduce(p[l] - q[l])))
            x = x * factor
        out.append(x)
    return out


def _delta_key(x):
    return tuple(x)


_DELTA_XX = {}


def delta_xx(x):
    """delta(x, x), memoized per tuple."""
    key = _delta_key(x)
    hit = _DELTA_XX.get(key)
    if hit is None:
        if len(_DELTA_XX) > 4096:
            _DELTA_XX.clear()
        hit = _DELTA_XX[key] = delta(list(x), list(x))
    return hit


@dataclass(frozen=True)
class ChartFraction:
    """num / delta(x, x)^m in the localization of Gamma^n F at delta(x, x)."""

    x: tuple
    num: SymTensor
    m: int

    def __eq__(self, other):
        if not isinstance(other, ChartFraction):
            return NotImplemented
        if self.x != other.x:
            return False
        d = delta_xx(self.x)
        left, right = self.num, other.num
        for _ in range(other.m):
            left = internal_mul(left, d)
        for _ in range(self.m):
            right = internal_mul(right, d)
        return left == right

    __hash__ = None

    def __add__(self, other):
        d = delta_xx(self.x)
        a, b = self.num, other.num
        for _ in range(other.m - self.m):
            a = internal_mul(a, d)
        for _ in range(self.m - other.m):
            b = internal_mul(b, d)
        return ChartFraction(self.x, a + b, max(self.m, other.m))

    def __neg__(self):
        return ChartFraction(self.x, -self.num, self.m)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ChartFraction):
            return ChartFraction(self.x, internal_mul(self.num, other.num), self.m + other.m)
        return ChartFraction(self.x, self.num.scale(other), self.m)

    __rmul__ = __mul__

    def eval(self, P):
        """Value at a point configuration inside the chart."""
        field = P.field
        d = eval_point(delta_xx(self.x), P)
        if not d:
            raise OutsideChart("point outside chart")
        return field.reduce(eval_point(self.num, P) * field.inv(d) ** self.m)


def _check_chart_ring(x):
    x = tuple(x)
    if not x:
        raise InputError("a chart needs a non-empty tuple")
    ring = x[0].ring
    if any(v.ring != ring for v in x):
        raise RingMismatch("chart entries must lie in one ring")
    if not isinstance(ring.coeffs, BaseRing) or not ring.coeffs.is_domain:
        raise InputError("charts are only supported over integral base rings ZZ, QQ, GF(p)")
    return x, ring


class ChartAlgebra:
    """The tautological algebra on the chart of x."""

    def __init__(self, x):
        x, ring = _check_chart_ring(x)
        self.x = x
        self.ring = ring
        self.n = len(x)
        self.delta_xx = delta_xx(x)
        if not self.delta_xx:
            raise DegenerateChart("degenerate chart: delta(x, x) = 0")
        self._brackets = {}
        self._alpha = None
        self.labels = [f"[{v}]" for v in x]

    def replaced(self, i, y):
        """x with entry i (0-based) replaced by y."""
        return self.x[:i] + (y,) + self.x[i + 1:]

    def bracket(self, y):
        """[y] = sum_i delta(x, x^i_y)/delta(x, x) [x_i], as n ChartFractions."""
        if y.ring != self.ring:
            raise RingMismatch("bracket argument must lie in the chart ring")
        hit = self._brackets.get(y)
        if hit is None:
            hit = [ChartFraction(self.x, delta(list(self.x), list(self.replaced(i, y))), 1) for i in range(self.n)]
            self._brackets[y] = hit
        return hit

    @property
    def alpha(self):
        if self._alpha is None:
            n = self.n
            a = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    a[i][j] = a[j][i] = self.bracket(self.x[i] * self.x[j])
            self._alpha = a
        return self._alpha

    def bracket_value(self, y, P):
        """[y] specialized at P, expanded by linearity over the monomials of y."""
        field = P.field
        out = [field.zero] * self.n
        for e, c in y.terms.items():
            vals = [f.eval(P) for f in self.bracket(self.ring.monomial(e))]
            cf = field.coerce(c)
            out = [field.reduce(o + cf * v) for o, v in zip(out, vals)]
        return out


def universal_coeff(x, i, j, k):
    """alpha^{i,j}_k (1-based indices)."""
    x, _ = _check_chart_ring(x)
    n = len(x)
    for v in (i, j, k):
        if not 1 <= v <= n:
            raise IndexOutOfRange(f"index {v} outside 1..{n}")
    y = x[i - 1] * x[j - 1]
    xk = x[: k - 1] + (y,) + x[k:]
    return ChartFraction(x, delta(list(x), list(xk)), 1)


def chart_algebra(x):
    return ChartAlgebra(x)


def chart_specialize(C, P):
    """Structure constants of the chart algebra at P, as a validated FiniteAlgebra."""
    P._check_ring(C.ring)
    field = P.field
    d = eval_point(C.delta_xx, P)
    if not d:
        raise OutsideChart("point outside chart")
    dinv = field.inv(d)
    n = C.n
    c = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            vec = [field.reduce(eval_point(f.num, P) * dinv ** f.m) for f in C.alpha[i][j]]
            c[i][j] = c[j][i] = vec
    unit_vec = [field.reduce(eval_point(f.num, P) * dinv ** f.m) for f in C.bracket(C.ring.one)]
    return FiniteAlgebra(field, c, unit_vec, names=[_label(v) for v in C.x])


def _label(v):
    s = str(v)
    return "".join(ch if ch.isalnum() else "_" for ch in s) or "e"


def split_algebra(P, ring):
    """(E, phi): E = L^n with idempotent basis, phi(T_l) = (p_{1,l}, ..., p_{n,l})."""
    P._check_ring(ring)
    E = FiniteAlgebra.split(P.field, P.n)
    images = [[p[l] for p in P.points] for l in range(P.r)]
    return E, AlgebraMap(ring, E, images)


def etale_family_coeffs(E, phi, x):
    """b^{i,j}_k with phi(x_i x_j) = sum_k b^{i,j}_k phi(x_k)."""
    x = list(x)
    n = E.n
    if len(x) != n:
        raise DegreeMismatch(f"chart of length {len(x)} for an algebra of rank {n}")
    if not E.base.is_field:
        raise InputError("etale family coefficients are computed over a field")
    x = [phi.source.coerce(v) if v.ring != phi.source else v for v in x]
    q = [phi(v) for v in x]
    Q = [[q[k][row] for k in range(n)] for row in range(n)]
    if not det(Q, E.base):
        raise NotABasis("images of the chart tuple are not a basis")
    if not E.discriminant():
        raise NotEtale("algebra is not etale over its base")
    b = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            b[i][j] = b[j][i] = solve(Q, phi(x[i] * x[j]), E.base)
    return b


def _ev_vector(y, P):
    return [poly_value(y, p, P.field) for p in P.points]


def transition_check(x, x2, P):
    """Whether the charts of x and x2 specialize at P to the same quotient of F ⊗ L.

    Three conditions: the change of basis [x2_j] = sum_i M_ij [x_i] intertwines the
    structure constants of both specializations, and in each chart the bracket
    at P agrees with the evaluation quotient F -> L^P (Cramer's rule against
    the matrix x_i(p_j)).
    """
    C1, C2 = ChartAlgebra(x), ChartAlgebra(x2)
    A1 = chart_specialize(C1, P)
    A2 = chart_specialize(C2, P)
    field = P.field
    n = C1.n
    cols = [C1.bracket_value(v, P) for v in C2.x]
    M = [[cols[j][i] for j in range(n)] for i in range(n)]
    if not det(M, field):
        return False
    for i, j in combinations_with_replacement(range(n), 2):
        lhs = A1.mul(cols[i], cols[j])
        rhs = [field.zero] * n
        for k in range(n):
            ck = A2.c[i][j][k]
            rhs = [field.reduce(r + ck * v) for r, v in zip(rhs, cols[k])]
        if lhs != rhs:
            return False
    for C, other in ((C1, C2), (C2, C1)):
        X = [_ev_vector(v, P) for v in C.x]
        Xmat = [[X[i][j] for i in range(n)] for j in range(n)]
        Xinv = inverse(Xmat, field)
        tests = list(other.x) + [a * b for a, b in combinations_with_replacement(other.x, 2)]
        for y in tests:
            ev = _ev_vector(y, P)
            expect = [field.reduce(sum(Xinv[i][j] * ev[j] for j in range(n))) for i in range(n)]
            if C.bracket_value(y, P) != expect:
                return False
    return True


def kernel_check(C, P):
    """Whether the kernel of F -> (chart algebra at P), y -> [y](P), is the vanishing ideal of P.

    The map is onto ([x_i] is the i-th basis vector) and both sides have rank
    n, so it suffices to see that the vanishing ideal lies in the kernel and
    that the map is multiplicative on the generators.  The vanishing ideal is
    spanned in degree <= n by m - interp(m), interp the Lagrange interpolant
    on P; these generate it as an ideal.
    """
    ring = C.ring
    if not ring.coeffs.is_field:
        raise InputError("the kernel check interpolates and needs a field of coefficients")
    P._check_ring(ring)
    A = chart_specialize(C, P)
    field = P.field
    n = C.n
    if not P.distinct:
        raise DiagonalConfig("configuration lies on a diagonal")
    lag = separating_tuple(P, ring)
    lag_vals = [C.bracket_value(L, P) for L in lag]
    for e in all_monomials(ring.nvars, n):
        m = ring.monomial(e)
        mv = C.bracket_value(m, P)
        interp = [field.zero] * n
        for p, lv in zip(P.points, lag_vals):
            w = _monomial_value(e, p, field)
            interp = [field.reduce(a + w * b) for a, b in zip(interp, lv)]
        if mv != interp:
            return False
    # multiplicativity on variables times basis elements
    for l in range(ring.nvars):
        g = ring.gen(l)
        gv = C.bracket_value(g, P)
        for v in C.x:
            if C.bracket_value(g * v, P) != A.mul(gv, C.bracket_value(v, P)):
                return False
    return True


def pluecker_coords(E, phi, V_basis):
    """n x n minors of the |V| x n matrix of images of V (lexicographic subsets)."""
    if not E.base.is_field:
        raise InputError("Plucker coordinates are computed over a field")
    rows = [phi(v) for v in V_basis]
    if len(rows) < E.n or rank(rows, E.base) != E.n:
        raise NotSufficientlyBig("images of V do not span E")
    return minors(rows, E.n, E.base)


POWERSUM_LIMITS = {"n": 3, "r": 2, "degree": 4}


def _multidegree_monomials(r, bound):
    return [e for e in all_monomials(r, bound)]


def powersum_generation_check(n, r, degree_bound, ring):
    """Whether products of the power sums gamma^1(m) * gamma^{n-1}(1), 1 <= deg m <= n,
    span every multigraded piece of TS^n F of total degree <= degree_bound."""
    if n < 1 or r < 1 or degree_bound < 0:
        raise InputError("n and r must be positive, degree_bound non-negative")
    if n > POWERSUM_LIMITS["n"] or r > POWERSUM_LIMITS["r"] or degree_bound > POWERSUM_LIMITS["degree"]:
        raise InfeasibleSize("exceeds configured bounds")
    F = PolyRing(ring, [f"T{i + 1}" for i in range(r)])
    one = unit(F, n)
    gens = [e for e in all_monomials(r, n) if sum(e)]
    psum = {e: shuffle_all([gamma(1, F.monomial(e)), gamma(n - 1, F.one)], F) for e in gens}
    zero_e = (0,) * r
    # products of power sums grouped by multidegree (exponent vector)
    products = {zero_e: [one]}
    frontier = [(zero_e, one, 0)]
    while frontier:
        nxt = []
        for deg, elem, start in frontier:
            for idx in range(start, len(gens)):
                e = gens[idx]
                nd = tuple(a + b for a, b in zip(deg, e))
                if sum(nd) > degree_bound:
                    continue
                pe = internal_mul(elem, psum[e])
                products.setdefault(nd, []).append(pe)
                nxt.append((nd, pe, idx))
        frontier = nxt
    field = ring.fraction_field()
    for alpha in all_monomials(r, degree_bound):
        # basis of the piece: multisets of n monomials with exponents summing to alpha
        basis = [
            key
            for key in combinations_with_replacement(all_monomials(r, sum(alpha)), n)
            if tuple(map(sum, zip(*key))) == alpha
        ]
        basis = sorted({tuple(sorted(k)) for k in basis})
        spans = products.get(alpha, [])
        if not spans:
            if basis:
                return False
            continue
        index = {}
        rows = []
        for s in spans:
            rows.append(s.terms)
            for k in s.terms:
                index.setdefault(k, len(index))
        mat = [[field.coerce(t.get(k, 0)) for k in index] for t in rows]
        if len(index) < len(basis) or rank(mat, field) < len(basis):
            return False
    return True
