"""Exact linear algebra over coefficient domains (BaseRing or PolyRing).

Determinants never divide by non-units: expansion by minors up to size 4,
fraction-free Bareiss elimination beyond that.
"""
from functools import lru_cache
from itertools import combinations
from math import gcd

from .errors import DimensionMismatch, NotInvertible, Undecided
from .rings import BaseRing, PolyRing

MINOR_EXPANSION_LIMIT = 4


def _check_square(M):
    n = len(M)
    for row in M:
        if len(row) != n:
            raise DimensionMismatch("matrix is not square")
    return n


def det(M, dom):
    """Determinant of a square matrix with entries in ``dom``."""
    n = _check_square(M)
    if n == 0:
        return dom.one
    if n <= MINOR_EXPANSION_LIMIT:
        return det_minors(M, dom)
    return det_bareiss(M, dom)


def det_minors(M, dom):
    n = _check_square(M)
    if n == 0:
        return dom.one
    red = dom.reduce

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return dom.one
        total = dom.zero
        sign = 1
        for idx, c in enumerate(cols):
            a = M[row][c]
            if a:
                sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
                if sub:
                    term = a * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        return red(total)

    return minor(0, tuple(range(n)))


def _exact_div(dom, a, b):
    if isinstance(dom, BaseRing):
        return dom.div(a, b)
    return a.exact_div(b)


def det_bareiss(M, dom):
    """Fraction-free elimination; requires ``dom`` to be an integral domain."""
    n = _check_square(M)
    A = [list(row) for row in M]
    red = dom.reduce
    sign = 1
    prev = dom.one
    for k in range(n - 1):
        if not A[k][k]:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return dom.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = red(A[i][j] * A[k][k] - A[i][k] * A[k][j])
                A[i][j] = _exact_div(dom, num, prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign > 0 else red(-d)


def _field_of(dom):
    if isinstance(dom, BaseRing):
        return dom.fraction_field()
    raise Undecided(f"no exact field arithmetic for {dom}")


def row_echelon(M, field):
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    A = [[field.coerce(v) for v in row] for row in M]
    red = field.reduce
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        A[r] = [red(v * inv) for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [red(a - f * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M, dom):
    """Rank over the fraction field of ``dom``."""
    if not M:
        return 0
    if isinstance(dom, BaseRing):
        return len(row_echelon(M, dom.fraction_field())[1])
    # polynomial entries: largest size with a nonzero minor
    m, k = len(M), len(M[0])
    for size in range(min(m, k), 0, -1):
        for rows in combinations(range(m), size):
            for cols in combinations(range(k), size):
                if det([[M[i][j] for j in cols] for i in rows], dom):
                    return size
    return 0


def solve(A, b, dom):
    """Unique solution x of A x = b over the fraction field of a BaseRing."""
    field = _field_of(dom)
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    R, pivots = row_echelon(aug, field)
    if len(pivots) != len(A[0]) or (pivots and pivots[-1] == len(A[0])):
        raise NotInvertible("linear system has no unique solution")
    x = [field.zero] * len(A[0])
    for row, c in zip(R, pivots):
        x[c] = row[-1]
    return x


def solve_cramer(A, b, dom):
    """Solve A x = b by Cramer's rule when det(A) is a unit of ``dom``."""
    n = _check_square(A)
    d = det(A, dom)
    if not dom.is_unit(d):
        raise NotInvertible(f"determinant {d} is not a unit")
    out = []
    for k in range(n):
        Ak = [row[:k] + [b[i]] + row[k + 1:] for i, row in enumerate(A)]
        out.append(_exact_div(dom, det(Ak, dom), d))
    return out


def inverse(A, dom):
    field = _field_of(dom)
    n = _check_square(A)
    eye = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    aug = [list(row) + e for row, e in zip(A, eye)]
    R, pivots = row_echelon(aug, field)
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] >= n:
        raise NotInvertible("matrix is singular")
    return [row[n:] for row in R]


def matmul(A, B, dom):
    red = dom.reduce
    return [
        [red(sum((A[i][k] * B[k][j] for k in range(len(B))), dom.zero)) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def minors(M, size, dom):
    """All size x size minors of M from row subsets (lexicographic), full column set."""
    return [det([M[i] for i in rows], dom) for rows in combinations(range(len(M)), size)]


# --- gcds for principal ideal domains ------------------------------------

def is_pid(dom):
    if isinstance(dom, BaseRing):
        return True
    return isinstance(dom, PolyRing) and dom.nvars <= 1 and isinstance(dom.coeffs, BaseRing) and dom.coeffs.is_field


def pid_gcd(elements, dom):
    """Normalized gcd: non-negative for ZZ, monic for K[s], 0/1 for fields."""
    if not is_pid(dom):
        raise Undecided(f"ideal equality is not decided over {dom}")
    if isinstance(dom, BaseRing):
        if dom.is_field:
            return dom.one if any(elements) else dom.zero
        g = 0
        for e in elements:
            g = gcd(g, int(e))
        return g
    g = dom.zero
    for e in elements:
        g = _upoly_gcd(g, dom.coerce(e))
    return _monic(g)


def _monic(f):
    if not f:
        return f
    _, lc = f.leading_term()
    return f * f.ring.coeffs.inv(lc)


def _upoly_divmod(f, g):
    ring = f.ring
    cr = ring.coeffs
    if ring.nvars == 0:
        return f * cr.inv(g.constant_value()), ring.zero
    q = ring.zero
    r = f
    (dg,), lc = g.leading_term()
    inv = cr.inv(lc)
    while r and r.leading_term()[0][0] >= dg:
        (dr,), c = r.leading_term()
        t = ring.monomial((dr - dg,), cr.reduce(c * inv))
        q = q + t
        r = r - t * g
    return q, r


def _upoly_gcd(f, g):
    while g:
        f, g = g, _upoly_divmod(f, g)[1]
    return f
