"""Divided powers Gamma^n F realized on symmetric tensors.

Two products live here: the external (shuffle) product ``*`` between graded
pieces, and the internal product on a single piece Gamma^n F, inherited from
the componentwise product of T^n F.
"""
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product

from . import kernels
from .errors import DegreeMismatch, GhilbError, MarginError, RingMismatch
from .rings import grlex_key
from .tensor import SymTensor, nu_vector, orbit_compress, orbit_expand, tensor_mul

__all__ = [
    "gamma",
    "unit",
    "shuffle",
    "shuffle_all",
    "internal_mul",
    "internal_power",
    "margin_product",
    "margin_product_direct",
    "margin_systems",
    "delta",
    "delta_star",
    "delta_nu",
    "det_internal",
    "norm_ideal_generators",
    "NormIdealGens",
    "powersum_factor",
    "gammafn_rhs",
    "box_cofactors",
    "box_membership_check",
]


def unit(ring, n):
    """gamma^n(1), the unit of the internal product on Gamma^n."""
    return SymTensor(ring, n, {((0,) * ring.nvars,) * n: ring.coeffs.one})


def gamma(a, f):
    """gamma^a(f) = f ⊗ ... ⊗ f (a factors) in orbit form."""
    if a < 0:
        raise GhilbError("gamma needs a non-negative degree")
    ring = f.ring
    if a == 0:
        return unit(ring, 0)
    red = ring.coeffs.reduce
    support = sorted(f.terms, key=grlex_key)
    out = {}
    for key in combinations_with_replacement(support, a):
        c = ring.coeffs.one
        for m in key:
            c = c * f.terms[m]
        c = red(c)
        if c:
            out[key] = c
    return SymTensor(ring, a, out)


def shuffle(u, v):
    """External product Gamma^n x Gamma^m -> Gamma^{n+m}."""
    if u.ring != v.ring:
        raise RingMismatch(f"ambient rings differ: {u.ring} vs {v.ring}")
    raw = kernels.shuffle_orbit_terms(u.terms, v.terms)
    return SymTensor.from_terms(u.ring, u.n + v.n, raw)


def shuffle_all(factors, ring=None):
    factors = list(factors)
    if not factors:
        if ring is None:
            raise GhilbError("empty shuffle product needs a ring")
        return unit(ring, 0)
    acc = factors[0]
    for f in factors[1:]:
        acc = shuffle(acc, f)
    return acc


def internal_mul(u, v):
    """Internal product of Gamma^n F: expand orbits, multiply slotwise, re-compress."""
    if u.ring != v.ring:
        raise RingMismatch(f"ambient rings differ: {u.ring} vs {v.ring}")
    if u.n != v.n:
        raise DegreeMismatch(f"internal product needs equal degrees, got {u.n} and {v.n}")
    if not u.terms or not v.terms:
        return SymTensor(u.ring, u.n, {})
    prod = tensor_mul(orbit_expand(u), orbit_expand(v))
    return orbit_compress(prod, check=False)


def internal_power(u, k):
    acc = unit(u.ring, u.n)
    for _ in range(k):
        acc = internal_mul(acc, u)
    return acc


# --- margin systems --------------------------------------------------------

def _validate_factors(factors):
    factors = [list(row) for row in factors]
    if not factors:
        raise MarginError("margin product needs at least one factor")
    n = None
    ring = None
    for i, row in enumerate(factors):
        if not row:
            raise MarginError(f"factor {i + 1} is empty")
        total = 0
        for a, x in row:
            if a < 0:
                raise MarginError("exponents must be non-negative")
            if ring is None:
                ring = x.ring
            elif x.ring != ring:
                raise RingMismatch("all elements must lie in the same ring")
            total += a
        if n is None:
            n = total
        elif total != n:
            raise MarginError(f"factor {i + 1} has exponent sum {total}, expected {n}")
    return factors, n, ring


def margin_systems(qs, margins):
    """The set B{a_ij}: flat tuples over [q_1] x ... x [q_p] in lexicographic order."""
    return kernels.margin_tensors(tuple(qs), tuple(tuple(m) for m in margins))


def margin_product_direct(factors):
    """prod_i (prod*_j gamma^{a_ij}(x_ij)) computed with internal_mul (oracle path)."""
    factors, n, ring = _validate_factors(factors)
    acc = None
    for row in factors:
        term = shuffle_all([gamma(a, x) for a, x in row], ring)
        acc = term if acc is None else internal_mul(acc, term)
    return acc


def margin_product(factors):
    """Same product expanded over the margin systems:
    sum over b in B{a_ij} of prod*_{I} gamma^{b_I}(x_{1,i_1} ... x_{p,i_p})."""
    factors, n, ring = _validate_factors(factors)
    qs = [len(row) for row in factors]
    margins = [[a for a, _ in row] for row in factors]
    index_set = list(product(*[range(q) for q in qs]))
    products = []
    for idx in index_set:
        m = ring.one
        for i, j in enumerate(idx):
            m = m * factors[i][j][1]
        products.append(m)
    gamma_cache = {}
    acc = SymTensor(ring, n, {})
    for b in margin_systems(qs, margins):
        parts = []
        for pos, k in enumerate(b):
            if k:
                g = gamma_cache.get((pos, k))
                if g is None:
                    g = gamma_cache[(pos, k)] = gamma(k, products[pos])
                parts.append(g)
        acc = acc + shuffle_all(parts, ring) if parts else acc + unit(ring, 0)
    return acc


# --- determinants ----------------------------------------------------------

def _check_tuples(x, y):
    x, y = list(x), list(y)
    if len(x) != len(y):
        raise DegreeMismatch(f"tuples of different lengths {len(x)} and {len(y)}")
    if not x:
        raise GhilbError("delta needs non-empty tuples")
    ring = x[0].ring
    for z in x + y:
        if z.ring != ring:
            raise RingMismatch("all entries must lie in the same ring")
    return x, y, ring


def delta_star(x, y):
    """det*[gamma^1(x_i y_j)] by Laplace expansion with shuffle products (memoized minors)."""
    x, y, ring = _check_tuples(x, y)
    n = len(x)
    entries = [[gamma(1, xi * yj) for yj in y] for xi in x]
    memo = {}

    def minor(row, cols):
        if row == n:
            return unit(ring, 0)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = SymTensor(ring, n - row, {})
        for idx, c in enumerate(cols):
            e = entries[row][c]
            if not e:
                continue
            sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
            if not sub:
                continue
            term = shuffle(e, sub)
            total = total + term if idx % 2 == 0 else total - term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


def delta_nu(x, y):
    """The symmetric tensor nu(x)·nu(y) read in orbit form."""
    x, y, ring = _check_tuples(x, y)
    return orbit_compress(tensor_mul(nu_vector(x), nu_vector(y)), check=False)


def delta(x, y, method="star"):
    if method == "star":
        return delta_star(x, y)
    if method == "nu":
        return delta_nu(x, y)
    raise GhilbError(f"unknown delta method {method!r}")


def det_internal(M):
    """Determinant of a square matrix of SymTensors of one degree, using internal_mul."""
    n = len(M)
    if n == 0:
        raise GhilbError("empty matrix")
    ring, deg = M[0][0].ring, M[0][0].n
    memo = {}

    def minor(row, cols):
        if row == n:
            return unit(ring, deg)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = SymTensor(ring, deg, {})
        for idx, c in enumerate(cols):
            e = M[row][c]
            if not e:
                continue
            sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
            term = internal_mul(e, sub)
            total = total + term if idx % 2 == 0 else total - term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


# --- ideal of norms --------------------------------------------------------

@dataclass
class NormIdealGens:
    n: int
    V_basis: list
    pairs: list = field(default_factory=list)
    gens: list = field(default_factory=list)

    def nonzero(self):
        return [g for g in self.gens if g]


def norm_ideal_generators(n, V_basis, method="star"):
    """delta(x, y) for x, y ranging over n-subsets of V_basis (lexicographic subset order)."""
    V_basis = list(V_basis)
    subsets = list(combinations(range(len(V_basis)), n))
    out = NormIdealGens(n=n, V_basis=V_basis)
    for S in subsets:
        for T in subsets:
            out.pairs.append((S, T))
            out.gens.append(delta([V_basis[i] for i in S], [V_basis[i] for i in T], method))
    return out


# --- membership in the ideal of norms of the box basis ----------------------

def powersum_factor(c, f, n):
    """gamma^c(f) * gamma^{n-c}(1)."""
    return shuffle(gamma(c, f), gamma(n - c, f.ring.one))


def gammafn_rhs(xs, f):
    """sum_{c=1}^n (-1)^{c+1} (gamma^c(f)*gamma^{n-c}(1)) . (gamma^1(x_1 f^{n-c}) * gamma^1(x_2) * ... )."""
    n = len(xs)
    ring = f.ring
    total = SymTensor(ring, n, {})
    for c in range(1, n + 1):
        rest = shuffle_all([gamma(1, xs[0] * f ** (n - c))] + [gamma(1, x) for x in xs[1:]], ring)
        term = internal_mul(powersum_factor(c, f, n), rest)
        total = total + term if c % 2 else total - term
    return total


def _reduce_monomial_tuple(ring, exps, n, memo, pfactors):
    """Write delta(x, -) for a tuple of monomials x as sum_S cof_S . delta(x_S, -), where
    x_S runs over n-subsets of the box basis (every exponent < n).

    If some entry has exponent >= n in a variable T, the gamma^n(f) reduction with
    f = T lowers it: delta(x, y) = sum_c (-1)^{c+1} P_c(T) . delta(x with T^c removed, y),
    P_c(T) = gamma^c(T)*gamma^{n-c}(1).  Entries inside the box are sorted with
    the sign of the permutation; repeated entries give 0.
    """
    hit = memo.get(exps)
    if hit is not None:
        return hit
    for pos, e in enumerate(exps):
        var = next((l for l, k in enumerate(e) if k >= n), None)
        if var is not None:
            break
    else:
        if len(set(exps)) < len(exps):
            memo[exps] = {}
            return {}
        order = sorted(range(len(exps)), key=lambda i: grlex_key(exps[i]))
        inv = sum(1 for i in range(len(order)) for j in range(i + 1, len(order)) if order[i] > order[j])
        key = tuple(exps[i] for i in order)
        one = unit(ring, n)
        out = {key: -one if inv % 2 else one}
        memo[exps] = out
        return out
    out = {}
    for c in range(1, n + 1):
        lowered = list(exps)
        lowered[pos] = tuple(k - c if l == var else k for l, k in enumerate(exps[pos]))
        sub = _reduce_monomial_tuple(ring, tuple(lowered), n, memo, pfactors)
        pc = pfactors[(var, c)]
        for key, cof in sub.items():
            term = internal_mul(pc, cof)
            acc = out.get(key)
            if c % 2:
                acc = term if acc is None else acc + term
            else:
                acc = -term if acc is None else acc - term
            out[key] = acc
    out = {k: v for k, v in out.items() if v}
    memo[exps] = out
    return out


def _monomial_tuples(xs):
    """Multilinear expansion of a tuple of polynomials into (coefficient, monomial tuple)."""
    partial = {(): 1}
    for x in xs:
        nxt = {}
        for k, c in partial.items():
            for e, d in x.terms.items():
                nk = k + (e,)
                nxt[nk] = nxt.get(nk, 0) + c * d
        partial = nxt
    return partial


def box_cofactors(x, y):
    """Cofactors cof[(S, T)] with delta(x, y) = sum cof . delta(S, T), S and T sorted
    n-tuples of box monomials (exponents < n).  Built from the gamma^n(f) reduction
    and the symmetry delta(x, y) = delta(y, x); no ideal-membership search."""
    x, y, ring = _check_tuples(x, y)
    n = len(x)
    memo = {}
    pf = {(l, c): powersum_factor(c, ring.gen(l), n) for l in range(ring.nvars) for c in range(1, n + 1)}

    def side(tup):
        acc = {}
        for mons, coeff in _monomial_tuples(tup).items():
            coeff = ring.coeffs.reduce(coeff)
            if not coeff:
                continue
            for key, cof in _reduce_monomial_tuple(ring, mons, n, memo, pf).items():
                term = cof.scale(coeff)
                acc[key] = acc[key] + term if key in acc else term
        return {k: v for k, v in acc.items() if v}

    xs, ys = side(x), side(y)
    out = {}
    for S, a in xs.items():
        for T, b in ys.items():
            out[(S, T)] = internal_mul(a, b)
    return out


def box_membership_check(x, y):
    """Recompute delta(x, y) from its cofactors against the box generators."""
    x, y, ring = _check_tuples(x, y)
    cofs = box_cofactors(x, y)
    total = SymTensor(ring, len(x), {})
    for (S, T), cof in cofs.items():
        g = delta([ring.monomial(e) for e in S], [ring.monomial(e) for e in T])
        total = total + internal_mul(cof, g)
    return total == delta(x, y), cofs
