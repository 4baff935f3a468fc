"""Seeded identity suites.

Every case draws from its own generator ``random.Random(f"{seed}:{suite}:{index}")``
(string seeds are hashed with SHA-512 by the stdlib, so a case is reproducible
from (seed, suite, index) alone, independently of the other cases and of the
order in which cases run).

Random polynomial (``random_poly``): the number of terms is uniform in
1..max_terms; each term picks a monomial uniformly from all monomials of total
degree <= max_deg and a coefficient uniformly from the nonzero integers in
[-height, height] (redrawn when it vanishes in the coefficient ring).
Parameters n and r are uniform in 1..n_max and 1..r_max unless fixed.
"""
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations

from . import charts as ch
from .algebra import FiniteAlgebra, geometric_sigma
from .catalog import algebra_catalog, extended_catalog, residue_data
from .divided import (
    box_membership_check,
    delta,
    delta_nu,
    delta_star,
    det_internal,
    gamma,
    gammafn_rhs,
    internal_mul,
    margin_product,
    margin_product_direct,
    norm_ideal_generators,
    shuffle,
    shuffle_all,
)
from .errors import GhilbError, InputError
from .linalg import det
from .norm import AlgebraMap, norm_ideal_image, norm_value, pid_ideal_equal, modpolyring_basis
from .rings import GF, QQ, ZZ, BaseRing, PolyRing, all_monomials
from .tensor import SymTensor, tensor_to_json

VAR_NAMES = ("u", "v", "w")
LIMITS = {"n_max": 4, "r_max": 3, "trials": 10000}


@dataclass
class Job:
    suite: str
    seed: int = 0
    trials: int = 100
    n_max: int = 3
    r_max: int = 2
    degree_max: int = 3
    n: int = None
    r: int = None
    ring: str = None
    jobs: int = 1

    def check(self):
        if self.suite not in SUITES:
            raise InputError(f"unknown suite {self.suite!r}; known: {', '.join(sorted(SUITES))}")
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must be a 64-bit unsigned integer")
        if not 1 <= self.trials <= LIMITS["trials"]:
            raise InputError(f"trials must lie in 1..{LIMITS['trials']}")
        if not 1 <= self.n_max <= LIMITS["n_max"] or not 1 <= self.r_max <= LIMITS["r_max"]:
            raise InputError("exceeds configured bounds")
        if self.n is not None and not 1 <= self.n <= LIMITS["n_max"]:
            raise InputError("exceeds configured bounds")
        if self.r is not None and not 1 <= self.r <= LIMITS["r_max"]:
            raise InputError("exceeds configured bounds")
        if not 0 <= self.degree_max <= 4:
            raise InputError("exceeds configured bounds")
        if self.ring is not None:
            BaseRing.parse(self.ring)


# --- generators -------------------------------------------------------------

def rng_for(seed, suite, index):
    return random.Random(f"{seed}:{suite}:{index}")


def _pick(rng, fixed, upper):
    return fixed if fixed is not None else rng.randint(1, upper)


def poly_ring(base, r):
    names = ["t"] if r == 1 else list(VAR_NAMES[:r])
    return PolyRing(base, names)


def _coeff(rng, base, height):
    while True:
        c = base.coerce(rng.choice([k for k in range(-height, height + 1) if k]))
        if c:
            return c


def random_poly(rng, ring, max_deg=2, max_terms=3, height=5):
    mons = all_monomials(ring.nvars, max_deg)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.choice(mons)] = _coeff(rng, ring.coeffs, height)
    return ring.from_terms(terms)


def random_tuple(rng, ring, n, **kw):
    return [random_poly(rng, ring, **kw) for _ in range(n)]


def random_matrix(rng, n, height=3):
    return [[rng.randint(-height, height) for _ in range(n)] for _ in range(n)]


def random_points(rng, n, r, distinct=True, height=3):
    while True:
        pts = [tuple(rng.randint(-height, height) for _ in range(r)) for _ in range(n)]
        if not distinct or len(set(pts)) == n:
            return pts


def _strs(xs):
    return [str(x) for x in xs]


def _base(job, rng, default_choices):
    if job.ring is not None:
        return BaseRing.parse(job.ring)
    return rng.choice(default_choices)


# --- suites -----------------------------------------------------------------
# each case returns (passed, params, instance)

def case_prop44(job, rng):
    base = _base(job, rng, [QQ, GF(5)])
    n, r = _pick(rng, job.n, job.n_max), _pick(rng, job.r, job.r_max)
    F = poly_ring(base, r)
    x = random_tuple(rng, F, n, max_deg=job.degree_max)
    y = random_tuple(rng, F, n, max_deg=job.degree_max)
    ok = delta_star(x, y) == delta_nu(x, y)
    return ok, {"n": n, "r": r, "ring": repr(base)}, {"x": _strs(x), "y": _strs(y)}


def case_prop17(job, rng):
    base = _base(job, rng, [QQ])
    n, r = _pick(rng, job.n, job.n_max), _pick(rng, job.r, job.r_max)
    p = rng.randint(1, 3)
    F = poly_ring(base, r)
    factors = []
    for _ in range(p):
        q = rng.randint(1, 3)
        cuts = sorted(rng.randint(0, n) for _ in range(q - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [n])]
        factors.append([(a, random_poly(rng, F, max_deg=2, max_terms=2)) for a in parts])
    ok = margin_product(factors) == margin_product_direct(factors)
    inst = {"factors": [[[a, str(x)] for a, x in row] for row in factors]}
    return ok, {"n": n, "r": r, "p": p, "ring": repr(base)}, inst


def case_gammafn(job, rng):
    base = _base(job, rng, [QQ, GF(5)])
    n, r = _pick(rng, job.n, job.n_max), _pick(rng, job.r, job.r_max)
    F = poly_ring(base, r)
    xs = random_tuple(rng, F, n, max_deg=2, max_terms=2)
    f = random_poly(rng, F, max_deg=1, max_terms=2)
    lhs = shuffle_all([gamma(1, xs[0] * f**n)] + [gamma(1, x) for x in xs[1:]], F)
    ok = lhs == gammafn_rhs(xs, f)
    return ok, {"n": n, "r": r, "ring": repr(base)}, {"x": _strs(xs), "f": str(f)}


def case_lemma22(job, rng):
    base = _base(job, rng, [QQ, GF(5)])
    n, r = _pick(rng, job.n, job.n_max), _pick(rng, job.r, job.r_max)
    F = poly_ring(base, r)
    x = random_tuple(rng, F, n, max_deg=2, max_terms=2)
    y = random_tuple(rng, F, n, max_deg=2, max_terms=2)
    pad = gamma(n - 1, F.one)
    M = [[shuffle(gamma(1, xi * yj), pad) for yj in y] for xi in x]
    ok = delta_star(x, y) == det_internal(M)
    return ok, {"n": n, "r": r, "ring": repr(base)}, {"x": _strs(x), "y": _strs(y)}


def _apply(M, xs):
    ring = xs[0].ring
    out = []
    for row in M:
        acc = ring.zero
        for a, x in zip(row, xs):
            if a:
                acc = acc + x * a
        out.append(acc)
    return out


def case_lemma23(job, rng):
    base = _base(job, rng, [QQ, ZZ])
    n, r = _pick(rng, job.n, job.n_max), _pick(rng, job.r, job.r_max)
    F = poly_ring(base, r)
    x = random_tuple(rng, F, n, max_deg=2, max_terms=2)
    y = random_tuple(rng, F, n, max_deg=2, max_terms=2)
    M, N = random_matrix(rng, n), random_matrix(rng, n)
    lhs = delta(_apply(M, x), _apply(N, y))
    rhs = delta(x, y).scale(det(M, ZZ) * det(N, ZZ))
    inst = {"x": _strs(x), "y": _strs(y), "M": M, "N": N}
    return lhs == rhs, {"n": n, "r": r, "ring": repr(base)}, inst


def case_lemma_product(job, rng):
    base = _base(job, rng, [QQ, GF(5)])
    n, r = _pick(rng, job.n, job.n_max), _pick(rng, job.r, job.r_max)
    F = poly_ring(base, r)
    x = random_tuple(rng, F, n, max_deg=2, max_terms=2)
    y = random_tuple(rng, F, n, max_deg=2, max_terms=2)
    dxy = delta(x, y)
    ok = internal_mul(dxy, dxy) == internal_mul(delta(x, x), delta(y, y))
    return ok, {"n": n, "r": r, "ring": repr(base)}, {"x": _strs(x), "y": _strs(y)}


def case_modpolyring(job, rng):
    base = _base(job, rng, [QQ])
    n, r = _pick(rng, job.n, job.n_max), _pick(rng, job.r, job.r_max)
    F = poly_ring(base, r)
    x = random_tuple(rng, F, n, max_deg=n + 1, max_terms=2)
    y = random_tuple(rng, F, n, max_deg=n + 1, max_terms=2)
    ok, _ = box_membership_check(x, y)
    return ok, {"n": n, "r": r, "ring": repr(base)}, {"x": _strs(x), "y": _strs(y)}


def _random_element(rng, E):
    base = E.base
    if isinstance(base, BaseRing):
        return [base.coerce(rng.randint(-3, 3)) for _ in range(E.n)]
    return [random_poly(rng, base, max_deg=1, max_terms=2, height=3) if rng.random() < 0.7 else base.zero
            for _ in range(E.n)]


def _pick_catalog(rng, index, catalog):
    return catalog[index % len(catalog)]


def case_prop111(job, rng, index):
    entry = _pick_catalog(rng, index, extended_catalog())
    E = entry.algebra
    n = E.n
    x = _random_element(rng, E)
    X = E.element(x)
    A = E.alphabet
    cp = E.charpoly(x)
    ok = True
    for j in range(n + 1):
        sig = E.sigma(shuffle(gamma(j, X), gamma(n - j, A.one)))
        coeff = cp.coeff((n - j,))
        if E.base.reduce(coeff - sig * (-1) ** j):
            ok = False
    # multiplicativity of sigma on random products of degree-one symmetric tensors
    u = shuffle_all([gamma(1, E.element(_random_element(rng, E))) for _ in range(n)], A)
    v = shuffle_all([gamma(1, E.element(_random_element(rng, E))) for _ in range(n)], A)
    if E.base.reduce(E.sigma(internal_mul(u, v)) - E.sigma(u) * E.sigma(v)):
        ok = False
    return ok, {"algebra": entry.name, "n": n}, {"x": [E.base.fmt(c) for c in x], "u": str(u), "v": str(v)}


def basis_delta(E):
    A = E.alphabet
    basis = [A.gen(i) for i in range(E.n)]
    return delta(basis, basis)


def case_prop27(job, rng, index):
    entry = _pick_catalog(rng, index, algebra_catalog() if index < 5 else extended_catalog())
    E = entry.algebra
    sig = E.sigma(basis_delta(E))
    disc = E.discriminant()
    ok = sig == disc and disc == E.base.coerce(entry.discriminant)
    if isinstance(E.base, BaseRing) and E.base.is_field:
        ok = ok and (bool(disc) == entry.etale)
    params = {"algebra": entry.name, "n": E.n}
    return ok, params, {"sigma": E.base.fmt(sig), "discriminant": E.base.fmt(disc)}


def _random_alphabet_tensor(rng, E):
    A = E.alphabet
    total = SymTensor(A, E.n, {})
    for _ in range(rng.randint(1, 3)):
        parts = []
        for _ in range(E.n):
            parts.append(gamma(1, E.element(_random_element(rng, E))))
        total = total + shuffle_all(parts, A)
    return total


def case_sect110(job, rng, index):
    entries = [e for e in extended_catalog() if residue_data(e.name)]
    entry = _pick_catalog(rng, index, entries)
    E = entry.algebra
    s = _random_alphabet_tensor(rng, E)

    ok = E.sigma(s) == geometric_sigma(E, s, residue_data(entry.name))
    return ok, {"algebra": entry.name, "n": E.n}, {"s": tensor_to_json(s)}


@lru_cache(maxsize=64)
def _box_generators(n, ring):
    return norm_ideal_generators(n, modpolyring_basis(ring, n))


def _random_monogenic(rng, n, base):
    coeffs = []
    for _ in range(n):
        if isinstance(base, BaseRing):
            coeffs.append(base.coerce(rng.randint(-2, 2)))
        else:
            coeffs.append(random_poly(rng, base, max_deg=1, max_terms=2, height=2) if rng.random() < 0.6 else base.zero)
    return FiniteAlgebra.monogenic(base, coeffs)


def case_thm36(job, rng, index):
    catalog = extended_catalog()
    if index < len(catalog):
        entry = catalog[index]
        E, phi, name = entry.algebra, entry.phi, entry.name
    else:
        n = _pick(rng, job.n, job.n_max)
        base = rng.choice([QQ, PolyRing(QQ, ["s"])])
        E = _random_monogenic(rng, n, base)
        F = PolyRing(QQ, ["t"])
        img = [base.zero] * n
        if n > 1:
            img[1] = base.one
        phi = AlgebraMap(F, E, [img])
        name = f"random monogenic rank {n} over {base}"
    gens = _box_generators(E.n, phi.source)
    image = norm_ideal_image(gens, phi)
    disc = E.discriminant()
    ok = pid_ideal_equal(image, [disc], E.base)
    params = {"algebra": name, "n": E.n, "generators": len(gens.gens)}
    return ok, params, {"algebra": E.to_json(), "discriminant": E.base.fmt(disc)}


def case_lemma25(job, rng):
    """Norm values over ZZ reduced mod p agree with norm values computed over GF(p)."""
    p = rng.choice([2, 3, 5, 7])
    n = _pick(rng, job.n, job.n_max)
    FZ = PolyRing(ZZ, ["t"])
    coeffs = [rng.randint(-3, 3) for _ in range(n)]
    EZ = FiniteAlgebra.monogenic(ZZ, coeffs)
    Ep = FiniteAlgebra.monogenic(GF(p), coeffs)
    img = [0] * n
    if n > 1:
        img[1] = 1
    else:
        img[0] = rng.randint(-3, 3)
    phiZ = AlgebraMap(FZ, EZ, [img])
    Fp = PolyRing(GF(p), ["t"])
    phip = AlgebraMap(Fp, Ep, [img])
    x = random_tuple(rng, FZ, n, max_deg=2, max_terms=2)
    y = random_tuple(rng, FZ, n, max_deg=2, max_terms=2)
    sZ = delta(x, y)
    sp = delta([v.change_ring(Fp) for v in x], [v.change_ring(Fp) for v in y])
    ok = GF(p).coerce(norm_value(sZ, phiZ)) == norm_value(sp, phip)
    return ok, {"n": n, "p": p}, {"x": _strs(x), "y": _strs(y), "coeffs": coeffs}


POWERSUM_CASES = [
    (1, 1, 4, "QQ", True),
    (1, 2, 3, "QQ", True),
    (2, 1, 4, "QQ", True),
    (2, 2, 3, "QQ", True),
    (2, 1, 2, "GF(2)", False),
    (3, 1, 3, "QQ", True),
]


def case_lemma16(job, rng, index):
    cases = [
        c for c in POWERSUM_CASES
        if (job.n is None or c[0] == job.n)
        and (job.r is None or c[1] == job.r)
        and (job.ring is None or BaseRing.parse(c[3]) == BaseRing.parse(job.ring))
    ]
    if not cases:
        raise InputError("no power-sum case matches the requested n, r and ring")
    n, r, bound, ring, expected = cases[index % len(cases)]
    got = ch.powersum_generation_check(n, r, bound, BaseRing.parse(ring))
    params = {"n": n, "r": r, "degree_bound": bound, "ring": ring, "expected": expected, "result": got}
    return got == expected, params, {}


# --- chart suites ---------------------------------------------------------------

@lru_cache(maxsize=64)
def _monomial_charts(n, r):
    F = poly_ring(QQ, r)
    mons = [F.monomial(e) for e in all_monomials(r, n - 1)]
    return F, [tuple(c) for c in combinations(mons, n)]


def _charts_containing(P, n, r):
    F, charts = _monomial_charts(n, r)
    out = []
    for x in charts:
        X = [[ch.poly_value(xi, p, P.field) for xi in x] for p in P.points]
        if det(X, P.field):
            out.append(x)
    return F, out


def _random_chart(rng, P, n, r):
    """A monomial chart containing P, or an integer recombination M.x of one (det M != 0)."""
    F, charts = _charts_containing(P, n, r)
    x = rng.choice(charts)
    if rng.random() < 0.3:
        while True:
            M = random_matrix(rng, n, height=2)
            if det(M, ZZ):
                return F, tuple(_apply(M, list(x)))
    return F, x


def _chart_setup(job, rng):
    n, r = _pick(rng, job.n, job.n_max), _pick(rng, job.r, job.r_max)
    P = ch.PointConfig(random_points(rng, n, r), QQ)
    F, x = _random_chart(rng, P, n, r)
    return n, r, P, F, x


def _chart_instance(P, x):
    return {"points": [[str(c) for c in p] for p in P.points], "chart": _strs(x)}


def _check_prop63(C, P):
    A = ch.chart_specialize(C, P)  # validates commutativity, associativity, unit
    return bool(A.discriminant()) == P.distinct


def _check_repl55(C, P, F):
    A = ch.chart_specialize(C, P)
    E, phi = ch.split_algebra(P, F)
    return ch.etale_family_coeffs(E, phi, C.x) == A.c


def _check_cor65(C, P, rng, n, r):
    _, charts = _charts_containing(P, n, r)
    others = rng.sample(charts, min(3, len(charts)))
    others.append(tuple(ch.separating_tuple(P, C.ring)))
    return all(ch.transition_check(C.x, x2, P) for x2 in others)


def case_prop63(job, rng):
    n, r, P, F, x = _chart_setup(job, rng)
    ok = _check_prop63(ch.ChartAlgebra(x), P)
    return ok, {"n": n, "r": r}, _chart_instance(P, x)


def case_repl55(job, rng):
    n, r, P, F, x = _chart_setup(job, rng)
    ok = _check_repl55(ch.ChartAlgebra(x), P, F)
    return ok, {"n": n, "r": r}, _chart_instance(P, x)


def case_thm73(job, rng):
    n, r, P, F, x = _chart_setup(job, rng)
    ok = ch.kernel_check(ch.ChartAlgebra(x), P)
    return ok, {"n": n, "r": r}, _chart_instance(P, x)


def case_cor65(job, rng):
    n, r, P, F, x = _chart_setup(job, rng)
    ok = _check_cor65(ch.ChartAlgebra(x), P, rng, n, r)
    return ok, {"n": n, "r": r}, _chart_instance(P, x)


def case_good_component(job, rng):
    n, r, P, F, x = _chart_setup(job, rng)
    C = ch.ChartAlgebra(x)
    checks = {
        "prop6.3": _check_prop63(C, P),
        "prop-repl5.5": _check_repl55(C, P, F),
        "thm7.3": ch.kernel_check(C, P),
        "cor6.5": _check_cor65(C, P, rng, n, r),
    }
    return all(checks.values()), {"n": n, "r": r, "checks": checks}, _chart_instance(P, x)


def case_cor_support(job, rng, index):
    n = _pick(rng, job.n, job.n_max)
    r = _pick(rng, job.r, job.r_max)
    F = poly_ring(QQ, r)
    if index % 2 == 0:
        n = max(n, 2)
        pts = random_points(rng, n - 1, r, distinct=False)
        pts.insert(rng.randint(0, n - 1), rng.choice(pts))
        P = ch.PointConfig(pts, QQ)
        gens = _box_generators(n, F)
        extra = delta(random_tuple(rng, F, n, max_deg=2), random_tuple(rng, F, n, max_deg=2))
        ok = all(not ch.eval_point(g, P) for g in gens.gens if g) and not ch.eval_point(extra, P)
        kind = "diagonal"
        inst = {"points": [[str(c) for c in p] for p in P.points]}
    else:
        P = ch.PointConfig(random_points(rng, n, r), QQ)
        x = ch.separating_tuple(P, F)
        ok = bool(ch.eval_point(delta(x, x), P))
        kind = "distinct"
        inst = _chart_instance(P, x)
    return ok, {"n": n, "r": r, "kind": kind}, inst


SUITES = {
    "prop1.7": case_prop17,
    "lemma-gammafn": case_gammafn,
    "lemma2.2": case_lemma22,
    "lemma2.3": case_lemma23,
    "lemma-product": case_lemma_product,
    "lemma-modpolyring": case_modpolyring,
    "lemma2.5": case_lemma25,
    "prop4.4": case_prop44,
    "prop1.11": case_prop111,
    "prop2.7": case_prop27,
    "thm3.6": case_thm36,
    "sect1.10": case_sect110,
    "lemma1.6": case_lemma16,
    "prop-repl5.5": case_repl55,
    "prop6.3": case_prop63,
    "thm7.3": case_thm73,
    "cor6.5": case_cor65,
    "cor-support": case_cor_support,
    "good-component": case_good_component,
}

# suites whose case function also receives the case index (catalog cycling, parity)
_INDEXED = {"prop1.11", "prop2.7", "thm3.6", "sect1.10", "lemma1.6", "cor-support"}


def run_case(job, index):
    rng = rng_for(job.seed, job.suite, index)
    fn = SUITES[job.suite]
    try:
        if job.suite in _INDEXED:
            ok, params, inst = fn(job, rng, index)
        else:
            ok, params, inst = fn(job, rng)
        out = {"index": index, "passed": bool(ok), "params": params}
        if not ok:
            out["instance"] = inst
    except GhilbError as exc:
        out = {"index": index, "passed": False, "error": {"code": exc.code, "message": str(exc)}}
    return out


def _run_chunk(args):
    job, indices = args
    return [run_case(job, i) for i in indices]


def run_verify(job):
    """Run a suite; the report depends only on the job (no timings, sorted cases)."""
    job.check()
    indices = list(range(job.trials))
    if job.jobs > 1 and job.trials > 1:
        chunks = [indices[k:: job.jobs] for k in range(job.jobs)]
        with ProcessPoolExecutor(max_workers=job.jobs) as pool:
            cases = [c for part in pool.map(_run_chunk, [(job, ch_) for ch_ in chunks]) for c in part]
    else:
        cases = [run_case(job, i) for i in indices]
    cases.sort(key=lambda c: c["index"])
    failed = sum(1 for c in cases if not c["passed"])
    job_doc = {k: v for k, v in asdict(job).items() if k != "jobs"}
    return {
        "suite": job.suite,
        "job": job_doc,
        "cases": cases,
        "summary": {"total": len(cases), "passed": len(cases) - failed, "failed": failed},
        "status": "pass" if failed == 0 else "fail",
    }


def report_json(report):
    return json.dumps(report, sort_keys=True, indent=2)
