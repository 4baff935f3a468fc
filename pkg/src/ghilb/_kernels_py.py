"""Pure-Python hot loops.

This module and the compiled ``_kernels`` extension expose the same functions
with the same results; :mod:`ghilb.kernels` picks one at import time.

Coefficients are accumulated with the Python ``+`` and ``*`` operators and are
*not* reduced here: callers apply their coefficient ring's ``reduce`` and drop
zeros afterwards.
"""
from math import comb
from operator import add

__all__ = [
    "poly_mul_terms",
    "tensor_mul_terms",
    "shuffle_orbit_terms",
    "multiset_permutations",
    "margin_tensors",
]


def poly_mul_terms(a, b):
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(map(add, ea, eb))
            out[e] = get(e, 0) + ca * cb
    return out


def tensor_mul_terms(a, b):
    """Slotwise product of two tensor term maps (keys are tuples of exponent tuples)."""
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple([tuple(map(add, x, y)) for x, y in zip(ka, kb)])
            out[k] = get(k, 0) + ca * cb
    return out


def _grlex(e):
    return (sum(e), e)


def shuffle_orbit_terms(u, v):
    """External product on orbit-sum keys.

    The orbit of a multiset K is the sum of its distinct arrangements; the
    shuffle of two orbits is the orbit of the multiset union weighted by
    prod_m C(mult_u(m) + mult_v(m), mult_u(m)).
    """
    out = {}
    get = out.get
    counts_v = {}
    for kv in v:
        c = {}
        for m in kv:
            c[m] = c.get(m, 0) + 1
        counts_v[kv] = c
    for ku, cu in u.items():
        cnt_u = {}
        for m in ku:
            cnt_u[m] = cnt_u.get(m, 0) + 1
        for kv, cv in v.items():
            weight = 1
            for m, k in counts_v[kv].items():
                j = cnt_u.get(m, 0)
                if j:
                    weight *= comb(j + k, k)
            key = tuple(sorted(ku + kv, key=_grlex))
            out[key] = get(key, 0) + weight * cu * cv
    return out


def multiset_permutations(ranks):
    """All distinct arrangements of a non-decreasing tuple of ints, in lex order."""
    seq = list(ranks)
    n = len(seq)
    result = [tuple(seq)]
    if n < 2:
        return result
    while True:
        i = n - 2
        while i >= 0 and seq[i] >= seq[i + 1]:
            i -= 1
        if i < 0:
            return result
        j = n - 1
        while seq[j] <= seq[i]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1:] = reversed(seq[i + 1:])
        result.append(tuple(seq))


def margin_tensors(qs, margins):
    """Enumerate non-negative integer arrays b on [q_1] x ... x [q_p] with
    prescribed margins: for every axis r and value s, the sum of b over all
    index tuples with i_r = s equals ``margins[r][s]``.

    Returns a list of flat tuples in row-major (lexicographic) index order.
    At the last position carrying i_r = s the entry is forced to the
    remaining margin, which prunes the search to feasible branches only.
    """
    p = len(qs)
    positions = [()]
    for q in qs:
        positions = [pos + (s,) for pos in positions for s in range(q)]
    size = len(positions)
    last = {}
    for idx, pos in enumerate(positions):
        for r in range(p):
            last[(r, pos[r])] = idx
    forced = [[r for r in range(p) if last[(r, pos[r])] == idx]
              for idx, pos in enumerate(positions)]
    remaining = [list(m) for m in margins]
    current = [0] * size
    out = []

    def rec(idx):
        if idx == size:
            out.append(tuple(current))
            return
        pos = positions[idx]
        cap = min(remaining[r][pos[r]] for r in range(p))
        fr = forced[idx]
        if fr:
            val = remaining[fr[0]][pos[fr[0]]]
            for r in fr[1:]:
                if remaining[r][pos[r]] != val:
                    return
            if val > cap:
                return
            choices = (val,)
        else:
            choices = range(cap + 1)
        for val in choices:
            for r in range(p):
                remaining[r][pos[r]] -= val
            current[idx] = val
            rec(idx + 1)
            for r in range(p):
                remaining[r][pos[r]] += val
        current[idx] = 0

    rec(0)
    return out
