# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot loops in ``_kernels_py``; same signatures, same results."""
from libc.stdlib cimport malloc, free
from math import comb

__all__ = [
    "poly_mul_terms",
    "tensor_mul_terms",
    "shuffle_orbit_terms",
    "multiset_permutations",
    "margin_tensors",
]


cdef tuple _add_exps(tuple x, tuple y):
    cdef Py_ssize_t i, n = len(x)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = <object>x[i] + <object>y[i]
    return tuple(out)


def poly_mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef object ca, cb, prev
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _add_exps(ea, eb)
            prev = out.get(e)
            if prev is None:
                out[e] = ca * cb
            else:
                out[e] = prev + ca * cb
    return out


def tensor_mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef tuple ka, kb, k
    cdef object ca, cb, prev
    cdef Py_ssize_t i, n
    cdef list slots
    for ka, ca in a.items():
        n = len(ka)
        for kb, cb in b.items():
            slots = [None] * n
            for i in range(n):
                slots[i] = _add_exps(<tuple>ka[i], <tuple>kb[i])
            k = tuple(slots)
            prev = out.get(k)
            if prev is None:
                out[k] = ca * cb
            else:
                out[k] = prev + ca * cb
    return out


def _grlex(e):
    return (sum(e), e)


cdef dict _counts(tuple key):
    cdef dict c = {}
    for m in key:
        c[m] = c.get(m, 0) + 1
    return c


def shuffle_orbit_terms(dict u, dict v):
    cdef dict out = {}
    cdef dict counts_v = {}
    cdef dict cnt_u, cv_counts
    cdef tuple ku, kv, key
    cdef object cu, cv, weight, prev
    for kv in v:
        counts_v[kv] = _counts(kv)
    for ku, cu in u.items():
        cnt_u = _counts(ku)
        for kv, cv in v.items():
            weight = 1
            cv_counts = <dict>counts_v[kv]
            for m, k in cv_counts.items():
                j = cnt_u.get(m, 0)
                if j:
                    weight = weight * comb(j + k, k)
            key = tuple(sorted(ku + kv, key=_grlex))
            prev = out.get(key)
            if prev is None:
                out[key] = weight * cu * cv
            else:
                out[key] = prev + weight * cu * cv
    return out


def multiset_permutations(ranks):
    cdef Py_ssize_t n = len(ranks)
    cdef Py_ssize_t i, j, lo, hi
    cdef int tmp
    cdef int *seq
    cdef list result = []
    if n < 2:
        return [tuple(ranks)]
    seq = <int *>malloc(n * sizeof(int))
    try:
        for i in range(n):
            seq[i] = ranks[i]
        while True:
            result.append(tuple([seq[i] for i in range(n)]))
            i = n - 2
            while i >= 0 and seq[i] >= seq[i + 1]:
                i -= 1
            if i < 0:
                break
            j = n - 1
            while seq[j] <= seq[i]:
                j -= 1
            tmp = seq[i]; seq[i] = seq[j]; seq[j] = tmp
            lo = i + 1
            hi = n - 1
            while lo < hi:
                tmp = seq[lo]; seq[lo] = seq[hi]; seq[hi] = tmp
                lo += 1
                hi -= 1
    finally:
        free(seq)
    return result


def margin_tensors(qs, margins):
    """Iterative depth-first enumeration over flat positions; see ``_kernels_py``."""
    cdef int p = len(qs)
    cdef int size = 1
    cdef int r, idx, s, val, cap, stride, nf
    cdef int offs_total = 0
    cdef list out = []
    for r in range(p):
        size *= <int>qs[r]
    # axis value of each flat position, forced flags, margin offsets
    cdef int *coord = <int *>malloc(size * p * sizeof(int))
    cdef int *is_forced = <int *>malloc(size * p * sizeof(int))
    cdef int *offset = <int *>malloc(p * sizeof(int))
    cdef int *remaining
    cdef int *current = <int *>malloc(size * sizeof(int))
    cdef int *hi = <int *>malloc(size * sizeof(int))
    for r in range(p):
        offset[r] = offs_total
        offs_total += <int>qs[r]
    remaining = <int *>malloc(offs_total * sizeof(int))
    try:
        for r in range(p):
            for s in range(<int>qs[r]):
                remaining[offset[r] + s] = <int>margins[r][s]
        for idx in range(size):
            stride = idx
            for r in range(p - 1, -1, -1):
                coord[idx * p + r] = stride % <int>qs[r]
                stride //= <int>qs[r]
        for idx in range(size):
            for r in range(p):
                is_forced[idx * p + r] = 1
                # forced iff every later position has a different value on axis r
            for r in range(p):
                for s in range(idx + 1, size):
                    if coord[s * p + r] == coord[idx * p + r]:
                        is_forced[idx * p + r] = 0
                        break
        idx = 0
        current[0] = -1
        hi[0] = -1
        # current[idx] == -1 means "position not yet initialised"
        while idx >= 0:
            if idx == size:
                out.append(tuple([current[s] for s in range(size)]))
                idx -= 1
                continue
            if current[idx] == -1:
                cap = 1 << 30
                for r in range(p):
                    val = remaining[offset[r] + coord[idx * p + r]]
                    if val < cap:
                        cap = val
                val = -1
                nf = 0
                for r in range(p):
                    if is_forced[idx * p + r]:
                        s = remaining[offset[r] + coord[idx * p + r]]
                        if nf == 0:
                            val = s
                            nf = 1
                        elif s != val:
                            val = -2
                if val == -2 or val > cap:
                    idx -= 1
                    continue
                if nf:
                    current[idx] = val
                    hi[idx] = val
                else:
                    current[idx] = 0
                    hi[idx] = cap
                for r in range(p):
                    remaining[offset[r] + coord[idx * p + r]] -= current[idx]
                if idx + 1 < size:
                    current[idx + 1] = -1
                idx += 1
                continue
            # backtracking into idx: advance or retire this position
            for r in range(p):
                remaining[offset[r] + coord[idx * p + r]] += current[idx]
            if current[idx] < hi[idx]:
                current[idx] += 1
                for r in range(p):
                    remaining[offset[r] + coord[idx * p + r]] -= current[idx]
                if idx + 1 < size:
                    current[idx + 1] = -1
                idx += 1
            else:
                current[idx] = -1
                idx -= 1
    finally:
        free(coord)
        free(is_forced)
        free(offset)
        free(remaining)
        free(current)
        free(hi)
    return out
