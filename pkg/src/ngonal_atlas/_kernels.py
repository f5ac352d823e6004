"""Hot loops, compiled with numba when available.

Set NGONAL_NO_NUMBA=1 to force the pure-numpy versions (also used when numba
is missing). Both paths return identical results; tests run both.
"""
import itertools
import os

import numpy as np

_DISABLED = os.environ.get("NGONAL_NO_NUMBA", "") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError
    import numba as nb
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    nb = None
    HAVE_NUMBA = False


# ---------------------------------------------------------------- zero sums

def np_zero_sum_reachable(n, choices):
    """Can we pick one residue from each row of `choices` (ragged, -1 padded) summing to 0 mod n?"""
    reach = np.zeros(n, dtype=np.bool_)
    reach[0] = True
    for row in choices:
        vals = row[row >= 0]
        nxt = np.zeros(n, dtype=np.bool_)
        src = np.nonzero(reach)[0]
        if len(vals) == 0 or len(src) == 0:
            return False
        nxt[(src[:, None] + vals[None, :]) % n] = True
        reach = nxt
    return bool(reach[0])


def np_zero_sum_tuples(n, choices, cap):
    """All tuples (one residue per row) with zero sum mod n, lexicographic order.

    Returns (array of shape (count, r), truncated flag).
    """
    rows = [row[row >= 0] for row in choices]
    r = len(rows)
    if r == 0:
        return np.zeros((0, 0), dtype=np.int64), False
    last = np.zeros(n, dtype=np.bool_)
    last[rows[-1]] = True
    if r == 1:
        out = np.array([[0]], dtype=np.int64) if last[0] else np.zeros((0, 1), dtype=np.int64)
        return out, False
    head = np.array(list(itertools.product(*rows[:-1])), dtype=np.int64).reshape(-1, r - 1)
    need = (-head.sum(axis=1)) % n
    keep = last[need]
    out = np.concatenate([head[keep], need[keep][:, None]], axis=1)
    if len(out) > cap:
        return out[:cap], True
    return out, False


# ------------------------------------------------------- lex-min conjugation

def all_perms(m):
    return np.array(list(itertools.permutations(range(m))), dtype=np.int64).reshape(-1, m)


def np_lexmin_conjugate(tup, perms):
    """Minimum over s in perms of the flattened tuple (s^-1 p s for p in tup), images 0-based.

    With points acting on the right, conjugation relabels point i as s[i]:
    new[s[i]] = s[p[i]].
    """
    t, m = tup.shape
    k = len(perms)
    new = np.empty((k, t, m), dtype=np.int64)
    rows = np.arange(k)[:, None]
    for j in range(t):
        img = perms[:, tup[j]]          # s[p[i]]
        new[rows, j, perms] = img       # new[s[i]] = s[p[i]]
    flat = new.reshape(k, t * m)
    order = np.lexsort(flat.T[::-1])
    return flat[order[0]].reshape(t, m)


# --------------------------------------------------------------- numba side

if HAVE_NUMBA:
    @nb.njit(cache=True)
    def _nb_zero_sum_reachable(n, choices):
        reach = np.zeros(n, dtype=np.bool_)
        reach[0] = True
        for i in range(choices.shape[0]):
            nxt = np.zeros(n, dtype=np.bool_)
            any_ = False
            for s in range(n):
                if not reach[s]:
                    continue
                for j in range(choices.shape[1]):
                    v = choices[i, j]
                    if v < 0:
                        break
                    nxt[(s + v) % n] = True
                    any_ = True
            if not any_:
                return False
            reach = nxt
        return reach[0]

    @nb.njit(cache=True)
    def _nb_zero_sum_tuples(n, choices, lens, cap):
        r = choices.shape[0]
        out = np.empty((cap, r), dtype=np.int64)
        count = 0
        truncated = False
        idx = np.zeros(r, dtype=np.int64)
        for i in range(r):
            if lens[i] == 0:
                return out[:0], False
        last = np.zeros(n, dtype=np.bool_)
        for j in range(lens[r - 1]):
            last[choices[r - 1, j]] = True
        if r == 1:
            if last[0]:
                out[0, 0] = 0
                return out[:1], False
            return out[:0], False
        while True:
            s = 0
            for i in range(r - 1):
                s += choices[i, idx[i]]
            need = (-s) % n
            if last[need]:
                if count == cap:
                    truncated = True
                    break
                for i in range(r - 1):
                    out[count, i] = choices[i, idx[i]]
                out[count, r - 1] = need
                count += 1
            # odometer over the first r-1 slots, last slot varies fastest
            pos = r - 2
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] < lens[pos]:
                    break
                idx[pos] = 0
                pos -= 1
            if pos < 0:
                break
        return out[:count], truncated

    @nb.njit(cache=True)
    def _nb_lexmin_conjugate(tup, perms):
        t, m = tup.shape
        best = np.empty(t * m, dtype=np.int64)
        cur = np.empty(t * m, dtype=np.int64)
        have = False
        for k in range(perms.shape[0]):
            s = perms[k]
            for j in range(t):
                for i in range(m):
                    cur[j * m + s[i]] = s[tup[j, i]]
            if not have:
                best[:] = cur
                have = True
                continue
            for q in range(t * m):
                if cur[q] != best[q]:
                    if cur[q] < best[q]:
                        best[:] = cur
                    break
        return best.reshape(t, m)


def _pad(choices):
    width = max([len(c) for c in choices] + [1])
    arr = -np.ones((len(choices), width), dtype=np.int64)
    for i, c in enumerate(choices):
        arr[i, :len(c)] = c
    return arr


def zero_sum_reachable(n, choices, use_numba=None):
    arr = _pad(choices)
    if _want(use_numba):
        return bool(_nb_zero_sum_reachable(n, arr))
    return np_zero_sum_reachable(n, arr)


def zero_sum_tuples(n, choices, cap=10**6, use_numba=None):
    arr = _pad(choices)
    if _want(use_numba):
        lens = np.array([len(c) for c in choices], dtype=np.int64)
        # the odometer stops at cap+1 hits so truncation is detected exactly
        out, trunc = _nb_zero_sum_tuples(n, arr, lens, cap)
        return out, bool(trunc)
    return np_zero_sum_tuples(n, arr, cap)


_PERMS = {}


def perms_of(m):
    if m not in _PERMS:
        _PERMS[m] = all_perms(m)
    return _PERMS[m]


def lexmin_conjugate(tup, use_numba=None):
    tup = np.asarray(tup, dtype=np.int64)
    if tup.size == 0:
        return tup
    perms = perms_of(tup.shape[1])
    if _want(use_numba):
        return _nb_lexmin_conjugate(tup, perms)
    return np_lexmin_conjugate(tup, perms)


def _want(use_numba):
    if use_numba is None:
        return HAVE_NUMBA
    if use_numba and not HAVE_NUMBA:
        raise RuntimeError("numba path requested but numba is disabled")
    return bool(use_numba)
