"""Hot numeric kernels: lattice box scans and sumset expansion.

Two interchangeable backends produce bit-identical results:

* ``numba`` (default): @njit-compiled loops, fastest for the odometer-style
  box scans with per-row interval arithmetic.
* ``numpy``: vectorized fallback, selected with ``SUMSETLAB_KERNEL=numpy``
  (or automatically when numba is unavailable).

Both operate on int64 and are only entered after the caller has proved the
arithmetic cannot overflow 63 bits; exact big-integer fallbacks live next to
the call sites.  ``benchmarks/bench_kernels.py`` times one against the other.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "SUMSETLAB_KERNEL"

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if _HAVE_NUMBA else ("numpy",)


def active_backend() -> str:
    choice = os.environ.get(_ENV_FLAG, "numba").strip().lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(f"{_ENV_FLAG} must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numba" and not _HAVE_NUMBA:
        return "numpy"
    return choice


def points_to_array(points) -> np.ndarray:
    arr = np.asarray(points, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(len(points), -1)
    return arr


def array_to_points(arr) -> list[tuple[int, ...]]:
    return [tuple(int(v) for v in row) for row in np.asarray(arr)]


# ---------------------------------------------------------------------------
# box scan: lattice points x with lo <= x <= hi and lhs @ x <= rhs.
# The innermost coordinate is solved as an integer interval, so the work per
# scanned "row" is O(#constraints) rather than O(#points).
# ---------------------------------------------------------------------------


@njit(cache=True)
def _nb_box_scan(lo, hi, lhs, rhs, out, collect):
    d = lo.shape[0]
    k_num = lhs.shape[0]
    total = 0
    for j in range(d):
        if lo[j] > hi[j]:
            return 0
    x = lo.copy()
    partial = np.zeros((d, k_num), dtype=np.int64)
    for j in range(d - 1):
        for k in range(k_num):
            partial[j + 1, k] = partial[j, k] + lhs[k, j] * x[j]
    while True:
        t_lo = lo[d - 1]
        t_hi = hi[d - 1]
        feasible = True
        for k in range(k_num):
            c = lhs[k, d - 1]
            r = rhs[k] - partial[d - 1, k]
            if c > 0:
                q = r // c
                if q < t_hi:
                    t_hi = q
            elif c < 0:
                q = -(r // (-c))
                if q > t_lo:
                    t_lo = q
            elif r < 0:
                feasible = False
                break
        if feasible and t_hi >= t_lo:
            if collect:
                for t in range(t_lo, t_hi + 1):
                    for j in range(d - 1):
                        out[total, j] = x[j]
                    out[total, d - 1] = t
                    total += 1
            else:
                total += t_hi - t_lo + 1
        j = d - 2
        while j >= 0:
            x[j] += 1
            if x[j] <= hi[j]:
                break
            x[j] = lo[j]
            j -= 1
        if j < 0:
            break
        for jj in range(j, d - 1):
            for k in range(k_num):
                partial[jj + 1, k] = partial[jj, k] + lhs[k, jj] * x[jj]
    return total


def _prefix_chunks(lo, hi, chunk_rows=1 << 18):
    """Yield int64 arrays of prefix rows (all but the last coordinate)."""
    d = len(lo)
    if d == 1:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    ranges = [np.arange(lo[j], hi[j] + 1, dtype=np.int64) for j in range(d - 1)]
    tail = 1
    for r in ranges[1:]:
        tail *= len(r)
    if tail == 0 or len(ranges[0]) == 0:
        return
    block = max(1, chunk_rows // max(tail, 1))
    first = ranges[0]
    for start in range(0, len(first), block):
        sub = [first[start:start + block]] + ranges[1:]
        grid = np.meshgrid(*sub, indexing="ij")
        yield np.stack([g.ravel() for g in grid], axis=1)


def _np_intervals(prefixes, lo, hi, lhs, rhs):
    d = len(lo)
    k_num = lhs.shape[0]
    m = prefixes.shape[0]
    t_lo = np.full(m, lo[d - 1], dtype=np.int64)
    t_hi = np.full(m, hi[d - 1], dtype=np.int64)
    feasible = np.ones(m, dtype=bool)
    if k_num:
        resid = rhs[None, :] - prefixes @ lhs[:, : d - 1].T
        for k in range(k_num):
            c = int(lhs[k, d - 1])
            if c > 0:
                np.minimum(t_hi, resid[:, k] // c, out=t_hi)
            elif c < 0:
                np.maximum(t_lo, -(resid[:, k] // (-c)), out=t_lo)
            else:
                feasible &= resid[:, k] >= 0
    counts = np.where(feasible, np.maximum(t_hi - t_lo + 1, 0), 0)
    return counts, t_lo


def _np_box_count(lo, hi, lhs, rhs):
    if any(a > b for a, b in zip(lo, hi)):
        return 0
    total = 0
    for prefixes in _prefix_chunks(lo, hi):
        counts, _ = _np_intervals(prefixes, lo, hi, lhs, rhs)
        total += int(counts.sum())
    return total


def _np_box_points(lo, hi, lhs, rhs):
    d = len(lo)
    if any(a > b for a, b in zip(lo, hi)):
        return np.empty((0, d), dtype=np.int64)
    blocks = []
    for prefixes in _prefix_chunks(lo, hi):
        counts, t_lo = _np_intervals(prefixes, lo, hi, lhs, rhs)
        keep = counts > 0
        if not keep.any():
            continue
        counts = counts[keep]
        t_lo = t_lo[keep]
        prefixes = prefixes[keep]
        total = int(counts.sum())
        rows = np.repeat(prefixes, counts, axis=0)
        starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        inner = np.arange(total, dtype=np.int64) - np.repeat(starts, counts)
        t = np.repeat(t_lo, counts) + inner
        blocks.append(np.concatenate([rows, t[:, None]], axis=1))
    if not blocks:
        return np.empty((0, d), dtype=np.int64)
    return np.concatenate(blocks, axis=0)


def box_count(lo, hi, lhs, rhs) -> int:
    """Count lattice points in the box satisfying all lhs @ x <= rhs rows."""
    lo_a = np.asarray(lo, dtype=np.int64)
    hi_a = np.asarray(hi, dtype=np.int64)
    lhs_a = np.asarray(lhs, dtype=np.int64).reshape(len(lhs), len(lo))
    rhs_a = np.asarray(rhs, dtype=np.int64)
    if active_backend() == "numba":
        dummy = np.empty((0, len(lo)), dtype=np.int64)
        return int(_nb_box_scan(lo_a, hi_a, lhs_a, rhs_a, dummy, False))
    return _np_box_count(lo_a, hi_a, lhs_a, rhs_a)


def box_points(lo, hi, lhs, rhs) -> np.ndarray:
    """The points counted by :func:`box_count`, in lexicographic order."""
    lo_a = np.asarray(lo, dtype=np.int64)
    hi_a = np.asarray(hi, dtype=np.int64)
    lhs_a = np.asarray(lhs, dtype=np.int64).reshape(len(lhs), len(lo))
    rhs_a = np.asarray(rhs, dtype=np.int64)
    if active_backend() == "numba":
        n = int(_nb_box_scan(lo_a, hi_a, lhs_a, rhs_a,
                             np.empty((0, len(lo)), dtype=np.int64), False))
        out = np.empty((n, len(lo)), dtype=np.int64)
        _nb_box_scan(lo_a, hi_a, lhs_a, rhs_a, out, True)
        return out
    return _np_box_points(lo_a, hi_a, lhs_a, rhs_a)


# ---------------------------------------------------------------------------
# sumset expansion: {p + g} for p in points, g in gens, deduplicated and
# lexicographically sorted.  Points are packed into single int64 keys
# (mixed radix over the coordinate ranges) so deduplication is a 1-D unique.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _nb_expand_keys(pts, gens, mins, strides):
    n, d = pts.shape
    m = gens.shape[0]
    keys = np.empty(n * m, dtype=np.int64)
    pos = 0
    for i in range(n):
        for j in range(m):
            key = np.int64(0)
            for k in range(d):
                key += (pts[i, k] + gens[j, k] - mins[k]) * strides[k]
            keys[pos] = key
            pos += 1
    return keys


def _decode_keys(keys, mins, ranges):
    d = len(ranges)
    out = np.empty((keys.shape[0], d), dtype=np.int64)
    vals = keys.copy()
    for k in range(d - 1, -1, -1):
        out[:, k] = vals % ranges[k] + mins[k]
        vals //= ranges[k]
    return out


def sumset_step(pts: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """One Minkowski step: dedup({p + g}), rows sorted lexicographically."""
    n, d = pts.shape
    m = gens.shape[0]
    mins = [int(pts[:, k].min()) + int(gens[:, k].min()) for k in range(d)]
    maxs = [int(pts[:, k].max()) + int(gens[:, k].max()) for k in range(d)]
    ranges = [mx - mn + 1 for mn, mx in zip(mins, maxs)]
    span = 1
    for r in ranges:
        span *= r
    if span >= 1 << 62:
        # key packing would overflow; fall back to row-wise unique
        sums = (pts[:, None, :] + gens[None, :, :]).reshape(n * m, d)
        return np.unique(sums, axis=0)
    strides = [0] * d
    acc = 1
    for k in range(d - 1, -1, -1):
        strides[k] = acc
        acc *= ranges[k]
    mins_a = np.asarray(mins, dtype=np.int64)
    strides_a = np.asarray(strides, dtype=np.int64)
    if active_backend() == "numba":
        keys = _nb_expand_keys(pts, gens, mins_a, strides_a)
    else:
        sums = (pts[:, None, :] + gens[None, :, :]).reshape(n * m, d)
        keys = (sums - mins_a) @ strides_a
    uniq = np.unique(keys)
    return _decode_keys(uniq, mins_a, np.asarray(ranges, dtype=np.int64))


def int64_budget_ok(*values) -> bool:
    """True when every |value| stays clear of the int64 kernel range."""
    return all(abs(int(v)) < (1 << 62) for v in values)
