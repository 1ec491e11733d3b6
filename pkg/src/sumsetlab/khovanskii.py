"""Sumset growth: the exact polynomial describing |NA|, where it starts, and bounds.

|NA| counts the distinct values of weight-N nonnegative combinations of the
points, which equals the number of lexicographically-least exponent vectors
of weight N.  The vectors that are *not* lex-least form an upward-closed
set; its finitely many coordinate-minimal elements drive everything here:
an inclusion-exclusion size formula, the exact growth polynomial, and the
exact onset threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import (
    BudgetExceededError,
    InternalInvariantError,
    PreconditionError,
)
from .kernels import int64_budget_ok
from .lattice import PointConfig
from .polynomials import (
    RationalPolynomial,
    interpolate_consecutive,
    monic_shifted_product,
)
from .polytope import volumes
from .circuits import kernel_lattice
from .sumsets import iter_sumsets


def enumerate_representations(config: PointConfig, point, h: int) -> list[tuple[int, ...]]:
    """All exponent vectors of weight h whose point combination equals ``point``.

    Depth-first over coefficient assignments in configuration order, pruned
    by per-coordinate range feasibility; the output is lexicographically
    sorted, so the first entry is the canonical (lex-least) representation.
    """
    if h < 0:
        raise PreconditionError("weight must be nonnegative")
    pts = config.points
    n = len(pts)
    d = config.dim
    target = tuple(point)
    suf_min = [[0] * d for _ in range(n + 1)]
    suf_max = [[0] * d for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for k in range(d):
            lo = pts[i][k] if i == n - 1 else min(pts[i][k], suf_min[i + 1][k])
            hi = pts[i][k] if i == n - 1 else max(pts[i][k], suf_max[i + 1][k])
            suf_min[i][k] = lo
            suf_max[i][k] = hi
    out: list[tuple[int, ...]] = []
    prefix = [0] * n

    def rec(i: int, h_rem: int, resid: tuple[int, ...]):
        if i == n:
            if h_rem == 0 and not any(resid):
                out.append(tuple(prefix))
            return
        for k in range(d):
            if not h_rem * suf_min[i][k] <= resid[k] <= h_rem * suf_max[i][k]:
                return
        if i == n - 1:
            if resid == tuple(h_rem * c for c in pts[i]):
                prefix[i] = h_rem
                out.append(tuple(prefix))
                prefix[i] = 0
            return
        p = pts[i]
        for c in range(h_rem + 1):
            prefix[i] = c
            rec(i + 1, h_rem - c, tuple(r - c * v for r, v in zip(resid, p)))
        prefix[i] = 0

    rec(0, h, target)
    return out


@dataclass(frozen=True)
class ObstructionSet:
    """Coordinate-minimal exponent vectors that are not lex-least in their class.

    Exponent vectors m and m' are in one class when they share weight and
    point combination; the non-lex-least ones form an upward-closed set, and
    ``elements`` are its finitely many minimal members.  ``status`` is
    "truncated" when a weight cap or candidate budget cut the scan short.
    """

    elements: tuple[tuple[int, ...], ...]
    status: str
    weight_scanned: int
    weight_required: int

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def column_max_weight(self) -> int:
        """Sum over coordinates of the largest entry over all elements."""
        if not self.elements:
            return 0
        n = len(self.elements[0])
        return sum(max(m[i] for m in self.elements) for i in range(n))


def _pack_rows(rows: np.ndarray, lows, base_sizes):
    """Mixed-radix int64 keys for rows; key order equals row lex order."""
    strides = np.empty(len(base_sizes), dtype=np.int64)
    acc = 1
    for j in range(len(base_sizes) - 1, -1, -1):
        strides[j] = acc
        acc *= base_sizes[j]
    return (rows - np.asarray(lows, dtype=np.int64)) @ strides, strides


def _unpack_keys(keys: np.ndarray, lows, base_sizes) -> np.ndarray:
    out = np.empty((len(keys), len(base_sizes)), dtype=np.int64)
    vals = keys.copy()
    for j in range(len(base_sizes) - 1, -1, -1):
        out[:, j] = vals % base_sizes[j] + lows[j]
        vals //= base_sizes[j]
    return out


_obstruction_cache: dict[tuple, "ObstructionSet"] = {}


def minimal_obstructions(config: PointConfig, max_weight: int | None = None,
                         candidate_budget: int = 5_000_000) -> ObstructionSet:
    """Scan weight levels for the minimal non-lex-least exponent vectors.

    Level h candidates are single-step extensions of the level h-1 lex-least
    survivors (their predecessors are always survivors), filtered against the
    elements already found; within each (weight, value) class the lex-least
    candidate survives and every other one is a new minimal element.  The
    scan is complete at weight |A|^2 * det_max; earlier caps leave the result
    truncated but every returned element is genuine.
    """
    cache_key = (config.points, config.dim, max_weight, candidate_budget)
    cached = _obstruction_cache.get(cache_key)
    if cached is not None:
        return cached
    result = _minimal_obstructions_scan(config, max_weight, candidate_budget)
    _obstruction_cache[cache_key] = result
    return result


def _minimal_obstructions_scan(config: PointConfig, max_weight: int | None,
                               candidate_budget: int) -> ObstructionSet:
    n = config.size
    if n == 1 or not kernel_lattice(config):
        return ObstructionSet(elements=(), status="exact",
                              weight_scanned=1, weight_required=1)
    det_max = volumes(config).det_max
    required = n * n * det_max
    cap = required if max_weight is None else min(required, max_weight)
    max_coord = max(abs(c) for p in config.points for c in p)
    if not int64_budget_ok(required * max(max_coord, 1) * n):
        raise BudgetExceededError("obstruction scan would overflow the fast path")
    pts = np.asarray([list(p) for p in config.points], dtype=np.int64)
    d = config.dim
    survivors = np.eye(n, dtype=np.int64)
    found: list[np.ndarray] = []
    processed = n
    scanned = 1
    truncated = False
    col_min = pts.min(axis=0)
    col_max = pts.max(axis=0)
    for h in range(2, cap + 1):
        exp_sizes = [h + 1] * n
        packable = (h + 1) ** n < (1 << 62)
        if packable:
            skeys, strides = _pack_rows(survivors, [0] * n, exp_sizes)
            cand_keys = np.unique((skeys[:, None] + strides[None, :]).ravel())
            cand = _unpack_keys(cand_keys, [0] * n, exp_sizes)
        else:
            cand = (survivors[:, None, :] + np.eye(n, dtype=np.int64)[None, :, :]
                    ).reshape(-1, n)
            cand = np.unique(cand, axis=0)
        processed += len(cand)
        if processed > candidate_budget:
            truncated = True
            break
        if found:
            dominated = np.zeros(len(cand), dtype=bool)
            for mu in found:
                dominated |= (cand >= mu).all(axis=1)
            cand = cand[~dominated]
        if len(cand) == 0:
            scanned = h
            survivors = cand
            continue
        values = cand @ pts
        val_sizes = [int(h * (col_max[k] - col_min[k])) + 1 for k in range(d)]
        span = 1
        for s in val_sizes:
            span *= s
        if packable and span < (1 << 62):
            vkeys, _ = _pack_rows(values, [int(h * col_min[k]) for k in range(d)],
                                  val_sizes)
            ckeys, _ = _pack_rows(cand, [0] * n, exp_sizes)
            order = np.lexsort((ckeys, vkeys))
            cand = cand[order]
            vkeys = vkeys[order]
            new_class = np.ones(len(cand), dtype=bool)
            new_class[1:] = vkeys[1:] != vkeys[:-1]
        else:
            order = np.lexsort(tuple(cand[:, j] for j in range(n - 1, -1, -1))
                               + tuple(values[:, k] for k in range(d - 1, -1, -1)))
            cand = cand[order]
            values = values[order]
            new_class = np.ones(len(cand), dtype=bool)
            new_class[1:] = (values[1:] != values[:-1]).any(axis=1)
        survivors = cand[new_class]
        for row in cand[~new_class]:
            found.append(row.copy())
        scanned = h
    status = "truncated" if (truncated or cap < required) else "exact"
    elements = tuple(sorted(tuple(int(v) for v in row) for row in found))
    return ObstructionSet(elements=elements, status=status,
                          weight_scanned=scanned, weight_required=required)


def _subset_weights(elements) -> dict[int, int]:
    """Signed subset counts keyed by the weight of the componentwise max."""
    acc: dict[int, int] = {}

    def rec(i: int, cur: tuple[int, ...], sign: int):
        if i == len(elements):
            w = sum(cur)
            acc[w] = acc.get(w, 0) + sign
            return
        rec(i + 1, cur, sign)
        rec(i + 1, tuple(max(a, b) for a, b in zip(cur, elements[i])), -sign)

    if elements:
        width = len(elements[0])
    else:
        width = 0
    rec(0, (0,) * width, 1)
    return acc


def sumset_size_formula(config: PointConfig, obstructions: ObstructionSet, h: int) -> int:
    """|hA| by inclusion-exclusion over subsets of the minimal obstructions.

    Each subset T contributes (-1)^|T| * C(h - wt(max T) + l - 1, l - 1) with
    the binomial read as 0 whenever its upper index drops below l - 1.
    Requires an exact obstruction set and at most 20 elements (2^20 subsets);
    past that, use the interpolation route of khovanskii_polynomial.
    """
    if not obstructions.exact:
        raise PreconditionError("size formula needs an exact obstruction set")
    if len(obstructions.elements) > 20:
        raise BudgetExceededError(
            "obstruction set too large for subset enumeration; "
            "use the interpolation route")
    n = config.size
    total = 0
    for w, count in _subset_weights(obstructions.elements).items():
        if count == 0:
            continue
        upper = h - w + n - 1
        if upper >= 0:
            total += count * comb(upper, n - 1)
    return total


@dataclass(frozen=True)
class KhovanskiiBounds:
    """Proven onset bounds: the sharp determinant one and the coarse width one."""

    sharp: int
    coarse: int


def khovanskii_bounds(config: PointConfig) -> KhovanskiiBounds:
    """sharp = |A|^2 det_max - |A| + 1;  coarse = (2|A| width)^((d+4)|A|)."""
    n = config.size
    if n == 1:
        return KhovanskiiBounds(sharp=1, coarse=1)
    v = volumes(config)
    sharp = n * n * v.det_max - n + 1
    coarse = (2 * n * v.width) ** ((config.dim + 4) * n)
    return KhovanskiiBounds(sharp=sharp, coarse=coarse)


def _formula_polynomial(config: PointConfig, obstructions: ObstructionSet) -> RationalPolynomial:
    n = config.size
    poly = RationalPolynomial.from_coefficients([0])
    for w, count in _subset_weights(obstructions.elements).items():
        if count == 0:
            continue
        poly = poly + monic_shifted_product(-w, n - 1).scale(count)
    poly = poly.scale(Fraction(1, factorial(n - 1)))
    if poly.degree > config.dim:
        raise InternalInvariantError(
            f"growth polynomial degree {poly.degree} above the dimension")
    return poly


def _growth_sizes_capped(config: PointConfig, n_target: int,
                         cap_points: int) -> list[int]:
    """|NA| for N = 1.. up to n_target, stopping quietly at the point budget."""
    sizes: list[int] = []
    for pts in iter_sumsets(config, n_target):
        if len(pts) > cap_points:
            break
        sizes.append(len(pts))
    return sizes


def khovanskii_polynomial(config: PointConfig, route: str = "auto", *,
                          obstructions: ObstructionSet | None = None,
                          max_weight: int | None = None,
                          cap_points: int = 10 ** 7) -> RationalPolynomial:
    """The degree <= dim polynomial equal to |NA| for all large N.

    route "formula": expand the inclusion-exclusion sum exactly (needs the
    exact obstruction set, degree drops by cancellation).  route
    "interpolation": fit |NA| on the proven-stable window just past the
    sharp bound and verify one step further.  "auto" prefers the formula and
    falls back when the obstruction scan is truncated.
    """
    if route not in ("auto", "formula", "interpolation"):
        raise PreconditionError(f"unknown route {route!r}")
    if route in ("auto", "formula"):
        obs = obstructions
        if obs is None:
            obs = minimal_obstructions(config, max_weight=max_weight)
        if obs.exact and len(obs.elements) <= 20:
            return _formula_polynomial(config, obs)
        if route == "formula":
            raise BudgetExceededError(
                "obstruction set truncated or too large for the formula route",
                reached=obs.weight_scanned)
    bound = khovanskii_bounds(config).sharp
    d = config.dim
    top = bound + d + 1
    sizes = _growth_sizes_capped(config, top, cap_points)
    if len(sizes) < top:
        raise BudgetExceededError(
            f"interpolation needs |NA| up to N={top} but the point budget "
            f"stopped at N={len(sizes)}",
            reached=len(sizes))
    poly = interpolate_consecutive(bound, sizes[bound - 1:bound + d])
    if poly(top) != sizes[top - 1]:
        raise InternalInvariantError(
            "interpolated growth polynomial failed its verification point")
    if poly.degree > d:
        raise InternalInvariantError("interpolated polynomial degree too high")
    return poly


@dataclass(frozen=True)
class ThresholdResult:
    value: int
    status: str  # "exact" | "empirical"
    bound: int   # top of the window actually verified
    polynomial: RationalPolynomial
    obstructions: ObstructionSet | None


def khovanskii_threshold(config: PointConfig, *,
                         max_weight: int | None = None,
                         cap_points: int = 10 ** 7,
                         max_n: int | None = None,
                         cross_check: int = 16) -> ThresholdResult:
    """Least N from which |NA| equals the growth polynomial, certified.

    With an exact obstruction set the verification window ends at
    min(sharp bound, column-max weight - |A| + 1), beyond which equality is
    guaranteed; |NA| inside the window comes from iterated sumsets where the
    budget allows and from the size formula elsewhere (the two sources are
    cross-checked on their overlap).  Without an exact set the result
    degrades honestly to an empirical window and status "empirical".
    """
    n = config.size
    bounds = khovanskii_bounds(config)
    obs = minimal_obstructions(config, max_weight=max_weight)
    if obs.exact and len(obs.elements) <= 20:
        poly = _formula_polynomial(config, obs)
        window_top = max(1, min(bounds.sharp, obs.column_max_weight() - n + 1))
        small_top = min(window_top, max_n if max_n is not None else window_top,
                        max(cross_check, 1))
        sizes = _growth_sizes_capped(config, small_top, cap_points)
        counts: dict[int, int] = {}
        for i, s in enumerate(sizes, start=1):
            formula = sumset_size_formula(config, obs, i)
            if formula != s:
                raise InternalInvariantError(
                    f"size formula disagrees with iterated sumset at N={i}: "
                    f"{formula} != {s}")
            counts[i] = s
        for h in range(1, window_top + 1):
            if h not in counts:
                counts[h] = sumset_size_formula(config, obs, h)
        if counts[window_top] != poly(window_top):
            raise InternalInvariantError(
                "growth polynomial fails at its certified window top")
        value = window_top
        while value > 1 and counts[value - 1] == poly(value - 1):
            value -= 1
        return ThresholdResult(value=value, status="exact", bound=window_top,
                               polynomial=poly, obstructions=obs)
    # truncated obstructions: fall back to sumset iteration alone
    d = config.dim
    want = bounds.sharp + d + 1
    if max_n is not None:
        want = min(want, max_n)
    sizes = _growth_sizes_capped(config, want, cap_points)
    top = len(sizes)
    if top >= bounds.sharp + d + 1:
        poly = interpolate_consecutive(bounds.sharp, sizes[bounds.sharp - 1:bounds.sharp + d])
        if poly(bounds.sharp + d + 1) != sizes[bounds.sharp + d]:
            raise InternalInvariantError(
                "interpolated growth polynomial failed its verification point")
        window_top = bounds.sharp
        status = "exact"
    else:
        if top < d + 2:
            raise BudgetExceededError(
                "not enough sumset levels within budget to fit a polynomial",
                reached=top)
        poly = interpolate_consecutive(top - d, sizes[top - d - 1:top])
        window_top = top
        status = "empirical"
    value = window_top
    while value > 1 and poly(value - 1) == sizes[value - 2]:
        value -= 1
    return ThresholdResult(value=value, status=status, bound=window_top,
                           polynomial=poly, obstructions=obs)
