"""When NA fills its whole dilated hull minus the reflected exceptional sets.

For a normalized configuration, NA always sits inside the lattice points of
N*H(A) with, for every hull vertex a, the set a*N - E(a - A) carved out
(E is the exceptional set of the semigroup at that vertex).  Eventually this
inclusion is an equality; this module verifies it level by level, finds the
exact onset when the proven bounds are within budget, and evaluates those
bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExceededError,
    InternalInvariantError,
)
from .lattice import (
    Point,
    PointConfig,
    require_anchored,
    require_normalized,
)
from .polytope import (
    count_dilate_points,
    facet_height_ratio,
    volumes,
)
from .sumsets import (
    RegionSpec,
    iter_sumsets,
    region_points,
    semigroup_oracle,
)


@dataclass(frozen=True)
class StructureReport:
    """Outcome of comparing NA with its maximal possible shape at one N.

    ``extra`` lists sumset points outside the predicted shape; the inclusion
    is unconditional, so extra must always be empty.  ``holds`` means the
    two sides agree exactly.
    """

    n: int
    holds: bool
    missing: tuple[Point, ...]
    extra: tuple[Point, ...]


@dataclass(frozen=True)
class StructureBounds:
    """Proven onset bounds for the structure equation (ceilinged, >= 1).

    bound_a uses the hull volume and vertex count; bound_b only cardinality
    and the extreme simplex determinant; clean is the weaker volume-squared
    form; coarse is the width-power bound.
    """

    bound_a: int
    bound_b: int
    clean: int
    coarse: int


def _ceil_fraction(value) -> int:
    f = Fraction(value)
    return -((-f.numerator) // f.denominator)


def structure_bounds(config: PointConfig) -> StructureBounds:
    require_anchored(config)
    d = config.dim
    n = config.size
    v = volumes(config)
    kappa = facet_height_ratio(config)
    ex_count = len(config.extremal())
    d_fact_vol = v.volume * math.factorial(d)
    if d_fact_vol.denominator != 1:
        raise InternalInvariantError("d! * volume must be an integer")
    bound_a = _ceil_fraction(
        (d + 1) * kappa * (d_fact_vol + (ex_count - d - 1) * v.det_max))
    bound_b = _ceil_fraction((d + 1) * kappa * (n - d - 1) * v.det_max)
    clean = _ceil_fraction(
        (d + 1) * math.factorial(d) ** 2 * (ex_count - d) * v.volume ** 2)
    coarse = (d * n * v.width) ** (13 * d ** 6) if d > 0 else 1
    return StructureBounds(
        bound_a=max(1, bound_a),
        bound_b=max(1, bound_b),
        clean=max(1, clean),
        coarse=max(1, coarse),
    )


def reflected_config(config: PointConfig, vertex) -> PointConfig:
    """The configuration vertex - A (sorted); normalized whenever A is."""
    a = tuple(vertex)
    pts = sorted(tuple(x - y for x, y in zip(a, p)) for p in config.points)
    return PointConfig(points=tuple(pts), dim=config.dim,
                       normalized=config.normalized)


def structure_rhs(config: PointConfig, n: int,
                  cap_points: int = 10 ** 7) -> list[Point]:
    """The maximal possible shape of NA at level n, as a sorted point list.

    Every lattice point of n*H(A) is kept unless, for some hull vertex a,
    its reflection a*n - x lands in the cone of a - A without being a
    nonnegative combination of those points.
    """
    require_normalized(config)
    hull_points = count_dilate_points(config, n, enumerate_points=True,
                                      cap_points=cap_points)
    keep = []
    vertex_oracles = []
    for a in config.extremal():
        cfg = reflected_config(config, a)
        vertex_oracles.append((a, semigroup_oracle(cfg)))
    for x in hull_points:
        excluded = False
        for a, oracle in vertex_oracles:
            y = tuple(v * n - c for v, c in zip(a, x))
            reduced = oracle._reduce(y)
            in_cone = reduced is not None and oracle._in_cone(reduced)
            if in_cone and not oracle.contains(y):
                excluded = True
                break
        if not excluded:
            keep.append(x)
    return keep


def verify_structure_equation(config: PointConfig, n: int,
                              cap_points: int = 10 ** 7,
                              _sumset_points=None) -> StructureReport:
    """Compare NA against structure_rhs at one level."""
    require_normalized(config)
    if _sumset_points is None:
        pts = None
        for pts in iter_sumsets(config, n):
            pass
        na = set(pts)
    else:
        na = set(_sumset_points)
    rhs = set(structure_rhs(config, n, cap_points=cap_points))
    missing = tuple(sorted(rhs - na))
    extra = tuple(sorted(na - rhs))
    return StructureReport(n=n, holds=not missing and not extra,
                           missing=missing, extra=extra)


@dataclass(frozen=True)
class StructureThresholdResult:
    value: int
    status: str  # "exact" | "empirical"
    window_top: int
    bound: int
    failing_levels: tuple[int, ...]


def structure_threshold(config: PointConfig, *,
                        cap_points: int = 10 ** 7,
                        test_budget: int = 10 ** 7,
                        max_n: int | None = None) -> StructureThresholdResult:
    """Least N from which the structure equation holds, verified level by level.

    With B = min(bound_a, bound_b): when every level up to B fits the test
    budget the result is exact (levels beyond B are covered by the proven
    bound); otherwise the window stops early and the status is "empirical".
    The full window is always checked; equality at one level is never
    assumed to propagate upward.
    """
    require_normalized(config)
    bounds = structure_bounds(config)
    bound = min(bounds.bound_a, bounds.bound_b)
    top = bound if max_n is None else min(bound, max_n)
    spent = 0
    vertex_count = max(1, len(config.extremal()))
    failing = []
    checked = 0
    for n, pts in enumerate(iter_sumsets(config, top), start=1):
        cost = len(pts) * (1 + vertex_count)
        if spent + cost > test_budget and checked > 0:
            break
        try:
            report = verify_structure_equation(config, n, cap_points=cap_points,
                                               _sumset_points=pts)
        except BudgetExceededError:
            break
        spent += cost
        checked = n
        if report.extra:
            raise InternalInvariantError(
                f"sumset escaped its predicted shape at N={n}: {report.extra[:3]}")
        if not report.holds:
            failing.append(n)
    if checked == 0:
        raise BudgetExceededError("no structure level fits the test budget",
                                  reached=0)
    status = "exact" if checked >= bound else "empirical"
    value = (failing[-1] + 1) if failing else 1
    if status == "exact" and value > bound:
        raise InternalInvariantError(
            "structure equation fails at its proven bound")
    return StructureThresholdResult(value=value, status=status,
                                    window_top=checked, bound=bound,
                                    failing_levels=tuple(failing))


def verify_extremal_decomposition(config: PointConfig, region: RegionSpec,
                                  cap_points: int = 10 ** 7) -> tuple[bool, list[Point]]:
    """Check P(A) = (d! Vol) A + P(ex(H(A))) on the region's cone points.

    Returns (ok, witnesses); witnesses are region points on which the two
    sides disagree (there should never be any).
    """
    require_anchored(config)
    d = config.dim
    v = volumes(config)
    scale = v.volume * math.factorial(d)
    if scale.denominator != 1:
        raise InternalInvariantError("d! * volume must be an integer")
    scale = int(scale)
    shift_points = None
    for shift_points in iter_sumsets(config, scale):
        pass
    ex_cfg = PointConfig(points=tuple(sorted(config.extremal())), dim=d,
                         normalized=config.normalized)
    oracle_full = semigroup_oracle(config)
    oracle_ex = semigroup_oracle(ex_cfg)
    witnesses = []
    for p in region_points(config, region, cap_points=cap_points):
        lhs = oracle_full.contains(p)
        rhs = any(
            oracle_ex.contains(tuple(a - b for a, b in zip(p, s)))
            for s in shift_points
        )
        if lhs != rhs:
            witnesses.append(p)
    return (not witnesses, sorted(witnesses))
