"""Iterated sumsets, semigroup membership, and exceptional lattice points.

Point sets ride int64 numpy arrays through the hot kernels whenever the
coordinates provably fit; otherwise everything falls back to exact Python
integers.  All outputs are canonicalized (lexicographically sorted) so runs
are deterministic regardless of backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .errors import BudgetExceededError, PreconditionError
from .lattice import (
    Point,
    PointConfig,
    hermite_basis,
    require_normalized,
    solve_in_lattice,
)
from .polytope import cone_constraints, convex_hull, count_dilate_points


@dataclass(frozen=True)
class GrowthRecord:
    n: int
    size: int
    points: tuple[Point, ...] | None = None


@dataclass(frozen=True)
class GrowthTable:
    records: tuple[GrowthRecord, ...]

    def sizes(self) -> list[int]:
        return [r.size for r in self.records]

    def size_at(self, n: int) -> int:
        return self.records[n - 1].size


@dataclass(frozen=True)
class RegionSpec:
    """A finite search region: an explicit coordinate box or a hull dilate."""

    kind: str
    bounds: tuple[tuple[int, int], ...] | None = None
    n: int | None = None

    @classmethod
    def box(cls, bounds) -> "RegionSpec":
        bs = tuple((int(a), int(b)) for a, b in bounds)
        if any(a > b for a, b in bs):
            raise PreconditionError("empty box region")
        return cls(kind="box", bounds=bs)

    @classmethod
    def dilate(cls, n: int) -> "RegionSpec":
        if n < 1:
            raise PreconditionError("dilate region needs n >= 1")
        return cls(kind="dilate", n=int(n))


def _iterate_arrays(config: PointConfig, n_max: int) -> Iterator[np.ndarray]:
    gens = kernels.points_to_array(sorted(config.points))
    cur = gens.copy()
    yield cur
    for _ in range(2, n_max + 1):
        cur = kernels.sumset_step(cur, gens)
        yield cur


def _iterate_tuples(config: PointConfig, n_max: int) -> Iterator[list[Point]]:
    gens = sorted(config.points)
    cur = set(gens)
    yield sorted(cur)
    for _ in range(2, n_max + 1):
        cur = {tuple(a + b for a, b in zip(p, g)) for p in cur for g in gens}
        yield sorted(cur)


def iter_sumsets(config: PointConfig, n_max: int) -> Iterator[list[Point]]:
    """Yield the point list of N*A for N = 1..n_max, lexicographically sorted."""
    max_abs = max((abs(c) for p in config.points for c in p), default=0)
    if kernels.int64_budget_ok(max_abs * max(n_max, 1) * 2):
        for arr in _iterate_arrays(config, n_max):
            yield kernels.array_to_points(arr)
    else:
        yield from _iterate_tuples(config, n_max)


def sumset_iterate(config: PointConfig, n_max: int, keep_points: bool = False,
                   cap_points: int = 10 ** 7) -> GrowthTable:
    """Exact growth table of |N*A| for N = 1..n_max.

    Computed incrementally as (N-1)A + A with deduplication.  When a level
    would exceed ``cap_points`` points, a BudgetExceededError is raised that
    names the level reached and carries the partial table.
    """
    if n_max < 1:
        raise PreconditionError("n_max must be >= 1")
    records: list[GrowthRecord] = []
    max_abs = max((abs(c) for p in config.points for c in p), default=0)
    fast = kernels.int64_budget_ok(max_abs * n_max * 2)
    source = _iterate_arrays(config, n_max) if fast else _iterate_tuples(config, n_max)
    for n, pts in enumerate(source, start=1):
        size = len(pts)
        if size > cap_points:
            raise BudgetExceededError(
                f"sumset size {size} exceeds the {cap_points} point budget at N={n}",
                reached=n,
                partial=GrowthTable(records=tuple(records)),
            )
        if keep_points:
            stored = tuple(kernels.array_to_points(pts)) if fast else tuple(pts)
        else:
            stored = None
        records.append(GrowthRecord(n=n, size=size, points=stored))
    return GrowthTable(records=tuple(records))


def growth_sizes(config: PointConfig, n_max: int, cap_points: int = 10 ** 7) -> list[int]:
    """|N*A| for N = 1..n_max (same budget behavior as sumset_iterate)."""
    return sumset_iterate(config, n_max, cap_points=cap_points).sizes()


class SemigroupOracle:
    """Memoized decision procedure for nonnegative integer combinations.

    Generators are the nonzero points of a configuration whose cone is
    pointed (the origin is a vertex of hull(points + {0})).  Membership of p
    descends p -> p - g, pruned by exact cone tests; termination is
    guaranteed because every step strictly decreases the sum of the inner
    facet functionals, which is positive away from 0 on the cone.
    """

    def __init__(self, config: PointConfig):
        dim = config.dim
        zero = (0,) * dim
        gens = sorted(set(config.points) - {zero})
        self._source_dim = dim
        self._gen_map: dict[Point, Point] = {}
        if not gens:
            self._basis = []
            self._gens: list[Point] = []
            self._cone: list[Point] = []
            self._memo: dict[Point, bool] = {(): True}
            self._via: dict[Point, Point] = {}
            self._weights: dict[Point, int | None] = {(): 0}
            return
        self._basis = hermite_basis(gens)
        reduced = []
        for g in gens:
            coords = solve_in_lattice(self._basis, g)
            reduced.append(coords)
            self._gen_map[coords] = g
        rank = len(self._basis)
        rzero = (0,) * rank
        hull_cfg = PointConfig.from_points(sorted(set(reduced) | {rzero}), rank)
        poly = convex_hull(hull_cfg)
        if rzero not in poly.extremal:
            raise PreconditionError("semigroup cone is not pointed at the origin")
        self._cone = cone_constraints(poly)
        self._gens = sorted(reduced)
        self._memo = {rzero: True}
        self._via = {}
        self._weights = {rzero: 0}

    def _reduce(self, point) -> Point | None:
        if not self._basis:
            return () if not any(point) else None
        if len(point) != self._source_dim:
            raise PreconditionError("point dimension mismatch")
        return solve_in_lattice(self._basis, point)

    def _in_cone(self, point) -> bool:
        return all(sum(n * x for n, x in zip(normal, point)) <= 0
                   for normal in self._cone)

    def _solve(self, start: Point) -> bool:
        memo = self._memo
        gens = self._gens
        stack = [(start, 0)]
        while stack:
            point, idx = stack.pop()
            if point in memo:
                continue
            resolved = False
            pushed = False
            j = idx
            while j < len(gens):
                child = tuple(a - b for a, b in zip(point, gens[j]))
                if self._in_cone(child):
                    val = memo.get(child)
                    if val is True:
                        memo[point] = True
                        self._via[point] = gens[j]
                        resolved = True
                        break
                    if val is None:
                        stack.append((point, j))
                        stack.append((child, 0))
                        pushed = True
                        break
                j += 1
            if not resolved and not pushed:
                memo[point] = False
        return memo[start]

    def contains(self, point) -> bool:
        reduced = self._reduce(point)
        if reduced is None or not self._in_cone(reduced):
            return False
        return self._solve(reduced)

    def certificate(self, point) -> dict[Point, int] | None:
        """A combination {generator: count} witnessing membership, or None."""
        if not self.contains(point):
            return None
        reduced = self._reduce(point)
        counts: dict[Point, int] = {}
        cur = reduced
        while any(cur):
            g = self._via[cur]
            orig = self._gen_map[g]
            counts[orig] = counts.get(orig, 0) + 1
            cur = tuple(a - b for a, b in zip(cur, g))
        return counts

    def min_weight(self, point) -> int | None:
        """Least number of generators summing to ``point`` (None if outside)."""
        reduced = self._reduce(point)
        if reduced is None or not self._in_cone(reduced):
            return None
        weights = self._weights
        stack = [(reduced, False)]
        while stack:
            cur, expanded = stack.pop()
            if cur in weights:
                continue
            children = []
            for g in self._gens:
                child = tuple(a - b for a, b in zip(cur, g))
                if self._in_cone(child):
                    children.append(child)
            if not expanded:
                stack.append((cur, True))
                stack.extend((c, False) for c in children if c not in weights)
                continue
            best = None
            for c in children:
                w = weights.get(c)
                if w is not None and (best is None or w + 1 < best):
                    best = w + 1
            weights[cur] = best
        return weights[reduced]

    def min_weight_certificate(self, point) -> dict[Point, int] | None:
        """A minimum-length combination, built greedily (lex-least generator)."""
        total = self.min_weight(point)
        if total is None:
            return None
        counts: dict[Point, int] = {}
        cur = self._reduce(point)
        w = total
        while w > 0:
            for g in self._gens:
                child = tuple(a - b for a, b in zip(cur, g))
                if self._in_cone(child) and self._weights.get(child) == w - 1:
                    orig = self._gen_map[g]
                    counts[orig] = counts.get(orig, 0) + 1
                    cur = child
                    w -= 1
                    break
            else:  # pragma: no cover - would contradict min_weight
                raise PreconditionError("certificate reconstruction failed")
        return counts


_oracles: dict[tuple, SemigroupOracle] = {}


def semigroup_oracle(config: PointConfig) -> SemigroupOracle:
    key = (config.points, config.dim)
    oracle = _oracles.get(key)
    if oracle is None:
        oracle = SemigroupOracle(config)
        _oracles[key] = oracle
    return oracle


def semigroup_contains(config: PointConfig, point) -> tuple[bool, dict[Point, int] | None]:
    """Whether ``point`` is a nonnegative integer combination of the nonzero
    points of ``config``, together with a witnessing combination."""
    oracle = semigroup_oracle(config)
    ok = oracle.contains(tuple(point))
    return (True, oracle.certificate(tuple(point))) if ok else (False, None)


def region_points(config: PointConfig, region: RegionSpec,
                  cap_points: int = 10 ** 7) -> list[Point]:
    """Lattice points of the region, restricted to the cone of the config."""
    if region.kind == "dilate":
        return count_dilate_points(config, region.n, enumerate_points=True,
                                   cap_points=cap_points)
    bounds = region.bounds
    if len(bounds) != config.dim:
        raise PreconditionError("box bounds must match the dimension")
    size = 1
    for a, b in bounds:
        size *= (b - a + 1)
    if size > cap_points:
        raise BudgetExceededError(
            f"region holds {size} points, above the {cap_points} cap")
    poly = convex_hull(config)
    normals = cone_constraints(poly)
    lo = [a for a, _ in bounds]
    hi = [b for _, b in bounds]
    lhs = [list(n) for n in normals]
    rhs = [0] * len(normals)
    bound = max(
        (sum(abs(v) * max(abs(a), abs(b)) for v, a, b in zip(row, lo, hi))
         for row in lhs),
        default=0,
    )
    if kernels.int64_budget_ok(bound, *(lo + hi)):
        return kernels.array_to_points(kernels.box_points(lo, hi, lhs, rhs))
    out = []
    from itertools import product
    for pt in product(*(range(a, b + 1) for a, b in bounds)):
        if all(sum(n * x for n, x in zip(normal, pt)) <= 0 for normal in normals):
            out.append(pt)
    return out


def exceptional_in_region(config: PointConfig, region: RegionSpec,
                          cap_points: int = 10 ** 7) -> list[Point]:
    """Cone lattice points in the region that the semigroup never reaches.

    Only ever computed inside an explicit finite region; the full
    exceptional set can be infinite.
    """
    require_normalized(config)
    oracle = semigroup_oracle(config)
    out = [p for p in region_points(config, region, cap_points)
           if not oracle.contains(p)]
    return sorted(out)
