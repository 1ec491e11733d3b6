"""Exact integer and rational linear algebra over point configurations.

Everything here is arbitrary precision: determinants via fraction-free
elimination, lattice bases via integer row reduction to Hermite form, and
input normalization (translate an extremal point to the origin and change
coordinates so the generated lattice is the full integer lattice).
No floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    DimensionError,
    InternalInvariantError,
    PreconditionError,
)

Point = tuple[int, ...]


def _as_point(coords) -> Point:
    return tuple(int(c) for c in coords)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def determinant(rows) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    m = [[int(v) for v in row] for row in rows]
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def hermite_basis(vectors) -> list[list[int]]:
    """Row Hermite normal form basis of the lattice generated by ``vectors``.

    Returns echelon rows with positive pivots and the entries above each
    pivot reduced into [0, pivot).  The result is canonical: feeding it back
    in reproduces it exactly.
    """
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionError("vectors must share one dimension")
    basis: list[list[int]] = []
    col = 0
    while rows and col < width:
        live = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            a = live[0]
            reduced = []
            for r in live[1:]:
                q = r[col] // a[col]
                new = [x - q * y for x, y in zip(r, a)]
                if new[col] != 0:
                    reduced.append(new)
                elif any(new):
                    rest.append(new)
            live = [a] + reduced
        if live:
            piv = live[0]
            if piv[col] < 0:
                piv = [-x for x in piv]
            basis.append(piv)
        rows = rest
        col += 1
    # reduce entries above each pivot so the form is canonical; ascending
    # order is required: row i only alters columns >= its pivot column
    pivots = []
    for row in basis:
        c = next(i for i, v in enumerate(row) if v != 0)
        pivots.append(c)
    for i in range(1, len(basis)):
        c = pivots[i]
        p = basis[i][c]
        for j in range(i):
            q = basis[j][c] // p
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return basis


def lattice_basis(vectors) -> tuple[list[Point], int | None]:
    """Basis of the lattice generated by ``vectors`` plus its index in Z^d.

    The index is [Z^d : lattice] when the lattice has full rank, else None
    (an infinite index).  An empty input yields an empty basis.
    """
    vecs = [_as_point(v) for v in vectors]
    if not vecs:
        return [], None
    dim = len(vecs[0])
    basis = hermite_basis(vecs)
    rows = [tuple(r) for r in basis]
    if len(rows) < dim:
        return rows, None
    idx = abs(determinant(rows))
    if idx == 0:  # cannot happen for an echelon basis; guard anyway
        raise InternalInvariantError("full-rank basis with zero determinant")
    return rows, idx


def lattice_rank(vectors) -> int:
    return len(hermite_basis(vectors))


def integer_kernel(rows) -> list[tuple[int, ...]]:
    """Basis of the lattice {x in Z^n : M x = 0} for an integer matrix M.

    Row-reduces the transpose alongside an identity block; rows whose image
    part vanishes carry a basis of the full integer kernel.  The result is
    returned in canonical Hermite form.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if ncols == 0:
        return []
    live = [
        [int(rows[i][j]) for i in range(nrows)]
        + [1 if k == j else 0 for k in range(ncols)]
        for j in range(ncols)
    ]
    for col in range(nrows):
        nz = [w for w in live if w[col] != 0]
        rest = [w for w in live if w[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda w: abs(w[col]))
            a = nz[0]
            reduced = [a]
            for w in nz[1:]:
                q = w[col] // a[col]
                new = [x - q * y for x, y in zip(w, a)]
                if new[col] != 0:
                    reduced.append(new)
                else:
                    rest.append(new)
            nz = reduced
        live = rest  # the pivot row (if any) is dropped; it is not in the kernel
    kernel = [w[nrows:] for w in live]
    return [tuple(r) for r in hermite_basis(kernel)]


def solve_in_lattice(basis, target) -> tuple[int, ...] | None:
    """Integer coefficients c with sum(c_j * basis_j) == target, or None.

    ``basis`` must be echelon rows (as produced by :func:`hermite_basis`).
    """
    if not basis:
        return () if not any(target) else None
    width = len(basis[0])
    resid = [int(v) for v in target]
    if len(resid) != width:
        raise DimensionError("target dimension mismatch")
    coeffs = []
    for row in basis:
        c = next(i for i, v in enumerate(row) if v != 0)
        if resid[c] % row[c] != 0:
            return None
        q = resid[c] // row[c]
        coeffs.append(q)
        if q:
            resid = [x - q * y for x, y in zip(resid, row)]
    if any(resid):
        return None
    return tuple(coeffs)


def solve_rational(rows, rhs) -> tuple[list[Fraction], int] | None:
    """One exact solution of rows * x = rhs with free variables set to 0.

    Returns (solution, rank) or None when the system is inconsistent.
    """
    m = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    if len(m) != len(rhs):
        raise DimensionError("rows / rhs length mismatch")
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol, len(pivots)


def convex_coefficients(point, generators, dim) -> list[Fraction] | None:
    """Exact convex-combination coefficients of ``point`` over ``generators``.

    Searches affinely independent subsets of size <= dim + 1 (every point of
    a hull lies in a simplex spanned by hull points), returning coefficients
    indexed like ``generators`` or None when no combination exists.
    """
    gens = [_as_point(g) for g in generators]
    target = list(point) + [1]
    for size in range(1, min(len(gens), dim + 1) + 1):
        for idxs in itertools.combinations(range(len(gens)), size):
            cols = [list(gens[i]) + [1] for i in idxs]
            rows = [[cols[j][k] for j in range(size)] for k in range(dim + 1)]
            solved = solve_rational(rows, target)
            if solved is None:
                continue
            sol, rank = solved
            if rank < size:
                continue  # affinely dependent subset; a smaller one covers it
            if all(c >= 0 for c in sol):
                out = [Fraction(0)] * len(gens)
                for i, c in zip(idxs, sol):
                    out[i] = c
                return out
    return None


def extremal_points(points, dim) -> list[Point]:
    """Points not expressible as convex combinations of the others, lex-sorted."""
    pts = [_as_point(p) for p in points]
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not others or convex_coefficients(p, others, dim) is None:
            out.append(p)
    return sorted(out)


@dataclass(frozen=True)
class Normalization:
    """How a normalized configuration maps back to its source coordinates.

    A normalized point c corresponds to ``translation + sum(c_j * basis[j])``
    in the source frame.  ``basis`` is None for a pure translation.
    """

    translation: Point
    basis: tuple[Point, ...] | None
    source_dim: int

    def to_source(self, point: Point) -> Point:
        if self.basis is None:
            return tuple(t + x for t, x in zip(self.translation, point))
        acc = list(self.translation)
        for c, row in zip(point, self.basis):
            for k, v in enumerate(row):
                acc[k] += c * v
        return tuple(acc)


@dataclass(frozen=True)
class PointConfig:
    """An ordered finite set of distinct lattice points in Z^dim."""

    points: tuple[Point, ...]
    dim: int
    normalization: Normalization | None = None
    normalized: bool = field(default=False, compare=False)

    def __post_init__(self):
        pts = tuple(_as_point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise PreconditionError("a point configuration needs at least one point")
        if any(len(p) != self.dim for p in pts):
            raise DimensionError("all points must have length dim")
        if len(set(pts)) != len(pts):
            raise PreconditionError("points must be pairwise distinct")

    @classmethod
    def from_points(cls, points, dim=None) -> "PointConfig":
        pts = [_as_point(p) for p in points]
        if dim is None:
            if not pts:
                raise PreconditionError("cannot infer dimension of an empty set")
            dim = len(pts[0])
        return cls(points=tuple(pts), dim=dim)

    @property
    def size(self) -> int:
        return len(self.points)

    def columns(self) -> list[list[int]]:
        """The dim-by-size matrix with the points as columns, as row lists."""
        return [[p[k] for p in self.points] for k in range(self.dim)]

    def augmented_columns(self) -> list[list[int]]:
        """Same as :meth:`columns` with an all-ones weight row appended."""
        return self.columns() + [[1] * self.size]

    def combine(self, coefficients) -> Point:
        """sum(c_i * point_i) for integer or rational coefficients."""
        acc = [0] * self.dim
        for c, p in zip(coefficients, self.points):
            if c:
                for k in range(self.dim):
                    acc[k] += c * p[k]
        return tuple(acc)

    def extremal(self) -> list[Point]:
        return extremal_points(self.points, self.dim)

    def index_of(self, point) -> int:
        return self.points.index(_as_point(point))


def normalize_config(config: PointConfig, pivot=None) -> PointConfig:
    """Translate an extremal point to 0 and re-coordinatize onto Z^rank.

    The pivot defaults to the lexicographically least extremal point, which
    makes the operation deterministic and idempotent.  The recorded
    :class:`Normalization` maps results back to the input frame.  Sumset
    cardinalities and all thresholds are invariant under this map.
    """
    ext = config.extremal()
    if pivot is None:
        piv = ext[0]
    else:
        piv = _as_point(pivot)
        if piv not in ext:
            raise PreconditionError(f"pivot {piv} is not an extremal point")
    translated = [tuple(a - b for a, b in zip(p, piv)) for p in config.points]
    basis = hermite_basis(translated)
    rank = len(basis)
    new_points = []
    for t in translated:
        coeffs = solve_in_lattice(basis, t)
        if coeffs is None:
            raise InternalInvariantError("generator escaped its own lattice")
        new_points.append(coeffs)
    basis_rows = tuple(tuple(r) for r in basis) if basis else None
    is_identity = rank == config.dim and all(
        basis[i][j] == (1 if i == j else 0) for i in range(rank) for j in range(config.dim)
    )
    norm = Normalization(
        translation=piv,
        basis=None if is_identity else basis_rows,
        source_dim=config.dim,
    )
    return PointConfig(
        points=tuple(sorted(new_points)),
        dim=rank,
        normalization=norm,
        normalized=True,
    )


def is_normalized(config: PointConfig) -> bool:
    """True when 0 is an extremal point and the points generate Z^dim."""
    zero = (0,) * config.dim
    if zero not in config.points:
        return False
    if config.dim == 0:
        return True
    basis = hermite_basis(config.points)
    if len(basis) != config.dim:
        return False
    if abs(determinant(basis)) != 1:
        return False
    return zero in config.extremal()


def require_normalized(config: PointConfig) -> PointConfig:
    """Pass the config through, raising unless it is in normalized form."""
    if config.normalized or is_normalized(config):
        return config
    raise PreconditionError(
        "configuration must be normalized first (0 extremal, full lattice); "
        "call normalize_config"
    )


def is_anchored(config: PointConfig) -> bool:
    """True when 0 is an extremal point and the points span the space.

    Weaker than :func:`is_normalized`: the generated lattice may be a proper
    sublattice.  This matches what the reduction and decomposition
    operations actually require.
    """
    zero = (0,) * config.dim
    if zero not in config.points:
        return False
    if lattice_rank(config.points) != config.dim:
        return False
    return zero in config.extremal()


def require_anchored(config: PointConfig) -> PointConfig:
    if config.normalized or is_anchored(config):
        return config
    raise PreconditionError(
        "configuration must have the origin as an extremal point and span "
        "the ambient space; call normalize_config"
    )


def content(vector) -> int:
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for v in vector:
        g = gcd(g, abs(int(v)))
    return g
