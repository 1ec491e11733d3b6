"""Independent brute-force oracles used to freeze expected test values.

Everything here deliberately avoids the library's own algorithms: cofactor
determinants instead of fraction-free elimination, multiset enumeration
instead of incremental sumsets, sieves instead of memoized descent, and
rational plane-solving instead of cofactor normals.  Slow but exact.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product


def naive_determinant(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * naive_determinant(minor)
    return total


def sumset_by_enumeration(points, n):
    """N*A via raw multiset enumeration (exponential; tiny cases only)."""
    out = set()
    for combo in combinations_with_replacement(points, n):
        out.add(tuple(sum(c[k] for c in combo) for k in range(len(points[0]))))
    return sorted(out)


def semigroup_sieve(gens, bounds):
    """P(gens) inside a box, for componentwise-nonnegative generators only.

    Sound because partial sums of nonnegative vectors never leave the box
    going up; grows from 0 until closure.
    """
    assert all(all(c >= 0 for c in g) for g in gens), "sieve needs nonneg gens"
    d = len(bounds)
    inside = lambda p: all(lo <= c <= hi for c, (lo, hi) in zip(p, bounds))
    reached = {(0,) * d}
    frontier = [(0,) * d]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(a + b for a, b in zip(p, g))
                if q not in reached and all(c <= hi for c, (_, hi) in zip(q, bounds)):
                    reached.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(p for p in reached if inside(p))


def representations_by_multisets(points, x, h):
    """rep_h(x) via raw multiset enumeration (independent of the DFS)."""
    n = len(points)
    out = set()
    for combo in combinations_with_replacement(range(n), h):
        total = tuple(sum(points[i][k] for i in combo) for k in range(len(x)))
        if total == tuple(x):
            vec = [0] * n
            for i in combo:
                vec[i] += 1
            out.add(tuple(vec))
    return sorted(out)


def hull_facets_by_planes(points, dim):
    """Supporting hyperplanes via rational plane-solving over d-subsets.

    Returns a set of (normal, offset) pairs with the hull on the <= side and
    primitive integer normals; independent of the cofactor construction.
    """
    from math import gcd

    facets = set()
    for subset in combinations(points, dim):
        # solve for a rational normal: n . (p - p0) = 0 for p in subset
        base = subset[0]
        rows = [[Fraction(p[k] - base[k]) for k in range(dim)] for p in subset[1:]]
        # find a nonzero rational kernel vector by trying each unit fix
        normal = None
        for fixed in range(dim):
            cols = [c for c in range(dim) if c != fixed]
            mat = [[rows[i][c] for c in cols] for i in range(len(rows))]
            rhs = [-rows[i][fixed] for i in range(len(rows))]
            sol = _solve_square(mat, rhs)
            if sol is None:
                continue
            cand = [Fraction(0)] * dim
            cand[fixed] = Fraction(1)
            for c, v in zip(cols, sol):
                cand[c] = v
            normal = cand
            break
        if normal is None:
            continue
        lcm = 1
        for f in normal:
            lcm = lcm * f.denominator // gcd(lcm, f.denominator)
        ints = [int(f * lcm) for f in normal]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if g == 0:
            continue
        ints = [v // g for v in ints]
        c = sum(n * x for n, x in zip(ints, base))
        dots = [sum(n * x for n, x in zip(ints, p)) for p in points]
        if all(v <= c for v in dots):
            facets.add((tuple(ints), c))
        elif all(v >= c for v in dots):
            facets.add((tuple(-v for v in ints), -c))
    return facets


def _solve_square(mat, rhs):
    n = len(rhs)
    m = [list(row) + [r] for row, r in zip(mat, rhs)]
    if any(len(row) != n + 1 for row in m):
        return None
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [v - f * w for v, w in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def dilate_points_by_facets(points, dim, n):
    """Lattice points of n*hull via the independently-computed facets."""
    facets = hull_facets_by_planes(points, dim)
    lo = [n * min(p[k] for p in points) for k in range(dim)]
    hi = [n * max(p[k] for p in points) for k in range(dim)]
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(sum(nv * xv for nv, xv in zip(normal, x)) <= n * c
               for normal, c in facets):
            out.append(x)
    return out
