"""Hyperbolicity, named generators, grids, and the unbounded-defect families.

The generator registry doubles as the test corpus: every named graph used
by the verification suite is produced here, deterministically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import ValidationError
from .graphs import Graph
from . import hull as hull_mod


# -- elementary generators -----------------------------------------------------


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise ValidationError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def wheel_graph(rim):
    if rim < 3:
        raise ValidationError("wheel rim needs at least 3 vertices")
    edges = [(i, i % rim + 1) for i in range(1, rim + 1)]
    edges += [(0, i) for i in range(1, rim + 1)]
    return Graph(rim + 1, edges)


def hypercube_graph(dim):
    n = 1 << dim
    edges = [(u, u ^ (1 << b)) for u in range(n) for b in range(dim) if u < u ^ (1 << b)]
    return Graph(n, edges)


def grid_graph(rows, cols):
    """Rectangular l1 grid."""
    def vid(r, c):
        return r * cols + c
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph(rows * cols, edges)


def king_graph(rows, cols):
    """Rectangular l-infinity grid (strong product of two paths)."""
    def vid(r, c):
        return r * cols + c
    edges = []
    for r in range(rows):
        for c in range(cols):
            for dr, dc in ((0, 1), (1, 0), (1, 1), (1, -1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols:
                    edges.append((vid(r, c), vid(rr, cc)))
    return Graph(rows * cols, edges)


def sun3():
    """Central triangle 0,1,2 with an outer vertex glued on each edge."""
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)])


def house_graph():
    """Square 0,1,2,3 with a roof vertex 4 over the edge 0-1."""
    return Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1)])


def bowtie_graph():
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def k4_minus():
    return Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def k33_minus():
    edges = [(a, b + 3) for a in range(3) for b in range(3)]
    edges.remove((2, 5))
    return Graph(6, edges)


# -- lattice patches -----------------------------------------------------------


def l1_grid(k):
    """Rotated square grid of side 2k: even-parity points with |i|+|j| <= 2k,
    adjacent when both coordinates differ by exactly 1.

    Returns (graph, coords).
    """
    pts = sorted((i, j) for i in range(-2 * k, 2 * k + 1)
                 for j in range(-2 * k, 2 * k + 1)
                 if abs(i) + abs(j) <= 2 * k and (i + j) % 2 == 0)
    index = {p: t for t, p in enumerate(pts)}
    edges = [(index[p], index[q]) for p, q in combinations(pts, 2)
             if abs(p[0] - q[0]) == 1 and abs(p[1] - q[1]) == 1]
    return Graph(len(pts), edges), pts


def linf_diamond(k):
    """All lattice points with |i|+|j| <= 2k, adjacent at Chebyshev distance 1.

    Returns (graph, coords); this is the expected Hellyfication of l1_grid(k).
    """
    pts = sorted((i, j) for i in range(-2 * k, 2 * k + 1)
                 for j in range(-2 * k, 2 * k + 1) if abs(i) + abs(j) <= 2 * k)
    index = {p: t for t, p in enumerate(pts)}
    edges = [(index[p], index[q]) for p, q in combinations(pts, 2)
             if max(abs(p[0] - q[0]), abs(p[1] - q[1])) == 1]
    return Graph(len(pts), edges), pts


def t3_distance(a, b):
    di, dj = b[0] - a[0], b[1] - a[1]
    return (abs(di) + abs(dj) + abs(di + dj)) // 2


_T3_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


def t3_deltoid(side):
    """Triangular-grid patch {(i,j): i,j >= 0, i+j <= side} in axial coordinates.

    Returns (graph, coords, corners).  The generator self-checks the deltoid
    identity: the three corner distances of every vertex sum to 2*side.
    """
    pts = sorted((i, j) for i in range(side + 1) for j in range(side + 1 - i))
    index = {p: t for t, p in enumerate(pts)}
    edges = [(index[p], index[(p[0] + di, p[1] + dj)])
             for p in pts for di, dj in _T3_STEPS
             if (p[0] + di, p[1] + dj) in index
             and index[p] < index[(p[0] + di, p[1] + dj)]]
    corners = [(0, 0), (side, 0), (0, side)]
    g = Graph(len(pts), edges)
    rows = [g.dist_row(index[c]) for c in corners]
    for t, p in enumerate(pts):
        if sum(r[t] for r in rows) != 2 * side:
            raise ValidationError(f"deltoid identity fails at {p}")
        for c, r in zip(corners, rows):
            if r[t] != t3_distance(c, p):
                raise ValidationError(f"axial distance mismatch at {p}")
    return g, pts, [index[c] for c in corners]


def t3_patch(radius):
    """Ball of the triangular grid around the origin, axial coordinates."""
    pts = sorted(p for p in ((i, j) for i in range(-radius, radius + 1)
                             for j in range(-radius, radius + 1))
                 if t3_distance((0, 0), p) <= radius)
    index = {p: t for t, p in enumerate(pts)}
    edges = [(index[p], index[(p[0] + di, p[1] + dj)])
             for p in pts for di, dj in _T3_STEPS
             if (p[0] + di, p[1] + dj) in index
             and index[p] < index[(p[0] + di, p[1] + dj)]]
    return Graph(len(pts), edges), pts


def z3_box(half_side):
    """l1 grid graph on the integer box [-half_side, half_side]^3.

    Returns (graph, index) with index[(x,y,z)] = vertex id.
    """
    rng = range(-half_side, half_side + 1)
    pts = sorted(product(rng, rng, rng))
    index = {p: t for t, p in enumerate(pts)}
    edges = []
    for p in pts:
        for axis in range(3):
            q = list(p)
            q[axis] += 1
            q = tuple(q)
            if q in index:
                edges.append((index[p], index[q]))
    return Graph(len(pts), edges), index


def random_connected_graph(n, p, seed):
    """Erdos-Renyi conditioned on connectivity via a random spanning tree."""
    rng = random.Random(seed)
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a, b = order[i], order[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def random_tree(n, seed):
    rng = random.Random(seed)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return Graph(n, edges)


def ncp_figure():
    """Nine-vertex Helly graph whose canonical clique-path from t to s is
    (t, {x,y}, {u,u',w}, s) while y lies on no normal path.

    Returns (graph, names) with names mapping labels to vertex ids.
    """
    names = {"t": 0, "x": 1, "y": 2, "u": 3, "u'": 4, "w": 5, "s": 6, "v": 7, "v'": 8}
    t, x, y, u, up, w, s, v, vp = range(9)
    edges = [(t, x), (t, y), (x, y),
             (x, u), (x, up), (x, w), (y, u), (y, up), (y, w),
             (u, up), (u, w), (up, w),
             (u, s), (up, s), (w, s),
             (v, x), (v, u), (v, w),
             (vp, x), (vp, up), (vp, w)]
    return Graph(9, edges), names


# -- hyperbolicity -------------------------------------------------------------


@dataclass(frozen=True)
class HyperbolicityResult:
    two_delta: int
    witness: tuple  # lexicographically least quadruple attaining the max


def hyperbolicity(g, cap=256):
    """Exact four-point hyperbolicity 2*delta with witness quadruple.

    Exhaustive over all quadruples; O(n^4) via a vectorized inner double
    loop, so the vertex cap keeps runtimes at desk scale.
    """
    n = g.n
    if n > cap:
        raise ValidationError(f"hyperbolicity is exhaustive; n={n} exceeds cap {cap}")
    if n < 4:
        return HyperbolicityResult(0, tuple(range(min(n, 4))))
    d = np.array([g.dist_row(u) for u in range(n)], dtype=np.int64)
    best = 0
    for i in range(n):
        for j in range(i + 1, n):
            s1 = d[i, j] + d  # s1[k,l] = d(i,j) + d(k,l)
            s2 = np.add.outer(d[i], d[j])  # d(i,k) + d(j,l)
            s3 = np.add.outer(d[j], d[i])  # d(j,k) + d(i,l) = d(i,l)+d(j,k)
            stacked = np.stack([s1, s2, s3])
            stacked.sort(axis=0)
            diff = stacked[2] - stacked[1]
            sub = diff[i + 1:, :]  # k > i suffices; duplicates only lower lex rank
            m = int(sub.max()) if sub.size else 0
            if m > best:
                best = m
    witness = None
    for i, j, k, l in combinations(range(n), 4):
        sums = sorted((d[i, j] + d[k, l], d[i, k] + d[j, l], d[i, l] + d[j, k]))
        if sums[2] - sums[1] == best:
            witness = (i, j, k, l)
            break
    return HyperbolicityResult(best, witness)


def hyperbolicity_oracle(g):
    """Plain-loop reference implementation for small graphs."""
    n = g.n
    d = [g.dist_row(u) for u in range(n)]
    best = 0
    for i, j, k, l in combinations(range(n), 4):
        sums = sorted((d[i][j] + d[k][l], d[i][k] + d[j][l], d[i][l] + d[j][k]))
        best = max(best, sums[2] - sums[1])
    return best


def hyperbolicity_sampled(g, samples=100000, seed=0):
    """Seeded lower bound on 2*delta from sampled quadruples.

    For graphs beyond the exhaustive cap; the true value is at least the
    returned one.
    """
    rng = random.Random(seed)
    rows = {}

    def row(u):
        if u not in rows:
            rows[u] = g.dist_row(u)
        return rows[u]

    best = 0
    for _ in range(samples):
        i, j, k, l = (rng.randrange(g.n) for _ in range(4))
        sums = sorted((row(i)[j] + row(k)[l], row(i)[k] + row(j)[l],
                       row(i)[l] + row(j)[k]))
        best = max(best, sums[2] - sums[1])
    return best


def isometric_embedding_exists(g, pattern):
    """Backtracking search for an isometric copy of `pattern` inside g."""
    pn, gn = pattern.n, g.n
    if pn > gn:
        return False
    pd = [pattern.dist_row(u) for u in range(pn)]
    gd = [g.dist_row(u) for u in range(gn)]
    # assign pattern vertices in BFS order so every new vertex is constrained
    order = sorted(range(pn), key=lambda v: pd[0][v])
    image = [-1] * pn
    used = [False] * gn

    def assign(idx):
        if idx == pn:
            return True
        v = order[idx]
        for cand in range(gn):
            if used[cand]:
                continue
            if all(gd[cand][image[order[t]]] == pd[v][order[t]] for t in range(idx)):
                image[v] = cand
                used[cand] = True
                if assign(idx + 1):
                    return True
                used[cand] = False
                image[v] = -1
        return False

    return assign(0)


# -- verified counterexample families -------------------------------------------


def z3_counterexample(n):
    """Four balls of radius 2n at the even corners of the box [-4n, 4n]^3.

    The family's coarse-Helly defect is 4n (the box center attains the
    minimax value 6n).  These centers sit at pairwise l1-distance 8n, above
    the 4n pairwise-intersection threshold for radius 2n, so the defect is
    evaluated without the pairwise-intersection gate.
    """
    if n < 1 or n > 3:
        raise ValidationError("box size cap: 1 <= n <= 3")
    g, index = z3_box(4 * n)
    centers = [index[(-2 * n, 2 * n, -2 * n)], index[(2 * n, 2 * n, 2 * n)],
               index[(-2 * n, -2 * n, 2 * n)], index[(2 * n, -2 * n, -2 * n)]]
    radii = [2 * n] * 4
    defect = hull_mod.coarse_helly_defect(g, centers, radii, require_pairwise=False)
    return {"defect": defect, "graph": g, "centers": centers, "radii": radii}


def t3_counterexample(n, radii_scale=3):
    """Deltoid of side 6n with corner centers; radii default to 3n.

    The defect is at least n (every vertex is at distance >= 4n from some
    corner); radii_scale=4 collapses the defect to 0.
    """
    if n < 1 or n > 3:
        raise ValidationError("deltoid size cap: 1 <= n <= 3")
    g, _, corners = t3_deltoid(6 * n)
    radii = [radii_scale * n] * 3
    defect = hull_mod.coarse_helly_defect(g, corners, radii)
    return {"defect": defect, "graph": g, "centers": corners, "radii": radii}


def l1_linf_grid_correspondence(k):
    """Constructive grid correspondence.

    Forward: the Hellyfication of the side-2k rotated l1 grid is exactly the
    Chebyshev graph on the diamond |i|+|j| <= 2k (checked form-by-form via
    the coordinate map p -> max-distance row), and the sub-square
    |i|,|j| <= k induces an isometric (2k+1)x(2k+1) king graph.  Converse:
    the even-parity diamond of radius k inside that king graph induces an
    isometric rotated l1 grid.
    """
    h1, pts = l1_grid(k)
    hg = hull_mod.hellyfication(h1)
    diamond, dpts = linf_diamond(k)
    expected_forms = sorted(
        tuple(max(abs(p[0] - q[0]), abs(p[1] - q[1])) for q in pts) for p in dpts)
    if list(hg.forms) != expected_forms:
        return False
    form_of = {tuple(max(abs(p[0] - q[0]), abs(p[1] - q[1])) for q in pts): p
               for p in dpts}
    # hull edges must match Chebyshev adjacency on the diamond
    hull_edges = {frozenset((form_of[hg.forms[a]], form_of[hg.forms[b]]))
                  for a, b in hg.graph.edges()}
    diamond_edges = {frozenset((dpts[a], dpts[b])) for a, b in diamond.edges()}
    if hull_edges != diamond_edges:
        return False
    # the central square induces an isometric king graph in the hull
    didx = {p: i for i, p in enumerate(dpts)}
    square = [p for p in dpts if abs(p[0]) <= k and abs(p[1]) <= k]
    hull_index = {form_of[hg.forms[i]]: i for i in range(len(hg.forms))}
    for p, q in combinations(square, 2):
        cheb = max(abs(p[0] - q[0]), abs(p[1] - q[1]))
        if hg.graph.dist(hull_index[p], hull_index[q]) != cheb:
            return False
    # converse: even sub-diamond of the king graph is an isometric l1 grid
    king = king_graph(2 * k + 1, 2 * k + 1)
    def kid(i, j):
        return (i + k) * (2 * k + 1) + (j + k)
    sub = [(i, j) for (i, j) in product(range(-k, k + 1), repeat=2)
           if abs(i) + abs(j) <= k and (i + j) % 2 == 0]
    for p, q in combinations(sub, 2):
        # rotated-coordinate l1 distance equals Chebyshev distance
        expect = max(abs(p[0] - q[0]), abs(p[1] - q[1]))
        if king.dist(kid(*p), kid(*q)) != expect:
            return False
    return True


# -- the named corpus ----------------------------------------------------------


def corpus():
    """Deterministic named graph corpus used throughout the test suite."""
    out = {}
    out["p2"] = path_graph(2)
    out["p5"] = path_graph(5)
    out["p6"] = path_graph(6)
    out["p10"] = path_graph(10)
    out["c4"] = cycle_graph(4)
    out["c5"] = cycle_graph(5)
    out["c6"] = cycle_graph(6)
    out["c7"] = cycle_graph(7)
    out["c12"] = cycle_graph(12)
    out["k1"] = complete_graph(1)
    out["k3"] = complete_graph(3)
    out["k4"] = complete_graph(4)
    out["k6"] = complete_graph(6)
    out["star7"] = star_graph(7)
    out["wheel4"] = wheel_graph(4)
    out["wheel5"] = wheel_graph(5)
    out["sun3"] = sun3()
    out["house"] = house_graph()
    out["bowtie"] = bowtie_graph()
    out["k4_minus"] = k4_minus()
    out["k33_minus"] = k33_minus()
    out["q3"] = hypercube_graph(3)
    out["q4"] = hypercube_graph(4)
    out["grid3x3"] = grid_graph(3, 3)
    out["grid4x4"] = grid_graph(4, 4)
    out["grid10x10"] = grid_graph(10, 10)
    out["king3x3"] = king_graph(3, 3)
    out["king4x4"] = king_graph(4, 4)
    out["king5x5"] = king_graph(5, 5)
    out["king7x7"] = king_graph(7, 7)
    out["king12x12"] = king_graph(12, 12)
    out["tree20"] = random_tree(20, seed=7)
    out["tree200"] = random_tree(200, seed=11)
    out["path150"] = path_graph(150)
    out["l1diamond1"] = l1_grid(1)[0]
    out["t3deltoid3"] = t3_deltoid(3)[0]
    out["t3patch2"] = t3_patch(2)[0]
    out["ncp_figure"] = ncp_figure()[0]
    out["rand8a"] = random_connected_graph(8, 0.35, seed=101)
    out["rand9b"] = random_connected_graph(9, 0.3, seed=202)
    out["rand10c"] = random_connected_graph(10, 0.25, seed=303)
    return out
