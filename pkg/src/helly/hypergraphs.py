"""Hypergraph Helly/conformality machinery and abstract cell-complex checks.

Edges are stored as int bitmasks over a dense vertex range; the triple-based
Berge-Duchet and Gilmore conditions then reduce to mask algebra.  The
Berge-Duchet test here decides the Helly property of the *edge family as
given* (nested edges included), which is exactly the notion dual to
conformality; `simplify` is available for the classification that requires
a simple hypergraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ValidationError
from .graphs import Graph, bits, mask_of


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple  # tuple of sorted vertex tuples

    def __post_init__(self):
        for e in self.edges:
            if not e:
                raise ValidationError("hypergraph edges must be nonempty")
            if any(not (0 <= v < self.n) for v in e):
                raise ValidationError(f"edge {e!r} out of range for n={self.n}")
            if list(e) != sorted(set(e)):
                raise ValidationError(f"edge {e!r} must be sorted and duplicate-free")

    @classmethod
    def of(cls, n, edges):
        return cls(n, tuple(tuple(sorted(set(e))) for e in edges))

    @classmethod
    def from_json(cls, text):
        import json
        data = json.loads(text)
        return cls.of(int(data["n"]), data["edges"])

    def to_json(self):
        import json
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges]},
                          separators=(",", ":"), sort_keys=True)

    def edge_masks(self):
        return [mask_of(e) for e in self.edges]

    def covered_vertices(self):
        m = 0
        for e in self.edge_masks():
            m |= e
        return tuple(bits(m))


def simplify(h):
    """Drop edges contained in another edge (and duplicates)."""
    masks = h.edge_masks()
    keep = []
    for i, m in enumerate(masks):
        dominated = False
        for j, other in enumerate(masks):
            if i == j:
                continue
            if m | other == other and (m != other or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(h.edges[i])
    return Hypergraph(h.n, tuple(sorted(set(keep))))


def dual(h):
    """Dual hypergraph: one vertex per edge, one edge S_v per covered vertex.

    Vertices of h lying in no edge contribute no dual edge; they are
    reported by `uncovered_vertices`.
    """
    masks = h.edge_masks()
    star_edges = []
    for v in range(h.n):
        star = tuple(i for i, m in enumerate(masks) if (m >> v) & 1)
        if star:
            star_edges.append(star)
    return Hypergraph(len(h.edges), tuple(star_edges))


def uncovered_vertices(h):
    covered = mask_of(h.covered_vertices())
    return tuple(v for v in range(h.n) if not (covered >> v) & 1)


def two_section_masks(h):
    """Adjacency masks of the 2-section (no connectivity requirement)."""
    nbr = [0] * h.n
    for m in h.edge_masks():
        for v in bits(m):
            nbr[v] |= m & ~(1 << v)
    return nbr


def two_section(h):
    """2-section as a Graph; raises if disconnected (metric use only)."""
    nbr = two_section_masks(h)
    edges = [(u, v) for u in range(h.n) for v in bits(nbr[u]) if u < v]
    return Graph(h.n, edges)


def line_graph(h):
    """Intersection graph of the edges; equals the 2-section of the dual."""
    masks = h.edge_masks()
    edges = [(i, j) for i, j in combinations(range(len(masks)), 2) if masks[i] & masks[j]]
    return Graph(len(masks), edges)


def nerve_graph(h):
    """1-skeleton of the nerve complex: same as the line graph."""
    return line_graph(h)


def helly_property(h):
    """Berge-Duchet decision of the Helly property of the edge family."""
    ok, _ = helly_property_certified(h)
    return ok


def helly_property_certified(h):
    """Berge-Duchet test returning (flag, failing vertex triple or None)."""
    masks = h.edge_masks()
    verts = h.covered_vertices()
    full = (1 << h.n) - 1
    # pair_cap[(x,y)] = intersection of all edges containing both x and y
    pair_cap = {}
    for x, y in combinations(verts, 2):
        need = (1 << x) | (1 << y)
        cap = full
        for m in masks:
            if m & need == need:
                cap &= m
        pair_cap[(x, y)] = cap
    for x, y, z in combinations(verts, 3):
        if pair_cap[(x, y)] & pair_cap[(x, z)] & pair_cap[(y, z)] == 0:
            return False, (x, y, z)
    return True, None


def is_helly(h):
    """Helly property of the edge family, decided by Berge-Duchet triples."""
    return helly_property(h)


def helly_property_oracle(h):
    """Exponential oracle: every pairwise-intersecting subfamily meets."""
    masks = h.edge_masks()
    if len(masks) > 20:
        raise ValidationError("oracle is exponential; use <= 20 edges")
    full = (1 << h.n) - 1
    for size in range(2, len(masks) + 1):
        for sub in combinations(range(len(masks)), size):
            if any(not (masks[i] & masks[j]) for i, j in combinations(sub, 2)):
                continue
            cap = full
            for i in sub:
                cap &= masks[i]
            if cap == 0:
                return False
    return True


def _max_clique_masks(nbr, n):
    """Maximal cliques of an adjacency-mask graph, as masks (Bron-Kerbosch)."""
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = max(bits(pivot_pool), key=lambda v: (nbr[v] & p).bit_count())
        for v in bits(p & ~nbr[pivot]):
            bit = 1 << v
            expand(r | bit, p & nbr[v], x & nbr[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << n) - 1, 0)
    return out


def is_conformal(h):
    ok, _ = is_conformal_certified(h)
    return ok


def is_conformal_certified(h):
    """Gilmore test: (flag, failing edge-index triple or None)."""
    masks = h.edge_masks()
    for i, j, k in combinations(range(len(masks)), 3):
        need = (masks[i] & masks[j]) | (masks[i] & masks[k]) | (masks[j] & masks[k])
        if not any(m & need == need for m in masks):
            return False, (i, j, k)
    return True, None


def is_conformal_via_cliques(h):
    """Oracle route: every maximal clique of the 2-section lies in an edge."""
    nbr = two_section_masks(h)
    masks = h.edge_masks()
    isolated = [v for v in range(h.n) if nbr[v] == 0 and not any((m >> v) & 1 for m in masks)]
    skip = mask_of(isolated)
    for clique in _max_clique_masks(nbr, h.n):
        if clique & skip:
            continue  # vertices in no edge form spurious singleton cliques
        if not any(m & clique == clique for m in masks):
            return False
    return True


def is_triangle_free_hypergraph(h):
    """No length-3 cycle avoids having its three vertices inside one of its edges."""
    masks = h.edge_masks()
    for a, b, c in combinations(range(len(masks)), 3):
        ma, mb, mc = masks[a], masks[b], masks[c]
        ab, bc, ca = ma & mb, mb & mc, mc & ma
        if not (ab and bc and ca):
            continue
        for x in bits(ca):
            for y in bits(ab):
                if y == x:
                    continue
                for z in bits(bc):
                    if z == x or z == y:
                        continue
                    t = (1 << x) | (1 << y) | (1 << z)
                    if not (ma & t == t or mb & t == t or mc & t == t):
                        return False
    return True


def strong_gilmore(h):
    """Gilmore with the witness forced among the three edges themselves."""
    masks = h.edge_masks()
    for i, j, k in combinations(range(len(masks)), 3):
        need = (masks[i] & masks[j]) | (masks[i] & masks[k]) | (masks[j] & masks[k])
        if not (masks[i] & need == need or masks[j] & need == need or masks[k] & need == need):
            return False
    return True


def conformal_closure(h):
    """Add every maximal clique of the 2-section as an edge (same 2-section)."""
    nbr = two_section_masks(h)
    cliques = {tuple(bits(m)) for m in _max_clique_masks(nbr, h.n) if m}
    covered = set(h.covered_vertices())
    cliques = {c for c in cliques if set(c) <= covered}
    merged = sorted(set(h.edges) | cliques)
    return Hypergraph(h.n, tuple(merged))


def hellyfication_hypergraph(h):
    """Add one witness vertex per maximal pairwise-intersecting bad family.

    Bad families (pairwise intersecting, empty total intersection) are the
    maximal cliques of the line graph with empty intersection; witnesses are
    numbered n, n+1, ... in lexicographic order of the sorted edge-index sets.
    """
    masks = h.edge_masks()
    bad = []
    for fam in _max_clique_masks([line_nbr for line_nbr in _line_masks(masks)], len(masks)):
        idxs = tuple(bits(fam))
        if len(idxs) < 2:
            continue
        cap = masks[idxs[0]]
        for i in idxs[1:]:
            cap &= masks[i]
        if cap == 0:
            bad.append(idxs)
    bad.sort()
    new_edges = [list(e) for e in h.edges]
    next_id = h.n
    for fam in bad:
        for i in fam:
            new_edges[i].append(next_id)
        next_id += 1
    return Hypergraph(next_id, tuple(tuple(sorted(e)) for e in new_edges))


def _line_masks(edge_masks):
    k = len(edge_masks)
    nbr = [0] * k
    for i, j in combinations(range(k), 2):
        if edge_masks[i] & edge_masks[j]:
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
    return nbr


# -- abstract cell complexes --------------------------------------------------


@dataclass(frozen=True)
class CellComplex:
    n: int
    cells: tuple  # tuple of sorted vertex tuples; may include ()

    @classmethod
    def of(cls, n, cells):
        cleaned = sorted({tuple(sorted(set(c))) for c in cells})
        return cls(n, tuple(cleaned))

    def validate(self):
        masks = [mask_of(c) for c in self.cells]
        have = set(masks)
        for i, j in combinations(range(len(masks)), 2):
            if masks[i] & masks[j] not in have:
                raise ValidationError(
                    f"cells {self.cells[i]!r} and {self.cells[j]!r} intersect "
                    "outside the complex")
        return True

    def dimensions(self):
        """dim(C) = longest chain of nonempty cells ending at C (recomputed)."""
        masks = [mask_of(c) for c in self.cells]
        order = sorted(range(len(masks)), key=lambda i: (masks[i].bit_count(), self.cells[i]))
        dim = {}
        for i in order:
            if masks[i] == 0:
                dim[i] = -1  # empty cell sits below every chain
                continue
            below = [dim[j] for j in order if j != i and masks[j] != 0
                     and masks[j] | masks[i] == masks[i] and masks[j] != masks[i]
                     and j in dim]
            dim[i] = 1 + max(below) if below else 0
        return [dim[i] for i in range(len(masks))]


@dataclass(frozen=True)
class CellConditionReport:
    three_cell: bool
    gmc: bool
    helly3: bool
    witnesses: dict

    @property
    def all_hold(self):
        return self.three_cell and self.gmc and self.helly3


def check_cell_conditions(x):
    """Exhaustive 3-cell, graded-monotonicity, and 3-cell-Helly verification.

    All three conditions are evaluated independently, each with its first
    failing witness.  Cube-like complexes with gated cells satisfy all
    three; simplicial complexes satisfy the first two but their edge triples
    already violate the 3-cell Helly property.
    """
    x.validate()
    masks = [mask_of(c) for c in x.cells]
    dim = x.dimensions()
    index = {m: i for i, m in enumerate(masks)}
    nonempty = [i for i, m in enumerate(masks) if m]
    witnesses = {}

    def is_facet(a, c):
        # a proper face of c, maximal among proper faces
        if a == c or a | c != c:
            return False
        for m in masks:
            if m != c and m != a and m | c == c and a | m == m:
                return False
        return True

    three_cell = True
    for i, j, k in combinations(nonempty, 3):
        ci, cj, ck = masks[i], masks[j], masks[k]
        cij, cik, cjk = ci & cj, ci & ck, cj & ck
        cijk = ci & cj & ck
        if not (is_facet(cij, ci) and is_facet(cij, cj)):
            continue
        if not (is_facet(cik, ci) and is_facet(cik, ck)):
            continue
        if not (is_facet(cjk, cj) and is_facet(cjk, ck)):
            continue
        if not (is_facet(cijk, cij) and is_facet(cijk, cik) and is_facet(cijk, cjk)):
            continue
        union = ci | cj | ck
        if not any(union | m == m for m in masks):
            three_cell = False
            witnesses["3-cell"] = (x.cells[i], x.cells[j], x.cells[k])
            break

    gmc = True
    for c_i in nonempty:
        c = masks[c_i]
        faces = [i for i in range(len(masks)) if masks[i] | c == c]
        for a_i in faces:
            for b_i in faces:
                a, b = masks[a_i], masks[b_i]
                if a & b == 0 or b | a == a:
                    continue
                found = False
                for d_i in faces:
                    d = masks[d_i]
                    if (is_facet(a, d) and dim[d_i] == dim[a_i] + 1
                            and (d & b) in index
                            and dim[index[d & b]] == dim[index[a & b]] + 1):
                        found = True
                        break
                if not found:
                    gmc = False
                    witnesses["gmc"] = (x.cells[c_i], x.cells[a_i], x.cells[b_i])
                    break
            if not gmc:
                break
        if not gmc:
            break

    helly3 = True
    for i, j, k in combinations(nonempty, 3):
        ci, cj, ck = masks[i], masks[j], masks[k]
        if ci & cj and ci & ck and cj & ck and not (ci & cj & ck):
            helly3 = False
            witnesses["helly3"] = (x.cells[i], x.cells[j], x.cells[k])
            break

    return CellConditionReport(three_cell, gmc, helly3, witnesses)


def cell_hypergraph(x):
    """Nonempty cells as a hypergraph over the complex's vertices."""
    return Hypergraph.of(x.n, [c for c in x.cells if c])
