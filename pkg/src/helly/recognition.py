"""Helly-graph recognition and related classifications.

Two independent decision procedures are cross-checked on every call:
dismantlability + clique-Helly versus weak modularity + 1-Helly.  A
disagreement raises InvariantViolation, since their equivalence is a
theorem for finite graphs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvariantViolation, ResourceCapExceeded, ValidationError
from .graphs import bits, weak_modularity
from . import hypergraphs


def _clique_cap():
    return int(os.environ.get("HELLY_MAX_CLIQUES", 10 ** 6))


def maximal_cliques(g, cap=None):
    """Inclusion-maximal cliques, each sorted, list sorted lexicographically."""
    cap = _clique_cap() if cap is None else cap
    out = hypergraphs._max_clique_masks(g.nbr_mask, g.n)
    if len(out) > cap:
        raise ResourceCapExceeded(f"{len(out)} maximal cliques exceed cap {cap}")
    return sorted(tuple(bits(m)) for m in out)


def all_cliques(g, cap=None):
    """Every nonempty clique, in (size, lex) order."""
    cap = _clique_cap() if cap is None else cap
    out = []
    n = g.n

    def extend(base, base_mask, candidates):
        for v in bits(candidates):
            clique = base + (v,)
            out.append(clique)
            if len(out) > cap:
                raise ResourceCapExceeded(f"clique count exceeds cap {cap}")
            extend(clique, base_mask | (1 << v),
                   candidates & g.nbr_mask[v] & ~((1 << (v + 1)) - 1))

    extend((), 0, (1 << n) - 1)
    out.sort(key=lambda c: (len(c), c))
    return out


def triangles(g):
    for u, v in g.edges():
        for w in bits(g.nbr_mask[u] & g.nbr_mask[v] & ~((1 << (v + 1)) - 1)):
            yield (u, v, w)


def is_clique_helly(g):
    ok, _ = is_clique_helly_certified(g)
    return ok


def is_clique_helly_certified(g):
    """Triangle criterion: every extended triangle has a universal vertex.

    Returns (flag, failing triangle or None).
    """
    for u, v, w in triangles(g):
        b1u, b1v, b1w = g.ball1_mask[u], g.ball1_mask[v], g.ball1_mask[w]
        ext = (b1u & b1v) | (b1u & b1w) | (b1v & b1w)
        ok = False
        for cand in bits(ext):
            if ext & ~g.ball1_mask[cand] == 0:
                ok = True
                break
        if not ok:
            return False, (u, v, w)
    return True, None


def _pairwise_unit_ball_cap(g, x, y):
    cap = (1 << g.n) - 1
    for v in bits(g.ball1_mask[x] & g.ball1_mask[y]):
        cap &= g.ball1_mask[v]
    return cap


def is_one_helly(g):
    """Berge-Duchet on the family of unit balls."""
    n = g.n
    pair_cap = {}
    for x in range(n):
        for y in range(x + 1, n):
            pair_cap[(x, y)] = _pairwise_unit_ball_cap(g, x, y)
    for x, y, z in combinations(range(n), 3):
        if pair_cap[(x, y)] & pair_cap[(x, z)] & pair_cap[(y, z)] == 0:
            return False
    return True


def helly_by_ball_hypergraph(g):
    """Berge-Duchet over the family of all balls of all radii.

    For a vertex pair x,y the intersection of all balls containing both is
    cap over v of B_{max(d(v,x),d(v,y))}(v); triples then reduce to three
    mask ANDs.
    """
    n = g.n
    rows = [g.dist_row(v) for v in range(n)]
    pair_cap = {}
    for x in range(n):
        rx = rows[x]
        for y in range(x + 1, n):
            ry = rows[y]
            cap = (1 << n) - 1
            for v in range(n):
                cap &= g.ball_mask(v, max(rows[v][x], rows[v][y]))
                if cap == 0:
                    break
            pair_cap[(x, y)] = cap
    for x, y, z in combinations(range(n), 3):
        if pair_cap[(x, y)] & pair_cap[(x, z)] & pair_cap[(y, z)] == 0:
            return False
    return True


def helly_by_ball_oracle(g):
    """Subfamily oracle over all balls; n <= 10 only.

    Every subfamily's intersection contains the intersection of a maximal
    pairwise-intersecting family extending it, so checking the maximal
    families (cliques of the ball intersection graph) decides the Helly
    property of the whole family.  Up to 16 distinct balls the literal
    all-subfamilies sweep runs instead.
    """
    if g.n > 10:
        raise ValidationError("ball-family oracle is for n <= 10")
    diam = g.diameter()
    ball_list = sorted({g.ball_mask(v, r) for v in range(g.n) for r in range(diam + 1)})
    k = len(ball_list)
    if k <= 16:
        for size in range(2, k + 1):
            for sub in combinations(ball_list, size):
                if any(not (a & b) for a, b in combinations(sub, 2)):
                    continue
                cap = (1 << g.n) - 1
                for m in sub:
                    cap &= m
                if cap == 0:
                    return False
        return True
    meet = [0] * k
    for i in range(k):
        for j in range(k):
            if i != j and ball_list[i] & ball_list[j]:
                meet[i] |= 1 << j
    for fam in hypergraphs._max_clique_masks(meet, k):
        if fam.bit_count() < 2:
            continue
        cap = (1 << g.n) - 1
        for i in bits(fam):
            cap &= ball_list[i]
        if cap == 0:
            return False
    return True


@dataclass(frozen=True)
class DismantlingOrder:
    order: tuple            # elimination order of all n vertices
    dominator: tuple        # dominator[i] dominates order[i] at its elimination


@dataclass(frozen=True)
class DismantlingFailure:
    stuck_vertices: tuple   # induced subgraph with no dominated vertex
    certified: bool         # True when the verdict needs no confluence argument


def dismantling_order(g):
    """Greedy elimination of the smallest-id dominated vertex.

    Returns DismantlingOrder on success.  On a stuck subgraph, graphs with
    at most 14 live vertices are re-searched by backtracking over all
    elimination orders before the failure is reported; larger stuck
    subgraphs are reported as greedy-stuck (the greedy verdict is still
    decisive, by the retract argument for cop-win graphs, but the
    exhaustive certificate is skipped).
    """
    n = g.n
    live = (1 << n) - 1
    order, doms = [], []
    while live.bit_count() > 1:
        found = False
        for v in bits(live):
            bv = g.ball1_mask[v] & live
            for y in bits(g.nbr_mask[v] & live):
                if bv & ~(g.ball1_mask[y] & live) == 0:
                    order.append(v)
                    doms.append(y)
                    live &= ~(1 << v)
                    found = True
                    break
            if found:
                break
        if not found:
            stuck = tuple(bits(live))
            if len(stuck) <= 14:
                if _backtracking_dismantlable(g, live):
                    raise InvariantViolation(
                        "greedy dismantling stuck but backtracking succeeded; "
                        "confluence of domination elimination is violated")
                return DismantlingFailure(stuck, certified=True)
            return DismantlingFailure(stuck, certified=False)
    last = next(bits(live))
    order.append(last)
    doms.append(-1)
    return DismantlingOrder(tuple(order), tuple(doms))


def _backtracking_dismantlable(g, live, _memo=None):
    if _memo is None:
        _memo = {}
    if live.bit_count() == 1:
        return True
    cached = _memo.get(live)
    if cached is not None:
        return cached
    result = False
    for v in bits(live):
        bv = g.ball1_mask[v] & live
        for y in bits(g.nbr_mask[v] & live):
            if bv & ~(g.ball1_mask[y] & live) == 0:
                if _backtracking_dismantlable(g, live & ~(1 << v), _memo):
                    result = True
                break  # domination witnessed; the dominator choice is irrelevant
        if result:
            break
    _memo[live] = result
    return result


def is_dismantlable(g):
    return isinstance(dismantling_order(g), DismantlingOrder)


@dataclass(frozen=True)
class HellyReport:
    is_helly: bool
    is_clique_helly: bool
    is_one_helly: bool
    is_dismantlable: bool
    certificate: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "is_helly": self.is_helly,
            "is_clique_helly": self.is_clique_helly,
            "is_one_helly": self.is_one_helly,
            "is_dismantlable": self.is_dismantlable,
            "certificate": self.certificate,
        }


def is_helly(g):
    """Recognize a finite Helly graph; both decision routes must agree."""
    cl_ok, cl_witness = is_clique_helly_certified(g)
    dis = dismantling_order(g)
    dis_ok = isinstance(dis, DismantlingOrder)
    route_a = dis_ok and cl_ok

    wm = weak_modularity(g)
    one_ok = is_one_helly(g)
    route_b = wm.holds and one_ok

    if route_a != route_b:
        raise InvariantViolation(
            f"recognition routes disagree: dismantlable&clique-Helly={route_a} "
            f"but weakly-modular&1-Helly={route_b}")

    cert = {}
    if dis_ok:
        cert["dismantling_order"] = list(dis.order)
    else:
        cert["stuck_subgraph"] = list(dis.stuck_vertices)
        cert["stuck_certified"] = dis.certified
    if not cl_ok:
        cert["clique_helly_failing_triangle"] = list(cl_witness)
    if not wm.holds:
        cert["weak_modularity_witness"] = list(wm.tc_witness or wm.qc_witness)
    return HellyReport(route_a, cl_ok, one_ok, dis_ok, cert)


def stable_interval_constant(g):
    """Exact max Hausdorff distance between I(w,v) and I(w,v') over v ~ v'."""
    best = 0
    edge_list = g.edges()
    for w in range(g.n):
        ivals = {}
        for v, vp in edge_list:
            for a in (v, vp):
                if a not in ivals:
                    ivals[a] = g.interval_mask(w, a)
            ia, ib = ivals[v], ivals[vp]
            for src, dst in ((ia, ib), (ib, ia)):
                for x in bits(src):
                    if (1 << x) & dst:
                        continue
                    r = 1
                    while not (g.ball_mask(x, r) & dst):
                        r += 1
                    if r > best:
                        best = r
    return best


def is_median(g):
    """Every vertex triple has exactly one median."""
    n = g.n
    ivals = [[None] * n for _ in range(n)]
    for u in range(n):
        for v in range(u, n):
            ivals[u][v] = ivals[v][u] = g.interval_mask(u, v)
    for u, v, w in combinations(range(n), 3):
        if (ivals[u][v] & ivals[v][w] & ivals[u][w]).bit_count() != 1:
            return False
    return True


def dominating_clique(g, subset):
    """Smallest clique within distance 1 of every vertex of `subset`, or None.

    Maximal cliques are scanned first; the full (size, lex)-ordered clique
    stream is the fallback, so the returned clique is deterministic.
    """
    vs = sorted(set(subset))
    if not vs:
        raise ValidationError("subset must be nonempty")

    def dominates(clique):
        cover = 0
        for c in clique:
            cover |= g.ball1_mask[c]
        return all((cover >> u) & 1 for u in vs)

    # enlarging a clique only shrinks distances, so existence is decided on
    # maximal cliques; the canonical (smallest, lex-least) witness is then
    # picked from the full (size, lex)-ordered stream
    if not any(dominates(c) for c in maximal_cliques(g)):
        return None
    for c in all_cliques(g):
        if dominates(c):
            return c
    raise InvariantViolation("maximal-clique prepass and full clique scan disagree")
