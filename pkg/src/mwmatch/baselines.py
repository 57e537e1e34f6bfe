"""Reference solvers used for cross-checking and benchmarking.

``hungarian_eager`` is the textbook non-line-covering Hungarian method on a
dense matrix, adjusting labels immediately at every stall.  ``mcmf_dijkstra``
reduces the problem to min-cost flow and runs Dijkstra with Johnson
potentials once per augmentation.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import BipartiteGraph, GraphError, Matching, Weight, is_clean
from .heap import PairingHeap
from .kwok import DualLabels, FeasibilityError, SolveResult, SolveStats

# label sums stay within a few multiples of the largest weight; keep int64
# only while that is far from overflowing
_INT64_SAFE = 2**60


@dataclass
class DenseCostMatrix:
    """Full ``n_left x n_right`` weight table; absent edges hold 0."""

    n_left: int
    n_right: int
    weights: np.ndarray
    integer: bool = True

    @classmethod
    def from_graph(cls, g: BipartiteGraph) -> "DenseCostMatrix":
        if not is_clean(g):
            raise GraphError("graph has non-positive edges; call clean() first")
        big = g.integer and g.max_abs_weight() * (g.n_left + g.n_right + 2) >= _INT64_SAFE
        dtype = object if big else (np.int64 if g.integer else np.float64)
        w = np.zeros((g.n_left, g.n_right), dtype=dtype)
        for l, r, wt in g.edges():
            w[l, r] = wt
        return cls(g.n_left, g.n_right, w, g.integer)

    def padded(self) -> "DenseCostMatrix":
        """Square version with zero rows appended."""
        extra = self.n_right - self.n_left
        if extra == 0:
            return self
        pad = np.zeros((extra, self.n_right), dtype=self.weights.dtype)
        return DenseCostMatrix(self.n_right, self.n_right, np.vstack([self.weights, pad]), self.integer)


def hungarian_eager(
    m: DenseCostMatrix,
    with_virtual_vertices: bool = False,
    on_augment: Callable[[DualLabels], None] | None = None,
    tolerance: float | None = None,
) -> SolveResult:
    """Non-line-covering Hungarian method with per-stall label updates.

    With ``with_virtual_vertices`` the matrix is padded square first.
    Returned labels and matching cover the original rows only; pairs along
    zero (absent) entries are dropped.
    """
    if m.n_left > m.n_right:
        raise ValueError("matrix must have n_left <= n_right")
    work = m.padded() if with_virtual_vertices else m
    W = work.weights
    n, R = work.n_left, work.n_right
    if tolerance is None:
        tol = 0 if m.integer else 1e-9 * max(float(np.abs(W).max(initial=0)), 1.0)
    else:
        tol = tolerance
    exact = tol == 0
    if W.dtype == object:
        inf = math.inf
    elif m.integer:
        inf = np.iinfo(np.int64).max
    else:
        inf = np.inf

    h_l = W.max(axis=1) if R else np.zeros(n, dtype=W.dtype)
    h_r = np.zeros(R, dtype=W.dtype)
    pair_l = [-1] * n
    pair_r = np.full(R, -1, dtype=np.int64)
    stats = SolveStats()

    for l in range(n):
        gap = h_l[l] - W[l]
        tight = (gap == 0) if exact else (np.abs(gap) <= tol)
        free = np.flatnonzero(tight & (pair_r < 0))
        if free.size:
            r = int(free[0])
            pair_l[l] = r
            pair_r[r] = l
            stats.greedy_matches += 1

    def bfs(root: int) -> None:
        vis_l = np.zeros(n, dtype=bool)
        vis_r = np.zeros(R, dtype=bool)
        slack = np.full(R, inf, dtype=W.dtype)
        parent = np.full(R, -1, dtype=np.int64)
        queue = deque([root])
        vis_l[root] = True
        n_vis_r = 0
        edges = deltas = 0

        def advance(r: int) -> bool:
            nonlocal n_vis_r
            vis_r[r] = True
            n_vis_r += 1
            l = int(pair_r[r])
            if l >= 0:
                queue.append(l)
                vis_l[l] = True
                return False
            while r >= 0:
                l = int(parent[r])
                prev = pair_l[l]
                pair_l[l] = r
                pair_r[r] = l
                r = prev
            return True

        try:
            while True:
                while queue:
                    l = queue.popleft()
                    edges += R - n_vis_r
                    d = h_l[l] + h_r - W[l]
                    unv = ~vis_r
                    tight = (d == 0) if exact else (d <= tol)
                    for r in np.flatnonzero(tight & unv):
                        if not exact and d[r] < -tol:
                            raise FeasibilityError(f"edge ({l}, {r}) infeasible by {-d[r]}")
                        parent[r] = l
                        if advance(int(r)):
                            return
                    upd = ~vis_r & (d < slack)
                    slack[upd] = d[upd]
                    parent[upd] = l
                deltas += 1
                unv = ~vis_r
                delta = slack[unv].min()
                if delta < 0 and (exact or delta < -tol):
                    raise FeasibilityError(f"negative label adjustment {delta}")
                h_l[vis_l] -= delta
                h_r[vis_r] += delta
                slack[unv] -= delta
                ready = (slack == 0) if exact else (slack <= tol)
                for r in np.flatnonzero(ready & unv):
                    if advance(int(r)):
                        return
        finally:
            stats.edges_visited += edges
            stats.h_adjustments += deltas
            stats.bfs_edges_visited.append(edges)
            stats.bfs_h_adjustments.append(deltas)

    for l in range(n):
        if pair_l[l] >= 0:
            continue
        bfs(l)
        stats.augmentations += 1
        if on_augment is not None:
            on_augment(DualLabels(h_l[: m.n_left].tolist(), h_r.tolist()))

    pairs = []
    total: Weight = 0
    for l in range(m.n_left):
        r = pair_l[l]
        if r >= 0 and W[l, r] > 0:
            pairs.append((l, r))
            total += W[l, r].item() if hasattr(W[l, r], "item") else W[l, r]
    labels = DualLabels(h_l[: m.n_left].tolist(), h_r.tolist())
    return SolveResult(Matching(pairs, total), labels, stats)


def hungarian_eager_graph(g: BipartiteGraph, with_virtual_vertices: bool = False) -> SolveResult:
    return hungarian_eager(DenseCostMatrix.from_graph(g), with_virtual_vertices)


class FlowNetwork:
    """Residual network of the matching flow problem.

    Arcs: source -> l (cost 0), l -> r (cost -w), r -> sink (cost 0), all of
    unit capacity; saturated arcs appear reversed with negated cost.  The
    network is kept implicitly through the current pairing.
    """

    def __init__(self, g: BipartiteGraph):
        self.graph = g
        self.pair_left = [-1] * g.n_left
        self.pair_right = [-1] * g.n_right
        self.mate_weight: list[Weight] = [0] * g.n_right
        # single pass over the initially acyclic network in topological order
        self.pot_left: list[Weight] = [0] * g.n_left
        pot_r: list[Weight] = [0] * g.n_right
        reached = [False] * g.n_right
        for l, r, w in g.edges():
            if not reached[r] or -w < pot_r[r]:
                pot_r[r] = -w
                reached[r] = True
        self.pot_right = pot_r
        self.pot_sink: Weight = min((p for p, ok in zip(pot_r, reached) if ok), default=0)
        self.pot_source: Weight = 0

    def residual_arcs(self):
        """Yield ``(kind, u, v, reduced_cost)`` for every residual arc."""
        g = self.graph
        ps, pt = self.pot_source, self.pot_sink
        pl, pr = self.pot_left, self.pot_right
        for l in range(g.n_left):
            if self.pair_left[l] < 0:
                yield "s-l", -1, l, ps - pl[l]
            for r, w in g.neighbors(l):
                if self.pair_left[l] == r:
                    yield "r-l", r, l, w + pr[r] - pl[l]
                else:
                    yield "l-r", l, r, -w + pl[l] - pr[r]
        for r in range(g.n_right):
            if self.pair_right[r] < 0:
                yield "r-t", r, -1, pr[r] - pt

    def min_reduced_cost(self) -> Weight:
        return min((c for *_, c in self.residual_arcs()), default=0)


def mcmf_dijkstra(g: BipartiteGraph, debug: bool = False, tolerance: float | None = None) -> SolveResult:
    """Maximum-weight matching via successive shortest paths.

    Each round finds the cheapest source-sink path with Dijkstra on reduced
    costs; rounds stop once the cheapest path would lose weight.  Labels in
    the result are the final node potentials negated onto the right side,
    which are not a matching certificate; use the matching and stats only.
    """
    if not is_clean(g):
        raise GraphError("graph has non-positive edges; call clean() first")
    tol = tolerance if tolerance is not None else g.default_tolerance()
    net = FlowNetwork(g)
    L, R = g.n_left, g.n_right
    off, adj_r, adj_w = g.offsets, g.adj_right, g.adj_weight
    pair_l, pair_r, mate_w = net.pair_left, net.pair_right, net.mate_weight
    pl, pr = net.pot_left, net.pot_right
    stats = SolveStats()
    inf = math.inf
    sink = L + R

    for _ in range(L):
        if debug:
            low = net.min_reduced_cost()
            if low < -tol:
                raise FeasibilityError(f"negative reduced cost {low} before Dijkstra")
        pt = net.pot_sink
        dist_l = [inf] * L
        dist_r = [inf] * R
        dist_t = inf
        pred_l = [-1] * R  # left vertex preceding r on the path
        pred_t = -1
        done_l = [False] * L
        done_r = [False] * R
        heap: PairingHeap[int] = PairingHeap()
        handles: list = [None] * (sink + 1)
        insert, decrease = heap.insert, heap.decrease_key
        n_ins = n_dec = n_ext = 0

        for l in range(L):
            if pair_l[l] < 0:
                d = net.pot_source - pl[l]
                dist_l[l] = d
                # isolated vertices get a distance (keeps s->l reduced costs
                # non-negative) but have nothing to relax
                if off[l + 1] > off[l]:
                    handles[l] = insert(l, d)
                    n_ins += 1
        edges = 0
        while heap:
            node, d = heap.extract_min()
            n_ext += 1
            if node == sink:
                break
            if node < L:
                l = node
                done_l[l] = True
                base = d + pl[l]
                skip = pair_l[l]
                for k in range(off[l], off[l + 1]):
                    r = adj_r[k]
                    edges += 1
                    if r == skip or done_r[r]:
                        continue
                    nd = base - adj_w[k] - pr[r]
                    if nd < dist_r[r]:
                        dist_r[r] = nd
                        pred_l[r] = l
                        h = handles[L + r]
                        if h is None:
                            handles[L + r] = insert(L + r, nd)
                            n_ins += 1
                        else:
                            decrease(h, nd)
                            n_dec += 1
            else:
                r = node - L
                done_r[r] = True
                l2 = pair_r[r]
                edges += 1
                if l2 >= 0:
                    if done_l[l2]:
                        continue
                    nd = d + mate_w[r] + pr[r] - pl[l2]
                    if nd < dist_l[l2]:
                        dist_l[l2] = nd
                        h = handles[l2]
                        if h is None:
                            handles[l2] = insert(l2, nd)
                            n_ins += 1
                        else:
                            decrease(h, nd)
                            n_dec += 1
                else:
                    nd = d + pr[r] - pt
                    if nd < dist_t:
                        dist_t = nd
                        pred_t = r
                        h = handles[sink]
                        if h is None:
                            handles[sink] = insert(sink, nd)
                            n_ins += 1
                        else:
                            decrease(h, nd)
                            n_dec += 1
        stats.heap_inserts += n_ins
        stats.heap_decreases += n_dec
        stats.heap_extracts += n_ext
        stats.edges_visited += edges
        stats.bfs_edges_visited.append(edges)
        stats.bfs_h_adjustments.append(0)
        if dist_t == inf:
            break
        path_cost = dist_t + pt - net.pot_source
        # potentials: unsettled nodes are at least dist_t away
        for l in range(L):
            pl[l] += min(dist_l[l], dist_t)
        for r in range(R):
            pr[r] += min(dist_r[r], dist_t)
        net.pot_sink = pt + dist_t
        if path_cost > tol:
            break
        r = pred_t
        while r >= 0:
            l = pred_l[r]
            prev = pair_l[l]
            pair_l[l] = r
            pair_r[r] = l
            mate_w[r] = g.weight_of(l, r)
            r = prev
        stats.augmentations += 1

    matching = Matching.from_pairs(g, ((l, r) for l, r in enumerate(pair_l) if r >= 0))
    return SolveResult(matching, DualLabels(list(pl), list(pr)), stats)
