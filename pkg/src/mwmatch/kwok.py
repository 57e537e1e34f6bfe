"""Maximum-weight bipartite matching by the extended non-line-covering
Hungarian method with deferred label updates.

Each unmatched left vertex roots one breadth-first search over the equality
subgraph.  Instead of adjusting the labels every time the search stalls, the
adjustments are appended to a list and applied in one pass once the
augmenting path has been found.  Missing edges are never materialised: the
lowest-numbered free right vertex stands in for all of them.

Running time is O(min(L^3 + E, L*E + L^2 log L)).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .graph import (
    BipartiteGraph,
    GraphError,
    Matching,
    Weight,
    is_clean,
    prune_top_l,
    sort_adjacency_desc,
)
from .heap import HeapHandle, PairingHeap

INF = math.inf


class FeasibilityError(RuntimeError):
    """Dual labels became infeasible beyond the configured tolerance."""


@dataclass
class SolveOptions:
    greedy: bool = True
    prune: bool = True
    sorted_adjacency: bool = False
    tolerance: float | None = None
    # assert that mid-search label reads only touch vertices unaffected by
    # the pending adjustments
    debug: bool = False


@dataclass
class DualLabels:
    h_left: list[Weight]
    h_right: list[Weight]

    def snapshot(self) -> tuple[tuple[Weight, ...], tuple[Weight, ...]]:
        return tuple(self.h_left), tuple(self.h_right)


@dataclass
class SolveStats:
    edges_visited: int = 0
    h_adjustments: int = 0
    augmentations: int = 0
    greedy_matches: int = 0
    heap_inserts: int = 0
    heap_extracts: int = 0
    heap_decreases: int = 0
    heap_deletes: int = 0
    # one entry per search, in root order
    bfs_edges_visited: list[int] = field(default_factory=list)
    bfs_h_adjustments: list[int] = field(default_factory=list)

    @property
    def bfs_runs(self) -> int:
        return len(self.bfs_edges_visited)

    @property
    def heap_operations(self) -> int:
        return self.heap_inserts + self.heap_extracts + self.heap_decreases + self.heap_deletes

    def as_dict(self) -> dict[str, int]:
        return {
            "edges_visited": self.edges_visited,
            "h_adjustments": self.h_adjustments,
            "augmentations": self.augmentations,
            "greedy_matches": self.greedy_matches,
            "heap_inserts": self.heap_inserts,
            "heap_extracts": self.heap_extracts,
            "heap_decreases": self.heap_decreases,
            "heap_deletes": self.heap_deletes,
            "bfs_runs": self.bfs_runs,
            "max_bfs_edges_visited": max(self.bfs_edges_visited, default=0),
            "max_bfs_h_adjustments": max(self.bfs_h_adjustments, default=0),
        }


class SolveResult(NamedTuple):
    matching: Matching
    labels: DualLabels
    stats: SolveStats


class KwokSolver:
    """Solver state for one graph.

    ``solve`` drives the whole computation; the individual steps
    (``greedy_init``, ``bfs``, ``introduce``, ``advance``,
    ``deferred_h_update``) are public so they can be exercised in isolation.

    Per-search state: ``slack`` holds slack plus the running adjustment total
    (so a uniform decrease of all slacks is a single addition to
    ``delta_sum``), ``stage_left``/``stage_right`` hold the stage at which a
    vertex joined the tree (-1 when outside), ``frontier`` keys matched right
    vertices outside the tree by slack, and ``r_star`` is the free right
    vertex outside the tree of least slack.
    """

    def __init__(
        self,
        graph: BipartiteGraph,
        options: SolveOptions | None = None,
        on_augment: Callable[["KwokSolver"], None] | None = None,
    ):
        opts = options or SolveOptions()
        if not is_clean(graph):
            raise GraphError("graph has non-positive edges; call clean() first")
        g = graph
        if opts.prune:
            g = prune_top_l(g)
        if opts.sorted_adjacency:
            g = sort_adjacency_desc(g)
        self.graph = g
        self.options = opts
        self.on_augment = on_augment
        self.tol = opts.tolerance if opts.tolerance is not None else g.default_tolerance()
        if g.integer and opts.tolerance is None:
            self.tol = 0

        nl, nr = g.n_left, g.n_right
        self.pair_left = [-1] * nl
        self.pair_right = [-1] * nr
        off, aw = g.offsets, g.adj_weight
        self.h_left: list[Weight] = [
            max(aw[off[l] : off[l + 1]]) if off[l + 1] > off[l] else 0 for l in range(nl)
        ]
        self.h_right: list[Weight] = [0] * nr
        self.stats = SolveStats()

        self.slack: list[Weight] = [INF] * nr
        self.parent = [-1] * nr
        self.stage_left = [-1] * nl
        self.stage_right = [-1] * nr
        self.handle: list[HeapHandle | None] = [None] * nr
        self.tree_left: list[int] = []
        self.tree_right: list[int] = []
        self.queue: deque[int] = deque()
        self.frontier: PairingHeap[int] = PairingHeap()
        self.delta_list: list[Weight] = []
        self.delta_sum: Weight = 0
        self.stage = 0
        self.r_first = 0
        self.r_star = 0
        self._bfs_edges = 0
        self._bfs_deltas = 0

    @property
    def labels(self) -> DualLabels:
        return DualLabels(self.h_left, self.h_right)

    def greedy_init(self) -> int:
        """Match each left vertex to its first free neighbour along a tight edge."""
        g = self.graph
        off, adj_r, adj_w = g.offsets, g.adj_right, g.adj_weight
        h_l, h_r = self.h_left, self.h_right
        pair_l, pair_r = self.pair_left, self.pair_right
        tol = self.tol
        count = 0
        for l in range(g.n_left):
            if pair_l[l] >= 0:
                continue
            hl = h_l[l]
            for k in range(off[l], off[l + 1]):
                r = adj_r[k]
                if pair_r[r] < 0 and abs(hl + h_r[r] - adj_w[k]) <= tol:
                    pair_l[l] = r
                    pair_r[r] = l
                    count += 1
                    break
        self.stats.greedy_matches += count
        return count

    def _reset_search(self, root: int) -> None:
        nl, nr = self.graph.n_left, self.graph.n_right
        self.stage_left[:] = [-1] * nl
        self.stage_right[:] = [-1] * nr
        self.slack[:] = [INF] * nr
        self.handle[:] = [None] * nr
        self.tree_left = [root]
        self.tree_right = []
        pair_r = self.pair_right
        r = self.r_first
        while pair_r[r] >= 0:
            r += 1
        self.r_first = r
        self.frontier = PairingHeap()
        self.delta_list = []
        self.delta_sum = 0
        self.stage = 0
        self.r_star = r
        self.stage_left[root] = 0
        self.queue = deque([root])
        self._bfs_edges = 0
        self._bfs_deltas = 0

    def bfs(self, root: int) -> None:
        """Grow an alternating tree from ``root`` until the matching is augmented."""
        self._reset_search(root)
        try:
            self._search()
        finally:
            self.stats.edges_visited += self._bfs_edges
            self.stats.bfs_edges_visited.append(self._bfs_edges)
            self.stats.bfs_h_adjustments.append(self._bfs_deltas)

    def _search(self) -> None:
        g = self.graph
        off, adj_r, adj_w = g.offsets, g.adj_right, g.adj_weight
        h_l, h_r = self.h_left, self.h_right
        pair_r = self.pair_right
        slack, parent, handle = self.slack, self.parent, self.handle
        stage_r = self.stage_right
        queue = self.queue
        stats = self.stats
        tol = self.tol
        sorted_adj = self.options.sorted_adjacency
        debug = self.options.debug
        rp = self.r_first
        edges = 0
        while True:
            frontier = self.frontier
            while queue:
                l = queue.popleft()
                if debug:
                    assert self.stage_left[l] == self.stage, "label read on a stale left vertex"
                hl = h_l[l]
                ds = self.delta_sum
                edges += 1
                # w(l, r') is taken as 0 when (l, r') is not an edge
                if hl <= tol:
                    parent[rp] = l
                    self._bfs_edges += edges
                    self.advance(rp)
                    return
                v = hl + ds
                if slack[rp] > v:
                    slack[rp] = v
                    parent[rp] = l
                if slack[rp] <= slack[self.r_star]:
                    self.r_star = rp
                for k in range(off[l], off[l + 1]):
                    r = adj_r[k]
                    edges += 1
                    if stage_r[r] >= 0:
                        continue
                    d = hl + h_r[r] - adj_w[k]
                    if d <= tol:
                        if d < -tol:
                            raise FeasibilityError(f"edge ({l}, {r}) violates feasibility by {-d}")
                        parent[r] = l
                        if self.advance(r):
                            self._bfs_edges += edges
                            return
                        continue
                    s = d + ds
                    if slack[r] > s:
                        slack[r] = s
                        parent[r] = l
                        if pair_r[r] < 0:
                            rs = self.r_star
                            if s < slack[rs] or (s == slack[rs] and r < rs):
                                self.r_star = r
                        elif handle[r] is not None:
                            frontier.decrease_key(handle[r], s)
                            stats.heap_decreases += 1
                        else:
                            handle[r] = frontier.insert(r, s)
                            stats.heap_inserts += 1
                    if sorted_adj and pair_r[r] < 0:
                        # every later entry is at least as slack as r
                        break
            self._bfs_edges += edges
            edges = 0
            if self.introduce():
                return

    def introduce(self) -> bool:
        """Stall step: record the next adjustment and pull zero-slack vertices in.

        Returns True if this completed an augmentation.
        """
        self.stage += 1
        self.stats.h_adjustments += 1
        self._bfs_deltas += 1
        slack = self.slack
        frontier = self.frontier
        rs = self.r_star
        ds = self.delta_sum
        delta = slack[rs] - ds
        if frontier:
            delta = min(delta, frontier.min_priority() - ds)
        if delta < 0:
            if self.tol == 0 or delta < -self.tol:
                raise FeasibilityError(f"negative label adjustment {delta}")
            delta = 0.0
        self.delta_list.append(delta)
        self.delta_sum = ds = ds + delta
        tol = self.tol
        if slack[rs] - ds <= tol:
            self.advance(rs)
            return True
        while frontier and frontier.min_priority() - ds <= tol:
            r, _ = frontier.extract_min()
            self.handle[r] = None
            self.stats.heap_extracts += 1
            # r is matched, so this only extends the tree
            self.advance(r)
        return False

    def advance(self, r: int) -> bool:
        """Bring right vertex ``r`` into the tree at the current stage.

        A matched ``r`` enqueues its partner and returns False.  A free ``r``
        closes an augmenting path, which is applied along with the pending
        label updates; returns True.
        """
        stage = self.stage
        self.stage_right[r] = stage
        self.tree_right.append(r)
        h = self.handle[r]
        if h is not None:
            self.frontier.delete(h)
            self.handle[r] = None
            self.stats.heap_deletes += 1
        l = self.pair_right[r]
        if l >= 0:
            self.queue.append(l)
            self.stage_left[l] = stage
            self.tree_left.append(l)
            return False
        pair_l, pair_r, parent = self.pair_left, self.pair_right, self.parent
        while r >= 0:
            l = parent[r]
            prev = pair_l[l]
            pair_l[l] = r
            pair_r[r] = l
            r = prev
        self.stats.augmentations += 1
        self.deferred_h_update()
        return True

    def deferred_h_update(self) -> None:
        """Apply the recorded adjustments: a vertex that joined at stage j
        receives the sum of every adjustment made after it joined."""
        deltas = self.delta_list
        if not deltas:
            return
        suffix = list(deltas)
        for j in range(len(suffix) - 2, -1, -1):
            suffix[j] += suffix[j + 1]
        i = self.stage
        h_l, h_r = self.h_left, self.h_right
        stage_l, stage_r = self.stage_left, self.stage_right
        for l in self.tree_left:
            j = stage_l[l]
            if j != i:
                h_l[l] -= suffix[j]
        for r in self.tree_right:
            j = stage_r[r]
            if j != i:
                h_r[r] += suffix[j]

    def run(self) -> SolveResult:
        g = self.graph
        if self.options.greedy:
            self.greedy_init()
        off = g.offsets
        for l in range(g.n_left):
            if self.pair_left[l] >= 0 or off[l + 1] == off[l]:
                continue
            self.bfs(l)
            if self.on_augment is not None:
                self.on_augment(self)
        return SolveResult(self.matching(), DualLabels(self.h_left, self.h_right), self.stats)

    def matching(self) -> Matching:
        """Current matching with pairs through missing edges filtered out."""
        g = self.graph
        return Matching.from_pairs(g, ((l, r) for l, r in enumerate(self.pair_left) if r >= 0))


def solve(
    graph: BipartiteGraph,
    options: SolveOptions | None = None,
    on_augment: Callable[[KwokSolver], None] | None = None,
) -> SolveResult:
    """Maximum-weight matching of a cleaned graph.

    Returns the matching, the final dual labels and instrumentation counters.
    Labels refer to the graph actually searched, i.e. after pruning when
    ``options.prune`` is set (see :func:`solved_graph`).
    """
    return KwokSolver(graph, options, on_augment).run()


def solve_sorted_adjacency(
    graph: BipartiteGraph, options: SolveOptions | None = None
) -> SolveResult:
    opts = options or SolveOptions()
    opts = SolveOptions(opts.greedy, opts.prune, True, opts.tolerance, opts.debug)
    return solve(graph, opts)


def solved_graph(graph: BipartiteGraph, options: SolveOptions | None = None) -> BipartiteGraph:
    """The graph the solver works on for ``options`` (pruned and/or re-sorted)."""
    opts = options or SolveOptions()
    g = graph
    if opts.prune:
        g = prune_top_l(g)
    if opts.sorted_adjacency:
        g = sort_adjacency_desc(g)
    return g
