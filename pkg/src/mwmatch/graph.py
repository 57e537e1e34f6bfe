"""Weighted bipartite graphs in compressed adjacency form.

Vertices on each side are numbered from 0.  After :func:`build` the left side
is never larger than the right side; if the caller's sides had to be swapped
the graph remembers it in ``transposed`` so that results can be mapped back.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence, TextIO, Union

Weight = Union[int, float]


class GraphError(ValueError):
    """Raised for malformed graph input."""


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Edge(NamedTuple):
    left: int
    right: int
    weight: Weight


@dataclass(frozen=True)
class BipartiteGraph:
    """Immutable bipartite graph with per-left-vertex adjacency slices.

    The neighbours of left vertex ``l`` are ``adj_right[offsets[l]:offsets[l+1]]``
    with matching weights in ``adj_weight``.  Adjacency lists produced by
    :func:`build` are sorted by right index; solvers iterate them in stored order.
    """

    n_left: int
    n_right: int
    offsets: tuple[int, ...]
    adj_right: tuple[int, ...]
    adj_weight: tuple[Weight, ...]
    transposed: bool = False
    integer: bool = True

    @property
    def n_edges(self) -> int:
        return len(self.adj_right)

    def degree(self, l: int) -> int:
        return self.offsets[l + 1] - self.offsets[l]

    def neighbors(self, l: int) -> Iterator[tuple[int, Weight]]:
        for k in range(self.offsets[l], self.offsets[l + 1]):
            yield self.adj_right[k], self.adj_weight[k]

    def edges(self) -> Iterator[Edge]:
        offsets, adj_r, adj_w = self.offsets, self.adj_right, self.adj_weight
        for l in range(self.n_left):
            for k in range(offsets[l], offsets[l + 1]):
                yield Edge(l, adj_r[k], adj_w[k])

    def weight_of(self, l: int, r: int) -> Weight | None:
        """Weight of edge (l, r), or None if absent.  Linear in deg(l)."""
        for k in range(self.offsets[l], self.offsets[l + 1]):
            if self.adj_right[k] == r:
                return self.adj_weight[k]
        return None

    def max_abs_weight(self) -> Weight:
        return max((abs(w) for w in self.adj_weight), default=0)

    def original_pair(self, l: int, r: int) -> tuple[int, int]:
        """Map an internal (left, right) pair back to the caller's orientation."""
        return (r, l) if self.transposed else (l, r)

    def default_tolerance(self) -> Weight:
        """Equality tolerance for slack tests: 0 for integer graphs."""
        if self.integer:
            return 0
        return 1e-9 * max(self.max_abs_weight(), 1.0)


@dataclass
class Matching:
    """A set of (left, right) pairs together with their total weight."""

    pairs: list[tuple[int, int]] = field(default_factory=list)
    total_weight: Weight = 0

    def __len__(self) -> int:
        return len(self.pairs)

    @classmethod
    def from_pairs(cls, g: BipartiteGraph, pairs: Iterable[tuple[int, int]]) -> "Matching":
        """Collect real edges of ``g`` among ``pairs``; non-edges are dropped."""
        kept = []
        total: Weight = 0
        for l, r in pairs:
            w = g.weight_of(l, r)
            if w is None:
                continue
            kept.append((l, r))
            total += w
        kept.sort()
        return cls(kept, total)

    def is_valid(self, g: BipartiteGraph) -> bool:
        seen_l: set[int] = set()
        seen_r: set[int] = set()
        total: Weight = 0
        for l, r in self.pairs:
            if l in seen_l or r in seen_r:
                return False
            w = g.weight_of(l, r)
            if w is None:
                return False
            seen_l.add(l)
            seen_r.add(r)
            total += w
        if g.integer:
            return total == self.total_weight
        return math.isclose(total, self.total_weight, rel_tol=1e-9, abs_tol=1e-9)

    def original_pairs(self, g: BipartiteGraph) -> list[tuple[int, int]]:
        return sorted(g.original_pair(l, r) for l, r in self.pairs)


def _check_weight(w: Weight, edge) -> bool:
    """Return True if ``w`` is an int (not bool); reject non-finite floats."""
    if isinstance(w, bool) or not isinstance(w, (int, float)):
        raise GraphError(f"edge {edge}: weight must be a number, got {type(w).__name__}")
    if isinstance(w, float):
        if not math.isfinite(w):
            raise GraphError(f"edge {edge}: non-finite weight {w!r}")
        return False
    return True


def _from_lists(
    n_left: int,
    n_right: int,
    lists: Sequence[Sequence[tuple[int, Weight]]],
    transposed: bool,
    integer: bool,
) -> BipartiteGraph:
    offsets = [0]
    adj_r: list[int] = []
    adj_w: list[Weight] = []
    for lst in lists:
        for r, w in lst:
            adj_r.append(r)
            adj_w.append(w)
        offsets.append(len(adj_r))
    return BipartiteGraph(
        n_left, n_right, tuple(offsets), tuple(adj_r), tuple(adj_w), transposed, integer
    )


def build(n_left: int, n_right: int, edges: Iterable[Sequence]) -> BipartiteGraph:
    """Build a normalized graph from ``(l, r, w)`` triples.

    Sides are swapped when ``n_left > n_right``.  Parallel edges collapse to the
    heaviest one.  The graph is in integer mode unless some weight is a float.
    """
    if n_left < 0 or n_right < 0:
        raise GraphError(f"negative vertex count ({n_left}, {n_right})")
    transposed = n_left > n_right
    best: dict[tuple[int, int], Weight] = {}
    integer = True
    for edge in edges:
        if len(edge) != 3:
            raise GraphError(f"edge {tuple(edge)}: expected (l, r, w)")
        l, r, w = edge
        if not (isinstance(l, int) and isinstance(r, int)):
            raise GraphError(f"edge {tuple(edge)}: vertex indices must be integers")
        if not (0 <= l < n_left and 0 <= r < n_right):
            raise GraphError(
                f"edge {tuple(edge)}: vertex index out of range for {n_left}x{n_right} graph"
            )
        integer &= _check_weight(w, tuple(edge))
        key = (r, l) if transposed else (l, r)
        old = best.get(key)
        if old is None or w > old:
            best[key] = w
    if transposed:
        n_left, n_right = n_right, n_left
    lists: list[list[tuple[int, Weight]]] = [[] for _ in range(n_left)]
    for (l, r), w in sorted(best.items()):
        lists[l].append((r, w))
    return _from_lists(n_left, n_right, lists, transposed, integer)


def clean(g: BipartiteGraph) -> BipartiteGraph:
    """Drop every edge of non-positive weight.  Vertex counts are unchanged."""
    if all(w > 0 for w in g.adj_weight):
        return g
    lists = [[(r, w) for r, w in g.neighbors(l) if w > 0] for l in range(g.n_left)]
    return _from_lists(g.n_left, g.n_right, lists, g.transposed, g.integer)


def is_clean(g: BipartiteGraph) -> bool:
    return all(w > 0 for w in g.adj_weight)


def _kth_largest(values: list, k: int, rng: random.Random) -> Weight:
    """Quickselect: the k-th largest element (1-based) in expected O(n)."""
    lo_vals = values
    while True:
        pivot = lo_vals[rng.randrange(len(lo_vals))]
        above = [v for v in lo_vals if v > pivot]
        if k <= len(above):
            lo_vals = above
            continue
        n_equal = sum(1 for v in lo_vals if v == pivot)
        if k <= len(above) + n_equal:
            return pivot
        k -= len(above) + n_equal
        lo_vals = [v for v in lo_vals if v < pivot]


def prune_top_l(g: BipartiteGraph, seed: int = 0) -> BipartiteGraph:
    """Keep only the ``n_left`` heaviest edges of each left vertex.

    The maximum matching weight is unchanged.  Selection is expected linear;
    survivors keep their stored relative order, and among edges tied at the
    cut-off weight the earliest stored ones are kept.
    """
    k = g.n_left
    if all(g.degree(l) <= k for l in range(g.n_left)):
        return g
    rng = random.Random(seed)
    lists = []
    for l in range(g.n_left):
        nbrs = list(g.neighbors(l))
        if len(nbrs) > k:
            cut = _kth_largest([w for _, w in nbrs], k, rng)
            n_above = sum(1 for _, w in nbrs if w > cut)
            ties_left = k - n_above
            kept = []
            for r, w in nbrs:
                if w > cut:
                    kept.append((r, w))
                elif w == cut and ties_left > 0:
                    kept.append((r, w))
                    ties_left -= 1
            nbrs = kept
        lists.append(nbrs)
    return _from_lists(g.n_left, g.n_right, lists, g.transposed, g.integer)


def sort_adjacency_desc(g: BipartiteGraph) -> BipartiteGraph:
    """Reorder each adjacency list by weight, heaviest first (ties by right index)."""
    lists = [
        sorted(g.neighbors(l), key=lambda e: (-e[1], e[0])) for l in range(g.n_left)
    ]
    return _from_lists(g.n_left, g.n_right, lists, g.transposed, g.integer)


@dataclass(frozen=True)
class Diagnostic:
    kind: str  # "range" | "duplicate" | "offsets" | "orientation"
    left: int
    right: int
    message: str


def validate(g: BipartiteGraph) -> list[Diagnostic]:
    """Report structural invariant violations without modifying the graph."""
    out: list[Diagnostic] = []
    if g.n_left > g.n_right:
        out.append(Diagnostic("orientation", -1, -1, f"n_left {g.n_left} > n_right {g.n_right}"))
    if (
        len(g.offsets) != g.n_left + 1
        or g.offsets[0] != 0
        or g.offsets[-1] != len(g.adj_right)
        or len(g.adj_weight) != len(g.adj_right)
        or any(a > b for a, b in zip(g.offsets, g.offsets[1:]))
    ):
        out.append(Diagnostic("offsets", -1, -1, "offset table inconsistent with adjacency"))
        return out
    for l in range(g.n_left):
        seen: set[int] = set()
        for r, _ in g.neighbors(l):
            if not 0 <= r < g.n_right:
                out.append(Diagnostic("range", l, r, f"right index {r} outside [0, {g.n_right})"))
            elif r in seen:
                out.append(Diagnostic("duplicate", l, r, f"duplicate edge ({l}, {r})"))
            seen.add(r)
    return out


def _parse_number(tok: str, lineno: int) -> Weight:
    try:
        if any(c in tok for c in ".eE"):
            value = float(tok)
            if not math.isfinite(value):
                raise GraphParseError(lineno, f"non-finite weight {tok!r}")
            return value
        return int(tok)
    except ValueError:
        raise GraphParseError(lineno, f"bad number {tok!r}") from None


def _parse_index(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphParseError(lineno, f"bad {what} {tok!r}") from None


def read_graph(stream: TextIO) -> BipartiteGraph:
    """Parse the text format: header ``n_left n_right n_edges`` then ``l r w`` lines.

    Blank lines and lines starting with ``#`` are ignored.
    """
    header = None
    edges = []
    n_edges = 0
    for lineno, line in enumerate(stream, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if header is None:
            if len(toks) != 3:
                raise GraphParseError(lineno, "header must be 'n_left n_right n_edges'")
            header = tuple(_parse_index(t, lineno, "header field") for t in toks)
            if min(header) < 0:
                raise GraphParseError(lineno, "header fields must be non-negative")
            n_edges = header[2]
            continue
        if len(toks) != 3:
            raise GraphParseError(lineno, "edge line must be 'l r w'")
        l = _parse_index(toks[0], lineno, "left index")
        r = _parse_index(toks[1], lineno, "right index")
        w = _parse_number(toks[2], lineno)
        if not (0 <= l < header[0] and 0 <= r < header[1]):
            raise GraphParseError(lineno, f"edge ({l}, {r}) out of range")
        if len(edges) == n_edges:
            raise GraphParseError(lineno, f"more than {n_edges} edges")
        edges.append((l, r, w))
    if header is None:
        raise GraphParseError(1, "missing header")
    if len(edges) != n_edges:
        raise GraphParseError(lineno + 1 if edges else 1, f"expected {n_edges} edges, got {len(edges)}")
    return build(header[0], header[1], edges)


def write_graph(g: BipartiteGraph, stream: TextIO) -> None:
    """Write ``g`` in the text format, in the caller's original orientation."""
    if g.transposed:
        stream.write(f"{g.n_right} {g.n_left} {g.n_edges}\n")
    else:
        stream.write(f"{g.n_left} {g.n_right} {g.n_edges}\n")
    for l, r, w in g.edges():
        a, b = g.original_pair(l, r)
        stream.write(f"{a} {b} {w}\n")
