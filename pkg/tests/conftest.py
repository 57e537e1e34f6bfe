import random

import pytest

from mwmatch.graph import BipartiteGraph, build, clean


def random_graph(
    rng: random.Random,
    max_left: int = 8,
    max_right: int = 12,
    lo: int = -5,
    hi: int = 10,
    density: float | None = None,
    nonempty_rows: bool = False,
) -> BipartiteGraph:
    """Cleaned random graph with |L| <= |R|."""
    n_left = rng.randint(1, max_left)
    n_right = rng.randint(n_left, max(n_left, max_right))
    p = rng.random() if density is None else density
    edges = []
    for l in range(n_left):
        row = [(l, r, rng.randint(lo, hi)) for r in range(n_right) if rng.random() < p]
        if nonempty_rows and not any(w > 0 for _, _, w in row):
            row.append((l, rng.randrange(n_right), rng.randint(max(lo, 1), hi)))
        edges.extend(row)
    return clean(build(n_left, n_right, edges))


def dense_rows(g: BipartiteGraph) -> list[list]:
    rows = [[0] * g.n_right for _ in range(g.n_left)]
    for l, r, w in g.edges():
        rows[l][r] = w
    return rows


def assert_stats_bounds(g: BipartiteGraph, stats) -> None:
    """Per-search bounds: at most |L| adjustments and at most
    min(|L| * max degree, |E|) + |L| edge visits.  On a pruned graph the max
    degree is at most |L|, giving min(|L|^2, |E|) + |L|."""
    L = g.n_left
    max_deg = max((g.degree(l) for l in range(L)), default=0)
    cap = min(L * max_deg, g.n_edges) + L
    for d in stats.bfs_h_adjustments:
        assert d <= L, f"{d} adjustments in one search, |L| = {L}"
    for e in stats.bfs_edges_visited:
        assert e <= cap, f"{e} edge visits in one search, cap {cap}"


@pytest.fixture
def two_by_two() -> BipartiteGraph:
    return build(2, 2, [(0, 0, 5), (0, 1, 1), (1, 0, 2), (1, 1, 3)])


# PASS/FAIL lines of the acceptance suite, echoed again in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
