"""Exact maximum-weight matching for small graphs, by exhaustive search.

These are slow on purpose: they share no code with the solvers and serve as
ground truth in tests.
"""

from __future__ import annotations

from .graph import BipartiteGraph, Matching, Weight

MAX_RIGHT = 20
MAX_EDGES = 20


def brute_force_mwm(g: BipartiteGraph) -> tuple[Matching, Weight]:
    """Dynamic program over (left prefix, set of used right vertices).

    Non-positive edges are never worth taking, so they are skipped.
    """
    if g.n_right > MAX_RIGHT:
        raise ValueError(f"brute_force_mwm supports n_right <= {MAX_RIGHT}, got {g.n_right}")
    # best[mask] = best weight using left vertices processed so far
    best: dict[int, Weight] = {0: 0}
    choice: list[dict[int, tuple[int, int]]] = []
    for l in range(g.n_left):
        nxt: dict[int, Weight] = dict(best)
        back: dict[int, tuple[int, int]] = {m: (m, -1) for m in best}
        for mask, value in best.items():
            for r, w in g.neighbors(l):
                if w <= 0 or mask >> r & 1:
                    continue
                m2 = mask | 1 << r
                cand = value + w
                if m2 not in nxt or cand > nxt[m2]:
                    nxt[m2] = cand
                    back[m2] = (mask, r)
        best = nxt
        choice.append(back)
    mask, weight = max(best.items(), key=lambda kv: (kv[1], -kv[0]))
    pairs = []
    for l in range(g.n_left - 1, -1, -1):
        prev, r = choice[l][mask]
        if r >= 0:
            pairs.append((l, r))
        mask = prev
    pairs.sort()
    return Matching(pairs, weight), weight


def enumerate_all_matchings_weight(g: BipartiteGraph) -> Weight:
    """Maximum weight over every edge subset that is a matching.

    Subsets are walked by include/exclude branching on each edge in turn; a
    branch that would reuse a vertex is cut, so only matchings are visited.
    """
    edges = list(g.edges())
    if len(edges) > MAX_EDGES:
        raise ValueError(f"enumeration supports at most {MAX_EDGES} edges, got {len(edges)}")
    best: Weight = 0
    stack = [(0, 0, 0, 0)]  # (next edge, used left mask, used right mask, weight)
    while stack:
        i, used_l, used_r, total = stack.pop()
        if i == len(edges):
            if total > best:
                best = total
            continue
        l, r, w = edges[i]
        stack.append((i + 1, used_l, used_r, total))
        if not (used_l >> l & 1 or used_r >> r & 1):
            stack.append((i + 1, used_l | 1 << l, used_r | 1 << r, total + w))
    return best


def permutation_mwpm_weight(weights: list[list[Weight]]) -> Weight:
    """Best assignment of a square matrix by trying every permutation."""
    from itertools import permutations

    n = len(weights)
    return max(
        (sum(weights[i][p[i]] for i in range(n)) for p in permutations(range(n))),
        default=0,
    )
