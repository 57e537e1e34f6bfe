"""LP-duality optimality check for a matching and its dual labels."""

from __future__ import annotations

from .graph import BipartiteGraph, Matching, Weight


def check_certificate(
    g: BipartiteGraph,
    matching: Matching,
    h_left: list[Weight],
    h_right: list[Weight],
    tol: Weight = 0,
) -> list[str]:
    """Return a list of violated conditions (empty when the certificate holds).

    Checked: every edge is covered (h_l + h_r >= w), labels are non-negative,
    free right vertices and free non-isolated left vertices have label 0,
    matched pairs are tight, and the matching weight equals the label sum.
    Together these prove the matching has maximum weight.
    """
    problems: list[str] = []
    mate_l = [-1] * g.n_left
    mate_r = [-1] * g.n_right
    for l, r in matching.pairs:
        mate_l[l] = r
        mate_r[r] = l

    for l, r, w in g.edges():
        gap = h_left[l] + h_right[r] - w
        if gap < -tol:
            problems.append(f"infeasible edge ({l}, {r}): h sum short by {-gap}")
        elif mate_l[l] == r and gap > tol:
            problems.append(f"matched edge ({l}, {r}) not tight: gap {gap}")

    label_sum: Weight = 0
    for l in range(g.n_left):
        if g.degree(l) == 0:
            continue
        label_sum += h_left[l]
        if h_left[l] < -tol:
            problems.append(f"negative left label h[{l}] = {h_left[l]}")
        if mate_l[l] < 0 and abs(h_left[l]) > tol:
            problems.append(f"free left vertex {l} has label {h_left[l]}")
    for r in range(g.n_right):
        label_sum += h_right[r]
        if h_right[r] < -tol:
            problems.append(f"negative right label h[{r}] = {h_right[r]}")
        if mate_r[r] < 0 and abs(h_right[r]) > tol:
            problems.append(f"free right vertex {r} has label {h_right[r]}")

    slack = tol * (g.n_left + g.n_right + 1)
    if abs(label_sum - matching.total_weight) > slack:
        problems.append(f"label sum {label_sum} != matching weight {matching.total_weight}")
    return problems
