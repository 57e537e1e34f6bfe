"""Random instance generation, timing harness and visited-edge scaling study."""

from __future__ import annotations

import csv
import math
import random
import statistics
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence, TextIO

from .baselines import DenseCostMatrix, hungarian_eager, mcmf_dijkstra
from .graph import BipartiteGraph, Weight, build
from .kwok import SolveOptions, SolveResult, SolveStats, solve

CSV_FIELDS = [
    "algorithm", "n_left", "n_right", "n_edges", "round", "seed", "weight",
    "wall_ns", "edges_visited", "h_adjustments", "augmentations",
]

RULES = ("c_lgR", "frac", "fixed")

# flag band for h_adjustments / n_left on random square instances
H_BAND = (0.25, 6.0)


class WeightMismatch(RuntimeError):
    def __init__(self, seed: int, weights: dict[str, Weight]):
        super().__init__(f"solvers disagree on seed {seed}: {weights}")
        self.seed = seed
        self.weights = weights


@dataclass(frozen=True)
class InstanceSpec:
    """Random-instance family.

    ``rule`` sets the edge budget: ``c_lgR`` gives ``floor(param * L * log2 R)``,
    ``frac`` gives ``floor(L * R / param)`` and ``fixed`` gives ``int(param)``.
    """

    n_left: int
    ratio: int = 1
    rule: str = "fixed"
    param: float = 0
    weight_lo: int = 1
    weight_hi: int = 1
    seed: int = 0

    @property
    def n_right(self) -> int:
        return self.n_left * self.ratio

    @property
    def n_edges(self) -> int:
        L, R = self.n_left, self.n_right
        if self.rule == "c_lgR":
            return math.floor(self.param * L * math.log2(R)) if R > 1 else 0
        if self.rule == "frac":
            return math.floor(L * R / self.param)
        if self.rule == "fixed":
            return int(self.param)
        raise ValueError(f"unknown edge rule {self.rule!r}; expected one of {RULES}")

    def validate(self) -> None:
        if self.n_left < 0 or self.ratio < 1:
            raise ValueError(f"bad sizes n_left={self.n_left} ratio=1:{self.ratio}")
        if self.weight_lo > self.weight_hi:
            raise ValueError(f"empty weight range [{self.weight_lo}, {self.weight_hi}]")
        e = self.n_edges
        if e < 0 or e > self.n_left * self.n_right:
            raise ValueError(
                f"edge budget {e} outside [0, {self.n_left * self.n_right}] for "
                f"{self.n_left}x{self.n_right}"
            )

    def label(self) -> str:
        return f"L={self.n_left} 1:{self.ratio} {self.rule}={self.param:g} w=[{self.weight_lo},{self.weight_hi}]"


def sample_pairs(rng: random.Random, n_left: int, n_right: int, k: int) -> list[int]:
    """``k`` distinct cells of the ``n_left x n_right`` grid, uniformly.

    Floyd's algorithm for sparse budgets, a partial shuffle for dense ones.
    Cells are encoded as ``l * n_right + r``.
    """
    n = n_left * n_right
    if k > n:
        raise ValueError(f"cannot sample {k} cells from {n}")
    if 2 * k <= n:
        chosen: set[int] = set()
        out = []
        for j in range(n - k, n):
            t = rng.randint(0, j)
            if t in chosen:
                t = j
            chosen.add(t)
            out.append(t)
        return out
    cells = list(range(n))
    for i in range(k):
        j = rng.randint(i, n - 1)
        cells[i], cells[j] = cells[j], cells[i]
    return cells[:k]


def gen(spec: InstanceSpec) -> BipartiteGraph:
    """Deterministic random graph for ``spec`` (Mersenne Twister seeded by ``spec.seed``)."""
    spec.validate()
    rng = random.Random(spec.seed)
    L, R = spec.n_left, spec.n_right
    cells = sample_pairs(rng, L, R, spec.n_edges)
    lo, hi = spec.weight_lo, spec.weight_hi
    edges = [(c // R, c % R, rng.randint(lo, hi)) for c in cells]
    return build(L, R, edges)


def round_seed(base: int, round_no: int) -> int:
    return (base * 1_000_003 + round_no * 7919 + 17) % (2**63)



def _prepare(name: str, g: BipartiteGraph, greedy: bool = True) -> Callable[[], SolveResult]:
    """Build the solver input outside the timed region; return the timed call."""
    if name == "kwok":
        opts = SolveOptions(greedy=greedy)
        return lambda: solve(g, opts)
    if name == "kwok_sorted":
        opts = SolveOptions(greedy=greedy, sorted_adjacency=True)
        return lambda: solve(g, opts)
    if name == "hungarian":
        m = DenseCostMatrix.from_graph(g)
        return lambda: hungarian_eager(m, with_virtual_vertices=False)
    if name == "hungarian_virtual":
        m = DenseCostMatrix.from_graph(g)
        return lambda: hungarian_eager(m, with_virtual_vertices=True)
    if name == "mcmf":
        return lambda: mcmf_dijkstra(g)
    raise ValueError(f"unknown algorithm {name!r}")


ALGORITHMS = ("kwok", "kwok_sorted", "hungarian", "hungarian_virtual", "mcmf")


@dataclass
class RoundResult:
    algorithm: str
    spec: InstanceSpec
    round: int
    seed: int
    n_edges: int
    weight: Weight
    wall_ns: int
    stats: SolveStats

    def csv_row(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "n_left": self.spec.n_left,
            "n_right": self.spec.n_right,
            "n_edges": self.n_edges,
            "round": self.round,
            "seed": self.seed,
            "weight": self.weight,
            "wall_ns": self.wall_ns,
            "edges_visited": self.stats.edges_visited,
            "h_adjustments": self.stats.h_adjustments,
            "augmentations": self.stats.augmentations,
        }


@dataclass
class BenchRecord:
    algorithm: str
    spec: InstanceSpec
    times_ms: list[float] = field(default_factory=list)
    edges_visited: list[int] = field(default_factory=list)
    h_adjustments: list[int] = field(default_factory=list)

    @property
    def mean_ms(self) -> float:
        return statistics.fmean(self.times_ms)

    @property
    def std_ms(self) -> float:
        # sample standard deviation (n - 1 denominator)
        return statistics.stdev(self.times_ms) if len(self.times_ms) > 1 else 0.0

    def summary(self) -> str:
        return f"{self.algorithm:>18}  {self.spec.label():<40} {self.mean_ms:10.2f} ± {self.std_ms:.2f} ms"


def run_round(
    spec: InstanceSpec, algorithms: Sequence[str], round_no: int, greedy: bool = True
) -> list[RoundResult]:
    """Solve one generated graph with every algorithm; raise on disagreement."""
    seed = round_seed(spec.seed, round_no)
    g = gen(replace(spec, seed=seed))
    out = []
    for name in algorithms:
        call = _prepare(name, g, greedy)
        t0 = time.perf_counter_ns()
        res = call()
        t1 = time.perf_counter_ns()
        out.append(
            RoundResult(name, spec, round_no, seed, g.n_edges, res.matching.total_weight, t1 - t0, res.stats)
        )
    weights = {r.algorithm: r.weight for r in out}
    if len(set(weights.values())) > 1:
        raise WeightMismatch(seed, weights)
    return out


def bench(
    specs: Iterable[InstanceSpec],
    algorithms: Sequence[str],
    rounds: int,
    greedy: bool = True,
    rows: list[RoundResult] | None = None,
    parallel: bool = False,
) -> list[BenchRecord]:
    """Time every algorithm on every spec.

    Round 0 is a warm-up and excluded; rounds 1..``rounds`` are timed.  With
    ``parallel`` the rounds of a spec run in worker processes and the timings
    are not comparable with sequential runs.
    """
    if rounds < 2:
        raise ValueError("need at least 2 rounds for a standard deviation")
    records = []
    for spec in specs:
        run_round(spec, algorithms, 0, greedy)
        if parallel:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor() as pool:
                results = list(
                    pool.map(run_round, [spec] * rounds, [algorithms] * rounds,
                             range(1, rounds + 1), [greedy] * rounds)
                )
        else:
            results = [run_round(spec, algorithms, i, greedy) for i in range(1, rounds + 1)]
        by_algo = {a: BenchRecord(a, spec) for a in algorithms}
        for res in results:
            for r in res:
                rec = by_algo[r.algorithm]
                rec.times_ms.append(r.wall_ns / 1e6)
                rec.edges_visited.append(r.stats.edges_visited)
                rec.h_adjustments.append(r.stats.h_adjustments)
                if rows is not None:
                    rows.append(r)
        records.extend(by_algo.values())
    return records


def write_csv(rows: Iterable[RoundResult], stream: TextIO) -> None:
    w = csv.DictWriter(stream, fieldnames=CSV_FIELDS)
    w.writeheader()
    for r in rows:
        w.writerow(r.csv_row())


# -- visited-edge scaling study -------------------------------------------


@dataclass
class ScalingPoint:
    n_edges: int
    n_left: int
    mean_edges_visited: float
    mean_h_ratio: float
    h_ratios: list[float]


@dataclass
class ScalingResult:
    points: list[ScalingPoint]
    maxima: dict[int, ScalingPoint]
    exponent: float | None

    @property
    def h_ratios(self) -> list[float]:
        return [x for p in self.points for x in p.h_ratios]

    def h_band_fraction(self, band: tuple[float, float] = H_BAND) -> float:
        ratios = self.h_ratios
        if not ratios:
            return 1.0
        return sum(band[0] <= x <= band[1] for x in ratios) / len(ratios)


def default_l_sweep(n_edges: int, points: int = 6) -> list[int]:
    """Geometric grid of square sizes L (= R) from sqrt(E) (complete graph)
    up to E/4 (average degree 4)."""
    lo = max(2, math.isqrt(max(n_edges, 1) - 1) + 1)
    hi = max(lo, n_edges // 4)
    if points <= 1 or lo == hi:
        return [lo]
    ratio = (hi / lo) ** (1 / (points - 1))
    sweep = sorted({round(lo * ratio**i) for i in range(points)})
    return [x for x in sweep if x * x >= n_edges]


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> float | None:
    """Least-squares slope of log(y) against log(x); None with < 2 distinct x."""
    pts = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len({p[0] for p in pts}) < 2:
        return None
    mx = statistics.fmean(p[0] for p in pts)
    my = statistics.fmean(p[1] for p in pts)
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
    return sxy / sxx


def _scaling_cell(args: tuple[int, int, int, int]) -> ScalingPoint:
    n_edges, n_left, rounds, seed = args
    visited, ratios = [], []
    for i in range(rounds):
        spec = InstanceSpec(n_left, 1, "fixed", n_edges, 1, n_left * n_left,
                            round_seed(seed, n_edges * 100_003 + n_left * 10 + i))
        res = solve(gen(spec))
        visited.append(res.stats.edges_visited)
        ratios.append(res.stats.h_adjustments / n_left)
    return ScalingPoint(n_edges, n_left, statistics.fmean(visited), statistics.fmean(ratios), ratios)


def scaling_study(
    e_values: Sequence[int],
    l_sweep: Callable[[int], Sequence[int]] | None = None,
    rounds: int = 10,
    seed: int = 0,
    parallel: bool = False,
) -> ScalingResult:
    """Mean visited edges of the main solver over square random graphs.

    For each edge count, sizes L = R are swept (weights uniform in
    [1, R^2]); the maximum over the sweep is kept and the log-log slope of
    those maxima against E is fitted.
    """
    sweep = l_sweep or default_l_sweep
    cells = [(e, l, rounds, seed) for e in e_values for l in sweep(e)]
    if parallel:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor() as pool:
            points = list(pool.map(_scaling_cell, cells, chunksize=1))
    else:
        points = [_scaling_cell(c) for c in cells]
    maxima: dict[int, ScalingPoint] = {}
    for p in points:
        best = maxima.get(p.n_edges)
        if best is None or p.mean_edges_visited > best.mean_edges_visited:
            maxima[p.n_edges] = p
    es = sorted(maxima)
    exponent = fit_exponent(es, [maxima[e].mean_edges_visited for e in es])
    return ScalingResult(points, maxima, exponent)


def write_scaling_csv(result: ScalingResult, stream: TextIO) -> None:
    w = csv.writer(stream)
    w.writerow(["n_edges", "n_left", "n_right", "mean_edges_visited", "mean_h_adjustments_per_l", "is_max"])
    for p in result.points:
        is_max = result.maxima.get(p.n_edges) is p
        w.writerow([p.n_edges, p.n_left, p.n_left, f"{p.mean_edges_visited:.1f}", f"{p.mean_h_ratio:.4f}", int(is_max)])
