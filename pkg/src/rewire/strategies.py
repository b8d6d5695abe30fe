"""Budgeted rewiring strategies.

GA scans the frozen, value-sorted candidate set EP and accepts whatever is
still applicable in the evolving graph. The heuristics (EDA, TA, PEA) and the
baselines (RA, PA) work on the live graph instead: each accepted step removes
two edges and adds two, and created edges may re-enter consideration. All six
preserve the degree sequence exactly and are bit-deterministic for a fixed
seed.
"""

from __future__ import annotations

import csv
import random
from bisect import insort
from dataclasses import dataclass
from typing import IO, Callable

from .candidates import RewireCandidate, enumerate_ep, make_candidate
from .errors import DegenerateWeightsError, UndefinedMetricError
from .graph import Edge, Graph, _apply_inplace, apply_rewiring, degree_sequence, edge as canonical_edge
from .metrics import assortativity, assortativity_denominator


@dataclass
class StrategyConfig:
    """Run parameters shared by all strategies.

    ``budget`` is either an absolute rewiring count (int) or a fraction of the
    edge count (float in (0, 1]), resolved as max(1, floor(fraction * M)).
    ``retry_limit`` bounds consecutive failed attempts for the stochastic
    strategies; it defaults to 50 * budget.
    """

    budget: int | float
    seed: int = 0
    retry_limit: int | None = None


@dataclass
class RewirePlan:
    """An applied sequence of rewirings with its aggregate effect."""

    steps: list[RewireCandidate]
    delta_s: int
    delta_r: float | None
    final_graph: Graph
    truncated: bool = False


def resolve_budget(budget: int | float, m: int) -> int:
    """Absolute count passes through; a fraction resolves to floor(f*M) >= 1."""
    if isinstance(budget, bool):
        raise ValueError("budget must be a number")
    if isinstance(budget, int):
        if budget < 0:
            raise ValueError("budget must be nonnegative")
        return budget
    if not 0.0 < budget <= 1.0:
        raise ValueError(f"fractional budget must lie in (0, 1], got {budget}")
    return max(1, int(budget * m))


def _finish(original: Graph, work: Graph, steps: list[RewireCandidate], truncated: bool) -> RewirePlan:
    delta_s = sum(c.value for c in steps)
    try:
        denom = assortativity_denominator(original)
        delta_r = delta_s / (len(original.edges) * denom)
    except UndefinedMetricError:
        delta_r = None
    return RewirePlan(steps, delta_s, delta_r, work, truncated)


def _applicable(g: Graph, c: RewireCandidate) -> bool:
    return (
        c.source_a in g.edges
        and c.source_b in g.edges
        and c.created_a not in g.edges
        and c.created_b not in g.edges
    )


def run_ga(g: Graph, cfg: StrategyConfig) -> RewirePlan:
    """Greedy: take the highest-value candidate still applicable, repeat."""
    k = resolve_budget(cfg.budget, len(g.edges))
    work = g.copy()
    steps: list[RewireCandidate] = []
    for cand in enumerate_ep(g):
        if len(steps) >= k:
            break
        if _applicable(work, cand):
            _apply_inplace(work, cand)
            steps.append(cand)
    return _finish(g, work, steps, truncated=False)


def _degree_pairing(deg: list[int], nodes: tuple[int, int, int, int]) -> tuple[Edge, Edge]:
    # join the two highest-degree endpoints and the two lowest (ties by id)
    a, b, c, d = sorted(nodes, key=lambda v: (-deg[v], v))
    return canonical_edge(a, b), canonical_edge(c, d)


def _pairing_step(work: Graph, deg: list[int], e1: Edge, e2: Edge) -> RewireCandidate | None:
    """High-high/low-low rewiring of (e1, e2) if applicable, else None."""
    nodes = (*e1, *e2)
    if len(set(nodes)) != 4:
        return None
    ca, cb = _degree_pairing(deg, nodes)
    if ca in work.edges or cb in work.edges:
        return None
    value = deg[ca[0]] * deg[ca[1]] + deg[cb[0]] * deg[cb[1]] - (
        deg[e1[0]] * deg[e1[1]] + deg[e2[0]] * deg[e2[1]]
    )
    return make_candidate((e1, e2), (ca, cb), value)


def run_eda(g: Graph, cfg: StrategyConfig) -> RewirePlan:
    """Pair the edge with the largest endpoint-degree difference with the next
    rewirable edge, joining high with high and low with low."""
    k = resolve_budget(cfg.budget, len(g.edges))
    work = g.copy()
    deg = degree_sequence(g)
    # entries ordered by (difference descending, edge ascending); degrees are
    # fixed, so only removed/created edges ever change position
    entries: list[tuple[int, Edge]] = sorted(
        (-abs(deg[u] - deg[v]), (u, v)) for u, v in g.edges
    )
    steps: list[RewireCandidate] = []
    while len(steps) < k and len(entries) >= 2:
        top = entries[0][1]
        for p in range(1, len(entries)):
            cand = _pairing_step(work, deg, top, entries[p][1])
            if cand is None:
                continue
            _apply_inplace(work, cand)
            del entries[p]
            del entries[0]
            for e in cand.created_edges():
                insort(entries, (-abs(deg[e[0]] - deg[e[1]]), e))
            steps.append(cand)
            break
        else:
            del entries[0]
    return _finish(g, work, steps, truncated=False)


def run_ta(g: Graph, cfg: StrategyConfig) -> RewirePlan:
    """Hub-targeted rewiring: connect the highest-degree nodes directly.

    Scans the degree-descending node list with two indices. For hub a and a
    later non-neighbor z it takes y as the minimum-degree neighbor of z and b
    as the minimum-degree neighbor of a not adjacent to y, then replaces
    (a,b),(z,y) with (a,z),(b,y) when d_z exceeds both d_y and d_b. Ties in
    degree resolve by ascending node id. The scan may finish before the
    budget is spent.
    """
    k = resolve_budget(cfg.budget, len(g.edges))
    work = g.copy()
    deg = degree_sequence(g)
    n = g.node_count
    by_degree = sorted(range(n), key=lambda v: (-deg[v], v))
    minkey = lambda v: (deg[v], v)
    steps: list[RewireCandidate] = []
    p = 0
    while len(steps) < k and p < n - 1:
        a = by_degree[p]
        q = p + 1
        while q < n and len(steps) < k:
            z = by_degree[q]
            q += 1
            if work.has_edge(a, z):
                continue
            sz = work.neighbors(z)
            if not sz:
                continue
            y = min(sz, key=minkey)
            pool = work.neighbors(a) - work.neighbors(y) - {y}
            if not pool:
                continue
            b = min(pool, key=minkey)
            if deg[z] > deg[y] and deg[z] > deg[b]:
                value = deg[a] * deg[z] + deg[b] * deg[y] - (deg[a] * deg[b] + deg[z] * deg[y])
                cand = make_candidate(((a, b), (z, y)), ((a, z), (b, y)), value)
                _apply_inplace(work, cand)
                steps.append(cand)
        p += 1
    return _finish(g, work, steps, truncated=False)


class _EdgePool:
    """Live edge list with O(1) removal and deterministic indexed sampling."""

    def __init__(self, edges: list[Edge], weight: Callable[[Edge], int]):
        self.items = list(edges)
        self.index = {e: i for i, e in enumerate(self.items)}
        self.weight_of = weight
        self.weights = [weight(e) for e in self.items]

    def __len__(self) -> int:
        return len(self.items)

    def total_weight(self) -> int:
        return sum(self.weights)

    def remove(self, e: Edge) -> None:
        i = self.index.pop(e)
        last = self.items.pop()
        w = self.weights.pop()
        if i < len(self.items):
            self.items[i] = last
            self.weights[i] = w
            self.index[last] = i

    def add(self, e: Edge) -> None:
        self.index[e] = len(self.items)
        self.items.append(e)
        self.weights.append(self.weight_of(e))

    def sample_two_weighted(self, rng: random.Random) -> tuple[Edge, Edge] | None:
        if len(self.items) < 2:
            return None
        first = rng.choices(range(len(self.items)), weights=self.weights)[0]
        masked = list(self.weights)
        masked[first] = 0
        if not any(masked):
            return None
        second = rng.choices(range(len(self.items)), weights=masked)[0]
        return self.items[first], self.items[second]

    def sample_two_uniform(self, rng: random.Random) -> tuple[Edge, Edge]:
        i, j = rng.sample(range(len(self.items)), 2)
        return self.items[i], self.items[j]


def _retry_limit(cfg: StrategyConfig, k: int) -> int:
    return cfg.retry_limit if cfg.retry_limit is not None else 50 * max(k, 1)


def run_pea(g: Graph, cfg: StrategyConfig) -> RewirePlan:
    """Probabilistic EDA: edges sampled with weight equal to their
    endpoint-degree difference, then rewired high-high/low-low."""
    k = resolve_budget(cfg.budget, len(g.edges))
    work = g.copy()
    deg = degree_sequence(g)
    rng = random.Random(cfg.seed)
    pool = _EdgePool(
        [e for e in sorted(g.edges) if deg[e[0]] != deg[e[1]]],
        weight=lambda e: abs(deg[e[0]] - deg[e[1]]),
    )
    if len(pool) == 0:
        raise DegenerateWeightsError("every edge has equal endpoint degrees")
    limit = _retry_limit(cfg, k)
    steps: list[RewireCandidate] = []
    failures = 0
    truncated = False
    while len(steps) < k:
        if len(pool) < 2:
            truncated = True
            break
        if failures >= limit:
            truncated = True
            break
        pair = pool.sample_two_weighted(rng)
        if pair is None:
            truncated = True
            break
        e1, e2 = pair
        cand = _pairing_step(work, deg, e1, e2)
        if cand is None:
            failures += 1
            continue
        _apply_inplace(work, cand)
        pool.remove(e1)
        pool.remove(e2)
        for e in cand.created_edges():
            if deg[e[0]] != deg[e[1]]:
                pool.add(e)
        steps.append(cand)
        failures = 0
    return _finish(g, work, steps, truncated=truncated or len(steps) < k)


def run_ra(g: Graph, cfg: StrategyConfig) -> RewirePlan:
    """Baseline: uniform node-disjoint edge pairs, rewired high-high/low-low."""
    k = resolve_budget(cfg.budget, len(g.edges))
    work = g.copy()
    deg = degree_sequence(g)
    rng = random.Random(cfg.seed)
    pool = _EdgePool(sorted(g.edges), weight=lambda e: 1)
    limit = _retry_limit(cfg, k)
    steps: list[RewireCandidate] = []
    failures = 0
    truncated = False
    while len(steps) < k:
        if len(pool) < 2 or failures >= limit:
            truncated = True
            break
        e1, e2 = pool.sample_two_uniform(rng)
        cand = _pairing_step(work, deg, e1, e2)
        if cand is None:
            failures += 1
            continue
        _apply_inplace(work, cand)
        pool.remove(e1)
        pool.remove(e2)
        for e in cand.created_edges():
            pool.add(e)
        steps.append(cand)
        failures = 0
    return _finish(g, work, steps, truncated=truncated or len(steps) < k)


def run_pa(g: Graph, cfg: StrategyConfig) -> RewirePlan:
    """Baseline: degree-weighted node sampling.

    Picks nodes i and k with degree-proportional probability, uniform random
    neighbors j and l, and rewires (i,j),(k,l) to (i,k),(j,l) when the four
    nodes are distinct and the created edges are absent.
    """
    k_budget = resolve_budget(cfg.budget, len(g.edges))
    work = g.copy()
    deg = degree_sequence(g)
    rng = random.Random(cfg.seed)
    nodes = list(range(g.node_count))
    cum = []
    acc = 0
    for v in nodes:
        acc += deg[v]
        cum.append(acc)
    if acc == 0:
        return _finish(g, work, [], truncated=k_budget > 0)
    limit = _retry_limit(cfg, k_budget)
    steps: list[RewireCandidate] = []
    failures = 0
    truncated = False
    while len(steps) < k_budget:
        if failures >= limit:
            truncated = True
            break
        i = rng.choices(nodes, cum_weights=cum)[0]
        k = rng.choices(nodes, cum_weights=cum)[0]
        if i == k:
            failures += 1
            continue
        j = rng.choice(sorted(work.neighbors(i)))
        l = rng.choice(sorted(work.neighbors(k)))
        if len({i, j, k, l}) != 4:
            failures += 1
            continue
        if work.has_edge(i, k) or work.has_edge(j, l):
            failures += 1
            continue
        value = deg[i] * deg[k] + deg[j] * deg[l] - (deg[i] * deg[j] + deg[k] * deg[l])
        cand = make_candidate(((i, j), (k, l)), ((i, k), (j, l)), value)
        _apply_inplace(work, cand)
        steps.append(cand)
        failures = 0
    return _finish(g, work, steps, truncated=truncated or len(steps) < k_budget)


STRATEGIES: dict[str, Callable[[Graph, StrategyConfig], RewirePlan]] = {
    "ga": run_ga,
    "eda": run_eda,
    "ta": run_ta,
    "pea": run_pea,
    "ra": run_ra,
    "pa": run_pa,
}


def run_strategy(name: str, g: Graph, cfg: StrategyConfig) -> RewirePlan:
    try:
        fn = STRATEGIES[name]
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}; choose from {sorted(STRATEGIES)}") from None
    return fn(g, cfg)


_PLAN_HEADER = ["step", "source_a", "source_b", "created_a", "created_b", "value", "cumulative_r"]


def _fmt_edge(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


def _parse_edge(s: str) -> Edge:
    u, v = s.split("-")
    return (int(u), int(v))


def write_plan_csv(original: Graph, plan: RewirePlan, stream: IO[str]) -> None:
    """Serialize a plan: one row per step with the running assortativity."""
    w = csv.writer(stream)
    w.writerow(_PLAN_HEADER)
    work = original.copy()
    for idx, c in enumerate(plan.steps):
        _apply_inplace(work, c)
        try:
            cum_r = repr(assortativity(work))
        except UndefinedMetricError:
            cum_r = ""
        w.writerow(
            [idx, _fmt_edge(c.source_a), _fmt_edge(c.source_b),
             _fmt_edge(c.created_a), _fmt_edge(c.created_b), c.value, cum_r]
        )


def load_plan_csv(stream: IO[str]) -> list[RewireCandidate]:
    """Read back a plan serialized by write_plan_csv."""
    reader = csv.reader(stream)
    header = next(reader)
    if header != _PLAN_HEADER:
        raise ValueError(f"unexpected plan header {header!r}")
    steps = []
    for row in reader:
        steps.append(
            RewireCandidate(
                _parse_edge(row[1]), _parse_edge(row[2]),
                _parse_edge(row[3]), _parse_edge(row[4]), int(row[5]),
            )
        )
    return steps


def replay_plan(original: Graph, steps: list[RewireCandidate]) -> Graph:
    """Apply serialized steps in order, validating each against the graph."""
    g = original
    for c in steps:
        g = apply_rewiring(g, c)
    return g
