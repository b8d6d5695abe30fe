"""Optimal budgeted rewiring via branch-and-bound over the conflict graph.

The integer program -- pick at most k candidates maximizing total value, with
each original edge rewired at most once and each new edge created at most
once -- is a max-weight independent-set search on the candidate conflict
graph. Candidates are branched in descending value order with the GA choice
explored first, so the greedy solution seeds the incumbent, and the search is
pruned with the sum of the top remaining values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .candidates import build_conflict_graph, enumerate_ep
from .errors import UndefinedRatioError
from .graph import Graph, _apply_inplace
from .strategies import RewirePlan, _finish

DEFAULT_NODE_BUDGET = 10_000_000


@dataclass
class ExactSolution:
    plan: RewirePlan
    optimal_delta_s: int
    explored_nodes: int
    proven_optimal: bool


def solve_exact(g: Graph, k: int, node_budget: int = DEFAULT_NODE_BUDGET) -> ExactSolution:
    """Best admissible plan of size <= k, proven optimal unless the search
    node budget fires first (then the best incumbent is returned)."""
    if k < 0:
        raise ValueError("budget must be nonnegative")
    ep = enumerate_ep(g)
    cg = build_conflict_graph(ep)
    n = len(ep)
    values = [c.value for c in ep]
    prefix = [0] * (n + 1)
    for i, v in enumerate(values):
        prefix[i + 1] = prefix[i] + v

    # relaxation groups: a feasible plan never repeats a created_a edge, so
    # counting at most one candidate per group is a valid upper bound and is
    # much tighter than the raw value sum on hub-heavy graphs where hundreds
    # of candidates create the same edge
    group_ids: dict = {}
    rep = [group_ids.setdefault(c.created_a, len(group_ids)) for c in ep]
    stamp = [0] * len(group_ids)
    stamp_tick = 0

    nbytes = (n + 7) // 8 if n else 1
    best_value = 0
    best_sel: tuple[int, ...] = ()
    explored = 0
    proven = True
    # stack holds (next index, chosen count, value so far, blocked bitmask,
    # chosen indices); include-branch is pushed last so it pops first
    stack: list[tuple[int, int, int, int, tuple[int, ...]]] = [(0, 0, 0, 0, ())]
    if k == 0 or n == 0:
        stack = []
    while stack:
        explored += 1
        if explored > node_budget:
            proven = False
            break
        idx, count, value, blocked, chosen = stack.pop()
        if value > best_value:
            best_value = value
            best_sel = chosen
        if count == k:
            continue
        bb = blocked.to_bytes(nbytes, "little")
        while idx < n and (bb[idx >> 3] >> (idx & 7)) & 1:
            idx += 1
        if idx == n:
            continue
        take = k - count
        if value + prefix[min(idx + take, n)] - prefix[idx] <= best_value:
            continue
        # group bound, abandoned as soon as it can no longer prune
        stamp_tick += 1
        bound = value
        counted = 0
        j = idx
        while j < n and counted < take and bound <= best_value:
            if not (bb[j >> 3] >> (j & 7)) & 1 and stamp[rep[j]] != stamp_tick:
                stamp[rep[j]] = stamp_tick
                bound += values[j]
                counted += 1
            j += 1
        if bound <= best_value:
            continue
        stack.append((idx + 1, count, value, blocked, chosen))
        stack.append((idx + 1, count + 1, value + values[idx], blocked | cg.masks[idx], chosen + (idx,)))

    steps = [ep[i] for i in best_sel]
    work = g.copy()
    for c in steps:
        _apply_inplace(work, c)
    plan = _finish(g, work, steps, truncated=False)
    return ExactSolution(plan, best_value, explored, proven)


def approximation_ratio(
    g: Graph,
    k: int,
    plan: RewirePlan,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> float:
    """plan's delta-s over the proven optimum, in [0, 1]."""
    sol = solve_exact(g, k, node_budget)
    if not sol.proven_optimal:
        raise UndefinedRatioError("exact search did not prove optimality")
    if sol.optimal_delta_s == 0:
        raise UndefinedRatioError("optimal delta-s is zero; ratio undefined")
    return plan.delta_s / sol.optimal_delta_s
