"""Enumeration of the rewirable-pair set EP and pairwise admissibility.

EP is evaluated once against the original graph: every unordered pair of
node-disjoint edges, in each orientation whose created edges are absent and
whose value is strictly positive. Two candidates conflict when they share a
source edge (each edge rewires at most once) or a created edge (a simple
graph cannot gain the same edge twice).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Edge, Graph, degree_sequence, edge as canonical_edge


@dataclass(frozen=True)
class RewireCandidate:
    """One oriented rewiring of an edge pair, with its exact s-metric change."""

    source_a: Edge
    source_b: Edge
    created_a: Edge
    created_b: Edge
    value: int

    @property
    def key(self) -> tuple[Edge, Edge, Edge, Edge]:
        """Canonical identity used for deterministic tie-breaking."""
        return (self.source_a, self.source_b, self.created_a, self.created_b)

    def source_edges(self) -> tuple[Edge, Edge]:
        return (self.source_a, self.source_b)

    def created_edges(self) -> tuple[Edge, Edge]:
        return (self.created_a, self.created_b)

    def endpoints(self) -> set[int]:
        return {*self.source_a, *self.source_b}

    def inverse(self) -> "RewireCandidate":
        """The rewiring that undoes this one (value negated)."""
        return make_candidate(self.created_edges(), self.source_edges(), -self.value)


def make_candidate(
    sources: tuple[tuple[int, int], tuple[int, int]],
    created: tuple[tuple[int, int], tuple[int, int]],
    value: int,
) -> RewireCandidate:
    """Build a candidate with canonically ordered edges and edge pairs."""
    sa, sb = sorted(canonical_edge(*e) for e in sources)
    ca, cb = sorted(canonical_edge(*e) for e in created)
    return RewireCandidate(sa, sb, ca, cb, value)


def enumerate_ep(g: Graph) -> list[RewireCandidate]:
    """All positive-value applicable candidates, value-descending.

    Ordering is total and deterministic: value descending, then canonical
    candidate key ascending.
    """
    edges = sorted(g.edges)
    m = len(edges)
    if m < 2:
        return []
    e = np.asarray(edges, dtype=np.int64)
    deg = np.asarray(degree_sequence(g), dtype=np.int64)
    ii, jj = e[:, 0], e[:, 1]
    di, dj = deg[ii], deg[jj]
    prod = di * dj
    present = g.edges
    out: list[RewireCandidate] = []
    for a in range(m - 1):
        i, j = int(ii[a]), int(jj[a])
        da, db = int(di[a]), int(dj[a])
        ks, ls = ii[a + 1 :], jj[a + 1 :]
        dk, dl = di[a + 1 :], dj[a + 1 :]
        disjoint = (ks != i) & (ks != j) & (ls != i) & (ls != j)
        removed = da * db + prod[a + 1 :]
        v_cross = da * dk + db * dl - removed
        v_par = da * dl + db * dk - removed
        for b in np.nonzero(disjoint & (v_cross > 0))[0]:
            k, l = int(ks[b]), int(ls[b])
            ca = canonical_edge(i, k)
            cb = canonical_edge(j, l)
            if ca not in present and cb not in present:
                out.append(make_candidate((edges[a], edges[a + 1 + b]), (ca, cb), int(v_cross[b])))
        for b in np.nonzero(disjoint & (v_par > 0))[0]:
            k, l = int(ks[b]), int(ls[b])
            ca = canonical_edge(i, l)
            cb = canonical_edge(j, k)
            if ca not in present and cb not in present:
                out.append(make_candidate((edges[a], edges[a + 1 + b]), (ca, cb), int(v_par[b])))
    out.sort(key=lambda c: (-c.value, c.key))
    return out


def conflicts(c1: RewireCandidate, c2: RewireCandidate) -> bool:
    """True iff the candidates share a source edge or a created edge."""
    if c1.source_a in (c2.source_a, c2.source_b) or c1.source_b in (c2.source_a, c2.source_b):
        return True
    return c1.created_a in (c2.created_a, c2.created_b) or c1.created_b in (c2.created_a, c2.created_b)


def admissible(plan: list[RewireCandidate]) -> bool:
    """True iff no two plan members conflict."""
    sources: set[Edge] = set()
    created: set[Edge] = set()
    for c in plan:
        if c.source_a in sources or c.source_b in sources:
            return False
        if c.created_a in created or c.created_b in created:
            return False
        sources.update(c.source_edges())
        created.update(c.created_edges())
    return True


@dataclass
class ConflictGraph:
    """Candidates plus their symmetric conflict relation as per-index bitmasks."""

    candidates: list[RewireCandidate]
    masks: list[int]

    def conflict(self, i: int, j: int) -> bool:
        return i != j and bool((self.masks[i] >> j) & 1)


def build_conflict_graph(candidates: list[RewireCandidate]) -> ConflictGraph:
    masks = [0] * len(candidates)
    by_edge: dict[tuple[str, Edge], list[int]] = {}
    for idx, c in enumerate(candidates):
        by_edge.setdefault(("s", c.source_a), []).append(idx)
        by_edge.setdefault(("s", c.source_b), []).append(idx)
        by_edge.setdefault(("c", c.created_a), []).append(idx)
        by_edge.setdefault(("c", c.created_b), []).append(idx)
    for group in by_edge.values():
        if len(group) < 2:
            continue
        gmask = 0
        for idx in group:
            gmask |= 1 << idx
        for idx in group:
            masks[idx] |= gmask
    for idx in range(len(candidates)):
        masks[idx] &= ~(1 << idx)
    return ConflictGraph(candidates, masks)
