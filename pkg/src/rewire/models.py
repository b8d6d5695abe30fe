"""Seeded random graph generators for the solver-quality studies."""

from __future__ import annotations

import random

from .graph import Graph, edge as canonical_edge


def _rng(seed_or_rng: int | random.Random) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def er_graph(n: int, m: int, seed: int | random.Random = 0) -> Graph:
    """Uniform random graph with exactly n nodes and m distinct edges."""
    if n < 2 and m > 0:
        raise ValueError("need at least two nodes to place edges")
    if m > n * (n - 1) // 2:
        raise ValueError(f"m={m} exceeds the {n * (n - 1) // 2} possible edges")
    rng = _rng(seed)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.add(canonical_edge(u, v))
    return Graph(n, edges)


def ws_graph(
    n: int,
    ring_degree: int = 4,
    rewire_prob: float = 0.1,
    seed: int | random.Random = 0,
) -> Graph:
    """Watts-Strogatz ring lattice with random endpoint rewiring.

    Keeps exactly n * ring_degree / 2 edges; a rewire is skipped when the
    source node is already connected to everything else.
    """
    if ring_degree % 2 or ring_degree < 2:
        raise ValueError("ring_degree must be a positive even integer")
    if ring_degree >= n:
        raise ValueError("ring_degree must be smaller than n")
    rng = _rng(seed)
    g = Graph(n)
    for j in range(1, ring_degree // 2 + 1):
        for u in range(n):
            g._add_edge(canonical_edge(u, (u + j) % n))
    for j in range(1, ring_degree // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if rng.random() < rewire_prob:
                if g.degree(u) >= n - 1 or not g.has_edge(u, v):
                    continue
                w = rng.randrange(n)
                while w == u or g.has_edge(u, w):
                    w = rng.randrange(n)
                g._remove_edge(canonical_edge(u, v))
                g._add_edge(canonical_edge(u, w))
    return g


def ba_graph(n: int, attachment: int = 2, seed: int | random.Random = 0) -> Graph:
    """Preferential attachment: each arriving node links to `attachment`
    distinct existing nodes chosen proportionally to degree. Produces
    (n - attachment) * attachment edges."""
    if attachment < 1 or attachment >= n:
        raise ValueError("attachment must satisfy 1 <= attachment < n")
    rng = _rng(seed)
    g = Graph(n)
    repeated: list[int] = []
    targets = list(range(attachment))
    for source in range(attachment, n):
        for t in targets:
            g._add_edge(canonical_edge(source, t))
        repeated.extend(targets)
        repeated.extend([source] * attachment)
        chosen: set[int] = set()
        while len(chosen) < attachment:
            chosen.add(rng.choice(repeated))
        targets = sorted(chosen)
    return g
