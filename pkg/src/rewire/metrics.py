"""Degree-correlation measures and the per-rewiring value function.

The assortativity coefficient is the Pearson correlation of endpoint degrees
over the edge list, with each edge contributing both endpoint orderings. All
edge sums are accumulated in exact integer arithmetic and converted to float
only at the final division, so results are bit-reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import InvalidPairError, UndefinedMetricError
from .graph import Edge, Graph, degree_sequence

Orientation = Literal["cross", "parallel"]


@dataclass
class CorrelationReport:
    assortativity: float
    s_metric: int
    spearman_degree: float
    denom: float


def _edge_sums(g: Graph) -> tuple[int, int, int]:
    # (sum d_u*d_v, sum d_u+d_v, sum d_u^2+d_v^2) over edges, exact integers
    deg = degree_sequence(g)
    a = b = c = 0
    for u, v in g.edges:
        du, dv = deg[u], deg[v]
        a += du * dv
        b += du + dv
        c += du * du + dv * dv
    return a, b, c


def s_metric(g: Graph) -> int:
    """Sum over edges of the product of endpoint degrees."""
    return _edge_sums(g)[0]


def assortativity(g: Graph) -> float:
    """Pearson degree correlation over edges, in [-1, 1].

    Raises UndefinedMetricError when the variance term vanishes (every edge
    endpoint has the same degree, e.g. regular graphs).
    """
    m = len(g.edges)
    if m == 0:
        raise UndefinedMetricError("assortativity undefined: graph has no edges")
    a, b, c = _edge_sums(g)
    den = 2 * m * c - b * b
    if den == 0:
        raise UndefinedMetricError("assortativity undefined: all endpoint degrees identical")
    return (4 * m * a - b * b) / den


def assortativity_denominator(g: Graph) -> float:
    """The variance denominator of the assortativity formula.

    Depends only on the degree sequence, hence invariant under rewiring;
    retained so a plan's assortativity change can be predicted from its
    s-metric change.
    """
    m = len(g.edges)
    if m == 0:
        raise UndefinedMetricError("denominator undefined: graph has no edges")
    _, b, c = _edge_sums(g)
    den = 2 * m * c - b * b
    if den == 0:
        raise UndefinedMetricError("denominator is zero: all endpoint degrees identical")
    return den / (4 * m * m)


def candidate_value(g: Graph, e1: Edge, e2: Edge, orientation: Orientation) -> int:
    """Exact s-metric change from rewiring edge pair (e1, e2).

    For e1=(i,j), e2=(k,l): "cross" creates (i,k),(j,l); "parallel" creates
    (i,l),(j,k). Pure function of the four endpoint degrees.
    """
    i, j = e1
    k, l = e2
    if len({i, j, k, l}) != 4:
        raise InvalidPairError(f"edges {e1} and {e2} share an endpoint")
    di, dj, dk, dl = g.degree(i), g.degree(j), g.degree(k), g.degree(l)
    old = di * dj + dk * dl
    if orientation == "cross":
        return di * dk + dj * dl - old
    if orientation == "parallel":
        return di * dl + dj * dk - old
    raise ValueError(f"unknown orientation {orientation!r}")


def _average_ranks(a: np.ndarray) -> np.ndarray:
    # fractional ranks, ties averaged over their rank block
    _, inverse, counts = np.unique(a, return_inverse=True, return_counts=True)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    return (starts + (counts + 1) / 2.0)[inverse]


def spearman_rank_corr(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation with average ranks for ties."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size == 0:
        raise ValueError("inputs must be equal-length nonempty 1-d sequences")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise UndefinedMetricError("rank correlation undefined on a constant list")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    return float(np.dot(dx, dy) / np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))


def spearman_degree_correlation(g: Graph) -> float:
    """Rank-based analogue of assortativity over the 2M endpoint-degree pairs."""
    if not g.edges:
        raise UndefinedMetricError("degree rank correlation undefined: graph has no edges")
    e = np.asarray(sorted(g.edges), dtype=np.int64)
    deg = np.asarray(degree_sequence(g), dtype=np.int64)
    xs = np.concatenate([deg[e[:, 0]], deg[e[:, 1]]])
    ys = np.concatenate([deg[e[:, 1]], deg[e[:, 0]]])
    return spearman_rank_corr(xs, ys)


def correlation_report(g: Graph) -> CorrelationReport:
    return CorrelationReport(
        assortativity=assortativity(g),
        s_metric=s_metric(g),
        spearman_degree=spearman_degree_correlation(g),
        denom=assortativity_denominator(g),
    )
