"""Adjacency-spectrum robustness measures and centrality-rank stability."""

from __future__ import annotations

import math
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ConvergenceError, UndefinedMetricError
from .graph import Graph, connected_components, degree_sequence
from .metrics import spearman_rank_corr

DENSE_LIMIT = 2000
_LARGE_N_WARN = 2000

CentralityKind = Literal["betweenness", "closeness", "eigenvector", "kshell"]
CENTRALITY_KINDS = ("betweenness", "closeness", "eigenvector", "kshell")


@dataclass
class SpectrumReport:
    spectral_radius: float
    natural_connectivity: float
    method: Literal["dense", "iterative"]
    residual: float


@dataclass
class CentralityVector:
    measure: str
    scores: np.ndarray
    component_restricted: bool = False


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.node_count, g.node_count), dtype=float)
    for u, v in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def _matvec_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    e = np.asarray(sorted(g.edges), dtype=np.int64)
    src = np.concatenate([e[:, 0], e[:, 1]])
    dst = np.concatenate([e[:, 1], e[:, 0]])
    return src, dst


def _power_iteration(
    g: Graph, tol: float, max_iter: int
) -> tuple[float, np.ndarray, float]:
    """Dominant adjacency eigenpair via shifted power iteration.

    Iterates A + I so bipartite spectra (where -lambda_1 ties lambda_1 in
    magnitude) still converge; the eigenvector is unchanged and the shift is
    subtracted from the Rayleigh quotient.
    """
    n = g.node_count
    src, dst = _matvec_arrays(g)
    x = np.full(n, 1.0 / math.sqrt(n))
    lam = 0.0
    residual = math.inf
    for _ in range(max_iter):
        ax = np.bincount(dst, weights=x[src], minlength=n)
        lam = float(np.dot(x, ax))
        residual = float(np.linalg.norm(ax - lam * x))
        if residual <= tol * max(1.0, abs(lam)):
            return lam, x, residual
        y = ax + x
        x = y / np.linalg.norm(y)
    raise ConvergenceError(
        f"power iteration did not reach tol={tol:g} in {max_iter} iterations", residual
    )


def _dense_eigenvalues(g: Graph) -> np.ndarray:
    if g.node_count > _LARGE_N_WARN:
        warnings.warn(
            f"dense eigendecomposition on n={g.node_count} nodes may take minutes",
            RuntimeWarning,
            stacklevel=3,
        )
    return np.linalg.eigvalsh(adjacency_matrix(g))


def spectral_radius(
    g: Graph,
    tol: float = 1e-10,
    method: Literal["auto", "dense", "iterative"] = "auto",
    max_iter: int = 200_000,
) -> float:
    """Largest adjacency eigenvalue within tol."""
    if g.node_count < 1:
        raise ValueError("spectral radius requires at least one node")
    if not g.edges:
        return 0.0
    if method == "auto":
        method = "dense" if g.node_count <= DENSE_LIMIT else "iterative"
    if method == "dense":
        return float(_dense_eigenvalues(g)[-1])
    lam, _, _ = _power_iteration(g, tol, max_iter)
    return lam


def _natural_connectivity_from(evals: np.ndarray) -> float:
    n = evals.size
    lam_max = float(evals[-1])
    nc = lam_max + math.log(float(np.mean(np.exp(evals - lam_max))))
    # log-mean-exp sandwich; violation would indicate a numeric fault
    if not (lam_max - math.log(n) - 1e-9 <= nc <= lam_max + 1e-9):
        raise ArithmeticError("natural connectivity violated its spectral bounds")
    return nc


def natural_connectivity(g: Graph) -> float:
    """log of the mean exponential of all adjacency eigenvalues,
    max-shifted for overflow safety."""
    if g.node_count < 1:
        raise ValueError("natural connectivity requires at least one node")
    if not g.edges:
        return 0.0
    return _natural_connectivity_from(_dense_eigenvalues(g))


def spectrum_report(
    g: Graph,
    tol: float = 1e-10,
    method: Literal["auto", "dense", "iterative"] = "auto",
) -> SpectrumReport:
    if g.node_count < 1:
        raise ValueError("spectrum report requires at least one node")
    if method == "auto":
        method = "dense" if g.node_count <= DENSE_LIMIT else "iterative"
    if not g.edges:
        return SpectrumReport(0.0, 0.0, method, 0.0)
    if method == "dense":
        evals = _dense_eigenvalues(g)
        return SpectrumReport(float(evals[-1]), _natural_connectivity_from(evals), "dense", 0.0)
    lam, _, residual = _power_iteration(g, tol, max_iter=200_000)
    return SpectrumReport(lam, natural_connectivity(g), "iterative", residual)


def _sorted_adjacency(g: Graph) -> list[list[int]]:
    return [sorted(s) for s in g.adjacency]


def _betweenness(g: Graph) -> np.ndarray:
    # Brandes accumulation over all sources; deterministic neighbor order
    n = g.node_count
    if n > _LARGE_N_WARN:
        warnings.warn(
            f"exact betweenness on n={n} nodes is O(n*m) and may take minutes",
            RuntimeWarning,
            stacklevel=3,
        )
    adj = _sorted_adjacency(g)
    bc = np.zeros(n)
    for s in range(n):
        stack: list[int] = []
        pred: list[list[int]] = [[] for _ in range(n)]
        sigma = np.zeros(n)
        sigma[s] = 1.0
        dist = np.full(n, -1)
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    pred[w].append(v)
        delta = np.zeros(n)
        while stack:
            w = stack.pop()
            for v in pred[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    if n > 2:
        bc /= (n - 1) * (n - 2)
    else:
        bc[:] = 0.0
    return bc


def _closeness(g: Graph) -> np.ndarray:
    # component-local closeness with the Wasserman-Faust size correction
    n = g.node_count
    adj = _sorted_adjacency(g)
    scores = np.zeros(n)
    for s in range(n):
        dist = np.full(n, -1)
        dist[s] = 0
        queue = deque([s])
        total = 0
        reached = 1
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    total += dist[w]
                    reached += 1
                    queue.append(w)
        if total > 0 and n > 1:
            scores[s] = (reached - 1) ** 2 / (total * (n - 1))
    return scores


def _eigenvector(g: Graph) -> tuple[np.ndarray, bool]:
    if not g.edges:
        raise UndefinedMetricError("eigenvector centrality undefined: graph has no edges")
    comps = connected_components(g)
    comp = comps[0]
    restricted = len(comp) < g.node_count
    index = {v: i for i, v in enumerate(comp)}
    nc = len(comp)
    scores = np.zeros(g.node_count)
    if nc <= DENSE_LIMIT:
        a = np.zeros((nc, nc))
        for u, v in g.edges:
            if u in index and v in index:
                a[index[u], index[v]] = 1.0
                a[index[v], index[u]] = 1.0
        _, vecs = np.linalg.eigh(a)
        vec = vecs[:, -1]
    else:
        sub = Graph(nc, [(index[u], index[v]) for u, v in g.edges if u in index and v in index])
        _, vec, _ = _power_iteration(sub, tol=1e-12, max_iter=200_000)
    if vec[int(np.argmax(np.abs(vec)))] < 0:
        vec = -vec
    vec = np.clip(vec, 0.0, None)
    vec /= np.linalg.norm(vec)
    for v, i in index.items():
        scores[v] = vec[i]
    return scores, restricted


def _core_numbers(g: Graph) -> np.ndarray:
    # iterative shell peeling in ascending-degree order
    n = g.node_count
    deg = degree_sequence(g)
    order = sorted(range(n), key=lambda v: deg[v])
    pos = {v: i for i, v in enumerate(order)}
    core = list(deg)
    removed = [False] * n
    for i in range(n):
        v = order[i]
        removed[v] = True
        for w in g.adjacency[v]:
            if not removed[w] and core[w] > core[v]:
                core[w] -= 1
                # keep the order array sorted by current core value
                j = pos[w]
                while j > i + 1 and core[order[j - 1]] > core[w]:
                    order[j], order[j - 1] = order[j - 1], order[j]
                    pos[order[j]] = j
                    j -= 1
                order[j] = w
                pos[w] = j
    return np.asarray(core, dtype=float)


def centrality(g: Graph, measure: CentralityKind) -> CentralityVector:
    """Per-node centrality scores.

    Eigenvector centrality on a disconnected graph is computed on the largest
    component with zeros elsewhere and the vector flagged as restricted.
    """
    if measure == "betweenness":
        return CentralityVector(measure, _betweenness(g))
    if measure == "closeness":
        return CentralityVector(measure, _closeness(g))
    if measure == "eigenvector":
        scores, restricted = _eigenvector(g)
        return CentralityVector(measure, scores, restricted)
    if measure == "kshell":
        return CentralityVector(measure, _core_numbers(g))
    raise ValueError(f"unknown centrality measure {measure!r}")


def centrality_sc(
    original: CentralityVector,
    rewired: CentralityVector,
    top_fraction: float = 1.0,
) -> float:
    """Spearman rank correlation between before/after centrality scores,
    restricted to the top ceil(fraction*n) nodes ranked by the original."""
    if original.measure != rewired.measure:
        raise ValueError("centrality vectors measure different quantities")
    n = original.scores.size
    if rewired.scores.size != n:
        raise ValueError("centrality vectors have different lengths")
    if not 0.0 < top_fraction <= 1.0:
        raise ValueError("top_fraction must lie in (0, 1]")
    take = math.ceil(top_fraction * n)
    ranked = sorted(range(n), key=lambda v: (-original.scores[v], v))
    sel = ranked[:take]
    return spearman_rank_corr(original.scores[sel], rewired.scores[sel])
