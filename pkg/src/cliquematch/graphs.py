"""Random graph generators: Erdos-Renyi and k-NN thinned by Bernoulli(p)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Frame


@dataclass(frozen=True)
class GraphParams:
    p: float
    k_nn: int | None
    seed: int


@dataclass(frozen=True)
class RandomGraph:
    """Simple undirected graph on vertices 0..n-1 with generation parameters."""

    n: int
    edges: tuple[tuple[int, int], ...]  # lexicographically sorted, u < v
    params: GraphParams

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def neighbor_sets(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a


def _pair_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Upper-triangle pair arrays in lexicographic order."""
    iu, ju = np.triu_indices(n, k=1)
    return iu, ju


def erdos_renyi(n: int, p: float, seed: int) -> RandomGraph:
    """G(n, p): each of the C(n,2) pairs kept independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    iu, ju = _pair_index(n)
    keep = rng.random(iu.size) < p
    edges = tuple((int(u), int(v)) for u, v in zip(iu[keep], ju[keep]))
    return RandomGraph(n, edges, GraphParams(p=p, k_nn=None, seed=seed))


def symmetric_knn_candidates(frame: Frame, k_nn: int) -> tuple[tuple[int, int], ...]:
    """Undirected k-NN candidate edges under the union rule.

    An edge {u, v} is a candidate if either endpoint lists the other among its
    k_nn nearest by Euclidean distance; ties broken by lower point id.
    """
    n = len(frame)
    if not 1 <= k_nn < n:
        raise ValueError(f"k_nn must be in [1, {n - 1}], got {k_nn}")
    xy = frame.xy
    diff = xy[:, None, :] - xy[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    ids = np.asarray(frame.point_ids)
    cand: set[tuple[int, int]] = set()
    for u in range(n):
        order = sorted((d2[u, v], ids[v], v) for v in range(n) if v != u)
        for _, _, v in order[:k_nn]:
            cand.add((min(u, v), max(u, v)))
    return tuple(sorted(cand))


def knn_bernoulli_graph(frame: Frame, k_nn: int, p: float, seed: int) -> RandomGraph:
    """Symmetric k-NN candidate set thinned by independent Bernoulli(p)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    cand = symmetric_knn_candidates(frame, k_nn)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    keep = rng.random(len(cand)) < p
    edges = tuple(e for e, k in zip(cand, keep) if k)
    return RandomGraph(len(frame), edges, GraphParams(p=p, k_nn=k_nn, seed=seed))


def dump_edges(g: RandomGraph) -> str:
    """Edge-list text dump, one sorted ``u v`` pair per line."""
    return "".join(f"{u} {v}\n" for u, v in g.edges)
