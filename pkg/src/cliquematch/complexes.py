"""Clique enumeration and sparse skeleton adjacency matrices.

Convention: a clique on k+1 vertices has dimension k, so dimension 0 holds
vertices, dimension 1 edges, dimension 2 triangles. Two dimension-k cliques
are adjacent in the (k, l) skeleton matrix when they share at least l
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
import scipy.sparse as sp

from .graphs import RandomGraph

DEFAULT_MAX_CLIQUES_PER_DIM = 200_000


class CliqueCapExceeded(RuntimeError):
    """Raised when a dimension would exceed the per-dimension clique cap."""


@dataclass(frozen=True)
class CliqueComplex:
    """All cliques of a graph up to dimension h, with face/coface indices.

    ``cliques[k]`` lists the dimension-k cliques as sorted vertex tuples in
    lexicographic order; a clique's id is its position in that list. ``faces``
    and ``cofaces`` link each clique to its codimension-1 neighbors by id.
    """

    n_vertices: int
    h: int
    cliques: tuple[tuple[tuple[int, ...], ...], ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]    # faces[k][i] = dim k-1 ids
    cofaces: tuple[tuple[tuple[int, ...], ...], ...]  # cofaces[k][i] = dim k+1 ids

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(cs) for cs in self.cliques)

    def clique(self, dim: int, cid: int) -> tuple[int, ...]:
        return self.cliques[dim][cid]

    def id_of(self, clique: tuple[int, ...]) -> tuple[int, int]:
        """(dim, id) of a clique given as a sorted vertex tuple."""
        dim = len(clique) - 1
        try:
            cid = self.cliques[dim].index(tuple(clique))
        except (ValueError, IndexError):
            raise KeyError(f"clique {clique} not in complex") from None
        return dim, cid


def enumerate_cliques(
    g: RandomGraph, h: int, max_per_dim: int = DEFAULT_MAX_CLIQUES_PER_DIM
) -> CliqueComplex:
    """List every clique of 1..h+1 vertices in lexicographic order.

    Incremental extension: each (k+1)-vertex clique is built from a k-vertex
    clique plus a common neighbor with a larger id, which yields the
    per-dimension lists already sorted.
    """
    if h < 0:
        raise ValueError("h must be >= 0")
    nbrs = [set() for _ in range(g.n)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)

    dims: list[list[tuple[int, ...]]] = [[(v,) for v in range(g.n)]]
    for k in range(1, h + 1):
        prev = dims[k - 1]
        cur: list[tuple[int, ...]] = []
        for cl in prev:
            common = nbrs[cl[0]]
            for w in cl[1:]:
                common = common & nbrs[w]
            last = cl[-1]
            for w in sorted(x for x in common if x > last):
                cur.append(cl + (w,))
                if len(cur) > max_per_dim:
                    raise CliqueCapExceeded(
                        f"more than {max_per_dim} cliques at dimension {k}; "
                        f"lower p / k_nn / h or raise the cap"
                    )
        if not cur:
            dims.extend([[]] * (h - k + 1))
            break
        dims.append(cur)

    index = [{cl: i for i, cl in enumerate(cs)} for cs in dims]
    cofaces_acc: list[list[list[int]]] = [[[] for _ in cs] for cs in dims]
    faces_out: list[tuple[tuple[int, ...], ...]] = [tuple(() for _ in dims[0])]
    for k in range(1, h + 1):
        fk = []
        for i, cl in enumerate(dims[k]):
            fs = []
            for drop in range(len(cl)):
                sub = cl[:drop] + cl[drop + 1:]
                j = index[k - 1][sub]
                fs.append(j)
                cofaces_acc[k - 1][j].append(i)
            fk.append(tuple(fs))
        faces_out.append(tuple(fk))
    cofaces_out = tuple(
        tuple(tuple(c) for c in cofaces_acc[k]) for k in range(h + 1)
    )
    return CliqueComplex(
        n_vertices=g.n,
        h=h,
        cliques=tuple(tuple(cs) for cs in dims),
        faces=tuple(faces_out),
        cofaces=cofaces_out,
    )


@dataclass(frozen=True)
class SkeletonMatrix:
    """Sparse symmetric 0/1 adjacency over the dimension-k cliques."""

    k: int
    l: int
    order: int
    adjacency: sp.csr_matrix

    @property
    def nnz(self) -> int:
        return int(self.adjacency.nnz)


def skeleton_adjacency(c: CliqueComplex, k: int, l: int) -> SkeletonMatrix:
    """0/1 matrix over dimension-k cliques, adjacent iff they share >= l vertices."""
    if not 1 <= l <= k:
        raise ValueError(f"need 1 <= l <= k, got l={l}, k={k}")
    if k > c.h:
        raise ValueError(f"dimension {k} not populated (h={c.h})")
    cliques = c.cliques[k]
    m = len(cliques)
    if m == 0:
        return SkeletonMatrix(k, l, 0, sp.csr_matrix((0, 0)))
    rows = []
    cols = []
    for i, cl in enumerate(cliques):
        for v in cl:
            rows.append(i)
            cols.append(v)
    incidence = sp.csr_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(m, c.n_vertices)
    )
    overlap = (incidence @ incidence.T).tocoo()
    mask = (overlap.data >= l) & (overlap.row != overlap.col)
    adj = sp.csr_matrix(
        (np.ones(mask.sum()), (overlap.row[mask], overlap.col[mask])), shape=(m, m)
    )
    return SkeletonMatrix(k, l, m, adj)


def nnz_estimate(n: int, p: float, k: int, l: int) -> float:
    """Expected count of clique relocations that move k+1-l of k+1 vertices.

    (C(k+1, l) - 1) * C(n, k+1-l) * p^(C(k+1, 2) - C(l, 2)); with l = k this
    specializes to k * n * p^k.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if not 1 <= l <= k:
        raise ValueError(f"need 1 <= l <= k, got l={l}, k={k}")
    if n < 1:
        raise ValueError("n must be >= 1")
    return (comb(k + 1, l) - 1) * comb(n, k + 1 - l) * p ** (comb(k + 1, 2) - comb(l, 2))


def dump_complex(c: CliqueComplex) -> str:
    """Debug dump: one line per clique, ``dim: v0 v1 ... vk``, lexicographic."""
    lines = []
    for k, cs in enumerate(c.cliques):
        for cl in cs:
            lines.append(f"{k}: " + " ".join(str(v) for v in cl))
    return "\n".join(lines) + ("\n" if lines else "")
