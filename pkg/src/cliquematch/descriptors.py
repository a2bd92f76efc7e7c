"""Clique barycenters, neighborhoods, and affine weight vectors.

Each clique is described by the affine weights that reconstruct its
barycenter from the barycenters of its neighborhood. Affine combinations
commute with invertible affine maps, which is what makes the downstream
matching invariant to rotation, reflection, scaling, and shear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import CliqueComplex, skeleton_adjacency
from .geometry import Frame


@dataclass(frozen=True)
class CliqueDescriptor:
    dim: int
    clique_id: int
    barycenter: np.ndarray  # (2,)
    neighborhood: tuple[tuple[int, int], ...]  # (dim, id), dimension-major order
    weights: np.ndarray  # aligned with neighborhood; empty if undescribable
    residual: float

    @property
    def describable(self) -> bool:
        return len(self.neighborhood) > 0


def barycenter(clique: tuple[int, ...], frame: Frame) -> np.ndarray:
    """Unweighted mean of the clique's member coordinates."""
    n = len(frame)
    for v in clique:
        if not 0 <= v < n:
            raise KeyError(f"vertex {v} not in frame of size {n}")
    return frame.xy[list(clique)].mean(axis=0)


def _all_faces(c: CliqueComplex, dim: int, cid: int) -> set[tuple[int, int]]:
    """Every proper face (all dimensions down to vertices), as (dim, id)."""
    out: set[tuple[int, int]] = set()
    frontier = {(dim, cid)}
    while frontier:
        nxt: set[tuple[int, int]] = set()
        for d, i in frontier:
            if d == 0:
                continue
            for j in c.faces[d][i]:
                if (d - 1, j) not in out:
                    out.add((d - 1, j))
                    nxt.add((d - 1, j))
        frontier = nxt
    return out


def _all_cofaces(c: CliqueComplex, dim: int, cid: int) -> set[tuple[int, int]]:
    """Every clique strictly containing this one, up to dimension h."""
    out: set[tuple[int, int]] = set()
    frontier = {(dim, cid)}
    while frontier:
        nxt: set[tuple[int, int]] = set()
        for d, i in frontier:
            if d == c.h:
                continue
            for j in c.cofaces[d][i]:
                if (d + 1, j) not in out:
                    out.add((d + 1, j))
                    nxt.add((d + 1, j))
        frontier = nxt
    return out


def clique_neighborhood(
    c: CliqueComplex,
    dim: int,
    clique_id: int,
    l: int = 1,
    lateral: str = "all",
) -> tuple[tuple[int, int], ...]:
    """Neighborhood of a clique: faces, cofaces, and same-dimension peers.

    Same-dimension peers are cliques sharing >= min(l, dim) vertices (never
    fewer than one). ``lateral="all"`` applies that rule at every dimension;
    ``lateral="top"`` restricts it to the top dimension h, where no cofaces
    exist and lateral adjacency is the only connectivity. Result is
    deduplicated and ordered dimension-major, then by id.
    """
    if dim > c.h or clique_id >= len(c.cliques[dim]):
        raise KeyError(f"no clique ({dim}, {clique_id}) in complex")
    if lateral not in ("all", "top"):
        raise ValueError(f"lateral must be 'all' or 'top', got {lateral!r}")
    out = _all_faces(c, dim, clique_id) | _all_cofaces(c, dim, clique_id)
    if dim >= 1 and (lateral == "all" or dim == c.h):
        l_eff = max(1, min(l, dim))
        adj = skeleton_adjacency(c, dim, l_eff).adjacency
        row = adj.getrow(clique_id)
        for j in row.indices:
            out.add((dim, int(j)))
    out.discard((dim, clique_id))
    return tuple(sorted(out))


def affine_weights(
    center: np.ndarray, neighbor_barycenters: np.ndarray
) -> tuple[np.ndarray, float]:
    """Weights summing to 1 that best reconstruct ``center`` from neighbors.

    Minimizes the L2 reconstruction error subject to the affine constraint;
    among minimizers returns the one of minimum Euclidean norm (unique,
    continuous, permutation-equivariant). Returns (alpha, residual).
    """
    pts = np.atleast_2d(np.asarray(neighbor_barycenters, dtype=float))
    m = pts.shape[0]
    if m == 0:
        raise ValueError("need at least one neighbor")
    center = np.asarray(center, dtype=float).reshape(-1)
    if m == 1:
        return np.array([1.0]), float(np.linalg.norm(pts[0] - center))
    x = pts.T  # (2, m)
    alpha0 = np.full(m, 1.0 / m)
    # Orthonormal basis of the constraint plane's direction space {z: 1^T z = 0}.
    basis = _sum_zero_basis(m)
    rhs = center - x @ alpha0
    z = np.linalg.pinv(x @ basis, rcond=1e-12) @ rhs
    alpha = alpha0 + basis @ z
    residual = float(np.linalg.norm(x @ alpha - center))
    return alpha, residual


def _sum_zero_basis(m: int) -> np.ndarray:
    """Orthonormal (m, m-1) basis of the subspace orthogonal to the ones vector."""
    a = np.eye(m) - np.full((m, m), 1.0 / m)
    # Rank m-1 projector; take the m-1 left singular vectors with nonzero sv.
    u, s, _ = np.linalg.svd(a)
    return u[:, : m - 1]


def compute_descriptors(
    c: CliqueComplex, frame: Frame, l: int = 1, lateral: str = "all"
) -> list[list[CliqueDescriptor]]:
    """Descriptors for every clique, grouped per dimension."""
    barys = [
        np.array([barycenter(cl, frame) for cl in c.cliques[k]]).reshape(-1, 2)
        for k in range(c.h + 1)
    ]
    out: list[list[CliqueDescriptor]] = []
    for k in range(c.h + 1):
        row: list[CliqueDescriptor] = []
        for i in range(len(c.cliques[k])):
            nbh = clique_neighborhood(c, k, i, l=l, lateral=lateral)
            if not nbh:
                row.append(
                    CliqueDescriptor(k, i, barys[k][i], (), np.empty(0), float("nan"))
                )
                continue
            pts = np.array([barys[d][j] for d, j in nbh])
            alpha, res = affine_weights(barys[k][i], pts)
            row.append(CliqueDescriptor(k, i, barys[k][i], nbh, alpha, res))
        out.append(row)
    return out


def dump_descriptors(desc: list[list[CliqueDescriptor]]) -> str:
    """Debug CSV dump: ``dim,clique_id,cx,cy,residual,alpha...``."""
    lines = ["dim,clique_id,cx,cy,residual,alpha"]
    for per_dim in desc:
        for d in per_dim:
            alpha = " ".join(repr(float(a)) for a in d.weights)
            lines.append(
                f"{d.dim},{d.clique_id},{d.barycenter[0]!r},{d.barycenter[1]!r},"
                f"{d.residual!r},{alpha}"
            )
    return "\n".join(lines) + "\n"
