"""Vertices, skeleton and grid embedding of zonotopes.

The vertices of the zonotope generated by g_1..g_m correspond one-to-one
to the regions of the central hyperplane arrangement {h : h.g_i = 0}:
the region containing h gives the vertex sum_i sign(h.g_i) g_i.  Regions
are enumerated exactly by adding hyperplanes one at a time.  When
hyperplane H_t is added, the regions it cuts are exactly the regions of
the restricted arrangement {H_j cap H_t : j < t}, which is computed
recursively one dimension lower.  Every region carries an integer
witness h, so no linear programming and no floating point is involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import kernels
from .generators import GeneratorSet, enumerate_generators
from .hull import hull_vertices
from .numeric import (
    INF,
    IntVec,
    ResourceLimitError,
    check_bound,
    checked_matmul,
    first_nonzero_sign,
    primitive_rows,
)

DEFAULT_VERTEX_CAP = 2_500_000
BRUTE_FORCE_MAX_GENERATORS = 16


# ------------------------------------------------------------ arrangements

def _perp_basis(a: np.ndarray) -> np.ndarray:
    """Integer basis (rows) of the hyperplane a^perp."""
    k = len(a)
    nz = np.flatnonzero(a)
    t = nz[np.argmin(np.abs(a[nz]))]
    B = np.zeros((k - 1, k), dtype=np.int64)
    for row, i in enumerate(i for i in range(k) if i != t):
        B[row, i] = a[t]
        B[row, t] = -a[i]
    return primitive_rows(B)


def _angle_cmp(u, v) -> int:
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1
    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    cross = int(u[0]) * int(v[1]) - int(u[1]) * int(v[0])
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _regions_2d(A: np.ndarray) -> tuple:
    if len(A) == 1:
        W = np.vstack([A[0], -A[0]])
    else:
        rays = np.concatenate([np.column_stack([-A[:, 1], A[:, 0]]),
                               np.column_stack([A[:, 1], -A[:, 0]])])
        rays = rays[np.argsort(np.arctan2(rays[:, 1], rays[:, 0]), kind="stable")]
        nxt = np.roll(rays, -1, axis=0)
        cross = rays[:, 0] * nxt[:, 1] - rays[:, 1] * nxt[:, 0]
        if not (cross > 0).all():
            rays = np.array(sorted(rays.tolist(), key=cmp_to_key(_angle_cmp)), dtype=np.int64)
            nxt = np.roll(rays, -1, axis=0)
        W = primitive_rows(rays + nxt)
    S = np.sign(checked_matmul(W, A.T, "witness products")).astype(np.int8)
    return S, W


def arrangement_regions(A: np.ndarray, cap: int = DEFAULT_VERTEX_CAP) -> tuple:
    """Regions of the central arrangement with normals ``A`` (n x k).

    Rows of ``A`` must be nonzero and pairwise non-parallel.  Returns
    ``(signs, witnesses)``: an int8 (R x n) matrix of region sign vectors
    and an int64 (R x k) matrix of integer points, one inside each region,
    with ``sign(witnesses @ A.T) == signs`` and no zero products.
    """
    A = np.asarray(A, dtype=np.int64)
    n, k = A.shape
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8), np.zeros((1, k), dtype=np.int64)
    if k == 1:
        W = np.array([[1], [-1]], dtype=np.int64)
        return np.sign(W @ A.T).astype(np.int8), W
    if k == 2:
        return _regions_2d(A)

    keys = kernels.hash_keys(n)
    S = np.array([[1], [-1]], dtype=np.int8)
    wit = np.vstack([A[0], -A[0]])
    H = np.array([keys[0], 0], dtype=np.uint64)
    for t in range(1, n):
        a = A[t]
        prev = A[:t]
        B = _perp_basis(a)
        P = primitive_rows(checked_matmul(prev, B.T, "restricted normals"))
        P *= first_nonzero_sign(P)[:, None]
        sub_normals = np.unique(P, axis=0)
        _, sub_wit = arrangement_regions(sub_normals, cap)
        lifted = checked_matmul(sub_wit, B, "lifted witnesses")
        L = np.sign(checked_matmul(lifted, prev.T, "witness products")).astype(np.int8)
        idx = kernels.match_rows(S, H, L, kernels.row_hash(L, keys))
        if (idx < 0).any():
            raise AssertionError("restricted region without a parent region")
        if len(S) + len(idx) > cap:
            raise ResourceLimitError(f"more than {cap} regions (vertex cap)")

        cut = np.zeros(len(S), dtype=bool)
        cut[idx] = True
        keep = ~cut
        side = np.sign(wit[keep] @ a).astype(np.int8)
        if (side == 0).any():
            raise AssertionError("uncut region touches the new hyperplane")

        scale = int(np.abs(prev @ a).max()) + 1
        check_bound(float(np.abs(lifted).max()) * scale + float(np.abs(a).max()), "witness")
        up = primitive_rows(scale * lifted + a)
        down = primitive_rows(scale * lifted - a)

        nk, nc = int(keep.sum()), len(idx)
        S_new = np.empty((nk + 2 * nc, t + 1), dtype=np.int8)
        S_new[:nk, :t] = S[keep]
        S_new[:nk, t] = side
        S_new[nk:nk + nc, :t] = S[idx]
        S_new[nk + nc:, :t] = S_new[nk:nk + nc, :t]
        S_new[nk:nk + nc, t] = 1
        S_new[nk + nc:, t] = -1
        S = S_new
        del S_new
        Hk = H[keep] ^ np.where(side > 0, keys[t], np.uint64(0))
        H = np.concatenate([Hk, H[idx] ^ keys[t], H[idx]])
        wit = np.concatenate([wit[keep], up, down])
    return S, wit


# ------------------------------------------------------------ vertex records

@dataclass(frozen=True)
class VertexRecord:
    """One vertex: its sign vector, Z-form and H-form points and an integer
    witness normal h with signs[i] * (h . g_i) >= 1 for every generator."""

    signs: tuple
    z_point: IntVec
    h_point: IntVec
    witness: IntVec


def _signed_sums(signs: np.ndarray, G: np.ndarray) -> np.ndarray:
    """``signs @ G`` in row blocks, so the int8 signs are never widened at once."""
    z = np.empty((len(signs), G.shape[1]), dtype=np.int64)
    step = max(1, 2_000_000 // max(G.shape[0], 1))
    for lo in range(0, len(signs), step):
        z[lo:lo + step] = checked_matmul(signs[lo:lo + step], G, "z points")
    return z


class VertexSet(Sequence):
    """All vertices of a zonotope, stored column-wise, sorted by z_point."""

    def __init__(self, generators: GeneratorSet, signs: np.ndarray, witnesses: np.ndarray):
        G = generators.vectors
        signs = np.asarray(signs, dtype=np.int8).reshape(-1, len(G))
        witnesses = np.asarray(witnesses, dtype=np.int64).reshape(-1, generators.d)
        z = _signed_sums(signs, G)
        order = np.lexsort(z.T[::-1])
        self.generators = generators
        self.signs = signs[order]
        self.witnesses = witnesses[order]
        self.z_points = z[order]
        self.h_points = (self.z_points + G.sum(axis=0)) // 2
        for arr in (self.signs, self.witnesses, self.z_points, self.h_points):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.signs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        return VertexRecord(tuple(int(x) for x in self.signs[i]),
                            tuple(int(x) for x in self.z_points[i]),
                            tuple(int(x) for x in self.h_points[i]),
                            tuple(int(x) for x in self.witnesses[i]))

    @property
    def translation(self) -> IntVec:
        return grid_size(self.generators)[1]

    @property
    def translated_h_points(self) -> np.ndarray:
        return self.h_points + np.asarray(self.translation)

    def z_set(self) -> set:
        return {tuple(int(x) for x in v) for v in self.z_points}

    def __eq__(self, other):
        return (isinstance(other, VertexSet) and self.generators == other.generators
                and np.array_equal(self.signs, other.signs)
                and np.array_equal(self.witnesses, other.witnesses))

    __hash__ = None


def _as_generator_set(G) -> GeneratorSet:
    if isinstance(G, GeneratorSet):
        return G
    return GeneratorSet.from_vectors(G)


def enumerate_vertices(G, cap: int = DEFAULT_VERTEX_CAP) -> VertexSet:
    """Every vertex of the zonotope of ``G`` with an integer witness normal."""
    G = _as_generator_set(G)
    if len(G) == 0:
        raise ValueError("empty generator set")
    signs, wit = arrangement_regions(G.vectors, cap)
    return VertexSet(G, signs, wit)


def count_vertices(G, cap: int = DEFAULT_VERTEX_CAP) -> int:
    G = _as_generator_set(G)
    return len(arrangement_regions(G.vectors, cap)[0])


def brute_force_vertices(G) -> list:
    """Test oracle: hull of all 2^m signed sums, certified exactly."""
    G = _as_generator_set(G)
    m = len(G)
    if m > BRUTE_FORCE_MAX_GENERATORS:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_MAX_GENERATORS} generators, got {m}")
    bits = (np.arange(2**m)[:, None] >> np.arange(m)[None, :]) & 1
    sums = (2 * bits - 1) @ G.vectors
    return [tuple(int(x) for x in v) for v in hull_vertices(sums)]


# ------------------------------------------------------------ skeleton

def skeleton_neighbors(vertices: VertexSet) -> np.ndarray:
    """(R x m) array: vertex reached by flipping sign j, or -1."""
    keys = kernels.hash_keys(vertices.signs.shape[1])
    H = kernels.row_hash(vertices.signs, keys)
    return kernels.flip_neighbors(vertices.signs, H, keys)


def skeleton_diameter(G=None, vertices: Optional[VertexSet] = None,
                      cap: int = DEFAULT_VERTEX_CAP) -> int:
    """Graph diameter of the vertex-edge graph, by BFS from every vertex."""
    if vertices is None:
        vertices = enumerate_vertices(G, cap)
    ecc = kernels.eccentricities(skeleton_neighbors(vertices))
    if (ecc < 0).any():
        raise AssertionError("zonotope skeleton is disconnected")
    return int(ecc.max())


def grid_size(G) -> tuple:
    """(k, translation): translation + H fits in [0,k]^d, touching both
    faces of the box along the widest axis."""
    G = _as_generator_set(G)
    V = G.vectors
    k = int(np.abs(V).sum(axis=0).max())
    translation = tuple(int(x) for x in np.maximum(-V, 0).sum(axis=0))
    return k, translation


def canonical_vertices(G=None, vertices: Optional[VertexSet] = None) -> list:
    """z_points with v_1 >= ... >= v_d > 0."""
    if vertices is None:
        vertices = enumerate_vertices(G)
    Z = vertices.z_points
    ok = (Z[:, -1] > 0) & (np.diff(Z, axis=1) <= 0).all(axis=1)
    return [tuple(int(x) for x in v) for v in Z[ok]]


def verify_refinement(H_records: Union[VertexSet, Iterable[VertexRecord]],
                      P_vertices: Iterable[Iterable[int]]) -> bool:
    """True iff every witness is maximized over ``P_vertices`` at one point."""
    if isinstance(H_records, VertexSet):
        W = np.asarray(H_records.witnesses)
    else:
        W = np.asarray([r.witness for r in H_records], dtype=np.int64)
    P = np.unique(np.asarray([tuple(v) for v in P_vertices], dtype=np.int64), axis=0)
    if W.size == 0 or P.size == 0:
        raise ValueError("verify_refinement needs nonempty inputs")
    if W.shape[1] != P.shape[1]:
        raise ValueError("dimension mismatch")
    vals = checked_matmul(W, P.T, "support values")
    best = vals.max(axis=1, keepdims=True)
    return bool(((vals == best).sum(axis=1) == 1).all())


def vertex_count(d: int, p: int, cap: int = DEFAULT_VERTEX_CAP) -> int:
    """m(d,p): number of vertices of H_inf(d,p)."""
    return count_vertices(enumerate_generators(d, p, INF, False), cap)


@dataclass(frozen=True)
class ZonotopeSummary:
    generator_set: GeneratorSet
    vertex_count: int
    diameter: Optional[int]
    grid_k: int
    translation: IntVec


DEFAULT_DIAMETER_CAP = 50_000


def summarize(G, vertices: Optional[VertexSet] = None, cap: int = DEFAULT_VERTEX_CAP,
              diameter_cap: int = DEFAULT_DIAMETER_CAP) -> ZonotopeSummary:
    """Vertex count, diameter (skipped above ``diameter_cap`` vertices) and grid."""
    G = _as_generator_set(G)
    if vertices is None:
        vertices = enumerate_vertices(G, cap)
    diam = skeleton_diameter(vertices=vertices) if len(vertices) <= diameter_cap else None
    k, tr = grid_size(G)
    return ZonotopeSummary(G, len(vertices), diam, k, tr)
