"""Exact vertex sets of integer point clouds.

qhull (floating point) proposes the extreme points, then every claim is
certified in exact integer arithmetic:

* a reported vertex v gets an integer h with h.v > h.y for every other y;
* every other point y gets a Delaunay simplex of reported vertices whose
  exact barycentric coordinates of y are all nonnegative.

A claim that fails certification raises ``HullCertificationError``; a
wrong answer is never returned.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull, Delaunay, QhullError

from .numeric import PrimzonoError, check_bound


class HullCertificationError(PrimzonoError):
    """Floating-point hull output could not be certified exactly."""


def _int_rank(rows) -> int:
    M = [[Fraction(int(x)) for x in r] for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _independent_columns(D: np.ndarray) -> list:
    """Greedy set of column indices spanning the column space of D."""
    cols: list = []
    for c in range(D.shape[1]):
        if _int_rank(D[:, cols + [c]]) > len(cols):
            cols.append(c)
    return cols


def _adjugate(M) -> tuple:
    """(det, adj) of a small square integer matrix, exact."""
    n = len(M)
    A = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0, None
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    adj = [[int(A[i][n + j] * det) for j in range(n)] for i in range(n)]
    return int(det), np.array(adj, dtype=np.int64)


def _separating_vector(Q: np.ndarray, i: int, hint: np.ndarray) -> np.ndarray | None:
    """Integer h with h.Q[i] > h.Q[j] for all j != i, from a float hint."""
    diff = Q[i] - np.delete(Q, i, axis=0)
    for scale in (1e3, 1e6, 1e9):
        h = np.rint(hint / np.abs(hint).max() * scale).astype(np.int64)
        if h.any() and ((diff @ h) > 0).all():
            return h
    return None


def _certify_vertices(Q: np.ndarray, cand: np.ndarray, hull: ConvexHull) -> None:
    eq = hull.equations[:, :-1]
    for i in cand:
        incident = np.flatnonzero((hull.simplices == i).any(axis=1))
        h = _separating_vector(Q, i, eq[incident].sum(axis=0))
        if h is None:
            # the mean normal can sit on a cone boundary; try single normals
            for f in incident:
                h = _separating_vector(Q, i, eq[f] + 1e-3 * eq[incident].mean(axis=0))
                if h is not None:
                    break
        if h is None:
            raise HullCertificationError(f"could not certify point {Q[i].tolist()} as a vertex")


def _certify_interior(Q: np.ndarray, V: np.ndarray, others: np.ndarray) -> None:
    if len(others) == 0:
        return
    r = Q.shape[1]
    try:
        tri = Delaunay(Q[V].astype(float))
    except QhullError as exc:
        raise HullCertificationError(f"Delaunay failed: {exc}") from exc
    simplex = tri.find_simplex(Q[others].astype(float), tol=1e-9)
    pending = list(range(len(others)))
    tried: dict = {}
    for idx in pending:
        y = Q[others[idx]]
        cand = [simplex[idx]] if simplex[idx] >= 0 else []
        cand += [s for s in range(len(tri.simplices)) if s not in cand]
        for s in cand:
            if s not in tried:
                M = np.vstack([Q[V][tri.simplices[s]].T, np.ones(r + 1, dtype=np.int64)])
                tried[s] = _adjugate(M.tolist())
            det, adj = tried[s]
            if det == 0:
                continue
            lam = adj @ np.append(y, 1)
            if (lam * np.sign(det) >= 0).all():
                break
        else:
            raise HullCertificationError(f"could not certify {y.tolist()} as a non-vertex")


def hull_vertices(points) -> np.ndarray:
    """Vertices of conv(points), unique, lexicographically sorted, exact."""
    P = np.unique(np.asarray(points, dtype=np.int64).reshape(len(points), -1), axis=0)
    if len(P) <= 1:
        return P
    check_bound(float(np.abs(P).max()) ** 2 * P.shape[1] * 8, "hull coordinates")
    D = P - P[0]
    cols = _independent_columns(D)
    Q = D[:, cols]
    r = len(cols)
    if r == 1:
        keep = np.array([np.argmin(Q[:, 0]), np.argmax(Q[:, 0])])
    else:
        try:
            hull = ConvexHull(Q.astype(float))
        except QhullError as exc:
            raise HullCertificationError(f"qhull failed: {exc}") from exc
        keep = np.unique(hull.vertices)
        _certify_vertices(Q, keep, hull)
        others = np.setdiff1d(np.arange(len(Q)), keep)
        _certify_interior(Q, keep, others)
    V = P[np.sort(keep)]
    return V[np.lexsort(V.T[::-1])]
