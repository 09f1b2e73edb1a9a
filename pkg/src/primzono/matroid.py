"""Multicriteria matroid optimization through greedy linear counterparts.

For a matroid S on n elements, a p-bounded d x n utility matrix W and a
convex trade-in f, the maximum of f(Wx) over bases x is attained at some
vertex of conv(WS).  Every normal cone of that polytope contains a normal
cone of H_inf(d,p), so greedily maximizing h.W x for one witness h per
vertex of H_inf(d,p) finds all of its vertices.
"""
from __future__ import annotations

import functools
import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .generators import enumerate_generators
from .hull import hull_vertices
from .numeric import INF, PrimzonoError, ResourceLimitError, checked_matmul, primitive_rows
from .zonotope import DEFAULT_VERTEX_CAP, VertexSet, enumerate_vertices

DEFAULT_BASIS_CAP = 10**6


class MatroidError(PrimzonoError):
    """Invalid matroid description or an oracle that contradicts its rank."""


# ---------------------------------------------------------------- oracles

class MatroidOracle:
    """Independence oracle over elements 0..n-1 with a known rank.

    Subclasses implement ``_independent``; ``independent`` wraps it with a
    thread-safe query counter.
    """

    ground_size: int
    rank: int

    def __init__(self, ground_size: int, rank: int):
        self.ground_size = int(ground_size)
        self.rank = int(rank)
        self._lock = threading.Lock()
        self.queries = 0

    def _independent(self, subset: Sequence[int]) -> bool:
        raise NotImplementedError

    def independent(self, subset: Iterable[int]) -> bool:
        subset = list(subset)
        for e in subset:
            if not 0 <= e < self.ground_size:
                raise MatroidError(f"element {e} outside 0..{self.ground_size - 1}")
        with self._lock:
            self.queries += 1
        return self._independent(subset)

    def reset_queries(self) -> int:
        with self._lock:
            n, self.queries = self.queries, 0
        return n


class UniformMatroid(MatroidOracle):
    def __init__(self, n: int, r: int):
        if not 0 <= r <= n:
            raise MatroidError(f"uniform matroid needs 0 <= r <= n, got n={n}, r={r}")
        super().__init__(n, r)

    def _independent(self, subset):
        return len(set(subset)) == len(subset) and len(subset) <= self.rank

    def __repr__(self):
        return f"UniformMatroid(n={self.ground_size}, r={self.rank})"


class GraphicMatroid(MatroidOracle):
    """Cycle matroid of a connected multigraph; element i is ``edges[i]``."""

    def __init__(self, edges: Sequence[tuple]):
        self.edges = [tuple(e) for e in edges]
        if any(len(e) != 2 for e in self.edges):
            raise MatroidError("every edge needs exactly two endpoints")
        nodes = sorted({v for e in self.edges for v in e}, key=repr)
        self._index = {v: i for i, v in enumerate(nodes)}
        self._ends = [(self._index[u], self._index[v]) for u, v in self.edges]
        if nodes and self._components(range(len(self.edges))) != 1:
            raise MatroidError("graph is disconnected; its bases would not be spanning trees")
        super().__init__(len(self.edges), max(len(nodes) - 1, 0))

    def _components(self, subset) -> int:
        parent = list(range(len(self._index)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = len(parent)
        for e in subset:
            a, b = find(self._ends[e][0]), find(self._ends[e][1])
            if a != b:
                parent[a] = b
                comps -= 1
        return comps

    def _independent(self, subset):
        if len(set(subset)) != len(subset):
            return False
        # acyclic iff every edge merges two components
        return self._components(subset) == len(self._index) - len(subset)

    def __repr__(self):
        return f"GraphicMatroid({len(self._index)} vertices, {len(self.edges)} edges)"


class ExplicitMatroid(MatroidOracle):
    """Matroid given by the indicator vectors of its bases."""

    def __init__(self, bases: Iterable[Sequence[int]]):
        rows = [tuple(int(x) for x in b) for b in bases]
        if not rows:
            raise MatroidError("at least one basis is required")
        n = len(rows[0])
        if any(len(b) != n for b in rows) or any(x not in (0, 1) for b in rows for x in b):
            raise MatroidError("bases must be 0/1 vectors of equal length")
        sizes = {sum(b) for b in rows}
        if len(sizes) != 1:
            raise MatroidError(f"bases have different cardinalities {sorted(sizes)}")
        self.bases = [frozenset(i for i, x in enumerate(b) if x) for b in dict.fromkeys(rows)]
        super().__init__(n, sizes.pop())

    def _independent(self, subset):
        s = set(subset)
        return len(s) == len(subset) and any(s <= b for b in self.bases)


def uniform_matroid(n: int, r: int) -> UniformMatroid:
    return UniformMatroid(n, r)


def graphic_matroid(edges) -> GraphicMatroid:
    return GraphicMatroid(edges)


def explicit_matroid(bases) -> ExplicitMatroid:
    return ExplicitMatroid(bases)


# ---------------------------------------------------------------- bases

def greedy_max(M: MatroidOracle, w) -> tuple:
    """Basis maximizing w.x: scan by decreasing weight (ties by index) and
    keep each element that leaves the partial set independent."""
    w = [int(x) for x in np.asarray(w).ravel()]
    if len(w) != M.ground_size:
        raise ValueError(f"weight vector has length {len(w)}, matroid has {M.ground_size} elements")
    chosen: list = []
    for j in sorted(range(len(w)), key=lambda j: (-w[j], j)):
        if len(chosen) == M.rank:
            break
        if M.independent(chosen + [j]):
            chosen.append(j)
    if len(chosen) != M.rank:
        raise MatroidError(f"greedy stopped at {len(chosen)} elements, rank is {M.rank}")
    x = [0] * M.ground_size
    for j in chosen:
        x[j] = 1
    return tuple(x)


def enumerate_bases(M: MatroidOracle, cap: int = DEFAULT_BASIS_CAP) -> list:
    """All bases as 0/1 tuples, in lexicographic order of their supports."""
    n, r = M.ground_size, M.rank
    out: list = []

    def extend(chosen, start):
        if len(chosen) == r:
            if len(out) >= cap:
                raise ResourceLimitError(f"more than {cap} bases")
            x = [0] * n
            for j in chosen:
                x[j] = 1
            out.append(tuple(x))
            return
        for j in range(start, n - (r - len(chosen)) + 1):
            if M.independent(chosen + [j]):
                extend(chosen + [j], j + 1)

    extend([], 0)
    return out


def check_exchange(M: MatroidOracle, cap: int = 10**4) -> bool:
    """Spot-check the basis exchange axiom on a small matroid."""
    bases = {frozenset(np.flatnonzero(b).tolist()) for b in enumerate_bases(M, cap)}
    for A, B in itertools.combinations(bases, 2):
        for a in A - B:
            if not any((A - {a}) | {b} in bases for b in B - A):
                return False
    return True


# ---------------------------------------------------------------- utilities

def validate_utility(W, d: int, p: int, n: Optional[int] = None) -> np.ndarray:
    W = np.asarray(W, dtype=np.int64)
    if W.ndim != 2 or W.shape[0] != d:
        raise ValueError(f"utility matrix must have {d} rows, got shape {W.shape}")
    if n is not None and W.shape[1] != n:
        raise ValueError(f"utility matrix has {W.shape[1]} columns, matroid has {n} elements")
    if W.size and (W.min() < 0 or W.max() > p):
        raise ValueError(f"utility entries must lie in 0..{p}")
    return W


def build_hard_instance(d: int, p: int, cap: int = 10**5) -> tuple:
    """Doubled path on |G_inf(d,p)| segments and W = [g1+, g1-, g2+, g2-, ...].

    Choosing copy + or - on segment i adds g_i+ or g_i-, so the projected
    bases form sum(g-) + H_inf(d,p).
    """
    G = enumerate_generators(d, p, INF, cap=cap)
    r = len(G)
    edges = [(i, i + 1) for i in range(r) for _ in range(2)]
    V = G.vectors
    W = np.empty((d, 2 * r), dtype=np.int64)
    W[:, 0::2] = np.maximum(V, 0).T
    W[:, 1::2] = np.maximum(-V, 0).T
    return GraphicMatroid(edges), W


def project_vertices_bruteforce(M: MatroidOracle, W, cap: int = DEFAULT_BASIS_CAP) -> list:
    """Vertices of conv{Wx : x basis}, by listing every basis."""
    W = np.asarray(W, dtype=np.int64)
    X = np.asarray(enumerate_bases(M, cap), dtype=np.int64).reshape(-1, M.ground_size)
    P = np.unique(checked_matmul(X, W.T, "basis projections"), axis=0)
    return [tuple(int(x) for x in v) for v in hull_vertices(P)]


# ---------------------------------------------------------------- trade-in

class TradeInOracle:
    """Comparison oracle for a convex f on Z^d.

    ``compare(u, v)`` returns -1, 0 or 1 as f(u) is less than, equal to or
    greater than f(v).  The solver only calls ``compare``; ``value`` is
    used for reporting when the function is known.
    """

    def __init__(self, key: Callable, name: str = "custom"):
        self._key = key
        self.name = name
        self.comparisons = 0

    def value(self, u):
        return self._key(tuple(int(x) for x in u))

    def compare(self, u, v) -> int:
        self.comparisons += 1
        a, b = self.value(u), self.value(v)
        return (a > b) - (a < b)

    def __repr__(self):
        return f"TradeInOracle({self.name})"


def squared_norm() -> TradeInOracle:
    return TradeInOracle(lambda u: sum(x * x for x in u), "squared_norm")


def linear(c) -> TradeInOracle:
    c = tuple(int(x) for x in c)
    return TradeInOracle(lambda u: sum(a * b for a, b in zip(c, u)), f"linear{c}")


def max_coordinate() -> TradeInOracle:
    return TradeInOracle(lambda u: max(u), "max_coordinate")


BUILTIN_TRADE_INS = {"squared_norm": squared_norm, "max_coordinate": max_coordinate}


def trade_in_by_name(name: str, d: int) -> TradeInOracle:
    """``squared_norm``, ``max_coordinate``, ``linear`` (all-ones) or
    ``linear:c1,c2,...``."""
    if name in BUILTIN_TRADE_INS:
        return BUILTIN_TRADE_INS[name]()
    if name == "linear":
        return linear([1] * d)
    if name.startswith("linear:"):
        c = [int(x) for x in name[len("linear:"):].split(",")]
        if len(c) != d:
            raise ValueError(f"linear functional needs {d} coefficients")
        return linear(c)
    raise ValueError(f"unknown trade-in function {name!r}")


# ---------------------------------------------------------------- solver

@functools.lru_cache(maxsize=16)
def _h_inf_vertices(d: int, p: int, cap: int) -> VertexSet:
    return enumerate_vertices(enumerate_generators(d, p, INF), cap=cap)


@dataclass(frozen=True)
class Counterpart:
    h: tuple
    w: tuple
    x: tuple
    projection: tuple


@dataclass(frozen=True)
class MulticriteriaSolution:
    basis: tuple
    projection: tuple
    objective: object
    counterparts: int
    queries: int
    details: tuple


def counterpart_count(d: int, p: int, cap: int = DEFAULT_VERTEX_CAP) -> int:
    """m(d,p): one greedy counterpart per vertex of H_inf(d,p)."""
    return len(_h_inf_vertices(d, p, cap))


def solve_counterparts(M: MatroidOracle, W, d: int, p: int, threads: int = 1,
                       cap: int = DEFAULT_VERTEX_CAP) -> list:
    """Greedy solution for every witness of H_inf(d,p), in vertex order."""
    W = validate_utility(W, d, p, M.ground_size)
    H = primitive_rows(np.asarray(_h_inf_vertices(d, p, cap).witnesses))
    Wv = checked_matmul(H, W, "counterpart weights")

    def one(i):
        x = greedy_max(M, Wv[i])
        proj = tuple(int(t) for t in W @ np.asarray(x))
        return Counterpart(tuple(int(t) for t in H[i]), tuple(int(t) for t in Wv[i]), x, proj)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(one, range(len(H))))
    return [one(i) for i in range(len(H))]


def multicriteria_solve(M: MatroidOracle, W, f: TradeInOracle, d: int, p: int,
                        threads: int = 1, cap: int = DEFAULT_VERTEX_CAP) -> MulticriteriaSolution:
    """Basis maximizing f(Wx) using m(d,p) greedy counterparts.

    Among projections with equal f the lexicographically smallest wins.
    """
    before = M.queries
    parts = solve_counterparts(M, W, d, p, threads, cap)
    best = None
    for c in parts:
        if best is None:
            best = c
            continue
        cmp = f.compare(c.projection, best.projection)
        if cmp > 0 or (cmp == 0 and c.projection < best.projection):
            best = c
    try:
        objective = f.value(best.projection)
    except Exception:  # custom oracles may not expose values
        objective = None
    return MulticriteriaSolution(best.x, best.projection, objective, len(parts),
                                 M.queries - before, tuple(parts))


def solve_exhaustive(M: MatroidOracle, W, f: TradeInOracle, cap: int = DEFAULT_BASIS_CAP) -> tuple:
    """(basis, projection) maximizing f over every basis; same tie rule."""
    W = np.asarray(W, dtype=np.int64)
    best = None
    for x in enumerate_bases(M, cap):
        proj = tuple(int(t) for t in W @ np.asarray(x))
        if best is None:
            best = (x, proj)
            continue
        cmp = f.compare(proj, best[1])
        if cmp > 0 or (cmp == 0 and proj < best[1]):
            best = (x, proj)
    return best
