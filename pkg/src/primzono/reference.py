"""Baked-in table of known values, each recomputed from scratch.

``run_reference`` returns one ``CheckResult`` per entry; the CLI command
``verify-reference`` prints them and exits nonzero on any mismatch.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .cache import VertexCache
from .diameter import conjecture_consistency, construct_dk, delta_2k, euler_totient_grid
from .generators import enumerate_generators
from .matroid import (build_hard_instance, counterpart_count, greedy_max, multicriteria_solve,
                      project_vertices_bruteforce, squared_norm, uniform_matroid)
from .numeric import INF, totient
from .zonotope import (VertexSet, canonical_vertices, enumerate_vertices, grid_size,
                       skeleton_diameter, vertex_count)

OCTAGON = {(-3, -1), (-3, 1), (-1, 3), (1, 3), (3, 1), (3, -1), (1, -3), (-1, -3)}
DECAGON = {(-5, -5), (-5, -3), (-3, -5), (-3, 1), (-1, 3), (1, -3), (3, -1), (3, 5), (5, 3), (5, 5)}
M2 = [8, 16, 32, 48, 80, 96]
DELTA_2K = [2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 9, 10, 10, 10, 11, 12]
# (d, p) -> (vertices, diameter, grid) of H_1(d,p)
H1_TABLE = {
    (2, 1): (4, 2, 1), (2, 2): (8, 4, 3), (2, 3): (16, 8, 9), (2, 4): (24, 12, 17),
    (3, 1): (8, 3, 1), (3, 2): (48, 9, 5), (3, 3): (336, 25, 21), (3, 4): (1248, 49, 53),
    (4, 1): (16, 4, 1), (4, 2): (384, 16, 7), (4, 3): (15360, 56, 37),
}
# all-pairs BFS on 203904 vertices is out of reach, so only count and grid
H1_TABLE_LONG = {(4, 4): (203904, 117)}
# (d, k) -> delta(d, k) from the table of known values
DELTA_KNOWN = {**{(1, k): 1 for k in range(1, 11)},
               **{(2, k): DELTA_2K[k - 1] for k in range(1, 11)},
               (3, 1): 3, (3, 2): 4, (3, 3): 6, (4, 1): 4, (4, 2): 6, (4, 3): 8}
EXAMPLE_W = [[0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]]
HARD_W_21 = [[0, 0, 1, 0, 1, 0, 1, 0], [1, 0, 0, 1, 0, 0, 1, 0]]


@dataclass
class CheckResult:
    name: str
    passed: bool
    expected: object
    actual: object
    seconds: float
    error: Optional[str] = None


class _Ctx:
    def __init__(self, cache: Optional[VertexCache]):
        self.cache = cache

    def vertices(self, d, p, q, positive=False) -> VertexSet:
        G = enumerate_generators(d, p, q, positive)
        if self.cache is None:
            return enumerate_vertices(G)
        return self.cache.get_or_compute(d, p, q, positive, lambda: enumerate_vertices(G))


def _pts(A) -> set:
    return {tuple(int(x) for x in v) for v in A}


def _checks(long: bool) -> list:
    C: list = []

    def add(name: str, expected, fn: Callable):
        C.append((name, expected, fn))

    add("generators Z_1(2,2)", [(0, 1), (1, -1), (1, 0), (1, 1)],
        lambda c: enumerate_generators(2, 2, 1).as_tuples())
    add("generators Z+_inf(2,2)", [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)],
        lambda c: enumerate_generators(2, 2, INF, True).as_tuples())
    add("generators Z_1(3,1)", [(0, 0, 1), (0, 1, 0), (1, 0, 0)],
        lambda c: enumerate_generators(3, 1, 1).as_tuples())
    add("|G_1(3,2)| = 9", 9, lambda c: len(enumerate_generators(3, 2, 1)))
    add("|G_inf(2,1)| = 4", 4, lambda c: len(enumerate_generators(2, 1, INF)))
    add("phi(1) = 1", 1, lambda c: totient(1))
    add("octagon Z_1(2,2)", OCTAGON, lambda c: c.vertices(2, 2, 1).z_set())
    add("decagon Z+_inf(2,2)", DECAGON, lambda c: c.vertices(2, 2, INF, True).z_set())
    add("grid Z+_inf(2,2)", 5, lambda c: grid_size(enumerate_generators(2, 2, INF, True))[0])
    for d in (1, 2, 3, 4):
        add(f"cube Z_1({d},1)", _pts(itertools.product((-1, 1), repeat=d)), lambda c, d=d: c.vertices(d, 1, 1).z_set())
    add("H_1(3,2) summary", (48, 9, 5), lambda c: _summary(c, 3, 2, 1))
    add("H_inf(3,1) summary", (96, 13, 9), lambda c: _summary(c, 3, 1, INF))
    for (d, p), want in H1_TABLE.items():
        add(f"H_1({d},{p}) table entry", want, lambda c, d=d, p=p: _summary(c, d, p, 1))
    if long:
        for (d, p), want in H1_TABLE_LONG.items():
            add(f"H_1({d},{p}) vertices and grid", want,
                lambda c, d=d, p=p: (len(c.vertices(d, p, 1)), grid_size(enumerate_generators(d, p, 1))[0]))
    for p, m in enumerate(M2, start=1):
        add(f"m(2,{p})", m, lambda c, p=p: len(c.vertices(2, p, INF)))
        add(f"m(2,{p}) = 8 sum phi", m, lambda c, p=p: 8 * sum(totient(j) for j in range(1, p + 1)))
    add("m(3,1)", 96, lambda c: len(c.vertices(3, 1, INF)))
    add("m(4,1)", 5376, lambda c: len(c.vertices(4, 1, INF)))
    if long:
        add("m(5,1)", 1_981_440, lambda c: vertex_count(5, 1))
    for d in (1, 2, 3, 4):
        add(f"type B permutahedron Z_1({d},2)",
            (2**d * math.factorial(d), [tuple(range(2 * d - 1, 0, -2))]),
            lambda c, d=d: (len(c.vertices(d, 2, 1)), canonical_vertices(vertices=c.vertices(d, 2, 1))))
    for p, want in ((1, (1, 2)), (2, (3, 4)), (3, (9, 8)), (4, (17, 12))):
        add(f"H_1(2,{p}) grid and diameter", want, lambda c, p=p: euler_totient_grid(p))
    add("delta(2,k), k=1..17", DELTA_2K, lambda c: [delta_2k(k).diameter for k in range(1, 18)])
    for (d, k), want in DELTA_KNOWN.items():
        if d >= 3:
            add(f"construct_dk({d},{k})", want, lambda c, d=d, k=k: construct_dk(d, k).diameter)
    add("construct_dk(3,5) = 9", 9, lambda c: construct_dk(3, 5).diameter)
    add("construct_dk(4,4) = 10", 10, lambda c: construct_dk(4, 4).diameter)
    add("known delta(d,k) within floor((k+1)d/2)", True,
        lambda c: conjecture_consistency([(d, k, v) for (d, k), v in DELTA_KNOWN.items()]).passed)
    add("hard instance (2,1) utility matrix", HARD_W_21,
        lambda c: build_hard_instance(2, 1)[1].tolist())
    add("hard instance (2,1) translation", (0, 1), lambda c: grid_size(enumerate_generators(2, 1, INF))[1])
    add("conv(WS) = (0,1) + H_inf(2,1)", True, lambda c: _hard_tight(c, 2, 1))
    add("example greedy counterpart h=(1,2)",
        ((0, 2, 1, 3, 0, 2, 1, 3, 0, 2, 1, 3), (0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1)),
        lambda c: _example_counterpart())
    add("example optimum", ((3, 6), 45, 8), lambda c: _example_solution())
    add("counterpart_count(2,3)", 32, lambda c: counterpart_count(2, 3))
    add("counterpart_count(2,6)", 96, lambda c: counterpart_count(2, 6))
    return C


def _summary(c: _Ctx, d, p, q) -> tuple:
    V = c.vertices(d, p, q)
    return len(V), skeleton_diameter(vertices=V), grid_size(V.generators)[0]


def _hard_tight(c: _Ctx, d, p) -> bool:
    M, W = build_hard_instance(d, p)
    V = c.vertices(d, p, INF)
    return _pts(V.translated_h_points) == set(project_vertices_bruteforce(M, W))


def _example_counterpart() -> tuple:
    w = tuple(int(x) for x in np.array([1, 2]) @ np.array(EXAMPLE_W))
    return w, greedy_max(uniform_matroid(12, 6), w)


def _example_solution() -> tuple:
    s = multicriteria_solve(uniform_matroid(12, 6), EXAMPLE_W, squared_norm(), 2, 1)
    return s.projection, s.objective, s.counterparts


def run_reference(long: bool = False, cache: Optional[VertexCache] = None) -> list:
    ctx = _Ctx(cache)
    out = []
    for name, expected, fn in _checks(long):
        t0 = time.perf_counter()
        try:
            actual = fn(ctx)
            err = None
        except Exception as exc:  # a crash is reported as a failed check
            actual, err = None, f"{type(exc).__name__}: {exc}"
        ok = err is None and actual == expected
        out.append(CheckResult(name, ok, expected, actual, time.perf_counter() - t0, err))
    return out
