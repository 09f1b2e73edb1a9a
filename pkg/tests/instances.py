"""Seeded random instances shared by the property and acceptance suites."""
import math

import numpy as np

from primzono.generators import GeneratorSet
from primzono.matroid import ExplicitMatroid, MatroidError, graphic_matroid, uniform_matroid

from oracles import graphic_bases


def random_generator_set(rng, d, m, bound=3):
    """m pairwise non-parallel nonzero integer vectors in [-bound, bound]^d."""
    seen, out = set(), []
    for _ in range(1000):
        if len(out) == m:
            break
        v = tuple(int(x) for x in rng.integers(-bound, bound + 1, size=d))
        if not any(v):
            continue
        g = math.gcd(*v)
        s = next(x for x in v if x) // abs(next(x for x in v if x))
        key = tuple(s * x // g for x in v)
        if key in seen:
            continue
        seen.add(key)
        out.append(v)
    return GeneratorSet.from_vectors(out, d=d)


def random_matroid(rng, n_max=12):
    """(oracle, list of bases) from one of the three built-in families."""
    kind = int(rng.integers(3))
    if kind == 0:
        n = int(rng.integers(2, n_max + 1))
        r = int(rng.integers(0, n + 1))
        M = uniform_matroid(n, r)
        return M, None
    while True:
        nv = int(rng.integers(2, 7))
        ne = int(rng.integers(nv - 1, n_max + 1))
        edges = [tuple(sorted(rng.choice(nv, 2, replace=False).tolist())) for _ in range(ne)]
        try:
            M = graphic_matroid(edges)
        except MatroidError:
            continue
        if kind == 1:
            return M, None
        bases = graphic_bases(edges)
        return ExplicitMatroid(bases), bases


def random_instance(rng, d_max=3, p_max=2, n_max=12):
    d = int(rng.integers(1, d_max + 1))
    p = int(rng.integers(1, p_max + 1))
    M, _ = random_matroid(rng, n_max)
    W = rng.integers(0, p + 1, size=(d, M.ground_size))
    return M, W, d, p
