"""Primitive generator sets of Z_q(d,p), H_q(d,p) and the positive variants."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .numeric import (
    INF,
    IntVec,
    Norm,
    ResourceLimitError,
    checked_sum_rows,
    first_nonzero_sign,
    gcd_rows,
    mobius,
    norm_label,
    norm_le_rows,
    parse_norm,
    primitive_rows,
)

DEFAULT_GENERATOR_CAP = 10**6


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    """Lexicographically sorted, duplicate-free generators with provenance.

    ``p``/``q``/``positive`` are ``None`` for hand-built sets (subsets,
    random test sets); such sets only need nonzero, pairwise
    non-parallel rows.
    """

    d: int
    vectors: np.ndarray = field(repr=False)
    p: Optional[int] = None
    q: Optional[Norm] = None
    positive: Optional[bool] = None

    def __post_init__(self):
        V = np.asarray(self.vectors, dtype=np.int64).reshape(-1, self.d)
        V.setflags(write=False)
        object.__setattr__(self, "vectors", V)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Iterable[int]], d: Optional[int] = None,
                     **provenance) -> "GeneratorSet":
        V = np.asarray([tuple(v) for v in vectors], dtype=np.int64)
        if d is None:
            if V.ndim != 2 or V.shape[0] == 0:
                raise ValueError("cannot infer the dimension of an empty generator list")
            d = V.shape[1]
        V = V.reshape(-1, d)
        if (V == 0).all(axis=1).any():
            raise ValueError("the zero vector cannot be a generator")
        canon = primitive_rows(V) * first_nonzero_sign(V)[:, None]
        if len(np.unique(canon, axis=0)) != len(V):
            raise ValueError("generators must be pairwise linearly independent")
        V = V[np.lexsort(V.T[::-1])] if len(V) else V
        return cls(d, V, **provenance)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return (tuple(int(x) for x in v) for v in self.vectors)

    def __eq__(self, other):
        return (isinstance(other, GeneratorSet) and self.d == other.d
                and np.array_equal(self.vectors, other.vectors))

    def __hash__(self):
        return hash((self.d, self.vectors.tobytes()))

    def as_tuples(self) -> list:
        return list(self)

    def subset(self, keep: Iterable[IntVec]) -> "GeneratorSet":
        return GeneratorSet.from_vectors(list(keep), d=self.d)

    @property
    def label(self) -> str:
        if self.p is None:
            return f"custom(d={self.d}, m={len(self)})"
        fam = "Z+" if self.positive else "Z"
        return f"{fam}_{norm_label(self.q)}({self.d},{self.p})"


def _check_args(d: int, p: int, q) -> Norm:
    if d < 1 or p < 1:
        raise ValueError(f"need d >= 1 and p >= 1, got d={d}, p={p}")
    return parse_norm(q)


def _ball_points(d: int, q: Norm, p: int, positive: bool) -> np.ndarray:
    """All lattice points of the norm ball (or its positive orthant), in
    lexicographic order, built one coordinate at a time with budget pruning."""
    values = np.arange(0 if positive else -p, p + 1, dtype=np.int64)
    budget = 0 if q == INF else p ** int(q)
    if q == INF:
        cost = np.zeros_like(values)
    elif budget * d < 2**62:
        cost = np.abs(values) ** int(q)
    else:
        cost = np.array([abs(int(v)) ** int(q) for v in values], dtype=object)
    pts = np.zeros((1, 0), dtype=np.int64)
    spent = np.zeros(1, dtype=np.int64)
    for _ in range(d):
        new_spent = spent[:, None] + cost[None, :]
        ok = new_spent <= budget
        rows, cols = np.nonzero(ok)
        pts = np.column_stack([pts[rows], values[cols]])
        spent = new_spent[rows, cols]
    return pts


def enumerate_generators(d: int, p: int, q=1, positive: bool = False,
                         cap: int = DEFAULT_GENERATOR_CAP) -> GeneratorSet:
    """Primitive integer vectors with ``||v||_q <= p`` that are lex-positive
    (or componentwise nonnegative when ``positive``), sorted ascending."""
    q = _check_args(d, p, q)
    count = generator_count(d, p, q, positive)
    if count > cap:
        raise ResourceLimitError(
            f"{count} generators for d={d}, p={p}, q={norm_label(q)} exceed the cap {cap}")
    pts = _ball_points(d, q, p, positive)
    keep = gcd_rows(pts) == 1
    if not positive:
        keep &= first_nonzero_sign(pts) > 0
    keep &= norm_le_rows(pts, q, p)
    V = pts[keep]
    assert len(V) == count, (len(V), count)
    return GeneratorSet(d, V, p=p, q=q, positive=positive)


def _count_ball(d: int, q: Norm, bound: int, positive: bool) -> int:
    """Number of lattice points v (zero included) with ||v||_q^q <= bound
    (finite q) or ||v||_inf <= bound."""
    if q == INF:
        return (bound + 1) ** d if positive else (2 * bound + 1) ** d
    q = int(q)
    radius = 0
    while (radius + 1) ** q <= bound:
        radius += 1
    # ways[s]: number of points with sum |v_i|^q == s
    dtype = np.int64 if (2 * radius + 1) ** d < 2**62 else object
    one = np.zeros(bound + 1, dtype=dtype)
    one[0] = 1
    for x in range(1, radius + 1):
        one[x ** q] += 1 if positive else 2
    support = np.flatnonzero(one)
    ways = np.zeros(bound + 1, dtype=dtype)
    ways[0] = 1
    for _ in range(d):
        nxt = np.zeros(bound + 1, dtype=dtype)
        for s in support:
            nxt[s:] += one[s] * ways[: bound + 1 - s]
        ways = nxt
    return int(ways.sum())


def generator_count(d: int, p: int, q=1, positive: bool = False) -> int:
    """|G| by Moebius inversion over lattice-point counts (nothing is listed)."""
    q = _check_args(d, p, q)
    total = 0
    for k in range(1, p + 1):
        mu = mobius(k)
        if mu == 0:
            continue
        if q == INF:
            bound = p // k
        else:
            bound = p ** int(q) // k ** int(q)
        if q != INF and bound > 5_000_000:
            return _count_by_listing(d, p, q, positive)
        n = _count_ball(d, q, bound, positive) - 1
        total += mu * (n if positive else n // 2)
    return total


def _count_by_listing(d, p, q, positive) -> int:
    pts = _ball_points(d, q, p, positive)
    keep = (gcd_rows(pts) == 1) & norm_le_rows(pts, q, p)
    if not positive:
        keep &= first_nonzero_sign(pts) > 0
    return int(keep.sum())


def sum_of_generators(G: GeneratorSet) -> IntVec:
    return tuple(int(x) for x in checked_sum_rows(G.vectors, "sum of generators"))

