"""Lattice polytopes with large diameter built from primitive generators.

* ``delta_2k``: polygons realizing the largest diameter of a lattice
  (2,k)-polygon, as sums of generators of H_1(2,p).
* ``construct_dk``: subsets of the generators of H_1(d,2) whose sum is a
  lattice (d,k)-polytope with diameter floor((k+1)d/2), obtained by
  removing perfect matchings of K_d one step at a time.

Every record is certified by recomputing its grid size and its skeleton
diameter from scratch with the zonotope engine.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .generators import GeneratorSet, enumerate_generators
from .numeric import PrimzonoError, ResourceLimitError, totient
from .zonotope import grid_size, skeleton_diameter

DEFAULT_K_CAP = 100


class ScheduleCertificationError(PrimzonoError):
    """A construction did not reach the grid size or diameter it promised."""


@dataclass(frozen=True)
class DiameterRecord:
    d: int
    k: int
    diameter: int
    generator_subset: tuple
    grid_k: int
    inferred_schedule: bool = False

    @property
    def size(self) -> int:
        return len(self.generator_subset)


@dataclass(frozen=True)
class MatchingSchedule:
    d: int
    removal_steps: tuple
    inferred: bool = False


def euler_totient_grid(p: int) -> tuple:
    """(k, diameter) of H_1(2,p): (sum j*phi(j), 2 * sum phi(j))."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return (sum(j * totient(j) for j in range(1, p + 1)),
            2 * sum(totient(j) for j in range(1, p + 1)))


def level_generators(p: int) -> list:
    """Generators of H_1(2,p) that are not generators of H_1(2,p-1)."""
    if p == 1:
        return [(0, 1), (1, 0)]
    return sorted(v for i in range(1, p) if math.gcd(i, p) == 1
                  for v in ((i, p - i), (i, i - p)))


def _certify(d: int, k: int, subset, expected: int, inferred: bool = False) -> DiameterRecord:
    G = GeneratorSet.from_vectors(subset, d=d)
    grid, _ = grid_size(G)
    diam = skeleton_diameter(G)
    if grid > k or diam != expected:
        raise ScheduleCertificationError(
            f"(d={d}, k={k}): got grid {grid}, diameter {diam}; expected grid <= {k}, diameter {expected}")
    return DiameterRecord(d, k, diam, tuple(G), grid, inferred)


def delta_2k(k: int, cap: int = DEFAULT_K_CAP) -> DiameterRecord:
    """Largest-diameter polygon in [0,k]^2 among sums of G_1(2,p-1) plus a
    subset of the level-p generators, p being the first level whose full
    grid reaches k.  Larger subsets win; ties go to the lexicographically
    smallest subset."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > cap:
        raise ResourceLimitError(f"k={k} exceeds the cap {cap}")
    p = 1
    while euler_totient_grid(p)[0] < k:
        p += 1
    base = list(enumerate_generators(2, p - 1, 1)) if p > 1 else []
    level = level_generators(p)
    base_sum = [sum(abs(v[i]) for v in base) for i in (0, 1)]
    for size in range(len(level), -1, -1):
        for extra in itertools.combinations(level, size):
            grid = max(base_sum[i] + sum(abs(v[i]) for v in extra) for i in (0, 1))
            if grid <= k:
                subset = base + list(extra)
                return _certify(2, k, subset, len(subset))
    raise AssertionError("unreachable: the empty extension always fits")


def one_factorization(n: int) -> list:
    """The n-1 rotated perfect matchings of K_n (n even), 1-based edges.

    The first matching is [1,2],[3,n],[4,n-1],...,[n/2+1,n/2+2]; each next
    one relabels n -> 2 and i -> i+1 for the other vertices except 1.
    """
    if n < 2 or n % 2:
        raise ValueError(f"one_factorization needs an even n >= 2, got {n}")
    first = [(1, 2)] + [(3 + i, n - i) for i in range(n // 2 - 1)]

    def rotate(v):
        return v if v == 1 else (2 if v == n else v + 1)

    out = [first]
    for _ in range(n - 2):
        out.append([(rotate(a), rotate(b)) for a, b in out[-1]])
    return out


def _edge_generator(edge, d: int, plus: bool) -> tuple:
    i, j = sorted(edge)
    v = [0] * d
    v[i - 1] = 1
    v[j - 1] = 1 if plus else -1
    return tuple(v)


def _odd_steps(d: int) -> list:
    """d-1 edge sets of K_d, alternating sizes ceil(d/2), floor(d/2).

    Drop the dummy vertex d+1 from the rotated matchings of K_{d+1}; the
    matching that paired d+1 with vertex 1 is left over and its edges are
    handed out, each edge [x_a, x_b] joining the two matchings that miss
    x_a and x_b so that every pair of steps removes a 2-factor.
    """
    n = d + 1
    near, missing = [], []
    for M in one_factorization(n):
        dummy = next(e for e in M if n in e)
        near.append([e for e in M if n not in e])
        missing.append(dummy[0] if dummy[1] == n else dummy[1])
    spare = missing.index(1)
    slot = {x: i for i, x in enumerate(missing) if i != spare}
    pairs = []
    for a, b in near[spare]:
        i, j = sorted((slot[a], slot[b]))
        pairs.append((i, j, (a, b)))
    steps = []
    for i, j, edge in sorted(pairs):
        steps.append(near[i] + [edge])
        steps.append(near[j])
    return steps


def matching_schedule(d: int) -> MatchingSchedule:
    """Removal steps: d-1 steps over the (1,-1)-type generators, then d-1
    steps over the (1,1)-type generators."""
    if d < 2:
        raise ValueError(f"matching_schedule needs d >= 2, got {d}")
    edge_steps = one_factorization(d) if d % 2 == 0 else _odd_steps(d)
    steps = [tuple(_edge_generator(e, d, plus=False) for e in s) for s in edge_steps]
    steps += [tuple(_edge_generator(e, d, plus=True) for e in s) for s in edge_steps]
    return MatchingSchedule(d, tuple(steps), inferred=bool(d % 2))


def construct_dk(d: int, k: int) -> DiameterRecord:
    """Certified lattice (d,k)-polytope with diameter floor((k+1)d/2)."""
    if d < 1 or not 1 <= k <= 2 * d - 1:
        raise ValueError(f"need 1 <= k <= 2d-1, got d={d}, k={k}")
    gens = list(enumerate_generators(d, 2, 1))
    if d >= 2:
        removed = set()
        for step in matching_schedule(d).removal_steps[: 2 * d - 1 - k]:
            removed.update(step)
        gens = [g for g in gens if g not in removed]
    rec = _certify(d, k, gens, (k + 1) * d // 2, inferred=bool(d % 2) and d > 1)
    if rec.grid_k != k:
        raise ScheduleCertificationError(f"(d={d}, k={k}): grid {rec.grid_k} != {k}")
    return rec


@dataclass
class ConsistencyReport:
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["status"] != "violation" for r in self.rows)


def conjecture_consistency(records) -> ConsistencyReport:
    """Check diameter <= floor((k+1)d/2), with equality when k <= 2d-1.

    ``records`` holds DiameterRecords or plain (d, k, diameter) triples.
    """
    report = ConsistencyReport()
    for rec in records:
        d, k, diam = (rec.d, rec.k, rec.diameter) if isinstance(rec, DiameterRecord) else rec
        bound = (k + 1) * d // 2
        if diam > bound or (k <= 2 * d - 1 and diam != bound):
            status = "violation"
        else:
            status = "equal" if diam == bound else "strict"
        report.rows.append({"d": d, "k": k, "diameter": diam, "bound": bound, "status": status})
    return report
