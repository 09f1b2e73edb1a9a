"""Exact integer vector helpers: gcd, lexicographic sign, norms, totient,
signed permutations and overflow-checked int64 products."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

IntVec = tuple  # d-tuple of Python ints
Norm = Union[int, float]  # positive integer or math.inf

INF = math.inf
INT64_SAFE = 2**62


class PrimzonoError(Exception):
    """Base class for errors raised by this package."""


class ResourceLimitError(PrimzonoError):
    """A configured cap (generators, vertices, bases) was exceeded."""


class ArithmeticOverflowError(PrimzonoError, OverflowError):
    """An exact int64 computation would leave the safe range."""


def as_intvec(v: Iterable[int]) -> IntVec:
    return tuple(int(x) for x in v)


def parse_norm(q) -> Norm:
    """Accept 1, 2, ..., ``inf``/``"inf"``; reject anything else."""
    if isinstance(q, str):
        s = q.strip().lower()
        if s in ("inf", "infinity", "oo"):
            return INF
        q = int(s)
    if q == INF:
        return INF
    if isinstance(q, float) and not q.is_integer():
        raise ValueError(f"norm must be a positive integer or inf, got {q!r}")
    q = int(q)
    if q < 1:
        raise ValueError(f"norm must be a positive integer or inf, got {q!r}")
    return q


def norm_label(q: Norm) -> str:
    return "inf" if q == INF else str(int(q))


def gcd_vec(v: Iterable[int]) -> int:
    """gcd of the absolute entries; 0 only for the zero vector."""
    return math.gcd(*(int(x) for x in v))


def is_lex_positive(v: Iterable[int]) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def norm_le(v: Iterable[int], q: Norm, p: int) -> bool:
    """Exact test of ``||v||_q <= p``; finite q compares sum |v_i|^q with p^q."""
    q = parse_norm(q)
    if q == INF:
        return max((abs(int(x)) for x in v), default=0) <= p
    return sum(abs(int(x)) ** q for x in v) <= int(p) ** q


def totient(j: int) -> int:
    if j < 1:
        raise ValueError("totient is defined for j >= 1")
    result, n, f = j, j, 2
    while f * f <= n:
        if n % f == 0:
            while n % f == 0:
                n //= f
            result -= result // f
        f += 1
    if n > 1:
        result -= result // n
    return result


def totient_table(n: int) -> np.ndarray:
    """phi(0..n) by sieve; entry 0 is unused and set to 0."""
    phi = np.arange(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        if phi[i] == i:
            phi[i::i] -= phi[i::i] // i
    return phi


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    m, f, sign = n, 2, 1
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            sign = -sign
        f += 1
    return -sign if m > 1 else sign


@dataclass(frozen=True)
class SignedPermutation:
    """w_i = flips[i] * v[perm[i]] (0-based indices)."""

    perm: tuple
    flips: tuple

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"perm {self.perm} is not a permutation of 0..d-1")
        if len(self.flips) != len(self.perm) or any(f not in (1, -1) for f in self.flips):
            raise ValueError("flips must be a d-tuple of +1/-1")

    @property
    def d(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, d: int) -> "SignedPermutation":
        return cls(tuple(range(d)), (1,) * d)

    def apply(self, v: Sequence[int]) -> IntVec:
        if len(v) != self.d:
            raise ValueError(f"dimension mismatch: permutation has d={self.d}, vector has {len(v)}")
        return tuple(f * int(v[i]) for i, f in zip(self.perm, self.flips))

    def apply_rows(self, M: np.ndarray) -> np.ndarray:
        M = np.asarray(M)
        if M.shape[-1] != self.d:
            raise ValueError("dimension mismatch")
        return M[..., list(self.perm)] * np.asarray(self.flips, dtype=M.dtype)


def apply_signed_perm(g: SignedPermutation, v: Sequence[int]) -> IntVec:
    return g.apply(v)


def signed_permutations(d: int) -> Iterator[SignedPermutation]:
    """All 2^d * d! signed permutations of d coordinates."""
    for perm in itertools.permutations(range(d)):
        for flips in itertools.product((1, -1), repeat=d):
            yield SignedPermutation(perm, flips)


# -- vectorized row helpers -------------------------------------------------

def gcd_rows(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    if M.shape[1] == 0:
        return np.zeros(len(M), dtype=np.int64)
    return np.gcd.reduce(np.abs(M), axis=1)


def primitive_rows(M: np.ndarray) -> np.ndarray:
    """Divide every nonzero row by its gcd."""
    g = gcd_rows(M)
    g[g == 0] = 1
    return M // g[:, None]


def first_nonzero_sign(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M)
    nz = M != 0
    first = np.argmax(nz, axis=1)
    return np.sign(M[np.arange(len(M)), first]) * nz.any(axis=1)


def lex_positive_rows(M: np.ndarray) -> np.ndarray:
    return first_nonzero_sign(M) > 0


def norm_le_rows(M: np.ndarray, q: Norm, p: int) -> np.ndarray:
    M = np.abs(np.asarray(M, dtype=np.int64))
    if q == INF:
        return M.max(axis=1, initial=0) <= p
    q = int(q)
    if p ** q * M.shape[1] < INT64_SAFE:
        return (M ** q).sum(axis=1) <= p ** q
    # big exponents: exact Python integers
    bound = p ** q
    return np.array([sum(int(x) ** q for x in row) <= bound for row in M], dtype=bool)


# -- overflow-checked arithmetic --------------------------------------------

def check_bound(bound: float, what: str = "value") -> None:
    if not bound < INT64_SAFE:
        raise ArithmeticOverflowError(f"{what} may exceed the int64 range (bound {bound:.3g})")


def checked_matmul(A: np.ndarray, B: np.ndarray, what: str = "product") -> np.ndarray:
    """Exact int64 ``A @ B``; raises when |A| @ |B| could overflow."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.size and B.size:
        bound = (np.abs(A).max(axis=-1).astype(np.float64).max()
                 * np.abs(B).astype(np.float64).sum(axis=0).max())
        check_bound(bound, what)
    return A @ B


def checked_sum_rows(M: np.ndarray, what: str = "sum") -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    if M.size:
        check_bound(float(np.abs(M).astype(np.float64).sum(axis=0).max()), what)
    return M.sum(axis=0)
