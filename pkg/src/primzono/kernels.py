"""Hot inner loops, each with a numba kernel and a pure-numpy twin.

Set ``PRIMZONO_DISABLE_NUMBA=1`` (read at import time) to force the numpy
path; it is also used automatically when numba is not importable.  Both
paths return identical results; ``benchmarks/bench_kernels.py`` compares
their speed.

Sign vectors are int8 rows over {+1, -1}.  Rows are hashed by XOR-ing a
fixed random 64-bit key per positive coordinate, which lets a single
coordinate flip update a hash in O(1).  Every hash hit is confirmed by a
full row comparison, so collisions can cost time but never correctness.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("PRIMZONO_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag in CI
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA

_KEY_SEED = 0x5EED_2016


def hash_keys(n: int) -> np.ndarray:
    """Deterministic random uint64 keys, one per coordinate."""
    return np.random.default_rng(_KEY_SEED).integers(
        1, np.iinfo(np.uint64).max, size=max(n, 1), dtype=np.uint64, endpoint=True)[:n]


# ---------------------------------------------------------------- numpy path

def _row_hash_np(S, keys):
    out = np.zeros(len(S), dtype=np.uint64)
    step = max(1, 4_000_000 // max(S.shape[1], 1))
    for lo in range(0, len(S), step):
        blk = S[lo:lo + step] > 0
        out[lo:lo + step] = np.bitwise_xor.reduce(
            np.where(blk, keys[: S.shape[1]], np.uint64(0)), axis=1)
    return out


def _lookup_np(H, HL):
    """Candidate row index for each query hash (-1 if absent)."""
    order = np.argsort(H, kind="stable")
    Hs = H[order]
    pos = np.searchsorted(Hs, HL)
    pos = np.minimum(pos, len(Hs) - 1)
    idx = order[pos]
    idx[Hs[pos] != HL] = -1
    return idx


def _match_rows_np(S, H, L, HL):
    if len(S) == 0:
        return np.full(len(L), -1, dtype=np.int64)
    idx = _lookup_np(H, HL)
    ok = idx >= 0
    ok[ok] = (S[idx[ok]] == L[ok]).all(axis=1)
    if not ok.all():
        # hash collision among distinct rows: resolve exactly
        table = {r.tobytes(): i for i, r in enumerate(S)}
        for j in np.flatnonzero(~ok):
            idx[j] = table.get(L[j].tobytes(), -1)
    return idx.astype(np.int64)


def _flip_neighbors_np(S, H, keys):
    R, m = S.shape
    nbr = np.full((R, m), -1, dtype=np.int64)
    if R == 0:
        return nbr
    order = np.argsort(H, kind="stable")
    Hs = H[order]
    table = None
    for j in range(m):
        HL = H ^ keys[j]
        pos = np.minimum(np.searchsorted(Hs, HL), R - 1)
        idx = order[pos]
        hit = Hs[pos] == HL
        cand = np.where(hit, idx, 0)
        same = (S[cand] == S).sum(axis=1) == m - 1
        same &= S[cand, j] == -S[:, j]
        nbr[:, j] = np.where(hit & same, idx, -1)
        clash = np.flatnonzero(hit & ~same)
        if len(clash):
            # the first row with this hash was the wrong one: look up exactly
            if table is None:
                table = {r.tobytes(): i for i, r in enumerate(S)}
            for i in clash:
                row = S[i].copy()
                row[j] = -row[j]
                nbr[i, j] = table.get(row.tobytes(), -1)
    return nbr


def _eccentricities_np(nbr):
    """All-pairs BFS, batched over sources with boolean frontiers."""
    V, m = nbr.shape
    ecc = np.zeros(V, dtype=np.int64)
    valid = nbr >= 0
    src_rows = [np.flatnonzero(valid[:, j]) for j in range(m)]
    dst_rows = [nbr[valid[:, j], j] for j in range(m)]
    batch = max(1, min(V, 4_000_000 // max(V, 1)))
    for lo in range(0, V, batch):
        srcs = np.arange(lo, min(V, lo + batch))
        B = len(srcs)
        seen = np.zeros((B, V), dtype=bool)
        seen[np.arange(B), srcs] = True
        front = seen.copy()
        level = np.zeros(B, dtype=np.int64)
        depth = 0
        while front.any():
            nxt = np.zeros_like(front)
            for s, t in zip(src_rows, dst_rows):
                nxt[:, t] |= front[:, s]
            nxt &= ~seen
            depth += 1
            alive = nxt.any(axis=1)
            level[alive] = depth
            seen |= nxt
            front = nxt
        if not seen.all():
            ecc[srcs] = -1
        else:
            ecc[srcs] = level
    return ecc


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _row_hash_nb(S, keys):
        R, t = S.shape
        out = np.zeros(R, dtype=np.uint64)
        for i in range(R):
            h = np.uint64(0)
            for j in range(t):
                if S[i, j] > 0:
                    h ^= keys[j]
            out[i] = h
        return out

    @njit(cache=True)
    def _build_table(H):
        size = 1
        while size < 2 * H.shape[0] + 2:
            size *= 2
        mask = np.uint64(size - 1)
        table = np.full(size, -1, dtype=np.int64)
        for i in range(H.shape[0]):
            slot = np.int64(H[i] & mask)
            while table[slot] != -1:
                slot = (slot + 1) & (size - 1)
            table[slot] = i
        return table, mask

    @njit(cache=True)
    def _match_rows_nb(S, H, L, HL):
        out = np.full(L.shape[0], -1, dtype=np.int64)
        if S.shape[0] == 0:
            return out
        table, mask = _build_table(H)
        size = table.shape[0]
        t = S.shape[1]
        for j in range(L.shape[0]):
            slot = np.int64(HL[j] & mask)
            while table[slot] != -1:
                i = table[slot]
                if H[i] == HL[j]:
                    eq = True
                    for c in range(t):
                        if S[i, c] != L[j, c]:
                            eq = False
                            break
                    if eq:
                        out[j] = i
                        break
                slot = (slot + 1) & (size - 1)
        return out

    @njit(cache=True)
    def _flip_neighbors_nb(S, H, keys):
        R, m = S.shape
        nbr = np.full((R, m), -1, dtype=np.int64)
        if R == 0:
            return nbr
        table, mask = _build_table(H)
        size = table.shape[0]
        for i in range(R):
            for j in range(m):
                target = H[i] ^ keys[j]
                slot = np.int64(target & mask)
                while table[slot] != -1:
                    k = table[slot]
                    if H[k] == target and S[k, j] == -S[i, j]:
                        eq = True
                        for c in range(m):
                            if c != j and S[k, c] != S[i, c]:
                                eq = False
                                break
                        if eq:
                            nbr[i, j] = k
                            break
                    slot = (slot + 1) & (size - 1)
        return nbr

    @njit(cache=True)
    def _eccentricities_nb(nbr):
        V, m = nbr.shape
        ecc = np.zeros(V, dtype=np.int64)
        dist = np.empty(V, dtype=np.int64)
        queue = np.empty(V, dtype=np.int64)
        for s in range(V):
            dist[:] = -1
            dist[s] = 0
            queue[0] = s
            head, tail = 0, 1
            while head < tail:
                u = queue[head]
                head += 1
                for j in range(m):
                    w = nbr[u, j]
                    if w >= 0 and dist[w] < 0:
                        dist[w] = dist[u] + 1
                        queue[tail] = w
                        tail += 1
            ecc[s] = dist[queue[tail - 1]] if tail == V else -1
        return ecc


# ---------------------------------------------------------------- dispatch

def row_hash(S: np.ndarray, keys: np.ndarray) -> np.ndarray:
    S = np.ascontiguousarray(S, dtype=np.int8)
    if USE_NUMBA:
        return _row_hash_nb(S, keys[: S.shape[1]])
    return _row_hash_np(S, keys)


def match_rows(S, H, L, HL) -> np.ndarray:
    """Index of each row of ``L`` inside ``S`` (-1 if absent)."""
    S = np.ascontiguousarray(S, dtype=np.int8)
    L = np.ascontiguousarray(L, dtype=np.int8)
    if USE_NUMBA:
        return _match_rows_nb(S, H, L, HL)
    return _match_rows_np(S, H, L, HL)


def flip_neighbors(S, H, keys) -> np.ndarray:
    """``nbr[i, j]`` = row equal to row i with coordinate j negated, or -1."""
    S = np.ascontiguousarray(S, dtype=np.int8)
    if USE_NUMBA:
        return _flip_neighbors_nb(S, H, keys[: S.shape[1]])
    return _flip_neighbors_np(S, H, keys)


def eccentricities(nbr) -> np.ndarray:
    """Graph eccentricity of every vertex; -1 marks a disconnected graph."""
    nbr = np.ascontiguousarray(nbr, dtype=np.int64)
    if USE_NUMBA:
        return _eccentricities_nb(nbr)
    return _eccentricities_np(nbr)
