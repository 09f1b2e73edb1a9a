"""On-disk cache of vertex enumerations.

One file per (d, p, q, positive, schema version).  The file is a single
header line ``primzono-cache <schema> <sha256 of payload>`` followed by the
gzip-compressed JSON document.  Readers take a shared ``flock`` on a
sibling lock file, writers an exclusive one; writes go through a temporary
file and ``os.replace``.  Anything that fails to validate is recomputed.
"""
from __future__ import annotations

import contextlib
import fcntl
import gzip
import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional

from .numeric import norm_label, parse_norm
from .serialize import SCHEMA_VERSION, document, dumps, load_vertex_document
from .zonotope import VertexSet

log = logging.getLogger(__name__)

MAGIC = b"primzono-cache"


def default_cache_dir() -> Path:
    env = os.environ.get("PRIMZONO_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "primzono"


class VertexCache:
    def __init__(self, root=None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.hits = 0
        self.misses = 0
        self.rejected = 0

    def path(self, d: int, p: int, q, positive: bool) -> Path:
        kind = "pos" if positive else "all"
        return self.root / f"v{SCHEMA_VERSION}_d{d}_p{p}_q{norm_label(parse_norm(q))}_{kind}.json.gz"

    @contextlib.contextmanager
    def _lock(self, path: Path, exclusive: bool):
        self.root.mkdir(parents=True, exist_ok=True)
        with open(str(path) + ".lock", "a+") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX if exclusive else fcntl.LOCK_SH)
            try:
                yield
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def _read(self, path: Path, key: tuple) -> Optional[VertexSet]:
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            return None
        try:
            header, payload = raw.split(b"\n", 1)
            magic, schema, digest = header.split(b" ")
            if magic != MAGIC or int(schema) != SCHEMA_VERSION:
                raise ValueError("schema mismatch")
            if hashlib.sha256(payload).hexdigest().encode() != digest:
                raise ValueError("checksum mismatch")
            V = load_vertex_document(json.loads(gzip.decompress(payload)))
            G = V.generators
            if (G.d, G.p, G.q, bool(G.positive)) != key:
                raise ValueError("entry belongs to another key")
            return V
        except Exception as exc:  # any defect means recompute
            log.warning("discarding cache entry %s: %s", path, exc)
            self.rejected += 1
            return None

    def load(self, d: int, p: int, q, positive: bool) -> Optional[VertexSet]:
        path = self.path(d, p, q, positive)
        with self._lock(path, exclusive=False):
            return self._read(path, (d, p, parse_norm(q), bool(positive)))

    def store(self, V: VertexSet) -> Path:
        G = V.generators
        path = self.path(G.d, G.p, G.q, G.positive)
        # mtime=0 keeps the compressed bytes reproducible
        payload = gzip.compress(dumps(document(G, V)).encode(), mtime=0)
        blob = b"%s %d %s\n" % (MAGIC, SCHEMA_VERSION, hashlib.sha256(payload).hexdigest().encode())
        with self._lock(path, exclusive=True):
            fd, tmp = tempfile.mkstemp(dir=self.root, prefix=path.name, suffix=".tmp")
            try:
                with os.fdopen(fd, "wb") as fh:
                    fh.write(blob + payload)
                os.replace(tmp, path)
            except BaseException:
                with contextlib.suppress(FileNotFoundError):
                    os.unlink(tmp)
                raise
        return path

    def get_or_compute(self, d: int, p: int, q, positive: bool,
                       compute: Callable[[], VertexSet]) -> VertexSet:
        V = self.load(d, p, q, positive)
        if V is not None:
            self.hits += 1
            return V
        self.misses += 1
        V = compute()
        self.store(V)
        return V
