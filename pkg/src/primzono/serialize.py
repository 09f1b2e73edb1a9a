"""Stable JSON and CSV renderings of generator sets and vertex sets.

Output is a pure function of the (sorted) data, so it is byte-identical
across runs and thread counts.  The JSON writer puts one vertex per line
to keep large documents diffable.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Optional

import numpy as np

from .generators import GeneratorSet
from .numeric import INF, norm_label, parse_norm
from .zonotope import VertexSet, ZonotopeSummary

SCHEMA_VERSION = 1


def _q_json(q):
    return "inf" if q == INF else (None if q is None else int(q))


def _ints(a) -> list:
    return [int(x) for x in a]


def meta(d: int, p, q, positive) -> dict:
    from . import __version__
    return {"d": d, "p": p, "q": _q_json(q), "positive": positive,
            "version": __version__, "schema": SCHEMA_VERSION}


def summary_dict(s: ZonotopeSummary) -> dict:
    return {"count": s.vertex_count, "diameter": s.diameter, "grid": s.grid_k,
            "translation": list(s.translation)}


def vertex_dicts(V: VertexSet) -> list:
    t = np.asarray(V.translation, dtype=np.int64)
    return [{"signs": _ints(V.signs[i]), "z": _ints(V.z_points[i]), "h": _ints(V.h_points[i]),
             "h_translated": _ints(V.h_points[i] + t), "witness": _ints(V.witnesses[i])}
            for i in range(len(V))]


def document(G: GeneratorSet, vertices: Optional[VertexSet] = None,
             summary: Optional[ZonotopeSummary] = None) -> dict:
    doc = {"meta": meta(G.d, G.p, G.q, G.positive), "generators": [list(g) for g in G]}
    if vertices is not None:
        doc["vertices"] = vertex_dicts(vertices)
    if summary is not None:
        doc["summary"] = summary_dict(summary)
    return doc


def dumps(doc: dict) -> str:
    """Deterministic JSON; top-level lists of rows or records get one item per line."""
    parts = []
    for key in doc:
        val = doc[key]
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            body = ",\n  ".join(json.dumps(x, separators=(",", ":")) for x in val)
            parts.append(f'"{key}":[\n  {body}\n]')
        else:
            parts.append(f'{json.dumps(key)}:{json.dumps(val, separators=(",", ":"))}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def load_vertex_document(doc: dict) -> VertexSet:
    """Rebuild a VertexSet and check every stored point against the signs."""
    m = doc["meta"]
    q = None if m.get("q") is None else parse_norm(m["q"])
    G = GeneratorSet(m["d"], np.asarray(doc["generators"], dtype=np.int64).reshape(-1, m["d"]),
                     p=m.get("p"), q=q, positive=m.get("positive"))
    recs = doc["vertices"]
    S = np.asarray([r["signs"] for r in recs], dtype=np.int8).reshape(-1, len(G))
    H = np.asarray([r["witness"] for r in recs], dtype=np.int64).reshape(-1, G.d)
    V = VertexSet(G, S, H)
    Z = np.asarray([r["z"] for r in recs], dtype=np.int64).reshape(-1, G.d)
    if not np.array_equal(V.z_points, Z):
        raise ValueError("stored z points disagree with the sign vectors")
    prod = (H @ G.vectors.T) * S
    if prod.size and prod.min() < 1:
        raise ValueError("a stored witness does not realize its sign vector")
    return V


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def generators_csv(G: GeneratorSet) -> str:
    return _csv([f"g{i + 1}" for i in range(G.d)], G.as_tuples())


def vertices_csv(V: VertexSet) -> str:
    d, m = V.generators.d, len(V.generators)
    header = ([f"s{i + 1}" for i in range(m)] + [f"z{i + 1}" for i in range(d)]
              + [f"h{i + 1}" for i in range(d)] + [f"t{i + 1}" for i in range(d)]
              + [f"w{i + 1}" for i in range(d)])
    T = V.h_points + np.asarray(V.translation, dtype=np.int64)
    rows = np.hstack([V.signs.astype(np.int64), V.z_points, V.h_points, T, V.witnesses])
    return _csv(header, rows.tolist())


def summary_csv(G: GeneratorSet, s: ZonotopeSummary) -> str:
    diam = "" if s.diameter is None else s.diameter
    return _csv(["d", "p", "q", "positive", "count", "diameter", "grid", "translation"],
                [[G.d, G.p, norm_label(G.q) if G.q is not None else "", G.positive,
                  s.vertex_count, diam, s.grid_k, " ".join(map(str, s.translation))]])
