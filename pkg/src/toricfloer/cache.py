"""Content-addressed Groebner basis cache.

Keys are SHA-256 digests of the canonical input material (normals, areas,
corrections, field, precision, mode, term order), so a hit can never change
numerical output.  Values are stored as canonical textual polynomials, one
JSON document per basis.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .config import scalar_from_json, scalar_to_json
from .poly import Poly


def cache_key(material: str) -> str:
    return hashlib.sha256(material.encode("utf-8")).hexdigest()


def poly_to_json(p: Poly, domain) -> dict:
    terms = sorted(p.terms.items())
    return {"terms": [[list(e), scalar_to_json(domain, c)] for e, c in terms]}


def poly_from_json(obj: dict, domain, nvars: int) -> Poly:
    terms = {tuple(e): scalar_from_json(domain, c) for e, c in obj["terms"]}
    return Poly(domain, nvars, terms)


class GroebnerCache:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str, domain, nvars: int):
        path = self._path(key)
        if not path.exists():
            return None
        doc = json.loads(path.read_text())
        return [poly_from_json(obj, domain, nvars) for obj in doc["basis"]]

    def put(self, key: str, basis: list, domain) -> None:
        doc = {"basis": [poly_to_json(p, domain) for p in basis]}
        self._path(key).write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")))
