"""Configuration ingestion and scalar literal encoding.

Input documents are JSON or TOML with the shape
{"dimension": n, "normals": [[...]], "areas": ["p/q", ...],
 "corrections": [...], "field": {"char": p, "degree": k} | "rational",
 "precision": "p/q", "mode": "novikov" | "monotone"}
plus optional pipeline keys (seed, level, bracket_bound, pearl_bound,
resamples).  Scalar literals: rationals as "p/q" strings, finite-field
elements as integers, Novikov series as [[exponent, coefficient], ...] with a
precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .scalars import (
    ExtensionField,
    Novikov,
    NovikovField,
    PrimeField,
    RationalField,
    field_from_spec,
    field_to_spec,
    rational,
)
from .toric import DiscClass, ToricData


class ConfigError(ValueError):
    """Malformed configuration; maps to exit code 2."""


def scalar_to_json(domain, x):
    if isinstance(domain, NovikovField):
        return {
            "terms": [[str(e), scalar_to_json(domain.base, c)] for e, c in x.terms],
            "prec": None if x.prec is None else str(x.prec),
        }
    if isinstance(domain, RationalField):
        return str(x)
    return domain.format(x)


def scalar_from_json(domain, obj):
    if isinstance(domain, NovikovField):
        if isinstance(obj, dict):
            terms = [
                (rational(e), scalar_from_json(domain.base, c)) for e, c in obj["terms"]
            ]
            prec = None if obj.get("prec") is None else rational(obj["prec"])
            return Novikov(domain.base, terms, prec)
        if isinstance(obj, list):
            return Novikov(
                domain.base,
                [(rational(e), scalar_from_json(domain.base, c)) for e, c in obj],
            )
        return Novikov.constant(domain.base, scalar_from_json(domain.base, obj))
    return domain.parse(obj)


@dataclass
class PipelineConfig:
    toric: ToricData
    field: object
    mode: str
    precision: Fraction | None
    corrections: list = field(default_factory=list)
    level: str = "quick"
    bracket_bound: int = 3
    pearl_bound: int = 3
    resamples: int = 5
    seed: int = 0
    cache_dir: Path | None = None
    out: Path | None = None

    @property
    def domain(self):
        return self.domain_at(self.precision)

    def domain_at(self, precision):
        """The scalar domain, at an overridden working precision if given."""
        if self.mode == "novikov":
            if precision is None:
                raise ConfigError("novikov mode needs a precision")
            return NovikovField(self.field, rational(precision))
        return self.field

    def content_key_material(self) -> str:
        """Canonical string of every input that affects numerical results."""
        doc = {
            "dimension": self.toric.dim,
            "normals": [list(nu) for nu in self.toric.normals],
            "areas": [str(a) for a in self.toric.areas],
            "corrections": [
                {
                    "area": str(c.area),
                    "boundary": list(c.boundary),
                    "coefficient": scalar_to_json(self.field, c.coefficient),
                    "pairings": list(c.pairings),
                }
                for c in self.corrections
            ],
            "field": field_to_spec(self.field),
            "precision": None if self.precision is None else str(self.precision),
            "mode": self.mode,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _load_document(path: Path) -> dict:
    text = path.read_text()
    if path.suffix.lower() == ".toml":
        try:
            import tomllib
        except ImportError as exc:
            raise ConfigError(
                "TOML configs need Python 3.11+ (tomllib); use JSON instead"
            ) from exc
        return tomllib.loads(text)
    return json.loads(text)


def parse_config(doc: dict, path: Path | None = None) -> PipelineConfig:
    try:
        dim = int(doc["dimension"])
        normals = tuple(tuple(int(x) for x in nu) for nu in doc["normals"])
        areas = tuple(rational(a) for a in doc["areas"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad toric data: {exc}") from exc
    for a in areas:
        if a <= 0:
            raise ConfigError(f"area {a} is not positive")
    mode = doc.get("mode", "monotone")
    if mode not in ("monotone", "novikov"):
        raise ConfigError(f"unknown mode {mode!r}")
    try:
        fld = field_from_spec(doc.get("field", "rational"))
    except Exception as exc:
        raise ConfigError(f"bad field spec: {exc}") from exc
    precision = None
    if doc.get("precision") is not None:
        precision = rational(doc["precision"])
        if precision <= 0:
            raise ConfigError("precision must be positive")
    if mode == "novikov" and precision is None:
        raise ConfigError("novikov mode requires a precision")
    try:
        toric = ToricData(dim, normals, areas)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    corrections = []
    for c in doc.get("corrections", []):
        try:
            corrections.append(
                DiscClass(
                    area=rational(c["area"]),
                    boundary=tuple(int(x) for x in c["boundary"]),
                    coefficient=scalar_from_json(fld, c["coefficient"]),
                    pairings=tuple(int(x) for x in c["pairings"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad correction class: {exc}") from exc
    cfg = PipelineConfig(
        toric=toric,
        field=fld,
        mode=mode,
        precision=precision,
        corrections=corrections,
        level=doc.get("level", "quick"),
        bracket_bound=int(doc.get("bracket_bound", 3)),
        pearl_bound=int(doc.get("pearl_bound", 3)),
        resamples=int(doc.get("resamples", 5)),
        seed=int(doc.get("seed", 0)),
    )
    if cfg.level not in ("quick", "full"):
        raise ConfigError(f"unknown level {cfg.level!r}")
    if cfg.bracket_bound < 0 or cfg.pearl_bound < 0 or cfg.resamples < 1:
        raise ConfigError("bounds must be positive")
    return cfg


def load_config(path) -> PipelineConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    try:
        doc = _load_document(path)
    except Exception as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    return parse_config(doc, path)
