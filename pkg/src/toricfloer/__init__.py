"""Exact verification engine for toric superpotential algebra: Novikov
arithmetic, Jacobian quotient eigensummands, deformed Floer brackets,
Hochschild machinery, and the pearl-count oracle."""

from .scalars import (
    ExtensionField,
    Novikov,
    NovikovField,
    PrimeField,
    QQ,
    field_from_spec,
    rational,
)
from .toric import DiscClass, Superpotential, ToricData, build_superpotential
from .jacobian import QuotientAlgebra, Summand, decompose
from .floer import Character, TorusAction, action_from_summand, sector_potential
from .config import PipelineConfig, load_config
from .pipeline import run_pipeline

__version__ = "0.1.0"

__all__ = [
    "Character",
    "DiscClass",
    "ExtensionField",
    "Novikov",
    "NovikovField",
    "PipelineConfig",
    "PrimeField",
    "QQ",
    "QuotientAlgebra",
    "Summand",
    "Superpotential",
    "ToricData",
    "TorusAction",
    "action_from_summand",
    "build_superpotential",
    "decompose",
    "field_from_spec",
    "load_config",
    "rational",
    "run_pipeline",
    "sector_potential",
]
