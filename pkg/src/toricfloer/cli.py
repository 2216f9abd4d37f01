"""Command-line entry point.

Subcommands: potential, jacobian, summands, verify, pearl-oracle, report.
Exit codes: 0 pass, 1 verification failure, 2 input error.  All randomness is
seeded (--seed) and recorded in the output, so reports are byte-identical
across runs with identical config and seed; timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import floer, pearl
from .cache import GroebnerCache, poly_to_json
from .config import ConfigError, load_config, scalar_to_json
from .jacobian import decompose
from .pipeline import build_quotient, report_to_json, run_pipeline
from .puiseux import SplitFieldError
from .scalars import rational
from .suite import run_battery

EXIT_PASS = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2


def _add_common(p: argparse.ArgumentParser, needs_config: bool = True):
    p.add_argument("--config", type=Path, required=needs_config, help="input document (JSON or TOML)")
    p.add_argument("--seed", type=int, default=None, help="override the configured seed")
    p.add_argument("--precision", type=str, default=None, help="override precision, as p/q")
    p.add_argument("--cache", type=Path, default=None, help="Groebner cache directory")
    p.add_argument("--out", type=Path, default=None, help="write the JSON result here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricfloer",
        description="Exact verification of toric superpotential algebra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("potential", help="assemble the superpotential")
    _add_common(p)

    p = sub.add_parser("jacobian", help="Jacobian ideal, Groebner basis, quotient basis")
    _add_common(p)

    p = sub.add_parser("summands", help="eigensummand decomposition and per-summand data")
    _add_common(p)

    p = sub.add_parser("report", help="full pipeline verification report")
    _add_common(p)
    p.add_argument("--level", choices=("quick", "full"), default=None)

    p = sub.add_parser("pearl-oracle", help="pearl-count oracle for a monotone example")
    _add_common(p)
    p.add_argument("--bound", type=int, default=None, help="multiplicity bound |c|")
    p.add_argument("--resamples", type=int, default=None)

    p = sub.add_parser("verify", help="run the acceptance battery")
    _add_common(p, needs_config=False)
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


def _emit(doc: dict, out: Path | None) -> None:
    text = report_to_json(doc)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _load(args) -> object:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.precision is not None:
        cfg.precision = rational(args.precision)
    if getattr(args, "level", None):
        cfg.level = args.level
    if args.cache is not None:
        cfg.cache_dir = args.cache
    return cfg


def _group_ring_json(domain, gr) -> list:
    return [[list(g), scalar_to_json(domain, c)] for g, c in sorted(gr.coeffs.items())]


def cmd_potential(args) -> int:
    cfg = _load(args)
    from .toric import build_superpotential

    W = build_superpotential(cfg.toric, cfg.domain, cfg.mode, cfg.corrections)
    doc = {
        "mode": cfg.mode,
        "classes": [
            {
                "area": str(b.area),
                "boundary": list(b.boundary),
                "coefficient": scalar_to_json(cfg.field, b.coefficient),
                "pairings": list(b.pairings),
            }
            for b in W.classes
        ],
        "superpotential": _group_ring_json(cfg.domain, W.group_ring()),
    }
    _emit(doc, args.out)
    return EXIT_PASS


def cmd_jacobian(args) -> int:
    cfg = _load(args)
    cache = GroebnerCache(cfg.cache_dir) if cfg.cache_dir else None
    q = build_quotient(cfg, cache)
    doc = {
        "variables": [f"y{i+1}" for i in range(q.n)] + ["u"],
        "generators": [poly_to_json(g, cfg.domain) for g in q.generators],
        "groebner": [poly_to_json(g, cfg.domain) for g in q.groebner],
        "dimension": q.dim,
        "monomial_basis": [list(m) for m in q.monomials],
    }
    _emit(doc, args.out)
    return EXIT_PASS


def cmd_summands(args) -> int:
    cfg = _load(args)
    cache = GroebnerCache(cfg.cache_dir) if cfg.cache_dir else None
    q = build_quotient(cfg, cache)
    try:
        summands = decompose(q)
    except SplitFieldError as exc:
        _emit({"status": "extend-field", "error": str(exc)}, args.out)
        return EXIT_VERIFICATION
    doc = {
        "status": "ok",
        "summands": [
            {
                "index": s.index,
                "dim": s.dim,
                "eigenvalues": [scalar_to_json(cfg.domain, v) for v in s.eigenvalues],
                "val_vector": [str(v) for v in s.val_vector],
                "xi": [scalar_to_json(cfg.domain, x) for x in s.xi],
                "psi_nonzero": [not p.is_zero() for p in s.psi],
            }
            for s in summands
        ],
    }
    _emit(doc, args.out)
    return EXIT_PASS


def cmd_report(args) -> int:
    cfg = _load(args)
    cache = GroebnerCache(cfg.cache_dir) if cfg.cache_dir else None
    started = time.perf_counter()
    report = run_pipeline(cfg, cache)
    print(f"pipeline finished in {time.perf_counter() - started:.2f}s", file=sys.stderr)
    _emit(report, args.out)
    if report["status"] == "input-error":
        return EXIT_INPUT
    return EXIT_PASS if report.get("passed") else EXIT_VERIFICATION


def cmd_pearl_oracle(args) -> int:
    cfg = _load(args)
    if cfg.mode != "monotone":
        print("pearl oracle requires monotone mode", file=sys.stderr)
        return EXIT_INPUT
    bound = args.bound if args.bound is not None else cfg.pearl_bound
    resamples = args.resamples if args.resamples is not None else cfg.resamples
    cache = GroebnerCache(cfg.cache_dir) if cfg.cache_dir else None
    q = build_quotient(cfg, cache)
    try:
        summands = decompose(q)
    except SplitFieldError as exc:
        _emit({"status": "extend-field", "error": str(exc)}, args.out)
        return EXIT_VERIFICATION
    rng = random.Random(cfg.seed)
    md = pearl.choose_morse_data(cfg.toric, cfg.seed)
    conditions = pearl.emptiness_checks(md, cfg.toric)
    entries = []
    ok = conditions.all_pass
    for s in summands:
        char = floer.action_from_summand(s).character
        rep = pearl.oracle_compare(md, q.W, char, bound, rng, resamples=resamples)
        ok = ok and rep.all_match
        entries.append(
            {
                "summand": s.index,
                "all_match": rep.all_match,
                "entries": [
                    {
                        "class": e.class_index,
                        "multiplicities": list(e.multiplicities),
                        "counts": e.counts,
                        "expected": e.expected_count,
                        "pass": e.matches,
                        "offsets": [
                            [[str(x) for x in eps] for eps in resample]
                            for resample in e.offset_samples
                        ],
                    }
                    for e in rep.entries
                ],
            }
        )
    doc = {
        "seed": cfg.seed,
        "morse_data": {
            "maximum": [str(x) for x in md.maximum],
            "direction": [str(x) for x in md.direction],
            "bound": str(md.bound),
        },
        "conditions": conditions.as_dict(),
        "oracle": entries,
        "passed": ok,
    }
    _emit(doc, args.out)
    return EXIT_PASS if ok else EXIT_VERIFICATION


def cmd_verify(args) -> int:
    started = time.perf_counter()
    ok, checks = run_battery(args.level, stream=sys.stdout)
    print(f"battery finished in {time.perf_counter() - started:.2f}s", file=sys.stderr)
    if args.out is not None:
        doc = {
            "level": args.level,
            "passed": ok,
            "criteria": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
            ],
        }
        _emit(doc, args.out)
    return EXIT_PASS if ok else EXIT_VERIFICATION


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "potential": cmd_potential,
        "jacobian": cmd_jacobian,
        "summands": cmd_summands,
        "report": cmd_report,
        "pearl-oracle": cmd_pearl_oracle,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SplitFieldError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
