"""Command-line front end.

Subcommands: ore, approx, folner, vdim, homology, betti-finite, selftest.
Inputs are JSON files in the wire formats of ``jsonio``; outputs are CSV
(header ``method,level,normalizer,raw,normalized,certified``) or a JSON
mirror of the same records.  Exit codes: 0 success, 2 malformed input
(diagnostic names the JSON path), 3 unsupported operation (message equals
the library error text).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from . import chains, dimensions, jsonio
from .dimensions import Method, ReportConfig
from .errors import MismatchError, SchemaError, UnsupportedOperationError

RANK_ALGS = ("auto", "dense", "sparse", "bareiss", "prob")


@dataclass(frozen=True)
class Record:
    method: str
    level: int
    normalizer: int
    raw: int
    normalized: Fraction
    certified: bool

    def csv_row(self):
        return [self.method, str(self.level), str(self.normalizer), str(self.raw),
                jsonio.fraction_to_json(self.normalized),
                "true" if self.certified else "false"]

    def to_json(self):
        return {"method": self.method, "level": self.level,
                "normalizer": self.normalizer, "raw": self.raw,
                "normalized": jsonio.fraction_to_json(self.normalized),
                "certified": self.certified}


CSV_HEADER = ["method", "level", "normalizer", "raw", "normalized", "certified"]


def _value_record(value: dimensions.DimensionValue, normalizer: int = 1) -> Record:
    raw = value.value * normalizer
    assert raw.denominator == 1
    return Record(value.method.value, 0, normalizer, int(raw), value.value,
                  value.certified)


def _table_records(table: dimensions.ConvergenceTable) -> List[Record]:
    return [Record(table.method.value, r.level, r.normalizer, r.raw, r.normalized,
                   table.certified) for r in table.rows]


def render(records: List[Record], fmt: str, extra: Optional[dict] = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(rec.csv_row())
        return buf.getvalue()
    payload = {"records": [rec.to_json() for rec in records]}
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse_report(text: str) -> List[Record]:
    """Re-parse an emitted JSON report (the published schema)."""
    obj = json.loads(text)
    if not isinstance(obj, dict):
        raise SchemaError("", "expected an object")
    records = obj.get("records")
    if not isinstance(records, list):
        raise SchemaError("records", "expected an array")
    out = []
    for k, rec in enumerate(records):
        path = f"records[{k}]"
        if not isinstance(rec, dict):
            raise SchemaError(path, "expected an object")
        try:
            out.append(Record(rec["method"], int(rec["level"]),
                              int(rec["normalizer"]), int(rec["raw"]),
                              jsonio.parse_fraction(rec["normalized"],
                                                    f"{path}.normalized"),
                              bool(rec["certified"])))
        except KeyError as exc:
            raise SchemaError(path, f"missing key {exc.args[0]!r}") from None
    return out


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(path, f"cannot read input: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(path, f"invalid JSON: {exc}") from None


def _parse_levels(text: str) -> List[int]:
    try:
        levels = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise SchemaError("--levels", f"expected comma-separated integers, got {text!r}") from None
    if not levels or levels != sorted(set(levels)) or levels[0] < 1:
        raise SchemaError(
            "--levels",
            f"levels must be strictly increasing positive integers: {text!r}")
    return levels


def _parse_tol(text: str) -> Fraction:
    tol = jsonio.parse_fraction(text, "--tol")
    if tol <= 0:
        raise SchemaError("--tol", "tolerance must be positive")
    return tol


def _thread_count() -> int:
    raw = os.environ.get("OREDIM_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise SchemaError("OREDIM_THREADS", f"expected an integer >= 1, got {raw!r}") from None
    if value < 1:
        raise SchemaError("OREDIM_THREADS", f"expected an integer >= 1, got {raw!r}")
    return value


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oredim",
        description="Exact dimension functions for modules over group rings "
                    "of Z^d, the infinite dihedral group, and the Heisenberg group.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="path to a JSON input file")
        p.add_argument("--levels", default=None,
                       help="comma-separated strictly increasing levels")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--rank-alg", choices=RANK_ALGS, default="auto")
        p.add_argument("--tol", default="1/20",
                       help="agreement tolerance as an exact rational, e.g. 1/20")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--min-level", type=int, default=1,
                       help="drop table levels below this value")

    common(sub.add_parser("ore", help="exact Ore dimension of a Z^d module"))
    common(sub.add_parser("approx", help="all dimension functions side by side"))
    common(sub.add_parser("folner", help="Foelner truncation table"))
    common(sub.add_parser("vdim", help="virtual Ore dimension"))
    common(sub.add_parser("homology", help="homology dimensions of a chain complex"))
    common(sub.add_parser("betti-finite",
                          help="Betti numbers of finite quotient groups (Z/n)^d"))
    sub.add_parser("selftest", help="run the acceptance suite")
    return parser


def _run_ore(args) -> List[Record]:
    module = jsonio.decode_module(_load_json(args.input))
    value = dimensions.ore_dim(module, rank_alg=args.rank_alg, seed=args.seed)
    return [_value_record(value)]


def _run_vdim(args) -> List[Record]:
    module = jsonio.decode_module(_load_json(args.input))
    subgroup = dimensions.default_subgroup(module.group)
    value = dimensions.virtual_ore_dim(module, subgroup, rank_alg=args.rank_alg,
                                       seed=args.seed)
    index = dimensions.subgroup_index(module.group, subgroup)
    return [_value_record(value, normalizer=index)]


def _run_folner(args, threads: int) -> List[Record]:
    module = jsonio.decode_module(_load_json(args.input))
    levels = _parse_levels(args.levels) if args.levels else list(
        dimensions.DEFAULT_FOLNER_LEVELS)
    levels = [n for n in levels if n >= args.min_level]
    table = dimensions.elek_truncation_dim(module, levels, rank_alg=args.rank_alg,
                                           max_workers=threads)
    return _table_records(table)


def _run_approx(args, threads: int):
    module = jsonio.decode_module(_load_json(args.input))
    levels = _parse_levels(args.levels) if args.levels else None
    config = ReportConfig(
        quotient_levels=tuple(levels) if levels else dimensions.DEFAULT_QUOTIENT_LEVELS,
        folner_levels=tuple(levels) if levels else dimensions.DEFAULT_FOLNER_LEVELS,
        tol=_parse_tol(args.tol), seed=args.seed, rank_alg=args.rank_alg,
        min_level=max(1, args.min_level), max_workers=threads)
    report = dimensions.approx_report(module, config)
    records = []
    if report.target is not None:
        if report.target.method is Method.VIRTUAL_ORE:
            normalizer = dimensions.subgroup_index(
                module.group, dimensions.default_subgroup(module.group))
        else:
            normalizer = 1
        records.append(_value_record(report.target, normalizer=normalizer))
    for table in report.tables:
        records.extend(_table_records(table))
    extra = {"tol": jsonio.fraction_to_json(report.tol),
             "agreement": report.agreement}
    return records, extra


def _run_homology(args, threads: int) -> List[Record]:
    complex_ = jsonio.decode_complex(_load_json(args.input))
    levels = _parse_levels(args.levels) if args.levels else list(
        dimensions.DEFAULT_QUOTIENT_LEVELS)
    levels = [n for n in levels if n >= args.min_level]
    report = chains.homology_report(complex_, levels, rank_alg=args.rank_alg,
                                    seed=args.seed)
    records = []
    if report.ore is not None:
        for i, v in enumerate(report.ore):
            records.append(Record(f"ore-h{i}", 0, 1, int(v), v, report.certified))
    for row in report.rows:
        for i, (raw, norm) in enumerate(zip(row.dims, row.normalized)):
            records.append(Record(f"quotient-h{i}", row.level, row.index, raw,
                                  norm, True))
    return records


def _run_betti_finite(args) -> List[Record]:
    d, ns, i_max, field = jsonio.decode_betti_request(_load_json(args.input))
    records = []
    for n in ns:
        betti = chains.finite_group_betti(d, n, field, i_max)
        normalizer = n ** d
        for i, b in enumerate(betti):
            records.append(Record(f"finite-betti-b{i}", n, normalizer, b,
                                  Fraction(b, normalizer), True))
    return records


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            from .selftest import run_all
            return 0 if run_all() else 1
        threads = _thread_count()
        extra = None
        if args.command == "ore":
            records = _run_ore(args)
        elif args.command == "vdim":
            records = _run_vdim(args)
        elif args.command == "folner":
            records = _run_folner(args, threads)
        elif args.command == "approx":
            records, extra = _run_approx(args, threads)
        elif args.command == "homology":
            records = _run_homology(args, threads)
        elif args.command == "betti-finite":
            records = _run_betti_finite(args)
        else:  # pragma: no cover - argparse enforces the choices
            raise AssertionError(args.command)
        _emit(render(records, args.format, extra), args.out)
        return 0
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedOperationError, MismatchError) as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
