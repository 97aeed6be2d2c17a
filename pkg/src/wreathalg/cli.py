"""Command-line front end: build schemes, run verification suites, emit reports.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or
configuration error, 3 internal error.  JSON reports are byte-identical
across runs for a fixed configuration; wall-clock timings therefore go
to the text format only and the ``millis`` field of JSON reports is
pinned to 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from . import __version__
from .scheme import CheckResult, Scheme, load_scheme, save_scheme
from .structure import (
    build_central_idempotents,
    build_matrix_units,
    check_adjacency_action,
    check_block_form,
    check_central_idempotents,
    check_commutation,
    check_matrix_units,
    decomposition_report,
    dimension_formula,
    matrix_block_size,
    one_dim_ideal_count,
    StructureError,
)
from .terwilliger import (
    algebra_dimension,
    check_primary_module,
    check_triple_list,
    check_triply_regular,
    wreath_context,
)
from .wreath import (
    check_moduli,
    check_vanishing_criterion,
    class_indices,
    wreath_of_cyclics,
)

VERIFY_CHECKS = (
    "axioms",
    "vanishing",
    "triple-list",
    "triply-regular",
    "primary-module",
    "block-form",
    "matrix-units",
    "ag-forms",
    "commutation",
    "f-family",
    "decomposition",
)
ORACLE_CHECKS = ("axioms", "triply-regular", "dimension")

DEFAULT_MAX_ORDER = 64
MAX_ORDER_ENV = "WREATHALG_MAX_ORDER"


class ConfigError(ValueError):
    """Invalid flags or configuration; maps to exit code 2."""


@dataclass
class RunConfig:
    moduli: tuple[int, ...]
    base_points: list[int] | None  # None means every vertex
    checks: tuple[str, ...]
    out: str | None
    fmt: str
    max_order: int


def _parse_moduli(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        raise ConfigError(f"--moduli expects comma-separated integers, got {text!r}")
    if not values:
        raise ConfigError("--moduli must name at least one factor")
    try:
        return check_moduli(values)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _parse_base_points(text: str, order: int) -> list[int] | None:
    if text == "all":
        return None
    try:
        points = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ConfigError(f"--base-points expects 'all' or comma-separated integers, got {text!r}")
    if not points:
        raise ConfigError("--base-points must name at least one vertex")
    for x in points:
        if not 0 <= x < order:
            raise ConfigError(f"base point {x} out of range for order {order}")
    return points


def _parse_checks(text: str, allowed) -> tuple[str, ...]:
    names = tuple(tok.strip() for tok in text.split(",") if tok.strip() != "")
    if not names:
        raise ConfigError("--checks must name at least one check")
    for name in names:
        if name not in allowed:
            raise ConfigError(f"unknown check {name!r}; choose from {', '.join(allowed)}")
    return names


def _resolve_max_order(flag_value) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(MAX_ORDER_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"{MAX_ORDER_ENV} must be an integer, got {env!r}")
    return DEFAULT_MAX_ORDER


def _merge_result(slot: CheckResult | None, new: CheckResult) -> CheckResult:
    if slot is None:
        return new
    return CheckResult(
        new.name, slot.passed and new.passed, slot.witness or new.witness, slot.checked + new.checked
    )


def _run_verify_check(name: str, moduli, scheme: Scheme, points: list[int]):
    """Returns (CheckResult, extra-report-fields)."""
    extra: dict = {}
    if name == "axioms":
        report = scheme.verify_axioms()
        witness = "; ".join(f"{k}: {v}" for k, v in report.counterexamples.items()) or None
        return CheckResult("axioms", report.passed, witness, 4), extra
    if name == "vanishing":
        return check_vanishing_criterion(moduli), extra
    if name == "triple-list":
        result = None
        for x in points:
            result = _merge_result(result, check_triple_list(moduli, x))
            if not result.passed:
                break
        return result, extra
    if name == "triply-regular":
        report = check_triply_regular(scheme, points)
        witness = report.witness
        if report.dims_consistent is False:
            witness = witness or "span-equality cross-check disagrees with the sweep"
        return CheckResult("triply-regular", report.passed, witness, report.checked), extra
    if name == "primary-module":
        result = None
        for x in points:
            result = _merge_result(result, check_primary_module(wreath_context(moduli, x)))
            if not result.passed:
                break
        return result, extra
    if name == "block-form":
        result = None
        for x in points:
            ctx = wreath_context(moduli, x)
            for index in class_indices(moduli):
                if index.level == 0:
                    continue
                result = _merge_result(result, check_block_form(ctx, index))
                if not result.passed:
                    return result, extra
        return result, extra
    if name in ("matrix-units", "ag-forms", "f-family"):
        result = None
        for x in points:
            ctx = wreath_context(moduli, x)
            try:
                units = build_matrix_units(ctx)
            except StructureError as exc:
                return CheckResult(name, False, str(exc)), extra
            if name == "matrix-units":
                partial = check_matrix_units(units)
            elif name == "ag-forms":
                partial = check_adjacency_action(ctx, units)
            else:
                partial = check_central_idempotents(ctx, build_central_idempotents(ctx), units)
            result = _merge_result(result, partial)
            if not result.passed:
                break
        return result, extra
    if name == "commutation":
        result = None
        for x in points:
            result = _merge_result(result, check_commutation(wreath_context(moduli, x)))
            if not result.passed:
                break
        return result, extra
    if name == "decomposition":
        report = decomposition_report(moduli, points)
        extra["dim_T"] = report.dim_T
        failed = [c for c in report.checks if not c.passed]
        witness = failed[0].witness if failed else None
        if report.dim_T != report.dim_formula and witness is None:
            witness = f"oracle dimension {report.dim_T} != formula {report.dim_formula}"
        return (
            CheckResult(
                "decomposition",
                report.passed,
                witness,
                sum(c.checked for c in report.checks),
            ),
            extra,
        )
    raise ConfigError(f"unknown check {name!r}")


def _report_skeleton(checks: list[dict], **fields) -> dict:
    report = {
        "moduli": fields.get("moduli"),
        "order": fields.get("order"),
        "num_classes": fields.get("num_classes"),
        "base_points": fields.get("base_points"),
        "dim_T": fields.get("dim_T"),
        "dim_formula": fields.get("dim_formula"),
        "matrix_block": fields.get("matrix_block"),
        "one_dim_count": fields.get("one_dim_count"),
        "checks": checks,
        "version": __version__,
    }
    return report


def _emit(report: dict, fmt: str, out: str | None, timings: dict[str, int]) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = []
        lines.append(
            f"moduli={report['moduli']} order={report['order']} "
            f"classes={report['num_classes']} base_points={report['base_points']}"
        )
        lines.append(
            f"dim_T={report['dim_T']} dim_formula={report['dim_formula']} "
            f"matrix_block={report['matrix_block']} one_dim_count={report['one_dim_count']}"
        )
        for check in report["checks"]:
            status = check["status"].upper()
            millis = timings.get(check["name"], 0)
            line = f"{check['name']}: {status} ({millis} ms)"
            if check.get("witness"):
                line += f" -- {check['witness']}"
            lines.append(line)
        overall = "PASS" if all(c["status"] == "pass" for c in report["checks"]) else "FAIL"
        lines.append(f"overall: {overall}")
        text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _verify_config(args) -> RunConfig:
    max_order = _resolve_max_order(args.max_order)
    moduli = _parse_moduli(args.moduli)
    order = 1
    for p in moduli:
        order *= p
    if order > max_order:
        raise ConfigError(f"order {order} exceeds the cap {max_order}")
    checks = _parse_checks(args.checks, VERIFY_CHECKS) if args.checks else VERIFY_CHECKS
    base_points = _parse_base_points(args.base_points, order)
    return RunConfig(moduli, base_points, checks, args.out, args.format, max_order)


def cmd_verify(args) -> int:
    cfg = _verify_config(args)
    scheme = wreath_of_cyclics(cfg.moduli)
    points = list(range(scheme.order)) if cfg.base_points is None else cfg.base_points

    results: list[CheckResult] = []
    timings: dict[str, int] = {}
    dim_T = None
    for name in cfg.checks:
        started = time.monotonic()
        result, extra = _run_verify_check(name, cfg.moduli, scheme, points)
        timings[name] = int((time.monotonic() - started) * 1000)
        results.append(result)
        if "dim_T" in extra:
            dim_T = extra["dim_T"]

    report = _report_skeleton(
        [
            {"name": r.name, "status": "pass" if r.passed else "fail"}
            | ({"witness": r.witness} if r.witness else {})
            | {"millis": 0}
            for r in results
        ],
        moduli=list(cfg.moduli),
        order=scheme.order,
        num_classes=scheme.classes,
        base_points=points,
        dim_T=dim_T,
        dim_formula=dimension_formula(cfg.moduli),
        matrix_block=matrix_block_size(cfg.moduli),
        one_dim_count=one_dim_ideal_count(cfg.moduli),
    )
    _emit(report, cfg.fmt, cfg.out, timings)
    return 0 if all(r.passed for r in results) else 1


def cmd_oracle(args) -> int:
    try:
        scheme = load_scheme(args.table)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read scheme table: {exc}")
    checks = _parse_checks(args.checks, ORACLE_CHECKS) if args.checks else ORACLE_CHECKS
    base_points = _parse_base_points(args.base_points, scheme.order)
    points = list(range(scheme.order)) if base_points is None else base_points

    axiom_report = scheme.verify_axioms()
    results: list[CheckResult] = []
    timings: dict[str, int] = {}
    dim_T = None
    for name in checks:
        started = time.monotonic()
        if name == "axioms":
            witness = "; ".join(f"{k}: {v}" for k, v in axiom_report.counterexamples.items()) or None
            results.append(CheckResult("axioms", axiom_report.passed, witness, 4))
        elif not axiom_report.passed:
            results.append(CheckResult(name, False, "skipped: the axioms do not hold"))
        elif name == "triply-regular":
            report = check_triply_regular(scheme, points)
            witness = report.witness
            if report.dims_consistent is False:
                witness = witness or "span-equality cross-check disagrees with the sweep"
            results.append(CheckResult("triply-regular", report.passed, witness, report.checked))
        elif name == "dimension":
            dims = [algebra_dimension(scheme, x) for x in points]
            constant = all(d == dims[0] for d in dims)
            dim_T = dims[0] if constant else None
            witness = None if constant else f"dimension varies over base points: {dims}"
            results.append(CheckResult("dimension", True, witness, len(dims)))
        timings[name] = int((time.monotonic() - started) * 1000)

    report = _report_skeleton(
        [
            {"name": r.name, "status": "pass" if r.passed else "fail"}
            | ({"witness": r.witness} if r.witness else {})
            | {"millis": 0}
            for r in results
        ],
        moduli=None,
        order=scheme.order,
        num_classes=scheme.classes,
        base_points=points,
        dim_T=dim_T,
        dim_formula=None,
        matrix_block=None,
        one_dim_count=None,
    )
    _emit(report, args.format, args.out, timings)
    return 0 if all(r.passed for r in results) else 1


def _entry_json(value) -> dict:
    return {"conductor": value.conductor, "coeffs": [str(c) for c in value.coeffs]}


def cmd_export(args) -> int:
    max_order = _resolve_max_order(args.max_order)
    moduli = _parse_moduli(args.moduli)
    order = 1
    for p in moduli:
        order *= p
    if order > max_order:
        raise ConfigError(f"order {order} exceeds the cap {max_order}")
    scheme = wreath_of_cyclics(moduli)
    try:
        save_scheme(scheme, args.out)
        if args.matrices:
            dump = {
                "moduli": list(moduli),
                "order": scheme.order,
                "num_classes": scheme.classes,
                "matrices": [
                    {
                        "class": i,
                        "rows": [
                            [_entry_json(v) for v in row]
                            for row in scheme.adjacency_matrix(i).data
                        ],
                    }
                    for i in range(scheme.classes)
                ],
            }
            with open(args.matrices, "w", encoding="utf-8") as handle:
                json.dump(dump, handle, indent=2)
                handle.write("\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wreathalg",
        description="Exact verification of wreath-product Terwilliger algebra structure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="build a wreath of cyclic schemes and verify it")
    verify.add_argument("--moduli", required=True, help="comma-separated cyclic orders, e.g. 2,3")
    verify.add_argument("--base-points", default="all", help="'all' or comma-separated vertices")
    verify.add_argument("--checks", default=None, help=f"subset of: {','.join(VERIFY_CHECKS)}")
    verify.add_argument("--out", default=None, help="write the report to this path")
    verify.add_argument("--format", choices=("json", "text"), default="json")
    verify.add_argument("--max-order", type=int, default=None, help="safety cap on the order")
    verify.set_defaults(func=cmd_verify)

    oracle = sub.add_parser("oracle", help="run generic checks on an ingested class table")
    oracle.add_argument("table", help="path to a class table file")
    oracle.add_argument("--base-points", default="all")
    oracle.add_argument("--checks", default=None, help=f"subset of: {','.join(ORACLE_CHECKS)}")
    oracle.add_argument("--out", default=None)
    oracle.add_argument("--format", choices=("json", "text"), default="json")
    oracle.set_defaults(func=cmd_oracle)

    export = sub.add_parser("export", help="write a class table (and optional matrix dumps)")
    export.add_argument("--moduli", required=True)
    export.add_argument("--out", required=True, help="path for the class table")
    export.add_argument("--matrices", default=None, help="optional path for exact matrix dumps")
    export.add_argument("--max-order", type=int, default=None)
    export.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
