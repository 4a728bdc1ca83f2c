"""Command line front end.

Exit codes are uniform across subcommands: 0 for an affirmative or
successfully computed answer, 1 for a negative answer, 2 when the inputs
leave the question undecided (missing flags, no applicable backend, out of
scope), 3 for malformed input. Every subcommand takes --json for a
machine-readable report on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import boundary, localplumb, schema, spin, strata
from .differentials import (
    NotPlumbable,
    Plumbable,
    Undecided,
    component_scalings,
    is_plumbable,
    validate,
)
from .flags import GeometryFlags, require_valid_flags
from .homology import ScopeError, arf_invariant, find_symplectic_system, q_invariant
from .strata import StratumSignature

OK, NEGATIVE, UNDECIDED, BAD_INPUT = 0, 1, 2, 3


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return BAD_INPUT


def _load(path: str, want: str) -> object:
    doc = schema.load_path(path)
    if doc.kind != want:
        raise schema.SchemaError(f"expected a {want} document, found {doc.kind}", "/kind")
    return doc.value


def _load_flags(path: str | None) -> GeometryFlags:
    if path is None:
        return GeometryFlags.empty()
    value = _load(path, "flags")
    assert isinstance(value, GeometryFlags)
    return value


def _emit(args: argparse.Namespace, report: dict, text: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
    else:
        for line in text:
            print(line)


# -- subcommands -----------------------------------------------------------------


def _cmd_check(args: argparse.Namespace) -> int:
    paths: list[Path]
    if args.all_fixtures:
        base = Path(args.fixture_dir)
        paths = sorted(base.glob("*.json"))
        if not paths:
            return _fail(f"no fixture documents under {base}")
    elif args.files:
        paths = [Path(p) for p in args.files]
    else:
        return _fail("give document paths or --all-fixtures")

    worst = OK
    report = []
    for path in paths:
        try:
            doc = schema.load_path(str(path))
        except schema.SchemaError as err:
            report.append({"file": str(path), "kind": None, "ok": False, "problems": [str(err)]})
            worst = BAD_INPUT
            continue
        problems: list[str] = []
        if doc.kind == "candidate_differential":
            problems = validate(doc.value)
        entry = {"file": str(path), "kind": doc.kind, "ok": not problems, "problems": problems}
        report.append(entry)
        if problems:
            worst = max(worst, NEGATIVE)
    lines = []
    for entry in report:
        mark = "ok" if entry["ok"] else "FAIL"
        lines.append(f"{entry['file']}: {entry['kind'] or 'unreadable'} {mark}")
        for p in entry["problems"]:
            lines.append(f"  - {p}")
    _emit(args, {"documents": report}, lines)
    return worst


def _cmd_plumb(args: argparse.Namespace) -> int:
    c = _load(args.file, "candidate_differential")
    problems = validate(c)
    if problems:
        return _fail("invalid candidate:\n" + "\n".join(f"  - {p}" for p in problems))
    verdict = is_plumbable(c)
    report: dict = {"verdict": type(verdict).__name__}
    lines = []
    if isinstance(verdict, Plumbable):
        cert = verdict.certificate
        exponents = {e: str(x) for e, x in sorted((cert.exponent or {}).items())}
        report |= {"exponents": exponents}
        lines.append("plumbable")
        for e, x in exponents.items():
            lines.append(f"  scaling exponent {e}: {x}")
        if args.base is not None:
            scaling = component_scalings(c, cert, args.base)
            comp = {v: str(x) for v, x in sorted(scaling.exponent.items())}
            report |= {"component_scalings": comp, "base": args.base}
            for v, x in comp.items():
                lines.append(f"  component {v}: {x}")
        code = OK
    elif isinstance(verdict, NotPlumbable):
        report |= {"reason": verdict.reason}
        if verdict.certificate is not None and verdict.certificate.farkas_row:
            row = {e: str(x) for e, x in sorted(verdict.certificate.farkas_row.items())}
            report |= {"farkas_row": row}
        lines.append(f"not plumbable: {verdict.reason}")
        code = NEGATIVE
    else:
        assert isinstance(verdict, Undecided)
        report |= {"reason": verdict.reason}
        lines.append(f"undecided: {verdict.reason}")
        code = UNDECIDED
    _emit(args, report, lines)
    return code


def _cmd_parity(args: argparse.Namespace) -> int:
    c = _load(args.file, "candidate_differential")
    flags = _load_flags(args.flags)
    require_valid_flags(flags, c.graph)
    try:
        structure = spin.spin_of_candidate(c, flags)
    except spin.SpinResolutionError as err:
        print(f"undecided: {err}", file=sys.stderr)
        return UNDECIDED
    parity = structure.parity()
    breakdown = {v: t.h0() for v, t in sorted(structure.theta.items())}
    _emit(
        args,
        {"parity": parity, "parity_name": "odd" if parity else "even", "h0": breakdown},
        [f"parity: {'odd' if parity else 'even'}"]
        + [f"  h0 at {v}: {h}" for v, h in breakdown.items()],
    )
    return OK


def _cmd_count_spin(args: argparse.Namespace) -> int:
    even, odd = spin.count_spin_parities(args.genus)
    _emit(args, {"even": even, "odd": odd}, [f"({even}, {odd})"])
    return OK


def _cmd_arf(args: argparse.Namespace) -> int:
    surface = _load(args.file, "surface")
    system = find_symplectic_system(surface)
    try:
        value = arf_invariant(system)
    except ScopeError as err:
        print(f"undecided: {err}", file=sys.stderr)
        return UNDECIDED
    pair_q = [[q_invariant(a), q_invariant(b)] for a, b in system.pairs]
    _emit(
        args,
        {"arf": value, "pair_q": pair_q},
        [f"arf = {value}"],
    )
    return OK


def _signature_from_args(args: argparse.Namespace) -> StratumSignature:
    if args.file:
        value = _load(args.file, "stratum_query")
        assert isinstance(value, StratumSignature)
        return value
    if args.genus is None or not args.orders:
        raise schema.SchemaError("give GENUS and ORDERS, or --file", "")
    return StratumSignature(args.genus, tuple(args.orders), args.tag)


def _cmd_stratum(args: argparse.Namespace) -> int:
    s = _signature_from_args(args)
    strata.require_tag_exists(s)
    comps = strata.components(s.with_tag(None))
    if s.tag is None and len(comps) > 1:
        kod_rows = [
            (comp.tag, strata.kodaira_dimension(s.with_tag(comp.tag))) for comp in comps
        ]
    else:
        kod_rows = [(s.tag, strata.kodaira_dimension(s))]
    report = {
        "signature": str(s),
        "dimension": s.dimension(),
        "projective_dimension": s.dimension(projective=True),
        "components": [
            {"tag": comp.tag, "spin_parity": comp.spin_parity} for comp in comps
        ],
        "projection_dimension": strata.projection_dimension(s),
        "kodaira": [
            {"tag": tag, "verdict": str(kod.verdict), "reason": kod.reason}
            for tag, kod in kod_rows
        ],
    }
    lines = [
        str(s),
        f"dimension {s.dimension()} (projective {s.dimension(projective=True)})",
        "components: "
        + ", ".join(
            comp.tag + ("" if comp.spin_parity is None else f" (parity {comp.spin_parity})")
            for comp in comps
        ),
        f"projection dimension {strata.projection_dimension(s)}",
    ]
    for tag, kod in kod_rows:
        label = f" [{tag}]" if tag is not None else ""
        lines.append(f"kodaira{label}: {kod.verdict} ({kod.reason})")
    _emit(args, report, lines)
    return OK


def _cmd_classify(args: argparse.Namespace) -> int:
    c = _load(args.file, "candidate_differential")
    flags = _load_flags(args.flags)
    require_valid_flags(flags, c.graph)
    problems = validate(c)
    if problems:
        return _fail("invalid candidate:\n" + "\n".join(f"  - {p}" for p in problems))
    g = c.graph.arithmetic_genus()
    legs = c.graph.legs()
    if len(legs) != 1:
        return _fail("the boundary classifiers need exactly one marked zero")
    order = c.leg_order[legs[0]]
    if g == 3 and order == 4:
        verdict = boundary.classify_g3_odd(c, flags)
    elif order == 2 * g - 2:
        verdict = boundary.classify_hyp_minimal(c, flags)
    else:
        return _fail(
            f"no classifier for a genus {g} candidate with zero order {order}; "
            "supported: the minimal zero 2g-2, and genus 3 with a single zero of order 4"
        )
    check = boundary.cross_check_parity(c, flags, verdict)
    report = {
        "membership": {
            tag: {"status": str(m.status), "reason": m.reason}
            for tag, m in sorted(verdict.membership.items())
        },
        "fibre_dimension": verdict.fibre_dimension,
        "parity_cross_check": {
            "checked": list(check.checked),
            "skipped": [list(s) for s in check.skipped],
            "parity": check.parity,
        },
    }
    lines = []
    for tag, m in sorted(verdict.membership.items()):
        lines.append(f"{tag}: {m.status} ({m.reason})")
    if verdict.fibre_dimension is not None:
        lines.append(f"fibre dimension {verdict.fibre_dimension}")
    for tag in check.checked:
        lines.append(f"parity cross-check passed for {tag}")
    for tag, why in check.skipped:
        lines.append(f"parity cross-check skipped for {tag}: {why}")

    statuses = {m.status for m in verdict.membership.values()}
    if boundary.Status.UNDECIDED in statuses:
        code = UNDECIDED
    elif boundary.Status.IN_CLOSURE in statuses:
        code = OK
    else:
        code = NEGATIVE
    _emit(args, report, lines)
    return code


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise schema.SchemaError(f"bad complex number {text!r}", "") from None


def _cmd_verify_local(args: argparse.Namespace) -> int:
    if args.order is not None:
        cases = [
            localplumb.LocalModel(
                args.order, _parse_complex(args.scale), _parse_complex(args.residue_coefficient)
            )
        ]
    else:
        cases = [
            localplumb.LocalModel(k, scale, coeff)
            for k in (-1, 0, 1, 2, 3)
            for scale in (1e-2, 1e-3)
            for coeff in (0, 1, 2 + 1j)
        ]
    rows = []
    ok = True
    for model in cases:
        rep = localplumb.pullback_check(model)
        good = rep.within(args.chart_tol, args.residue_tol)
        ok = ok and good
        rows.append((model, rep, good))
    lines = []
    for model, rep, good in rows:
        lines.append(
            f"k={model.zero_order:+d} |t|={abs(model.scale):g} c={model.residue_coefficient}: "
            f"chart errors {rep.max_error_first:.2e} / {rep.max_error_second:.2e}, "
            f"residue error {rep.residue_error:.2e} [{'ok' if good else 'FAIL'}]"
        )
    report = {
        "cases": [
            {
                "zero_order": model.zero_order,
                "scale": str(model.scale),
                "residue_coefficient": str(model.residue_coefficient),
                "max_error_first": rep.max_error_first,
                "max_error_second": rep.max_error_second,
                "residue_error": rep.residue_error,
                "ok": good,
            }
            for model, rep, good in rows
        ],
        "ok": ok,
    }
    _emit(args, report, lines)
    return OK if ok else NEGATIVE


# -- wiring ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="limitdiff",
        description="decide, certify, and classify degenerations of differentials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_json(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = with_json(sub.add_parser("check", help="parse documents and validate candidates"))
    p.add_argument("files", nargs="*", help="document paths")
    p.add_argument("--all-fixtures", action="store_true", help="check every fixture document")
    p.add_argument("--fixture-dir", default="fixtures", help="directory for --all-fixtures")
    p.set_defaults(func=_cmd_check)

    p = with_json(sub.add_parser("plumb", help="decide plumbability with an exact certificate"))
    p.add_argument("file", help="candidate_differential document")
    p.add_argument("--base", help="also derive component scalings relative to this vertex")
    p.set_defaults(func=_cmd_plumb)

    p = with_json(sub.add_parser("parity", help="spin parity of a candidate"))
    p.add_argument("file", help="candidate_differential document")
    p.add_argument("--flags", help="flags document")
    p.set_defaults(func=_cmd_parity)

    p = with_json(sub.add_parser("count-spin", help="count even and odd theta characteristics"))
    p.add_argument("genus", type=int)
    p.set_defaults(func=_cmd_count_spin)

    p = with_json(sub.add_parser("arf", help="Arf invariant of a translation surface"))
    p.add_argument("file", help="surface document")
    p.set_defaults(func=_cmd_arf)

    p = with_json(sub.add_parser("stratum", help="components, dimensions, and Kodaira table"))
    p.add_argument("genus", type=int, nargs="?")
    p.add_argument("orders", type=int, nargs="*")
    p.add_argument("--tag", choices=list(strata.TAGS))
    p.add_argument("--file", help="stratum_query document instead of positional arguments")
    p.set_defaults(func=_cmd_stratum)

    p = with_json(sub.add_parser("classify", help="boundary membership per component"))
    p.add_argument("file", help="candidate_differential document")
    p.add_argument("--flags", help="flags document")
    p.set_defaults(func=_cmd_classify)

    p = with_json(
        sub.add_parser("verify-local-plumbing", help="numeric check of the local node model")
    )
    p.add_argument("--order", type=int, help="zero order k (default: sweep)")
    p.add_argument("--scale", default="1e-2", help="plumbing scale t")
    p.add_argument("--residue-coefficient", default="0", help="coefficient c")
    p.add_argument("--chart-tol", type=float, default=1e-9)
    p.add_argument("--residue-tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_verify_local)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except schema.SchemaError as err:
        return _fail(str(err))
    except FileNotFoundError as err:
        return _fail(str(err))
    except (ValueError, ArithmeticError) as err:
        return _fail(str(err))


if __name__ == "__main__":
    sys.exit(main())
