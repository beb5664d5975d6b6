"""Command line front end.

Commands wrap the service handlers one to one and render their response
models as plain text (or JSON with --json). Exit codes: 0 success, 2
malformed input, 3 divisor data that is not a Gizatullin presentation,
4 toric input handed to a command that needs the general machinery.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from pydantic import ValidationError

from .classify import BadParameters, BadToricType
from .dpd import InvalidPair, NotGizatullin, ToricInput
from .service import (
    AnalyzeReport,
    ClassifyReport,
    DgReport,
    ExtendedReport,
    PairDocument,
    RigidityReportOut,
    ToricReport,
    analyze_pair,
    classify_doc,
    extended_pair,
    dg_report,
    rigidity_pair,
    toric_report,
)

EXIT_INPUT = 2
EXIT_NOT_GIZATULLIN = 3
EXIT_TORIC = 4


class CommandError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _load_document(path: str) -> PairDocument:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise CommandError(EXIT_INPUT, f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CommandError(EXIT_INPUT, f"not valid JSON: {exc}") from exc
    try:
        return PairDocument.model_validate(raw)
    except ValidationError as exc:
        raise CommandError(EXIT_INPUT, f"bad document: {exc}") from exc


def _run(doc_handler, *args):
    try:
        return doc_handler(*args)
    except NotGizatullin as exc:
        raise CommandError(EXIT_NOT_GIZATULLIN, str(exc)) from exc
    except (ToricInput, BadToricType) as exc:
        raise CommandError(EXIT_TORIC, str(exc)) from exc
    except (InvalidPair, BadParameters, ValueError) as exc:
        raise CommandError(EXIT_INPUT, str(exc)) from exc


def _run_params(handler, *args):
    """For commands whose input is bare numbers: every rejection is exit 2."""
    try:
        return handler(*args)
    except ValueError as exc:
        raise CommandError(EXIT_INPUT, str(exc)) from exc


def _singular_line(report: AnalyzeReport) -> str:
    if not report.singular_points:
        return "singular points: none"
    parts = [
        f"({sp.delta},{sp.e}) at {sp.point}" for sp in report.singular_points
    ]
    return "singular points: " + "; ".join(parts)


def _text_analyze(report: AnalyzeReport) -> str:
    lines = [report.summary]
    lines.append(f"toric: {'yes' if report.toric else 'no'}")
    if report.w_s is not None:
        lines.append(f"w_s: {report.w_s}")
    lines.append(_singular_line(report))
    if report.exceptional_smooth_family is not None:
        tag = "yes" if report.exceptional_smooth_family else "no"
        lines.append(f"exceptional smooth family: {tag}")
    return "\n".join(lines)


def _feather_text(bridge: int, box: list[int]) -> str:
    if not box:
        return f"[{bridge}]"
    return f"[{bridge}; " + ",".join(str(w) for w in box) + "]"


def _text_extended(report: ExtendedReport) -> str:
    lines = [
        report.display,
        f"zigzag: {report.zigzag}",
        f"C_s: C_{report.s_index}",
        f"C_n: C_{report.n_index}",
    ]
    for fe in report.feathers:
        lines.append(
            f"feather at {fe.at}: {_feather_text(fe.bridge, fe.box)}"
        )
    return "\n".join(lines)


def _text_classify(report: ClassifyReport) -> str:
    psi = report.inverse_conjugate
    return "\n".join(
        [
            f"alpha+: {'yes' if report.alpha_plus else 'no'}",
            f"alpha*: {'yes' if report.alpha_star else 'no'}",
            f"beta: {'yes' if report.beta else 'no'}",
            f"C*-action: {report.cstar_verdict}",
            f"inverse conjugate: {psi if psi is not None else 'none'}",
            f"fibration classes: {report.fibration_classes}",
        ]
    )


def _text_toric(report: ToricReport) -> str:
    return "\n".join(
        [
            f"toric (d,e)=({report.d},{report.e}) zigzag {report.zigzag}",
            f"classes: {report.classes}",
        ]
    )


def _doc_text(doc: PairDocument) -> str:
    def side(entries):
        if not entries:
            return "0"
        return " + ".join(f"{c}[{p}]" for p, c in entries)

    return f"D_+ = {side(doc.d_plus)}, D_- = {side(doc.d_minus)}"


def _text_dg(report: DgReport) -> str:
    return "\n".join(
        [
            f"k={report.k} r={report.r}",
            _doc_text(report.pair),
            _text_extended(report.extended),
        ]
    )


def _emit(args, report, text: str) -> None:
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(text)


def _cmd_analyze(args) -> None:
    report = _run(analyze_pair, _load_document(args.file))
    _emit(args, report, _text_analyze(report))


def _cmd_extended(args) -> None:
    report = _run(extended_pair, _load_document(args.file), args.reversed)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(report.dot)
    _emit(args, report, _text_extended(report))


def _cmd_rigidity(args) -> None:
    report: RigidityReportOut = _run(
        rigidity_pair, _load_document(args.file), args.reversed
    )
    _emit(args, report, report.display)


def _cmd_classify(args) -> None:
    report = _run(classify_doc, _load_document(args.file))
    _emit(args, report, _text_classify(report))


def _cmd_toric(args) -> None:
    report = _run_params(toric_report, args.d, args.e)
    _emit(args, report, _text_toric(report))


def _cmd_dg(args) -> None:
    report = _run_params(dg_report, args.k, args.r)
    _emit(args, report, _text_dg(report))


def _cmd_serve(args) -> None:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpdkit",
        description="Exact toolkit for C*-surfaces given by divisor pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(p):
        p.add_argument("file", help="JSON document with d_plus/d_minus")
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    with_file(sub.add_parser("analyze", help="validity, zigzag, singularities"))

    p_ext = with_file(sub.add_parser("extended", help="extended divisor"))
    p_ext.add_argument(
        "--reversed", action="store_true", help="use the swapped pair"
    )
    p_ext.add_argument("--dot", metavar="PATH", help="write Graphviz text")

    p_rig = with_file(sub.add_parser("rigidity", help="rigidity report"))
    p_rig.add_argument(
        "--reversed", action="store_true", help="use the swapped pair"
    )

    with_file(sub.add_parser("classify", help="uniqueness and fibrations"))

    p_toric = sub.add_parser("toric", help="toric surface V_{d,e} data")
    p_toric.add_argument("d", type=int)
    p_toric.add_argument("e", type=int)
    p_toric.add_argument("--json", action="store_true", help="emit JSON")

    p_dg = sub.add_parser("dg", help="Danilov-Gizatullin surface data")
    p_dg.add_argument("k", type=int)
    p_dg.add_argument("r", type=int)
    p_dg.add_argument("--json", action="store_true", help="emit JSON")

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


_HANDLERS = {
    "analyze": _cmd_analyze,
    "extended": _cmd_extended,
    "rigidity": _cmd_rigidity,
    "classify": _cmd_classify,
    "toric": _cmd_toric,
    "dg": _cmd_dg,
    "serve": _cmd_serve,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _HANDLERS[args.command](args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
