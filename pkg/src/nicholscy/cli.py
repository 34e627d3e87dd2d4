"""Command-line front end.

Subcommands:

    validate  check braid equation, rigidity, and the Hecke label
    analyze   run the full pipeline and emit a report
    oracle    run the pipeline and report the brute-force cross-check
    builtin   emit the input document for a bundled family

Exit codes: 0 analysis completed (whatever the verdict), 2 input rejected,
1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback

from . import report as report_mod
from .errors import AnalysisError
from .families import BUILTIN_NAMES


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _add_common(sub: argparse.ArgumentParser, with_cap: bool = True) -> None:
    sub.add_argument("input", help="input document path, or '-' for stdin")
    sub.add_argument(
        "--convention",
        choices=("standard", "transpose"),
        default=None,
        help="table orientation: rows are input pairs (standard) or output pairs",
    )
    sub.add_argument(
        "--format", choices=("json", "text"), default="json", help="output format"
    )
    if with_cap:
        sub.add_argument(
            "--cap", type=int, default=None, help="degree cap override (>= 2)"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nicholscy",
        description="Calabi-Yau analysis of Hecke-type Nichols algebras",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_val = subs.add_parser("validate", help="validate a braiding table")
    _add_common(p_val, with_cap=False)
    p_val.set_defaults(func=_cmd_validate)

    p_an = subs.add_parser("analyze", help="run the full analysis")
    _add_common(p_an)
    p_an.add_argument(
        "--figures",
        metavar="DIR",
        default=None,
        help="also render figures and a dims CSV into DIR",
    )
    p_an.set_defaults(func=_cmd_analyze)

    p_or = subs.add_parser("oracle", help="run the brute-force cross-check")
    _add_common(p_or)
    p_or.set_defaults(func=_cmd_oracle)

    p_bi = subs.add_parser("builtin", help="emit a bundled family's input document")
    p_bi.add_argument("name", choices=BUILTIN_NAMES)
    p_bi.add_argument(
        "--qmatrix",
        default=None,
        help="JSON q-matrix for the diagonal family, e.g. '[[1,\"2\"],[\"1/2\",1]]'",
    )
    p_bi.add_argument("--label", default=None, help="optional label hint q")
    p_bi.set_defaults(func=_cmd_builtin)

    return parser


def _cmd_validate(args) -> int:
    spec = report_mod.parse_input(_read_source(args.input))
    doc = report_mod.validate_document(spec, args.convention)
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        lines = [f"validate: {doc['name']} (dimension {doc['dimension']})"]
        for key in ("braid_equation", "rigidity"):
            if doc[key] is not None:
                lines.append(f"  {key.replace('_', ' ')}: {'ok' if doc[key] else 'FAIL'}")
        if doc["q"] is not None:
            lines.append(f"  label q = {doc['q']}")
        if doc["failure"]:
            lines.append(f"  rejected [{doc['failure']['code']}]: {doc['failure']['message']}")
        print("\n".join(lines))
    return 0 if doc["valid"] else 2


def _cmd_analyze(args) -> int:
    spec = report_mod.parse_input(_read_source(args.input))
    rep = report_mod.analyze(spec, cap=args.cap, convention=args.convention)
    sys.stdout.write(report_mod.emit_report(rep, args.format).decode())
    if args.figures:
        from .figures import render_figures

        paths = render_figures(rep, args.figures)
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    return 0 if rep.completed else 2


def _cmd_oracle(args) -> int:
    spec = report_mod.parse_input(_read_source(args.input))
    rep = report_mod.analyze(spec, cap=args.cap, convention=args.convention)
    if not rep.completed:
        sys.stdout.write(report_mod.emit_report(rep, args.format).decode())
        return 2
    if args.format == "json":
        print(json.dumps(rep.oracle, sort_keys=True, indent=2))
    else:
        print(f"oracle cross-check: {rep.name}")
        for key, value in sorted(rep.oracle.items()):
            print(f"  {key}: {value}")
    # disagreement on a completed run means the engine contradicts itself
    return 0 if rep.oracle["agreement"] else 1


def _cmd_builtin(args) -> int:
    params: dict = {}
    if args.qmatrix is not None:
        params["qmatrix"] = json.loads(args.qmatrix)
    if args.label is not None:
        params["label"] = args.label
    spec = report_mod.builtin(args.name, params)
    print(json.dumps(spec.document(), sort_keys=True, indent=2))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AnalysisError as e:
        print(f"error [{e.code}]: {e}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
