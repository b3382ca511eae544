"""Command-line front end.

Exit codes:
    0   success (member / valid / no violations)
    1   negative answer (not a member, invalid model, sweep violations)
    2   model construction refused: input outside the class (evidence attached)
    3   model construction fell through every rule (certificate attached)
    64  usage error
    65  malformed input
    66  size limit exceeded
    70  internal check failed
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .certificates import SCHEMA_VERSION, Certificate, certificate_for, check_witness, recheck_certificate
from .errors import (
    BadParams,
    ClassViolation,
    InternalCheckFailed,
    MalformedGraph6,
    MalformedInput,
    SizeLimitError,
    StructureFallthrough,
    UnknownCheck,
)
from .graph import Graph, graph6_decode, graph6_encode
from .invariants import chromatic_number, clique_number, had2, had2_plus, had_m, hadwiger_number
from .models import MinorModel, verify_model
from .patterns import ClassName, in_class

EXIT_OK = 0
EXIT_NO = 1
EXIT_CLASS_VIOLATION = 2
EXIT_FALLTHROUGH = 3
EXIT_USAGE = 64
EXIT_MALFORMED = 65
EXIT_SIZE = 66
EXIT_INTERNAL = 70

CLASS_CHOICES = [c.cli_name for c in ClassName]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit(obj: Any, path: str | None = None) -> None:
    text = _dump(obj) + "\n"
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str) -> Any:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from None


def _graph_arg(text: str) -> tuple[str, Graph]:
    if text == "-":
        lines = [ln.strip() for ln in sys.stdin.read().splitlines() if ln.strip()]
        if not lines:
            raise MalformedGraph6("no graph6 record on standard input")
        text = lines[0]
    g = graph6_decode(text)
    return graph6_encode(g), g


def _class_arg(text: str) -> ClassName:
    try:
        return ClassName.parse(text)
    except ValueError:
        raise UsageError(f"unknown class {text!r}; choose from {', '.join(CLASS_CHOICES)}") from None


# -- subcommands ------------------------------------------------------------

def cmd_invariants(args) -> int:
    g6, g = _graph_arg(args.graph)
    wanted = [k for k in ("omega", "chi", "had", "had2", "had2plus") if getattr(args, k)]
    if args.all or (not wanted and not args.hadm):
        wanted = ["omega", "chi", "had2", "had2plus", "had"]
    solvers = {"omega": clique_number, "chi": chromatic_number, "had": hadwiger_number, "had2": had2, "had2plus": had2_plus}
    certs = [certificate_for(g6, g, solvers[k](g)).to_json() for k in wanted]
    for m in args.hadm or ():
        if m < 1:
            raise UsageError("--hadm needs m >= 1")
        certs.append(certificate_for(g6, g, had_m(g, m)).to_json())
    _emit(certs)
    return EXIT_OK if all(c["verified"] for c in certs) else EXIT_INTERNAL


def cmd_classify(args) -> int:
    g6, g = _graph_arg(args.graph)
    cls = _class_arg(args.cls)
    res = in_class(g, cls)
    _emit({"schema_version": SCHEMA_VERSION, "graph6": g6, "class": cls.cli_name,
           "member": res.member, "witness": res.witness})
    return EXIT_OK if res.member else EXIT_NO


def cmd_model(args) -> int:
    from .constructors import construct_semismall_model_faf, construct_small_model_ccg

    g6, g = _graph_arg(args.graph)
    build = construct_small_model_ccg if args.mode == "small" else construct_semismall_model_faf
    base = {"schema_version": SCHEMA_VERSION, "graph6": g6, "kind": "model", "mode": args.mode}
    try:
        model, trace = build(g)
    except ClassViolation as exc:
        _emit({**base, "error": "ClassViolation", "message": str(exc), "evidence": exc.evidence}, args.out)
        return EXIT_CLASS_VIOLATION
    except StructureFallthrough as exc:
        _emit({**base, "error": "StructureFallthrough", "message": str(exc), "certificate": exc.certificate}, args.out)
        return EXIT_FALLTHROUGH
    chi = chromatic_number(g)
    witness = {"model": model.as_lists()}
    kind = "had2" if args.mode == "small" else "had2plus"
    ok = check_witness(g, kind, model.size, witness) and model.size >= chi.value
    cert = Certificate(g6, kind, model.size, witness, ok, trace=trace.to_json()).to_json()
    cert["mode"] = args.mode
    cert["chi"] = chi.value
    cert["chi_coloring"] = chi.witness_json()["coloring"]
    _emit(cert, args.out)
    return EXIT_OK if ok else EXIT_INTERNAL


def _model_sets(data: Any) -> list[list[int]]:
    if isinstance(data, dict):
        if "model" in data:
            data = data["model"]
        elif isinstance(data.get("witness"), dict) and "model" in data["witness"]:
            data = data["witness"]["model"]
        else:
            raise MalformedInput("model file needs a 'model' list or a certificate with a model witness")
    if not isinstance(data, list) or not all(
        isinstance(s, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in s) for s in data
    ):
        raise MalformedInput("a model is a list of lists of vertex indices")
    return data


def cmd_verify(args) -> int:
    g6, g = _graph_arg(args.graph)
    sets = _model_sets(_read_json(args.model))
    duplicates = [i for i, s in enumerate(sets) if len(set(s)) != len(s)]
    if duplicates:
        raise MalformedInput(f"branch sets {duplicates} repeat a vertex")
    if any(v < 0 for s in sets for v in s):
        raise MalformedInput("vertex indices must be non-negative")
    report = verify_model(g, MinorModel.from_lists(g, sets))
    _emit({"schema_version": SCHEMA_VERSION, "graph6": g6, **report.to_json()})
    return EXIT_OK if report.valid else EXIT_NO


def cmd_recheck(args) -> int:
    from .corpus import recheck_violation

    data = _read_json(args.file)
    if isinstance(data, dict) and "violations" in data:
        items = data["violations"]
    elif isinstance(data, list):
        items = data
    else:
        items = [data]
    results = []
    for item in items:
        if not isinstance(item, dict) or "graph6" not in item:
            raise MalformedInput("each certificate needs a graph6 field")
        try:
            if "check" in item:
                results.append({"graph6": item["graph6"], "check": item["check"], "reverified": recheck_violation(item)})
            else:
                results.append({"graph6": item["graph6"], "kind": item["kind"], "reverified": recheck_certificate(item)})
        except KeyError as exc:
            raise MalformedInput(f"certificate is missing field {exc}") from None
    _emit({"schema_version": SCHEMA_VERSION, "results": results})
    return EXIT_OK if all(r["reverified"] for r in results) else EXIT_NO


def cmd_sweep(args) -> int:
    from .corpus import ANY_CLASS, default_jobs, enumerate_up_to, generate_family, read_graph6_lines, sweep

    sources = [x for x in (args.input, args.enumerate, args.family) if x is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --input, --enumerate, --family")
    if args.input is not None:
        source = list(read_graph6_lines(_read_text(args.input).splitlines()))
        corpus = f"input:{args.input}"
    elif args.enumerate is not None:
        source = list(enumerate_up_to(args.enumerate))
        corpus = f"enumerate:1..{args.enumerate}"
    else:
        source = list(generate_family(args.family))
        corpus = f"family:{args.family}"
    cls = ANY_CLASS if args.cls == ANY_CLASS else _class_arg(args.cls).value
    jobs = args.jobs if args.jobs is not None else default_jobs()
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    report = sweep(source, cls, args.check, jobs=jobs, corpus=corpus)
    text = report.dumps(timing=not args.no_timing) + "\n"
    if args.report and args.report != "-":
        with open(args.report, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(report.to_csv())
    return EXIT_OK if report.ok else EXIT_NO


def cmd_outcomes(args) -> int:
    from .recognition import structure_outcomes

    g6, g = _graph_arg(args.graph)
    out = structure_outcomes(g)
    _emit({"schema_version": SCHEMA_VERSION, "graph6": g6, **out.to_json()})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    from .corpus import CHECKS

    p = _Parser(prog="hadlab", description="Exact invariants and small-branch-set clique minors.")
    p.add_argument("--version", action="version", version=f"hadlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("invariants", help="compute invariants with witnesses")
    s.add_argument("graph", help="graph6 string, or - for stdin")
    s.add_argument("--all", action="store_true")
    for name in ("omega", "chi", "had", "had2", "had2plus"):
        s.add_argument(f"--{name}", action="store_true")
    s.add_argument("--hadm", type=int, action="append", metavar="M")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("classify", help="test membership in a graph class")
    s.add_argument("graph")
    s.add_argument("--class", dest="cls", required=True, metavar="NAME", help=", ".join(CLASS_CHOICES))
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("model", help="construct a small or semi-small model")
    s.add_argument("graph")
    s.add_argument("--mode", choices=("small", "semismall"), required=True)
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("verify", help="verify a candidate model")
    s.add_argument("graph")
    s.add_argument("--model", required=True, metavar="FILE")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("recheck", help="re-verify certificates or sweep violations from a file")
    s.add_argument("file")
    s.set_defaults(func=cmd_recheck)

    s = sub.add_parser("sweep", help="run checks over a corpus")
    s.add_argument("--input", metavar="FILE", help="graph6 file, one record per line; - for stdin")
    s.add_argument("--enumerate", type=int, metavar="N", help="all graphs on 1..N vertices (N <= 7)")
    s.add_argument("--family", metavar="SPEC", help="e.g. cycle:n=7 or complement_of:cycle:n=7")
    s.add_argument("--class", dest="cls", default="any", metavar="NAME")
    s.add_argument("--check", nargs="+", required=True, choices=sorted(CHECKS), metavar="NAME")
    s.add_argument("--jobs", type=int, help="worker processes (default: HL_JOBS or CPU count)")
    s.add_argument("--csv", metavar="FILE")
    s.add_argument("--report", metavar="FILE", help="write the JSON report here instead of stdout")
    s.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("outcomes", help="evaluate the eight structure outcomes")
    s.add_argument("graph")
    s.set_defaults(func=cmd_outcomes)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, BadParams, UnknownCheck) as exc:
        print(f"hadlab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MalformedGraph6, MalformedInput) as exc:
        print(f"hadlab: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except SizeLimitError as exc:
        print(f"hadlab: size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except InternalCheckFailed as exc:
        print(f"hadlab: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
