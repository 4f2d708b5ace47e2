"""Command-line front end.

Exit codes: 0 success, 1 semantic failure, 2 usage or schema error.
Machine output is JSON with sorted keys; the one-line summary goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .distance import (
    CertificateError,
    UnsupportedSpec,
    build_distance3_certificate,
    build_seam_certificate,
    load_certificate,
    stab_to_json,
    verify_certificate,
    verify_dcp,
)
from .farey import Slope, SlopeError, common_neighbor, distance
from .freegroup import CyclicWord, FreeGroupError, Word, is_basis_tuple, primitivity_trace
from .splittings import (
    PreconditionError,
    SideModel,
    SpecError,
    SplittingSpec,
    build_hybrid,
    build_mh,
    build_mxi,
    check_certificate,
    classify_pair,
    dehn_derive,
    doubly_primitive_evidence,
    emit_double_stab_certificate,
    emit_single_stab_certificate,
    normalize,
    single_stab_possible_mxi,
)

REPORT_SCHEMA = "heegaard-report/1"


class UsageError(Exception):
    pass


class Failure(Exception):
    def __init__(self, report):
        super().__init__(report.get("summary", ""))
        self.report = report


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def report(command, inputs, checks, extra=None) -> dict:
    out = {
        "schema": REPORT_SCHEMA,
        "command": command,
        "inputs": inputs,
        "checks": checks,
        "status": "pass" if all(c["pass"] for c in checks) else "fail",
        "tool_version": __version__,
    }
    if extra:
        out.update(extra)
    return out


def _check(name, ok, details=None):
    return {"name": name, "pass": bool(ok), "details": details}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(args, payload: str) -> None:
    if args.output:
        Path(args.output).write_text(payload)
    else:
        sys.stdout.write(payload)


def _load_spec(path: str) -> SplittingSpec:
    try:
        return SplittingSpec.loads(_read(path))
    except SpecError as exc:
        raise UsageError(str(exc)) from exc


# --- commands -------------------------------------------------------------


def cmd_generate(args):
    if args.family == "mh":
        spec = build_mh(args.l1, args.l2, args.ra, args.rb, args.tag)
    elif args.family == "mxi":
        spec = build_mxi(args.a0, args.a1, args.b0, args.b1, args.s0, args.s1, args.tag)
    else:
        spec = build_hybrid(args.l3, args.l1, args.l2, args.b0, args.b1, args.tag)
    _emit(args, dumps(normalize(spec).to_json()))
    return f"generated {spec.family} spec"


def cmd_derive(args):
    spec = _load_spec(args.spec)
    evidence = doubly_primitive_evidence(spec)
    checks = [_check(f"doubly-primitive({e['slot']},{e['side']}-side)", e["primitive"], e["word"]) for e in evidence]
    try:
        first, second = dehn_derive(spec)
    except PreconditionError as exc:
        checks.append(_check(exc.clause, False, str(exc)))
        rep = report("derive", {"spec": args.spec}, checks, {"failed_clause": exc.clause})
        raise Failure(rep) from exc
    prefix = args.output or str(Path(args.spec).with_suffix("")) + ".derived"
    paths = {"first": f"{prefix}.first.json", "second": f"{prefix}.second.json"}
    Path(paths["first"]).write_text(first.dumps() + "\n")
    Path(paths["second"]).write_text(second.dumps() + "\n")
    checks.append(_check("disjoint", True))
    rep = report("derive", {"spec": args.spec}, checks, {"outputs": paths})
    sys.stdout.write(dumps(rep) if args.json else f"wrote {paths['first']} {paths['second']}\n")
    return "derived two splittings"


def cmd_certify(args):
    spec = _load_spec(args.spec)
    try:
        if args.kind == "distance":
            payload = build_distance3_certificate(spec, args.choice).to_json()
        elif args.kind == "dcp":
            payload = build_seam_certificate(spec).to_json()
        elif spec.family == "MxI":
            payload = stab_to_json(emit_double_stab_certificate(spec, single=args.single), spec)
        else:
            payload = stab_to_json(emit_single_stab_certificate(spec), spec)
    except (UnsupportedSpec, PreconditionError) as exc:
        rep = report("certify", {"spec": args.spec, "kind": args.kind}, [_check("certify", False, str(exc))])
        raise Failure(rep) from exc
    _emit(args, dumps(payload))
    return f"{args.kind} certificate written"


def cmd_verify(args):
    try:
        kind, cert = load_certificate(_read(args.cert))
    except CertificateError as exc:
        raise UsageError(str(exc)) from exc
    if kind != args.kind:
        raise UsageError(f"--kind {args.kind} but the file holds a {kind} certificate")
    try:
        if kind == "distance":
            v = verify_certificate(cert)
            res = v.to_json()
            ok = v.ok
        elif kind == "dcp":
            v = verify_dcp(cert)
            res = v.to_json()
            ok = v.ok
        else:
            r = check_certificate(*cert)
            res = r.to_json()
            ok = r.ok
    except CertificateError as exc:
        raise UsageError(str(exc)) from exc
    rep = report("verify", {"cert": args.cert, "kind": kind}, [_check(kind, ok, res)])
    if not ok:
        raise Failure(rep)
    sys.stdout.write(dumps(rep) if args.json else f"ok {res.get('n', '')}".rstrip() + "\n")
    return f"{kind} certificate verified"


def _slope(text):
    try:
        return Slope.parse(text)
    except SlopeError as exc:
        raise UsageError(str(exc)) from exc


def cmd_check(args):
    tool, vals = args.tool, args.args
    try:
        if tool == "primitive":
            if len(vals) != 1:
                raise UsageError("primitive takes one word")
            w = CyclicWord.parse(vals[0], args.rank)
            ok, trace = primitivity_trace(w)
            result = ok
            details = {"word": str(w), "trace": [{"before": str(s.before), "move": str(s.automorphism), "after": str(s.after)} for s in trace]}
        elif tool == "basis":
            ws = [Word.parse(v, args.rank) for v in vals]
            result = is_basis_tuple(ws, args.rank)
            details = {"words": [str(w) for w in ws], "rank": args.rank}
        elif tool == "farey-dist":
            if len(vals) != 2:
                raise UsageError("farey-dist takes two slopes")
            s1, s2 = _slope(vals[0]), _slope(vals[1])
            result = distance(s1, s2)
            cn = common_neighbor(s1, s2)
            details = {"common_neighbor": None if cn is None else str(cn), "single_stabilization": single_stab_possible_mxi(s1, s2)[0]}
        elif tool == "classify":
            if len(vals) != 2:
                raise UsageError("classify takes two words")
            u, v = CyclicWord.parse(vals[0]), CyclicWord.parse(vals[1])
            ctx = None
            if args.context == "fxi":
                ctx = SideModel("FxI", end_slopes=(Slope(0, 1), Slope(1, 0)))
            elif args.context == "handlebody":
                ctx = SideModel("handlebody")
            try:
                pt = classify_pair(u, v, context=ctx)
            except PreconditionError as exc:
                rep = report("check", {"tool": tool, "args": vals}, [_check(exc.clause, False, str(exc))])
                raise Failure(rep) from exc
            result = pt.tag
            details = pt.to_json()
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(tool)
    except (FreeGroupError, ValueError) as exc:
        if isinstance(exc, (UsageError, Failure)):
            raise
        raise UsageError(str(exc)) from exc
    rep = report("check", {"tool": tool, "args": vals}, [_check(tool, True, details)], {"result": result})
    line = str(result).lower() if isinstance(result, bool) else str(result)
    sys.stdout.write(dumps(rep) if args.json else line + "\n")
    return f"{tool}: {line}"


# --- parser ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Treats negative slopes such as -1/1 as values, not flags."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--json", action="store_true", help="print the JSON run report")
    top.add_argument("--output", help="write the payload here instead of stdout")
    # repeated on subcommands without defaults, so a flag given before the subcommand survives
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS)

    p = _Parser(prog="heegaard", parents=[top], description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="emit a family spec")
    gs = g.add_subparsers(dest="family", required=True)
    mh = gs.add_parser("mh", parents=[common])
    for flag in ("--l1", "--l2", "--ra", "--rb"):
        mh.add_argument(flag, default="none")
    mx = gs.add_parser("mxi", parents=[common])
    for flag, d in (("--a0", "0/1"), ("--a1", "1/0"), ("--b0", "0/1"), ("--b1", "1/0"), ("--s0", "none"), ("--s1", "none")):
        mx.add_argument(flag, default=d)
    hy = gs.add_parser("hybrid", parents=[common])
    for flag, d in (("--l3", "none"), ("--l1", "none"), ("--l2", "none"), ("--b0", "1/1"), ("--b1", "0/1")):
        hy.add_argument(flag, default=d)
    for fam in (mh, mx, hy):
        fam.add_argument("--tag", default="arbitrary", help="opaque label for the remaining gluing")

    d = sub.add_parser("derive", parents=[common], help="Dehn-derive a spec into two splittings")
    d.add_argument("spec")

    c = sub.add_parser("certify", parents=[common], help="build a certificate for a spec")
    c.add_argument("spec")
    c.add_argument("--kind", choices=("distance", "dcp", "stab"), required=True)
    c.add_argument("--choice", choices=("first", "second"), default="first")
    c.add_argument("--single", action="store_true", help="F x I: one Farey-arc tube")

    v = sub.add_parser("verify", parents=[common], help="check a certificate")
    v.add_argument("cert")
    v.add_argument("--kind", choices=("distance", "dcp", "stab"), required=True)

    k = sub.add_parser("check", parents=[common], help="word and slope tools")
    k.add_argument("tool", choices=("primitive", "basis", "farey-dist", "classify"))
    k.add_argument("args", nargs="+")
    k.add_argument("--rank", type=int, default=2)
    k.add_argument("--context", choices=("none", "fxi", "handlebody"), default="none")
    return p


COMMANDS = {
    "generate": cmd_generate,
    "derive": cmd_derive,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "check": cmd_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        summary = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SlopeError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Failure as f:
        sys.stdout.write(dumps(f.report) if getattr(args, "json", False) else "fail\n")
        failed = [c["name"] for c in f.report["checks"] if not c["pass"]]
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
