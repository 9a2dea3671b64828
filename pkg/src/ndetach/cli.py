"""Command-line front end.

Exit codes: 0 success, 2 input parse error, 3 bad argument, 4 counterexample,
5 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

from ndetach.catalog import load_matroid, parse_element_list
from ndetach.connectivity import (
    InconsistencyError,
    bixby_classify,
    find_fans4,
    find_quads,
    find_triads,
    find_triangles,
    is_3_connected,
    lam,
)
from ndetach.detach import (
    Branch,
    DetachablePair,
    DichotomyVerdict,
    HypothesisReport,
    PreconditionError,
    find_detachable_pairs,
    verify_dichotomy,
)
from ndetach.matroid import (
    InvalidElementError,
    Matroid,
    MatroidError,
    circuits,
    cocircuits,
    elems,
)
from ndetach.separators import SeparatorReport, scan_all_separators

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ARGUMENT = 3
EXIT_COUNTEREXAMPLE = 4
EXIT_INCONSISTENT = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_ARGUMENT, message)


# -- payload helpers -----------------------------------------------------------


def _set(mask: int) -> list[int]:
    return list(elems(mask))


def digest(M: Matroid) -> dict:
    return {"name": M.name, "n": M.n, "rank": M.rank, "bases": len(M.bases)}


def pair_payload(p: DetachablePair) -> dict:
    w = p.witness
    return {
        "pair": list(p.pair),
        "mode": p.mode.value,
        "three_connected": p.conn_certificate,
        "witness": {
            "delete": _set(w.delete_set),
            "contract": _set(w.contract_set),
            "iso": [[e, w.iso[e]] for e in sorted(w.iso)],
        },
    }


def separator_payload(rep: SeparatorReport) -> dict:
    lab = {}
    for k, v in rep.labelling.items():
        lab[k] = [_set(x) for x in v] if k == "legs" else v
    out = {"kind": rep.kind.value, "P": _set(rep.P), "labelling": lab, "dual_side": rep.dual_side}
    if rep.partition() is not None:
        out["partition"] = [_set(x) for x in rep.partition()]
    return out


def hypothesis_payload(h: HypothesisReport) -> dict:
    return {
        "d": h.d,
        "d_prime": h.d_prime,
        "ok": h.ok,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in h.checks],
        "feasible_Y": [_set(y) for y in h.feasible_Y],
    }


def verdict_payload(v: DichotomyVerdict) -> dict:
    out: dict[str, Any] = {"branch": v.branch.value}
    if v.pair is not None:
        out["pair"] = pair_payload(v.pair)
    if v.separator is not None:
        out["separator"] = separator_payload(v.separator)
        out["c"] = v.c
        out["X"] = _set(v.X)
        out["Y"] = _set(v.Y)
    if v.hypotheses is not None:
        out["hypotheses"] = hypothesis_payload(v.hypotheses)
    if v.dump is not None:
        out["dump"] = v.dump
    return out


# -- commands -------------------------------------------------------------------


def _load(path: str) -> Matroid:
    try:
        return load_matroid(path)
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc
    except MatroidError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc


def _elements(M: Matroid, text: str, flag: str) -> int:
    try:
        mask = parse_element_list(text)
    except ValueError as exc:
        raise CliError(EXIT_ARGUMENT, f"{flag}: malformed element list {text!r}") from exc
    try:
        M.check(mask)
    except InvalidElementError as exc:
        raise CliError(EXIT_ARGUMENT, f"{flag}: {exc}") from exc
    return mask


def cmd_analyze(args) -> tuple[dict, int]:
    M = _load(args.input)
    result: dict[str, Any] = {
        "rank": M.rank,
        "corank": M.n - M.rank,
        "circuits": len(circuits(M)),
        "cocircuits": len(cocircuits(M)),
        "triangles": [_set(t) for t in find_triangles(M)],
        "triads": [_set(t) for t in find_triads(M)],
        "quads": [_set(q) for q in find_quads(M)],
        "fans4": [[_set(t), _set(s)] for t, s in find_fans4(M)],
        "three_connected": is_3_connected(M),
    }
    if args.set is not None:
        X = _elements(M, args.set, "--set")
        result["set"] = _set(X)
        result["lambda"] = lam(M, X)
    if result["three_connected"]:
        # cheap self-check; a failure here is a bug, not a property of M
        result["bixby"] = [
            {"element": r.element, "si_contract": r.si_contract_3conn, "co_delete": r.co_delete_3conn}
            for r in (bixby_classify(M, e) for e in range(M.n))
        ]
    return {"input": digest(M), "result": result}, EXIT_OK


def cmd_detect_separators(args) -> tuple[dict, int]:
    M = _load(args.input)
    must = _elements(M, args.contains, "--contains") if args.contains else 0
    reports = scan_all_separators(M, must_contain=must)
    result = {"separators": [separator_payload(r) for r in reports]}
    if args.contains:
        result["contains"] = _set(must)
    return {"input": digest(M), "result": result}, EXIT_OK


def cmd_find_pairs(args) -> tuple[dict, int]:
    M, N = _load(args.matroid), _load(args.minor)
    try:
        pairs = find_detachable_pairs(M, N, jobs=args.jobs)
    except PreconditionError as exc:
        raise CliError(EXIT_ARGUMENT, f"precondition failed: {exc}") from exc
    result = {"pairs": [pair_payload(p) for p in pairs]}
    return {"input": {"matroid": digest(M), "minor": digest(N)}, "result": result}, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    M, N = _load(args.matroid), _load(args.minor)
    if not 0 <= args.d < M.n:
        raise CliError(EXIT_ARGUMENT, f"--d: element {args.d} not in ground set of size {M.n}")
    verdict = verify_dichotomy(M, N, args.d, jobs=args.jobs)
    code = EXIT_COUNTEREXAMPLE if verdict.branch is Branch.COUNTEREXAMPLE else EXIT_OK
    doc = {"input": {"matroid": digest(M), "minor": digest(N), "d": args.d}, "result": verdict_payload(verdict)}
    return doc, code


COMMANDS = {
    "analyze": cmd_analyze,
    "detect-separators": cmd_detect_separators,
    "find-pairs": cmd_find_pairs,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ndetach", description="Matroid connectivity and detachable-pair analysis.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("text", "machine"), default="text")
        p.add_argument("--jobs", type=int, default=1, help="worker processes (does not change output)")

    p = sub.add_parser("analyze", help="rank, lambda, small structures, 3-connectivity")
    p.add_argument("--input", required=True)
    p.add_argument("--set", help="comma-separated elements, e.g. 0,1")
    common(p)

    p = sub.add_parser("detect-separators", help="list structured 3-separators")
    p.add_argument("--input", required=True)
    p.add_argument("--contains", help="only separators holding these elements")
    common(p)

    p = sub.add_parser("find-pairs", help="list N-detachable pairs")
    p.add_argument("--matroid", required=True)
    p.add_argument("--minor", required=True)
    common(p)

    p = sub.add_parser("verify", help="run the dichotomy verifier for one element d")
    p.add_argument("--matroid", required=True)
    p.add_argument("--minor", required=True)
    p.add_argument("--d", type=int, required=True)
    common(p)
    return ap


# -- rendering -------------------------------------------------------------------


def render_machine(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _scalar(value: Any) -> Optional[str]:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None or isinstance(value, (int, str)):
        return str(value)
    if isinstance(value, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        return "{" + ",".join(map(str, value)) + "}"
    return None


def _text_lines(value: Any, indent: int) -> list[str]:
    pad = "  " * indent
    lines = []
    items = sorted(value.items()) if isinstance(value, dict) else [("-", v) for v in value]
    for k, v in items:
        flat = _scalar(v)
        if flat is not None:
            sep = " " if flat else ""
            lines.append(f"{pad}{k}:{sep}{flat}" if k != "-" else f"{pad}-{sep}{flat}")
        else:
            lines.append(f"{pad}{k}:" if k != "-" else f"{pad}-")
            lines += _text_lines(v, indent + 1)
    return lines


def render_text(doc: dict) -> str:
    return "\n".join(_text_lines(doc, 0)) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.jobs < 1:
            raise CliError(EXIT_ARGUMENT, "--jobs must be at least 1")
        doc, code = COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format", "jobs")}
    full = {"command": {"name": args.command, "args": echo}}
    full.update(doc)
    full["exit_status"] = code
    out = render_machine(full) if args.format == "machine" else render_text(full)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
