"""Command-line front end: presets or datum files in, text or JSON reports out.

Exit status: 0 all pass, 1 verification failure, 2 usage/parse error,
3 resource cap exceeded or inconclusive certificate.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .completion import tau_point
from .induction import induce, pushforward_fixed_points, restrict
from .laurent import LaurentPoly, parse_laurent
from .report import SCHEMA_VERSION, VerificationReport
from .reptheory import orbit_sum, weyl_character, weyl_dimension
from .rootdatum import (
    PRESETS,
    ConsistencyError,
    PreconditionError,
    ResourceCapError,
    RootDatum,
    RootDatumError,
    StructureError,
    SubDatum,
    TorsionPoint,
    centralizer_subdatum,
    datum_from_preset,
    full_subdatum,
    levi_subdatum,
    torus_subdatum,
    weyl_elements,
)
from .suites import SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
VERBS = ("info", "char", "ind", "res", "push", "tau", "verify")
DATUM_FIELDS = ("name", "rank", "roots", "coroots", "simple_indices")


class UsageError(ValueError):
    pass


class DatumFileError(ValueError):
    """A root-datum file that cannot be read; `problems` lists every issue found."""

    def __init__(self, path: str, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__(f"{path}: " + "; ".join(self.problems))


# -- datum files ----------------------------------------------------------------------

def _int_vectors(doc: dict, key: str, problems: List[str]) -> Optional[List[List[int]]]:
    v = doc.get(key)
    if not isinstance(v, list) or not all(
        isinstance(row, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in row) for row in v
    ):
        problems.append(f"field '{key}': expected a list of integer vectors")
        return None
    return v


def parse_datum_file(path: str) -> RootDatum:
    """Read a JSON root-datum file; every violated root-datum axiom is reported."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DatumFileError(path, [f"cannot read file: {exc.strerror}"]) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatumFileError(path, [f"line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from exc
    if not isinstance(doc, dict):
        raise DatumFileError(path, ["top level must be an object"])
    problems = [f"field '{k}': missing" for k in DATUM_FIELDS if k not in doc]
    unknown = sorted(set(doc) - set(DATUM_FIELDS))
    problems += [f"field '{k}': unknown" for k in unknown]
    if problems:
        raise DatumFileError(path, problems)
    if not isinstance(doc["name"], str):
        problems.append("field 'name': expected a string")
    rank = doc["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        problems.append("field 'rank': expected a positive integer")
    roots = _int_vectors(doc, "roots", problems)
    coroots = _int_vectors(doc, "coroots", problems)
    simple = doc["simple_indices"]
    if not isinstance(simple, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in simple):
        problems.append("field 'simple_indices': expected a list of integers")
    if problems:
        raise DatumFileError(path, problems)
    try:
        return RootDatum(doc["name"], rank, tuple(map(tuple, roots)), tuple(map(tuple, coroots)), tuple(simple))
    except RootDatumError as exc:
        raise DatumFileError(path, [f"axiom {v}" for v in exc.violations]) from exc


# -- argument parsing -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kcompletion", description="Exact representation-ring computations on small root data.")
    p.add_argument("--version", action="version", version=f"kcompletion {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    helps = {
        "info": "summarize a root datum",
        "char": "irreducible character of a dominant weight",
        "ind": "twisted induction from a subgroup",
        "res": "restriction to a subgroup",
        "push": "fixed-point pushforward along G/P",
        "tau": "twisted Chern character at a torsion point",
        "verify": "run verification suites",
    }
    for verb in VERBS:
        sp = sub.add_parser(verb, help=helps[verb])
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--preset", choices=PRESETS)
        src.add_argument("--file", help="JSON root-datum file with fields " + ", ".join(DATUM_FIELDS))
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--timing", action="store_true", help="include wall-clock duration (not byte-stable)")
        if verb in ("char", "ind", "res", "push", "tau"):
            sp.add_argument("--weight", help="comma-separated integer weight, e.g. 1,0")
        if verb in ("ind", "res", "push", "tau"):
            sp.add_argument("--poly", help="Laurent polynomial in x (rank 1) or x1..xr, e.g. 'x1 + x2^-1'")
        if verb in ("ind", "res", "push"):
            sp.add_argument("--sub", default="torus", help="torus | full | levi:i,j (simple-root indices)")
        if verb in ("tau", "verify"):
            sp.add_argument("--q", help="torsion point, comma-separated rationals, e.g. 1/2,0")
            sp.add_argument("--order", type=int, help="truncation order (default 4)")
        if verb == "verify":
            sp.add_argument("--suite", default="all", help="suite name, comma list, or 'all': " + ", ".join(SUITES))
            sp.add_argument("--k", type=int, help="jet order for crt/indres (default: 2 and 3 for crt, 3 for indres)")
            sp.add_argument("--box", type=int, help="monomial box bound for crt (default k + max root height)")
            sp.add_argument("--height", type=int, help="weight height bound (default 3)")
            sp.add_argument("--samples", type=int, help="seeded samples per subgroup (default 20)")
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--grid", type=int, help="torsion grid for central invertibility (default 12)")
            sp.add_argument("--quiet", action="store_true", help="text output lists failing cases only")
    return p


def _parse_vector(text: str, r: int, what: str) -> Tuple[int, ...]:
    try:
        v = tuple(int(s) for s in text.split(","))
    except ValueError as exc:
        raise UsageError(f"{what} {text!r}: expected comma-separated integers") from exc
    if len(v) != r:
        raise UsageError(f"{what} {text!r}: expected {r} entries")
    return v


def _parse_point(text: str, r: int) -> TorsionPoint:
    try:
        q = TorsionPoint.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"torsion point {text!r}: expected comma-separated rationals") from exc
    if q.rank != r:
        raise UsageError(f"torsion point {text!r}: expected {r} entries")
    return q


def _parse_sub(text: str, datum: RootDatum) -> SubDatum:
    if text == "torus":
        return torus_subdatum(datum)
    if text == "full":
        return full_subdatum(datum)
    if text.startswith("levi:"):
        k = len(datum.simple_indices)
        try:
            idx = tuple(int(s) for s in text[5:].split(",") if s.strip())
        except ValueError as exc:
            raise UsageError(f"--sub {text!r}: expected levi:i,j,...") from exc
        if any(not 0 <= i < k for i in idx) or len(set(idx)) != len(idx):
            raise UsageError(f"--sub {text!r}: simple-root indices must be distinct and in 0..{k - 1}")
        return levi_subdatum(datum, idx)
    raise UsageError(f"--sub {text!r}: expected torus, full or levi:i,j")


def _input_poly(args, datum: RootDatum, group) -> LaurentPoly:
    """--poly verbatim, or --weight as the symmetrized monomial for `group`."""
    if args.poly is not None and args.weight is not None:
        raise UsageError("give either --poly or --weight, not both")
    if args.poly is not None:
        try:
            return parse_laurent(args.poly, datum.rank)
        except ValueError as exc:
            raise UsageError(f"--poly {args.poly!r}: {exc}") from exc
    if args.weight is not None:
        return orbit_sum(group, _parse_vector(args.weight, datum.rank, "--weight"))
    raise UsageError("one of --poly or --weight is required")


# -- verbs ----------------------------------------------------------------------------

def _verb_info(args, datum):
    return {
        "datum": datum.to_json(),
        "positive_roots": [list(a) for a in datum.positive_roots],
        "simple_roots": [list(a) for a in datum.simple_roots],
        "rho": list(datum.rho),
        "fundamental_weights": [list(w) for w in datum.fundamental_weights],
        "central_characters": [list(w) for w in datum.central_characters],
        "weyl_order": len(weyl_elements(datum)),
        "simply_connected_commutator": datum.simply_connected_commutator,
    }, EXIT_OK


def _verb_char(args, datum):
    if args.weight is None:
        raise UsageError("--weight is required")
    lam = _parse_vector(args.weight, datum.rank, "--weight")
    chi = weyl_character(datum, lam)
    return {"weight": list(lam), "character": str(chi), "dimension": str(weyl_dimension(datum, lam))}, EXIT_OK


def _verb_ind(args, datum):
    h = _parse_sub(args.sub, datum)
    a = _input_poly(args, datum, h)
    return {"sub": h.name, "input": str(a), "induced": str(induce(datum, h, a))}, EXIT_OK


def _verb_res(args, datum):
    h = _parse_sub(args.sub, datum)
    if args.weight is not None and args.poly is None:
        a = weyl_character(datum, _parse_vector(args.weight, datum.rank, "--weight")).poly
    else:
        a = _input_poly(args, datum, datum)
    restrict(a, datum)  # a must come from R(G)
    return {"sub": h.name, "input": str(a), "restricted": str(restrict(a, h))}, EXIT_OK


def _verb_push(args, datum):
    h = _parse_sub(args.sub, datum)
    a = _input_poly(args, datum, h)
    return {"sub": h.name, "input": str(a), "pushforward": str(pushforward_fixed_points(datum, h, a))}, EXIT_OK


def _verb_tau(args, datum):
    if args.q is None:
        raise UsageError("--q is required")
    q = _parse_point(args.q, datum.rank)
    n = 4 if args.order is None else args.order
    if n < 0:
        raise UsageError("--order must be nonnegative")
    if args.weight is not None and args.poly is None:
        a = weyl_character(datum, _parse_vector(args.weight, datum.rank, "--weight")).poly
    else:
        a = _input_poly(args, datum, datum)
    z = centralizer_subdatum(datum, q)
    return {
        "q": str(q),
        "order": n,
        "input": str(a),
        "centralizer": z.name,
        "tau": str(tau_point(datum, q, a, n)),
    }, EXIT_OK


def _suite_config(args, datum) -> SuiteConfig:
    kw: Dict[str, Any] = {"seed": args.seed}
    if args.height is not None:
        kw["height"] = args.height
    if args.samples is not None:
        kw["samples"] = args.samples
    if args.grid is not None:
        if args.grid < 1:
            raise UsageError("--grid must be positive")
        kw["grid"] = args.grid
    if args.k is not None:
        if args.k < 1:
            raise UsageError("--k must be positive")
        kw["jet_orders"] = (args.k,)
        kw["indres_order"] = args.k
    if args.order is not None:
        if args.order < 0:
            raise UsageError("--order must be nonnegative")
        kw["series_order"] = args.order
    if args.box is not None:
        kw["box"] = args.box
    if args.q is not None:
        kw["points"] = (_parse_point(args.q, datum.rank).q,)
    return SuiteConfig(**kw)


def _verb_verify(args, datum):
    names = list(SUITES) if args.suite == "all" else [s.strip() for s in args.suite.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {', '.join(unknown)}; known: {', '.join(SUITES)}")
    cfg = _suite_config(args, datum)
    reports = [run_suite(s, datum, cfg) for s in names]
    if any(r.failures for r in reports):
        code = EXIT_FAIL
    elif any(r.inconclusive for r in reports):
        code = EXIT_CAP
    else:
        code = EXIT_OK
    return {"seed": args.seed, "suites": [r.to_json() for r in reports], "quiet": bool(args.quiet)}, code


_VERBS = {
    "info": _verb_info,
    "char": _verb_char,
    "ind": _verb_ind,
    "res": _verb_res,
    "push": _verb_push,
    "tau": _verb_tau,
    "verify": _verb_verify,
}

_STATUS = {EXIT_OK: "ok", EXIT_FAIL: "fail", EXIT_USAGE: "usage_error", EXIT_CAP: "inconclusive"}


def _sniff_format(argv: Sequence[str]) -> str:
    """Output format requested on the command line, even if the rest fails to parse."""
    for i, a in enumerate(argv):
        if a == "--format=json" or (a == "--format" and i + 1 < len(argv) and argv[i + 1] == "json"):
            return "json"
    return "text"


def run_command(argv: Sequence[str]) -> Tuple[int, Dict[str, Any]]:
    """Run one command; never raises for bad input, returns (exit status, report)."""
    argv = list(argv)
    report: Dict[str, Any] = {"schema": SCHEMA_VERSION, "tool": "kcompletion", "version": __version__, "command": argv}
    report["format"] = _sniff_format(argv)
    start = time.perf_counter()
    timing = False
    try:
        args = build_parser().parse_args(argv)
        report["format"] = args.format
        timing = args.timing
        datum = datum_from_preset(args.preset) if args.preset else parse_datum_file(args.file)
        report["verb"] = args.verb
        report["datum"] = datum.summary()
        payload, code = _VERBS[args.verb](args, datum)
        report["result"] = payload
    except DatumFileError as exc:
        code = EXIT_USAGE
        report["error"] = {"kind": "datum_file", "problems": exc.problems, "message": str(exc)}
    except ResourceCapError as exc:
        code = EXIT_CAP
        report["error"] = {"kind": "resource_cap", "message": str(exc)}
    except ConsistencyError as exc:
        code = EXIT_FAIL
        report["error"] = {"kind": "consistency", "message": str(exc)}
    except (UsageError, PreconditionError, StructureError, RootDatumError, ValueError) as exc:
        code = EXIT_USAGE
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
    report["exit_status"] = code
    report["status"] = _STATUS[code]
    if timing:
        report["duration_s"] = round(time.perf_counter() - start, 6)
    return code, report


# -- rendering ------------------------------------------------------------------------

def _render_text(report: Dict[str, Any]) -> str:
    lines = [f"kcompletion {report['version']} (schema {report['schema']})"]
    lines.append("command: " + " ".join(report["command"]))
    if "datum" in report:
        d = report["datum"]
        lines.append(
            f"datum: {d['name']} rank {d['rank']}, {d['roots']} roots, |W| = {d['weyl_order']}, "
            f"torsion-free pi_1: {'yes' if d['simply_connected_commutator'] else 'no'}"
        )
    if "error" in report:
        err = report["error"]
        if err.get("problems"):
            lines.append(f"error ({err['kind']}): {len(err['problems'])} problem(s)")
            lines.extend(f"  - {p}" for p in err["problems"])
        else:
            lines.append(f"error ({err['kind']}): {err['message']}")
    result = report.get("result")
    if result is not None and report.get("verb") == "verify":
        quiet = result.get("quiet", False)
        lines.append(f"seed: {result['seed']}")
        for doc in result["suites"]:
            lines.append("")
            lines.append(VerificationReport.from_json(doc).render_text(verbose=not quiet))
    elif result is not None:
        for k, v in result.items():
            lines.append(f"{k}: {v}")
    if "duration_s" in report:
        lines.append(f"duration: {report['duration_s']:.3f} s")
    lines.append(f"status: {report['status']} (exit {report['exit_status']})")
    return "\n".join(lines) + "\n"


def emit_report(report: Dict[str, Any], fmt: str = "text") -> bytes:
    """Deterministic rendering: one JSON document, or a fixed-layout text table."""
    if fmt == "json":
        return (json.dumps(report, sort_keys=True, indent=2, default=str) + "\n").encode("utf-8")
    if fmt == "text":
        return _render_text(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if any(a in ("-h", "--help", "--version") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        except UsageError:
            pass
    code, report = run_command(argv)
    out = emit_report(report, report.get("format", "text"))
    stream = sys.stderr.buffer if code == EXIT_USAGE and report.get("format") == "text" else sys.stdout.buffer
    stream.write(out)
    stream.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
