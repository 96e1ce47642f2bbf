"""Command line: analyze, cuspidal, sweep, construct, eval.

Exit codes: 0 every check passed, 1 a check failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional

from .construct import ConstructionError, construct_run, construction_json
from .filtration import LocalModel, ModelError, analyze, cuspidal_model, verify
from .ideal import IterationCapError, NotZeroDimensionalError
from .parser import EvalError, ParseError, eval_expr, parse_session
from .report import dumps, report_json, report_text

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _emit(args, command: str, rep, t0: float, extra=None) -> int:
    elapsed = (time.perf_counter() - t0) * 1000
    if args.json:
        print(dumps(report_json(command, rep, elapsed, extra)))
    else:
        print(report_text(command, rep, elapsed))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    session = parse_session(_read(args.file))
    try:
        I, J = session.ideal(args.I), session.ideal(args.J)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    model = LocalModel(session.ring, I, J).validate()
    W = None
    if args.W:
        try:
            W = session.ideal(args.W)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    return _emit(args, "analyze", analyze(model, W), t0)


def _cuspidal_report(mtype: int, n: int, r: int, expect: Optional[dict] = None):
    model, expected = cuspidal_model(mtype, n, r)
    if expect:
        expected = expected.override(expect)
    return verify(model, expected)


def cmd_cuspidal(args) -> int:
    t0 = time.perf_counter()
    expect = None
    if args.expect:
        expect = _load_json(args.expect)
        if not isinstance(expect, dict):
            raise InputError("--expect file must map table row labels to generator lists")
    try:
        rep = _cuspidal_report(args.type, args.n, args.r, expect)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    return _emit(args, "cuspidal", rep, t0)


def _sweep_case(case):
    mtype, n, r = case
    t0 = time.perf_counter()
    rep = _cuspidal_report(mtype, n, r)
    return case, report_json("cuspidal", rep, (time.perf_counter() - t0) * 1000)


def cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    lo = 3 if args.type == 2 else 4
    if args.n_min < lo or args.n_max < args.n_min or args.r_max < 0:
        raise InputError(f"need {lo} <= n-min <= n-max and r-max >= 0")
    cases = [(args.type, n, r) for n in range(args.n_min, args.n_max + 1) for r in range(args.r_max + 1)]
    if args.jobs == 1:
        results = [_sweep_case(c) for c in cases]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_case, cases))
    results.sort(key=lambda item: item[0])
    ok = all(rep["pass"] for _, rep in results)
    elapsed = (time.perf_counter() - t0) * 1000
    if args.json:
        print(dumps({"command": "sweep", "cases": [rep for _, rep in results], "pass": ok, "elapsed_ms": round(elapsed, 3)}))
    else:
        for (mtype, n, r), rep in results:
            failed = [c["name"] for c in rep["checks"] if not c["pass"] and not c["informational"]]
            status = "PASS" if rep["pass"] else "FAIL"
            tail = f"  failed: {'; '.join(failed)}" if failed else ""
            print(f"C_{{{mtype},{n}}} r={r}  m={rep['m']}  rankA={rep['ranks']['A']}  rankM={rep['ranks']['M']}  {status}{tail}")
        print(f"{'PASS' if ok else 'FAIL'}  {len(results)} cases  ({elapsed:.0f} ms)")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_construct(args) -> int:
    t0 = time.perf_counter()
    functionals = _load_json(args.functionals) if args.functionals else None
    if functionals is not None and not isinstance(functionals, dict):
        raise InputError("functional file must be a JSON object keyed by step number")
    try:
        final, rep = construct_run(args.type, args.n, args.r, functionals, args.seed)
    except ConstructionError as exc:
        print(f"construction failed at {exc}", file=sys.stderr)
        return EXIT_FAIL
    state = rep.construction
    if args.json:
        return _emit(args, "construct", rep, t0, {"construction": construction_json(state)})
    lines = []
    for rec in state.log:
        lines.append(f"{rec.label:<9} J_{rec.step} = {rec.J}    I_{rec.step} = {rec.I}")
        for name, values in rec.maps.items():
            lines.append(f"{'':<9} {name}: {json.dumps(values)}")
    lines.append(f"final J = {final}")
    print("\n".join(lines) + "\n")
    return _emit(args, "construct", rep, t0)


def cmd_eval(args) -> int:
    session = parse_session(_read(args.file))
    result = eval_expr(session, args.expr)
    if args.json:
        print(dumps({"command": "eval", "expr": args.expr, "ideal": result.generator_strings()}))
    else:
        print(result)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nilfilt", description="Canonical filtrations of multiple structures.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="filtrations of J with respect to I from a session file")
    p.add_argument("file")
    p.add_argument("--I", required=True, help="name of the reduced ideal")
    p.add_argument("--J", required=True, help="name of the structure ideal")
    p.add_argument("--W", help="saturate I^l + J with respect to this ideal")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cuspidal", help="verify the closed-form tables for C_{type,n}")
    p.add_argument("--type", type=int, choices=(2, 3), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--expect", help="JSON file overriding expected table rows, e.g. {\"J:I^2\": [\"x^3\", \"y\"]}")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cuspidal)

    p = sub.add_parser("sweep", help="cuspidal verification over a range of n and r")
    p.add_argument("--type", type=int, choices=(2, 3), required=True)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--r-max", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("construct", help="run the step-by-step construction")
    p.add_argument("--type", type=int, choices=(2, 3), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--functionals", help="JSON file of functionals keyed by step")
    p.add_argument("--seed", type=int, help="draw random admissible functionals where none are given")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("eval", help="evaluate an ideal expression over a session file")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except (InputError, ParseError, EvalError, ModelError, NotZeroDimensionalError, IterationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # range and argument errors raised by the library
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
