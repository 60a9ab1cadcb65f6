"""Command-line front end: ``python -m e7orbits <command>``.

Exit codes: 0 ok, 2 parse error, 3 verification failure, 4 classifier
ambiguity, 5 diagonalizer non-convergence.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys

from . import faults
from .classify import (DEFAULT_EPS, AmbiguousClassification, InconsistentInvariants,
                       classify_multiset, classify_report, invariants_of, recover_multiset)
from .diagonalize import ReductionConfig, reduce, verify_reduction
from .freudenthal import FreudenthalVector
from .lie import StabilizerUncertain, random_orbit_sample, stabilizer
from .patterns import OrbitType, format_pattern, parse_pattern, representatives
from .scalars import format_scalar
from .serialize import ParseError, element_to_obj, load_element
from .verify import run_suite

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_AMBIGUOUS = 4
EXIT_NO_CONVERGENCE = 5


def _emit(args, obj, text):
    print(json.dumps(obj, indent=2) if args.json else text)


def _load(args) -> FreudenthalVector:
    P = load_element(args.file)
    if args.mode == "float":
        return P.to_float()
    if args.mode == "exact" and not P.is_exact:
        raise ParseError("element has floating-point coordinates; it cannot be read exactly")
    return P


def cmd_verify(args) -> int:
    report = run_suite(quick=args.quick, seed=args.seed)
    obj = {"ok": report.ok,
           "checks": [{"name": r.name, "ok": r.ok, "residual": r.residual, "detail": r.detail}
                      for r in report.results]}
    text = report.table()
    if not report.ok:
        text += f"\nfirst failure: {report.first_failure.name}"
    _emit(args, obj, text)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_classify(args) -> int:
    P = _load(args)
    try:
        rep = classify_report(P, args.eps)
    except AmbiguousClassification as exc:
        obj = {"type": None, "candidates": [c.name for c in exc.candidates],
               "margin_decades": exc.margin, "stab_dim": exc.stab_dim}
        _emit(args, obj, f"ambiguous: {' or '.join(c.name for c in exc.candidates)} "
                         f"(margin {exc.margin:.2f} decades, stabilizer dim {exc.stab_dim})")
        return EXIT_AMBIGUOUS
    except StabilizerUncertain as exc:
        _emit(args, {"type": None, "error": str(exc)}, f"uncertain: {exc}")
        return EXIT_AMBIGUOUS
    lines = [f"type:       {rep.type.name} ({rep.type.quotient})",
             f"multiset:   {rep.multiset}" if rep.multiset is not None else "multiset:   n/a",
             f"stab_dim:   {rep.stab_dim}",
             f"agreement:  {rep.method_agreement}"]
    if rep.diagnostic:
        lines.append(f"note:       {rep.diagnostic}")
    _emit(args, rep.to_obj(), "\n".join(lines))
    return EXIT_OK


def cmd_invariants(args) -> int:
    P = _load(args)
    inv = invariants_of(P)
    obj = {"I1": format_scalar(inv.I1), "I2": format_scalar(inv.I2),
           "I3": format_scalar(inv.I3), "I4": format_scalar(inv.I4)}
    try:
        ms = recover_multiset(P, args.eps)
        obj["multiset"] = [str(v) if P.is_exact else float(v) for v in ms]
        ms_text = str(ms)
    except InconsistentInvariants as exc:
        obj["multiset"] = None
        ms_text = f"n/a ({exc})"
    text = "\n".join([f"I1 = {inv.I1}", f"I2 = {inv.I2}", f"I3 = {inv.I3}",
                      f"I4 = {inv.I4}", f"multiset = {ms_text}"])
    _emit(args, obj, text)
    return EXIT_OK


def cmd_diagonalize(args) -> int:
    P = _load(args)
    cfg = ReductionConfig(tol=args.tol, max_sweeps=args.max_sweeps, restarts=args.restarts,
                          seed=args.seed)
    res = reduce(P, cfg, args.eps)
    obj = res.to_obj()
    lines = [f"diagonal:   {res.diagonal}", f"residual:   {res.residual:.3e}",
             f"iterations: {res.iterations}", f"stage:      {res.stage}",
             f"converged:  {res.converged}"]
    code = EXIT_OK if res.converged else EXIT_NO_CONVERGENCE
    if res.converged and args.check:
        rep = verify_reduction(P, res, args.eps)
        obj["verification"] = {"ok": rep.ok, "checks": rep.checks, "failures": rep.failures}
        lines.append(f"verified:   {rep.ok}")
        lines.extend(f"  {f}" for f in rep.failures)
        if not rep.ok:
            code = EXIT_VERIFY
    _emit(args, obj, "\n".join(lines))
    return code


def cmd_sample(args) -> int:
    try:
        values = parse_pattern(args.pattern)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    docs = []
    for k in range(args.n):
        P = random_orbit_sample(values, seed=args.seed + k)
        docs.append(element_to_obj(P))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for k, doc in enumerate(docs):
            path = os.path.join(args.out, f"sample_{k:03d}.json")
            with open(path, "w") as fh:
                json.dump(doc, fh)
            print(path)
    else:
        print(json.dumps(docs[0] if args.n == 1 else docs))
    return EXIT_OK


def cmd_table(args) -> int:
    reps = representatives()
    rows = []
    for t in OrbitType:
        pats = [(p, v) for p, v, _ in reps if classify_multiset([float(x) for x in v]) is t]
        entry = {"type": t.name, "quotient": t.quotient, "stab_dim": t.stabilizer_dim,
                 "representatives": [format_pattern(v) for _, v in pats]}
        if args.compute:
            entry["measured"] = [stabilizer(FreudenthalVector.normal_form(
                *[float(x) for x in v], exact_mode=False)).dim for _, v in pats]
        rows.append(entry)
    lines = []
    for e in rows:
        reps_text = ", ".join(e["representatives"])
        lines.append(f"{e['quotient']:<16} dim {e['stab_dim']:>3}   {reps_text}")
        if args.compute:
            lines[-1] += f"   measured {e['measured']}"
    lines.append("symbols: r=2, s=3, t=5")
    _emit(args, rows, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"),
                        help="arithmetic for the input element (default: as stored)")
    common.add_argument("--eps", type=float, default=DEFAULT_EPS,
                        help="relative tolerance for equal/zero entries")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-12, help="diagonalizer energy target")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--fault-inject", choices=faults.KNOBS, default=None,
                        help=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="e7orbits",
                                description="Orbit types of compact E7 on its 56-dim module.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the identity and structure suite")
    v.add_argument("--quick", action="store_true", help="exact identities only")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", parents=[common], help="orbit type of an element file")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    i = sub.add_parser("invariants", parents=[common], help="E7 invariants of an element file")
    i.add_argument("file")
    i.set_defaults(func=cmd_invariants)

    d = sub.add_parser("diagonalize", parents=[common], help="reduce to (r1, r2, r3; r)")
    d.add_argument("file")
    d.add_argument("--max-sweeps", type=int, default=500)
    d.add_argument("--restarts", type=int, default=8)
    d.add_argument("--check", action="store_true", help="replay and cross-check the result")
    d.set_defaults(func=cmd_diagonalize)

    s = sub.add_parser("sample", parents=[common], help="random points on a pattern's orbit")
    s.add_argument("pattern", help='e.g. "(1,1,r;s)" with r=2, s=3, t=5')
    s.add_argument("-n", type=int, default=1)
    s.add_argument("--out", help="directory for sample_NNN.json files (default: stdout)")
    s.set_defaults(func=cmd_sample)

    t = sub.add_parser("table", parents=[common], help="the seven orbit types")
    t.add_argument("--compute", action="store_true", help="also measure stabilizer dimensions")
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    ctx = faults.inject(args.fault_inject) if args.fault_inject else contextlib.nullcontext()
    try:
        with ctx:
            return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
