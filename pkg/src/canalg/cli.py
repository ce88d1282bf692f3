"""Command line entry point.

Every command prints one JSON object ``{"config": ..., "result": ...}`` with
sorted keys.  Exit codes: 0 success, 1 usage error, 2 a result contradicting
the theorem predictions, 3 not applicable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from . import bounds, geometry, repcalc, witnesses
from .classify import classify
from .core import ALPHA, OMEGA, CanonicalType, DimVector, TubeParams, arm_vertex, threshold

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT, EXIT_NOT_APPLICABLE = 0, 1, 2, 3

MAX_STEPS_ENV = "CANALG_MAX_STEPS"
MAX_STATES_ENV = "CANALG_MAX_STATES"
GRID_BUDGET_ENV = "CANALG_GRID_BUDGET"


class UsageError(ValueError):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"{name}={raw!r} is not an integer") from exc


def _type(text: str) -> CanonicalType:
    try:
        return CanonicalType.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad --type {text!r}: {exc}") from exc


def _vector(t: CanonicalType, text: str, flag: str) -> DimVector:
    """JSON object {"alpha", "arms", "omega"} or a flat JSON list."""
    try:
        obj = json.loads(text)
        d = DimVector.from_flat(t, obj) if isinstance(obj, list) else DimVector.from_json(obj)
        d.check(t)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad {flag} {text!r}: {exc}") from exc
    return d


def _params(t: CanonicalType, args) -> TubeParams:
    prime = args.prime if args.prime is not None else repcalc.default_prime()
    try:
        if args.lam:
            lams = tuple(int(x) for x in args.lam.split(","))
            if len(lams) != t.n - 2:
                raise UsageError(f"--lambda needs {t.n - 2} values for type {t}")
            return TubeParams(lams, prime)
        return TubeParams.default(t, prime)
    except ValueError as exc:
        raise UsageError(f"bad tube parameters: {exc}") from exc


def _rep(t: CanonicalType, params: TubeParams, spec: str, seed: int) -> Optional[repcalc.Rep]:
    """simple:alpha | simple:omega | simple:I,J | arm:I,J | homog:A,B | sample:<d json>."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "simple":
            if rest in ("alpha", "omega"):
                return repcalc.build_simple(t, ALPHA if rest == "alpha" else OMEGA, params)
            i, j = (int(x) for x in rest.split(","))
            return repcalc.build_simple(t, arm_vertex(t, i, j), params)
        if kind == "arm":
            i, j = (int(x) for x in rest.split(","))
            return repcalc.build_arm_regular(t, i, j, params)
        if kind == "homog":
            a, b = (int(x) for x in rest.split(","))
            return repcalc.build_homogeneous(t, a, b, params)
        if kind == "sample":
            return repcalc.sample_point(t, params, _vector(t, rest, "sample"), seed)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad representation {spec!r}: {exc}") from exc
    raise UsageError(f"unknown representation kind {kind!r}")


def _need_rep(t, params, spec, seed) -> repcalc.Rep:
    rep = _rep(t, params, spec, seed)
    if rep is None:
        raise UsageError(f"sampling {spec!r} found no point; try another --seed")
    return rep


# ---- commands --------------------------------------------------------------

def cmd_classify(args):
    t = _type(args.type)
    d = _vector(t, args.d, "--d")
    crit, tame = threshold(t)
    return EXIT_OK, {**classify(t, d), "threshold": str(crit), "tameness": str(tame)}


def cmd_decide(args):
    t = _type(args.type)
    d = _vector(t, args.d, "--d")
    try:
        verdict = geometry.decide(t, d, witness_cap=args.witness_cap, relaxed=args.relaxed)
    except geometry.NotRegular as exc:
        return EXIT_NOT_APPLICABLE, {"error": str(exc)}
    return EXIT_OK, verdict.to_json()


def cmd_scan(args):
    t = _type(args.type)
    if args.family not in geometry.FAMILIES:
        raise UsageError(f"--family must be one of {geometry.FAMILIES}")
    report = geometry.scan_family(
        t, args.bound, args.family, witness_cap=args.witness_cap, csv_path=args.csv,
        jobs=args.jobs, symmetric=not args.full, stop_early=args.stop_early,
    )
    return (EXIT_OK if report.consistent else EXIT_INCONSISTENT), report.to_json()


def cmd_witness(args):
    t = _type(args.type)
    try:
        w = witnesses.witness_for(t, minimal=args.minimal)
    except witnesses.NotApplicable as exc:
        return EXIT_NOT_APPLICABLE, {"error": str(exc)}
    out = w.to_json()
    if args.lift:
        out["lift"] = witnesses.sincere_lift(t, w.dprime, w.dsecond).to_json() if w.value > 0 else None
    ok = all(w.checks().values())
    return (EXIT_OK if ok else EXIT_INCONSISTENT), out


def cmd_certify(args):
    t = _type(args.type)
    d = _vector(t, args.d, "--d")
    dp = _vector(t, args.dprime, "--dprime")
    try:
        cert = bounds.reduce_pair(
            t, d, dp,
            max_steps=_env_int(MAX_STEPS_ENV, 10_000),
            max_states=_env_int(MAX_STATES_ENV, 200_000),
        )
    except bounds.BelowThreshold as exc:
        return EXIT_NOT_APPLICABLE, {"error": str(exc)}
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return (EXIT_OK if cert.consistent else EXIT_INCONSISTENT), cert.to_json()


def _grid(job):
    lemma, max_total, max_m, budget = job
    return bounds.verify_lemma_grid(lemma, max_total=max_total, max_m=max_m, budget=budget).to_json()


def cmd_verify_lemmas(args):
    lemmas = args.lemma or list(bounds.LEMMA_IDS)
    bad = [x for x in lemmas if x not in bounds.LEMMA_IDS]
    if bad:
        raise UsageError(f"unknown lemma ids {bad}; choose from {bounds.LEMMA_IDS}")
    budget = _env_int(GRID_BUDGET_ENV, 50_000_000)
    jobs = [(x, args.max, args.max_m, budget) for x in lemmas]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_grid, jobs))
    else:
        reports = [_grid(j) for j in jobs]
    passed = all(r["passed"] for r in reports)
    return (EXIT_OK if passed else EXIT_INCONSISTENT), {"passed": passed, "reports": reports}


def cmd_rep(args):
    t = _type(args.type)
    params = _params(t, args)
    op = args.rep_command
    if op == "check":
        rep = _rep(t, params, args.a, args.seed)
        if rep is None:
            return EXIT_OK, {"absent": True}
        return EXIT_OK, {"absent": False, "dim": rep.dim.to_json(), "relations_hold": not rep.relation_defects()}
    if op == "sample":
        rep = repcalc.sample_point(t, params, _vector(t, args.d, "--d"), args.seed)
        return EXIT_OK, {"absent": rep is None, "rep": rep.to_json() if rep is not None else None}
    if op == "euler-test":
        report = repcalc.euler_test(t, params, pairs=args.pairs, seed=args.seed, max_entry=args.max_entry)
        return (EXIT_OK if report.passed else EXIT_INCONSISTENT), report.to_json()
    a = _need_rep(t, params, args.a, args.seed)
    b = _need_rep(t, params, args.b, args.seed + 1)
    fn = {"hom": repcalc.hom_dim, "ext1": repcalc.ext1_dim, "ext2": repcalc.ext2_dim}[op]
    return EXIT_OK, {op: fn(a, b), "dim_a": a.dim.to_json(), "dim_b": b.dim.to_json()}


# ---- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="canalg", description="Module varieties of canonical algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def typed(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--type", required=True, help="arm lengths, e.g. 2,2,3")
        return p

    p = typed("classify", "cone membership and canonical presentation")
    p.add_argument("--d", required=True, help="dimension vector as JSON")
    p.set_defaults(func=cmd_classify)

    p = typed("decide", "complete intersection / irreducibility / normality of a regular d")
    p.add_argument("--d", required=True)
    p.add_argument("--witness-cap", type=int, default=geometry.DEFAULT_WITNESS_CAP)
    p.add_argument("--relaxed", action="store_true", help="also accept d in P or R+Q")
    p.set_defaults(func=cmd_decide)

    p = typed("scan", "decide every vector of a bounded family")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--family", default="regular", help="regular | sincere_regular | rprime")
    p.add_argument("--csv", help="write one row per decided vector")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--witness-cap", type=int, default=geometry.DEFAULT_WITNESS_CAP)
    p.add_argument("--full", action="store_true", help="no arm-symmetry reduction")
    p.add_argument("--stop-early", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = typed("witness", "explicit pair showing failure of normality or CI")
    p.add_argument("--minimal", action="store_true", help="smallest integral scale")
    p.add_argument("--lift", action="store_true", help="add the sincere lift when the value is positive")
    p.set_defaults(func=cmd_witness)

    p = typed("certify", "reduction certificate for <d - d', d'> <= 0")
    p.add_argument("--d", required=True)
    p.add_argument("--dprime", required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-lemmas", help="exhaustive inequality grids")
    p.add_argument("--max", type=int, default=12, help="largest total d")
    p.add_argument("--max-m", type=int, default=6)
    p.add_argument("--lemma", action="append", help="restrict to a lemma id; repeatable")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify_lemmas)

    p = typed("rep", "representation calculus over F_p")
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="lam", help="lambda_3..lambda_n, comma separated")
    rsub = p.add_subparsers(dest="rep_command", required=True)
    spec_help = "simple:alpha|simple:omega|simple:I,J|arm:I,J|homog:A,B|sample:<d json>"
    r = rsub.add_parser("check")
    r.add_argument("--a", required=True, help=spec_help)
    for name in ("hom", "ext1", "ext2"):
        r = rsub.add_parser(name)
        r.add_argument("--a", required=True, help=spec_help)
        r.add_argument("--b", required=True, help=spec_help)
    r = rsub.add_parser("sample")
    r.add_argument("--d", required=True)
    r = rsub.add_parser("euler-test")
    r.add_argument("--pairs", type=int, default=100)
    r.add_argument("--max-entry", type=int, default=3)
    p.set_defaults(func=cmd_rep)
    return parser


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        code, result = args.func(args)
    except UsageError as exc:
        print(f"canalg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps({"config": _config(args), "result": result}, sort_keys=True, indent=2))
    return code


__all__ = ["main", "build_parser"]
