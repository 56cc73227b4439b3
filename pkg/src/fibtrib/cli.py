"""Command-line interface: ``fibtrib <command> ...``."""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import __version__
from .bounds import baker_wustholz_constant, run_bounds
from .bruteforce import search
from .contfrac import TARGETS, cf_expand, convergents
from .errors import ConfigError, FibTribError, HypothesisViolated, PrecisionExhausted
from .mpreal import constants
from .reduction import MU_FORMS, dujella_epsilon, load_campaign_config, mu_arity, run_campaign, single_instance
from .report import (
    EXIT_CODES, VerifyConfig, config_from_mapping, dumps, emit_report, load_config, parse_integer,
    solution_table, verify,
)
from .sequences import binet_check, table


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", metavar="PATH", default=default, help="also write a JSON report here")
    parser.add_argument("--precision-max", type=int, metavar="BITS", default=default)
    parser.add_argument("--workers", type=int, metavar="N", default=default)
    parser.add_argument("--config", metavar="PATH", default=default, help="JSON configuration file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibtrib", description="Certified replay of the F_n - T_m classification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the whole replay")
    p.add_argument("--text", action="store_true", help="print the text report (default prints a summary)")

    p = sub.add_parser("search", parents=[common], help="brute-force search for small n, m")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--m-max", type=int, default=None)

    p = sub.add_parser("seq", parents=[common], help="terms of a sequence")
    p.add_argument("kind", choices=["fibonacci", "lucas", "tribonacci"])
    p.add_argument("k", type=int)
    p.add_argument("--binet", action="store_true", help="also print the closed-form enclosure")

    sub.add_parser("constants", parents=[common], help="print certified constants")

    p = sub.add_parser("cf", parents=[common], help="continued fraction of tau, 1/tau or sqrt2")
    p.add_argument("--target", choices=sorted(TARGETS), default="tau")
    p.add_argument("--terms", type=int, default=12, metavar="K", help="number of partial quotients")
    p.add_argument("--convergents", action="store_true", help="also print p_k, q_k for every listed quotient")
    p.add_argument("--convergent", type=int, default=None, metavar="K", help="print p_K/q_K")

    p = sub.add_parser("reduce", parents=[common], help="one reduction-lemma instance")
    p.add_argument("--tau", choices=["tau", "tau-inv"], default="tau")
    p.add_argument("--mu-expr", choices=MU_FORMS, default="const")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--A", required=True)
    p.add_argument("--B", choices=["alpha", "alpha_T"], required=True)
    p.add_argument("--M", default="8e51")
    p.add_argument("--convergent-index", type=int, required=True)

    p = sub.add_parser("campaign", parents=[common], help="the four reduction stages")
    p.add_argument("--M", default=None, help="bound on n (default: the certified bound)")

    sub.add_parser("bounds", parents=[common], help="certified linear-forms chain")
    return parser


def resolve_config(args) -> VerifyConfig:
    cfg = load_config(args.config) if args.config else VerifyConfig()
    overrides = {}
    if args.precision_max is not None:
        overrides["precision_max"] = args.precision_max
        if args.precision_max < cfg.precision_initial:
            overrides["precision_initial"] = args.precision_max
    if args.workers is not None:
        overrides["workers"] = args.workers
    return config_from_mapping(overrides, cfg) if overrides else cfg


def _write_json(args, obj) -> None:
    if args.json:
        Path(args.json).write_text(dumps(obj))


def cmd_verify(args, cfg) -> int:
    report = verify(cfg)
    if args.json:
        Path(args.json).write_bytes(emit_report(report, "json"))
    if args.text:
        sys.stdout.write(emit_report(report, "text").decode())
    else:
        print(report.overall)
    return report.exit_code


def cmd_search(args, cfg) -> int:
    n_max = args.n_max or cfg.search_n_max
    m_max = args.m_max or cfg.search_m_max
    records = search(n_max, m_max, cfg.workers)
    rows = [r.to_json() for r in records]
    print(solution_table(rows))
    print(f"{len(records)} values, {sum(len(r.reps) for r in records)} representations")
    _write_json(args, {"n_max": n_max, "m_max": m_max, "records": rows})
    return 0


def cmd_seq(args, cfg) -> int:
    v = table(args.kind, max(args.k, 1000))[args.k]
    out = {"kind": args.kind, "k": args.k, "value": str(v)}
    print(v)
    if args.binet:
        enc = binet_check(args.kind, args.k, constants(cfg.policy.start))
        out["binet"] = enc.to_json()
        print(f"binet: [{enc.lower_decimal(20)}, {enc.upper_decimal(20)}] contains value: {enc.contains(v)}")
    _write_json(args, out)
    return 0


def cmd_constants(args, cfg) -> int:
    c = constants(cfg.policy.start)
    out = {}
    for f in dataclasses.fields(c):
        if f.name == "prec":
            continue
        x = getattr(c, f.name)
        out[f.name] = x.to_json()
        print(f"{f.name:>18} in [{x.lower_decimal(30)}, {x.upper_decimal(30)}]")
    _write_json(args, {"bits": c.prec, "constants": out})
    return 0


def cmd_cf(args, cfg) -> int:
    if args.terms < 1:
        raise ConfigError("--terms must be >= 1")
    count = max(args.terms, (args.convergent or 0) + 1)
    quotients = cf_expand(args.target, count, cfg.policy)
    print(quotients[: args.terms])
    out = {"target": args.target, "quotients": quotients[: args.terms]}
    if args.convergents:
        conv = convergents(quotients[: args.terms])
        for cv in conv:
            print(f"{cv.k:>4} {cv.a:>6} {cv.p} / {cv.q}")
        out["convergents"] = [cv.to_json() for cv in conv]
    if args.convergent is not None:
        conv = convergents(quotients, args.convergent)[args.convergent]
        print(f"p_{conv.k} = {conv.p}\nq_{conv.k} = {conv.q}")
        out["convergent"] = conv.to_json()
    _write_json(args, out)
    return 0


def cmd_reduce(args, cfg) -> int:
    side = "pos" if args.tau == "tau" else "neg"
    key = tuple(x for x in (args.k, args.l) if x is not None)
    if len(key) != mu_arity(args.mu_expr):
        raise ConfigError(f"--mu-expr {args.mu_expr} needs {mu_arity(args.mu_expr)} of --k/--l")
    M = parse_integer(args.M)
    inst = single_instance(side, args.mu_expr, key, args.A, args.B, M, args.convergent_index,
                           cfg.policy.start, cfg.policy)
    outcome = dujella_epsilon(inst)
    print(f"q = {inst.q}")
    print(f"eps in [{outcome.epsilon.lower_decimal(15)}, {outcome.epsilon.upper_decimal(15)}]: {outcome.status}")
    if outcome.k_bound is not None:
        print(f"k <= {outcome.k_bound}")
    _write_json(args, {"q": str(inst.q), "M": str(M), **outcome.to_json()})
    return 0


def cmd_campaign(args, cfg) -> int:
    c = constants(cfg.policy.start)
    hypothesis = run_bounds(c, cfg.policy).bound
    M = parse_integer(args.M) if args.M is not None else (cfg.campaign_M or hypothesis)
    camp_cfg = dataclasses.replace(load_campaign_config(cfg.campaign_config), max_escalations=cfg.max_escalations)
    report = run_campaign(c, M, hypothesis_bound=hypothesis or M, policy=cfg.policy, workers=cfg.workers,
                          config=camp_cfg, n_ceiling=cfg.search_n_max)
    for st in report.stages:
        print(f"{st.name}: {st.bounds}")
    if report.error:
        print(f"error in {report.error['stage']}: {report.error['type']}: {report.error['message']}")
    print(f"final n bound: {report.final_n_bound}; proof complete: {report.proof_complete}")
    for note in report.notes:
        print(note)
    _write_json(args, report.to_json())
    if report.precision_exhausted:
        return EXIT_CODES["precision"]
    return 0 if report.ok else EXIT_CODES["campaign"]


def cmd_bounds(args, cfg) -> int:
    c = constants(cfg.policy.start)
    res = run_bounds(c, cfg.policy)
    C = baker_wustholz_constant(3, 6, c.prec)
    print(f"C(3,6) in [{C.lower_decimal(10)}, {C.upper_decimal(10)}]")
    for d in (res.lemma4, res.lemma5, res.proposition1.coefficient if res.proposition1 else None):
        if d is None:
            continue
        for chk in d.checks:
            print(f"{'ok  ' if chk.holds else 'FAIL'} {chk.name}: <= {chk.value.upper_decimal(8)} vs {float(chk.target):.3g}")
    if res.proposition1:
        print(f"n < {res.proposition1.bound}")
    for a in res.absorption:
        print(f"{a.label}: gap <= {a.certified_max} (published {a.claimed_max}), covered: {a.covered}")
    _write_json(args, res.to_json())
    return 0 if res.ok else EXIT_CODES["bounds"]


COMMANDS = {
    "verify": cmd_verify, "search": cmd_search, "seq": cmd_seq, "constants": cmd_constants, "cf": cmd_cf,
    "reduce": cmd_reduce, "campaign": cmd_campaign, "bounds": cmd_bounds,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CODES["config"]
    try:
        return COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CODES["config"]
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_CODES["precision"]
    except HypothesisViolated as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return 2
    except FibTribError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
