"""Command line interface.

Exit codes: 0 all checks pass, 1 a verification failed, 2 bad input,
3 a resource cap was hit.  Reports follow the "reflexlab-report/1" schema and
are byte-identical across runs unless --timings is given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .catalog import (
    build_from_generators,
    catalog_group,
    dihedral_counts,
    dihedral_shimura_check,
    CATALOG,
)
from .characters import (
    verify_character_identity,
    verify_decomposition_lemma,
    verify_restriction_bridge,
)
from .cm_structure import cm_orbits
from .errors import InputError, ResourceLimitError
from .group_algebra import (
    Context,
    verify_eq3_isomorphism,
    verify_lemma_eq1,
    verify_lemma_eq2,
    verify_lemma_eq3,
    verify_prop_2N1,
    verify_prop_2N1_general,
)
from .split_model import SplitParams, trace_gram, verify_pfister

PFISTER_DEGREE_CAP = 6
SCHEMA = "reflexlab-report/1"


def _add_target_args(p):
    p.add_argument("--family", help="catalog group name (%s)" % ", ".join(sorted(CATALOG)))
    p.add_argument("--file", help="generator file path")
    p.add_argument(
        "--max-group-order",
        type=int,
        default=100_000,
        help="cap on the group order when closing generators",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="reflexlab",
        description="Exact verification of CM-group norm, character, and Pfister identities.",
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--timings", action="store_true", help="include wall times")
    # the same flags are accepted after the subcommand; SUPPRESS keeps a
    # pre-subcommand occurrence from being clobbered by the default
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser(
        "group", parents=[common], help="validate a group and show its structure"
    )
    _add_target_args(p_group)

    p_orbits = sub.add_parser(
        "orbits", parents=[common], help="list the CM-type orbits"
    )
    _add_target_args(p_orbits)

    p_verify = sub.add_parser(
        "verify", parents=[common], help="run a verification suite"
    )
    p_verify.add_argument(
        "suite",
        choices=["character-identity", "norms", "lemmas", "pfister", "dihedral", "all"],
    )
    _add_target_args(p_verify)
    p_verify.add_argument("--n", type=int, help="dihedral parameter n (even)")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=20)

    p_run = sub.add_parser(
        "run", parents=[common], help="run checks described by a JSON config"
    )
    p_run.add_argument("--config", required=True)
    return parser


def _load_group(args):
    if args.family and args.file:
        raise InputError("--family and --file are mutually exclusive")
    if args.family:
        return args.family, catalog_group(args.family)
    if args.file:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError("cannot read %s: %s" % (args.file, exc))
        return args.file, build_from_generators(text, max_order=args.max_group_order)
    raise InputError("select a group with --family or --file")


def _group_report(name, cm):
    return {
        "target": name,
        "degree": cm.degree,
        "order": cm.order,
        "h0_order": len(cm.h0),
        "h_order": len(cm.h),
        "c_order": len(cm.c_kernel),
        "pass": True,
    }


def _orbit_report(name, cm):
    orbits = cm_orbits(cm)
    return {
        "target": name,
        "pass": True,
        "orbits": [
            {
                "representative": str(o.representative),
                "orbit_size": o.orbit_size,
                "stabilizer_order": len(o.stabilizer),
            }
            for o in orbits
        ],
    }


def _checks_norms(cm, ctx):
    return [verify_prop_2N1(cm, ctx), verify_prop_2N1_general(cm, ctx)]


def _checks_lemmas(cm, ctx, seed, trials):
    out = []
    for I in ctx.jodd:
        for I2 in ctx.jodd:
            out.append(verify_lemma_eq1(ctx, I, I2))
    for f in ctx.lambda_bits:
        for f2 in ctx.lambda_bits:
            out.append(verify_lemma_eq2(ctx, f, f2))
    out.append(verify_lemma_eq3(cm, trials=trials, seed=seed, ctx=ctx))
    out.append(verify_eq3_isomorphism(cm, ctx))
    return out


def _checks_characters(cm, ctx):
    return [
        verify_character_identity(cm, ctx),
        verify_decomposition_lemma(cm),
        verify_restriction_bridge(cm, ctx=ctx),
    ]


def _default_e_vectors(n):
    from fractions import Fraction

    return [
        SplitParams(tuple(range(1, n + 1))),
        SplitParams((2,) * n),
        SplitParams(tuple(Fraction(2 * i - 1, 2) for i in range(1, n + 1))),
    ]


def _checks_pfister(cm, ctx):
    if cm.degree > PFISTER_DEGREE_CAP:
        raise ResourceLimitError(
            "Pfister checks are capped at degree %d" % PFISTER_DEGREE_CAP
        )
    out = [verify_pfister(cm, params, ctx) for params in _default_e_vectors(cm.degree)]
    out.append(trace_gram(cm, ctx))
    return out


def _checks_dihedral(n):
    if n is None:
        raise InputError("verify dihedral needs --n")
    return [dihedral_shimura_check(n), dihedral_counts(n)]


def _run_verify(args):
    if args.suite == "dihedral":
        return {"target": "dihedral n=%s" % args.n, "checks": _checks_dihedral(args.n)}
    name, cm = _load_group(args)
    ctx = Context(cm)
    checks = []
    if args.suite in ("norms", "all"):
        checks += _checks_norms(cm, ctx)
    if args.suite in ("lemmas", "all"):
        checks += _checks_lemmas(cm, ctx, args.seed, args.trials)
    if args.suite in ("character-identity", "all"):
        checks += _checks_characters(cm, ctx)
    if args.suite in ("pfister", "all") and cm.degree <= PFISTER_DEGREE_CAP:
        checks += _checks_pfister(cm, ctx)
    if args.suite == "pfister" and cm.degree > PFISTER_DEGREE_CAP:
        raise ResourceLimitError(
            "Pfister checks are capped at degree %d" % PFISTER_DEGREE_CAP
        )
    return {"target": name, "checks": checks}


def _run_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise InputError("bad JSON in %s: %s" % (path, exc))
    if not isinstance(cfg, dict) or "targets" not in cfg:
        raise InputError("config must be an object with a 'targets' list")
    seed = cfg.get("seed", 0)
    trials = cfg.get("trials", 20)
    suites = cfg.get("suites", ["all"])
    reports = []
    for target in cfg["targets"]:
        ns = argparse.Namespace(
            family=target.get("family"),
            file=target.get("file"),
            max_group_order=cfg.get("max_group_order", 100_000),
            n=target.get("n"),
            seed=seed,
            trials=trials,
        )
        for suite in suites:
            ns.suite = suite
            reports.append({"suite": suite, **_run_verify(ns)})
    return reports


def _emit(report, as_json):
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for line in _render_text(report):
        print(line)


def _render_text(report):
    lines = ["target: %s" % report.get("target", report.get("command", ""))]
    for check in report.get("checks", []):
        label = check.get("check", "check")
        extra = ""
        for key in ("I", "I_prime", "f", "f_prime", "n", "e"):
            if key in check:
                extra += " %s=%s" % (key, check[key])
        lines.append("%-24s%s: %s" % (label, extra, "PASS" if check["pass"] else "FAIL"))
    if "orbits" in report:
        for o in report["orbits"]:
            lines.append(
                "orbit rep=%s size=%d stabilizer=%d"
                % (o["representative"], o["orbit_size"], o["stabilizer_order"])
            )
    for key in ("degree", "order", "h0_order", "h_order", "c_order"):
        if key in report:
            lines.append("%s: %s" % (key, report[key]))
    lines.append("result: %s" % ("PASS" if report["pass"] else "FAIL"))
    return lines


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        if args.command == "group":
            name, cm = _load_group(args)
            report = _group_report(name, cm)
        elif args.command == "orbits":
            name, cm = _load_group(args)
            report = _orbit_report(name, cm)
        elif args.command == "verify":
            report = _run_verify(args)
        else:
            reports = _run_config(args.config)
            report = {
                "target": args.config,
                "checks": [c for r in reports for c in r["checks"]],
            }
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return 3

    if "pass" not in report:
        report["pass"] = all(c["pass"] for c in report.get("checks", []))
    report["schema"] = SCHEMA
    report["command"] = args.command
    report["wall_time_ms"] = (
        int((time.monotonic() - start) * 1000) if args.timings else None
    )
    _emit(report, args.json)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
