"""Batch front-end.

Subcommands: classify, eigensolve, verify-theorem4, verify-theorem5,
verify-identities, hahn, sweep. Inputs come from a JSON config file
(--config) holding the operator and/or recurrence with every rational as
a "p/q" string; numeric flags override config values. Each run writes a
structured JSON report (--out) and prints a one-line verdict.

Exit codes: 0 all checks passed, 1 identity violated (or negative Hahn
verdict), 2 hypotheses unmet / instance outside theorem scope, 3 input
error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .backend import BACKEND
from .errors import (DuorthError, NonInvertible, NotTwoOrthogonal,
                     RepeatedEigenvalue)
from .hahn import hahn_check
from .eigensolver import eigen_mps
from .pipelines import (PASSED, UNMET, VIOLATED, run_identities_operator,
                        run_identities_rc, run_sweep, run_theorem4,
                        run_theorem5)
from .serialize import (mps_to_tree, operator_from_tree, rat_from_str,
                        rat_to_str, rc_from_tree, rc_to_tree)
from .two_orth import fit_2orth_recurrence, generate

EXIT_PASSED = 0
EXIT_VIOLATED = 1
EXIT_UNMET = 2
EXIT_INPUT = 3

_STATUS_EXIT = {PASSED: EXIT_PASSED, VIOLATED: EXIT_VIOLATED, UNMET: EXIT_UNMET}


class InputError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duorth",
        description="Exact verification of 2-orthogonal eigenpolynomial "
                    "families of third-order operators")
    sub = parser.add_subparsers(dest="mode", required=True)
    modes = ("classify", "eigensolve", "verify-theorem4", "verify-theorem5",
             "verify-identities", "hahn", "sweep")
    for mode in modes:
        p = sub.add_parser(mode)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", default="duorth-report.json",
                       help="report file path (default duorth-report.json)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--draws", type=int, default=None)
        p.add_argument("--nmax", type=int, default=None)
        p.add_argument("--order", type=int, default=None,
                       help="moment order (default 40)")
        p.add_argument("--check-order", type=int, default=None,
                       help="identity-check order (default 24)")
        p.add_argument("--tau", default=None,
                       help="tau as a rational string (verify-theorem5)")
        p.add_argument("--target", default=None,
                       choices=("verify-theorem4", "verify-theorem5",
                                "verify-identities"),
                       help="verification a sweep repeats")
    return parser


def _load_config(args) -> dict:
    cfg = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}")
        if not isinstance(cfg, dict):
            raise InputError("config root must be a JSON object")
    for flag, key in (("seed", "seed"), ("draws", "draws"), ("nmax", "n_max"),
                      ("order", "moment_order"), ("check_order", "check_order"),
                      ("tau", "tau"), ("target", "target")):
        val = getattr(args, flag)
        if val is not None:
            cfg[key] = val
    cfg.setdefault("n_max", 12)
    cfg.setdefault("moment_order", 40)
    cfg.setdefault("check_order", 24)
    cfg.setdefault("seed", 0)
    cfg.setdefault("draws", 20)
    cfg.setdefault("target", "verify-theorem4")
    for key in ("n_max", "moment_order", "check_order", "seed", "draws"):
        if not isinstance(cfg[key], int):
            raise InputError(f"config field {key} must be an integer")
    if cfg["n_max"] < 4:
        raise InputError("n_max must be >= 4")
    if cfg["check_order"] > cfg["moment_order"] - 12:
        raise InputError("check_order must be <= moment_order - 12")
    if cfg["draws"] < 1:
        raise InputError("draws must be >= 1")
    return cfg


def _get_operator(cfg, required=True):
    tree = cfg.get("operator")
    if tree is None:
        if required:
            raise InputError("this mode needs an \"operator\" in the config")
        return None
    try:
        return operator_from_tree(tree)
    except (DuorthError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad operator: {exc}")


def _get_recurrence(cfg, required=True):
    tree = cfg.get("recurrence")
    if tree is None:
        if required:
            raise InputError("this mode needs a \"recurrence\" in the config")
        return None
    try:
        return rc_from_tree(tree)
    except (DuorthError, ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"bad recurrence: {exc}")


def _infer_tau(cfg, J):
    if cfg.get("tau") is not None:
        try:
            return rat_from_str(cfg["tau"])
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"bad tau: {exc}")
    a2, a3 = J.coeff(2), J.coeff(3)
    if a2.is_zero():
        raise InputError("cannot infer tau with a2 = 0; pass --tau")
    i = a2.degree
    return a3[i] / a2[i]


def _config_echo(cfg) -> dict:
    echo = {k: cfg[k] for k in
            ("n_max", "moment_order", "check_order", "seed", "draws", "target")}
    if "operator" in cfg:
        echo["operator"] = cfg["operator"]
    if "recurrence" in cfg:
        echo["recurrence"] = cfg["recurrence"]
    if "tau" in cfg:
        echo["tau"] = str(cfg["tau"])
    return echo


def _cmd_classify(cfg):
    J = _get_operator(cfg)
    cls = J.classify_order(cfg["n_max"])
    if cls.classified:
        results = {"classified": True, "k": cls.k,
                   "lambda": [rat_to_str(v) for v in cls.lambdas],
                   "horizon": cls.horizon}
        verdict = f"classify: k={cls.k}, lambda nonzero verified to n={cls.horizon}"
    else:
        results = {"classified": False, "reason": cls.reason}
        verdict = f"classify: not classifiable ({cls.reason})"
    return EXIT_PASSED, results, verdict


def _cmd_eigensolve(cfg):
    J = _get_operator(cfg)
    try:
        P, lam = eigen_mps(J, cfg["n_max"])
    except (NonInvertible, RepeatedEigenvalue) as exc:
        return EXIT_UNMET, {"error": str(exc)}, f"eigensolve: {exc}"
    results = {"polynomials": mps_to_tree(P),
               "lambda": [rat_to_str(v) for v in lam]}
    try:
        rc = fit_2orth_recurrence(P)
        results["two_orthogonal"] = True
        results["recurrence"] = rc_to_tree(rc)
        note = "2-orthogonal"
    except NotTwoOrthogonal as exc:
        results["two_orthogonal"] = False
        results["fit_failure"] = {"index": exc.index, "reason": exc.reason}
        note = "not 2-orthogonal"
    verdict = f"eigensolve: solved to n={cfg['n_max']}; {note}"
    return EXIT_PASSED, results, verdict


def _cmd_theorem4(cfg):
    J = _get_operator(cfg)
    result = run_theorem4(J, moment_order=cfg["moment_order"],
                          check_order=cfg["check_order"])
    verdict = f"verify-theorem4: {result.status}"
    if result.failure:
        verdict += f" ({_failure_brief(result.failure)})"
    return _STATUS_EXIT[result.status], result.to_tree(), verdict


def _cmd_theorem5(cfg):
    J = _get_operator(cfg)
    tau = _infer_tau(cfg, J)
    result = run_theorem5(J, tau, moment_order=cfg["moment_order"],
                          check_order=cfg["check_order"])
    verdict = f"verify-theorem5: {result.status}"
    if result.failure:
        verdict += f" ({_failure_brief(result.failure)})"
    return _STATUS_EXIT[result.status], result.to_tree(), verdict


def _cmd_identities(cfg):
    J = _get_operator(cfg, required=False)
    rc = _get_recurrence(cfg, required=False)
    if J is not None:
        result = run_identities_operator(J, moment_order=cfg["moment_order"],
                                         check_order=cfg["check_order"])
    elif rc is not None:
        try:
            result = run_identities_rc(rc, moment_order=cfg["moment_order"],
                                       check_order=cfg["check_order"])
        except ValueError as exc:
            raise InputError(str(exc))
    else:
        raise InputError("verify-identities needs an operator or a recurrence")
    verdict = f"verify-identities: {result.status}"
    if result.failure:
        verdict += f" ({_failure_brief(result.failure)})"
    return _STATUS_EXIT[result.status], result.to_tree(), verdict


def _cmd_hahn(cfg):
    J = _get_operator(cfg, required=False)
    rc = _get_recurrence(cfg, required=False)
    depth = max(cfg["n_max"] + 1, 5)
    if J is not None:
        try:
            P, _ = eigen_mps(J, depth)
        except (NonInvertible, RepeatedEigenvalue) as exc:
            return EXIT_UNMET, {"error": str(exc)}, f"hahn: {exc}"
    elif rc is not None:
        try:
            P = generate(rc, depth)
        except DuorthError as exc:
            raise InputError(f"recurrence too shallow for n_max={cfg['n_max']}: {exc}")
    else:
        raise InputError("hahn needs an operator or a recurrence")
    verdict_obj = hahn_check(P)
    if verdict_obj.positive:
        results = {"positive": True,
                   "derivative_recurrence": rc_to_tree(verdict_obj.rc)}
        return EXIT_PASSED, results, f"hahn: positive to n={depth - 1}"
    results = {"positive": False,
               "witness": {"index": verdict_obj.witness[0],
                           "reason": verdict_obj.witness[1]}}
    return EXIT_VIOLATED, results, "hahn: negative"


def _cmd_sweep(cfg):
    tree = run_sweep(cfg["target"], cfg["seed"], cfg["draws"],
                     moment_order=cfg["moment_order"],
                     check_order=cfg["check_order"], n_max=cfg["n_max"])
    summary = tree["summary"]
    code = EXIT_PASSED if summary[VIOLATED] == 0 else EXIT_VIOLATED
    verdict = (f"sweep {cfg['target']}: draws={cfg['draws']} "
               f"passed={summary[PASSED]} hypotheses-unmet={summary[UNMET]} "
               f"violated={summary[VIOLATED]}")
    return code, tree, verdict


def _failure_brief(failure: dict) -> str:
    if "tag" in failure:
        return failure["tag"]
    return failure.get("reason", "failure")


_HANDLERS = {
    "classify": _cmd_classify,
    "eigensolve": _cmd_eigensolve,
    "verify-theorem4": _cmd_theorem4,
    "verify-theorem5": _cmd_theorem5,
    "verify-identities": _cmd_identities,
    "hahn": _cmd_hahn,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        code, results, verdict = _HANDLERS[args.mode](cfg)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {
        "mode": args.mode,
        "config": _config_echo(cfg),
        "exit_code": code,
        "results": results,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(verdict)
    if code != EXIT_PASSED:
        print(f"(details in {args.out}; backend: {BACKEND})", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
