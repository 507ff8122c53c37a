"""Command-line front end. Every subcommand prints one JSON document.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 invalid (non-CPTP) channel, 4 degenerate estimator.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import channels as ch
from . import estimator as est
from .errors import DegenerateSpamError, InvalidChannelError, ParameterError
from .groups import (
    depolarizing_residual,
    generate_clifford_1q,
    generate_group_G,
    is_depolarizing_form,
    twirl_average,
)
from .supermap import apply_supermap, build_W

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CHANNEL, EXIT_DEGENERATE = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats rendered at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int, np.integer)):
        return json.dumps(obj if not isinstance(obj, np.integer) else int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return json.dumps(None)
        return format(x, ".17g")
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _load_channel(spec: str) -> ch.Channel:
    try:
        return ch.parse_channel_spec(spec)
    except InvalidChannelError as exc:
        raise CliError(f"invalid channel {spec!r}: {exc}", EXIT_CHANNEL) from exc
    except (ValueError, ParameterError) as exc:
        raise CliError(f"cannot parse channel {spec!r}: {exc}", EXIT_USAGE) from exc


def _ptm_json(g) -> list:
    return ch.matrix_to_json(g)


def cmd_twirl(args) -> tuple[dict, int]:
    e = _load_channel(args.channel)
    if e.dim != 2:
        raise CliError("twirling is defined for qubit channels", EXIT_CHANNEL)
    if args.method == "supermap":
        g = ch.ptm(apply_supermap(build_W(), e))
    elif args.method == "oracle-G":
        g = twirl_average(generate_group_G(), e)
    else:
        g = twirl_average(generate_clifford_1q(), e)
    ok, eta = is_depolarizing_form(g, args.tol)
    return {
        "channel": args.channel,
        "method": args.method,
        "ptm": _ptm_json(g),
        "eta": eta,
        "residual": depolarizing_residual(g),
        "depolarizing_form": ok,
    }, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    if args.seeds < 1:
        raise CliError("--seeds must be at least 1", EXIT_USAGE)
    w = build_W()
    group_g, clifford = generate_group_G(), generate_clifford_1q()
    worst = {"distance": 0.0, "seed": None, "pair": None}
    max_eta = 0.0
    failures = []
    for seed in range(args.seeds):
        e = ch.random_channel(seed, kraus_count=1 + seed % 4)
        gs = {
            "supermap": ch.ptm(apply_supermap(w, e)),
            "oracle-G": twirl_average(group_g, e),
            "oracle-clifford": twirl_average(clifford, e),
        }
        for a, b in (("supermap", "oracle-G"), ("supermap", "oracle-clifford"), ("oracle-G", "oracle-clifford")):
            dist = float(np.linalg.norm(gs[a] - gs[b]))
            if dist >= worst["distance"]:
                worst = {"distance": dist, "seed": seed, "pair": [a, b]}
            if dist > args.tol and seed not in failures:
                failures.append(seed)
        max_eta = max(max_eta, abs(ch.eta_from_ptm(gs["supermap"]) - ch.eta_from_ptm(gs["oracle-G"])))
    report = {
        "seeds": args.seeds,
        "tolerance": args.tol,
        "passed": not failures,
        "worst": worst,
        "max_eta_difference": max_eta,
        "failing_seeds": failures,
    }
    return report, EXIT_OK if not failures else EXIT_VERIFY


def cmd_estimate(args) -> tuple[dict, int]:
    if args.shots < 0:
        raise CliError("--shots must be nonnegative", EXIT_USAGE)
    cfg = est.ExperimentConfig(
        target=_load_channel(args.target),
        spam_prep=_load_channel(args.prep),
        spam_meas=_load_channel(args.meas),
        shots_per_experiment=args.shots,
        seed=args.seed,
    )
    try:
        report = est.estimate(cfg)
    except DegenerateSpamError as exc:
        raise CliError(str(exc), EXIT_DEGENERATE) from exc
    return report.to_json(), EXIT_OK


def cmd_plan(args) -> tuple[dict, int]:
    mode = {"paper": "paper_literal"}.get(args.mode, args.mode)
    try:
        plan = est.plan_samples(args.epsilon, args.alpha, mode)
    except ParameterError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    out = est.plan_to_json(plan)
    if plan.mode == "paper_literal":
        out["note"] = "alpha used as failure probability to match published arithmetic; not a valid guarantee"
    return out, EXIT_OK


def cmd_export_w(args) -> tuple[dict, int]:
    w = build_W()
    return {"profile": list(w.profile.factor_dims), "matrix": ch.matrix_to_json(w.matrix)}, EXIT_OK


def cmd_rb_curve(args) -> tuple[dict, int]:
    if args.m_max < 1:
        raise CliError("--m-max must be at least 1", EXIT_USAGE)
    e = _load_channel(args.channel)
    curve = est.rb_decay_curve(e, args.m_max)
    return {
        "channel": args.channel,
        "m": list(range(1, args.m_max + 1)),
        "p": curve,
        "asymptote": est.rb_asymptote(e),
        "eta": ch.eta_from_ptm(ch.ptm(e)),
    }, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of standard output")
    p = argparse.ArgumentParser(prog="supertwirl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("twirl", parents=[common], help="twirl a channel and print its transfer matrix")
    s.add_argument("--channel", required=True)
    s.add_argument("--method", choices=["supermap", "oracle-G", "oracle-clifford"], default="supermap")
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_twirl)

    s = sub.add_parser("verify", parents=[common], help="compare the supermap twirl with group-average oracles")
    s.add_argument("--seeds", type=int, default=100)
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("estimate", parents=[common], help="run the four-experiment fidelity estimate")
    s.add_argument("--target", required=True)
    s.add_argument("--prep", default="identity")
    s.add_argument("--meas", default="identity")
    s.add_argument("--shots", type=int, default=0, help="shots per experiment; 0 means exact")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_estimate)

    s = sub.add_parser("plan", parents=[common], help="Hoeffding shot budget")
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--mode", choices=["paper", "paper_literal", "rigorous"], default="rigorous")
    s.set_defaults(func=cmd_plan)

    s = sub.add_parser("export-w", parents=[common], help="emit the 24x24 twirling gate")
    s.set_defaults(func=cmd_export_w)

    s = sub.add_parser("rb-curve", parents=[common], help="exact decay curve of the repeated twirl")
    s.add_argument("--channel", required=True)
    s.add_argument("--m-max", type=int, default=20)
    s.set_defaults(func=cmd_rb_curve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except CliError as exc:
        print(f"supertwirl: error: {exc}", file=sys.stderr)
        return exc.code
    text = dumps(report) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_VERIFY:
        print(f"supertwirl: verification failed for seeds {report['failing_seeds']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
