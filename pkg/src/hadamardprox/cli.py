"""Command-line harness.

    hadamardprox run --config cfg.txt [--seed N] [--out DIR]
    hadamardprox list-scenarios
    hadamardprox check --scenario NAME

Exit codes: 0 pass/converged, 1 certificate or convergence failure,
2 configuration error.
"""

import argparse
from dataclasses import replace
import sys

from .harness import (ConfigError, ExperimentConfig, list_scenarios, parse_config,
                      run_experiment)


def _cmd_run(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        if args.out is not None:
            cfg = replace(cfg, out_dir=args.out)
    except (OSError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    result = run_experiment(cfg)
    print(f"{cfg.scenario}: status={result.status} iterations={result.iterations} "
          f"residual={result.final_residual}")
    if result.error:
        print(f"error: {result.error}", file=sys.stderr)
        return 1
    ok = result.status == "converged" and result.certificate and result.certificate.passed
    return 0 if ok else 1


def _cmd_list(_args) -> int:
    for name, desc, solutions in list_scenarios():
        print(f"{name:16s} solutions={solutions:20s} {desc}")
    return 0


def _cmd_check(args) -> int:
    try:
        cfg = parse_config(f"[scenario]\nname = {args.scenario}\n")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    result = run_experiment(cfg, write_files=False)
    cert = result.certificate
    print(f"{args.scenario}: status={result.status} "
          f"certificate={'pass' if cert and cert.passed else 'FAIL'}")
    if cert is not None:
        print(f"  residual tails: d(x,z)={cert.residual_tail_xz:.3e} "
              f"max_i d(T_i x, x)={cert.residual_tail_T:.3e}")
        if cert.dist_final is not None:
            print(f"  dist to solution set: {cert.dist_final:.3e}")
        if cert.center_error is not None:
            print(f"  tail-center error: {cert.center_error:.3e}")
        if cert.condition_i is not None:
            print(f"  condition-I slope: {cert.condition_i.kappa}")
    return 0 if result.status == "converged" and cert and cert.passed else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="hadamardprox")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment from a config file")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--out", default=None)
    p_run.set_defaults(fn=_cmd_run)

    p_list = sub.add_parser("list-scenarios", help="list bundled scenarios")
    p_list.set_defaults(fn=_cmd_list)

    p_check = sub.add_parser("check", help="run a scenario's certificate suite")
    p_check.add_argument("--scenario", required=True)
    p_check.set_defaults(fn=_cmd_check)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
