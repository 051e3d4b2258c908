"""Command line entry point: ``cavkick <subcommand> [--config PATH] ...``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .config import ExperimentConfig, config_from_dict, load_config
from .errors import CavkickError
from .experiments import oracle_compare, run_figure1, run_figure2, simulate, sweep_gamma, sweep_n
from .io import emit
from .verify import run_checks

log = logging.getLogger("cavkick")

LOG_ENV = "CAVKICK_LOG_LEVEL"


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML/JSON experiment config (defaults if omitted)")
    common.add_argument("--out", help="output path; '-' for stdout")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--convention", choices=("paper", "standard"))

    parser = argparse.ArgumentParser(prog="cavkick", description="sigma_z kick protocol simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common], help="run the config's protocol")
    sub.add_parser("figure1", parents=[common], help="free vs one kick at gt=0.3 (two files)")
    sub.add_parser("figure2", parents=[common], help="kicks at gt=0.1, 0.2, 0.3")
    p = sub.add_parser("sweep-n", parents=[common], help="max concurrence excursion vs kick count")
    p.add_argument("--n-values", type=_int_list, default=[2, 4, 8, 16, 32, 64])
    sub.add_parser("verify", parents=[common], help="run the invariant checks")
    p = sub.add_parser("oracle-compare", parents=[common], help="ideal vs finite-pulse kicks")
    p.add_argument("--gamma-ratios", type=_float_list,
                   help="sweep gamma/g instead of comparing sample by sample")
    return parser


def _config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else config_from_dict({})
    overrides = {}
    if args.format:
        overrides["output.format"] = args.format
    if args.convention:
        overrides["convention"] = args.convention
    if args.out:
        overrides["output.path"] = args.out
    return cfg.with_overrides(**overrides) if overrides else cfg


def _suffixed(path: Optional[str], default: str, suffix: str, fmt: str) -> str:
    if path is None or path == "-":
        return f"{default}_{suffix}.{fmt}"
    p = Path(path)
    return str(p.with_name(f"{p.stem}_{suffix}{p.suffix or '.' + fmt}"))


def _verify(cfg: ExperimentConfig) -> int:
    results = run_checks(cfg)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=os.environ.get(LOG_ENV, "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        fmt, out = cfg.output.format, cfg.output.path
        if args.command == "verify":
            return _verify(cfg)
        if args.command == "figure1":
            free, kicked = run_figure1(cfg)
            for suffix, ds in (("free", free), ("kicked", kicked)):
                path = emit(ds, fmt, _suffixed(out, "figure1", suffix, fmt))
                log.info("wrote %s", path)
            return 0
        if args.command == "simulate":
            ds = simulate(cfg)
        elif args.command == "figure2":
            ds = run_figure2(cfg)
        elif args.command == "sweep-n":
            ds = sweep_n(cfg, args.n_values)
        elif args.gamma_ratios:
            ds = sweep_gamma(cfg, args.gamma_ratios)
        else:
            ds = oracle_compare(cfg)
        emit(ds, fmt, out)
        return 0
    except (CavkickError, OSError, ValueError) as exc:
        print(f"cavkick: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
