"""
Command-line entry point for PolarFade experiments
Results go to files in the output directory; logs go to standard error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from app.core.config import settings
from app.core.exceptions import ConfigError
from app.core.logging import configure_logging
from app.models.experiment import ExperimentKind
from app.services.experiments import load_config, run_experiment, validate_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

SUBCOMMANDS = {
    "bsc-sim": ExperimentKind.BSC_SIM,
    "bsc-rate": ExperimentKind.BSC_RATE,
    "aen-sim": ExperimentKind.AEN_SIM,
    "aen-rate": ExperimentKind.AEN_RATE,
    "expand": ExperimentKind.EXPANSION_ANALYSIS,
}


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarfade",
        description="Hierarchical polar coding and expansion coding experiments for fading channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    descriptions = {
        "bsc-sim": "Monte-Carlo BLER of the hierarchical scheme over a fading BSC",
        "bsc-rate": "Theoretical rate against ergodic capacity over a sweep of N",
        "aen-sim": "End-to-end expansion-coded transmission over a fading AEN channel",
        "aen-rate": "Achievable expansion-coding rate against the capacity bound over average SNR",
        "expand": "Level parameters of the binary expansion (and per-level rates for an AEN profile)",
    }
    for name, description in descriptions.items():
        cmd = sub.add_parser(name, help=description, description=description)
        cmd.add_argument("--config", type=Path, help="JSON experiment file")
        cmd.add_argument("--seed", type=_seed, help="Override the configured seed")
        cmd.add_argument("--out", type=Path, help="Output directory (default: config output.dir)")
        cmd.add_argument("--trials", type=int, help="Override the configured number of trials")
        cmd.add_argument("--workers", type=int, default=None, help="Worker threads for trials")
        cmd.add_argument("--log-level", default=None, help=f"Log level (default: {settings.LOG_LEVEL})")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(level=args.log_level)
    kind = SUBCOMMANDS[args.command]

    overrides = {"seed": args.seed, "trials": args.trials}
    if args.out is not None:
        overrides["output_dir"] = str(args.out)

    try:
        if args.config is not None:
            config = load_config(args.config, overrides, defaults={"kind": kind.value})
        else:
            config = validate_config("", overrides, defaults={"kind": kind.value})
        if config.kind != kind:
            raise ConfigError([("kind", f"configuration is for '{config.kind.value}', not '{kind.value}'")])
    except ConfigError as e:
        print(f"polarfade {args.command}: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        run_experiment(config, workers=args.workers)
    except Exception:
        logger.exception("experiment failed", extra={"kind": kind.value})
        return EXIT_RUNTIME
    return EXIT_OK


__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_CONFIG", "EXIT_RUNTIME"]
