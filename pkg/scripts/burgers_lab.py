#!/usr/bin/env python3
"""
Burgers Laboratory

Solve, sweep and verify the time-periodic forced viscous Burgers equation.

Usage:
    python scripts/burgers_lab.py solve --config configs/default_config.yaml --out results/

Subcommands:
    solve:          Solve at lambda = 1 (solution.csv, report.json)
    sweep:          Lambda-continuation from 0 to 1 (branch.json, branch.csv)
    verify:         Operator invariant suites (verify.json)
    colehopf:       Ground-state certificate (groundstate.json, phi.csv)
    oracle-compare: Continuation endpoint vs time stepping (compare.json)

Exit codes:
    0 success, 1 invariant failure, 2 config/input error,
    3 solver nonconvergence, 4 certificate failure, 5 oracle instability
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import matplotlib

matplotlib.use('Agg')

from src.cli.commands import COMMANDS, EXIT_CODES, run_command
from src.cli.config import load_config
from src.utils.errors import ConfigError


def parse_args(argv=None):
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description='Spectral solver and verification lab for periodic Burgers'
    )
    parser.add_argument(
        'command',
        choices=list(COMMANDS),
        help='Command to run'
    )
    parser.add_argument(
        '--config',
        type=str,
        default='configs/default_config.yaml',
        help='Path to the run configuration (YAML or JSON)'
    )
    parser.add_argument(
        '--out',
        type=str,
        default=None,
        help='Output directory (defaults to output_dir from the config)'
    )
    parser.add_argument(
        '--log-level',
        type=str,
        default='INFO',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='Logging verbosity'
    )
    parser.add_argument(
        '--plot',
        action='store_true',
        help='Also write figures'
    )
    return parser.parse_args(argv)


def main(argv=None) -> int:
    """Run one command and return its exit code."""
    args = parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format='%(asctime)s %(levelname)-7s %(name)s: %(message)s'
    )

    try:
        cfg = load_config(args.config)
    except ConfigError as e:
        print(f"Error: invalid configuration: {e}")
        return EXIT_CODES['config_error']
    if args.plot:
        cfg = replace(cfg, plot=True)

    out_dir = Path(args.out) if args.out else cfg.resolve_path(cfg.output_dir)

    print("=" * 60)
    print(f"Burgers Laboratory: {args.command}")
    print("=" * 60)
    print(f"Config: {args.config}")
    print(f"mu: {cfg.mu}")
    print(f"Grid: K={cfg.grid.K}, M={cfg.grid.M}, Nt={cfg.grid.Nt}, Nx={cfg.grid.Nx}")
    print(f"Forcing: {cfg.forcing.name or f'{len(cfg.forcing.terms)} terms'}")
    print(f"Output: {out_dir}")
    print()

    code = run_command(args.command, cfg, out_dir)

    print()
    print("=" * 60)
    print(f"Finished with exit code {code}")
    print("=" * 60)
    return code


if __name__ == '__main__':
    sys.exit(main())
