"""Command line interface.

One subcommand per experiment kind; each takes a config file whose
`kind` must match the subcommand:

    cavitywalk ensemble --config runs/walk.toml --seed 7 --out runs/t250

Exit codes: 0 success, 2 configuration/validation error, 3 integration
error, 4 statistics error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import KINDS, parse_config
from .errors import CavityWalkError, ConfigError
from .runner import run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavitywalk",
        description="Quasi-random-walk cavity dynamics simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        sp = sub.add_parser(kind, help=f"run a {kind} experiment")
        sp.add_argument("--config", "-c", required=True,
                        help="TOML configuration file")
        sp.add_argument("--seed", type=int, default=None,
                        help="override the configured master seed")
        sp.add_argument("--out", "-o", default=None,
                        help="override the output directory")
        sp.add_argument("--workers", "-w", type=int, default=None,
                        help="worker threads for ensemble integration")
        sp.add_argument("--verbose", "-v", action="count", default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as e:
        print(f"error: cannot read config: {e}", file=sys.stderr)
        return 2
    try:
        cfg = parse_config(text)
        if cfg.kind != args.command:
            raise ConfigError(
                f"config kind {cfg.kind!r} does not match subcommand "
                f"{args.command!r}")
        if args.seed is not None:
            cfg = dataclasses.replace(cfg, master_seed=args.seed)
            if cfg.langevin is not None:
                cfg = dataclasses.replace(
                    cfg, langevin=dataclasses.replace(
                        cfg.langevin, master_seed=args.seed))
        if args.workers is not None:
            cfg = dataclasses.replace(cfg, workers=args.workers)
        manifest = run(cfg, out_dir=args.out)
    except CavityWalkError as e:
        category = type(e).__name__
        print(f"error [{category}]: {e}", file=sys.stderr)
        return getattr(e, "exit_code", 4)
    if args.verbose:
        print(f"kind: {manifest['kind']}")
        print(f"seed: {manifest['master_seed']}")
        for f in manifest["files"]:
            print(f"wrote {f['name']} sha256={f['sha256'][:12]}…")
        if args.verbose > 1:
            print(f"results: {manifest['results']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
