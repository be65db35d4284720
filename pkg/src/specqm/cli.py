"""Command-line driver.

    specqm <task> --potential exp|hulthen|morse|coulomb --s <f> --a <f>
           [--d <f>] [--Z <i>] --l <i> --N <list> --R <f> [--sigma <f>]
           --method schrodinger|volterra|momentum|all
           [--sweep min,max,count] [--observable phase|alen]
           [--config <path>] [--out <path>] [--jobs <i>]

Any flag may also be supplied from a flat "key = value" config file
(# comments allowed); explicit command-line values win.  Exit codes:
0 success, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .bench import TASKS, RunSpec, run_task

USAGE_ERROR = 2
NUMERICAL_ERROR = 3


def parse_config_file(path: str) -> dict[str, str]:
    """Flat key = value pairs, UTF-8, # comments, blank lines ignored."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def _parse_sweep(text: str) -> tuple[float, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("sweep must be min,max,count")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _parse_n_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specqm",
        description="Chebyshev-collocation quantum two-body benchmarks")
    parser.add_argument("task", choices=sorted(TASKS))
    parser.add_argument("--potential", choices=["exp", "exponential", "hulthen",
                                                "morse", "coulomb"])
    parser.add_argument("--s", type=float)
    parser.add_argument("--a", type=float)
    parser.add_argument("--d", type=float)
    parser.add_argument("--Z", dest="z", type=int)
    parser.add_argument("--l", type=int)
    parser.add_argument("--N", dest="n_list", type=_parse_n_list,
                        help="ascending list, e.g. 16,24,32")
    parser.add_argument("--R", dest="r_cut", type=float)
    parser.add_argument("--sigma", type=float)
    parser.add_argument("--method", choices=["schrodinger", "volterra",
                                             "momentum", "all"])
    parser.add_argument("--observable", choices=["phase", "alen"],
                        help="convergence flavor for task 'converge'")
    parser.add_argument("--sweep", type=_parse_sweep)
    parser.add_argument("--config")
    parser.add_argument("--out")
    parser.add_argument("--jobs", type=int)
    return parser


_CONFIG_CAST = {
    "s": float, "a": float, "d": float, "r_cut": float, "sigma": float,
    "z": int, "l": int, "jobs": int,
    "n_list": _parse_n_list, "sweep": _parse_sweep,
    "potential": str, "method": str, "observable": str, "out": str,
}
_CONFIG_KEYS = {"R": "r_cut", "N": "n_list", "Z": "z"}


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    values: dict = {}
    if args.config:
        for key, raw in parse_config_file(args.config).items():
            name = _CONFIG_KEYS.get(key, key)
            if name not in _CONFIG_CAST:
                raise ValueError(f"unknown config key {key!r}")
            values[name] = _CONFIG_CAST[name](raw)
    for name in ("potential", "s", "a", "d", "z", "l", "n_list", "r_cut",
                 "sigma", "method", "observable", "sweep", "out", "jobs"):
        cli_value = getattr(args, name)
        if cli_value is not None:
            values[name] = cli_value
    return RunSpec(task=args.task, **values)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        spec = spec_from_args(args)
    except (ValueError, OSError) as exc:
        print(f"specqm: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        text = run_task(spec)
    except Exception as exc:  # numerical failure path
        print(f"specqm: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR
    if not spec.out:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
