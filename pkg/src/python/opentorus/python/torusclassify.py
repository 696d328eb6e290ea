#!/usr/bin/env python3

from __future__ import annotations

import sys
from typing import Any

try:
    import opentorus  # noqa: F401
except ModuleNotFoundError:
    sys.stderr.write("error: Python module 'opentorus' was not found.\n")
    sys.stderr.write("Run this script with the same Python environment where OpenTorus is installed.\n")
    sys.stderr.write("\n")
    sys.stderr.write("Examples:\n")
    sys.stderr.write("  uv run python -m opentorus.python.torusclassify --theta 1/3 --matrix '2,1;1,1' ...\n")
    raise SystemExit(1)

import numpy as np

from opentorus.errors import ParseError
from opentorus.ktheory import classify_pair, invariants_report, k_invariants
from opentorus.limits import DEFAULT_REVERSOR_BOUND
from opentorus.python._cliutil import (
    ArgParser,
    RunConfig,
    add_common,
    emit,
    parse_angle_arg,
    parse_matrix_arg,
    run_guarded,
)

TOOL = "torusclassify"


def cmd_classify_pair(config: RunConfig) -> tuple[dict[str, Any], int]:
    if None in (config.theta, config.matrix, config.theta2, config.matrix2):
        raise ParseError("classify-pair needs --theta, --matrix, --theta2 and --matrix2")
    rng = np.random.default_rng(config.seed)
    left = k_invariants(config.theta, config.matrix)
    right = k_invariants(config.theta2, config.matrix2)
    verdict = classify_pair(config.theta, config.matrix, config.theta2, config.matrix2, config.bound, rng)
    report = {
        "left": invariants_report(left),
        "right": invariants_report(right),
        "bound": config.bound,
        "seed": config.seed,
        **verdict.to_json(),
    }
    return report, 0


def build_parser(prog: str = "torusclassify.py") -> ArgParser:
    ap = ArgParser(prog=prog, description="isomorphism obstructions between two crossed products")
    ap.add_argument("--theta", required=True, help="first angle p/q")
    ap.add_argument("--matrix", required=True, help="first matrix a,b;c,d")
    ap.add_argument("--theta2", help="second angle p/q (default: --theta)")
    ap.add_argument("--matrix2", required=True, help="second matrix a,b;c,d")
    ap.add_argument("--bound", type=int, default=DEFAULT_REVERSOR_BOUND, help="reversor search bound")
    add_common(ap)
    return ap


def main(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)

    def run() -> int:
        config = RunConfig(
            command="classify-pair",
            theta=parse_angle_arg(args.theta),
            matrix=parse_matrix_arg(args.matrix),
            theta2=parse_angle_arg(args.theta2 if args.theta2 is not None else args.theta),
            matrix2=parse_matrix_arg(args.matrix2),
            bound=int(args.bound),
            output=args.output,
            seed=int(args.seed),
            build_info=not args.no_build_info,
        )
        report, code = cmd_classify_pair(config)
        emit(TOOL, config, report)
        return code

    return run_guarded(TOOL, run)


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
