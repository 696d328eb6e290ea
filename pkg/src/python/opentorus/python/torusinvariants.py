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
    sys.stderr.write("  uv run python -m opentorus.python.torusinvariants --theta 2/5 --matrix '2,1;1,1'\n")
    sys.stderr.write("  /path/to/venv/bin/python -m opentorus.python.torusinvariants --theta 2/5 --matrix '2,1;1,1'\n")
    raise SystemExit(1)

from opentorus.errors import ParseError
from opentorus.ktheory import invariants_report, k_invariants, pv_data
from opentorus.python._cliutil import (
    ArgParser,
    RunConfig,
    add_common,
    emit,
    parse_angle_arg,
    parse_matrix_arg,
    run_guarded,
)

TOOL = "torusinvariants"


def cmd_invariants(config: RunConfig) -> tuple[dict[str, Any], int]:
    if config.theta is None or config.matrix is None:
        raise ParseError("invariants needs --theta and --matrix")
    inv = k_invariants(config.theta, config.matrix)
    report = invariants_report(inv)
    pv = pv_data(config.matrix)
    report["pv"] = {
        "matrix": str(pv.matrix),
        "coker": pv.coker_group(),
        "ker": pv.ker_group(),
    }
    return report, 0


def build_parser(prog: str = "torusinvariants.py") -> ArgParser:
    ap = ArgParser(prog=prog, description="K-theory of A_theta x|_A Z")
    ap.add_argument("--theta", required=True, help="rotation angle p/q")
    ap.add_argument("--matrix", required=True, help="SL(2,Z) matrix a,b;c,d")
    add_common(ap, seed=False)
    return ap


def main(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)

    def run() -> int:
        config = RunConfig(
            command="invariants",
            theta=parse_angle_arg(args.theta),
            matrix=parse_matrix_arg(args.matrix),
            output=args.output,
            build_info=not args.no_build_info,
        )
        report, code = cmd_invariants(config)
        emit(TOOL, config, report)
        return code

    return run_guarded(TOOL, run)


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
