#!/usr/bin/env python3

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

try:
    import opentorus  # noqa: F401
except ModuleNotFoundError:
    sys.stderr.write("error: Python module 'opentorus' was not found.\n")
    sys.stderr.write("Run this script with the same Python environment where OpenTorus is installed.\n")
    sys.stderr.write("\n")
    sys.stderr.write("Examples:\n")
    sys.stderr.write("  uv run python -m opentorus.python.torusverify --suite cocycle --seed 7\n")
    raise SystemExit(1)

from opentorus.errors import ParseError
from opentorus.limits import DEFAULT_GRID, DEFAULT_REVERSOR_BOUND
from opentorus.python._cliutil import (
    ArgParser,
    RunConfig,
    add_common,
    emit,
    parse_angle_arg,
    parse_fraction,
    parse_matrix_arg,
    run_guarded,
)
from opentorus.suites import SuiteParams, run_suite, suite_names

TOOL = "torusverify"


def load_element(path: str) -> list[Any]:
    """AlgElement JSON terms from a file, as written by ``element_to_json``."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError(f"invalid element JSON in '{path}': {ex.msg}") from ex
    if not isinstance(payload, list):
        raise ParseError(f"element file '{path}' must hold a list of terms")
    return payload


def cmd_verify(config: RunConfig) -> tuple[dict[str, Any], int]:
    params = SuiteParams(
        theta=config.theta if config.theta is not None else SuiteParams().theta,
        matrix=config.matrix if config.matrix is not None else SuiteParams().matrix,
        bound=config.bound,
        grid=config.grid,
        epsilon=config.epsilon,
        seed=config.seed,
        element=None if config.element is None else load_element(config.element),
    )
    results = run_suite(config.suite, params)
    passed = all(r.passed for r in results)
    report = {
        "suite": config.suite,
        "theta": str(params.theta),
        "matrix": str(params.matrix),
        "seed": config.seed,
        "passed": passed,
        "suites": [r.to_json() for r in results],
    }
    return report, 0 if passed else 1


def build_parser(prog: str = "torusverify.py") -> ArgParser:
    ap = ArgParser(prog=prog, description="run the seeded verification suites")
    ap.add_argument("--suite", default="all", help=f"one of: {', '.join(suite_names())} (default: all)")
    ap.add_argument("--theta", help="rotation angle p/q (default: 1/3)")
    ap.add_argument("--matrix", help="SL(2,Z) matrix a,b;c,d (default: 2,1;1,1)")
    ap.add_argument("--bound", type=int, default=DEFAULT_REVERSOR_BOUND, help="reversor search bound")
    ap.add_argument("--grid", type=int, default=DEFAULT_GRID, help="Rieffel quadrature size")
    ap.add_argument("--epsilon", help="Rieffel ramp width r/s (default: min(theta, 1-theta)/2)")
    ap.add_argument("--element", help="JSON file with rotation-algebra terms for the element suite")
    add_common(ap)
    return ap


def main(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)

    def run() -> int:
        config = RunConfig(
            command="verify",
            theta=parse_angle_arg(args.theta),
            matrix=parse_matrix_arg(args.matrix),
            bound=int(args.bound),
            grid=int(args.grid),
            epsilon=None if args.epsilon is None else parse_fraction(args.epsilon),
            output=args.output,
            seed=int(args.seed),
            suite=args.suite,
            element=args.element,
            build_info=not args.no_build_info,
        )
        report, code = cmd_verify(config)
        emit(TOOL, config, report)
        return code

    return run_guarded(TOOL, run)


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
