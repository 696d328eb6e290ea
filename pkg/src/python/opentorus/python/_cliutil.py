from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, NoReturn, Optional

import opentorus
from opentorus.cocycle import Angle
from opentorus.errors import HypothesisError, ParseError, TorusError
from opentorus.intmat import IntMatrix2, parse_matrix
from opentorus.limits import DEFAULT_GRID, DEFAULT_REVERSOR_BOUND, DEFAULT_SEED, tolerance_table

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_FAIL = 1
EXIT_HYPOTHESIS = 2


class ArgParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    theta: Optional[Angle] = None
    matrix: Optional[IntMatrix2] = None
    theta2: Optional[Angle] = None
    matrix2: Optional[IntMatrix2] = None
    bound: int = DEFAULT_REVERSOR_BOUND
    grid: int = DEFAULT_GRID
    epsilon: Optional[Fraction] = None
    output: str = "json"
    seed: int = DEFAULT_SEED
    suite: str = "all"
    corpus: Optional[str] = None
    element: Optional[str] = None
    build_info: bool = True


def parse_fraction(text: str) -> Fraction:
    try:
        num, sep, den = text.strip().partition("/")
        return Fraction(int(num, 10), int(den, 10) if sep else 1)
    except (ValueError, ZeroDivisionError) as ex:
        raise ParseError(f"invalid fraction '{text}' (expected r/s)") from ex


def parse_angle_arg(text: Optional[str]) -> Optional[Angle]:
    return None if text is None else Angle.parse(text)


def parse_matrix_arg(text: Optional[str]) -> Optional[IntMatrix2]:
    return None if text is None else parse_matrix(text)


def add_common(ap: argparse.ArgumentParser, seed: bool = True) -> None:
    ap.add_argument(
        "--output",
        choices=["json", "text"],
        default="json",
        help="report format (default: json)",
    )
    ap.add_argument("--no-build-info", action="store_true", help="hide the OpenTorus build info header")
    if seed:
        ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed for sampling")


def payload_header(tool: str, config: RunConfig) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "tool": {"name": tool, "version": opentorus.__version__},
        "tolerances": tolerance_table(),
    }
    if config.build_info:
        line1, line2 = opentorus.info_lines()
        payload["build_info"] = {"line1": line1, "line2": line2}
    return payload


def flatten(prefix: str, value: Any) -> Iterable[str]:
    """key=value lines; nested keys are joined with dots, lists with commas."""
    if isinstance(value, dict):
        for k, v in value.items():
            yield from flatten(f"{prefix}.{k}" if prefix else str(k), v)
    elif isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        yield f"{prefix}={','.join(_scalar(v) for v in value)}"
    elif isinstance(value, list):
        for i, v in enumerate(value):
            yield from flatten(f"{prefix}[{i}]", v)
    else:
        yield f"{prefix}={_scalar(value)}"


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "on" if value else "off"
    if value is None:
        return "none"
    return str(value)


def emit(tool: str, config: RunConfig, report: dict[str, Any]) -> None:
    if config.output == "json":
        payload = payload_header(tool, config)
        payload.update(report)
        print(json.dumps(payload, ensure_ascii=True))
        return
    if config.build_info:
        for line in opentorus.info_lines():
            print(line)
    header = payload_header(tool, config)
    header.pop("build_info", None)
    for line in flatten("", header):
        print(line)
    for line in flatten("", report):
        print(line)


def error(tool: str, message: str, code: int = EXIT_FAIL) -> int:
    sys.stderr.write(f"{tool}: error: {message}\n")
    return code


def run_guarded(tool: str, fn: Callable[[], int]) -> int:
    """Map library errors to exit codes: hypothesis violations 2, everything else 1."""
    try:
        return fn()
    except HypothesisError as ex:
        return error(tool, f"hypothesis violated: {ex}", EXIT_HYPOTHESIS)
    except ParseError as ex:
        return error(tool, str(ex))
    except (TorusError, ValueError) as ex:
        return error(tool, str(ex))
    except OSError as ex:
        return error(tool, f"cannot read input: {ex}")
