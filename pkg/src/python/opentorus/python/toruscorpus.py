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
    sys.stderr.write("  uv run python -m opentorus.python.toruscorpus [corpus.txt]\n")
    raise SystemExit(1)

import numpy as np

from opentorus.corpus import evaluate_corpus, load_corpus
from opentorus.limits import DEFAULT_REVERSOR_BOUND
from opentorus.python._cliutil import ArgParser, RunConfig, add_common, emit, error, run_guarded

TOOL = "toruscorpus"


def cmd_corpus(config: RunConfig) -> tuple[dict[str, Any], int]:
    corpus = load_corpus(config.corpus)
    report = evaluate_corpus(corpus, config.bound, np.random.default_rng(config.seed))
    summary = {
        "rows": len(report["rows"]),
        "pairs": len(report["pairs"]),
        "errors": len(report["errors"]),
    }
    out = {"corpus": config.corpus or "shipped", "summary": summary, **report}
    return out, 1 if report["errors"] else 0


def build_parser(prog: str = "toruscorpus.py") -> ArgParser:
    ap = ArgParser(prog=prog, description="batch invariants and pairwise verdicts for a corpus file")
    ap.add_argument("corpus", nargs="?", help="corpus file (default: the shipped corpus)")
    ap.add_argument("--bound", type=int, default=DEFAULT_REVERSOR_BOUND, help="reversor search bound")
    add_common(ap)
    return ap


def main(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)

    def run() -> int:
        config = RunConfig(
            command="corpus",
            corpus=args.corpus,
            bound=int(args.bound),
            output=args.output,
            seed=int(args.seed),
            build_info=not args.no_build_info,
        )
        report, code = cmd_corpus(config)
        emit(TOOL, config, report)
        for e in report["errors"]:
            error(TOOL, f"line {e['line']}: {e['message']}")
        return code

    return run_guarded(TOOL, run)


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
