#!/usr/bin/env python3

from __future__ import annotations

import sys
from typing import Callable

from opentorus.python import torusclassify, toruscorpus, torusinvariants, torusverify

COMMANDS: dict[str, Callable[[list[str]], int]] = {
    "invariants": torusinvariants.main,
    "classify-pair": torusclassify.main,
    "verify": torusverify.main,
    "corpus": toruscorpus.main,
}


def _usage() -> str:
    return "usage: opentorus {" + ",".join(COMMANDS) + "} [options]\n"


def main(argv: list[str]) -> int:
    if not argv or argv[0] in ("-h", "--help"):
        sys.stdout.write(_usage())
        return 0 if argv else 1
    fn = COMMANDS.get(argv[0])
    if fn is None:
        sys.stderr.write(_usage())
        sys.stderr.write(f"opentorus: error: unknown command '{argv[0]}'\n")
        return 1
    return fn(argv[1:])


def run() -> None:
    raise SystemExit(main(sys.argv[1:]))


if __name__ == "__main__":
    run()
