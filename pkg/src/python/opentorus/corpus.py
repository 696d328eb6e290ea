"""
Corpus files: one ``theta;a,b;c,d`` entry per line, ``#`` starts a comment.

Bad lines are collected with their line numbers instead of aborting the run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from .cocycle import Angle
from .errors import IntRangeError, ParseError, TorusError
from .intmat import IntMatrix2, format_matrix, parse_matrix
from .ktheory import KInvariants, classify_pair, invariants_report, k_invariants
from .limits import DEFAULT_REVERSOR_BOUND, DEFAULT_SEED

SHIPPED_CORPUS = "shipped_corpus.txt"


def _error_kind(ex: TorusError) -> str:
    if isinstance(ex, IntRangeError):
        return "range"
    if isinstance(ex, ParseError):
        return "parse"
    return "hypothesis"


@dataclass(frozen=True)
class CorpusEntry:
    line: int
    theta: Angle
    matrix: IntMatrix2


@dataclass(frozen=True)
class CorpusError:
    line: int
    text: str
    message: str
    kind: str = "parse"

    def to_json(self) -> dict[str, Any]:
        return {"line": self.line, "text": self.text, "kind": self.kind, "message": self.message}


@dataclass(frozen=True)
class Corpus:
    entries: tuple[CorpusEntry, ...]
    errors: tuple[CorpusError, ...]


def parse_corpus_line(text: str, line: int) -> Optional[CorpusEntry]:
    body = text.split("#", 1)[0].strip()
    if not body:
        return None
    head, sep, rest = body.partition(";")
    if not sep:
        raise ParseError(f"expected 'theta;a,b;c,d', got '{body}'")
    return CorpusEntry(line, Angle.parse(head), parse_matrix(rest))


def parse_corpus(text: str) -> Corpus:
    entries: list[CorpusEntry] = []
    errors: list[CorpusError] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        try:
            entry = parse_corpus_line(raw, number)
        except ParseError as ex:
            errors.append(CorpusError(number, raw.strip(), str(ex)))
            continue
        if entry is not None:
            entries.append(entry)
    return Corpus(tuple(entries), tuple(errors))


def shipped_corpus_text() -> str:
    return resources.files("opentorus").joinpath("data").joinpath(SHIPPED_CORPUS).read_text(encoding="utf-8")


def load_corpus(path: Optional[Union[str, Path]] = None) -> Corpus:
    """Parse the corpus at ``path``, or the shipped corpus when ``path`` is None."""
    if path is None:
        return parse_corpus(shipped_corpus_text())
    return parse_corpus(Path(path).read_text(encoding="utf-8"))


def evaluate_corpus(
    corpus: Corpus,
    bound: int = DEFAULT_REVERSOR_BOUND,
    rng: Optional[np.random.Generator] = None,
) -> dict[str, Any]:
    """Invariants per entry and a verdict for every unordered pair of evaluable entries."""
    rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
    errors = list(corpus.errors)
    rows: list[dict[str, Any]] = []
    valid: list[tuple[CorpusEntry, KInvariants]] = []
    for entry in corpus.entries:
        try:
            inv = k_invariants(entry.theta, entry.matrix)
        except TorusError as ex:
            errors.append(
                CorpusError(entry.line, f"{entry.theta};{format_matrix(entry.matrix)}", str(ex), _error_kind(ex))
            )
            continue
        rows.append({"line": entry.line, **invariants_report(inv)})
        valid.append((entry, inv))

    pairs: list[dict[str, Any]] = []
    for (left, _), (right, _) in itertools.combinations(valid, 2):
        try:
            verdict = classify_pair(left.theta, left.matrix, right.theta, right.matrix, bound, rng)
        except TorusError as ex:
            # Reported against the left line; the pair is dropped.
            errors.append(CorpusError(left.line, f"pair {left.line},{right.line}", str(ex), _error_kind(ex)))
            continue
        pairs.append({"left": left.line, "right": right.line, **verdict.to_json()})

    errors.sort(key=lambda e: e.line)
    return {
        "rows": rows,
        "pairs": pairs,
        "errors": [e.to_json() for e in errors],
    }
