"""
Exception types raised by OpenTorus.

Every class also derives from the closest builtin so callers that only know
about ``ValueError`` or ``RuntimeError`` keep working.
"""

from __future__ import annotations


class TorusError(Exception):
    """Base class for all OpenTorus errors."""


class ParseError(TorusError, ValueError):
    """Malformed textual input (angles, matrices, corpus lines)."""


class HypothesisError(TorusError, ValueError):
    """Input lies outside the hypotheses an operation is defined for."""


class IntRangeError(TorusError, OverflowError):
    """An exact integer computation left the signed 64-bit range."""


class ContextMismatchError(TorusError, ValueError):
    """Algebra elements from different contexts were combined."""


class SupportLimitError(TorusError, RuntimeError):
    """A twisted convolution produced more terms than the support cap."""


class AutomorphismError(TorusError, ValueError):
    """A map failed the homomorphism, bijection or reversing-relation check."""
