"""Exact rational scalars and their wire format.

Every number in this package is a ``fractions.Fraction``: arbitrary
precision, stored in lowest terms with a positive denominator.  There is
no floating-point mode; cocycle conditions are exact linear identities
and are checked with exact equality.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_scalar(value: object) -> Fraction:
    """Parse a wire value ("p/q" or "p" string, or a JSON integer)."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise InputError(f"not a rational (want 'p' or 'p/q'): {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError as exc:
            raise InputError(f"zero denominator: {value!r}") from exc
    raise InputError(
        f"rationals must be 'p/q' strings or integers, got {type(value).__name__}"
    )


def format_scalar(value: Fraction) -> str:
    """Canonical wire form: "p" for integers, "p/q" otherwise."""
    return str(value)
