"""Exact rational arithmetic helpers.

Every number in the toolkit is a `fractions.Fraction`: arbitrary
precision, eagerly reduced, denominator always positive. That makes
equality structural, so monochromaticity claims can be replayed by
comparing values directly. This module adds the small extras we need on
top of the standard library: checked construction, strict parsing of the
certificate number syntax, and the deterministic "height" order used
whenever a canonical minimal witness has to be picked.

No floating point anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterator

Rational = Fraction

_NUMBER_RE = re.compile(r"(-?\d+)(?:/(\d+))?$")


def reduce(numerator: int, denominator: int) -> Fraction:
    """Canonical reduced form; sign on the numerator, denominator >= 1."""
    if denominator == 0:
        raise ValueError("denominator must be nonzero")
    return Fraction(numerator, denominator)


def rational_pow(base: Fraction, exponent: int) -> Fraction:
    """Exact nonnegative integer power; the empty product is 1."""
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    return base ** exponent


def height(x: Fraction) -> int:
    """max(|numerator|, denominator) of the reduced form."""
    return max(abs(x.numerator), x.denominator)


def height_key(x: Fraction) -> tuple[int, int, int]:
    """Sort key for the height order: height, then denominator, then numerator.

    A total order on the rationals. Used everywhere a canonical minimal
    witness is required, so that searches are reproducible.
    """
    return (height(x), x.denominator, x.numerator)


def parse_rational(text: str) -> Fraction:
    """Parse "n/d" or a bare integer "n" (meaning n/1); reject anything else."""
    m = _NUMBER_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    """Reduced "n/d", or bare "n" when the denominator is 1."""
    return str(x)


def in_open_interval(x: Fraction, lo: Fraction, hi: Fraction) -> bool:
    return lo < x < hi


def rationals_by_height(bound: int) -> Iterator[Fraction]:
    """All reduced rationals of height <= bound, ascending in height_key.

    Starts -1, 0, 1 (the height-1 block), then -2, 2, -1/2, 1/2, and so on.
    """
    for h in range(1, bound + 1):
        for den in range(1, h + 1):
            if den < h:
                # max(|num|, den) == h forces |num| == h here
                if gcd(h, den) == 1:
                    yield Fraction(-h, den)
                    yield Fraction(h, den)
            else:
                for num in range(-h, h + 1):
                    if gcd(abs(num), h) == 1:
                        yield Fraction(num, h)
