"""Deterministic finite colorings of the positive rationals.

A coloring spec is a small string expression describing a total map from
the positive rationals onto {1, ..., r}. Five kinds are supported:

    constant:<c>                      every input gets color c; r = c
    modsum:<r>                        ((num + den) mod r) + 1 on the reduced form
    modnum:<r>                        (num mod r) + 1 on the reduced form
    threshold:<q>                     1 below q, 2 at or above q; q in (0,1)
    interval:<r>:<q1,...,q_{r-1}>     1 + number of cut points <= x; cut points
                                      strictly increasing rationals in (0,1)

<c> and <r> are positive decimal integers; <q> is a rational written
"n/d" or "n". The color of x depends only on the reduced form of x, so
every spec is well defined on the rationals. Colors are 1-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import parse_rational

KINDS = ("constant", "modsum", "modnum", "threshold", "interval")


class ColoringSyntaxError(ValueError):
    """Malformed coloring spec; carries the character position of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class ColoringSpec:
    """A validated coloring. Immutable; color_of is pure."""

    kind: str
    colors: int
    params: tuple

    def color_of(self, x: Fraction) -> int:
        return color_of(self, x)

    def __str__(self) -> str:
        if self.kind == "constant":
            return f"constant:{self.colors}"
        if self.kind in ("modsum", "modnum"):
            return f"{self.kind}:{self.colors}"
        if self.kind == "threshold":
            return f"threshold:{self.params[0]}"
        cuts = ",".join(str(q) for q in self.params)
        return f"interval:{self.colors}:{cuts}"


def _parse_positive_int(field: str, position: int) -> int:
    if not field.isdigit():
        raise ColoringSyntaxError(f"expected a positive integer, got {field!r}", position)
    value = int(field)
    if value < 1:
        raise ColoringSyntaxError("color count must be at least 1", position)
    return value


def _parse_cut(field: str, position: int) -> Fraction:
    try:
        q = parse_rational(field)
    except ValueError:
        raise ColoringSyntaxError(f"expected a rational, got {field!r}", position) from None
    if not Fraction(0) < q < Fraction(1):
        raise ColoringSyntaxError(f"cut point {field} must lie strictly in (0,1)", position)
    return q


def parse_coloring(text: str) -> ColoringSpec:
    """Parse a coloring spec string; raises ColoringSyntaxError with position."""
    fields = text.split(":")
    kind = fields[0]
    if kind not in KINDS:
        raise ColoringSyntaxError(f"unknown coloring kind {kind!r}", 0)
    # character offset of field i in the original text
    offsets = [0]
    for f in fields[:-1]:
        offsets.append(offsets[-1] + len(f) + 1)

    if kind in ("constant", "modsum", "modnum"):
        if len(fields) != 2:
            raise ColoringSyntaxError(f"{kind} takes exactly one parameter", len(text))
        r = _parse_positive_int(fields[1], offsets[1])
        return ColoringSpec(kind, r, ())

    if kind == "threshold":
        if len(fields) != 2:
            raise ColoringSyntaxError("threshold takes exactly one parameter", len(text))
        q = _parse_cut(fields[1], offsets[1])
        return ColoringSpec(kind, 2, (q,))

    # interval:<r>:<q1,...,q_{r-1}>
    if len(fields) != 3:
        raise ColoringSyntaxError("interval takes a color count and a cut list", len(text))
    r = _parse_positive_int(fields[1], offsets[1])
    raw_cuts = fields[2].split(",") if fields[2] else []
    if len(raw_cuts) != r - 1:
        raise ColoringSyntaxError(
            f"interval:{r} needs exactly {r - 1} cut points, got {len(raw_cuts)}", offsets[2]
        )
    cuts = []
    pos = offsets[2]
    for raw in raw_cuts:
        cuts.append(_parse_cut(raw, pos))
        pos += len(raw) + 1
    for a, b in zip(cuts, cuts[1:]):
        if not a < b:
            raise ColoringSyntaxError("cut points must be strictly increasing", offsets[2])
    return ColoringSpec("interval", r, tuple(cuts))


def color_of(spec: ColoringSpec, x: Fraction) -> int:
    """Color of a positive rational under the spec; always in {1..r}."""
    if x <= 0:
        raise ValueError(f"coloring is only defined for positive rationals, got {x}")
    if spec.kind == "constant":
        return spec.colors
    if spec.kind == "modsum":
        return (x.numerator + x.denominator) % spec.colors + 1
    if spec.kind == "modnum":
        return x.numerator % spec.colors + 1
    if spec.kind == "threshold":
        return 1 if x < spec.params[0] else 2
    # interval
    return 1 + sum(1 for cut in spec.params if x >= cut)
