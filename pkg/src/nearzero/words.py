"""Hypercube words, variable-word substitution, and block-structure search.

Words live in {0..k}^N with positions 1-indexed. A "block" is a
(k+1)-term arithmetic progression of positions; a witness is a base word
carrying 0 on an increasing chain of blocks such that writing any common
letter at one chosen position per block never changes the color. The
searcher scans hypercubes at desk scale in a fixed canonical order
(N ascending, then number of blocks, then block tuples lexicographically,
then base words lexicographically) so results are reproducible.

Also here: the integer-interval progression finder and the exhaustive
van der Waerden number search the near-zero pipelines lean on.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .engine import Exhausted, SearchBudget, run_search


@dataclass(frozen=True)
class Word:
    """A word over the alphabet {0..k}; immutable and hashable."""

    k: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("alphabet bound k must be nonnegative")
        if any(not 0 <= u <= self.k for u in self.letters):
            raise ValueError("letter out of range")

    @property
    def length(self) -> int:
        return len(self.letters)

    def to_digits(self) -> str:
        """Digit-string form; only valid for k <= 9."""
        if self.k > 9:
            raise ValueError("digit serialization requires k <= 9")
        return "".join(str(u) for u in self.letters)

    @classmethod
    def from_digits(cls, text: str, k: int) -> "Word":
        if not text.isdigit():
            raise ValueError(f"not a digit string: {text!r}")
        return cls(k, tuple(int(c) for c in text))


@dataclass(frozen=True)
class ApBlock:
    """An arithmetic progression of positions {start, start+step, ...}."""

    start: int
    step: int
    length: int

    def __post_init__(self):
        if self.start < 1 or self.step < 1 or self.length < 1:
            raise ValueError("block parameters must be positive")

    def positions(self) -> tuple[int, ...]:
        return tuple(self.start + j * self.step for j in range(self.length))

    @property
    def last(self) -> int:
        return self.start + (self.length - 1) * self.step


@dataclass(frozen=True)
class BmWitness:
    """A base word plus increasing blocks whose substitutions stay one color."""

    n: int
    word: Word
    blocks: tuple[ApBlock, ...]
    color: int

    def __post_init__(self):
        validate_block_structure(self.word, self.blocks, self.n)

    @property
    def k(self) -> int:
        return self.word.k


def validate_block_structure(word: Word, blocks: Sequence[ApBlock], n: int | None = None):
    """Check the structural invariants shared by witnesses and generators.

    Blocks must be nonempty, strictly increasing (max of one below min of
    the next), contained in [n], each of length word.k + 1, and the word
    must carry letter 0 throughout them.
    """
    if n is None:
        n = word.length
    if word.length != n:
        raise ValueError(f"word has length {word.length}, expected {n}")
    if not blocks:
        raise ValueError("at least one block is required")
    prev_last = 0
    for b in blocks:
        if b.length != word.k + 1:
            raise ValueError(f"block length {b.length} != k+1 = {word.k + 1}")
        if b.start <= prev_last:
            raise ValueError("blocks must be strictly increasing")
        if b.last > n:
            raise ValueError(f"block {b} does not fit in [1..{n}]")
        prev_last = b.last
    for b in blocks:
        for p in b.positions():
            if word.letters[p - 1] != 0:
                raise ValueError(f"word is nonzero at blocked position {p}")


def substitute(word: Word, positions: Iterable[int], letter: int) -> Word:
    """Write `letter` at every listed position; the rest is unchanged.

    The listed positions must currently carry 0, so that letter 0 is the
    identity substitution.
    """
    pos = sorted(set(positions))
    if not pos:
        raise ValueError("position set must be nonempty")
    if pos[0] < 1 or pos[-1] > word.length:
        raise ValueError("position out of range")
    if not 0 <= letter <= word.k:
        raise ValueError(f"letter {letter} outside 0..{word.k}")
    letters = list(word.letters)
    for p in pos:
        if letters[p - 1] != 0:
            raise ValueError(f"position {p} is nonzero")
        letters[p - 1] = letter
    return Word(word.k, tuple(letters))


def ap_blocks(n: int, k: int) -> list[ApBlock]:
    """All (k+1)-term progressions inside [1..n], in lexicographic (start, step) order.

    For k = 0 a progression is a single position; the step is fixed at 1 so
    each singleton appears once.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    out = []
    if k == 0:
        return [ApBlock(a, 1, 1) for a in range(1, n + 1)]
    for a in range(1, n + 1):
        for d in range(1, (n - a) // k + 1):
            out.append(ApBlock(a, d, k + 1))
    return out


def bm_generated_set(word: Word, blocks: Sequence[ApBlock], k: int) -> set[Word]:
    """All substitutions of one position per block by a common letter.

    Includes the base word itself (letter 0). Duplicates collapse.
    """
    if k != word.k:
        raise ValueError("k does not match the word alphabet")
    validate_block_structure(word, blocks)
    out = {word}
    choices = [b.positions() for b in blocks]
    for picks in _product(choices):
        for t in range(1, k + 1):
            out.add(substitute(word, picks, t))
    return out


def _product(choices: Sequence[Sequence[int]]) -> Iterator[tuple[int, ...]]:
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for tail in _product(choices[1:]):
            yield (head,) + tail


def _increasing_tuples(blocks: Sequence[ApBlock], size: int) -> Iterator[tuple[ApBlock, ...]]:
    """Strictly increasing `size`-tuples of blocks in lexicographic order.

    Relies on `blocks` being sorted by (start, step): every block whose
    start exceeds a given position forms a contiguous tail of the list.
    """
    starts = [b.start for b in blocks]

    def extend(prefix: tuple[ApBlock, ...], min_start: int) -> Iterator[tuple[ApBlock, ...]]:
        if len(prefix) == size:
            yield prefix
            return
        for i in range(bisect_right(starts, min_start), len(blocks)):
            b = blocks[i]
            yield from extend(prefix + (b,), b.last)

    yield from extend((), 0)


def _words_zero_on(n: int, k: int, zero_positions: set[int]) -> Iterator[Word]:
    """Words of length n with 0 at the given positions, lexicographic order."""
    free = [p for p in range(1, n + 1) if p not in zero_positions]
    base = [0] * n

    def extend(i: int) -> Iterator[Word]:
        if i == len(free):
            yield Word(k, tuple(base))
            return
        for letter in range(k + 1):
            base[free[i] - 1] = letter
            yield from extend(i + 1)
        base[free[i] - 1] = 0

    yield from extend(0)


def _bm_candidates(
    k: int, n_values: Iterable[int], blocks_of: Callable[[int, int], Sequence[ApBlock]]
) -> Iterator[tuple[int, tuple[ApBlock, ...], Word]]:
    for n in n_values:
        blocks = blocks_of(n, k)
        max_blocks = n // (k + 1)
        for size in range(1, max_blocks + 1):
            any_tuple = False
            for combo in _increasing_tuples(blocks, size):
                any_tuple = True
                covered = {p for b in combo for p in b.positions()}
                for word in _words_zero_on(n, k, covered):
                    yield n, combo, word
            if not any_tuple:
                break


def find_bm_witness(
    word_coloring: Callable[[Word], int],
    k: int,
    n_values: Iterable[int],
    budget: SearchBudget | None = None,
    *,
    blocks_of: Callable[[int, int], Sequence[ApBlock]] = ap_blocks,
    workers: int = 1,
) -> BmWitness | Exhausted:
    """Search the given hypercubes for a monochromatic block structure.

    Returns the canonically minimal witness (N ascending, then block count,
    then block tuple, then base word) whose full generated set evaluates to
    one color, or Exhausted with the frontier reached. The coloring must be
    pure and total on each searched hypercube; it is re-evaluated on every
    generated word, never trusted.
    """
    if budget is None:
        budget = SearchBudget()

    def accept(cand):
        n, combo, word = cand
        words = bm_generated_set(word, combo, k)
        it = iter(words)
        color = word_coloring(next(it))
        if all(word_coloring(w) == color for w in it):
            return BmWitness(n, word, combo, color)
        return None

    return run_search(
        _bm_candidates(k, n_values, blocks_of),
        accept,
        budget,
        workers=workers,
        n_of=lambda cand: cand[0],
    )


def find_ap_in_interval(colors: Sequence[int], k: int) -> tuple[int, int] | None:
    """Lexicographically minimal (a, d) with {a, a+d, ..., a+kd} monochromatic.

    `colors` lists the colors of 1..n in order. For k = 0 the progression is
    a single point and d is reported as 1. Returns None when no progression
    of length k+1 fits or none is monochromatic.
    """
    n = len(colors)
    if k == 0:
        return (1, 1) if n >= 1 else None
    for a in range(1, n + 1):
        for d in range(1, (n - a) // k + 1):
            first = colors[a - 1]
            if all(colors[a - 1 + i * d] == first for i in range(1, k + 1)):
                return (a, d)
    return None


class CapExceeded(Exception):
    """No qualifying interval length exists at or below the cap."""

    def __init__(self, cap: int):
        super().__init__(f"no answer at or below cap {cap}")
        self.cap = cap


def _has_progression_free_coloring(n: int, k: int, r: int) -> bool:
    """Can [1..n] be r-colored with no monochromatic (k+1)-term progression?

    Backtracking over positions; only progressions ending at the newest
    position need checking. The color of position 1 is pinned to 1, which is
    sound because color permutations preserve the property.
    """
    colors = [0] * (n + 1)

    def completes_progression(pos: int, c: int) -> bool:
        for d in range(1, (pos - 1) // k + 1):
            if all(colors[pos - i * d] == c for i in range(1, k + 1)):
                return True
        return False

    def place(pos: int) -> bool:
        if pos > n:
            return True
        limit = 1 if pos == 1 else r
        for c in range(1, limit + 1):
            if not completes_progression(pos, c):
                colors[pos] = c
                if place(pos + 1):
                    return True
                colors[pos] = 0
        return False

    return place(1)


def vdw_number(k: int, r: int, cap: int) -> int:
    """Least n <= cap forcing a monochromatic (k+1)-term progression in every r-coloring.

    Exhaustive: for each n ascending, a backtracking search tries to build an
    r-coloring of [1..n] avoiding monochromatic (k+1)-term progressions; the
    first n where none exists is the answer. Raises CapExceeded when some
    coloring of [1..cap] still avoids them.
    """
    if k < 1 or r < 1 or cap < 1:
        raise ValueError("need k >= 1, r >= 1, cap >= 1")
    for n in range(1, cap + 1):
        if not _has_progression_free_coloring(n, k, r):
            return n
    raise CapExceeded(cap)
