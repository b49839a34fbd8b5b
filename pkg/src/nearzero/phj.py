"""The layered point space for the polynomial progression search.

A point assigns a rational from a finite alphabet to every index tuple in
[N]^j, for each layer j = 1..d. Overwriting layer j on all tuples drawn
from a set gamma of positions (that is, on gamma^j) with a single value
per layer is the substitution the searcher closes over: a witness is a
base point, zero on every gamma^j, whose substitution orbit is one color.

Layers 1 and 2 are stored densely; layers 3 and up sparsely with default
zero, since N^j entries explode. Both forms are canonical, so equality
and hashing are structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .engine import Exhausted, SearchBudget, run_search
from .exactnum import height_key

_ZERO = Fraction(0)

IndexTuple = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """A finite ordered set of distinct rational values."""

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(set(self.entries)) != len(self.entries):
            raise ValueError("alphabet entries must be distinct")
        if not self.entries:
            raise ValueError("alphabet must be nonempty")

    def __contains__(self, value: Fraction) -> bool:
        return value in self.entries

    @classmethod
    def from_values(cls, values: Iterable[Fraction]) -> "Alphabet":
        """Deduplicate and order by the canonical height order."""
        return cls(tuple(sorted(set(values), key=height_key)))


def index_tuples(side: int, j: int) -> Iterator[IndexTuple]:
    """All tuples in [side]^j in lexicographic order."""
    return product(range(1, side + 1), repeat=j)


def _rank(idx: IndexTuple, side: int) -> int:
    r = 0
    for i in idx:
        r = r * side + (i - 1)
    return r


@dataclass(frozen=True)
class PhjPoint:
    """One point of the layered space; immutable and hashable.

    layers[j-1] is a dense tuple of side**j values for j <= 2, and a sorted
    tuple of (index tuple, nonzero value) pairs for j >= 3.
    """

    degree: int
    side: int
    layers: tuple[tuple, ...]

    @classmethod
    def zeros(cls, degree: int, side: int) -> "PhjPoint":
        if degree < 1 or side < 1:
            raise ValueError("need degree >= 1 and side >= 1")
        layers = tuple(
            (_ZERO,) * side ** j if j <= 2 else () for j in range(1, degree + 1)
        )
        return cls(degree, side, layers)

    def entry(self, j: int, idx: IndexTuple) -> Fraction:
        if not 1 <= j <= self.degree or len(idx) != j:
            raise ValueError(f"bad layer index ({j}, {idx})")
        if any(not 1 <= i <= self.side for i in idx):
            raise ValueError(f"index tuple {idx} outside [1..{self.side}]^{j}")
        layer = self.layers[j - 1]
        if j <= 2:
            return layer[_rank(idx, self.side)]
        for key, value in layer:
            if key == idx:
                return value
        return _ZERO

    def replace(self, updates: Mapping[tuple[int, IndexTuple], Fraction]) -> "PhjPoint":
        """A new point with the given (layer, index tuple) entries rewritten."""
        by_layer: dict[int, dict[IndexTuple, Fraction]] = {}
        for (j, idx), value in updates.items():
            if not 1 <= j <= self.degree or len(idx) != j:
                raise ValueError(f"bad layer index ({j}, {idx})")
            if any(not 1 <= i <= self.side for i in idx):
                raise ValueError(f"index tuple {idx} outside [1..{self.side}]^{j}")
            by_layer.setdefault(j, {})[idx] = value
        layers = list(self.layers)
        for j, entries in by_layer.items():
            if j <= 2:
                dense = list(layers[j - 1])
                for idx, value in entries.items():
                    dense[_rank(idx, self.side)] = value
                layers[j - 1] = tuple(dense)
            else:
                sparse = dict(layers[j - 1])
                for idx, value in entries.items():
                    if value == 0:
                        sparse.pop(idx, None)
                    else:
                        sparse[idx] = value
                layers[j - 1] = tuple(sorted(sparse.items()))
        return PhjPoint(self.degree, self.side, tuple(layers))

    def total(self) -> Fraction:
        """Sum of all entries over all layers."""
        acc = _ZERO
        for j, layer in enumerate(self.layers, start=1):
            if j <= 2:
                acc += sum(layer, _ZERO)
            else:
                acc += sum((v for _, v in layer), _ZERO)
        return acc

    def sum_outside(self, gamma: Sequence[int]) -> Fraction:
        """Sum of entries whose index tuple is not drawn entirely from gamma."""
        gset = set(gamma)
        acc = self.total()
        for j in range(1, self.degree + 1):
            for idx in product(sorted(gset), repeat=j):
                acc -= self.entry(j, idx)
        return acc

    def nonzero_entries(self) -> list[tuple[int, IndexTuple, Fraction]]:
        """Nonzero entries in canonical order (layer, then index tuple)."""
        out = []
        for j, layer in enumerate(self.layers, start=1):
            if j <= 2:
                for idx in index_tuples(self.side, j):
                    value = layer[_rank(idx, self.side)]
                    if value != 0:
                        out.append((j, idx, value))
            else:
                out.extend((j, idx, value) for idx, value in layer)
        return out


def make_point(
    degree: int, side: int, entries: Mapping[tuple[int, IndexTuple], Fraction] | None = None
) -> PhjPoint:
    point = PhjPoint.zeros(degree, side)
    if entries:
        point = point.replace(entries)
    return point


def _validate_gamma(gamma: Sequence[int], side: int) -> tuple[int, ...]:
    g = tuple(sorted(set(gamma)))
    if not g:
        raise ValueError("gamma must be nonempty")
    if g[0] < 1 or g[-1] > side:
        raise ValueError(f"gamma {g} outside [1..{side}]")
    return g


def oplus(point: PhjPoint, gamma: Sequence[int], xs: Sequence[Fraction]) -> PhjPoint:
    """Overwrite layer j with xs[j-1] on every index tuple in gamma^j."""
    g = _validate_gamma(gamma, point.side)
    if len(xs) != point.degree:
        raise ValueError(f"need {point.degree} substitution values, got {len(xs)}")
    updates = {}
    for j in range(1, point.degree + 1):
        for idx in product(g, repeat=j):
            updates[(j, idx)] = xs[j - 1]
    return point.replace(updates)


@dataclass(frozen=True)
class PhjWitness:
    """A base point and position set whose substitution orbit is one color."""

    n: int
    base: PhjPoint
    gamma: tuple[int, ...]
    alphabet: Alphabet
    color: int

    def __post_init__(self):
        validate_phj_structure(self.base, self.gamma, self.alphabet)

    @property
    def degree(self) -> int:
        return self.base.degree


def validate_phj_structure(base: PhjPoint, gamma: Sequence[int], alphabet: Alphabet):
    """Structural invariants: base zero on every gamma^j, entries in the alphabet."""
    g = _validate_gamma(gamma, base.side)
    if _ZERO not in alphabet:
        raise ValueError("alphabet must contain 0 for a valid base point")
    for j in range(1, base.degree + 1):
        for idx in product(g, repeat=j):
            if base.entry(j, idx) != 0:
                raise ValueError(f"base point is nonzero on gamma^{j} at {idx}")
    for _, idx, value in base.nonzero_entries():
        if value not in alphabet:
            raise ValueError(f"entry {value} at {idx} is not in the alphabet")


def phj_generated_set(
    base: PhjPoint, gamma: Sequence[int], alphabet: Alphabet
) -> set[PhjPoint]:
    """The substitution orbit of the base point, duplicates collapsed."""
    validate_phj_structure(base, gamma, alphabet)
    g = _validate_gamma(gamma, base.side)
    return {
        oplus(base, g, xs) for xs in product(alphabet.entries, repeat=base.degree)
    }


def _free_slots(degree: int, side: int, gamma: tuple[int, ...]) -> list[tuple[int, IndexTuple]]:
    gset = set(gamma)
    slots = []
    for j in range(1, degree + 1):
        for idx in index_tuples(side, j):
            if not all(i in gset for i in idx):
                slots.append((j, idx))
    return slots


def _assignments(
    count: int, letters: tuple[Fraction, ...], max_nonzero: int | None
) -> Iterator[tuple[Fraction, ...]]:
    """Value vectors in lexicographic order over the given letter order.

    With max_nonzero set, vectors with more nonzero entries are skipped;
    skipping preserves the order of what remains.
    """
    if max_nonzero is None:
        yield from product(letters, repeat=count)
        return
    acc: list[Fraction] = []

    def extend(i: int, quota: int) -> Iterator[tuple[Fraction, ...]]:
        if i == count:
            yield tuple(acc)
            return
        for v in letters:
            cost = 0 if v == 0 else 1
            if cost <= quota:
                acc.append(v)
                yield from extend(i + 1, quota - cost)
                acc.pop()

    yield from extend(0, max_nonzero)


def _phj_candidates(
    alphabet: Alphabet, degree: int, n_values: Iterable[int], max_support: int | None
) -> Iterator[tuple[int, tuple[int, ...], PhjPoint]]:
    letters = tuple(sorted(alphabet.entries, key=height_key))
    for n in n_values:
        for size in range(1, n + 1):
            for gamma in combinations(range(1, n + 1), size):
                slots = _free_slots(degree, n, gamma)
                for values in _assignments(len(slots), letters, max_support):
                    updates = {
                        slot: value for slot, value in zip(slots, values) if value != 0
                    }
                    yield n, gamma, make_point(degree, n, updates)


def find_phj_witness(
    point_coloring: Callable[[PhjPoint], int],
    alphabet: Alphabet,
    degree: int,
    n_values: Iterable[int],
    budget: SearchBudget | None = None,
    *,
    max_support: int | None = None,
    workers: int = 1,
) -> PhjWitness | Exhausted:
    """Search layered spaces for a monochromatic substitution orbit.

    Canonical order: side length ascending, then gamma by size and
    lexicographic position, then base points lexicographic with entries
    compared in the height order. The alphabet must contain 0 (base points
    are zero on gamma^j by definition). `max_support` optionally restricts
    base points to at most that many nonzero entries off gamma, which keeps
    larger spaces tractable; the result is then minimal over the restricted
    frontier. The coloring must be pure; every orbit point is re-colored,
    never trusted.
    """
    if budget is None:
        budget = SearchBudget()
    if _ZERO not in alphabet:
        raise ValueError("alphabet must contain 0")
    if degree < 1:
        raise ValueError("degree must be at least 1")

    def accept(cand):
        n, gamma, base = cand
        points = phj_generated_set(base, gamma, alphabet)
        it = iter(points)
        color = point_coloring(next(it))
        if all(point_coloring(p) == color for p in it):
            return PhjWitness(n, base, gamma, alphabet, color)
        return None

    return run_search(
        _phj_candidates(alphabet, degree, n_values, max_support),
        accept,
        budget,
        workers=workers,
        n_of=lambda cand: cand[0],
    )
