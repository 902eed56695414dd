"""Believability, probability and certainty measures on finite co~events.

Certainty is the product measure of believability (over labels) and
probability (over atoms): a cell ``(x, a)`` weighs ``b_x * w_a``.  All
arithmetic here is exact; see :func:`coevent.report.to_decimal` for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .core import AtomSpace, CoEvent, Labelling, cover_of_class, labelling_of, to_fraction
from .errors import LabelMismatch, UndefinedConditional, UnknownLabel, ValidationError


@dataclass(frozen=True)
class LabelVector(Mapping):
    """Rational value per label, in label order."""

    labels: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        values = tuple(to_fraction(v) for v in self.values)
        if len(labels) != len(values):
            raise ValidationError("one value per label is required")
        if len(set(labels)) != len(labels):
            raise ValidationError("labels must be unique")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, object]):
        return cls(tuple(mapping), tuple(mapping.values()))

    def __getitem__(self, label: str) -> Fraction:
        try:
            return self.values[self.labels.index(label)]
        except ValueError:
            raise UnknownLabel(label) from None

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def support(self) -> frozenset[str]:
        return frozenset(x for x, v in zip(self.labels, self.values) if v > 0)


class BelievabilityDistribution(LabelVector):
    """Believabilities ``b_x`` of the bra-events; non-negative, summing to 1."""

    def __post_init__(self):
        super().__post_init__()
        if any(v < 0 for v in self.values):
            raise ValidationError("believabilities must be non-negative")
        if sum(self.values) != 1:
            raise ValidationError(f"believabilities sum to {sum(self.values)}, not 1")

    @classmethod
    def uniform(cls, labels: Sequence[str]) -> "BelievabilityDistribution":
        return cls(tuple(labels), tuple(Fraction(1, len(labels)) for _ in labels))


@dataclass(frozen=True)
class CertaintySpace:
    space: AtomSpace
    believabilities: BelievabilityDistribution

    def check(self, s: CoEvent) -> None:
        if set(s.labels) != set(self.believabilities.labels):
            raise LabelMismatch("co~event labels differ from the believability labels")
        if s.space != self.space:
            raise LabelMismatch("co~event lives on a different atom space")


@dataclass(frozen=True)
class CertaintyTable:
    """Certainty of elementary co~events ``<x|X>``.

    ``entries`` maps ``(label, class key)`` to a rational, in the order
    the labelling lists its classes (labels within a class in label order).
    """

    labelling: Labelling
    labels: tuple[str, ...]
    entries: Mapping[tuple[str, Hashable], Fraction]

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def __getitem__(self, cell) -> Fraction:
        return self.entries[cell]

    def get(self, label: str, key: Hashable, default=Fraction(0)) -> Fraction:
        return self.entries.get((label, key), default)

    def for_atom(self, label: str, atom: int) -> Fraction:
        """Entry for the class containing ``atom``; zero if the cell is absent."""
        return self.get(label, self.labelling.class_of(atom).key)

    def scaled(self, factor: Fraction) -> "CertaintyTable":
        return CertaintyTable(
            self.labelling, self.labels, {k: v * factor for k, v in self.entries.items()}
        )


def ket_probability(event: Iterable[int], space: AtomSpace) -> Fraction:
    return space.measure(event)


def bra_believability(labels: Iterable[str], b: BelievabilityDistribution) -> Fraction:
    total = Fraction(0)
    for x in labels:
        total += b[x]
    return total


def certainty_of(s: CoEvent, cs: CertaintySpace) -> Fraction:
    cs.check(s)
    b = cs.believabilities
    return sum((b[x] * s.space.measure(row) for x, row in s.items()), Fraction(0))


def certainty_table(
    s: CoEvent, cs: CertaintySpace, labelling: Labelling | None = None
) -> CertaintyTable:
    """Per-cell certainties ``b_x * p(X)`` over a labelling of ``s``.

    By default the labelling generated by ``s`` is used; any refinement of it
    (such as a Minkowski intersection) may be passed instead.
    """
    cs.check(s)
    if labelling is None:
        labelling = labelling_of(s)
    b = cs.believabilities
    entries = {}
    for cls in labelling:
        cover = cover_of_class(s, cls)
        for x in s.labels:
            if x in cover:
                entries[(x, cls.key)] = b[x] * cls.probability
    return CertaintyTable(labelling, s.labels, entries)


def condition_certainty(
    s: CoEvent, cs: CertaintySpace, labelling: Labelling | None = None
) -> CertaintyTable:
    """Certainty table of ``s`` conditioned on ``s`` itself; sums to 1."""
    total = certainty_of(s, cs)
    if total == 0:
        raise UndefinedConditional("the conditioning co~event has certainty zero")
    return certainty_table(s, cs, labelling).scaled(1 / total)
