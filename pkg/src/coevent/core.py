"""Finite bra-ket spaces, co~events as label-by-atom relations, and labellings.

A co~event over a finite space is stored rowwise: one ket-event (a set of
atom indices) per label.  Any set of (label, atom) cells has exactly one
such representation, so nothing is lost by this layout.

Labellings group atoms by the set of labels that cover them (the terraces
of a co~event) and carry the probability of each group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .errors import LabelMismatch, SpaceMismatch, ValidationError

KetEvent = frozenset  # of atom indices


def to_fraction(value: Any) -> Fraction:
    """Exact rational from an int, Fraction, ``"a/b"`` string or decimal string.

    Floats are rejected; they would silently smuggle binary rounding into
    exact arithmetic.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"expected int, Fraction or str, got {type(value).__name__}")


@dataclass(frozen=True)
class AtomSpace:
    """Ordered finite sample space with rational probability weights."""

    weights: tuple[Fraction, ...]
    atoms: tuple[Hashable, ...] = ()

    def __post_init__(self):
        weights = tuple(to_fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise ValidationError("atom space must contain at least one atom")
        if any(w < 0 for w in weights):
            raise ValidationError("atom weights must be non-negative")
        if sum(weights) != 1:
            raise ValidationError(f"atom weights sum to {sum(weights)}, not 1")
        atoms = tuple(self.atoms) if self.atoms else tuple(range(len(weights)))
        if len(atoms) != len(weights):
            raise ValidationError("one identifier per weight is required")
        if len(set(atoms)) != len(atoms):
            raise ValidationError("atom identifiers must be unique")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def uniform(cls, n: int) -> "AtomSpace":
        if n < 1:
            raise ValidationError("atom space must contain at least one atom")
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.weights)) == 1

    def measure(self, event: Iterable[int]) -> Fraction:
        return sum((self.weights[a] for a in event), Fraction(0))

    @property
    def everything(self) -> frozenset[int]:
        return frozenset(range(len(self.weights)))


@dataclass(frozen=True)
class CoEvent:
    """A co~event: one ket-event per label, all over the same atom space.

    ``rows`` is stored as a tuple aligned with ``labels``; build instances
    with :meth:`from_rows` or :meth:`from_matrix`.
    """

    space: AtomSpace
    labels: tuple[str, ...]
    rows: tuple[frozenset[int], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        rows = tuple(frozenset(r) for r in self.rows)
        if not labels:
            raise ValidationError("a co~event needs at least one label")
        if any(not isinstance(x, str) or not x for x in labels):
            raise ValidationError("labels must be non-empty strings")
        if len(set(labels)) != len(labels):
            raise ValidationError("labels must be unique")
        if len(rows) != len(labels):
            raise ValidationError("one row per label is required")
        n = len(self.space)
        for x, row in zip(labels, rows):
            bad = [a for a in row if not isinstance(a, int) or not 0 <= a < n]
            if bad:
                raise ValidationError(f"row {x!r}: atom indices out of range: {sorted(bad)}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(labels)})

    @classmethod
    def from_rows(cls, space: AtomSpace, rows: Mapping[str, Iterable[int]]) -> "CoEvent":
        return cls(space, tuple(rows), tuple(frozenset(r) for r in rows.values()))

    @classmethod
    def from_matrix(cls, space: AtomSpace, labels: Sequence[str], matrix) -> "CoEvent":
        """Build from a labels x atoms boolean incidence matrix."""
        rows = []
        for line in matrix:
            line = list(line)
            if len(line) != len(space):
                raise ValidationError("incidence matrix width must equal the number of atoms")
            rows.append(frozenset(a for a, v in enumerate(line) if v))
        return cls(space, tuple(labels), tuple(rows))

    @classmethod
    def empty(cls, space: AtomSpace, labels: Sequence[str]) -> "CoEvent":
        return cls(space, tuple(labels), tuple(frozenset() for _ in labels))

    @classmethod
    def full(cls, space: AtomSpace, labels: Sequence[str]) -> "CoEvent":
        return cls(space, tuple(labels), tuple(space.everything for _ in labels))

    def row(self, label: str) -> frozenset[int]:
        try:
            return self.rows[self._index[label]]
        except KeyError:
            raise LabelMismatch(f"label {label!r} is not part of this co~event") from None

    def cell(self, label: str, atom: int) -> bool:
        return atom in self.row(label)

    def cover(self, atom: int) -> frozenset[str]:
        """Labels whose row contains ``atom``."""
        return frozenset(x for x, r in zip(self.labels, self.rows) if atom in r)

    def cells(self) -> set[tuple[str, int]]:
        return {(x, a) for x, r in zip(self.labels, self.rows) for a in r}

    def to_matrix(self) -> list[list[bool]]:
        return [[a in r for a in range(len(self.space))] for r in self.rows]

    def items(self):
        return zip(self.labels, self.rows)


def _check_compatible(a: CoEvent, b: CoEvent) -> None:
    if a.space != b.space:
        raise SpaceMismatch("co~events live on different atom spaces")
    if set(a.labels) != set(b.labels):
        raise LabelMismatch(
            f"label sets differ: {sorted(set(a.labels) ^ set(b.labels))}"
        )


def complement(s: CoEvent) -> CoEvent:
    everything = s.space.everything
    return CoEvent(s.space, s.labels, tuple(everything - r for r in s.rows))


def symmetric_difference(a: CoEvent, b: CoEvent) -> CoEvent:
    _check_compatible(a, b)
    return CoEvent(a.space, a.labels, tuple(r ^ b.row(x) for x, r in a.items()))


def match_coevent(hypotheses: CoEvent, reality: CoEvent) -> CoEvent:
    """Cells where hypotheses and reality agree: both cover or both omit."""
    return complement(symmetric_difference(hypotheses, reality))


@dataclass(frozen=True)
class LabelClass:
    """One block of a labelling.

    ``key`` is the covering label subset for a labelling generated by a
    co~event, or a tuple of parent keys for a refinement.
    """

    key: Hashable
    atoms: frozenset[int]
    probability: Fraction


@dataclass(frozen=True)
class Labelling:
    space: AtomSpace
    classes: tuple[LabelClass, ...]

    def __post_init__(self):
        seen: set[int] = set()
        for c in self.classes:
            if not c.atoms:
                raise ValidationError("labelling classes must be non-empty")
            if seen & c.atoms:
                raise ValidationError("labelling classes overlap")
            seen |= c.atoms
            if c.probability != self.space.measure(c.atoms):
                raise ValidationError(f"class {c.key!r}: probability does not match its atoms")
        if seen != self.space.everything:
            raise ValidationError("labelling classes do not cover the atom space")
        keys = [c.key for c in self.classes]
        if len(set(keys)) != len(keys):
            raise ValidationError("labelling keys must be unique")

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def __getitem__(self, key) -> LabelClass:
        for c in self.classes:
            if c.key == key:
                return c
        raise KeyError(key)

    def class_of(self, atom: int) -> LabelClass:
        for c in self.classes:
            if atom in c.atoms:
                return c
        raise IndexError(atom)

    def probabilities(self) -> dict:
        return {c.key: c.probability for c in self.classes}

    def refines(self, other: "Labelling") -> bool:
        """True when every class of ``other`` is a union of classes of ``self``."""
        return all(
            any(c.atoms <= o.atoms for o in other.classes) for c in self.classes
        )


def _ordered(space: AtomSpace, groups: Mapping[Hashable, set[int]]) -> Labelling:
    classes = [
        LabelClass(key, frozenset(atoms), space.measure(atoms))
        for key, atoms in groups.items()
    ]
    classes.sort(key=lambda c: min(c.atoms))
    return Labelling(space, tuple(classes))


def labelling_of(s: CoEvent) -> Labelling:
    """Terrace partition of the atoms by covering label subset."""
    groups: dict[frozenset[str], set[int]] = {}
    for a in range(len(s.space)):
        groups.setdefault(s.cover(a), set()).add(a)
    return _ordered(s.space, groups)


def minkowski_intersect(first: Labelling, second: Labelling) -> Labelling:
    """Common refinement: every non-empty pairwise intersection of classes.

    Refined classes are keyed by the pair ``(first.key, second.key)``.
    """
    if first.space != second.space:
        raise SpaceMismatch("labellings partition different atom spaces")
    groups = {}
    for c1 in first.classes:
        for c2 in second.classes:
            common = c1.atoms & c2.atoms
            if common:
                groups[(c1.key, c2.key)] = set(common)
    return _ordered(first.space, groups)


def cover_of_class(s: CoEvent, cls: LabelClass) -> frozenset[str]:
    """Labels of ``s`` covering the class; the class must not straddle a terrace."""
    atoms = iter(cls.atoms)
    cover = s.cover(next(atoms))
    for a in atoms:
        if s.cover(a) != cover:
            raise ValidationError(
                f"class {cls.key!r} is not contained in a single terrace of the co~event"
            )
    return cover
