"""Constructors for the bundled worked examples.

Doctor and patients (examples 1-4)
----------------------------------
200 patients, two hypotheses ``x`` (tumour) and ``y`` (cold).  The
preliminary checkup (hypotheses) is the same in all four examples::

    atoms   0..7     covered by {x}       8 patients
    atoms   8..9     covered by {x, y}    2
    atoms  10..159   covered by {y}     150
    atoms 160..199   covered by {}       40

The reference tables give only terrace totals for reality, which leaves the
overlap with the hypotheses open.  The layouts below are the ones that
reproduce the reference match probabilities and posterior cell tables.

Ten tasters (example 5)
-----------------------
10 tasters x 10 bottles with uniform weights, grids copied cell by cell.
The reference prior believabilities are rounded; the exact values
``(1, 2, ..., 9, 2) / 47`` are the ones consistent with the iteration table.
"""

from __future__ import annotations

from fractions import Fraction

from .core import AtomSpace, CoEvent
from .measures import BelievabilityDistribution
from .scenario import Scenario

TUMOUR_ONLY = range(0, 8)
BOTH = range(8, 10)
COLD_ONLY = range(10, 160)
NEITHER = range(160, 200)

DOCTOR_LABELS = ("x", "y")

# hypotheses row / reality row per bottle, 'x' or 'o' = covered
TASTER_HYPOTHESES = (
    ".xx..xxxx.",
    "xxxxx.....",
    "...xxxxxx.",
    "xxx....xxx",
    "...xxxx...",
    ".....xxxxx",
    ".xxxxxx...",
    "x..xx..xx.",
    ".xx..xx..x",
    ".xxxx..xx.",
)
TASTER_REALITY = (
    "oooo..oooo",
    "..oooooo..",
    "oooooo....",
    "....oooooo",
    "oo..oo..oo",
    "..oooo....",
    "....oooo..",
    "oo....oooo",
    "oo..oooo..",
    "oooooo..oo",
)
TASTER_BELIEVABILITIES = tuple(Fraction(k, 47) for k in (1, 2, 3, 4, 5, 6, 7, 8, 9, 2))


def _atoms(*ranges) -> frozenset[int]:
    return frozenset(a for r in ranges for a in r)


def _doctor(name: str, description: str, reality_x, reality_y) -> Scenario:
    space = AtomSpace.uniform(200)
    hypotheses = CoEvent(
        space,
        DOCTOR_LABELS,
        (_atoms(TUMOUR_ONLY, BOTH), _atoms(BOTH, COLD_ONLY)),
    )
    reality = CoEvent(space, DOCTOR_LABELS, (frozenset(reality_x), frozenset(reality_y)))
    return Scenario(
        space=space,
        labels=DOCTOR_LABELS,
        believabilities=BelievabilityDistribution.uniform(DOCTOR_LABELS),
        hypotheses=hypotheses,
        reality=reality,
        name=name,
        description=description,
    )


def example1() -> Scenario:
    return _doctor(
        "example1",
        "Doctor and patients: examination confirms every hypothesis (reality = hypotheses).",
        _atoms(TUMOUR_ONLY, BOTH),
        _atoms(BOTH, COLD_ONLY),
    )


def example2() -> Scenario:
    return _doctor(
        "example2",
        "Doctor and patients: examination contradicts every hypothesis (reality = complement).",
        _atoms(COLD_ONLY, NEITHER),
        _atoms(TUMOUR_ONLY, NEITHER),
    )


def example3() -> Scenario:
    return _doctor(
        "example3",
        "Doctor and patients: tumour found exactly in the 150 suspected colds; cold diagnoses confirmed.",
        _atoms(COLD_ONLY),
        _atoms(BOTH, COLD_ONLY),
    )


def example4() -> Scenario:
    # reality splits the 150 suspected colds into 120 tumour-only and 30 both
    split = 130
    return _doctor(
        "example4",
        "Doctor and patients: mixed agreement, match probabilities 48/200 and 72/200.",
        _atoms(TUMOUR_ONLY, range(10, 160)),
        _atoms(TUMOUR_ONLY, BOTH, range(split, 160)),
    )


def example5() -> Scenario:
    labels = tuple(f"x{i}" for i in range(1, 11))
    space = AtomSpace.uniform(10)
    hypotheses = CoEvent(
        space, labels, tuple(frozenset(a for a, c in enumerate(row) if c != ".") for row in TASTER_HYPOTHESES)
    )
    reality = CoEvent(
        space, labels, tuple(frozenset(a for a, c in enumerate(row) if c != ".") for row in TASTER_REALITY)
    )
    return Scenario(
        space=space,
        labels=labels,
        believabilities=BelievabilityDistribution(labels, TASTER_BELIEVABILITIES),
        hypotheses=hypotheses,
        reality=reality,
        name="example5",
        description="Ten tasters, ten bottles: predicted good wine versus wine found good.",
    )


BUILDERS = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
    "example4": example4,
    "example5": example5,
}
