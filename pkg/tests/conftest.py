from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from coevent import AtomSpace, BelievabilityDistribution, CoEvent, load_bundled


def _normalise(parts):
    total = sum(parts)
    return tuple(Fraction(p, total) for p in parts)


@st.composite
def spaces(draw, max_atoms: int = 12, uniform: bool | None = None):
    n = draw(st.integers(1, max_atoms))
    if uniform is None:
        uniform = draw(st.booleans())
    if uniform:
        return AtomSpace.uniform(n)
    parts = draw(st.lists(st.integers(0, 9), min_size=n, max_size=n).filter(lambda p: sum(p) > 0))
    return AtomSpace(_normalise(parts))


def label_names(m: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(m))


@st.composite
def coevents(draw, space=None, labels=None, max_labels: int = 5):
    if space is None:
        space = draw(spaces())
    if labels is None:
        labels = label_names(draw(st.integers(1, max_labels)))
    n = len(space)
    rows = tuple(
        frozenset(draw(st.sets(st.integers(0, n - 1), max_size=n))) for _ in labels
    )
    return CoEvent(space, labels, rows)


@st.composite
def coevent_pairs(draw, max_atoms: int = 12, max_labels: int = 5):
    space = draw(spaces(max_atoms))
    labels = label_names(draw(st.integers(1, max_labels)))
    return draw(coevents(space, labels)), draw(coevents(space, labels))


@st.composite
def believabilities(draw, labels, positive: bool = False):
    low = 1 if positive else 0
    parts = draw(
        st.lists(st.integers(low, 9), min_size=len(labels), max_size=len(labels)).filter(
            lambda p: sum(p) > 0
        )
    )
    return BelievabilityDistribution(labels, _normalise(parts))


@pytest.fixture(params=["example1", "example2", "example3", "example4", "example5"])
def bundled(request):
    return load_bundled(request.param)


# acceptance results, printed once at the end of the session
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {line}")
