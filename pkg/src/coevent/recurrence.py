"""Recurrent application of the co~event-based Bayes update.

Feeding each posterior back in as the next prior gives
``b[n](x) ∝ b0(x) * mu(x) ** n``, so the iteration concentrates on the
labels of maximal match probability (among those with positive prior).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bayes import MatchVector, _aligned
from .core import to_fraction
from .errors import EmptySupport, UndefinedPosterior, ValidationError
from .measures import BelievabilityDistribution

DEFAULT_EPS = Fraction(1, 10**12)
DEFAULT_MAX_ITER = 10**6


@dataclass(frozen=True)
class IterationStep:
    n: int
    believabilities: BelievabilityDistribution
    certainty: Fraction


@dataclass(frozen=True)
class IterationTrace:
    steps: tuple[IterationStep, ...]
    converged: bool
    n_final: int

    @property
    def final(self) -> IterationStep:
        return self.steps[-1]


@dataclass(frozen=True)
class LimitResult:
    x_max: frozenset[str]
    limit_believabilities: BelievabilityDistribution
    limit_certainty: Fraction


def _certainty(b: BelievabilityDistribution, mu: MatchVector) -> Fraction:
    return sum((b[x] * mu[x] for x in b), Fraction(0))


def step(b: BelievabilityDistribution, mu: MatchVector) -> tuple[BelievabilityDistribution, Fraction]:
    """One Bayes update; returns the new believabilities and their certainty."""
    _aligned(b, mu)
    phi = _certainty(b, mu)
    if phi == 0:
        raise UndefinedPosterior("certainty of the match co~event is zero")
    new = BelievabilityDistribution(b.labels, tuple(b[x] * mu[x] / phi for x in b))
    return new, _certainty(new, mu)


class _Weights:
    """Unnormalised integer state ``w[x] ∝ b0[x] * mu[x] ** n``.

    Multiplying by integer numerators of mu keeps each step to a handful of
    big-int products; fractions are only materialised when recorded.
    """

    def __init__(self, b0: BelievabilityDistribution, mu: MatchVector):
        self.labels = b0.labels
        common_b = math.lcm(*(v.denominator for v in b0.values))
        self.w = [int(b0[x] * common_b) for x in self.labels]
        common_mu = math.lcm(*(mu[x].denominator for x in self.labels))
        self.m = [int(mu[x] * common_mu) for x in self.labels]
        self.scale = common_mu

    def advance(self) -> None:
        self.w = [w * m for w, m in zip(self.w, self.m)]
        g = math.gcd(*self.w)
        if g > 1:
            self.w = [w // g for w in self.w]

    def floats(self) -> list[float]:
        total = sum(self.w)
        return [w / total for w in self.w]

    def record(self, n: int) -> IterationStep:
        total = sum(self.w)
        b = BelievabilityDistribution(self.labels, tuple(Fraction(w, total) for w in self.w))
        phi = Fraction(sum(w * m for w, m in zip(self.w, self.m)), total * self.scale)
        return IterationStep(n, b, phi)


def run(
    b0: BelievabilityDistribution,
    mu: MatchVector,
    eps=DEFAULT_EPS,
    n_max: int = DEFAULT_MAX_ITER,
    trace: bool = False,
) -> IterationTrace:
    """Iterate the update until the max-norm change drops below ``eps``.

    Step ``n`` holds ``b[n]`` and its certainty, starting at ``n = 1`` (the
    ordinary posterior).  The change is measured in floating point; the
    recorded states are exact.  Without ``trace`` only the first and last
    steps are kept.
    """
    _aligned(b0, mu)
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValidationError("eps must be positive")
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    if _certainty(b0, mu) == 0:
        raise UndefinedPosterior("certainty of the match co~event is zero")
    mu = MatchVector(b0.labels, tuple(mu[x] for x in b0.labels))
    tol = float(eps)

    state = _Weights(b0, mu)
    previous = [float(v) for v in b0.values]
    steps = []
    converged = False
    n = 0
    while n < n_max:
        state.advance()
        n += 1
        current = state.floats()
        if trace or n == 1:
            steps.append(state.record(n))
        if max(abs(a - b) for a, b in zip(current, previous)) < tol:
            converged = True
            break
        previous = current
    if not trace and steps[-1].n != n:
        steps.append(state.record(n))
    return IterationTrace(tuple(steps), converged, n)


def _x_max(b0: BelievabilityDistribution, mu: MatchVector) -> frozenset[str]:
    _aligned(b0, mu)
    support = b0.support()
    best = max(mu[x] for x in support)
    if best == 0:
        raise EmptySupport("every label with positive believability has zero match probability")
    return frozenset(x for x in support if mu[x] == best)


def limit_believability(b0: BelievabilityDistribution, mu: MatchVector) -> LimitResult:
    """Closed-form limit of :func:`run`: the prior renormalised on ``x_max``.

    ``x_max`` is taken over the support of ``b0``: a label that starts with
    zero believability can never regain any, so it cannot be a limit point.
    """
    top = _x_max(b0, mu)
    mass = sum((b0[x] for x in top), Fraction(0))
    limit = BelievabilityDistribution(
        b0.labels, tuple(b0[x] / mass if x in top else Fraction(0) for x in b0.labels)
    )
    return LimitResult(top, limit, limit_certainty(b0, mu))


def limit_certainty(b0: BelievabilityDistribution, mu: MatchVector) -> Fraction:
    top = _x_max(b0, mu)
    mass = sum((b0[x] for x in top), Fraction(0))
    return sum((b0[x] * mu[x] for x in top), Fraction(0)) / mass
