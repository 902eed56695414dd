"""The co~event-based Bayes theorem and the two alternative splittings.

The endorsed update acts on believabilities (the bra side)::

    b_post[x] = b[x] * mu[x] / sum_y b[y] * mu[y]

where ``mu[x]`` is the probability that hypotheses and reality agree for
label ``x``.  The ket-side variant is kept only for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable

from .core import (
    CoEvent,
    Labelling,
    _check_compatible,
    cover_of_class,
    labelling_of,
    match_coevent,
    minkowski_intersect,
)
from .errors import CoeventError, LabelMismatch, UndefinedPosterior, ValidationError
from .measures import (
    BelievabilityDistribution,
    CertaintySpace,
    CertaintyTable,
    LabelVector,
    bra_believability,
    certainty_of,
    certainty_table,
    condition_certainty,
)

KET_VARIANT_TAG = "ket (rejected: reweights observations instead of hypotheses)"


class MatchVector(LabelVector):
    """Match probability per label; each value lies in [0, 1]."""

    def __post_init__(self):
        super().__post_init__()
        if any(not 0 <= v <= 1 for v in self.values):
            raise ValidationError("match probabilities must lie in [0, 1]")


@dataclass(frozen=True)
class BayesReport:
    prior: BelievabilityDistribution
    mu: MatchVector
    phi_prior: Fraction
    posterior: BelievabilityDistribution
    phi_post: Fraction
    posterior_table: CertaintyTable | None = None


@dataclass(frozen=True)
class KetPosterior:
    terraces: dict[Hashable, Fraction]
    labels: dict[str, Fraction]
    variant: str = KET_VARIANT_TAG


def mu_vector(hypotheses: CoEvent, reality: CoEvent) -> MatchVector:
    """Agreement probability per label, computed two ways that must coincide.

    Directly as the weight of the atoms where both rows agree, and from
    marginals as ``1 - p_h - p_r + 2 * p_hr``.
    """
    _check_compatible(hypotheses, reality)
    space = hypotheses.space
    everything = space.everything
    values = []
    for x in hypotheses.labels:
        h, r = hypotheses.row(x), reality.row(x)
        direct = space.measure(everything - (h ^ r))
        via_marginals = 1 - space.measure(h) - space.measure(r) + 2 * space.measure(h & r)
        if direct != via_marginals:
            raise CoeventError(f"match probability for {x!r} disagrees: {direct} != {via_marginals}")
        values.append(direct)
    return MatchVector(hypotheses.labels, tuple(values))


def _aligned(prior: BelievabilityDistribution, mu: MatchVector) -> None:
    if set(prior.labels) != set(mu.labels):
        raise LabelMismatch("prior and match vector have different labels")


def bra_posterior(prior: BelievabilityDistribution, mu: MatchVector) -> BayesReport:
    _aligned(prior, mu)
    phi_prior = sum((prior[x] * mu[x] for x in prior), Fraction(0))
    if phi_prior == 0:
        raise UndefinedPosterior(
            "the match co~event has certainty zero; the Bayes update is not applicable"
        )
    posterior = BelievabilityDistribution(
        prior.labels, tuple(prior[x] * mu[x] / phi_prior for x in prior)
    )
    phi_post = sum((posterior[x] * mu[x] for x in posterior), Fraction(0))
    return BayesReport(prior, mu, phi_prior, posterior, phi_post)


def posterior_certainty(
    match: CoEvent,
    posterior: BelievabilityDistribution,
    labelling: Labelling | None = None,
) -> tuple[Fraction, CertaintyTable]:
    """Posterior certainty of the match co~event and its per-cell table.

    Pass the refinement of the hypotheses' and reality's labellings to get
    the cells broken down by both source terraces; the total is the same
    for any labelling that refines the match co~event's own.
    """
    table = certainty_table(match, CertaintySpace(match.space, posterior), labelling)
    return table.total(), table


def bayes_update(
    hypotheses: CoEvent,
    reality: CoEvent,
    prior: BelievabilityDistribution,
    labelling: Labelling | None = None,
) -> BayesReport:
    """Full update: match co~event, mu, posterior and posterior cell table."""
    match = match_coevent(hypotheses, reality)
    report = bra_posterior(prior, mu_vector(hypotheses, reality))
    if labelling is None:
        labelling = minkowski_intersect(labelling_of(hypotheses), labelling_of(reality))
    phi_post, table = posterior_certainty(match, report.posterior, labelling)
    if phi_post != report.phi_post:
        raise CoeventError("posterior certainty disagrees between cell and label sums")
    return BayesReport(
        report.prior, report.mu, report.phi_prior, report.posterior, report.phi_post, table
    )


def ket_posterior(
    s: CoEvent, cs: CertaintySpace, labelling: Labelling | None = None
) -> KetPosterior:
    """Reweight terrace probabilities by the believability of their cover.

    ``p_post(X) = p(X) * b(X) / Phi(s)`` with ``b(X)`` the summed
    believability of the labels covering the terrace; per-label values are
    covering sums.  Reported for comparison only.
    """
    phi = certainty_of(s, cs)
    if phi == 0:
        raise UndefinedPosterior("the co~event has certainty zero")
    if labelling is None:
        labelling = labelling_of(s)
    b = cs.believabilities
    terraces: dict[Hashable, Fraction] = {}
    per_label = {x: Fraction(0) for x in s.labels}
    for cls in labelling:
        cover = cover_of_class(s, cls)
        value = cls.probability * bra_believability(cover, b) / phi
        terraces[cls.key] = value
        for x in cover:
            per_label[x] += value
    return KetPosterior(terraces, per_label)


def braket_posterior(
    s: CoEvent, cs: CertaintySpace, labelling: Labelling | None = None
) -> CertaintyTable:
    """Per-cell posterior certainty ``phi_x(X) / Phi(s)`` for cells of ``s``.

    Same formula as :func:`coevent.measures.condition_certainty`, and it
    raises the same :class:`~coevent.errors.UndefinedConditional`.
    """
    return condition_certainty(s, cs, labelling)
