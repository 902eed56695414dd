from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from coevent import (
    AtomSpace,
    BelievabilityDistribution,
    CertaintySpace,
    CoEvent,
    LabelMismatch,
    UndefinedConditional,
    UndefinedPosterior,
    ValidationError,
    bayes_update,
    bra_posterior,
    certainty_of,
    braket_posterior,
    ket_posterior,
    labelling_of,
    match_coevent,
    minkowski_intersect,
    mu_vector,
    posterior_certainty,
)
from coevent.bayes import KET_VARIANT_TAG, MatchVector
from coevent.examples import BUILDERS, TASTER_BELIEVABILITIES

from conftest import believabilities, coevent_pairs


def update(name):
    s = BUILDERS[name]()
    return s, bayes_update(s.hypotheses, s.reality, s.believabilities)


def cell(report, s, label, atom):
    return report.posterior_table.for_atom(label, atom)


def test_match_vector_range():
    with pytest.raises(ValidationError):
        MatchVector(("a",), (F(3, 2),))


def test_example1_identity():
    s, r = update("example1")
    assert r.mu.values == (1, 1)
    assert r.posterior.values == (F(1, 2), F(1, 2))
    assert r.phi_prior == 1 and r.phi_post == 1


def test_example2_undefined():
    s = BUILDERS["example2"]()
    mu = mu_vector(s.hypotheses, s.reality)
    assert mu.values == (0, 0)
    with pytest.raises(UndefinedPosterior):
        bayes_update(s.hypotheses, s.reality, s.believabilities)


def test_example2_reality_marginals():
    s = BUILDERS["example2"]()
    space = s.space
    assert space.measure(s.reality.row("x")) == F(190, 200)
    assert space.measure(s.reality.row("y")) == F(48, 200)
    cs = CertaintySpace(space, s.believabilities)
    assert certainty_of(s.reality, cs) == F(119, 200)


def test_example3():
    s, r = update("example3")
    assert r.mu.values == (F(1, 5), 1)
    assert r.posterior.values == (F(1, 6), F(5, 6))
    assert r.phi_prior == F(3, 5)
    assert r.phi_post == F(13, 15)
    assert cell(r, s, "y", 50) == F(750, 1200)
    assert cell(r, s, "x", 170) == F(40, 1200)
    assert cell(r, s, "y", 170) == F(200, 1200)
    assert cell(r, s, "y", 0) == F(40, 1200)
    assert cell(r, s, "y", 8) == F(10, 1200)
    assert cell(r, s, "x", 0) == 0


def test_example3_on_match_labelling_merges_cells():
    s = BUILDERS["example3"]()
    m = match_coevent(s.hypotheses, s.reality)
    r = bra_posterior(s.believabilities, mu_vector(s.hypotheses, s.reality))
    total, table = posterior_certainty(m, r.posterior, labelling_of(m))
    assert total == F(13, 15)
    assert table.for_atom("y", 50) == F(800, 1200)


def test_example4():
    s, r = update("example4")
    assert r.mu.values == (F(48, 200), F(72, 200))
    assert r.posterior.values == (F(2, 5), F(3, 5))
    assert r.phi_prior == F(3, 10)
    assert r.phi_post == F(312, 1000)
    assert cell(r, s, "x", 0) == F(16, 1000)
    assert cell(r, s, "x", 170) == F(80, 1000)
    assert cell(r, s, "y", 8) == F(6, 1000)
    assert cell(r, s, "y", 140) == F(90, 1000)
    assert cell(r, s, "y", 170) == F(120, 1000)
    assert cell(r, s, "x", 50) == cell(r, s, "y", 50) == 0


def test_example4_terraces():
    s = BUILDERS["example4"]()
    refined = minkowski_intersect(labelling_of(s.hypotheses), labelling_of(s.reality))
    assert sorted(len(c.atoms) for c in refined) == [2, 8, 30, 40, 120]


def test_example5():
    s, r = update("example5")
    assert s.believabilities.values == TASTER_BELIEVABILITIES
    assert r.mu.values == tuple(F(k, 10) for k in (6, 5, 4, 4, 4, 3, 6, 5, 5, 6))
    assert r.phi_prior == F(221, 470)
    assert r.phi_post == F(1081, 2210)


def test_label_mismatch_between_prior_and_mu():
    with pytest.raises(LabelMismatch):
        bra_posterior(BelievabilityDistribution.uniform(("a",)), MatchVector(("b",), (1,)))


def test_ket_variant_on_example3():
    s = BUILDERS["example3"]()
    m = match_coevent(s.hypotheses, s.reality)
    k = ket_posterior(m, CertaintySpace(s.space, s.believabilities))
    assert k.variant == KET_VARIANT_TAG
    assert sum(k.terraces.values()) == 1
    # the both-covered terrace of atoms 160..199 has b = 1, the rest b = 1/2
    assert k.terraces[frozenset({"x", "y"})] == F(40, 200) / F(3, 5)
    assert k.terraces[frozenset({"y"})] == F(160, 200) * F(1, 2) / F(3, 5)


def test_braket_variant_on_example3():
    s = BUILDERS["example3"]()
    m = match_coevent(s.hypotheses, s.reality)
    table = braket_posterior(m, CertaintySpace(s.space, s.believabilities))
    assert table.total() == 1
    assert table.for_atom("y", 50) == F(160, 200) * F(1, 2) / F(3, 5)


def test_variants_on_empty_match():
    s = BUILDERS["example2"]()
    m = match_coevent(s.hypotheses, s.reality)
    cs = CertaintySpace(s.space, s.believabilities)
    with pytest.raises(UndefinedPosterior):
        ket_posterior(m, cs)
    with pytest.raises(UndefinedConditional):
        braket_posterior(m, cs)


def test_zero_prior_label_stays_zero():
    space = AtomSpace.uniform(2)
    h = CoEvent.from_rows(space, {"a": [0], "b": [0]})
    r = CoEvent.from_rows(space, {"a": [0], "b": [0, 1]})
    prior = BelievabilityDistribution(("a", "b"), (0, 1))
    rep = bayes_update(h, r, prior)
    assert rep.mu.values == (1, F(1, 2))
    assert rep.posterior.values == (0, 1)
    assert rep.phi_prior == rep.phi_post == F(1, 2)


@given(st.data())
def test_update_properties(data):
    h, r = data.draw(coevent_pairs())
    prior = data.draw(believabilities(h.labels))
    mu = mu_vector(h, r)
    phi = sum((prior[x] * mu[x] for x in h.labels), F(0))
    if phi == 0:
        with pytest.raises(UndefinedPosterior):
            bayes_update(h, r, prior)
        return
    rep = bayes_update(h, r, prior)
    assert sum(rep.posterior.values) == 1
    assert rep.posterior.support() <= prior.support()
    assert rep.phi_post == rep.posterior_table.total()
    # posterior certainty never drops: sum b mu^2 / sum b mu >= sum b mu
    assert rep.phi_post >= rep.phi_prior
    for x in h.labels:
        assert rep.posterior[x] * rep.phi_prior == prior[x] * mu[x]
