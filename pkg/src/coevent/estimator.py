"""scikit-learn style wrapper around the co~event Bayes update.

``fit`` takes the hypotheses and reality incidence matrices (labels x atoms)
and learns the match probabilities; ``transform`` maps prior
believabilities (one row per prior) to posteriors and ``predict`` picks the
most believable label.  Exact results are kept in the fitted attributes.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .bayes import bayes_update, bra_posterior, mu_vector
from .core import AtomSpace, CoEvent, match_coevent
from .errors import ValidationError
from .measures import BelievabilityDistribution
from .recurrence import DEFAULT_EPS, DEFAULT_MAX_ITER, limit_believability, run

# float inputs are read through their shortest decimal repr, then checked
# against this slack before being renormalised exactly
SUM_TOLERANCE = 1e-9


def _exact(value) -> Fraction:
    if isinstance(value, (float, np.floating)):
        return Fraction(repr(float(value)))
    if isinstance(value, np.integer):
        return Fraction(int(value))
    return Fraction(value)


def check_incidence(X, name: str = "X", n_labels: int | None = None, n_atoms: int | None = None) -> np.ndarray:
    """Validate a 0/1 incidence matrix (labels x atoms) and return it as bool."""
    arr = check_array(X, dtype=None, ensure_2d=True, input_name=name)
    if not np.isin(arr, (0, 1)).all():
        raise ValidationError(f"{name}: incidence entries must be 0/1 or boolean")
    if n_labels is not None and arr.shape[0] != n_labels:
        raise ValidationError(f"{name}: expected {n_labels} label rows, got {arr.shape[0]}")
    if n_atoms is not None and arr.shape[1] != n_atoms:
        raise ValidationError(f"{name}: expected {n_atoms} atom columns, got {arr.shape[1]}")
    return arr.astype(bool)


def check_distribution(values, n: int, name: str = "distribution") -> tuple[Fraction, ...]:
    """Exact probability vector of length ``n``.

    Accepts ints, Fractions, rational strings or floats.  Floats whose sum is
    within ``SUM_TOLERANCE`` of 1 are renormalised; exact inputs must sum to
    exactly 1.
    """
    raw = list(np.asarray(values, dtype=object).ravel())
    if len(raw) != n:
        raise ValidationError(f"{name}: expected {n} values, got {len(raw)}")
    try:
        exact = [_exact(v) for v in raw]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{name}: {exc}") from None
    if any(v < 0 for v in exact):
        raise ValidationError(f"{name}: values must be non-negative")
    total = sum(exact)
    inexact = any(isinstance(v, (float, np.floating)) for v in raw)
    if total == 0 or (total != 1 and not (inexact and abs(total - 1) <= SUM_TOLERANCE)):
        raise ValidationError(f"{name}: values sum to {float(total)}, not 1")
    return tuple(v / total for v in exact)


class CoeventBayes(BaseEstimator, TransformerMixin):
    """Co~event Bayes update as an estimator.

    Parameters
    ----------
    labels : sequence of str, optional
        Label names, one per incidence row; defaults to ``x1 .. xM``.
    prior : array-like, optional
        Believabilities used by ``fit`` for the reported posterior; uniform
        when omitted.
    eps, max_iter : iteration controls for :meth:`iterate`.
    """

    def __init__(self, labels=None, prior=None, eps=DEFAULT_EPS, max_iter=DEFAULT_MAX_ITER):
        self.labels = labels
        self.prior = prior
        self.eps = eps
        self.max_iter = max_iter

    def fit(self, X, y, sample_weight=None):
        """Learn match probabilities from hypotheses ``X`` and reality ``y``."""
        H = check_incidence(X, "X")
        R = check_incidence(y, "y", *H.shape)
        m, n = H.shape
        labels = tuple(self.labels) if self.labels is not None else tuple(f"x{i + 1}" for i in range(m))
        if len(labels) != m:
            raise ValidationError(f"labels: expected {m} names, got {len(labels)}")
        if sample_weight is None:
            space = AtomSpace.uniform(n)
        else:
            space = AtomSpace(check_distribution(sample_weight, n, "sample_weight"))
        prior = (
            BelievabilityDistribution.uniform(labels)
            if self.prior is None
            else BelievabilityDistribution(labels, check_distribution(self.prior, m, "prior"))
        )
        self.hypotheses_ = CoEvent.from_matrix(space, labels, H)
        self.reality_ = CoEvent.from_matrix(space, labels, R)
        self.match_ = match_coevent(self.hypotheses_, self.reality_)
        self.labels_ = labels
        self.classes_ = np.array(labels)
        self.n_features_in_ = m
        self.mu_exact_ = mu_vector(self.hypotheses_, self.reality_)
        self.mu_ = np.array([float(v) for v in self.mu_exact_.values])
        self.prior_ = prior
        self.report_ = bayes_update(self.hypotheses_, self.reality_, prior)
        self.phi_prior_ = self.report_.phi_prior
        self.posterior_ = self.report_.posterior
        self.phi_post_ = self.report_.phi_post
        return self

    def _posteriors(self, X) -> list[BelievabilityDistribution]:
        check_is_fitted(self, "mu_exact_")
        rows = np.atleast_2d(np.asarray(X, dtype=object))
        if rows.ndim != 2 or rows.shape[1] != self.n_features_in_:
            raise ValidationError(f"X: expected rows of {self.n_features_in_} believabilities")
        out = []
        for i, row in enumerate(rows):
            b = BelievabilityDistribution(self.labels_, check_distribution(row, self.n_features_in_, f"X[{i}]"))
            out.append(bra_posterior(b, self.mu_exact_).posterior)
        return out

    def transform(self, X) -> np.ndarray:
        """Posterior believabilities for each prior row, as floats."""
        return np.array([[float(v) for v in p.values] for p in self._posteriors(X)])

    def transform_exact(self, X) -> list[tuple[Fraction, ...]]:
        return [p.values for p in self._posteriors(X)]

    def predict(self, X) -> np.ndarray:
        """Most believable label after the update (first label wins ties)."""
        picks = []
        for p in self._posteriors(X):
            best = max(p.values)
            picks.append(p.labels[p.values.index(best)])
        return np.array(picks)

    def iterate(self, prior=None):
        """Recurrent updates from ``prior`` (default: the fitted prior)."""
        check_is_fitted(self, "mu_exact_")
        b = self.prior_ if prior is None else BelievabilityDistribution(
            self.labels_, check_distribution(prior, self.n_features_in_, "prior")
        )
        return run(b, self.mu_exact_, self.eps, self.max_iter)

    def limit(self, prior=None):
        check_is_fitted(self, "mu_exact_")
        b = self.prior_ if prior is None else BelievabilityDistribution(
            self.labels_, check_distribution(prior, self.n_features_in_, "prior")
        )
        return limit_believability(b, self.mu_exact_)
