"""Pipeline from a scenario to a report, plus text and JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .bayes import BayesReport, KetPosterior, MatchVector, bayes_update, braket_posterior, ket_posterior, mu_vector
from .core import CoEvent, Labelling, cover_of_class, labelling_of, match_coevent, minkowski_intersect
from .errors import UndefinedPosterior, ValidationError
from .measures import CertaintySpace, CertaintyTable, certainty_of
from .recurrence import DEFAULT_EPS, DEFAULT_MAX_ITER, IterationTrace, LimitResult, limit_believability, run
from .scenario import Scenario

VARIANTS = ("bra", "ket", "braket")
DEFAULT_PRECISION = 3
DEFAULT_TRACE_LIMIT = 100

MARKERS = {
    "unicode": {"H": "×", "R": "○", "both": "⊗", "neither": "#", "off": "."},
    "ascii": {"H": "x", "R": "o", "both": "@", "neither": "#", "off": "."},
}


def to_decimal(value: Fraction, precision: int = DEFAULT_PRECISION) -> str:
    """Fixed-point text of ``value`` rounded half-to-even at ``precision`` places."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    scaled = round(Fraction(value) * 10**precision)  # Fraction.__round__ is half-even
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**precision)
    return f"{sign}{whole}.{frac:0{precision}d}"


def rational(value: Fraction, precision: int = DEFAULT_PRECISION) -> dict[str, str]:
    return {"exact": str(Fraction(value)), "decimal": to_decimal(value, precision)}


@dataclass(frozen=True)
class Report:
    scenario: Scenario
    variant: str
    mu: MatchVector
    phi_prior: Fraction
    bayes: BayesReport
    labellings: dict[str, Labelling]
    ket: KetPosterior | None = None
    braket: CertaintyTable | None = None
    iteration: IterationTrace | None = None
    limit: LimitResult | None = None
    match: CoEvent | None = field(default=None, compare=False)

    @property
    def posterior(self):
        return self.bayes.posterior

    @property
    def phi_post(self) -> Fraction:
        return self.bayes.phi_post


def run_pipeline(
    s: Scenario,
    variant: str = "bra",
    iterate: bool = False,
    eps=DEFAULT_EPS,
    max_iter: int = DEFAULT_MAX_ITER,
    trace: bool = False,
) -> Report:
    """Match, mu, Bayes update and (optionally) the recurrent iteration.

    The endorsed bra-side update is always computed; ``variant`` adds the
    ket-side or cell-level alternative for comparison.  Raises
    :class:`UndefinedPosterior` when the match co~event has certainty zero.
    """
    if variant not in VARIANTS:
        raise ValidationError(f"unknown variant {variant!r}; choose from {VARIANTS}")
    match = match_coevent(s.hypotheses, s.reality)
    refined = minkowski_intersect(labelling_of(s.hypotheses), labelling_of(s.reality))
    labellings = {
        "H": labelling_of(s.hypotheses),
        "R": labelling_of(s.reality),
        "M": labelling_of(match),
        "refined": refined,
    }
    update = bayes_update(s.hypotheses, s.reality, s.believabilities, refined)

    cs = CertaintySpace(s.space, s.believabilities)
    ket = braket = None
    if variant == "ket":
        ket = ket_posterior(match, cs)
    elif variant == "braket":
        braket = braket_posterior(match, cs, refined)

    iteration = limit = None
    if iterate:
        iteration = run(s.believabilities, update.mu, eps, max_iter, trace)
        limit = limit_believability(s.believabilities, update.mu)
    return Report(
        scenario=s,
        variant=variant,
        mu=update.mu,
        phi_prior=update.phi_prior,
        bayes=update,
        labellings=labellings,
        ket=ket,
        braket=braket,
        iteration=iteration,
        limit=limit,
        match=match,
    )


def undefined_document(s: Scenario, exc: UndefinedPosterior, precision: int = DEFAULT_PRECISION) -> dict:
    """Structured error body for a scenario whose match co~event has certainty zero."""
    mu = mu_vector(s.hypotheses, s.reality)
    match = match_coevent(s.hypotheses, s.reality)
    phi = certainty_of(match, CertaintySpace(s.space, s.believabilities))
    return {
        "scenario": s.name,
        "error": "UndefinedPosterior",
        "message": str(exc),
        "mu": {x: rational(mu[x], precision) for x in s.labels},
        "phi_prior": rational(phi, precision),
    }


def _labels_text(labels, order) -> str:
    return "{" + ",".join(x for x in order if x in labels) + "}"


def _key_text(key, order) -> str:
    if isinstance(key, tuple):
        return "|".join(_labels_text(k, order) for k in key)
    return _labels_text(key, order)


def _labelling_doc(lab: Labelling, order, precision: int, match: CoEvent | None = None) -> list:
    out = []
    for c in lab:
        entry: dict[str, Any] = {}
        if isinstance(c.key, tuple):
            entry["hypotheses"] = [x for x in order if x in c.key[0]]
            entry["reality"] = [x for x in order if x in c.key[1]]
            if match is not None:
                entry["match"] = [x for x in order if x in cover_of_class(match, c)]
        else:
            entry["labels"] = [x for x in order if x in c.key]
        entry["atoms"] = len(c.atoms)
        entry["p"] = rational(c.probability, precision)
        out.append(entry)
    return out


def _table_doc(table: CertaintyTable, order, precision: int) -> list:
    classes = {c.key: i for i, c in enumerate(table.labelling)}
    return [
        {"label": x, "class": classes[key], "value": rational(v, precision)}
        for (x, key), v in table.entries.items()
    ]


def _vector_doc(vec, order, precision):
    return {x: rational(vec[x], precision) for x in order}


def report_document(r: Report, precision: int = DEFAULT_PRECISION, trace_limit: int = DEFAULT_TRACE_LIMIT) -> dict:
    order = r.scenario.labels
    doc: dict[str, Any] = {
        "scenario": r.scenario.name,
        "variant": r.variant,
        "labels": list(order),
        "prior": _vector_doc(r.bayes.prior, order, precision),
        "mu": _vector_doc(r.mu, order, precision),
        "phi_prior": rational(r.phi_prior, precision),
        "posterior": _vector_doc(r.posterior, order, precision),
        "phi_post": rational(r.phi_post, precision),
        "labellings": {
            name: _labelling_doc(lab, order, precision, r.match if name == "refined" else None)
            for name, lab in r.labellings.items()
        },
        "posterior_table": _table_doc(r.bayes.posterior_table, order, precision),
    }
    if r.ket is not None:
        classes = {c.key: i for i, c in enumerate(labelling_of(r.match))}
        doc["ket"] = {
            "note": r.ket.variant,
            "terraces": [
                {"class": classes[k], "value": rational(v, precision)} for k, v in r.ket.terraces.items()
            ],
            "labels": {x: rational(r.ket.labels[x], precision) for x in order},
        }
    if r.braket is not None:
        doc["braket"] = _table_doc(r.braket, order, precision)
    if r.iteration is not None:
        steps = list(r.iteration.steps)
        if len(steps) > trace_limit:
            steps = steps[: trace_limit - 1] + steps[-1:]
        doc["iteration"] = {
            "steps": [
                {
                    "n": st.n,
                    "believabilities": _vector_doc(st.believabilities, order, precision),
                    "certainty": rational(st.certainty, precision),
                }
                for st in steps
            ],
            "converged": r.iteration.converged,
            "n_final": r.iteration.n_final,
            "limit": {
                "x_max": [x for x in order if x in r.limit.x_max],
                "believabilities": _vector_doc(r.limit.limit_believabilities, order, precision),
                "certainty": rational(r.limit.limit_certainty, precision),
            },
        }
    return doc


def _grid(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in [header] + rows) for i in range(len(header))]
    lines = []
    for n, row in enumerate([header] + rows):
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
        if n == 0:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines)


def _table_text(r: Report, precision: int) -> str:
    order = r.scenario.labels
    d = lambda v: to_decimal(v, precision)  # noqa: E731
    parts = [
        f"scenario: {r.scenario.name or '-'}   variant: {r.variant}",
        f"Phi(M) prior = {d(r.phi_prior)} ({r.phi_prior})   Phi(M) post = {d(r.phi_post)} ({r.phi_post})",
        "",
    ]
    header = ["label", "b", "mu", "b_post"]
    rows = [
        [x, d(r.bayes.prior[x]), d(r.mu[x]), d(r.posterior[x])] for x in order
    ]
    parts += [_grid(header, rows), ""]

    refined = r.labellings["refined"]
    table = r.bayes.posterior_table
    header = ["", *(f"X{i + 1}" for i in range(len(refined)))]
    rows = [
        ["H terrace", *(_labels_text(c.key[0], order) for c in refined)],
        ["R terrace", *(_labels_text(c.key[1], order) for c in refined)],
        ["M cover", *(_labels_text(cover_of_class(r.match, c), order) for c in refined)],
        ["p(X)", *(d(c.probability) for c in refined)],
    ]
    rows += [
        [f"phi_post {x}", *(d(table.get(x, c.key)) for c in refined)] for x in order
    ]
    if r.braket is not None:
        rows += [
            [f"braket {x}", *(d(r.braket.get(x, c.key)) for c in refined)] for x in order
        ]
    parts.append(_grid(header, rows))

    if r.ket is not None:
        own = labelling_of(r.match)
        parts += ["", r.ket.variant]
        header = ["terrace", *(_labels_text(c.key, order) for c in own)]
        rows = [
            ["p(X)", *(d(c.probability) for c in own)],
            ["p_post(X)", *(d(r.ket.terraces[c.key]) for c in own)],
        ]
        parts.append(_grid(header, rows))
        parts.append("p_post per label: " + "  ".join(f"{x}={d(r.ket.labels[x])}" for x in order))

    if r.iteration is not None:
        it = r.iteration
        parts += ["", f"iteration: n_final={it.n_final} converged={'yes' if it.converged else 'no'}"]
        header = ["n", *order, "Phi"]
        rows = [
            [str(st.n), *(d(st.believabilities[x]) for x in order), d(st.certainty)] for st in it.steps
        ]
        rows.append(
            ["limit", *(d(r.limit.limit_believabilities[x]) for x in order), d(r.limit.limit_certainty)]
        )
        parts.append(_grid(header, rows))
    return "\n".join(parts) + "\n"


def write_report(r: Report, format: str = "table", precision: int = DEFAULT_PRECISION,
                 trace_limit: int = DEFAULT_TRACE_LIMIT) -> str:
    if precision < 1:
        raise ValueError("precision must be at least 1")
    if format == "json":
        return json.dumps(report_document(r, precision, trace_limit), indent=2, sort_keys=True) + "\n"
    if format == "table":
        return _table_text(r, precision)
    raise ValueError(f"unknown format {format!r}")


def cell_marker(s: Scenario, which: str, label: str, atom: int, ascii: bool = False) -> str:
    m = MARKERS["ascii" if ascii else "unicode"]
    h = s.hypotheses.cell(label, atom)
    r = s.reality.cell(label, atom)
    if which == "H":
        return m["H"] if h else m["off"]
    if which == "R":
        return m["R"] if r else m["off"]
    if which == "M":
        if h and r:
            return m["both"]
        if not h and not r:
            return m["neither"]
        return m["off"]
    raise ValueError(f"which must be H, R or M, not {which!r}")


def render_diagram(s: Scenario, which: str = "M", ascii: bool = False) -> str:
    """Label-by-atom incidence grid.

    First line holds atom indices; each following line is a label padded to
    the widest label, then one marker per atom.  Columns are right-aligned
    to the widest atom index and separated by one space.
    """
    n = len(s.space)
    w = len(str(n - 1))
    lw = max(len(x) for x in s.labels)
    lines = [" " * lw + " " + " ".join(str(a).rjust(w) for a in range(n))]
    for x in s.labels:
        marks = (cell_marker(s, which, x, a, ascii).rjust(w) for a in range(n))
        lines.append(x.ljust(lw) + " " + " ".join(marks))
    return "\n".join(lines) + "\n"
