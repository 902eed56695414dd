"""Co~event calculus on finite spaces: certainty measures, the co~event-based
Bayes update and its recurrent limit."""

from .bayes import (
    BayesReport,
    KetPosterior,
    MatchVector,
    bayes_update,
    braket_posterior,
    bra_posterior,
    ket_posterior,
    mu_vector,
    posterior_certainty,
)
from .core import (
    AtomSpace,
    CoEvent,
    LabelClass,
    Labelling,
    complement,
    labelling_of,
    match_coevent,
    minkowski_intersect,
    symmetric_difference,
)
from .errors import (
    CoeventError,
    EmptySupport,
    LabelMismatch,
    SchemaError,
    SpaceMismatch,
    UndefinedConditional,
    UndefinedPosterior,
    UnknownLabel,
    ValidationError,
)
from .estimator import CoeventBayes
from .measures import (
    BelievabilityDistribution,
    CertaintySpace,
    CertaintyTable,
    certainty_of,
    certainty_table,
    condition_certainty,
)
from .recurrence import IterationTrace, LimitResult, limit_believability, limit_certainty, run, step
from .report import Report, render_diagram, run_pipeline, to_decimal, write_report
from .scenario import Scenario, dumps, load, load_bundled, parse_scenario

__version__ = "0.1.0"
