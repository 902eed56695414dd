"""Scenario documents: JSON description of a hypotheses/reality experiment.

Schema (unknown fields are rejected)::

    {
      "name": "optional text",
      "description": "optional text",
      "atoms": 200 | {"weights": ["1/4", "0.25", ...]},
      "labels": ["x", "y"],
      "believabilities": ["1/2", "1/2"],          # optional, default uniform
      "hypotheses": {"x": [0, 1, ...], "y": [...]},
      "reality":    {"x": [...], "y": [...]}
    }
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .core import AtomSpace, CoEvent, to_fraction
from .errors import SchemaError, ValidationError
from .measures import BelievabilityDistribution

REQUIRED = ("atoms", "labels", "hypotheses", "reality")
OPTIONAL = ("name", "description", "believabilities")

BUNDLED = ("example1", "example2", "example3", "example4", "example5")


@dataclass(frozen=True)
class Scenario:
    space: AtomSpace
    labels: tuple[str, ...]
    believabilities: BelievabilityDistribution
    hypotheses: CoEvent
    reality: CoEvent
    name: str | None = None
    description: str | None = None

    def to_document(self) -> dict[str, Any]:
        """Normalised document; :func:`parse_scenario` inverts it exactly."""
        doc: dict[str, Any] = {}
        if self.name is not None:
            doc["name"] = self.name
        if self.description is not None:
            doc["description"] = self.description
        if self.space.is_uniform:
            doc["atoms"] = len(self.space)
        else:
            doc["atoms"] = {"weights": [str(w) for w in self.space.weights]}
        doc["labels"] = list(self.labels)
        doc["believabilities"] = [str(v) for v in self.believabilities.values]
        doc["hypotheses"] = {x: sorted(self.hypotheses.row(x)) for x in self.labels}
        doc["reality"] = {x: sorted(self.reality.row(x)) for x in self.labels}
        return doc


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]", re.S)


def dumps(scenario: Scenario) -> str:
    """Indented JSON with every list of scalars kept on one line."""
    text = json.dumps(scenario.to_document(), indent=2, ensure_ascii=False)
    return _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text) + "\n"


def _rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{path}: write rationals as strings, e.g. \"1/3\" or \"0.25\"")
    try:
        return to_fraction(value)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: {exc}") from None


def _space(value: Any) -> AtomSpace:
    if isinstance(value, bool):
        raise SchemaError("atoms: expected an integer or {\"weights\": [...]}")
    if isinstance(value, int):
        if value < 1:
            raise ValidationError("atoms: need at least one atom")
        return AtomSpace.uniform(value)
    if isinstance(value, dict):
        extra = set(value) - {"weights"}
        if extra or "weights" not in value:
            raise SchemaError("atoms: object form must have exactly the field 'weights'")
        weights = value["weights"]
        if not isinstance(weights, list) or not weights:
            raise SchemaError("atoms.weights: expected a non-empty list")
        parsed = [_rational(w, f"atoms.weights[{i}]") for i, w in enumerate(weights)]
        if any(w < 0 for w in parsed):
            raise ValidationError("atoms.weights: weights must be non-negative")
        if sum(parsed) != 1:
            raise ValidationError(f"atoms.weights: weights sum to {sum(parsed)}, not 1")
        return AtomSpace(tuple(parsed))
    raise SchemaError("atoms: expected an integer or {\"weights\": [...]}")


def _rows(value: Any, field: str, labels: tuple[str, ...], n: int) -> dict[str, list[int]]:
    if not isinstance(value, dict):
        raise SchemaError(f"{field}: expected an object mapping labels to atom lists")
    if set(value) != set(labels):
        missing = sorted(set(labels) - set(value))
        extra = sorted(set(value) - set(labels))
        raise ValidationError(f"{field}: label mismatch (missing {missing}, unknown {extra})")
    rows = {}
    for x in labels:
        atoms = value[x]
        path = f"{field}.{x}"
        if not isinstance(atoms, list) or any(
            isinstance(a, bool) or not isinstance(a, int) for a in atoms
        ):
            raise SchemaError(f"{path}: expected a list of integer atom indices")
        if atoms != sorted(set(atoms)):
            raise ValidationError(f"{path}: atom indices must be sorted and unique")
        out = [a for a in atoms if not 0 <= a < n]
        if out:
            raise ValidationError(f"{path}: atom indices out of range 0..{n - 1}: {out}")
        rows[x] = atoms
    return rows


def parse_scenario(document: str | bytes | dict) -> Scenario:
    """Validate a scenario document (JSON text or already-decoded object)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise SchemaError("scenario must be a JSON object")
    extra = sorted(set(document) - set(REQUIRED) - set(OPTIONAL))
    if extra:
        raise SchemaError(f"unknown fields: {extra}")
    missing = [f for f in REQUIRED if f not in document]
    if missing:
        raise SchemaError(f"missing fields: {missing}")
    for f in ("name", "description"):
        if f in document and not isinstance(document[f], str):
            raise SchemaError(f"{f}: expected text")

    space = _space(document["atoms"])

    labels = document["labels"]
    if not isinstance(labels, list) or not labels or any(
        not isinstance(x, str) or not x for x in labels
    ):
        raise SchemaError("labels: expected a non-empty list of non-empty strings")
    if len(set(labels)) != len(labels):
        raise ValidationError("labels: duplicate label")
    labels = tuple(labels)

    if "believabilities" in document:
        raw = document["believabilities"]
        if not isinstance(raw, list):
            raise SchemaError("believabilities: expected a list")
        if len(raw) != len(labels):
            raise ValidationError("believabilities: one value per label is required")
        values = [_rational(v, f"believabilities[{i}]") for i, v in enumerate(raw)]
        if any(v < 0 for v in values):
            raise ValidationError("believabilities: values must be non-negative")
        if sum(values) != 1:
            raise ValidationError(f"believabilities: values sum to {sum(values)}, not 1")
        b = BelievabilityDistribution(labels, tuple(values))
    else:
        b = BelievabilityDistribution.uniform(labels)

    n = len(space)
    h = _rows(document["hypotheses"], "hypotheses", labels, n)
    r = _rows(document["reality"], "reality", labels, n)
    return Scenario(
        space=space,
        labels=labels,
        believabilities=b,
        hypotheses=CoEvent(space, labels, tuple(frozenset(h[x]) for x in labels)),
        reality=CoEvent(space, labels, tuple(frozenset(r[x]) for x in labels)),
        name=document.get("name"),
        description=document.get("description"),
    )


def load(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    return parse_scenario(text)


def bundled_path(name: str):
    return resources.files("coevent") / "data" / f"{name}.json"


def load_bundled(name: str) -> Scenario:
    """One of the bundled worked examples, ``example1`` .. ``example5``."""
    if name not in BUNDLED:
        raise KeyError(name)
    return parse_scenario(bundled_path(name).read_text(encoding="utf-8"))
