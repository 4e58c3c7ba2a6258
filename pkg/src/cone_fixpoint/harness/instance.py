"""Instance files: the on-disk problem format and its loader/saver.

An instance is UTF-8 JSON with a top-level integer ``version`` (currently 1).
Matrices are row-major nested arrays, vectors plain arrays of numbers:

    {
      "version": 1,
      "space": {"dim": 2, "generators": [[1, 0], [0, 1]], "tol": 1e-9},
      "points": ["p0", "p1"],
      "metric": {"kind": "table", "values": [[[0,0],[1,2]],[[1,2],[0,0]]]}
              | {"kind": "scaled_scalar",
                 "rho": {"kind": "table", "values": [[0,1],[1,0]]}
                      | {"kind": "euclidean", "coords": [[0.0],[1.0]]},
                 "weight": [1, 2]},
      "maps": {"T": [[0], [0, 1]]},
      "operators": {"delta": [[0.5, 0], [0, 0.5]]},
      "potentials": {"phi": [[5, 10], [0, 0]]},
      "meta": {"seed": 7, "description": "..."}
    }

Loading validates everything before any solver touches the data: the space
invariants, both metric axioms (plus the derived symmetry/nonnegativity
facts), map image ranges, and table shapes.  Failures are classified as
parse, schema, or content-validation errors, which the CLI maps to exit
codes 2, 3 and 4.  ``save`` emits canonical JSON (sorted keys, two-space
indent) so that save-after-load is byte-stable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Union

import jsonschema
import numpy as np

from ..cone_metric import ConeMetricSpace, Potential
from ..errors import InstanceParseError, InstanceSchemaError, InstanceValidationError
from ..mappings import SetValuedMap
from ..ordered_space import ConeVector, LinearMap, OrderedSpace

__all__ = [
    "Instance",
    "TableMetricSpec",
    "ScaledScalarMetricSpec",
    "load_instance",
    "save_instance",
    "default_tolerance",
    "SCHEMA",
]

SCHEMA_VERSION = 1
TOL_ENV_VAR = "CONE_FIXPOINT_TOL"

_VECTOR = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_MATRIX = {"type": "array", "items": _VECTOR, "minItems": 1}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "space", "points", "metric"],
    "additionalProperties": False,
    "properties": {
        "version": {"type": "integer"},
        "space": {
            "type": "object",
            "required": ["dim", "generators"],
            "additionalProperties": False,
            "properties": {
                "dim": {"type": "integer", "minimum": 1},
                "generators": _MATRIX,
                "tol": {"type": "number", "minimum": 0},
            },
        },
        "points": {
            "type": "array",
            "items": {"type": "string"},
            "minItems": 1,
            "uniqueItems": True,
        },
        "metric": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["kind", "values"],
                    "additionalProperties": False,
                    "properties": {
                        "kind": {"const": "table"},
                        "values": {"type": "array", "items": {"type": "array", "items": _VECTOR}},
                    },
                },
                {
                    "type": "object",
                    "required": ["kind", "rho", "weight"],
                    "additionalProperties": False,
                    "properties": {
                        "kind": {"const": "scaled_scalar"},
                        "weight": _VECTOR,
                        "rho": {
                            "oneOf": [
                                {
                                    "type": "object",
                                    "required": ["kind", "values"],
                                    "additionalProperties": False,
                                    "properties": {
                                        "kind": {"const": "table"},
                                        "values": _MATRIX,
                                    },
                                },
                                {
                                    "type": "object",
                                    "required": ["kind", "coords"],
                                    "additionalProperties": False,
                                    "properties": {
                                        "kind": {"const": "euclidean"},
                                        "coords": _MATRIX,
                                    },
                                },
                            ]
                        },
                    },
                },
            ]
        },
        "maps": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 0},
                    "minItems": 1,
                },
            },
        },
        "operators": {"type": "object", "additionalProperties": _MATRIX},
        "potentials": {"type": "object", "additionalProperties": _MATRIX},
        "meta": {"type": "object"},
    },
}


_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def default_tolerance() -> float:
    """Comparison tolerance used when an instance file omits it.

    Overridable through the environment; doing so changes comparison results,
    so byte-for-byte determinism only holds for a fixed setting.
    """
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return 1e-9
    try:
        tol = float(raw)
    except ValueError as exc:
        raise InstanceValidationError(f"{TOL_ENV_VAR} must be a number, got {raw!r}") from exc
    if not tol >= 0.0:
        raise InstanceValidationError(f"{TOL_ENV_VAR} must be nonnegative")
    return tol


@dataclass(frozen=True)
class TableMetricSpec:
    values: tuple[tuple[tuple[float, ...], ...], ...]  # n x n x m

    def to_dict(self) -> dict:
        return {"kind": "table", "values": [[list(v) for v in row] for row in self.values]}


@dataclass(frozen=True)
class ScaledScalarMetricSpec:
    rho_kind: str  # "table" | "euclidean"
    rho_values: tuple[tuple[float, ...], ...]  # n x n table, or n x k coordinates
    weight: tuple[float, ...]

    def to_dict(self) -> dict:
        if self.rho_kind == "table":
            rho = {"kind": "table", "values": [list(r) for r in self.rho_values]}
        else:
            rho = {"kind": "euclidean", "coords": [list(r) for r in self.rho_values]}
        return {"kind": "scaled_scalar", "rho": rho, "weight": list(self.weight)}

    def scalar_table(self) -> np.ndarray:
        if self.rho_kind == "table":
            return np.array(self.rho_values, dtype=float)
        pts = np.array(self.rho_values, dtype=float)
        diff = pts[:, None, :] - pts[None, :, :]
        return np.sqrt(np.sum(diff * diff, axis=2))


MetricSpec = Union[TableMetricSpec, ScaledScalarMetricSpec]


def _rows_tuple(rows) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(float(v) for v in row) for row in rows)


@dataclass(frozen=True)
class Instance:
    """A fully validated problem instance; building one re-checks everything."""

    space: OrderedSpace
    labels: tuple[str, ...]
    metric: MetricSpec
    maps: tuple[tuple[str, SetValuedMap], ...] = ()
    operators: tuple[tuple[str, LinearMap], ...] = ()
    potentials: tuple[tuple[str, Potential], ...] = ()
    meta: tuple[tuple[str, object], ...] = ()
    version: int = SCHEMA_VERSION

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def cms(self) -> ConeMetricSpace:
        if isinstance(self.metric, TableMetricSpec):
            table = tuple(
                tuple(ConeVector(entry) for entry in row) for row in self.metric.values
            )
            return ConeMetricSpace(self.space, self.labels, table)
        return ConeMetricSpace.from_scaled_scalar(
            self.space,
            self.labels,
            self.metric.scalar_table(),
            ConeVector(self.metric.weight),
        )

    def get_map(self, name: str) -> SetValuedMap:
        for key, value in self.maps:
            if key == name:
                return value
        raise KeyError(f"unknown map: {name!r}")

    def get_operator(self, name: str) -> LinearMap:
        for key, value in self.operators:
            if key == name:
                return value
        raise KeyError(f"unknown operator: {name!r}")

    def get_potential(self, name: str) -> Potential:
        for key, value in self.potentials:
            if key == name:
                return value
        raise KeyError(f"unknown potential: {name!r}")

    def meta_dict(self) -> dict:
        return dict(self.meta)

    def to_dict(self) -> dict:
        doc: dict = {
            "version": self.version,
            "space": {
                "dim": self.space.dim,
                "generators": [list(row) for row in self.space.generators],
                "tol": self.space.tol,
            },
            "points": list(self.labels),
            "metric": self.metric.to_dict(),
        }
        if self.maps:
            doc["maps"] = {name: [list(img) for img in m.images] for name, m in self.maps}
        if self.operators:
            doc["operators"] = {
                name: [list(row) for row in op.matrix] for name, op in self.operators
            }
        if self.potentials:
            doc["potentials"] = {
                name: [list(v.coords) for v in p.values] for name, p in self.potentials
            }
        if self.meta:
            doc["meta"] = dict(self.meta)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Instance":
        try:
            _VALIDATOR.validate(doc)
        except jsonschema.ValidationError as exc:
            raise InstanceSchemaError(f"instance does not match the schema: {exc.message}") from exc
        if doc["version"] != SCHEMA_VERSION:
            raise InstanceSchemaError(
                f"unsupported schema version {doc['version']} (supported: {SCHEMA_VERSION})"
            )

        space_doc = doc["space"]
        tol = space_doc.get("tol", default_tolerance())
        try:
            space = OrderedSpace(space_doc["dim"], _rows_tuple(space_doc["generators"]), tol)
        except ValueError as exc:
            raise InstanceValidationError(f"invalid space: {exc}") from exc

        labels = tuple(doc["points"])
        n, m = len(labels), space.dim

        metric_doc = doc["metric"]
        metric: MetricSpec
        if metric_doc["kind"] == "table":
            values = metric_doc["values"]
            if len(values) != n or any(len(row) != n for row in values):
                raise InstanceValidationError("metric table must be n x n")
            if any(len(entry) != m for row in values for entry in row):
                raise InstanceValidationError("metric entries must have the space dimension")
            metric = TableMetricSpec(
                tuple(tuple(tuple(float(v) for v in entry) for entry in row) for row in values)
            )
        else:
            rho_doc = metric_doc["rho"]
            if rho_doc["kind"] == "table":
                rho_rows = _rows_tuple(rho_doc["values"])
                if len(rho_rows) != n or any(len(r) != n for r in rho_rows):
                    raise InstanceValidationError("scalar metric table must be n x n")
            else:
                rho_rows = _rows_tuple(rho_doc["coords"])
                if len(rho_rows) != n:
                    raise InstanceValidationError("point cloud must have one row per point")
            weight = tuple(float(v) for v in metric_doc["weight"])
            if len(weight) != m:
                raise InstanceValidationError("weight must have the space dimension")
            metric = ScaledScalarMetricSpec(rho_doc["kind"], rho_rows, weight)

        maps = []
        for name in sorted(doc.get("maps", {})):
            images = doc["maps"][name]
            if len(images) != n:
                raise InstanceValidationError(f"map {name!r} must cover every point")
            if any(p >= n for img in images for p in img):
                raise InstanceValidationError(f"map {name!r} contains an out-of-range index")
            maps.append((name, SetValuedMap.from_lists(images)))

        operators = []
        for name in sorted(doc.get("operators", {})):
            rows = _rows_tuple(doc["operators"][name])
            if len(rows) != m or any(len(r) != m for r in rows):
                raise InstanceValidationError(f"operator {name!r} must be dim x dim")
            operators.append((name, LinearMap(rows)))

        potentials = []
        for name in sorted(doc.get("potentials", {})):
            rows = _rows_tuple(doc["potentials"][name])
            if len(rows) != n or any(len(r) != m for r in rows):
                raise InstanceValidationError(f"potential {name!r} must be n x dim")
            potentials.append((name, Potential.from_rows(rows)))

        meta = tuple(sorted(doc.get("meta", {}).items()))

        instance = cls(
            space=space,
            labels=labels,
            metric=metric,
            maps=tuple(maps),
            operators=tuple(operators),
            potentials=tuple(potentials),
            meta=meta,
            version=doc["version"],
        )
        try:
            report = instance.cms.validate()
        except ValueError as exc:
            raise InstanceValidationError(f"invalid metric: {exc}") from exc
        if not report.passed:
            raise InstanceValidationError(
                "metric axioms fail: "
                f"identity witnesses {list(report.identity_witnesses)}, "
                f"triangle witnesses {list(report.triangle_witnesses)}"
            )
        return instance

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def load_instance(path: str | Path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceSchemaError(f"{path}: top level must be an object")
    return Instance.from_dict(doc)


def save_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(instance.to_json(), encoding="utf-8")
