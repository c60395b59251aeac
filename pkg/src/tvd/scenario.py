"""Scenario documents and report serialization.

A scenario is a JSON document declaring matrices, symmetries, states
and a list of detector requests. Parsing is strict: unknown fields are
rejected and every error names the offending path inside the document.

Serialization is canonical so that equal values produce identical
bytes: object keys are sorted, symmetries are ordered by label, complex
numbers are two-element ``[re, im]`` arrays and reals are rendered with
17 significant digits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__ as _tool_version
from .config import Tolerances
from .errors import ScenarioError
from .symmetry import SymmetryTransform
from .verdict import Verdict

SCHEMA_VERSION = 1

MATRIX_NAMES = ("hamiltonian", "h0", "v", "smatrix")

# detector name -> (required request fields, required matrices)
DETECTORS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "unitary_curie": (("symmetry", "state", "time"), ("hamiltonian",)),
    "scattering_curie": (("symmetry", "state_in", "state_out"), ("smatrix",)),
    "s_matrix_inference": (("symmetry",), ("h0", "smatrix")),
    "kabir": (("symmetry", "state_in", "state_out"), ("smatrix",)),
    "cpt_link": (("cpt_symmetry", "cp_symmetry"), ("hamiltonian",)),
    "wigner": (("symmetry",), ("hamiltonian",)),
}
_OPTIONAL_FIELDS: dict[str, tuple[str, ...]] = {"wigner": ("gap_tol",)}


@dataclass(frozen=True)
class Request:
    detector: str
    params: dict[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class Scenario:
    dim: int
    matrices: dict[str, np.ndarray] = field(default_factory=dict)
    symmetries: dict[str, SymmetryTransform] = field(default_factory=dict)
    states: dict[str, np.ndarray] = field(default_factory=dict)
    requests: tuple[Request, ...] = ()
    tolerance_overrides: dict[str, float] | None = None
    seed: int | None = None
    schema_version: int = SCHEMA_VERSION

    def effective_tolerances(self, base: Tolerances | None = None) -> Tolerances:
        tol = base or Tolerances()
        if self.tolerance_overrides:
            tol = tol.replace(**self.tolerance_overrides)
        return tol


# ---------------------------------------------------------------------------
# canonical JSON


def _format_real(x: float) -> str:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ScenarioError(f"expected a real number, got {type(x).__name__}")
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        raise ScenarioError(f"non-finite number {x!r} cannot be serialized")
    if x == 0.0:
        # JSON reads -0 back as integer zero, so the sign cannot survive
        return "0"
    return f"{x:.17g}"


def _canonical(value: object, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=True))
    elif isinstance(value, (int, float)):
        out.append(_format_real(value))
    elif isinstance(value, complex):
        out.append(f"[{_format_real(value.real)},{_format_real(value.imag)}]")
    elif isinstance(value, np.complexfloating):
        _canonical(complex(value), out)
    elif isinstance(value, (np.floating, np.integer)):
        _canonical(float(value), out)
    elif isinstance(value, dict):
        out.append("{")
        for i, key in enumerate(sorted(value)):
            if not isinstance(key, str):
                raise ScenarioError(f"object keys must be strings, got {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _canonical(value[key], out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _canonical(item, out)
        out.append("]")
    elif isinstance(value, np.ndarray):
        _canonical(value.tolist(), out)
    else:
        raise ScenarioError(f"cannot serialize value of type {type(value).__name__}")


def canonical_dumps(value: object) -> bytes:
    out: list[str] = []
    _canonical(value, out)
    out.append("\n")
    return "".join(out).encode("ascii")


def _matrix_jsonable(m: np.ndarray) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def _vector_jsonable(v: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


# ---------------------------------------------------------------------------
# scenario parsing


def _reject_unknown(obj: dict, allowed: tuple[str, ...], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ScenarioError(f"unknown field {key!r}", path or "document")


def _expect(condition: bool, message: str, path: str) -> None:
    if not condition:
        raise ScenarioError(message, path)


def _parse_complex_entry(entry: object, path: str) -> complex:
    _expect(
        isinstance(entry, (list, tuple)) and len(entry) == 2,
        "complex entries must be [re, im] pairs",
        path,
    )
    re_part, im_part = entry  # type: ignore[misc]
    for part in (re_part, im_part):
        _expect(
            isinstance(part, (int, float)) and not isinstance(part, bool) and math.isfinite(part),
            "complex entries must hold finite numbers",
            path,
        )
    return complex(re_part, im_part)


def _parse_matrix(raw: object, dim: int, path: str) -> np.ndarray:
    _expect(isinstance(raw, list) and len(raw) == dim, f"expected {dim} rows", path)
    rows = []
    for i, row in enumerate(raw):  # type: ignore[union-attr]
        _expect(isinstance(row, list) and len(row) == dim, f"expected {dim} columns", f"{path}[{i}]")
        rows.append([_parse_complex_entry(entry, f"{path}[{i}][{k}]") for k, entry in enumerate(row)])
    return np.array(rows, dtype=complex)


def _parse_vector(raw: object, dim: int, path: str) -> np.ndarray:
    _expect(isinstance(raw, list) and len(raw) == dim, f"expected {dim} entries", path)
    return np.array([_parse_complex_entry(entry, f"{path}[{k}]") for k, entry in enumerate(raw)], dtype=complex)


def _parse_number(raw: object, path: str, *, positive: bool = False) -> float:
    _expect(
        isinstance(raw, (int, float)) and not isinstance(raw, bool) and math.isfinite(raw),
        "expected a finite number",
        path,
    )
    if positive:
        _expect(raw > 0, "expected a positive number", path)
    return float(raw)


_TOP_FIELDS = ("schema_version", "dim", "matrices", "symmetries", "states", "requests", "tolerances", "seed")
_TOLERANCE_FIELDS = ("tau_zero", "tau_violation", "gap_tol")


def parse_scenario(data: bytes | str) -> Scenario:
    """Parse and validate a scenario document."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc}") from None
    _expect(isinstance(doc, dict), "document must be a JSON object", "document")
    _reject_unknown(doc, _TOP_FIELDS, "")

    _expect("schema_version" in doc, "missing schema_version", "document")
    _expect(doc["schema_version"] == SCHEMA_VERSION, f"unsupported schema_version {doc['schema_version']!r}", "schema_version")
    _expect("dim" in doc, "missing dim", "document")
    dim = doc["dim"]
    _expect(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1, "dim must be an integer >= 1", "dim")

    tolerance_overrides: dict[str, float] | None = None
    if "tolerances" in doc:
        raw_tol = doc["tolerances"]
        _expect(isinstance(raw_tol, dict), "tolerances must be an object", "tolerances")
        _reject_unknown(raw_tol, _TOLERANCE_FIELDS, "tolerances")
        tolerance_overrides = {
            key: _parse_number(raw_tol[key], f"tolerances.{key}", positive=True) for key in sorted(raw_tol)
        }
    try:
        tol = Scenario(dim=dim, tolerance_overrides=tolerance_overrides).effective_tolerances()
    except Exception as exc:
        raise ScenarioError(str(exc), "tolerances") from None

    seed: int | None = None
    if "seed" in doc:
        _expect(
            isinstance(doc["seed"], int) and not isinstance(doc["seed"], bool),
            "seed must be an integer",
            "seed",
        )
        seed = doc["seed"]

    matrices: dict[str, np.ndarray] = {}
    if "matrices" in doc:
        raw = doc["matrices"]
        _expect(isinstance(raw, dict), "matrices must be an object", "matrices")
        _reject_unknown(raw, MATRIX_NAMES, "matrices")
        for name in MATRIX_NAMES:
            if name in raw:
                matrices[name] = _parse_matrix(raw[name], dim, f"matrices.{name}")

    symmetries: dict[str, SymmetryTransform] = {}
    if "symmetries" in doc:
        raw = doc["symmetries"]
        _expect(isinstance(raw, list), "symmetries must be a list", "symmetries")
        for i, item in enumerate(raw):
            path = f"symmetries[{i}]"
            _expect(isinstance(item, dict), "each symmetry must be an object", path)
            _reject_unknown(item, ("label", "unitary_part", "antilinear"), path)
            for req_field in ("label", "unitary_part", "antilinear"):
                _expect(req_field in item, f"missing field {req_field!r}", path)
            label = item["label"]
            _expect(isinstance(label, str) and label != "", "label must be a non-empty string", f"{path}.label")
            _expect(label not in symmetries, f"duplicate symmetry label {label!r}", f"{path}.label")
            _expect(isinstance(item["antilinear"], bool), "antilinear must be a boolean", f"{path}.antilinear")
            unitary = _parse_matrix(item["unitary_part"], dim, f"{path}.unitary_part")
            try:
                transform = SymmetryTransform(unitary, antilinear=item["antilinear"], label=label)
            except Exception as exc:
                raise ScenarioError(str(exc), f"{path}.unitary_part") from None
            symmetries[label] = transform

    states: dict[str, np.ndarray] = {}
    if "states" in doc:
        raw = doc["states"]
        _expect(isinstance(raw, dict), "states must be an object", "states")
        for name in raw:
            _expect(isinstance(name, str) and name != "", "state names must be non-empty strings", "states")
            vec = _parse_vector(raw[name], dim, f"states.{name}")
            norm_dev = abs(float(np.linalg.norm(vec)) - 1.0)
            _expect(norm_dev <= tol.tau_zero, f"state is not normalized (deviation {norm_dev:.3e})", f"states.{name}")
            states[name] = vec

    _expect("requests" in doc, "missing requests", "document")
    raw_requests = doc["requests"]
    _expect(isinstance(raw_requests, list), "requests must be a list", "requests")
    requests: list[Request] = []
    for i, item in enumerate(raw_requests):
        path = f"requests[{i}]"
        _expect(isinstance(item, dict), "each request must be an object", path)
        _expect("detector" in item, "missing field 'detector'", path)
        detector = item["detector"]
        _expect(detector in DETECTORS, f"unknown detector {detector!r}", f"{path}.detector")
        required_fields, required_matrices = DETECTORS[detector]
        optional = _OPTIONAL_FIELDS.get(detector, ())
        _reject_unknown(item, ("detector",) + required_fields + optional, path)
        params: dict[str, object] = {}
        for req_field in required_fields:
            _expect(req_field in item, f"missing field {req_field!r}", path)
        for name in required_fields + optional:
            if name not in item:
                continue
            value = item[name]
            if name in ("symmetry", "cpt_symmetry", "cp_symmetry"):
                _expect(isinstance(value, str), "symmetry reference must be a string", f"{path}.{name}")
                _expect(value in symmetries, f"unknown symmetry {value!r}", f"{path}.{name}")
            elif name in ("state", "state_in", "state_out"):
                _expect(isinstance(value, str), "state reference must be a string", f"{path}.{name}")
                _expect(value in states, f"unknown state {value!r}", f"{path}.{name}")
            elif name == "time":
                value = _parse_number(value, f"{path}.time")
            elif name == "gap_tol":
                value = _parse_number(value, f"{path}.gap_tol", positive=True)
            params[name] = value
        for name in required_matrices:
            _expect(name in matrices, f"detector {detector!r} needs matrix {name!r}", path)
        requests.append(Request(detector=detector, params=params))

    return Scenario(
        dim=dim,
        matrices=matrices,
        symmetries=symmetries,
        states=states,
        requests=tuple(requests),
        tolerance_overrides=tolerance_overrides,
        seed=seed,
        schema_version=SCHEMA_VERSION,
    )


def scenario_jsonable(scenario: Scenario) -> dict:
    doc: dict[str, object] = {
        "schema_version": scenario.schema_version,
        "dim": scenario.dim,
        "requests": [dict(r.params, detector=r.detector) for r in scenario.requests],
    }
    if scenario.matrices:
        doc["matrices"] = {name: _matrix_jsonable(m) for name, m in scenario.matrices.items()}
    if scenario.symmetries:
        doc["symmetries"] = [
            {
                "label": label,
                "unitary_part": _matrix_jsonable(g.unitary_part),
                "antilinear": g.antilinear,
            }
            for label, g in sorted(scenario.symmetries.items())
        ]
    if scenario.states:
        doc["states"] = {name: _vector_jsonable(v) for name, v in scenario.states.items()}
    if scenario.tolerance_overrides is not None:
        doc["tolerances"] = dict(scenario.tolerance_overrides)
    if scenario.seed is not None:
        doc["seed"] = scenario.seed
    return doc


def serialize_scenario(scenario: Scenario) -> bytes:
    return canonical_dumps(scenario_jsonable(scenario))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class VerdictRecord:
    detector: str
    verdict: Verdict


@dataclass(frozen=True)
class OracleRecord:
    """Ground-truth recomputation for one request."""

    detector: str
    agreed: bool
    truths: dict[str, float]
    note: str = ""


@dataclass(frozen=True)
class Provenance:
    tolerances: Tolerances
    seed: int | None
    tool_version: str = _tool_version


@dataclass(frozen=True)
class Report:
    records: tuple[VerdictRecord, ...]
    provenance: Provenance
    oracle: tuple[OracleRecord, ...] | None = None
    schema_version: int = SCHEMA_VERSION


def _witness_jsonable(witness: dict) -> dict:
    out: dict[str, object] = {}
    for key, value in witness.items():
        if isinstance(value, complex):
            out[key] = value
        elif isinstance(value, (list, tuple)):
            out[key] = list(value)
        else:
            out[key] = value
    return out


def report_jsonable(report: Report) -> dict:
    doc: dict[str, object] = {
        "schema_version": report.schema_version,
        "records": [
            {
                "index": i,
                "detector": rec.detector,
                "outcome": rec.verdict.outcome,
                "violated_symmetry": rec.verdict.violated_symmetry,
                "margin": rec.verdict.margin,
                "reason": rec.verdict.reason,
                "witness": _witness_jsonable(dict(rec.verdict.witness)),
            }
            for i, rec in enumerate(report.records)
        ],
        "provenance": {
            "tolerances": {
                "tau_zero": report.provenance.tolerances.tau_zero,
                "tau_violation": report.provenance.tolerances.tau_violation,
                "tau_eig": report.provenance.tolerances.tau_eig,
                "gap_tol": report.provenance.tolerances.gap_tol,
            },
            "seed": report.provenance.seed,
            "tool_version": report.provenance.tool_version,
        },
    }
    if report.oracle is not None:
        doc["oracle"] = [
            {
                "index": i,
                "detector": rec.detector,
                "agreed": rec.agreed,
                "truths": dict(rec.truths),
                "note": rec.note,
            }
            for i, rec in enumerate(report.oracle)
        ]
    return doc


def serialize_report(report: Report) -> bytes:
    return canonical_dumps(report_jsonable(report))
