"""Spec files, value encoding and deterministic reports.

A spec file is a JSON object::

    {"model": {"kind": "grid", "carrier": ["-1", "0", "1"], "scale": "2"},
     "truncation": {"kind": "const_cap", "value": "1/2"},
     "unitization": {"scale_c": "1"}}

Rationals are strings ``"p/q"`` (or ``"p"``).  Unknown fields are errors.
Reports are serialized with a fixed key order and no timing information
unless asked for, so equal inputs give byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any, Mapping

from .classify import Classification, ConeEscape, RangeMismatch
from .lattice import GroupModel, ModelError
from .models import format_element, make_model
from .orthorep import Multiplier, encode_multiplier
from .rational import Rat, format_rat, parse_rat
from .truncation import TruncationSpec, decode_truncation, encode_truncation
from .unitization import Unitized
from .verdict import Verdict

SPEC_FIELDS = {"model", "truncation", "unitization"}
UNITIZATION_FIELDS = {"scale_c"}


@dataclass(frozen=True)
class SpecFile:
    model: GroupModel
    truncation: TruncationSpec | None
    scale_c: Rat
    raw: Mapping[str, Any]


def load_spec(data: Any) -> SpecFile:
    """Validate a parsed spec file; nothing is built unless all of it is valid."""
    if not isinstance(data, dict):
        raise ModelError("spec file must contain a JSON object")
    unknown = set(data) - SPEC_FIELDS
    if unknown:
        raise ModelError(f"unknown spec fields: {sorted(unknown)}")
    if "model" not in data:
        raise ModelError("spec file needs a model")
    model = make_model(data["model"])
    tau = decode_truncation(model, data["truncation"]) if "truncation" in data else None
    unit = data.get("unitization", {})
    if not isinstance(unit, dict):
        raise ModelError("unitization must be an object")
    unknown = set(unit) - UNITIZATION_FIELDS
    if unknown:
        raise ModelError(f"unknown unitization fields: {sorted(unknown)}")
    raw_c = unit.get("scale_c", "1")
    if not isinstance(raw_c, str):
        raise ModelError("scale_c must be a rational string")
    try:
        c = parse_rat(raw_c)
    except ValueError as exc:
        raise ModelError(str(exc)) from None
    if c <= 0:
        raise ModelError(f"scale_c must be positive, got {raw_c}")
    return SpecFile(model, tau, c, data)


def read_spec(path: str) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelError(f"{path}: {exc}") from None
    return load_spec(data)


def canonical(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def digest(data: Any) -> str:
    return hashlib.sha256(canonical(data).encode()).hexdigest()


class Encoder:
    """Turns library values into JSON-compatible data.

    The model is only needed for truncation descriptions.
    """

    def __init__(self, model: GroupModel | None = None):
        self.model = model

    def __call__(self, value: Any) -> Any:
        if value is None or isinstance(value, (bool, int, str)):
            return value
        if isinstance(value, Rat):
            return format_rat(value)
        if isinstance(value, Verdict):
            return value.to_dict(self)
        if isinstance(value, Unitized):
            return {"g": format_element(value.g), "q": format_rat(value.q)}
        if isinstance(value, Multiplier):
            return encode_multiplier(value)
        if isinstance(value, TruncationSpec):
            return encode_truncation(self.model, value)
        if isinstance(value, RangeMismatch):
            return {"type": "RangeMismatch", "x": self(value.x),
                    "in_range": value.in_range, "dominated": value.dominated}
        if isinstance(value, ConeEscape):
            return {"type": "ConeEscape", "u": self(value.u), "v": self(value.v),
                    "product": self(value.product)}
        if isinstance(value, Classification):
            return self.classification(value)
        if isinstance(value, dict):
            return {str(k): self(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [self(v) for v in value]
        return format_element(value)

    def classification(self, cl: Classification) -> dict[str, Any]:
        return {
            "outcome": cl.outcome,
            "witness": self(cl.witness),
            "evidence": {k: self(v) for k, v in cl.evidence.items()},
            "scale_c": format_rat(cl.scale_c),
            "seed": cl.seed,
            "samples": cl.samples,
            "cone_samples": cl.cone_samples,
            "structural_flags": cl.structural_flags,
        }


def report(command: str, inputs: Mapping[str, Any], seed: int, body: Mapping[str, Any],
           *, samples: int | None = None, bound: int | None = None,
           runtime: float | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "command": command,
        "inputs": dict(inputs),
        "inputs_digest": digest(inputs),
        "seed": seed,
    }
    if samples is not None:
        out["samples"] = samples
    if bound is not None:
        out["bound"] = bound
    out.update(body)
    if runtime is not None:
        out["runtime"] = round(runtime, 3)
    return out


def dump_report(rep: Mapping[str, Any]) -> str:
    return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"
