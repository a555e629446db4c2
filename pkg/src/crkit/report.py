"""Structured, deterministic analysis reports."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from . import __version__
from .numerics import DEFAULT_CONFIG, ToleranceConfig
from .polyalg.gaussian import GaussianRational


def to_jsonable(value: Any) -> Any:
    """Plain JSON value for numbers, arrays and exact scalars; complex as [re, im]."""
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()] if value.ndim else to_jsonable(value.item())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, Fraction):
        return [value.numerator, value.denominator] if value.denominator != 1 else value.numerator
    if isinstance(value, GaussianRational):
        return {"re": to_jsonable(value.re), "im": to_jsonable(value.im)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if value is None or isinstance(value, str):
        return value
    return str(value)


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def digest_json(obj: Any) -> str:
    return digest_bytes(json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":")).encode())


@dataclass
class AnalysisReport:
    command: str
    input_digest: str
    config: ToleranceConfig = DEFAULT_CONFIG
    verdicts: dict[str, Any] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)
    numerics: dict[str, Any] = field(default_factory=dict)
    parameters: dict[str, Any] = field(default_factory=dict)
    errors: list[dict[str, str]] = field(default_factory=list)
    tool_version: str = __version__

    def verdict(self, name: str, value: Any, operation: str, **params: Any) -> None:
        """Record a verdict together with the operation and parameters that produced it."""
        self.verdicts[name] = {"value": to_jsonable(value), "operation": operation, "parameters": to_jsonable(params)}

    def error(self, stage: str, exc: BaseException) -> None:
        self.errors.append({"stage": stage, "type": type(exc).__name__, "message": str(exc)})

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "tool_version": self.tool_version,
            "config": self.config.as_dict(),
            "parameters": to_jsonable(self.parameters),
            "verdicts": to_jsonable(self.verdicts),
            "witnesses": to_jsonable(self.witnesses),
            "numerics": to_jsonable(self.numerics),
            "errors": list(self.errors),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, allow_nan=True)
