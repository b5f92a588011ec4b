"""Factor domains: intervals, discrete sets, and distributions.

A factor is one varied input parameter, addressed by the dotted
"entity.param" name used in scenario configurations. Its domain
fixes how unit-hypercube coordinates are mapped into parameter
values (affine for intervals, index lookup for discrete sets,
inverse CDF for distributions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import SchemaViolation
from .statlib.special import normal_ppf

Scalar = Union[float, int, str, bool]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def scale(self, u: np.ndarray) -> np.ndarray:
        return self.lo + np.asarray(u, dtype=float) * (self.hi - self.lo)

    def center(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def to_jsonable(self):
        return [self.lo, self.hi]


@dataclass(frozen=True)
class Discrete:
    values: tuple

    def scale(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        m = len(self.values)
        idx = np.minimum(np.floor(u * m).astype(int), m - 1)
        return np.asarray(self.values, dtype=object)[idx]

    def center(self) -> Scalar:
        return self.values[len(self.values) // 2]

    def to_jsonable(self):
        return {"discrete": list(self.values)}


@dataclass(frozen=True)
class Distribution:
    kind: str  # uniform | normal | triangular
    params: tuple  # sorted (key, value) pairs; kept hashable

    def param(self, key: str) -> float:
        return dict(self.params)[key]

    def scale(self, u: np.ndarray) -> np.ndarray:
        """Inverse CDF at u (u = 0/1 clamped away from the poles)."""
        u = np.clip(np.asarray(u, dtype=float), 1e-12, 1.0 - 1e-12)
        p = dict(self.params)
        if self.kind == "uniform":
            return p["lo"] + u * (p["hi"] - p["lo"])
        if self.kind == "normal":
            z = np.vectorize(normal_ppf)(u)
            return p["mean"] + p["std"] * z
        if self.kind == "triangular":
            lo, mode, hi = p["lo"], p["mode"], p["hi"]
            fc = (mode - lo) / (hi - lo)
            left = lo + np.sqrt(u * (hi - lo) * (mode - lo))
            right = hi - np.sqrt((1.0 - u) * (hi - lo) * (hi - mode))
            return np.where(u <= fc, left, right)
        raise SchemaViolation("distribution", f"unknown kind {self.kind!r}")

    def center(self) -> float:
        p = dict(self.params)
        if self.kind == "uniform":
            return 0.5 * (p["lo"] + p["hi"])
        if self.kind == "normal":
            return p["mean"]
        return p["mode"]

    def to_jsonable(self):
        return {"distribution": {"type": self.kind, **dict(self.params)}}


Domain = Union[Interval, Discrete, Distribution]


@dataclass(frozen=True)
class FactorSpec:
    """One varied parameter: dotted entity.param name plus its domain."""

    name: str
    domain: Domain

    @property
    def entity(self) -> str:
        return self.name.split(".", 1)[0]

    @property
    def param(self) -> str:
        return self.name.split(".", 1)[1]

    def to_jsonable(self):
        return {"name": self.name, "domain": self.domain.to_jsonable()}


_DIST_PARAMS = {
    "uniform": ("lo", "hi"),
    "normal": ("mean", "std"),
    "triangular": ("lo", "mode", "hi"),
}


def parse_domain(raw, path: str) -> Domain:
    """Build a domain from its config-file form.

    A 2-element numeric array is always an interval; discrete sets
    and distributions use the explicit object wrappers.
    """
    if isinstance(raw, list):
        if len(raw) != 2 or not all(_is_number(v) for v in raw):
            raise SchemaViolation(path, "array domain must be two numbers [lo, hi]")
        lo, hi = float(raw[0]), float(raw[1])
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise SchemaViolation(path, "interval bounds must be finite")
        if not lo < hi:
            raise SchemaViolation(path, "interval requires lo < hi")
        return Interval(lo, hi)
    if isinstance(raw, dict):
        if set(raw) == {"discrete"}:
            values = raw["discrete"]
            if not isinstance(values, list) or not values:
                raise SchemaViolation(path, "discrete set must be a nonempty array")
            seen = []
            for v in values:
                if v in seen:
                    raise SchemaViolation(path, f"discrete set has duplicate value {v!r}")
                seen.append(v)
            return Discrete(tuple(values))
        if set(raw) == {"distribution"}:
            spec = raw["distribution"]
            if not isinstance(spec, dict) or "type" not in spec:
                raise SchemaViolation(path, "distribution must be an object with a 'type'")
            kind = spec["type"]
            if kind not in _DIST_PARAMS:
                raise SchemaViolation(
                    path, f"unknown distribution type {kind!r}; "
                    f"expected one of {sorted(_DIST_PARAMS)}"
                )
            wanted = _DIST_PARAMS[kind]
            extra = set(spec) - {"type", *wanted}
            missing = [k for k in wanted if k not in spec]
            if missing or extra:
                raise SchemaViolation(
                    path, f"{kind} distribution takes parameters {list(wanted)}"
                )
            params = {}
            for k in wanted:
                if not _is_number(spec[k]):
                    raise SchemaViolation(path, f"distribution parameter {k!r} must be a number")
                params[k] = float(spec[k])
            _check_distribution(kind, params, path)
            return Distribution(kind, tuple(sorted(params.items())))
        raise SchemaViolation(
            path, "object domain must be {'discrete': [...]} or {'distribution': {...}}"
        )
    raise SchemaViolation(path, f"cannot interpret domain {raw!r}")


def _check_distribution(kind: str, p: dict, path: str) -> None:
    if kind == "normal" and not p["std"] > 0:
        raise SchemaViolation(path, "normal distribution requires std > 0")
    if kind == "uniform" and not p["lo"] < p["hi"]:
        raise SchemaViolation(path, "uniform distribution requires lo < hi")
    if kind == "triangular":
        if not (p["lo"] <= p["mode"] <= p["hi"] and p["lo"] < p["hi"]):
            raise SchemaViolation(
                path, "triangular distribution requires lo <= mode <= hi and lo < hi"
            )


def domain_from_jsonable(raw, path: str = "domain") -> Domain:
    """Inverse of Domain.to_jsonable (same shapes as the config file)."""
    return parse_domain(raw, path)


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)
