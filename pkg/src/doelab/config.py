"""Scenario-configuration documents: parsing, validation, serialization.

The config file is the single input driving the whole pipeline. It
is plain JSON with a fixed top-level vocabulary (samples, doe_type,
basic_conf, entities_parameters, variations_dict, target_metrics,
and the optional seed / replication / blocking extensions). The
default parser additionally tolerates trailing commas, which turn
up in hand-edited configs; strict mode rejects them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

from .domains import FactorSpec, parse_domain
from .errors import MalformedJson, SchemaViolation
from .sampling.designs import EFAST_HARMONICS, MAX_CORNER_FACTORS, efast_minimum_samples

DOE_TYPES = (
    "extreme_points",
    "sobol",
    "LHS",
    "OAT",
    "sobol_indices",
    "fast",
    "distribution_and_discrete",
)

_TOP_LEVEL_KEYS = {
    "samples", "doe_type", "basic_conf", "entities_parameters",
    "variations_dict", "target_metrics", "seed", "replication", "blocking",
}

SOBOL_INDICES_RECOMMENDED_MIN = 1000


@dataclass(frozen=True)
class Replication:
    n_pp: int


@dataclass(frozen=True)
class Blocking:
    n_r: int
    reset_parameters: dict  # entity -> param -> scalar


@dataclass(frozen=True)
class ScenarioConfig:
    samples: int
    doe_type: str
    basic_conf: dict
    entities_parameters: dict  # entity -> param -> scalar
    variations: tuple  # FactorSpec, in document order
    target_metrics: tuple
    seed: int = 0
    replication: Replication | None = None
    blocking: Blocking | None = None

    @property
    def scenario_name(self) -> str:
        return self.basic_conf["scenario_name"]

    @property
    def factor_names(self) -> tuple:
        return tuple(f.name for f in self.variations)

    def to_jsonable(self) -> dict:
        doc = {
            "samples": self.samples,
            "doe_type": self.doe_type,
            "basic_conf": dict(self.basic_conf),
            "entities_parameters": {e: dict(p) for e, p in self.entities_parameters.items()},
            "variations_dict": _variations_to_doc(self.variations),
            "target_metrics": list(self.target_metrics),
            "seed": self.seed,
        }
        if self.replication is not None:
            doc["replication"] = {"n_pp": self.replication.n_pp}
        if self.blocking is not None:
            doc["blocking"] = {
                "n_r": self.blocking.n_r,
                "reset_parameters": {e: dict(p) for e, p in self.blocking.reset_parameters.items()},
            }
        return doc


def _variations_to_doc(variations) -> dict:
    doc: dict = {}
    for f in variations:
        doc.setdefault(f.entity, {})[f.param] = f.domain.to_jsonable()
    return doc


def strip_trailing_commas(text: str) -> str:
    """Remove commas that directly precede a closing bracket or brace.

    Operates outside string literals only, so embedded ",}" inside
    a value survives.
    """
    out = []
    in_string = False
    escaped = False
    pending_comma = -1
    for ch in text:
        if in_string:
            out.append(ch)
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if ch == '"':
            in_string = True
            pending_comma = -1
            out.append(ch)
            continue
        if ch == ",":
            pending_comma = len(out)
            out.append(ch)
            continue
        if ch in "}]" and pending_comma >= 0:
            del out[pending_comma]
        if not ch.isspace():
            pending_comma = -1
        out.append(ch)
    return "".join(out)


def parse_scenario_config(document: str, strict: bool = False,
                          default_seed: int = 0) -> ScenarioConfig:
    """Parse and validate a scenario-configuration document.

    Raises MalformedJson for syntactic problems and SchemaViolation
    (with the offending path) for structural ones. ``default_seed``
    applies only when the document carries no seed of its own.
    """
    text = document if strict else strip_trailing_commas(document)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"configuration is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaViolation("$", "configuration must be a JSON object")

    unknown = set(doc) - _TOP_LEVEL_KEYS
    if unknown:
        raise SchemaViolation(
            sorted(unknown)[0],
            "unknown top-level key; extra metadata belongs under basic_conf",
        )
    for key in ("samples", "doe_type", "basic_conf", "entities_parameters",
                "variations_dict", "target_metrics"):
        if key not in doc:
            raise SchemaViolation(key, "required key is missing")

    samples = doc["samples"]
    if not isinstance(samples, int) or isinstance(samples, bool) or samples < 1:
        raise SchemaViolation("samples", "must be a positive integer")

    doe_type = doc["doe_type"]
    if doe_type not in DOE_TYPES:
        raise SchemaViolation(
            "doe_type", f"unknown DoE type {doe_type!r}; expected one of {list(DOE_TYPES)}"
        )

    basic_conf = doc["basic_conf"]
    if not isinstance(basic_conf, dict):
        raise SchemaViolation("basic_conf", "must be an object")
    name = basic_conf.get("scenario_name")
    if not isinstance(name, str) or not name:
        raise SchemaViolation("basic_conf.scenario_name", "must be a nonempty string")
    for key in ("end", "step_size"):
        if key in basic_conf and (not isinstance(basic_conf[key], int) or isinstance(basic_conf[key], bool)):
            raise SchemaViolation(f"basic_conf.{key}", "must be an integer (seconds)")

    entities = doc["entities_parameters"]
    if not isinstance(entities, dict):
        raise SchemaViolation("entities_parameters", "must be an object")
    for entity, params in entities.items():
        if not isinstance(params, dict):
            raise SchemaViolation(f"entities_parameters.{entity}", "must be an object of parameters")
        for pname, value in params.items():
            if not _is_scalar(value):
                raise SchemaViolation(
                    f"entities_parameters.{entity}.{pname}", "default value must be a scalar"
                )

    variations_doc = doc["variations_dict"]
    if not isinstance(variations_doc, dict):
        raise SchemaViolation("variations_dict", "must be an object")
    variations: list[FactorSpec] = []
    seen = set()
    for entity, params in variations_doc.items():
        if not isinstance(params, dict):
            raise SchemaViolation(f"variations_dict.{entity}", "must be an object of parameters")
        for pname, raw in params.items():
            path = f"variations_dict.{entity}.{pname}"
            dotted = f"{entity}.{pname}"
            if dotted in seen:
                raise SchemaViolation(path, "duplicate factor name")
            seen.add(dotted)
            variations.append(FactorSpec(dotted, parse_domain(raw, path)))

    metrics = doc["target_metrics"]
    if not isinstance(metrics, list) or not metrics:
        raise SchemaViolation("target_metrics", "must be a nonempty array of metric names")
    for i, m in enumerate(metrics):
        if not isinstance(m, str) or not m:
            raise SchemaViolation(f"target_metrics[{i}]", "metric names must be nonempty strings")
    if len(set(metrics)) != len(metrics):
        raise SchemaViolation("target_metrics", "metric names must be unique")

    seed = doc.get("seed", default_seed)
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2 ** 64:
        raise SchemaViolation("seed", "must be an unsigned 64-bit integer")

    replication = None
    if "replication" in doc:
        rep = doc["replication"]
        if not isinstance(rep, dict) or set(rep) != {"n_pp"}:
            raise SchemaViolation("replication", "must be an object {'n_pp': <positive int>}")
        n_pp = rep["n_pp"]
        if not isinstance(n_pp, int) or isinstance(n_pp, bool) or n_pp < 1:
            raise SchemaViolation("replication.n_pp", "must be a positive integer")
        replication = Replication(n_pp)

    blocking = None
    if "blocking" in doc:
        blk = doc["blocking"]
        if not isinstance(blk, dict) or set(blk) != {"n_r", "reset_parameters"}:
            raise SchemaViolation(
                "blocking", "must be an object {'n_r': <positive int>, 'reset_parameters': {...}}"
            )
        n_r = blk["n_r"]
        if not isinstance(n_r, int) or isinstance(n_r, bool) or n_r < 1:
            raise SchemaViolation("blocking.n_r", "must be a positive integer")
        reset = blk["reset_parameters"]
        if not isinstance(reset, dict):
            raise SchemaViolation("blocking.reset_parameters", "must be an object")
        for entity, params in reset.items():
            if not isinstance(params, dict):
                raise SchemaViolation(f"blocking.reset_parameters.{entity}", "must be an object")
        blocking = Blocking(n_r, reset)

    return ScenarioConfig(
        samples=samples,
        doe_type=doe_type,
        basic_conf=dict(basic_conf),
        entities_parameters={e: dict(p) for e, p in entities.items()},
        variations=tuple(variations),
        target_metrics=tuple(metrics),
        seed=seed,
        replication=replication,
        blocking=blocking,
    )


def serialize_config(cfg: ScenarioConfig) -> str:
    return json.dumps(cfg.to_jsonable(), indent=2)


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # warn | error
    path: str
    message: str


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    def warn(self, path: str, message: str) -> None:
        self.issues.append(ValidationIssue("warn", path, message))

    def error(self, path: str, message: str) -> None:
        self.issues.append(ValidationIssue("error", path, message))

    @property
    def errors(self) -> list:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> list:
        return [i for i in self.issues if i.severity == "warn"]

    def __bool__(self) -> bool:
        return bool(self.issues)


def validate_config(cfg: ScenarioConfig) -> ValidationReport:
    """Cross-field checks that parsing alone cannot decide.

    An empty report means the config is ready to sample; warnings
    flag questionable but workable choices.
    """
    report = ValidationReport()

    for f in cfg.variations:
        entity_params = cfg.entities_parameters.get(f.entity, {})
        if f.param not in entity_params:
            report.warn(
                f"variations_dict.{f.entity}.{f.param}",
                "variation-only factor: no default under entities_parameters "
                "(allowed; the sampled value alone parameterizes it)",
            )

    if cfg.doe_type == "sobol_indices" and cfg.samples < SOBOL_INDICES_RECOMMENDED_MIN:
        report.warn(
            "samples",
            f"for variance-based index estimation the sample size should be at "
            f"least {SOBOL_INDICES_RECOMMENDED_MIN} (got {cfg.samples})",
        )

    if cfg.doe_type == "fast":
        minimum = efast_minimum_samples(EFAST_HARMONICS)
        if cfg.samples % 2 == 0 or cfg.samples < minimum:
            report.error(
                "samples",
                f"frequency-based sampling needs an odd per-curve count of at "
                f"least {minimum} (got {cfg.samples})",
            )
        if len(cfg.variations) < 2:
            report.error("variations_dict", "frequency-based sampling needs at least 2 factors")

    if cfg.doe_type == "extreme_points" and len(cfg.variations) > MAX_CORNER_FACTORS:
        report.error(
            "variations_dict",
            f"{len(cfg.variations)} factors would generate "
            f"2^{len(cfg.variations)} corner runs (limit {MAX_CORNER_FACTORS})",
        )

    if cfg.doe_type == "sobol" and len(cfg.variations) > 64:
        report.error(
            "variations_dict",
            f"the quasi-random sequence supports up to 64 dimensions "
            f"(got {len(cfg.variations)} factors)",
        )
    if cfg.doe_type == "sobol_indices" and len(cfg.variations) > 32:
        report.error(
            "variations_dict",
            f"index-estimation blocks draw from a 2k-dimensional quasi-random "
            f"sequence capped at 64, so at most 32 factors are supported "
            f"(got {len(cfg.variations)})",
        )

    if cfg.doe_type == "distribution_and_discrete":
        report.warn(
            "doe_type",
            "random distribution/discrete sampling has no analysis method; "
            "the campaign will stop after the experiment stage",
        )

    for f in cfg.variations:
        if cfg.doe_type in ("extreme_points", "OAT") and not hasattr(f.domain, "lo"):
            if not hasattr(f.domain, "values"):
                report.warn(
                    f"variations_dict.{f.entity}.{f.param}",
                    f"{cfg.doe_type} endpoints of a distribution domain are its "
                    "extreme quantiles, which may be far in the tails",
                )

    return report


def with_seed(cfg: ScenarioConfig, seed: int) -> ScenarioConfig:
    return replace(cfg, seed=seed)


def _is_scalar(v) -> bool:
    if isinstance(v, (str, bool, int)):
        return True
    if isinstance(v, float):
        return math.isfinite(v)
    return False
