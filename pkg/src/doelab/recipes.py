"""Per-run experiment recipes: defaults merged with sampled values.

A recipe is the complete parameterization of one experiment run.
The recipe file is the only contract between this toolbox and the
external experimental process, so its layout is versioned and kept
deliberately plain: top-level campaign metadata plus a flat list
of runs in execution order.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field, replace

from .config import ScenarioConfig, validate_config
from .errors import IoError, MalformedRecipeFile, SchemaViolation
from .sampling.designs import build_design, scale_to_domain

FORMAT_VERSION = 1

REPLICATE_KEY = "__replicate"  # profile-selector parameter injected by replication


@dataclass
class Recipe:
    run_id: str
    sample_index: int  # row in the design; -1 for reset runs
    replicate: int
    is_reset: bool
    parameters: dict  # entity -> {param: value}; REPLICATE_KEY is a bare scalar
    basic_conf: dict

    def factor_value(self, dotted_name: str):
        entity, param = dotted_name.split(".", 1)
        return self.parameters[entity][param]


@dataclass
class RecipeSet:
    scenario_name: str
    doe_type: str
    seed: int
    factor_names: list
    target_metrics: list
    design_meta: dict
    recipes: list = field(default_factory=list)

    @property
    def non_reset(self) -> list:
        return [r for r in self.recipes if not r.is_reset]


def generate_recipes(cfg: ScenarioConfig) -> RecipeSet:
    """Full recipe set for a validated configuration.

    Dispatches to the configured sampler, scales the design into
    factor units, overlays each row onto the entity defaults, then
    applies reset blocking and replication when configured (in that
    order, so reset runs are replicated alongside the runs they
    protect).
    """
    report = validate_config(cfg)
    if report.errors:
        first = report.errors[0]
        extra = f" (+{len(report.errors) - 1} more)" if len(report.errors) > 1 else ""
        raise SchemaViolation(first.path, first.message + extra)

    design = build_design(cfg.doe_type, list(cfg.variations), cfg.samples, cfg.seed)
    scaled = design.rows if not design.unit else scale_to_domain(design.rows, list(cfg.variations))

    recipes = []
    for idx in range(scaled.shape[0]):
        params = copy.deepcopy(cfg.entities_parameters)
        for j, factor in enumerate(cfg.variations):
            value = scaled[idx, j]
            params.setdefault(factor.entity, {})[factor.param] = _plain(value)
        recipes.append(Recipe(
            run_id="",
            sample_index=idx,
            replicate=0,
            is_reset=False,
            parameters=params,
            basic_conf=dict(cfg.basic_conf),
        ))

    rs = RecipeSet(
        scenario_name=cfg.scenario_name,
        doe_type=cfg.doe_type,
        seed=cfg.seed,
        factor_names=list(cfg.factor_names),
        target_metrics=list(cfg.target_metrics),
        design_meta=design.meta,
        recipes=recipes,
    )
    if cfg.blocking is not None:
        rs = insert_reset_blocks(rs, cfg.blocking.n_r, cfg.blocking.reset_parameters,
                                 defaults=cfg.entities_parameters)
    if cfg.replication is not None:
        rs = apply_replication(rs, cfg.replication.n_pp)
    _assign_run_ids(rs)
    return rs


def apply_replication(rs: RecipeSet, n_pp: int) -> RecipeSet:
    """Duplicate every recipe n_pp times, replicates kept contiguous.

    Each copy carries its replicate index both in the ``replicate``
    field and, for n_pp > 1, as the REPLICATE_KEY parameter so the
    external process can pick its nuisance realization (for example
    one of n_pp recorded demand profiles).
    """
    if n_pp < 1:
        raise ValueError("n_pp must be >= 1")
    out = []
    for recipe in rs.recipes:
        for rep in range(n_pp):
            clone = replace(recipe, replicate=rep, parameters=copy.deepcopy(recipe.parameters))
            if n_pp > 1:
                clone.parameters[REPLICATE_KEY] = rep
            out.append(clone)
    new_rs = replace(rs, recipes=out)
    _assign_run_ids(new_rs)
    return new_rs


def insert_reset_blocks(rs: RecipeSet, n_r: int, reset_parameters: dict,
                        defaults: dict | None = None) -> RecipeSet:
    """Insert one reset run before every group of n_r ordinary runs.

    Reset runs restore controlled conditions (e.g. storage levels)
    and are excluded from analysis; they carry sample_index -1 and
    the reset parameter overlay on top of the entity defaults.
    """
    if n_r < 1:
        raise ValueError("n_r must be >= 1")
    reset_params = copy.deepcopy(defaults) if defaults else {}
    for entity, params in reset_parameters.items():
        reset_params.setdefault(entity, {}).update(params)
    basic_conf = dict(rs.recipes[0].basic_conf) if rs.recipes else {}

    out = []
    ordinal = 0
    for recipe in rs.recipes:
        if not recipe.is_reset and ordinal % n_r == 0:
            out.append(Recipe(
                run_id="",
                sample_index=-1,
                replicate=0,
                is_reset=True,
                parameters=copy.deepcopy(reset_params),
                basic_conf=dict(basic_conf),
            ))
        if not recipe.is_reset:
            ordinal += 1
        out.append(recipe)
    new_rs = replace(rs, recipes=out)
    _assign_run_ids(new_rs)
    return new_rs


def _assign_run_ids(rs: RecipeSet) -> None:
    total = len(rs.recipes)
    width = max(4, len(str(max(total - 1, 0))))
    for i, recipe in enumerate(rs.recipes):
        recipe.run_id = f"{rs.scenario_name}_{i:0{width}d}"


def recipe_set_to_jsonable(rs: RecipeSet) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "scenario_name": rs.scenario_name,
        "doe_type": rs.doe_type,
        "seed": rs.seed,
        "factor_names": list(rs.factor_names),
        "target_metrics": list(rs.target_metrics),
        "design_meta": rs.design_meta,
        "recipes": [
            {
                "run_id": r.run_id,
                "sample_index": r.sample_index,
                "replicate": r.replicate,
                "is_reset": r.is_reset,
                "parameters": r.parameters,
                "basic_conf": r.basic_conf,
            }
            for r in rs.recipes
        ],
    }


def recipe_set_from_jsonable(doc) -> RecipeSet:
    if not isinstance(doc, dict):
        raise MalformedRecipeFile("recipe document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise MalformedRecipeFile(
            f"unsupported recipe format_version {version!r} (expected {FORMAT_VERSION})"
        )
    for key in ("scenario_name", "doe_type", "seed", "factor_names",
                "target_metrics", "design_meta", "recipes"):
        if key not in doc:
            raise MalformedRecipeFile(f"recipe document is missing {key!r}")
    recipes = []
    seen = set()
    for i, raw in enumerate(doc["recipes"]):
        try:
            recipe = Recipe(
                run_id=raw["run_id"],
                sample_index=int(raw["sample_index"]),
                replicate=int(raw["replicate"]),
                is_reset=bool(raw["is_reset"]),
                parameters=raw["parameters"],
                basic_conf=raw["basic_conf"],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedRecipeFile(f"recipe #{i} is malformed: {exc}") from None
        if recipe.run_id in seen:
            raise MalformedRecipeFile(f"duplicate run_id {recipe.run_id!r}")
        seen.add(recipe.run_id)
        recipes.append(recipe)
    return RecipeSet(
        scenario_name=doc["scenario_name"],
        doe_type=doc["doe_type"],
        seed=int(doc["seed"]),
        factor_names=list(doc["factor_names"]),
        target_metrics=list(doc["target_metrics"]),
        design_meta=doc["design_meta"],
        recipes=recipes,
    )


def write_recipes(rs: RecipeSet, path) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(recipe_set_to_jsonable(rs), handle, separators=(",", ":"))
            handle.write("\n")
    except OSError as exc:
        raise IoError(f"cannot write recipe file {path}: {exc}") from None


def read_recipes(path) -> RecipeSet:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise IoError(f"cannot read recipe file {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRecipeFile(f"recipe file is not valid JSON: {exc}") from None
    return recipe_set_from_jsonable(doc)


def _plain(value):
    """Convert numpy scalars to built-in types for JSON round-trips."""
    if isinstance(value, float) or hasattr(value, "dtype"):
        out = float(value)
        if not math.isfinite(out):
            raise ValueError(f"non-finite sampled value {value!r}")
        return out
    return value
