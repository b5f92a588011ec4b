"""Recipe generation, replication, reset blocking, and file round-trips."""

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doelab.config import parse_scenario_config
from doelab.errors import MalformedRecipeFile, SchemaViolation
from doelab.recipes import (
    REPLICATE_KEY,
    apply_replication,
    generate_recipes,
    insert_reset_blocks,
    read_recipes,
    recipe_set_from_jsonable,
    recipe_set_to_jsonable,
    write_recipes,
)

from pipeline_util import config_doc
from test_config import REFERENCE_DOC


def _generate(doe_type="sobol", samples=8, k=1, **kwargs):
    variations = {"e": {f"p{i}": [0, 1] for i in range(k)}}
    cfg = parse_scenario_config(config_doc(doe_type, samples, variations, **kwargs))
    return generate_recipes(cfg)


class TestGenerate:
    def test_reference_campaign(self):
        rs = generate_recipes(parse_scenario_config(REFERENCE_DOC))
        assert len(rs.recipes) == 64
        assert rs.recipes[0].run_id == "test_1_0000"
        for recipe in rs.recipes:
            params = recipe.parameters["storage_tank"]
            assert params["INNER_HEIGHT"] == 7.9
            assert 1.0 <= params["INNER_DIAMETER"] <= 8.0

    def test_extreme_points_two_corners(self):
        rs = _generate("extreme_points", samples=1, k=1)
        values = [r.parameters["e"]["p0"] for r in rs.recipes]
        assert values == [0.0, 1.0]

    def test_hess_scale_counts(self):
        cfg = parse_scenario_config(config_doc(
            "sobol_indices", 512, {"e": {f"p{i}": [0, 1] for i in range(4)}},
            replication=5, blocking={"n_r": 2, "reset_parameters": {}},
        ))
        rs = generate_recipes(cfg)
        assert len(rs.recipes) == 23040
        assert len(rs.non_reset) == 15360

    def test_validation_errors_propagate(self):
        cfg = parse_scenario_config(config_doc("fast", 10, {"e": {"p": [0, 1], "q": [0, 1]}}))
        with pytest.raises(SchemaViolation):
            generate_recipes(cfg)

    def test_design_meta_carries_domains(self):
        rs = _generate("sobol", samples=4, k=2)
        assert [f["name"] for f in rs.design_meta["factors"]] == ["e.p0", "e.p1"]

    def test_determinism(self):
        a = recipe_set_to_jsonable(_generate(samples=16, k=3, seed=9))
        b = recipe_set_to_jsonable(_generate(samples=16, k=3, seed=9))
        assert a == b

    def test_non_reset_parameters_match_design_row(self):
        # exact equality against an independent regeneration of the
        # scaled design: sampled values survive the merge untouched
        cfg = parse_scenario_config(config_doc(
            "LHS", 10, {"e": {"p0": [2, 5], "p1": [-1, 1]}}, seed=4,
            replication=2, blocking={"n_r": 3, "reset_parameters": {}},
        ))
        rs = generate_recipes(cfg)
        from doelab.sampling import build_design, scale_to_domain

        design = build_design(cfg.doe_type, list(cfg.variations), cfg.samples, cfg.seed)
        scaled = scale_to_domain(design.rows, list(cfg.variations))
        for recipe in rs.non_reset:
            for j, name in enumerate(rs.factor_names):
                assert recipe.factor_value(name) == scaled[recipe.sample_index, j]


class TestReplication:
    def test_multiplication(self):
        rs = _generate(samples=10)
        out = apply_replication(rs, 5)
        assert len(out.recipes) == 50
        assert [r.replicate for r in out.recipes[:5]] == [0, 1, 2, 3, 4]
        assert all(r.parameters[REPLICATE_KEY] == r.replicate for r in out.recipes)

    def test_identity(self):
        rs = _generate(samples=10)
        out = apply_replication(rs, 1)
        assert len(out.recipes) == 10
        assert all(r.replicate == 0 for r in out.recipes)
        assert all(REPLICATE_KEY not in r.parameters for r in out.recipes)

    def test_replicates_contiguous_per_sample(self):
        out = apply_replication(_generate(samples=4), 3)
        samples = [r.sample_index for r in out.recipes]
        assert samples == [0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3]


class TestResetBlocks:
    def test_counts(self):
        rs = _generate(samples=5)
        out = insert_reset_blocks(rs, 2, {"e": {"p0": 0.5}})
        resets = [r for r in out.recipes if r.is_reset]
        assert len(resets) == 3
        assert len(out.recipes) == 8

    def test_reset_every_n(self):
        out = insert_reset_blocks(_generate(samples=6), 2, {})
        flags = [r.is_reset for r in out.recipes]
        assert flags == [True, False, False, True, False, False, True, False, False]

    def test_large_n_r_single_front_reset(self):
        out = insert_reset_blocks(_generate(samples=3), 99, {})
        assert [r.is_reset for r in out.recipes] == [True, False, False, False]

    def test_reset_overlay_and_sample_index(self):
        rs = _generate(samples=2)
        out = insert_reset_blocks(rs, 1, {"x": {"soc": 0.5}})
        reset = out.recipes[0]
        assert reset.is_reset
        assert reset.sample_index == -1
        assert reset.parameters["x"]["soc"] == 0.5

    def test_paper_scale_reset_count(self):
        rs = _generate("sobol_indices", samples=512, k=4)
        assert len(rs.recipes) == 3072
        out = insert_reset_blocks(rs, 2, {})
        assert sum(r.is_reset for r in out.recipes) == 1536


class TestCountLaw:
    @settings(max_examples=25, deadline=None)
    @given(rows=st.integers(1, 40), n_pp=st.integers(1, 5), n_r=st.integers(1, 7))
    def test_blocking_before_replication_law(self, rows, n_pp, n_r):
        cfg = parse_scenario_config(config_doc(
            "LHS", rows, {"e": {"p": [0, 1]}},
            replication=n_pp, blocking={"n_r": n_r, "reset_parameters": {}},
        ))
        rs = generate_recipes(cfg)
        expected = (rows + math.ceil(rows / n_r)) * n_pp
        assert len(rs.recipes) == expected
        assert len(rs.non_reset) == rows * n_pp
        assert len({r.run_id for r in rs.recipes}) == len(rs.recipes)


class TestFileRoundTrip:
    def test_write_read_equality(self, tmp_path):
        rs = _generate(samples=12, k=2, seed=3)
        path = tmp_path / "recipes.json"
        write_recipes(rs, path)
        again = read_recipes(path)
        assert recipe_set_to_jsonable(again) == recipe_set_to_jsonable(rs)

    def test_duplicate_run_id_rejected(self, tmp_path):
        rs = _generate(samples=3)
        doc = recipe_set_to_jsonable(rs)
        doc["recipes"][1]["run_id"] = doc["recipes"][0]["run_id"]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(MalformedRecipeFile):
            read_recipes(path)

    def test_missing_field_rejected(self):
        doc = recipe_set_to_jsonable(_generate(samples=2))
        del doc["factor_names"]
        with pytest.raises(MalformedRecipeFile):
            recipe_set_from_jsonable(doc)

    def test_wrong_version_rejected(self):
        doc = recipe_set_to_jsonable(_generate(samples=2))
        doc["format_version"] = 99
        with pytest.raises(MalformedRecipeFile):
            recipe_set_from_jsonable(doc)

    def test_run_id_padding_grows_with_size(self):
        rs = _generate(samples=8)
        assert rs.recipes[-1].run_id == "test_1_0007"
        big = apply_replication(rs, 1500)  # 12000 recipes -> width 5
        assert big.recipes[-1].run_id == "test_1_11999"
