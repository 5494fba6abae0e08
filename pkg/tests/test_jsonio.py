"""JSON round trips and input validation."""

import json
import random

import pytest

from relcell import (
    DeltaError,
    EMPTY,
    FillerTable,
    SimplicialMap,
    assemble,
    free_complex,
    free_fillers,
    square_key,
    standard_simplex,
    trivial_complex,
    u_of_complex,
)
from relcell import gen, jsonio
from conftest import boundary_inclusion, fold_map


class TestComplexRoundTrip:
    def test_examples(self):
        for x in (EMPTY, standard_simplex(0), standard_simplex(2)):
            payload = jsonio.complex_to_json(x)
            assert jsonio.complex_from_json(payload) == x
            # emitted JSON is pure data
            json.dumps(payload)

    def test_random_corpus(self):
        rng = random.Random(179)
        for _ in range(25):
            x = gen.rand_complex(rng)
            assert jsonio.complex_from_json(jsonio.complex_to_json(x)) == x

    def test_rejects_garbage(self):
        with pytest.raises(DeltaError):
            jsonio.complex_from_json({"nope": 1})
        with pytest.raises(DeltaError):
            jsonio.complex_from_json(
                {"simplices": {"1": [{"id": "e", "faces": ["a", "b"]}]}})


class TestMapRoundTrip:
    def test_random_corpus(self):
        rng = random.Random(181)
        for _ in range(25):
            f = gen.rand_map(rng)
            assert jsonio.map_from_json(jsonio.map_to_json(f)) == f

    def test_rejects_non_commuting(self):
        f = boundary_inclusion(1)
        payload = jsonio.map_to_json(f)
        payload["assign"]["0"]["0"] = "1"
        payload["assign"]["0"]["1"] = "1"
        # still a valid map (constant), so this parses; break dimension
        payload["assign"]["0"]["0"] = "01"
        with pytest.raises(DeltaError):
            jsonio.map_from_json(payload)


class TestStratumAndComplex:
    def test_stratum_roundtrip(self):
        rng = random.Random(191)
        for _ in range(15):
            st = gen.rand_stratum(rng)
            assert jsonio.stratum_from_json(jsonio.stratum_to_json(st)) == st

    def test_cellcx_roundtrip(self):
        rng = random.Random(193)
        for _ in range(15):
            c = gen.rand_cell_complex(rng, max_cells=5)
            assert jsonio.cellcx_from_json(jsonio.cellcx_to_json(c)) == c

    def test_lax_loader_normalizes_improper_input(self):
        rng = random.Random(197)
        c = gen.rand_cell_complex(rng, max_cells=4)
        payload = jsonio.cellcx_to_json(c)
        # flatten all cells into one pile of strata entries in reverse
        cells = [e for entry in payload["strata"] for e in entry["cells"]]
        payload["strata"] = [{"cells": cells[::-1]}]
        base, loaded = jsonio.cellcx_cells_from_json(payload)
        assert assemble(base, loaded) == c

    def test_lax_loader_rejects_dangling_attach(self):
        payload = {"base": jsonio.complex_to_json(EMPTY),
                   "strata": [{"cells": [
                       {"id": "e", "dim": 1,
                        "attach": {"0": "ghost", "1": "ghost"}}]}]}
        with pytest.raises(DeltaError):
            jsonio.cellcx_cells_from_json(payload)


class TestFactorAndFillers:
    def test_factor_result_roundtrip(self):
        fr = free_complex(boundary_inclusion(1))
        payload = jsonio.factor_result_to_json(fr)
        back = jsonio.factor_result_from_json(payload)
        assert back.input == fr.input
        assert back.kf == fr.kf
        assert back.ef == fr.ef
        assert back.digest == fr.digest

    def test_factor_result_count_mismatch_rejected(self):
        fr = free_complex(boundary_inclusion(1))
        payload = jsonio.factor_result_to_json(fr)
        payload["stage_counts"] = [1, 1]
        with pytest.raises(DeltaError):
            jsonio.factor_result_from_json(payload)

    def test_filler_table_roundtrip(self):
        fold = fold_map()
        ft = FillerTable(fold, {square_key(0, "0", {}): "0.0"},
                         fallback="fail")
        back = jsonio.filler_table_from_json(jsonio.filler_table_to_json(ft))
        assert back.p == ft.p
        assert back.entries == ft.entries
        assert back.fallback == ft.fallback

    def test_chooser_tables_not_serializable(self):
        fr = free_complex(boundary_inclusion(1))
        with pytest.raises(DeltaError):
            jsonio.filler_table_to_json(free_fillers(fr))

    def test_dumps_deterministic(self):
        c = trivial_complex(standard_simplex(2))
        a = jsonio.dumps(jsonio.cellcx_to_json(c))
        b = jsonio.dumps(jsonio.cellcx_to_json(c))
        assert a == b
        json.loads(a)
