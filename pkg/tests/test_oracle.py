import pytest

from fillgraph import oracle
from fillgraph.oracle import (CensusRangeError, census, census_filter,
                              iter_matchings, matching_to_graph,
                              verify_formula_by_recompute)


class TestCensus:
    def test_one_vertex_classes(self):
        rows = census(1)
        assert len(rows) == 2
        data = sorted((r.genus, r.boundary_count, r.standard_cycle_count,
                       r.filling) for r in rows)
        assert data == [(0, 3, 1, False), (1, 1, 2, True)]

    def test_no_genus_two_minimal_pair(self):
        assert census_filter(3, genus=2, b=1, s=2, filling=True) == []

    def test_size_four_witness_exists(self):
        assert census_filter(3, genus=2, b=1, s=4, filling=True)

    def test_extremal_sizes_at_desk_scale(self):
        # every (g, b) whose fillings have at most 4 vertices
        for g, b in ((1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2)):
            V = 2 * g - 2 + b
            rows = census_filter(V, genus=g, b=b, filling=True)
            sizes = {r.standard_cycle_count for r in rows}
            assert max(sizes) == 2 * g + b - 1, (g, b)
            assert min(sizes) == (3 if (g, b) == (2, 1) else 2), (g, b)

    def test_euler_relation_and_weight_bound(self):
        for V in (1, 2, 3):
            for row in census(V):
                assert (row.vertex_count - row.edge_count
                        + row.boundary_count == 2 - 2 * row.genus)
                if row.filling:
                    assert sum(row.cycle_lengths) == row.edge_count
                    if row.boundary_count == 1:
                        bound = 2 * row.genus - row.standard_cycle_count + 1
                        assert row.omega_max <= bound

    def test_counts_are_multiplicity_consistent(self):
        # class multiplicities add up to the number of connected matchings
        for V in (1, 2, 3):
            total = sum(r.count for r in census(V))
            matchings = sum(1 for _ in iter_matchings(V, connected_only=True))
            assert total == matchings

    def test_keys_match_core_canonical_form(self):
        for row in census(2):
            assert row.graph().canonical_form() == row.key

    def test_rows_sorted_and_stable(self):
        rows = census(3)
        keys = [r.key for r in rows]
        assert keys == sorted(keys)
        census.cache_clear()
        again = oracle.census(3)
        assert [r.key for r in again] == keys
        assert [r.count for r in again] == [r.count for r in rows]

    def test_ceiling(self):
        with pytest.raises(CensusRangeError):
            census(5)


class TestEngineAgreement:
    def test_python_equals_numba(self):
        for V in (1, 2):
            py = oracle._census_python(V)
            assert set(py) and isinstance(py, dict)
            if oracle._HAVE_NUMBA:
                nb = oracle._census_numba(V)
                assert set(py) == set(nb)
                for k in py:
                    assert py[k][0] == nb[k][0]
                    assert py[k][1] == nb[k][1]

    def test_prefix_split_covers_everything(self):
        whole = oracle._census_python(3)
        parts = {}
        for c in (1, 2, 4):
            oracle._merge(parts, oracle._census_python(3, prefix=((0, c),)))
        assert set(parts) == set(whole)
        for k in whole:
            assert parts[k][1] == whole[k][1]

    def test_worker_fanout_matches_serial(self, monkeypatch):
        serial = {(r.key, r.count) for r in census(3)}
        census.cache_clear()
        monkeypatch.setenv("FILLGRAPH_THREADS", "3")
        try:
            par = {(r.key, r.count) for r in oracle.census(3)}
        finally:
            census.cache_clear()
        assert par == serial


class TestMatchings:
    def test_matching_graph_roundtrip(self):
        for match in iter_matchings(2, connected_only=True):
            g = matching_to_graph(2, match)
            assert g.num_vertices == 2
            assert g.is_connected

    def test_symmetry_break_is_lossless(self):
        # every 1-vertex fat graph appears despite dart 0's restriction
        keys = {matching_to_graph(1, m).canonical_form()
                for m in iter_matchings(1)}
        assert len(keys) == 2


@pytest.fixture(scope="module")
def audits():
    return verify_formula_by_recompute(max_census_v=2, census_cap=12)


class TestFormulaVerification:

    def test_zero_hard_mismatches(self, audits):
        for a in audits.values():
            assert a.mismatches == 0

    def test_all_branches_exercised(self, audits):
        assert len(audits["join"].case_counts) == 2
        assert len(audits["plumb"].case_counts) == 2
        assert len(audits["consum"].case_counts) == 4

    def test_join_corollary(self, audits):
        assert audits["join"].corollary_violations == 0

    def test_consum_table_audit(self, audits):
        a = audits["consum"]
        assert a.printed_reliable_misses == 0
        assert a.printed_matched > 0
        assert a.s_law_checked > 0 and a.s_law_misses == 0
