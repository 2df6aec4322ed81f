import pytest

from quivermute.dual import quadratic_dual
from quivermute.errors import (
    NotTranslationQuiverError,
    UndefinedTranslateError,
    WindowClippedError,
)
from quivermute.extension import build_zq
from quivermute.fixtures import a3_mesh_quiver, d4_dual_slice_quiver
from quivermute.translation import (
    ENDING,
    STARTING,
    detect_translation,
    hammock,
    koszul_profile,
    verify_n_translation,
)

from helpers import quiver


def a3_window(span=(-2, 4)):
    return build_zq(a3_mesh_quiver(), span)


class TestDetect:
    def test_level_shift_on_a3_window(self):
        zq = a3_window()
        td = detect_translation(zq.quiver, zq.gb(), zq.levels)
        assert td.n == 2
        for v, w in td.tau.items():
            orbit, level = zq.orbit_level(v)
            assert w == zq.vertex(orbit, level - 1)

    def test_d4_translation_in_paper_coordinates(self):
        # vertices (i, t) at window level l correspond to column 3l + t; the
        # translation shifts the column by 3
        lam = quadratic_dual(d4_dual_slice_quiver())
        zq = build_zq(lam, (-1, 2))
        td = detect_translation(zq.quiver, zq.gb(), zq.levels)
        assert td.tau
        for v, w in td.tau.items():
            orbit, level = zq.orbit_level(v)
            i, t = orbit.split(".")
            column = 3 * level + int(t)
            worbit, wlevel = zq.orbit_level(w)
            wi, wt = worbit.split(".")
            assert wi == i
            assert 3 * wlevel + int(wt) == column - 3

    def test_mixed_maximal_lengths_rejected(self):
        bq = quiver("123", [("a", "1", "2"), ("b", "2", "3"), ("s", "1", "3")])
        with pytest.raises(NotTranslationQuiverError) as err:
            detect_translation(bq)
        assert err.value.witness["lengths"] == [1, 2]

    def test_single_vertex_degenerate(self):
        bq = quiver("v", [])
        td = detect_translation(bq)
        assert td.projectives == td.injectives == frozenset("v")
        assert td.tau == {}

    def test_verify_single_vertex_passes(self):
        bq = quiver("v", [])
        td = detect_translation(bq)
        report = verify_n_translation(bq, td)
        assert report.all_passed

    def test_two_independent_top_paths_fail_condition_two(self):
        square = quiver(
            "1234",
            [("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")],
        )
        td = detect_translation(square)
        report = verify_n_translation(square, td)
        assert not report.condition2.passed
        assert report.condition2.witnesses[0]["top_dim"] == 2


class TestVerifyWindow:
    def test_interior_passes_with_no_projectives(self):
        zq = build_zq(a3_mesh_quiver(), (0, 9))
        report = verify_n_translation(zq.quiver, zq.td, zq.gb(), zq.levels)
        assert report.all_passed
        assert report.n == 2
        assert report.interior == frozenset(
            v for v in zq.quiver.vertices if 3 <= zq.levels[v] <= 6
        )
        assert report.interior_projectives == frozenset()
        assert report.interior_injectives == frozenset()

    def test_boundary_is_indeterminate_not_failed(self):
        zq = a3_window()
        report = verify_n_translation(zq.quiver, zq.td, zq.gb(), zq.levels)
        assert report.all_passed
        for v in zq.quiver.vertices:
            if zq.levels[v] in (-2, 4):
                assert v in report.indeterminate


class TestHammock:
    def test_starting_endpoints(self):
        zq = a3_window()
        ham = hammock(zq.quiver, zq.td, "3@0", STARTING, gb=zq.gb(), levels=zq.levels)
        assert ham.at_distance(0) == [("3@0", 1)]
        assert ham.at_distance(3) == [("3@1", 1)]

    def test_ending_equals_starting_at_translate(self):
        zq = a3_window()
        td = zq.td
        for v in ["3@1", "5@1", "1@1", "6@1"]:
            ending = hammock(zq.quiver, td, v, ENDING, gb=zq.gb(), levels=zq.levels)
            starting = hammock(zq.quiver, td, td.tau_of(v), STARTING, gb=zq.gb(), levels=zq.levels)
            assert ending.vertex_set() == starting.vertex_set()
            for (j, t, mu) in ending.entries:
                assert starting.mu(j, td.n + 1 - t) == mu

    def test_all_multiplicities_one_on_fixtures(self):
        for base in (a3_mesh_quiver(), quadratic_dual(d4_dual_slice_quiver())):
            zq = build_zq(base, (-2, 3))
            interior = [v for v in zq.quiver.vertices if zq.levels[v] == 1]
            for v in interior:
                ham = hammock(zq.quiver, zq.td, v, STARTING, gb=zq.gb(), levels=zq.levels)
                assert all(mu == 1 for _, _, mu in ham.entries)

    def test_ending_hammock_needs_translate(self):
        zq = a3_window()
        bottom = "3@-2"
        assert zq.td.tau_of(bottom) is None
        with pytest.raises(UndefinedTranslateError):
            hammock(zq.quiver, zq.td, bottom, ENDING, gb=zq.gb(), levels=zq.levels)

    def test_window_clipped_near_boundary(self):
        zq = a3_window()
        with pytest.raises(WindowClippedError):
            hammock(zq.quiver, zq.td, "3@4", ENDING, gb=zq.gb(), levels=zq.levels)

    def test_hammock_arrows_have_nonzero_composites(self):
        from fractions import Fraction

        from quivermute.quiver import make_lincomb

        zq = a3_window()
        gb = zq.gb()
        ham = hammock(zq.quiver, zq.td, "5@1", ENDING, gb=gb, levels=zq.levels)
        assert ham.arrows
        for aid, t in ham.arrows:
            arrow = zq.quiver.arrow(aid)
            unit = make_lincomb(arrow.source, arrow.target, [(Fraction(1), (aid,))])
            assert any(
                gb.mult(lc, unit).terms for lc in gb.block_basis(arrow.target, "5@1", t)
            )


class TestKoszulProfile:
    def test_endpoints(self):
        zq = a3_window()
        prof = koszul_profile(zq.quiver, zq.td, "2@0", gb=zq.gb(), levels=zq.levels)
        assert prof.at(zq.td.n + 1) == (("2@0", 1),)
        assert prof.at(0) == (("2@1", 1),)

    def test_profile_matches_graded_dims(self):
        zq = a3_window()
        gb = zq.gb()
        n = zq.td.n
        for v in ["1@0", "4@0", "6@0"]:
            prof = koszul_profile(zq.quiver, zq.td, v, gb=gb, levels=zq.levels)
            for t in range(n + 2):
                expected = {}
                for j in zq.quiver.vertices:
                    d = gb.dim(v, j, n + 1 - t)
                    if d:
                        expected[j] = d
                assert dict(prof.at(t)) == expected

    def test_profile_weighted_dimension_identity(self):
        # sum_j mult(j) * dim e_w G e_j matches the same sum computed from the
        # window dimensions directly, for the dual ambient G
        zq = a3_window()
        dual_gb = zq.dual_gb()
        prof = koszul_profile(zq.quiver, zq.td, "3@0", gb=zq.gb(), levels=zq.levels)
        w = "5@0"
        for t in range(zq.td.n + 2):
            lhs = 0
            for j, mult in prof.at(t):
                lhs += mult * sum(dual_gb.dim(j, w, s) for s in range(dual_gb.max_degree + 1))
            rhs = 0
            for j in zq.quiver.vertices:
                d = zq.gb().dim("3@0", j, zq.td.n + 1 - t)
                if d:
                    rhs += d * sum(dual_gb.dim(j, w, s) for s in range(dual_gb.max_degree + 1))
            assert lhs == rhs

    def test_requires_inverse_translate(self):
        zq = a3_window()
        top = "2@4"
        assert zq.td.tau_inv(top) is None
        with pytest.raises(UndefinedTranslateError):
            koszul_profile(zq.quiver, zq.td, top, gb=zq.gb(), levels=zq.levels)
