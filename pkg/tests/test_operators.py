import math

import numpy as np
import pytest

from herzlab.corpus import random_grid_functions
from herzlab.herz import HerzParams
from herzlab.lorentz import INF, LorentzParams
from herzlab.operators import (
    GridFunction1D,
    annulus_interaction_bound,
    annulus_interaction_scan,
    boundedness_sweep,
    grid_annulus_profiles,
    grid_hl_norm,
    grid_indicator,
    grid_lp_norm,
    hilbert_at_points,
    hilbert_transform,
    in_window_weights,
    interpolated_boundedness_check,
    kernel_integral_at_points,
    maximal_at_points,
    maximal_operator,
    out_of_range_witness,
    size_condition_check,
)

RNG = np.random.default_rng(42)


def small_grid(n=64, half=2.0, seed=0):
    rng = np.random.default_rng(seed)
    return GridFunction1D.from_array(half, rng.uniform(-1.0, 1.0, n))


class TestGridFunction:
    def test_geometry(self):
        f = grid_indicator(4.0, 16, -1.0, 1.0)
        assert f.h == 0.5
        assert len(f.nodes()) == 17
        assert f.value_at(0.1) == 1.0
        assert f.value_at(3.9) == 0.0

    def test_refine_preserves_function(self):
        f = small_grid()
        g = f.refine()
        assert g.n_cells == 2 * f.n_cells
        xs = np.linspace(-1.9, 1.9, 23)
        assert all(f.value_at(x) == g.value_at(x) for x in xs)

    def test_cell_count_must_be_even(self):
        with pytest.raises(ValueError):
            GridFunction1D.from_array(1.0, [1.0, 2.0, 3.0])


class TestMaximal:
    def test_indicator_at_three(self):
        f = grid_indicator(4.0, 2**14, -1.0, 1.0)
        got = maximal_at_points(f, [3.0])[0]
        assert got == pytest.approx(0.5, abs=f.h)

    def test_indicator_analytic_profile(self):
        # uncentered maximal of the unit-interval indicator is 2/(1+|x|)
        f = grid_indicator(8.0, 2**12, -1.0, 1.0)
        xs = [1.5, 2.0, 3.0, 5.0, -2.5]
        got = maximal_at_points(f, xs)
        for x, g in zip(xs, got):
            assert g == pytest.approx(2.0 / (1.0 + abs(x)), abs=2 * f.h)

    def test_dominates_function(self):
        f = small_grid(seed=3)
        m = maximal_operator(f)
        assert np.all(m.array() >= np.abs(f.array()) - 1e-15)

    def test_constant_function_fixed(self):
        f = GridFunction1D.from_array(1.0, [0.7] * 32)
        m = maximal_operator(f)
        assert np.allclose(m.array(), 0.7, rtol=1e-12)

    def test_hull_matches_direct_evaluation(self):
        for seed in range(4):
            f = small_grid(n=48, seed=seed)
            m_full = maximal_operator(f).array()
            m_direct = maximal_at_points(f, f.centers())
            assert np.max(np.abs(m_full - m_direct)) < 1e-12

    def test_sublinear(self):
        f = small_grid(seed=5)
        g = small_grid(seed=6)
        fg = GridFunction1D.from_array(f.half_width, f.array() + g.array())
        m_sum = maximal_operator(fg).array()
        bound = maximal_operator(f).array() + maximal_operator(g).array()
        assert np.all(m_sum <= bound + 1e-12)

    def test_refinement_monotone_at_fixed_points(self):
        f = grid_indicator(4.0, 64, -1.0, 1.0)
        xs = [1.7, 2.3, 3.1]
        coarse = maximal_at_points(f, xs)
        fine = maximal_at_points(f.refine(), xs)
        assert np.all(fine >= coarse - 1e-15)


class TestHilbert:
    def test_indicator_log_value(self):
        f = grid_indicator(4.0, 2**14, -1.0, 1.0)
        got = hilbert_at_points(f, [2.0])[0]
        assert got == pytest.approx(math.log(3.0) / math.pi, abs=1e-12)

    def test_indicator_analytic_profile_from_grid(self):
        f = grid_indicator(4.0, 2**12, -1.0, 1.0)
        h_grid = hilbert_transform(f)
        for x in (1.5, 2.5, -3.1):
            expected = math.log(abs((x + 1.0) / (x - 1.0))) / math.pi
            assert h_grid.value_at(x) == pytest.approx(expected, abs=1e-3)

    def test_even_function_gives_odd_output(self):
        f = grid_indicator(2.0, 256, -0.5, 0.5)
        h = hilbert_transform(f).array()
        assert np.max(np.abs(h + h[::-1])) < 1e-12

    def test_linearity(self):
        f = small_grid(seed=7)
        g = small_grid(seed=8)
        fg = GridFunction1D.from_array(f.half_width, f.array() + g.array())
        lhs = hilbert_transform(fg).array()
        rhs = hilbert_transform(f).array() + hilbert_transform(g).array()
        scale = np.max(np.abs(lhs)) + 1.0
        assert np.max(np.abs(lhs - rhs)) < 1e-12 * scale

    def test_kernel_matrix_skew_symmetric(self):
        # dense kernel entries ln|(m+1/2)/(m-1/2)| are odd in m = i - k
        for m in (1, 2, 5, 30):
            left = math.log(abs((m + 0.5) / (m - 0.5)))
            right = math.log(abs((-m + 0.5) / (-m - 0.5)))
            assert left == pytest.approx(-right, rel=1e-15)

    def test_fft_matches_direct_sum(self):
        f = small_grid(n=32, seed=9)
        h_fft = hilbert_transform(f).array()
        h_direct = hilbert_at_points(f, f.centers())
        assert np.max(np.abs(h_fft - h_direct)) < 1e-10


class TestSizeCondition:
    def test_hilbert_ratio_one_over_pi(self):
        f = grid_indicator(4.0, 1024, -1.0, 1.0)
        x = 2.0
        t_val = abs(hilbert_at_points(f, [x])[0])
        k_val = kernel_integral_at_points(f, [x])[0]
        assert t_val / k_val == pytest.approx(1.0 / math.pi, rel=1e-12)
        rep = size_condition_check("hilbert", f, margin=8)
        assert rep.passed
        assert rep.max_ratio <= 1.0 / math.pi + 1e-9

    def test_maximal_point_ratio(self):
        f = grid_indicator(8.0, 2**12, -1.0, 1.0)
        x = 3.0
        t_val = maximal_at_points(f, [x])[0]
        k_val = kernel_integral_at_points(f, [x])[0]
        assert k_val == pytest.approx(math.log(2.0), rel=1e-10)
        assert t_val / k_val == pytest.approx(0.5 / math.log(2.0), rel=1e-3)

    def test_maximal_passes(self):
        f = grid_indicator(8.0, 1024, -1.0, 1.0)
        rep = size_condition_check("maximal", f, margin=8)
        assert rep.passed and math.isfinite(rep.max_ratio)

    def test_zero_function(self):
        f = GridFunction1D.from_array(1.0, [0.0] * 16)
        rep = size_condition_check("hilbert", f, margin=2)
        assert rep.max_ratio == 0.0


class TestAnnulusInteraction:
    def test_diagonal_r1_identity(self):
        params = LorentzParams(2, 2)
        for u in range(0, 20):
            lhs, rhs = annulus_interaction_bound(u, u, 1, params)
            assert lhs == pytest.approx(1.0, rel=1e-12)
            assert rhs == 1.0

    def test_off_diagonal_equality(self):
        lhs, rhs = annulus_interaction_bound(2, 0, 1, LorentzParams(2, 2))
        assert lhs == pytest.approx(0.5, rel=1e-12)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_scan_single_constant(self):
        for dim in (1, 2, 3):
            for p, r in ((1.5, 1.0), (2.0, 2.0), (4.0, INF)):
                rep = annulus_interaction_scan(dim, LorentzParams(p, r), window=(-1, 60))
                assert rep.passed
                assert math.isfinite(rep.constant)
                assert rep.constant > 0


class TestGridNorms:
    def test_annulus_split_preserves_measure(self):
        f = small_grid(n=128, half=4.0, seed=11)
        profiles = grid_annulus_profiles(f)
        total = sum(knots[-1] for _, _, knots in profiles)
        support = np.sum(np.abs(f.array()) > 0) * f.h
        assert total == pytest.approx(support, rel=1e-12)

    def test_lp_identity(self):
        for seed in range(3):
            f = small_grid(n=256, half=4.0, seed=seed)
            for p in (1.5, 2.0, 4.0):
                hl = grid_hl_norm(f, HerzParams(0.0, p, p, p))
                lp = grid_lp_norm(f, p)
                assert hl == pytest.approx(lp, rel=1e-10)

    def test_indicator_value(self):
        f = grid_indicator(4.0, 2048, 0.5, 1.0, two_sided=True)  # = A_0
        got = grid_hl_norm(f, HerzParams(0.7, 2, 1, 1))
        assert got == pytest.approx(2.0, rel=1e-12)  # (p/r)^{1/r} mu^{1/2} = 2


class TestWindow:
    def test_weights_strictly_inside(self):
        for p in (1.5, 2.0, 4.0):
            ws = in_window_weights(p, 1, 5)
            lo, hi = -1.0 / p, 1.0 - 1.0 / p
            assert len(ws) == 5
            assert all(lo < a < hi for a in ws)


@pytest.fixture(scope="module")
def sweep_corpus():
    return [grid_indicator(8.0, 2048, -1.0, 1.0)] + random_grid_functions(
        2, seed=17, half_width=8.0, n_cells=2048
    )


class TestSweep:

    def test_maximal_cells_bounded_and_stable(self, sweep_corpus):
        rep = boundedness_sweep("maximal", sweep_corpus, ps=(2.0,), qs=(1.0, INF), rs=(2.0,))
        assert rep.passed
        assert all(math.isfinite(c.ratio) and c.ratio >= 1.0 - 1e-9 for c in rep.cells)

    def test_hilbert_excludes_weak_inner_norm(self, sweep_corpus):
        rep = boundedness_sweep("hilbert", sweep_corpus, ps=(2.0,), qs=(1.0,), rs=(2.0, INF))
        labels = [lbl for lbl, _ in rep.excluded]
        assert any("r=inf" in lbl for lbl in labels)
        assert all(c.r != INF for c in rep.cells)

    def test_lp_cell_matches_plain_ratio_oracle(self, sweep_corpus):
        # at (a, q, r) = (0, p, p) the ratio must agree with the plain
        # Lebesgue operator ratio
        p = 2.0
        f = sweep_corpus[0]
        num = grid_lp_norm(maximal_operator(f), p)
        den = grid_lp_norm(f, p)
        hl_ratio = grid_hl_norm(maximal_operator(f), HerzParams(0.0, p, p, p)) / grid_hl_norm(
            f, HerzParams(0.0, p, p, p)
        )
        assert hl_ratio == pytest.approx(num / den, rel=1e-10)


class TestWitness:
    def test_outside_window_grows(self):
        rep = out_of_range_witness(family_size=5, cells_per_side=1024)
        assert rep.growing
        assert all(s < t for s, t in zip(rep.ratios, rep.ratios[1:]))

    def test_inside_window_bounded(self):
        ratios = []
        for v in range(1, 6):
            half = 2.0 ** (v + 1)
            f = grid_indicator(half, 2048, 2.0 ** (v - 1), 2.0**v, two_sided=True)
            params = HerzParams(0.2, 2.0, 1.0, 2.0)
            ratios.append(
                grid_hl_norm(maximal_operator(f), params) / grid_hl_norm(f, params)
            )
        assert max(ratios) < 10.0

    def test_rejects_in_window_weight(self):
        with pytest.raises(ValueError):
            out_of_range_witness(a=0.1, p=2.0)

    def test_single_member_family(self):
        rep = out_of_range_witness(family_size=1, cells_per_side=512)
        assert len(rep.ratios) == 1
        assert not rep.growing


class TestInterpolatedBoundedness:

    def test_matches_sweep_on_diagonal(self, sweep_corpus):
        rep = interpolated_boundedness_check("hilbert", 2.0, 1.5, 0.2, sweep_corpus)
        assert rep.passed
        assert rep.agreement <= 1e-6

    def test_herz_diagonal_coincides(self, sweep_corpus):
        # q = p reduces to the classical Herz case r = p
        rep = interpolated_boundedness_check("hilbert", 2.0, 2.0, 0.1, sweep_corpus)
        f = sweep_corpus[0]
        params = HerzParams(0.1, 2.0, 2.0, 2.0)
        direct = grid_hl_norm(hilbert_transform(f), params) / grid_hl_norm(f, params)
        assert rep.ratio >= direct - 1e-12

    def test_scaling_invariance(self, sweep_corpus):
        f = sweep_corpus[0]
        params = HerzParams(0.2, 2.0, 1.5, 1.5)
        r1 = grid_hl_norm(hilbert_transform(f), params) / grid_hl_norm(f, params)
        f2 = GridFunction1D.from_array(f.half_width, 2.0 * f.array())
        r2 = grid_hl_norm(hilbert_transform(f2), params) / grid_hl_norm(f2, params)
        assert r2 == pytest.approx(r1, rel=1e-12)

    def test_sublinear_operator_rejected(self, sweep_corpus):
        with pytest.raises(ValueError):
            interpolated_boundedness_check("maximal", 2.0, 1.5, 0.2, sweep_corpus)
