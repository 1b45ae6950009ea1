import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bruteforce import fft_support_counts
from incompat import (
    InvalidDimensionError,
    comb_submatrix_is_rank_one,
    dft_chi,
    dft_matrix,
    divisor_decomposition,
    extremal_comb,
    meshulam_bound,
    min_support_uncertainty,
    support_counts,
    zeta,
)

PRIMES = (2, 3, 5, 7, 11, 13)


class TestDivisorDecomposition:
    @pytest.mark.parametrize("d,low,high", [(12, 3, 4), (36, 6, 6), (7, 1, 7)])
    def test_balanced_pairs(self, d, low, high):
        dec = divisor_decomposition(d)
        assert (dec.low, dec.high) == (low, high)

    @pytest.mark.parametrize("d", [1, 2, 6, 16, 30, 36, 97])
    def test_structure(self, d):
        dec = divisor_decomposition(d)
        assert dec.divisors[0] == 1 and dec.divisors[-1] == d
        assert list(dec.divisors) == sorted(set(dec.divisors))
        assert all(d % q == 0 for q in dec.divisors)
        assert dec.low * dec.high == d
        assert dec.low <= math.sqrt(d) <= dec.high

    def test_invalid_dimension(self):
        with pytest.raises(InvalidDimensionError):
            divisor_decomposition(0)


class TestDftChi:
    @pytest.mark.parametrize("p", PRIMES)
    def test_primes(self, p):
        assert dft_chi(p) == p + 1

    def test_six(self):
        assert dft_chi(6) == 5

    def test_thirty_six(self):
        assert dft_chi(36) == 12

    @pytest.mark.parametrize("d", range(2, 7))
    def test_matches_subset_search(self, d):
        assert dft_chi(d) == min_support_uncertainty(dft_matrix(d)).n_ab


class TestZeta:
    @pytest.mark.parametrize("d,x,value", [(12, 3, 7), (12, 4, 7), (12, 3.5, 7), (36, 6, 12)])
    def test_plateau_and_minimum_values(self, d, x, value):
        assert zeta(d, x).value == pytest.approx(value, abs=1e-12)

    def test_small_square_free_case(self):
        assert [zeta(4, q).value for q in (1, 2, 4)] == pytest.approx([5, 4, 5], abs=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            zeta(12, 0.5)
        with pytest.raises(ValueError):
            zeta(12, 13)

    @pytest.mark.parametrize("d", [4, 6, 12, 30, 36])
    def test_divisor_points(self, d):
        for q in divisor_decomposition(d).divisors:
            point = zeta(d, q)
            assert point.lower_divisor == point.upper_divisor == q
            assert point.value == pytest.approx(q + d / q, abs=1e-12)
            assert zeta(d, d // q).value == pytest.approx(point.value, abs=1e-12)

    @pytest.mark.parametrize("d", [4, 6, 12, 30, 36])
    def test_curve_shape(self, d):
        dec = divisor_decomposition(d)
        xs = np.unique(np.concatenate([np.linspace(1, d, 801), np.array(dec.divisors, float)]))
        values = np.array([zeta(d, x).value for x in xs])
        floor = dec.low + dec.high

        # global lower bound, attained exactly on [low, high]
        assert np.all(values >= floor - 1e-12)
        on_flat = (xs >= dec.low) & (xs <= dec.high)
        assert np.allclose(values[on_flat], floor, atol=1e-12)
        assert np.all(values[~on_flat] > floor + 1e-12)

        # convexity: slopes of the piecewise-linear curve never decrease
        slopes = np.diff(values) / np.diff(xs)
        assert np.all(np.diff(slopes) >= -1e-8)

    @pytest.mark.parametrize("d", [4, 6, 12, 30, 36])
    def test_linear_between_consecutive_divisors(self, d):
        divisors = divisor_decomposition(d).divisors
        for q1, q2 in zip(divisors, divisors[1:]):
            mid = (q1 + q2) / 2
            expected = (zeta(d, q1).value + zeta(d, q2).value) / 2
            assert zeta(d, mid).value == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("d", [12, 30, 36])
    def test_slope_sign_trichotomy(self, d):
        dec = divisor_decomposition(d)
        for x in np.linspace(1, d, 1001):
            if x in (1.0, float(dec.low), float(dec.high)):
                continue
            point = zeta(d, x)
            coeff = 1 - d / (point.lower_divisor * point.upper_divisor)
            if x < dec.low:
                assert coeff < 0
            elif x < dec.high:
                assert coeff == 0
            else:
                assert coeff > 0

    @given(st.sampled_from([6, 12, 30, 36]), st.floats(1.0, 36.0))
    @settings(max_examples=60)
    def test_bracketing_invariant(self, d, x):
        if x > d:
            x = 1 + (x - 1) % (d - 1)
        point = zeta(d, x)
        assert point.lower_divisor <= x <= point.upper_divisor
        assert d % point.lower_divisor == 0 and d % point.upper_divisor == 0


class TestMeshulamBound:
    @pytest.mark.parametrize("d,s,expected", [(12, 3, 4), (12, 5, 3), (12, 12, 1), (8, 8, 1)])
    def test_values(self, d, s, expected):
        assert meshulam_bound(d, s) == expected

    def test_domain_error(self):
        with pytest.raises(ValueError):
            meshulam_bound(12, 0)
        with pytest.raises(ValueError):
            meshulam_bound(12, 13)

    @pytest.mark.parametrize("seed", range(6))
    def test_never_exceeds_actual_transform_support(self, seed):
        # Random sparse vectors at d = 12, including combs: the predicted
        # floor must hold for the actual FFT support.
        d = 12
        rng = np.random.default_rng(seed)
        size = int(rng.integers(1, d + 1))
        support = rng.choice(d, size=size, replace=False)
        x = np.zeros(d, dtype=complex)
        x[support] = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        n_a, n_b = fft_support_counts(x)
        assert n_b >= meshulam_bound(d, n_a)

    @pytest.mark.parametrize("teeth", [1, 2, 3, 4, 6, 12])
    def test_combs_meet_the_divisor_case_exactly(self, teeth):
        comb = extremal_comb(12, teeth)
        n_a, n_b = fft_support_counts(comb)
        assert n_a == teeth
        assert n_b == meshulam_bound(12, teeth) == 12 // teeth


class TestExtremalComb:
    def test_six_with_two_teeth(self):
        comb = extremal_comb(6, 2)
        assert np.nonzero(comb)[0].tolist() == [0, 3]
        counts = support_counts(comb, dft_matrix(6))
        assert counts == (2, 3, 5)
        assert counts[2] == dft_chi(6)

    @pytest.mark.parametrize("d", [3, 5, 8])
    def test_full_comb_is_uniform(self, d):
        comb = extremal_comb(d, d)
        assert np.allclose(comb, 1 / math.sqrt(d))
        assert support_counts(comb, dft_matrix(d)) == (d, 1, d + 1)

    @pytest.mark.parametrize("d", [3, 5, 8])
    def test_single_tooth_is_delta(self, d):
        comb = extremal_comb(d, 1)
        assert support_counts(comb, dft_matrix(d)) == (1, d, d + 1)

    def test_non_divisor_rejected(self):
        with pytest.raises(ValueError):
            extremal_comb(6, 4)

    @pytest.mark.parametrize("d", [2, 4, 6, 9, 12])
    def test_every_divisor_pair(self, d):
        tm = dft_matrix(d)
        for teeth in divisor_decomposition(d).divisors:
            comb = extremal_comb(d, teeth)
            n_a, n_b, n_ab = support_counts(comb, tm)
            assert (n_a, n_b) == (teeth, d // teeth)
            assert n_a * n_b == d
            assert fft_support_counts(comb) == (n_a, n_b)


class TestCombSubmatrixRank:
    @pytest.mark.parametrize("args", [(6, 2, 0, 0), (6, 2, 2, 1), (4, 2, 1, 0)])
    def test_spot_cases(self, args):
        assert comb_submatrix_is_rank_one(*args)

    @pytest.mark.parametrize("d", range(1, 11))
    def test_all_offsets_up_to_ten(self, d):
        for teeth in divisor_decomposition(d).divisors:
            step = d // teeth
            for row_offset, col_offset in itertools.product(range(step), range(teeth)):
                assert comb_submatrix_is_rank_one(d, teeth, row_offset, col_offset)

    def test_invalid_offsets(self):
        with pytest.raises(ValueError):
            comb_submatrix_is_rank_one(6, 2, 3, 0)
        with pytest.raises(ValueError):
            comb_submatrix_is_rank_one(6, 2, 0, 2)
        with pytest.raises(ValueError):
            comb_submatrix_is_rank_one(6, 4, 0, 0)
