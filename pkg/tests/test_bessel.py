import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotap import (
    DomainError,
    assemble_blocks,
    build_polar_grid,
    classical_bessel,
    generalized_bessel,
    kernel_limit_error,
    load_blocks_raw,
    save_blocks,
)
from rotap.grids import RotInvariantGrid, SlicePoint


def direct_sum(n_hat, product, delta, N):
    """Independent scalar-by-scalar oracle for the kernel sum."""
    total = 0j
    for r in range(N):
        total += cmath.exp(1j * product * math.cos(delta + 2 * math.pi * r / N)) * cmath.exp(
            -2j * math.pi * n_hat * r / N
        )
    return total


class TestGeneralizedBessel:
    def test_zero_radius_dc(self):
        assert generalized_bessel(0, (1.0, 0.2), (0.0, 0.1), 6) == pytest.approx(6.0)

    def test_zero_radius_character_orthogonality(self):
        assert abs(generalized_bessel(2, (1.0, 0.2), (0.0, 0.1), 6)) < 1e-13

    def test_hand_value_n4(self):
        # Four-term sum at n_hat=1, product 1, delta 0 collapses to 2i*sin(1).
        val = generalized_bessel(1, (1.0, 0.0), (1.0, 0.0), 4)
        assert val == pytest.approx(2j * math.sin(1.0), abs=1e-15)

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            generalized_bessel(4, (1.0, 0.0), (1.0, 0.0), 4)
        with pytest.raises(DomainError):
            generalized_bessel(0, (1.0, 0.0), (1.0, 0.0), 0)

    @given(
        n_hat=st.integers(0, 7),
        xi=st.floats(0.0, 5.0),
        omega=st.floats(0.0, 0.78),
        rho=st.floats(0.0, 5.0),
        alpha=st.floats(0.0, 0.78),
    )
    @settings(max_examples=150)
    def test_matches_direct_sum(self, n_hat, xi, omega, rho, alpha):
        got = generalized_bessel(n_hat, (xi, omega), (rho, alpha), 8)
        want = direct_sum(n_hat, xi * rho, alpha - omega, 8)
        assert got == pytest.approx(want, abs=1e-12)

    @given(
        n_hat=st.integers(0, 5),
        xi=st.floats(0.1, 3.0),
        omega=st.floats(0.0, 1.0),
        rho=st.floats(0.1, 3.0),
        alpha=st.floats(0.0, 1.0),
    )
    @settings(max_examples=100)
    def test_product_difference_symmetry(self, n_hat, xi, omega, rho, alpha):
        a = generalized_bessel(n_hat, (xi, omega), (rho, alpha), 6)
        b = generalized_bessel(n_hat, (xi * rho, 0.0), (1.0, alpha - omega), 6)
        assert a == pytest.approx(b, abs=1e-12)

    @given(n_hat=st.integers(0, 5), r=st.integers(0, 5), product=st.floats(0.1, 4.0))
    @settings(max_examples=100)
    def test_section_covariance(self, n_hat, r, product):
        # Rotating y by one slice step multiplies the kernel by the character.
        N = 6
        base = generalized_bessel(n_hat, (product, 0.0), (1.0, 0.3), N)
        shifted = generalized_bessel(n_hat, (product, 0.0), (1.0, 0.3 + 2 * math.pi * r / N), N)
        assert shifted == pytest.approx(base * cmath.exp(2j * math.pi * n_hat * r / N), abs=1e-11)

    @given(n_hat=st.integers(0, 5), product=st.floats(0.1, 4.0), delta=st.floats(-1.0, 1.0))
    @settings(max_examples=100)
    def test_conjugation_symmetry(self, n_hat, product, delta):
        N = 6
        a = generalized_bessel(n_hat, (-product, 0.0), (1.0, delta), N)
        b = direct_sum((N - n_hat) % N, product, delta, N)
        assert a == pytest.approx(b.conjugate(), abs=1e-12)


class TestAssembleBlocks:
    def test_degenerate_n1(self):
        E = RotInvariantGrid(1, (SlicePoint(1.0, 0.0),), "spatial").validate()
        F = RotInvariantGrid(1, (SlicePoint(1.0, 0.0),), "frequency").validate()
        blocks = assemble_blocks(E, F)
        assert blocks.N == 1
        assert blocks.blocks[0].shape == (1, 1)
        assert blocks.blocks[0][0, 0] == pytest.approx(cmath.exp(1j))

    def test_hand_summed_n4(self):
        E = build_polar_grid(1, [1.0], 4, kind="spatial")
        F = build_polar_grid(1, [1.0], 4, kind="frequency")
        blocks = assemble_blocks(E, F)
        assert len(blocks.blocks) == 4
        assert blocks.blocks[0][0, 0] == pytest.approx(2 + 2 * math.cos(1.0))

    def test_entries_match_scalar_kernel(self):
        # Agreement is to the last couple of ulps: numpy's vectorized exp/cos
        # take SIMD code paths on 2-d arrays that round differently from the
        # 0-d scalar path, so bit-for-bit equality across shapes is not a
        # meaningful contract.
        E = build_polar_grid(2, [0.5, 1.5], 5, kind="spatial")
        F = build_polar_grid(1, [0.8, 1.1, 2.0], 5, kind="frequency")
        blocks = assemble_blocks(E, F)
        for n_hat in range(5):
            for j, y in enumerate(E.points):
                for k, lam in enumerate(F.points):
                    got = blocks.blocks[n_hat][j, k]
                    want = generalized_bessel(n_hat, lam, y, 5)
                    assert abs(got - want) < 1e-14

    def test_mismatched_N(self):
        from rotap import GridMismatch

        E = build_polar_grid(1, [1.0], 4)
        F = build_polar_grid(1, [1.0], 8, kind="frequency")
        with pytest.raises(GridMismatch):
            assemble_blocks(E, F)

    def test_blocks_binary_roundtrip(self, tmp_path):
        E = build_polar_grid(2, [0.5, 1.5], 4, kind="spatial")
        F = build_polar_grid(1, [0.8, 1.1, 2.0], 4, kind="frequency")
        blocks = assemble_blocks(E, F)
        path = tmp_path / "blocks.bin"
        save_blocks(blocks, path)
        N, P, Q, data = load_blocks_raw(path)
        assert (N, P, Q) == (4, 4, 3)
        for n_hat in range(N):
            np.testing.assert_array_equal(data[n_hat], blocks.blocks[n_hat])


class TestClassicalBessel:
    def test_j0_at_zero(self):
        assert classical_bessel(0, 0.0) == pytest.approx(1.0)

    def test_jn_at_zero(self):
        assert classical_bessel(3, 0.0) == pytest.approx(0.0, abs=1e-14)

    def test_first_zero_of_j0(self):
        assert abs(classical_bessel(0, 2.404825557695773)) < 1e-10

    def test_against_scipy(self):
        import scipy.special

        for n in range(-3, 6):
            for x in (0.3, 1.7, 5.0, 20.0):
                assert classical_bessel(n, x) == pytest.approx(
                    float(scipy.special.jv(n, x)), abs=1e-11
                )

    def test_domain_limit(self):
        with pytest.raises(DomainError):
            classical_bessel(0, 2e4)


class TestKernelLimit:
    def test_exact_at_zero_product(self):
        assert kernel_limit_error(0, 0.0, 0.0, 16) == pytest.approx(0.0, abs=1e-15)

    def test_converged_at_moderate_N(self):
        # The rotation sum is a trapezoid rule on a periodic analytic function,
        # so for these products it is converged to round-off well before N=32.
        for n_hat in (0, 1, 2):
            for product in (0.5, 1.0, 3.0):
                assert kernel_limit_error(n_hat, product, 0.0, 64) < 1e-12

    def test_nonzero_delta_phase(self):
        # The pinned phase convention e^{i*n_hat*delta} makes the limit exact
        # for delta != 0 as well.
        assert kernel_limit_error(1, 1.0, 0.4, 64) < 1e-12
        assert kernel_limit_error(2, 2.0, -0.3, 64) < 1e-12

    def test_aliasing_tail_for_larger_product(self):
        # At product 10 the aliasing error J_{N-n_hat}(10) is visible at N=16
        # and collapses after one doubling.
        coarse = kernel_limit_error(1, 10.0, 0.0, 16)
        fine = kernel_limit_error(1, 10.0, 0.0, 32)
        assert coarse > 1e-6
        assert fine < coarse / 1.5
