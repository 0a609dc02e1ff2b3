"""Weight-table closed forms: identities at gamma = 0, positivity bounds,
and agreement with quadrature on the boundary basis functions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlcolloc import coeffs
from nlcolloc.grid import KernelParams, UniformGrid
from nlcolloc.oracle import boundary_basis_integrals


def plc_tables(gamma, N, a=0.0, b=1.0):
    return coeffs.plc_weights(KernelParams(gamma), UniformGrid(a, b, N))


def pqc_tables(gamma, N, a=0.0, b=1.0):
    return coeffs.pqc_weights(KernelParams(gamma), UniformGrid(a, b, N))


class TestGammaZeroIdentities:
    """At gamma = 0 the kernel is constant and every weight collapses to
    the plain Newton-Cotes value."""

    def test_plc_interior_all_two(self):
        c = plc_tables(0.0, 32)
        assert np.allclose(c.g, 2.0, rtol=0, atol=1e-14)

    def test_plc_boundary_all_one(self):
        c = plc_tables(0.0, 32)
        assert np.allclose(c.alpha, 1.0, rtol=0, atol=1e-14)

    def test_plc_diagonal_is_2n(self):
        c = plc_tables(0.0, 32)
        assert np.allclose(c.d, 2.0 * 32, rtol=0, atol=1e-12)

    def test_plc_sigma_is_half_h(self):
        assert plc_tables(0.0, 8).sigma == pytest.approx(0.125 / 2.0)

    def test_pqc_m_all_two(self):
        c = pqc_tables(0.0, 16)
        assert np.allclose(c.m, 2.0, rtol=0, atol=1e-13)

    def test_pqc_q_all_four(self):
        c = pqc_tables(0.0, 16)
        assert np.allclose(c.q, 4.0, rtol=0, atol=1e-13)
        assert np.allclose(c.n, 4.0, rtol=0, atol=1e-13)

    def test_pqc_p_all_two(self):
        c = pqc_tables(0.0, 16)
        assert np.allclose(c.p, 2.0, rtol=0, atol=1e-13)

    def test_pqc_boundary_all_one(self):
        c = pqc_tables(0.0, 16)
        assert np.allclose(c.beta, 1.0, rtol=0, atol=1e-13)
        assert np.allclose(c.gammaB, 1.0, rtol=0, atol=1e-13)


class TestSpecialValues:
    def test_plc_g0(self):
        assert coeffs.plc_interior(np.array([0]), 0.42)[0] == 2.0

    def test_pqc_m0(self):
        gam = 0.37
        assert pqc_tables(gam, 8).m[0] == pytest.approx(2.0 * (1.0 + gam))

    def test_pqc_n0(self):
        gam = 0.6
        assert pqc_tables(gam, 8).n[0] == pytest.approx(
            (2.0 - gam) * 2.0 ** (gam + 1.0))

    def test_pqc_gamma0(self):
        gam = 0.6
        assert pqc_tables(gam, 8).gammaB[0] == pytest.approx(
            (2.0 - gam) * (1.0 - gam) * 2.0 ** (gam - 1.0))

    def test_pqc_p0_continuous_at_gamma_zero(self):
        assert coeffs.pqc_p0(0.0) == pytest.approx(2.0, abs=1e-13)
        assert coeffs.pqc_p0(1e-9) == pytest.approx(2.0, rel=1e-6)


@settings(max_examples=40, deadline=None)
@given(gamma=st.floats(0.0, 0.95), N=st.integers(4, 128))
def test_plc_tables_positive(gamma, N):
    c = plc_tables(gamma, N)
    assert np.all(c.g > 0.0)
    assert np.all(c.alpha > 0.0)
    assert np.all(c.d > 0.0)


@settings(max_examples=40, deadline=None)
@given(gamma=st.floats(0.0, 0.95), N=st.integers(4, 128))
def test_pqc_tables_positive(gamma, N):
    c = pqc_tables(gamma, N)
    for table in (c.m, c.p, c.q, c.n, c.beta, c.gammaB, c.dHalf):
        assert np.all(table > 0.0)


class TestLowerBounds:
    """The explicit per-entry lower bounds from the positivity proof."""

    @pytest.mark.parametrize("gamma", [0.1, 0.5, 0.9])
    def test_m_bound(self, gamma):
        c = pqc_tables(gamma, 64)
        i = np.arange(1, 63, dtype=float)
        base = (3 - gamma) * (2 - gamma) * (1 - gamma)
        assert np.all(c.m[1:] >= 2.0 * base * i ** -gamma * (1 / 6 - 7 / 60))

    @pytest.mark.parametrize("gamma", [0.1, 0.5, 0.9])
    def test_p_and_q_bounds(self, gamma):
        c = pqc_tables(gamma, 64)
        base = (3 - gamma) * (2 - gamma) * (1 - gamma)
        z = np.arange(1, 63, dtype=float) + 0.5
        assert np.all(c.p[1:] >= 0.1 * base * z ** -gamma)
        assert c.p[0] >= base / 6.0 * 1.5 ** -gamma
        i = np.arange(0, 63, dtype=float)
        assert np.all(c.q >= (2.0 / 3.0) * base * (i + 1.0) ** -gamma)


class TestAgainstQuadrature:
    """sigma * alpha_i and eta * (beta_i, gamma_i) are the integrals of the
    boundary interpolation basis functions; compare with the adaptive
    quadrature route."""

    @pytest.mark.parametrize("gamma", [0.2, 0.7])
    def test_plc_alpha(self, gamma):
        N = 16
        grid = UniformGrid(0.0, 1.0, N)
        c = plc_tables(gamma, N)
        for i in (1, 2, N - 1):
            i0, iN = boundary_basis_integrals(grid, KernelParams(gamma),
                                              grid.node(i), "plc")
            assert c.sigma * c.alpha[i - 1] == pytest.approx(i0, rel=1e-10)
            assert c.sigma * c.alpha[N - i - 1] == pytest.approx(iN, rel=1e-10)

    @pytest.mark.parametrize("gamma", [0.2, 0.7])
    def test_pqc_beta_and_gamma(self, gamma):
        N = 16
        grid = UniformGrid(0.0, 1.0, N)
        c = pqc_tables(gamma, N)
        for i in (1, 5):          # integer rows use beta
            i0, iN = boundary_basis_integrals(grid, KernelParams(gamma),
                                              grid.node(i), "pqc")
            assert c.eta * c.beta[i - 1] == pytest.approx(i0, rel=1e-9)
            assert c.eta * c.beta[N - i - 1] == pytest.approx(iN, rel=1e-9)
        for s in (0, 3):          # half rows x_{s+1/2} use gamma
            i0, iN = boundary_basis_integrals(grid, KernelParams(gamma),
                                              grid.node(s + 0.5), "pqc")
            assert c.eta * c.gammaB[s] == pytest.approx(i0, rel=1e-9)
            assert c.eta * c.gammaB[N - 1 - s] == pytest.approx(iN, rel=1e-9)


def test_max_cells_rejected():
    with pytest.raises(ValueError, match="exceeds"):
        coeffs.plc_weights(KernelParams(0.5),
                           UniformGrid(0.0, 1.0, coeffs.MAX_CELLS + 1))


def test_dump_table_format():
    text = coeffs.dump_table(np.array([1.0, 0.5]))
    lines = text.strip().splitlines()
    assert lines[0] == "index,value"
    assert lines[1].startswith("0,1")
    assert lines[2].startswith("1,0.5")
