"""Piecewise linear rule: exactness, truncation orders, matrix structure."""

import math

import numpy as np
import pytest

from nlcolloc import plc, solver
from nlcolloc.grid import KernelParams, UniformGrid
from nlcolloc.oracle import (closed_form_integral, constant, exact_nonlocal_rhs,
                             exponential, monomial)


def rule_for(gamma, N, a=0.0, b=1.0):
    return plc.make_rule(KernelParams(gamma), UniformGrid(a, b, N))


class TestExactness:
    """The rule integrates its own interpolation space {1, y} exactly."""

    @pytest.mark.parametrize("gamma", [0.0, 0.3, 0.5, 0.7, 0.9])
    @pytest.mark.parametrize("u", [constant(2.5), monomial(1)])
    def test_weight_route(self, gamma, u):
        r = rule_for(gamma, 16)
        samples = u(r.grid.integer_nodes())
        for i in (1, 7, 15):
            want = closed_form_integral(u, (0.0, 1.0), r.params, r.grid.node(i))
            got = plc.plc_integral(r, samples, i)
            assert got == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("gamma", [0.1, 0.6])
    @pytest.mark.parametrize("u", [constant(2.5), monomial(1)])
    def test_moment_route_at_arbitrary_x(self, gamma, u):
        r = rule_for(gamma, 16)
        samples = u(r.grid.integer_nodes())
        for x in (1.0 / 3.0, 0.05, 0.991):
            want = closed_form_integral(u, (0.0, 1.0), r.params, x)
            got = plc.interpolant_integral(r, samples, x)
            assert got == pytest.approx(want, rel=1e-12)


def test_weight_and_moment_routes_agree_at_junctions():
    r = rule_for(0.55, 32)
    samples = np.exp(r.grid.integer_nodes())
    for i in range(1, 32):
        w = plc.plc_integral(r, samples, i)
        m = plc.interpolant_integral(r, samples, r.grid.node(i))
        assert w == pytest.approx(m, rel=1e-13)


class TestValidation:
    def test_sample_count(self):
        r = rule_for(0.5, 8)
        with pytest.raises(ValueError, match="samples"):
            plc.plc_integral(r, np.ones(8), 1)

    def test_node_range(self):
        r = rule_for(0.5, 8)
        with pytest.raises(IndexError):
            plc.plc_integral(r, np.ones(9), 8)

    def test_eval_point_inside(self):
        r = rule_for(0.5, 8)
        with pytest.raises(ValueError, match="outside"):
            plc.interpolant_integral(r, np.ones(9), 1.5)


class TestTruncation:
    def test_second_order_at_center(self):
        errs = [plc.truncation_error(rule_for(0.5, N), exponential(), 0.5)
                for N in (32, 64, 128)]
        orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
        assert all(abs(o - 2.0) < 0.1 for o in orders)

    def test_linear_u_hits_floor(self):
        err = plc.truncation_error(rule_for(0.4, 32), monomial(1), 0.5)
        assert err < 1e-13


class TestSystem:
    def test_constant_reproduced(self):
        params, grid = KernelParams(0.6), UniformGrid(0.0, 1.0, 16)
        prob = exact_nonlocal_rhs(constant(3.0), grid, params, nodes="plc")
        sol = solver.solve_dense(plc.assemble_plc_system(params, grid, prob))
        assert np.max(np.abs(sol - 3.0)) < 1e-10

    def test_m_matrix_structure(self):
        params, grid = KernelParams(0.5), UniformGrid(0.0, 1.0, 16)
        prob = exact_nonlocal_rhs(constant(), grid, params, nodes="plc")
        system = plc.assemble_plc_system(params, grid, prob)
        report = solver.check_structure(system)
        assert report.diagPositive
        assert report.offDiagNegative
        assert report.minRowSlack > 0.0
        assert report.symmetric
        assert report.spdFactorizationOk

    def test_row_sums_equal_boundary_weights(self):
        params, grid = KernelParams(0.35), UniformGrid(0.0, 1.0, 12)
        prob = exact_nonlocal_rhs(constant(), grid, params, nodes="plc")
        system = plc.assemble_plc_system(params, grid, prob)
        c = plc.make_rule(params, grid).coeffs
        want = c.sigma * (c.alpha + c.alpha[::-1])
        assert np.allclose(solver.check_structure(system).rowSums, want,
                           rtol=1e-10, atol=0)

    def test_eigenvalue_above_gershgorin_bound(self):
        params, grid = KernelParams(0.7), UniformGrid(0.0, 1.0, 32)
        A = plc.plc_matrix(params, grid)
        lam = solver.min_eigenvalue(A)
        c = plc.make_rule(params, grid).coeffs
        slack = solver.check_structure(
            plc.assemble_plc_system(
                params, grid,
                exact_nonlocal_rhs(constant(), grid, params, nodes="plc"))
        ).minRowSlack
        assert lam >= slack > 0.0
        # the unscaled analytic bound of the convergence analysis
        assert lam / c.sigma >= solver.gershgorin_reference_bound(params, grid)

    def test_rhs_length_validated(self):
        params, grid = KernelParams(0.5), UniformGrid(0.0, 1.0, 8)
        prob = exact_nonlocal_rhs(constant(), grid, params, nodes="pqc")
        with pytest.raises(ValueError, match="right-hand-side"):
            plc.assemble_plc_system(params, grid, prob)
