"""Piecewise linear product integration and the resulting collocation system."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from . import coeffs, moments
from .grid import KernelParams, UniformGrid
from .oracle import ManufacturedProblem, TestFunction, singular_integral
from .solver import CollocationSystem


@dataclass(frozen=True)
class PlcIntegralRule:
    coeffs: coeffs.PlcCoeffs
    grid: UniformGrid
    params: KernelParams


def make_rule(params: KernelParams, grid: UniformGrid) -> PlcIntegralRule:
    return PlcIntegralRule(coeffs.plc_weights(params, grid), grid, params)


def plc_integral(rule: PlcIntegralRule, samples: np.ndarray, i: int) -> float:
    """Weight-table evaluation of the rule at the interior node x_i."""
    N = rule.grid.N
    if len(samples) != N + 1:
        raise ValueError(f"expected {N + 1} samples, got {len(samples)}")
    if not 1 <= i <= N - 1:
        raise IndexError(f"node index {i} outside 1..{N - 1}")
    c = rule.coeffs
    j = np.arange(1, N)
    interior = c.g[np.abs(i - j)] @ samples[1:N]
    return c.sigma * (interior + c.alpha[i - 1] * samples[0]
                      + c.alpha[N - i - 1] * samples[N])


def interpolant_integral(rule: PlcIntegralRule, samples: np.ndarray,
                         x: float) -> float:
    """int u_L(y) |x - y|^(-gamma) dy for the piecewise linear interpolant,
    at an arbitrary x in (a, b), via exact per-cell moments.

    At integer nodes this agrees with plc_integral but sums per cell, which
    keeps the rounding floor near machine precision.
    """
    g = rule.grid
    if not g.a < x < g.b:
        raise ValueError(f"x={x} outside ({g.a}, {g.b})")
    xs = g.integer_nodes()
    total = 0.0
    for j in range(g.N):
        total += moments.cell_integral(x, xs[j:j + 2], samples[j:j + 2],
                                       rule.params.gamma)
    return total


def truncation_error(rule: PlcIntegralRule, u: TestFunction, x: float,
                     tol: float = 1e-14) -> float:
    """|I(a,b,x) - I_1(a,b,x)| against the quadrature oracle."""
    samples = u(rule.grid.integer_nodes())
    approx = interpolant_integral(rule, samples, x)
    exact = singular_integral(u, (rule.grid.a, rule.grid.b), rule.params, x, tol)
    return abs(exact - approx)


def plc_matrix(params: KernelParams, grid: UniformGrid) -> np.ndarray:
    """sigma * (D - G): symmetric Toeplitz minus-structure with positive diagonal."""
    c = coeffs.plc_weights(params, grid)
    A = np.diag(c.d) - toeplitz(c.g)
    return c.sigma * A


def assemble_plc_system(params: KernelParams, grid: UniformGrid,
                        problem: ManufacturedProblem) -> CollocationSystem:
    N = grid.N
    if len(problem.fValues) != N - 1:
        raise ValueError(
            f"expected {N - 1} right-hand-side values, got {len(problem.fValues)}")
    c = coeffs.plc_weights(params, grid)
    A = c.sigma * (np.diag(c.d) - toeplitz(c.g))
    u0, uN = problem.boundary
    rhs = problem.fValues + c.sigma * (c.alpha * u0 + c.alpha[::-1] * uN)
    return CollocationSystem(matrix=A, rhs=rhs, ordering="plc-interior",
                             scaling=c.sigma, scheme="plc", params=params,
                             grid=grid, nodes=grid.interior_nodes())
