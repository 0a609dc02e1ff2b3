"""Piecewise quadratic product integration and its collocation system.

Half-integer node subscripts are carried as doubled integer indices
(node x_{i/2} <-> index i), so index arithmetic such as |i - j - 1/2| - 1/2
stays exact: over doubled indices it becomes (|2(i - j) - 1| - 1) / 2.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from . import coeffs, moments
from .grid import KernelParams, UniformGrid
from .oracle import ManufacturedProblem, TestFunction, singular_integral
from .solver import CollocationSystem


@dataclass(frozen=True)
class PqcIntegralRule:
    coeffs: coeffs.PqcCoeffs
    grid: UniformGrid
    params: KernelParams


def make_rule(params: KernelParams, grid: UniformGrid) -> PqcIntegralRule:
    return PqcIntegralRule(coeffs.pqc_weights(params, grid), grid, params)


def pqc_integral(rule: PqcIntegralRule, int_samples: np.ndarray,
                 half_samples: np.ndarray, i: int) -> float:
    """Weight-table evaluation at collocation node x_{i/2}, doubled index
    i in 1..2N-1."""
    N = rule.grid.N
    if len(int_samples) != N + 1 or len(half_samples) != N:
        raise ValueError("sample arrays must have lengths N+1 and N")
    if not 1 <= i <= 2 * N - 1:
        raise IndexError(f"doubled node index {i} outside 1..{2 * N - 1}")
    c = rule.coeffs
    j = np.arange(1, N)       # integer node indices
    jh = np.arange(N)         # half node x_{jh + 1/2}
    if i % 2 == 0:
        r = i // 2
        acc = c.m[np.abs(r - j)] @ int_samples[1:N]
        acc += c.q[(np.abs(2 * (r - jh) - 1) - 1) // 2] @ half_samples
        acc += c.beta[r - 1] * int_samples[0] + c.beta[N - r - 1] * int_samples[N]
    else:
        s = (i - 1) // 2      # row collocation point x_{s + 1/2}
        acc = c.p[(np.abs(2 * (s - j) + 1) - 1) // 2] @ int_samples[1:N]
        acc += c.n[np.abs(s - jh)] @ half_samples
        acc += c.gammaB[s] * int_samples[0] + c.gammaB[N - 1 - s] * int_samples[N]
    return c.eta * acc


def interpolant_integral(rule: PqcIntegralRule, int_samples: np.ndarray,
                         half_samples: np.ndarray, x: float) -> float:
    """int u_Q(y) |x - y|^(-gamma) dy at arbitrary x in (a, b).

    Exact per-cell moment integration of the piecewise quadratic
    interpolant; the cell containing x is split at x inside the moment
    primitives, so non-junction points are handled too.
    """
    g = rule.grid
    if not g.a < x < g.b:
        raise ValueError(f"x={x} outside ({g.a}, {g.b})")
    xs = g.integer_nodes()
    xh = g.half_nodes()
    total = 0.0
    for j in range(g.N):
        nodes = np.array([xs[j], xh[j], xs[j + 1]])
        vals = np.array([int_samples[j], half_samples[j], int_samples[j + 1]])
        total += moments.cell_integral(x, nodes, vals, rule.params.gamma)
    return total


def pqc_truncation_at(rule: PqcIntegralRule, u: TestFunction, x: float,
                      tol: float = 1e-14) -> float:
    """|I(a,b,x) - I_2(a,b,x)| against the quadrature oracle.

    x may be a collocation node (junction) or any interior point.
    """
    int_samples = u(rule.grid.integer_nodes())
    half_samples = u(rule.grid.half_nodes())
    approx = interpolant_integral(rule, int_samples, half_samples, x)
    exact = singular_integral(u, (rule.grid.a, rule.grid.b), rule.params, x, tol)
    return abs(exact - approx)


# --- system assembly --------------------------------------------------------

def _blocks(c: coeffs.PqcCoeffs, N: int):
    M = toeplitz(c.m)
    Nb = toeplitz(c.n)
    i = np.arange(N)[:, None]      # half-node rows of P
    j = np.arange(1, N)[None, :]
    P = c.p[(np.abs(2 * (i - j) + 1) - 1) // 2]
    r = np.arange(1, N)[:, None]   # integer rows of Q
    jh = np.arange(N)[None, :]
    Q = c.q[(np.abs(2 * (r - jh) - 1) - 1) // 2]
    return M, Nb, P, Q


def pqc_matrix(params: KernelParams, grid: UniformGrid) -> np.ndarray:
    """eta * ([D1 0; 0 D2] - [M Q; P N]) in the integers-then-halves ordering."""
    c = coeffs.pqc_weights(params, grid)
    N = grid.N
    M, Nb, P, Q = _blocks(c, N)
    A = np.zeros((2 * N - 1, 2 * N - 1))
    d_int = c.dHalf[1::2]          # d_1 .. d_{N-1}
    d_half = c.dHalf[0::2]         # d_{1/2} .. d_{N-1/2}
    A[:N - 1, :N - 1] = np.diag(d_int) - M
    A[:N - 1, N - 1:] = -Q
    A[N - 1:, :N - 1] = -P
    A[N - 1:, N - 1:] = np.diag(d_half) - Nb
    return c.eta * A


def _paper_nodes(grid: UniformGrid) -> np.ndarray:
    return np.concatenate([grid.interior_nodes(), grid.half_nodes()])


def assemble_pqc_system(params: KernelParams, grid: UniformGrid,
                        problem: ManufacturedProblem) -> CollocationSystem:
    """Assemble in the paper ordering: u_1..u_{N-1}, then u_{1/2}..u_{N-1/2}.

    problem.fValues are expected at the 2N-1 collocation nodes in
    increasing order and are rearranged here.
    """
    N = grid.N
    if len(problem.fValues) != 2 * N - 1:
        raise ValueError(
            f"expected {2 * N - 1} right-hand-side values, got {len(problem.fValues)}")
    c = coeffs.pqc_weights(params, grid)
    A = pqc_matrix(params, grid)
    # fValues come ordered by increasing node; integers sit at odd doubled indices
    f_int = problem.fValues[1::2]
    f_half = problem.fValues[0::2]
    u0, uN = problem.boundary
    rhs = np.concatenate([
        f_int + c.eta * (c.beta * u0 + c.beta[::-1] * uN),
        f_half + c.eta * (c.gammaB * u0 + c.gammaB[::-1] * uN),
    ])
    return CollocationSystem(matrix=A, rhs=rhs, ordering="pqc-paper",
                             scaling=c.eta, scheme="pqc", params=params,
                             grid=grid, nodes=_paper_nodes(grid))


# --- node orderings ---------------------------------------------------------

@dataclass(frozen=True)
class PqcNodeOrdering:
    """Mapping between the paper ordering (integers then halves) and the
    interleaved ordering (increasing doubled index)."""

    tag: str
    permutation: np.ndarray  # new_row k holds old_row permutation[k]


def ordering_permutation(N: int, target: str) -> PqcNodeOrdering:
    if target not in ("pqc-paper", "pqc-interleaved"):
        raise ValueError(f"unknown ordering {target!r}")
    # position of doubled index t within the paper vector
    paper_pos = np.empty(2 * N - 1, dtype=int)
    for t in range(1, 2 * N):
        paper_pos[t - 1] = t // 2 - 1 if t % 2 == 0 else (N - 1) + (t - 1) // 2
    if target == "pqc-interleaved":
        return PqcNodeOrdering(target, paper_pos)
    return PqcNodeOrdering(target, np.argsort(paper_pos))


def reorder_system(system: CollocationSystem,
                   target: PqcNodeOrdering) -> CollocationSystem:
    """Symmetric permutation of rows/columns (and rhs) between orderings."""
    if system.ordering == target.tag:
        return system
    perm = target.permutation
    return CollocationSystem(
        matrix=system.matrix[np.ix_(perm, perm)],
        rhs=system.rhs[perm],
        ordering=target.tag,
        scaling=system.scaling,
        scheme=system.scheme,
        params=system.params,
        grid=system.grid,
        nodes=system.nodes[perm],
    )
