"""Closed-form product-integration weights for the |x - y|^(-gamma) kernel.

All weight tables are pure functions of (gamma, N).  The three-term power
differences cancel severely for large indices, so the closed forms are
evaluated in extended precision (x87 long double) and rounded to float64
once per table.
"""

from dataclasses import dataclass

import numpy as np

from .grid import KernelParams, UniformGrid

# Largest admissible cell count; beyond this the extended-precision
# evaluation no longer guarantees ~1e-12 absolute weight accuracy.
MAX_CELLS = 8192

_LD = np.longdouble


def _check(params: KernelParams, grid: UniformGrid) -> None:
    if grid.N > MAX_CELLS:
        raise ValueError(f"N={grid.N} exceeds supported maximum {MAX_CELLS}")


def sigma_scaling(h: float, gamma: float) -> float:
    """Scaling factor for the piecewise linear rule."""
    return h ** (1.0 - gamma) / ((2.0 - gamma) * (1.0 - gamma))


def eta_scaling(h: float, gamma: float) -> float:
    """Scaling factor for the piecewise quadratic rule."""
    return h ** (1.0 - gamma) / ((3.0 - gamma) * (2.0 - gamma) * (1.0 - gamma))


# --- piecewise linear weight functions -------------------------------------

def plc_interior(k: np.ndarray, gamma: float) -> np.ndarray:
    """Interior weights g_k; g_0 = 2."""
    k = np.asarray(k, dtype=_LD)
    e = 2 - _LD(gamma)
    km1 = np.where(k >= 1, k - 1, 0)  # avoid (-1)**e under the mask
    g = (k + 1) ** e - 2 * k ** e + km1 ** e
    g = np.where(k == 0, _LD(2), g)
    return g.astype(np.float64)


def plc_boundary(i: np.ndarray, gamma: float) -> np.ndarray:
    """Boundary weights alpha_i, i >= 1."""
    i = np.asarray(i, dtype=_LD)
    g = _LD(gamma)
    a = (i - 1) ** (2 - g) - i ** (2 - g) + (2 - g) * i ** (1 - g)
    return a.astype(np.float64)


@dataclass(frozen=True)
class PlcCoeffs:
    """Weight tables for the piecewise linear rule on a given (gamma, N)."""

    sigma: float
    g: np.ndarray        # g_0 .. g_{N-2}
    alpha: np.ndarray    # alpha_1 .. alpha_{N-1}
    d: np.ndarray        # d_1 .. d_{N-1}


def plc_weights(params: KernelParams, grid: UniformGrid) -> PlcCoeffs:
    _check(params, grid)
    gam, N = params.gamma, grid.N
    g = plc_interior(np.arange(N - 1), gam)
    alpha = plc_boundary(np.arange(1, N), gam)
    i = np.arange(1, N, dtype=_LD)
    d = ((2 - _LD(gam)) * (i ** (1 - _LD(gam)) + (N - i) ** (1 - _LD(gam))))
    return PlcCoeffs(sigma=sigma_scaling(grid.h, gam), g=g, alpha=alpha,
                     d=d.astype(np.float64))


# --- piecewise quadratic weight functions ----------------------------------
#
# The four families below accept a real argument z so that the half-index
# identities p_k = m(k + 1/2), n_k = q(k - 1/2), gammaB_i = beta(i + 1/2)
# reuse the same closed forms.

def pqc_m(z: np.ndarray, gamma: float) -> np.ndarray:
    """m(z) for z >= 1; m_0 = 2(1 + gamma) handled by the caller."""
    z = np.asarray(z, dtype=_LD)
    g = _LD(gamma)
    v = 4 * ((z + 1) ** (3 - g) - (z - 1) ** (3 - g)) \
        - (3 - g) * ((z + 1) ** (2 - g) + 6 * z ** (2 - g) + (z - 1) ** (2 - g))
    return v.astype(np.float64)


def pqc_q(z: np.ndarray, gamma: float) -> np.ndarray:
    """q(z) for z >= 0."""
    z = np.asarray(z, dtype=_LD)
    g = _LD(gamma)
    v = -8 * ((z + 1) ** (3 - g) - z ** (3 - g)) \
        + 4 * (3 - g) * ((z + 1) ** (2 - g) + z ** (2 - g))
    return v.astype(np.float64)


def pqc_beta(z: np.ndarray, gamma: float) -> np.ndarray:
    """beta(z) for z >= 1."""
    z = np.asarray(z, dtype=_LD)
    g = _LD(gamma)
    v = 4 * (z ** (3 - g) - (z - 1) ** (3 - g)) \
        - (3 - g) * (3 * z ** (2 - g) + (z - 1) ** (2 - g)) \
        + (3 - g) * (2 - g) * z ** (1 - g)
    return v.astype(np.float64)


def pqc_p0(gamma: float) -> float:
    """Weight of u(x_1) at the collocation point x_{1/2}.

    m(1/2) is undefined over the reals, and the singularity sits inside the
    support of the basis function, so this case needs its own closed form:
    the integral of 2(y-x_0)(y-x_{1/2})/h^2 over [x_0, x_1] split at x_{1/2}
    plus the integral of 2(y-x_2)(y-x_{3/2})/h^2 over [x_1, x_2].
    """
    g = _LD(gamma)
    half, th = _LD(0.5), _LD(1.5)
    v = (2 - g) * (1 - g) * 2 * (th ** (3 - g) + half ** (3 - g)) \
        - 5 * (3 - g) * (1 - g) * (th ** (2 - g) - half ** (2 - g)) \
        + 3 * (3 - g) * (2 - g) * (th ** (1 - g) - half ** (1 - g))
    return float(v)


@dataclass(frozen=True)
class PqcCoeffs:
    """Weight tables for the piecewise quadratic rule on a given (gamma, N).

    d_half[i - 1] holds d_{i/2} for doubled index i = 1 .. 2N-1.
    """

    eta: float
    m: np.ndarray        # m_0 .. m_{N-2}
    p: np.ndarray        # p_0 .. p_{N-2}
    q: np.ndarray        # q_0 .. q_{N-2}
    n: np.ndarray        # n_0 .. n_{N-1}
    beta: np.ndarray     # beta_1 .. beta_{N-1}
    gammaB: np.ndarray   # gamma_0 .. gamma_{N-1}
    dHalf: np.ndarray    # d_{1/2}, d_1, ..., d_{N-1/2}


def pqc_weights(params: KernelParams, grid: UniformGrid) -> PqcCoeffs:
    _check(params, grid)
    gam, N = params.gamma, grid.N
    g = _LD(gam)

    m = np.empty(N - 1)
    m[0] = 2.0 * (1.0 + gam)
    if N > 2:
        m[1:] = pqc_m(np.arange(1, N - 1), gam)

    p = np.empty(N - 1)
    p[0] = pqc_p0(gam)
    if N > 2:
        p[1:] = pqc_m(np.arange(1, N - 1) + 0.5, gam)

    q = pqc_q(np.arange(N - 1), gam)

    n = np.empty(N)
    n[0] = float((2 - g) * _LD(2) ** (g + 1))
    n[1:] = pqc_q(np.arange(1, N) - 0.5, gam)

    beta = pqc_beta(np.arange(1, N), gam)

    gammaB = np.empty(N)
    gammaB[0] = float((2 - g) * (1 - g) * _LD(2) ** (g - 1))
    gammaB[1:] = pqc_beta(np.arange(1, N) + 0.5, gam)

    half = np.arange(1, 2 * N, dtype=_LD) / 2
    dHalf = (3 - g) * (2 - g) * (half ** (1 - g) + (N - half) ** (1 - g))

    return PqcCoeffs(eta=eta_scaling(grid.h, gam), m=m, p=p, q=q, n=n,
                     beta=beta, gammaB=gammaB, dHalf=dHalf.astype(np.float64))


def dump_table(values: np.ndarray) -> str:
    """Render one weight table as CSV with full 17-digit values."""
    lines = ["index,value"]
    lines += [f"{i},{v:.17g}" for i, v in enumerate(np.asarray(values))]
    return "\n".join(lines) + "\n"
