"""Exact integration of polynomials against the |x - y|^(-gamma) kernel.

Every cell contribution is a polynomial (in powers of y - x) times the
kernel, which integrates in closed form through the power primitives
below.  This is the workhorse for evaluating an interpolant's singular
integral at arbitrary points, including points inside a cell.
"""

import numpy as np


def segment_moments(x: float, lo: float, hi: float, gamma: float,
                    kmax: int) -> np.ndarray:
    """Moments M_k = int_lo^hi (y - x)^k |x - y|^(-gamma) dy, k = 0..kmax.

    The segment may lie on either side of x or straddle it.
    """
    if hi <= lo:
        return np.zeros(kmax + 1)
    if lo < x < hi:
        return (segment_moments(x, lo, x, gamma, kmax)
                + segment_moments(x, x, hi, gamma, kmax))
    k = np.arange(kmax + 1)
    e = k + 1.0 - gamma
    if lo >= x:
        return ((hi - x) ** e - (lo - x) ** e) / e
    # hi <= x: (y - x)^k = (-1)^k (x - y)^k
    return (-1.0) ** k * ((x - lo) ** e - (x - hi) ** e) / e


def poly_coeffs_about(x: float, ts: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """Coefficients of the interpolating polynomial through (ts[i], vs[i]),
    expressed in powers of (y - x).  Supports 2 points (linear) or 3
    (quadratic), via exact divided differences.
    """
    t = np.asarray(ts, dtype=float) - x
    v = np.asarray(vs, dtype=float)
    if len(t) == 2:
        c1 = (v[1] - v[0]) / (t[1] - t[0])
        return np.array([v[0] - c1 * t[0], c1])
    if len(t) == 3:
        d01 = (v[1] - v[0]) / (t[1] - t[0])
        d12 = (v[2] - v[1]) / (t[2] - t[1])
        c2 = (d12 - d01) / (t[2] - t[0])
        c1 = d01 - c2 * (t[0] + t[1])
        c0 = v[0] - c1 * t[0] - c2 * t[0] ** 2
        return np.array([c0, c1, c2])
    raise ValueError("expected 2 or 3 interpolation points")


def cell_integral(x: float, cell_nodes: np.ndarray, cell_values: np.ndarray,
                  gamma: float, lo: float = None, hi: float = None) -> float:
    """int (y - x)-polynomial * |x - y|^(-gamma) over [lo, hi].

    The polynomial interpolates cell_values at cell_nodes; the integration
    range defaults to the cell [cell_nodes[0], cell_nodes[-1]].
    """
    if lo is None:
        lo = cell_nodes[0]
    if hi is None:
        hi = cell_nodes[-1]
    c = poly_coeffs_about(x, cell_nodes, cell_values)
    mom = segment_moments(x, lo, hi, gamma, len(c) - 1)
    return float(c @ mom)
