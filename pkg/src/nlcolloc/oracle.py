"""High-accuracy reference evaluation of weakly singular integrals.

Everything here is independent of the collocation weight tables: the
primary route is Gauss-Jacobi quadrature with the s^(-gamma) weight on
each side of the singularity, doubled until converged.  The exponential
test function carries a convergent-series second opinion, and constant /
monomial functions have closed forms.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import roots_jacobi

from .grid import KernelParams, UniformGrid

MAX_NODES_PER_SIDE = 4096


class OracleError(RuntimeError):
    """Reference integration failed to converge or cross-validate."""


@dataclass(frozen=True)
class TestFunction:
    """Exact solution used to manufacture right-hand sides.

    kind is one of 'const' (value c), 'monomial' (y**p, integer p <= 4)
    or 'exp' (e**y).
    """

    __test__ = False          # keep pytest from collecting this dataclass

    kind: str
    c: float = 1.0
    p: int = 1

    def __post_init__(self):
        if self.kind not in ("const", "monomial", "exp"):
            raise ValueError(f"unknown test function kind {self.kind!r}")
        if self.kind == "monomial" and not 0 <= self.p <= 4:
            raise ValueError("monomial power must lie in 0..4")

    def __call__(self, y):
        # dtype-preserving, so extended-precision quadrature stays extended
        y = np.asarray(y)
        if self.kind == "const":
            return np.full_like(y, self.c, dtype=y.dtype if y.dtype.kind == "f" else float)
        if self.kind == "monomial":
            return y ** self.p
        return np.exp(y)


def constant(c: float = 1.0) -> TestFunction:
    return TestFunction("const", c=c)


def monomial(p: int) -> TestFunction:
    return TestFunction("monomial", p=p)


def exponential() -> TestFunction:
    return TestFunction("exp")


def kernel_row_integral(a: float, b: float, gamma: float, x: float) -> float:
    """int_a^b |x - y|^(-gamma) dy = [(x-a)^(1-g) + (b-x)^(1-g)] / (1-g)."""
    e = 1.0 - gamma
    return ((x - a) ** e + (b - x) ** e) / e


# --- Gauss-Jacobi route -----------------------------------------------------

def _jacobi_poly_and_deriv(n: int, alpha: float, beta: float, x: np.ndarray):
    """P_n^(alpha,beta)(x) and its derivative via the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = 0.5 * (alpha + beta + 2.0) * x + 0.5 * (alpha - beta)
    if n == 0:
        p = p_prev
    for k in range(2, n + 1):
        s = 2.0 * k + alpha + beta
        a1 = 2.0 * k * (k + alpha + beta) * (s - 2.0)
        a2 = (s - 1.0) * (alpha ** 2 - beta ** 2)
        a3 = (s - 2.0) * (s - 1.0) * s
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s
        p, p_prev = ((a2 + a3 * x) * p - a4 * p_prev) / a1, p
    # derivative from the (alpha+1, beta+1) family
    if n == 0:
        return p, np.zeros_like(x)
    d_prev = np.ones_like(x)
    d = 0.5 * (alpha + beta + 4.0) * x + 0.5 * (alpha - beta)
    if n - 1 == 0:
        d = d_prev
    for k in range(2, n):
        s = 2.0 * k + alpha + beta + 2.0
        a1 = 2.0 * k * (k + alpha + beta + 2.0) * (s - 2.0)
        a2 = (s - 1.0) * ((alpha + 1.0) ** 2 - (beta + 1.0) ** 2)
        a3 = (s - 2.0) * (s - 1.0) * s
        a4 = 2.0 * (k + alpha) * (k + beta) * s
        d, d_prev = ((a2 + a3 * x) * d - a4 * d_prev) / a1, d
    return p, 0.5 * (n + alpha + beta + 1.0) * d


def _gauss_jacobi(n: int, alpha: float, beta: float):
    """Nodes and weights on [-1, 1] for weight (1-x)^alpha (1+x)^beta.

    Library nodes serve as starting points and are Newton-polished on the
    recurrence in extended precision (the library values alone drift to
    ~1e-12 for beta near -1 at larger n); weights come from the closed-form
    derivative formula.
    """
    from scipy.special import gammaln

    x0, _ = roots_jacobi(n, alpha, beta)
    x = x0.astype(np.longdouble)
    for _ in range(50):
        p, dp = _jacobi_poly_and_deriv(n, alpha, beta, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    _, dp = _jacobi_poly_and_deriv(n, alpha, beta, x)
    if alpha == 0.0:
        # the Gamma factors collapse: C = 2^(beta+1) exactly
        c = np.longdouble(2.0) ** np.longdouble(beta + 1.0)
    else:
        logc = ((alpha + beta + 1.0) * math.log(2.0)
                + gammaln(n + alpha + 1.0) + gammaln(n + beta + 1.0)
                - gammaln(n + 1.0) - gammaln(n + alpha + beta + 1.0))
        c = np.longdouble(math.exp(logc))
    w = c / ((1.0 - x ** 2) * dp ** 2)
    return x, w


_GJ_CACHE: dict = {}


def _gj_rule(n: int, gamma: float):
    # weight s^(-gamma) on [0, 1]: map the (0, -gamma) Jacobi rule from [-1, 1]
    key = (n, gamma)
    if key not in _GJ_CACHE:
        t, w = _gauss_jacobi(n, 0.0, -gamma)
        s = (1.0 + t) / 2.0
        _GJ_CACHE[key] = (s, w * np.longdouble(2.0) ** (gamma - 1.0))
    return _GJ_CACHE[key]


def _one_sided(u, x: float, L: float, gamma: float, sign: float, n: int) -> float:
    # int_0^L u(x + sign*t) t^(-gamma) dt == L^(1-gamma) int_0^1 u(x + sign*L*s) s^(-gamma) ds
    if L <= 0.0:
        return 0.0
    s, w = _gj_rule(n, gamma)
    acc = w @ np.asarray(u(x + sign * L * s), dtype=np.longdouble)
    return float(np.longdouble(L) ** (1.0 - np.longdouble(gamma)) * acc)


def singular_integral(u: TestFunction, interval, params: KernelParams,
                      x: float, tol: float = 1e-12) -> float:
    """I(a, b, x) = int_a^b u(y) |x - y|^(-gamma) dy to absolute error <= tol.

    Node counts double per side until successive estimates differ by less
    than tol/4; the exponential kind is additionally cross-checked against
    its series expansion.
    """
    a, b = interval
    if not a < x < b:
        raise ValueError(f"x={x} must lie strictly inside ({a}, {b})")
    if tol < 1e-14:
        raise ValueError("tol below 1e-14 is not attainable in double precision")
    gamma = params.gamma

    n = 4
    prev = _one_sided(u, x, x - a, gamma, -1.0, n) \
        + _one_sided(u, x, b - x, gamma, +1.0, n)
    while True:
        n *= 2
        if n > MAX_NODES_PER_SIDE:
            raise OracleError(
                f"Gauss-Jacobi doubling did not converge below {tol} "
                f"within {MAX_NODES_PER_SIDE} nodes per side")
        cur = _one_sided(u, x, x - a, gamma, -1.0, n) \
            + _one_sided(u, x, b - x, gamma, +1.0, n)
        # the roundoff term keeps tiny tolerances attainable on O(1) integrals
        if abs(cur - prev) < tol / 4.0 + 2e-14 * abs(cur):
            break
        prev = cur

    if u.kind == "exp":
        # the series carries less roundoff than the quadrature weights, so
        # after the two routes validate each other, prefer its value
        ref = _exp_integral_series(a, b, gamma, x, tol)
        if abs(cur - ref) > 100.0 * tol:
            raise OracleError(
                f"Gauss-Jacobi ({cur!r}) and series ({ref!r}) disagree")
        return ref
    return cur


# --- independent second routes ---------------------------------------------

def _exp_power_series(c: float, sign: float, gamma: float, tol: float) -> float:
    """int_0^c e^(sign*t) t^(-gamma) dt by its convergent series."""
    if c <= 0.0:
        return 0.0
    total = 0.0
    term_base = 1.0  # sign^k c^k / k!
    for k in range(0, 500):
        term = term_base * c ** (1.0 - gamma) / (k + 1.0 - gamma)
        total += term
        if abs(term) < tol / 10.0 and k > 2:
            return total
        term_base *= sign * c / (k + 1.0)
    raise OracleError("series for the exponential integral did not converge")


def _exp_integral_series(a: float, b: float, gamma: float, x: float,
                         tol: float) -> float:
    left = _exp_power_series(x - a, -1.0, gamma, tol)
    right = _exp_power_series(b - x, +1.0, gamma, tol)
    return math.exp(x) * (left + right)


def closed_form_integral(u: TestFunction, interval, params: KernelParams,
                         x: float, tol: float = 1e-13) -> float:
    """Closed-form (or series) value of I(a, b, x) for the supported kinds."""
    a, b = interval
    gamma = params.gamma
    if u.kind == "const":
        return u.c * kernel_row_integral(a, b, gamma, x)
    if u.kind == "exp":
        return _exp_integral_series(a, b, gamma, x, tol)
    # monomial: expand y^p about x; odd powers flip sign on the left side
    total = 0.0
    for j in range(u.p + 1):
        e = j + 1.0 - gamma
        binom = math.comb(u.p, j)
        total += binom * x ** (u.p - j) * (
            (-1.0) ** j * (x - a) ** e + (b - x) ** e) / e
    return total


# --- manufactured problems --------------------------------------------------

@dataclass(frozen=True)
class ManufacturedProblem:
    """Right-hand side and boundary data manufactured from an exact solution.

    fValues holds f(x) = u(x) K(x) - I(a, b, x) at the collocation nodes
    (interior integer nodes for PLC; all 2N-1 nodes for PQC).
    """

    u: TestFunction
    grid: UniformGrid
    params: KernelParams
    nodes: np.ndarray
    fValues: np.ndarray
    boundary: tuple
    oracleTolerance: float = 1e-12


def exact_nonlocal_rhs(u: TestFunction, grid: UniformGrid,
                       params: KernelParams, nodes: str = "plc",
                       tol: float = 1e-12) -> ManufacturedProblem:
    """Manufacture f for the nonlocal equation at the requested node set."""
    if nodes == "plc":
        xs = grid.interior_nodes()
    elif nodes == "pqc":
        xs = grid.collocation_nodes_pqc()
    else:
        raise ValueError(f"unknown node set {nodes!r}")
    uvals = u(xs)
    f = np.array([
        uv * kernel_row_integral(grid.a, grid.b, params.gamma, x)
        - singular_integral(u, (grid.a, grid.b), params, x, tol)
        for x, uv in zip(xs, uvals)
    ])
    return ManufacturedProblem(
        u=u, grid=grid, params=params, nodes=xs, fValues=f,
        boundary=(float(u(grid.a)), float(u(grid.b))), oracleTolerance=tol)


def problem_csv(problem: ManufacturedProblem) -> str:
    lines = ["node,f_value"]
    lines += [f"{x:.17g},{f:.17g}"
              for x, f in zip(problem.nodes, problem.fValues)]
    return "\n".join(lines) + "\n"


# --- boundary basis integrals (adaptive-quadrature route) -------------------

def _piecewise_singular_quad(f, lo: float, hi: float, gamma: float,
                             x: float) -> float:
    """int_lo^hi f(y) |x - y|^(-gamma) dy with f smooth on [lo, hi]; the
    kernel singularity may sit inside, at an endpoint, or outside."""
    if gamma == 0.0:
        val, _ = integrate.quad(f, lo, hi, epsabs=1e-13, epsrel=1e-13)
        return val

    def piece(l, r):
        if l >= r:
            return 0.0
        if abs(l - x) < 1e-15 * max(1.0, abs(x)):
            v, _ = integrate.quad(f, l, r, weight="alg", wvar=(-gamma, 0.0),
                                  epsabs=1e-13, epsrel=1e-13)
        elif abs(r - x) < 1e-15 * max(1.0, abs(x)):
            v, _ = integrate.quad(f, l, r, weight="alg", wvar=(0.0, -gamma),
                                  epsabs=1e-13, epsrel=1e-13)
        else:
            v, _ = integrate.quad(lambda y: f(y) * abs(x - y) ** -gamma,
                                  l, r, epsabs=1e-13, epsrel=1e-13)
        return v

    if lo < x < hi:
        return piece(lo, x) + piece(x, hi)
    return piece(lo, hi)


def boundary_basis_integrals(grid: UniformGrid, params: KernelParams,
                             x: float, scheme: str) -> tuple:
    """Oracle values of int phi_0 |x-y|^(-gamma) dy and the phi_N twin.

    phi_0 / phi_N are the boundary interpolation basis functions: linear
    hats for 'plc', edge quadratics for 'pqc'.  Computed by adaptive
    quadrature, independently of the weight tables.
    """
    a, b, h = grid.a, grid.b, grid.h
    if scheme == "plc":
        left = lambda y: (a + h - y) / h
        right = lambda y: (y - (b - h)) / h
    elif scheme == "pqc":
        # quadratic through (x0, 1), (x_{1/2}, 0), (x1, 0) and its mirror
        left = lambda y: 2.0 * (a + h - y) * (a + h / 2.0 - y) / h ** 2
        right = lambda y: 2.0 * (y - (b - h)) * (y - (b - h / 2.0)) / h ** 2
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    i0 = _piecewise_singular_quad(left, a, a + h, params.gamma, x)
    iN = _piecewise_singular_quad(right, b - h, b, params.gamma, x)
    return i0, iN
