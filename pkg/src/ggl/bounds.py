"""Finite-scale checks of the lemma and corollary inequalities.

Each check returns a :class:`BoundCheck` holding both sides of one inequality.
A check fails only when ``lhs > rhs * (1 + tol)``; quadrature-backed checks use
``tol = 1e-3`` and exact ones ``tol = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ggl.constants import LAMBDA, THETA0
from ggl.expsum import gelfond_product
from ggl.parity import epsilon
from ggl.spectrum import coefficient_abs, residue_class_masses, spectrum

QUAD_TOL = 1e-3
QUAD_RTOL = 1e-4
MAX_POINTS = 1 << 27
MAX_TILED = 1 << 26
_CHUNK = 1 << 20


class QuadratureError(RuntimeError):
    """Refinement stopped before reaching the requested relative tolerance."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    grid_points: int
    est_error: float


@dataclass(frozen=True)
class RationalApprox:
    a: int
    q: int
    theta: float

    def value(self) -> float:
        return self.a / self.q + self.theta / self.q**2


@dataclass(frozen=True)
class BoundCheck:
    check_name: str
    parameters: str
    lhs: float
    rhs: float
    grid_points: int = 0
    tol: float = 0.0

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs * (1 + self.tol)

    def row(self) -> dict:
        return {
            "check_name": self.check_name,
            "parameters": self.parameters,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "grid_points": self.grid_points,
        }


def midpoint_grid(n: int) -> np.ndarray:
    """The n midpoints (j + 1/2)/n of [0, 1]."""
    return (np.arange(n) + 0.5) / n


# ---------------------------------------------------------------- quadrature


def _midpoint(f: Callable[[np.ndarray], np.ndarray], n: int) -> float:
    total = 0.0
    for start in range(0, n, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, n))
        total += float(np.sum(f((j + 0.5) / n)))
    return total / n


def romberg_midpoint(
    level: Callable[[int], float],
    n0: int,
    rtol: float = QUAD_RTOL,
    max_points: int = MAX_POINTS,
) -> QuadratureResult:
    """Romberg extrapolation of midpoint sums ``level(n)`` on [0, 1].

    The grid doubles from ``n0`` until two successive extrapolated levels agree
    to ``rtol``. ``n0`` must be a multiple of the number of smooth pieces of the
    integrand so every kink sits on a cell boundary; the midpoint error then
    expands in even powers of the step and the extrapolation is valid.
    """
    n = n0
    rows = [[level(n)]]
    while 2 * n <= max_points:
        n *= 2
        row = [level(n)]
        for j, below in enumerate(rows[-1], start=1):
            row.append(row[-1] + (row[-1] - below) / (4**j - 1))
        err = abs(row[-1] - rows[-1][-1])
        rows.append(row)
        if err <= rtol * abs(row[-1]):
            return QuadratureResult(row[-1], n, err)
    raise QuadratureError(
        f"no convergence at {n} points: last value {rows[-1][-1]!r}, rtol {rtol}"
    )


def adaptive_midpoint(
    f: Callable[[np.ndarray], np.ndarray],
    n0: int,
    rtol: float = QUAD_RTOL,
    max_points: int = MAX_POINTS,
) -> QuadratureResult:
    """Integrate a vectorized ``f`` over [0, 1]; see :func:`romberg_midpoint`."""
    return romberg_midpoint(lambda n: _midpoint(f, n), n0, rtol, max_points)


def midpoint_sum_gelfond(Q: int, n: int) -> float:
    """Midpoint sum of |S_Q| on n cells, n a power of two >= 2**(2Q-1).

    On the midpoint grid the factor |2 sin(pi 2**r alpha)| repeats with period
    n / 2**r, so the product is assembled by tiling from the highest factor
    down instead of evaluating 2Q sines per point.
    """
    arr = np.ones(1)
    for r in range(2 * Q - 1, -1, -1):
        period = n >> r
        vals = 2 * np.abs(np.sin(np.pi * (np.arange(period) + 0.5) / period))
        arr = np.tile(arr, period // arr.size) * vals
    return float(arr.sum()) / n


def abs_gelfond(alpha: np.ndarray, Q: int) -> np.ndarray:
    """|S_Q(alpha)| as a product of |2 sin(pi alpha 2**r)|."""
    phase = np.mod(alpha, 1.0)
    out = np.ones_like(phase)
    for _ in range(2 * Q):
        out *= 2 * np.abs(np.sin(np.pi * phase))
        phase = np.mod(2 * phase, 1.0)
    return out


def char_sum_blocks(alpha, X: int) -> np.ndarray:
    """sum_{1<=n<=X} eps(n) e(alpha n) in O(log X) per alpha.

    [0, X] splits into dyadic blocks [b, b + 2**j); on each one
    eps(b + x) = eps(b) eps(x), so the block sum is eps(b) e(alpha b) times a
    Gelfond product of length j.
    """
    a = np.asarray(alpha, dtype=float)
    total = np.zeros(a.shape, dtype=complex)
    base = 0
    top = X + 1
    for j in range(top.bit_length() - 1, -1, -1):
        if top >> j & 1:
            block = np.ones(a.shape, dtype=complex)
            phase = np.mod(a, 1.0)
            for _ in range(j):
                block *= 1 - np.exp(2j * np.pi * phase)
                phase = np.mod(2 * phase, 1.0)
            total += epsilon(base) * np.exp(2j * np.pi * np.mod(a * base, 1.0)) * block
            base += 1 << j
    return total - 1  # drop n = 0


def l1_norm_SQ(Q: int, rtol: float = QUAD_RTOL) -> QuadratureResult:
    """Integral over [0, 1] of |S_Q(alpha)|."""
    if not 1 <= Q <= 14:
        raise ValueError(f"Q must lie in [1, 14], got {Q}")
    return romberg_midpoint(lambda n: midpoint_sum_gelfond(Q, n), 1 << (2 * Q - 1), rtol, MAX_TILED)


def l1_norm_charsum(X: int, rtol: float = QUAD_RTOL) -> QuadratureResult:
    """Integral over [0, 1] of |sum_{n<=X} eps(n) e(alpha n)|."""
    if not 1 <= X <= 1 << 14:
        raise ValueError(f"X must lie in [1, 2**14], got {X}")
    n0 = 1 << (X.bit_length() + 2)
    return adaptive_midpoint(lambda x: np.abs(char_sum_blocks(x, X)), n0, rtol)


# ------------------------------------------------------------------- lemma 1


def distance_to_int(x):
    return np.abs(x - np.round(x))


def min_norm_sum(alpha: float, beta: float, U: float, P: int) -> float:
    """sum_{x=1}^{P} min(U, 1/||alpha x + beta||); a zero distance contributes U."""
    if P < 1 or U <= 0:
        raise ValueError("min_norm_sum needs P >= 1 and U > 0")
    x = np.arange(1, P + 1)
    d = distance_to_int(alpha * x + beta)
    with np.errstate(divide="ignore"):
        terms = np.where(d > 0, np.minimum(U, 1.0 / np.where(d > 0, d, 1.0)), U)
    return float(terms.sum())


def lemma1_rhs(P: int, q: int, U: float) -> float:
    return 6 * (P / q + 1) * (U + q * math.log(q))


def rational_approx(alpha: float | Fraction, q_max: int) -> RationalApprox:
    """Last continued-fraction convergent a/q of ``alpha`` with q <= q_max."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    x = Fraction(alpha)
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    a, q = math.floor(x), 1
    rest = x
    while True:
        c = math.floor(rest)
        h0, h1 = h1, c * h1 + h0
        k0, k1 = k1, c * k1 + k0
        if k1 > q_max:
            break
        a, q = h1, k1
        frac = rest - c
        if frac == 0:
            break
        rest = 1 / frac
    theta = float((x - Fraction(a, q)) * q * q)
    return RationalApprox(a, q, theta)


def lemma1_check(alpha: float, beta: float, U: float, P: int, q_max: int) -> BoundCheck:
    approx = rational_approx(alpha, q_max)
    lhs = min_norm_sum(alpha, beta, U, P)
    rhs = lemma1_rhs(P, approx.q, U)
    params = f"alpha={alpha!r};beta={beta!r};U={U!r};P={P};q={approx.q}"
    return BoundCheck("lemma1", params, lhs, rhs)


# ------------------------------------------------------- lemma 2, corollary 1


def lemma2_rhs(Q: int) -> float:
    return 2 / math.sqrt(3) * 2 ** (2 * Q * LAMBDA)


def lemma2_check(Q: int, alphas: np.ndarray) -> BoundCheck:
    lhs = float(np.abs(gelfond_product(alphas, Q)).max())
    return BoundCheck("lemma2", f"Q={Q}", lhs, lemma2_rhs(Q), len(alphas))


def corollary1_shape(X: int) -> float:
    return X**LAMBDA * math.log(X)


def corollary1_ratio(X: int, alphas: np.ndarray) -> float:
    """max over ``alphas`` of |char sum up to X| / (X**lambda ln X)."""
    return float(np.abs(char_sum_blocks(alphas, X)).max()) / corollary1_shape(X)


def corollary1_check(X: int, alphas: np.ndarray, constant: float) -> BoundCheck:
    lhs = float(np.abs(char_sum_blocks(alphas, X)).max())
    return BoundCheck("corollary1", f"X={X}", lhs, constant * corollary1_shape(X), len(alphas))


# ------------------------------------------------------- lemma 4, corollary 2


def lemma4_check(Q: int) -> BoundCheck:
    res = l1_norm_SQ(Q)
    return BoundCheck("lemma4", f"Q={Q}", res.value, 2 ** (Q * THETA0), res.grid_points, QUAD_TOL)


def corollary2_check(X: int) -> BoundCheck:
    res = l1_norm_charsum(X)
    rhs = X**THETA0 * math.log(X)
    return BoundCheck("corollary2", f"X={X}", res.value, rhs, res.grid_points, QUAD_TOL)


# ------------------------------------------------------------------- lemma 3


def _gelfond_with_derivative(t: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """S(t) = prod_{j<k} (1 - e(t 2**j)) and S'(t) via prefix/suffix products."""
    phase = np.mod(t, 1.0)
    factors, slopes = [], []
    for j in range(k):
        z = np.exp(2j * np.pi * phase)
        factors.append(1 - z)
        slopes.append(-2j * np.pi * (1 << j) * z)
        phase = np.mod(2 * phase, 1.0)
    prefix = [np.ones_like(factors[0])]
    for f in factors:
        prefix.append(prefix[-1] * f)
    value = prefix[-1]
    deriv = np.zeros_like(value)
    suffix = np.ones_like(value)
    for j in range(k - 1, -1, -1):
        deriv += prefix[j] * slopes[j] * suffix
        suffix = suffix * factors[j]
    return value, deriv


def gallagher_check(k: int) -> BoundCheck:
    """Gallagher's inequality for S(t) = sum_{x<2**k} eps(x) e(tx) at t_r = r/2**k."""
    if not 1 <= k <= 12:
        raise ValueError(f"k must lie in [1, 12], got {k}")
    nodes = np.arange(1, (1 << k) + 1) / (1 << k)
    lhs = float(np.abs(_gelfond_with_derivative(nodes, k)[0]).sum())
    n0 = 1 << (k + 3)
    integral = adaptive_midpoint(lambda t: np.abs(_gelfond_with_derivative(t, k)[0]), n0)
    deriv = adaptive_midpoint(lambda t: np.abs(_gelfond_with_derivative(t, k)[1]), n0)
    delta = 1.0 / (1 << k)
    rhs = integral.value / delta + 0.5 * deriv.value
    pts = max(integral.grid_points, deriv.grid_points)
    return BoundCheck("lemma3", f"k={k}", lhs, rhs, pts, QUAD_TOL)


# ------------------------------------------------------ corollaries 3 and 4


def corollary3_shape(k: int) -> float:
    return k * 2 ** ((THETA0 - 1) * k) * 2**k


def corollary3_ratio(k: int) -> float:
    return spectrum(k).mass / corollary3_shape(k)


def corollary3_check(k: int, constant: float) -> BoundCheck:
    return BoundCheck("corollary3", f"k={k}", spectrum(k).mass, constant * corollary3_shape(k))


def _corollary4_terms(k: int) -> list[tuple[int, np.ndarray, np.ndarray]]:
    """(t, class masses, shape without the constant) for every t in [0, k]."""
    out = []
    for t in range(k + 1):
        lhs = residue_class_masses(k, t)
        shape = 2 ** ((THETA0 / 2) * (k - t)) * coefficient_abs(t) * k
        out.append((t, lhs, shape))
    return out


def corollary4_ratio(k: int, floor: float = 1e-12) -> float:
    """Largest class-mass / shape ratio over t and a with a non-vanishing shape."""
    best = 0.0
    for _, lhs, shape in _corollary4_terms(k):
        ok = shape > floor
        if ok.any():
            best = max(best, float((lhs[ok] / shape[ok]).max()))
    return best


def corollary4_checks(k: int, constant: float, atol: float = 1e-12) -> list[BoundCheck]:
    """One check per t, reporting the worst residue class a.

    Where hat_eps_t(a) vanishes the class mass vanishes with it; ``atol``
    absorbs the rounding left in those zero classes.
    """
    checks = []
    for t, lhs, shape in _corollary4_terms(k):
        slack = constant * shape + atol - lhs
        a = int(np.argmin(slack))
        checks.append(
            BoundCheck("corollary4", f"k={k};t={t};a={a}", float(lhs[a]), float(constant * shape[a] + atol))
        )
    return checks


def run_checks(checks: Sequence[BoundCheck]) -> tuple[int, list[dict]]:
    """Number of violations and the CSV rows."""
    return sum(not c.passed for c in checks), [c.row() for c in checks]
