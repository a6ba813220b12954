"""Reference exponential sums twisted by the Thue-Morse character.

Everything here is direct summation; this module is the oracle layer that the
faster paths in ``spectrum``, ``bounds`` and ``goldbach`` are checked against.
Amplitudes are plain Python ``complex`` (or ``complex128`` arrays when ``alpha``
is an array).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ggl.arith import ArithTables, PrimeTable, check_range
from ggl.constants import VAUGHAN_EXPONENT
from ggl.parity import epsilon_array

TWO_PI = 2 * math.pi
_CHUNK = 1 << 22


def unit(x) -> np.ndarray | complex:
    """e(x) = exp(2 pi i x), with x reduced mod 1 before scaling."""
    x = np.asarray(x, dtype=float)
    out = np.exp(1j * TWO_PI * np.mod(x, 1.0))
    return complex(out) if out.ndim == 0 else out


def _weighted_sum(alpha, n: np.ndarray, w: np.ndarray, sign: float = 1.0):
    """sum_j w[j] e(sign * alpha * n[j]) for scalar or array ``alpha``."""
    a = np.asarray(alpha, dtype=float)
    flat = a.reshape(-1)
    out = np.zeros(flat.shape, dtype=complex)
    n = np.asarray(n, dtype=float)
    w = np.asarray(w, dtype=float)
    if n.size:
        step = max(1, _CHUNK // n.size)
        for i in range(0, flat.size, step):
            block = flat[i : i + step, None]
            out[i : i + step] = np.exp(1j * TWO_PI * np.mod(sign * block * n, 1.0)) @ w
    return complex(out[0]) if a.ndim == 0 else out.reshape(a.shape)


def char_sum(alpha, X: int):
    """sum_{1 <= n <= X} epsilon(n) e(alpha n)."""
    if X < 1:
        raise ValueError(f"char_sum needs X >= 1, got {X}")
    n = np.arange(1, X + 1)
    return _weighted_sum(alpha, n, epsilon_array(n))


def gelfond_product(alpha, Q: int):
    """prod_{r < 2Q} (1 - e(alpha 2**r)).

    Doubling mod 1 is exact in binary floating point, so every factor sees the
    correctly reduced phase.
    """
    if Q < 1:
        raise ValueError(f"gelfond_product needs Q >= 1, got {Q}")
    a = np.asarray(alpha, dtype=float)
    phase = np.mod(a, 1.0)
    prod = np.ones(a.shape, dtype=complex)
    for _ in range(2 * Q):
        prod = prod * (1 - np.exp(1j * TWO_PI * phase))
        phase = np.mod(2 * phase, 1.0)
    return complex(prod) if a.ndim == 0 else prod


def prime_sum(alpha, N: int, table: PrimeTable, weighted: bool = False):
    """S(alpha) = sum_{p<=N} e(alpha p), or the epsilon-weighted S_0 if ``weighted``."""
    m = table.upto(N)
    p = table.primes[:m]
    w = table.class_tag[:m] if weighted else np.ones(m)
    return _weighted_sum(alpha, p, w)


def theorem1_sum(alpha, X: int, tables: ArithTables):
    """sum_{n<=X} epsilon(n) Lambda(n) e(alpha n), skipping the zero terms."""
    check_range(X, tables.limit)
    n = np.flatnonzero(tables.mangoldt[: X + 1])
    return _weighted_sum(alpha, n, tables.mangoldt[n] * tables.epsilon[n])


def vaughan_coefficient(m: int, u: float, tables: ArithTables | None = None) -> int:
    """a_m = sum over divisors d of m with d <= u of mu(d)."""
    if m < 1 or u < 1:
        raise ValueError("vaughan_coefficient needs m >= 1 and u >= 1")
    top = min(m, math.floor(u))
    if tables is not None:
        check_range(top, tables.limit)
        mu = tables.moebius
        return int(sum(int(mu[d]) for d in range(1, top + 1) if m % d == 0))
    from ggl.arith import moebius

    return sum(moebius(d) for d in range(1, top + 1) if m % d == 0)


@dataclass(frozen=True)
class VaughanSplit:
    """W1, W2, W3 of the Vaughan split and ``residual = S - (W1 - W2 - W3)``."""

    w1: complex
    w2: complex
    w3: complex
    residual: complex
    u: float

    @property
    def recombined(self) -> complex:
        return self.w1 - self.w2 - self.w3 + self.residual


def vaughan_cutoff(X: int) -> float:
    return X**VAUGHAN_EXPONENT


def _vaughan_coefficients(top: int, U: int, mu: np.ndarray) -> np.ndarray:
    a = np.zeros(top + 1, dtype=np.int64)
    for d in range(1, min(U, top) + 1):
        if mu[d]:
            a[d::d] += int(mu[d])
    return a


def vaughan_split(alpha: float, X: int, tables: ArithTables, u: float | None = None) -> VaughanSplit:
    """Evaluate W1, W2, W3 by nested direct summation.

    The real cutoff ``u`` defaults to ``X**0.1``; all range conditions compare
    integers against it (``d <= u``, ``n > u``, ``m <= X/u``).
    """
    if X < 1:
        raise ValueError("vaughan_split needs X >= 1")
    check_range(X, tables.limit)
    u = vaughan_cutoff(X) if u is None else float(u)
    if u < 1:
        raise ValueError(f"cutoff u must be >= 1, got {u}")
    U = math.floor(u)
    mu, lam, eps = tables.moebius, tables.mangoldt, tables.epsilon

    def phase_sum(idx: np.ndarray, weight: np.ndarray) -> complex:
        return _weighted_sum(alpha, idx, weight * eps[idx])

    w1 = 0j
    for d in range(1, U + 1):
        if mu[d]:
            n = np.arange(1, X // d + 1)
            w1 += int(mu[d]) * phase_sum(d * n, np.log(n))

    w2 = 0j
    small_pp = [n for n in range(2, U + 1) if lam[n] > 0]
    for d in range(1, U + 1):
        if not mu[d]:
            continue
        for n in small_pp:
            if d * n > X:
                continue
            r = np.arange(1, X // (d * n) + 1)
            w2 += int(mu[d]) * lam[n] * phase_sum(d * n * r, np.ones(r.size))

    pp = np.flatnonzero(lam[: X + 1])
    pp = pp[pp > U]
    m_top = math.floor(X / u)
    a = _vaughan_coefficients(m_top, U, mu)
    w3 = 0j
    for m in range(U + 1, m_top + 1):
        if a[m] == 0:
            continue
        n = pp[: np.searchsorted(pp, X // m, side="right")]
        if n.size:
            w3 += int(a[m]) * phase_sum(m * n, lam[n])

    s = theorem1_sum(alpha, X, tables)
    return VaughanSplit(w1, w2, w3, s - (w1 - w2 - w3), u)


def vaughan_tail(alpha: float, X: int, tables: ArithTables, u: float | None = None) -> complex:
    """The exact residual of the split: sum_{n<=u} epsilon(n) Lambda(n) e(alpha n)."""
    u = vaughan_cutoff(X) if u is None else float(u)
    return theorem1_sum(alpha, min(math.floor(u), X), tables)


def bilinear_sum_w3(
    alpha: float,
    M_half: int,
    M1: int,
    N_half: int,
    N1: int,
    u: float,
    tables: ArithTables,
) -> float:
    """|sum_{M_half<m<=M1} a_m sum_{N_half<n<=N1} Lambda(n) epsilon(mn) e(alpha mn)|."""
    if M_half >= M1 or N_half >= N1:
        return 0.0
    check_range(M1 * N1, tables.limit)
    lam, eps = tables.mangoldt, tables.epsilon
    a = _vaughan_coefficients(M1, math.floor(u), tables.moebius)
    n = np.arange(N_half + 1, N1 + 1)
    n = n[lam[n] > 0]
    total = 0j
    for m in range(M_half + 1, M1 + 1):
        if a[m] and n.size:
            total += int(a[m]) * _weighted_sum(alpha, m * n, lam[n] * eps[m * n])
    return abs(total)


def bilinear_sum_w4(
    alpha: float,
    h: int,
    M_half: int,
    M1: int,
    N_half: int,
    N1: int,
    k: int | None = None,
) -> float:
    """sum_{N_half<n<=N1} |sum_{M_half<m<=M1} eps(mn) eps(mn+mh) e(-alpha m (n+h))|.

    With ``k`` set, both characters are replaced by their k-bit truncations.
    """
    if M_half >= M1 or N_half >= N1:
        return 0.0
    m = np.arange(M_half + 1, M1 + 1)
    n = np.arange(N_half + 1, N1 + 1)[:, None]
    mn = m * n
    shifted = mn + m * h
    if k is not None:
        mask = (1 << k) - 1
        mn, shifted = mn & mask, shifted & mask
    sign = epsilon_array(mn).astype(float) * epsilon_array(shifted)
    ph = np.exp(-1j * TWO_PI * np.mod(alpha * (m * (n + h)).astype(float), 1.0))
    return float(np.abs((sign * ph).sum(axis=1)).sum())


def truncation_bits(M: int, X: int, rho: float) -> int:
    """The k with 2**(k-1) < M X**(2 rho) <= 2**k."""
    target = M * X ** (2 * rho)
    k = max(0, math.ceil(math.log2(target)))
    while 2**k < target:
        k += 1
    while k > 0 and 2 ** (k - 1) >= target:
        k -= 1
    return k


def w4_exceptional_pairs(h: int, M_half: int, M1: int, N_half: int, N1: int, k: int) -> int:
    """Count of (m, n) with mn mod 2**k >= 2**k - 2 M1 h.

    Outside these pairs the k-bit truncation leaves eps(mn) eps(mn+mh) unchanged.
    """
    if M_half >= M1 or N_half >= N1:
        return 0
    m = np.arange(M_half + 1, M1 + 1)
    n = np.arange(N_half + 1, N1 + 1)[:, None]
    r = (m * n) % (1 << k)
    return int(np.count_nonzero(r >= (1 << k) - 2 * M1 * h))


def theorem1_profile(exponents, alphas: np.ndarray, tables: ArithTables) -> list[float]:
    """max over ``alphas`` of |theorem1_sum(alpha, 2**j)| / 2**j for each j."""
    return [float(np.abs(theorem1_sum(alphas, 1 << j, tables)).max()) / (1 << j) for j in exponents]
