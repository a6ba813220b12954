"""Discrete Fourier spectrum of the truncated Thue-Morse character.

    hat_eps_k(r) = 2**-k * sum_{l < 2**k} eps_k(l) e(-r l / 2**k)

The product form ``hat_eps_k(r) = 2**-k prod_{j<k} (1 - e(-r 2**j / 2**k))``
is the fast path; ``dft_direct`` is the O(4**k) oracle it is checked against.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from ggl.parity import epsilon_array

MAX_K = 20
DIRECT_CHUNK = 1 << 22


class GuardError(ValueError):
    """Requested size exceeds the memory guard."""


@dataclass(frozen=True)
class Spectrum:
    k: int
    coeffs: np.ndarray

    @property
    def mass(self) -> float:
        return float(np.abs(self.coeffs).sum())

    @property
    def parseval(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "re", "im", "abs"])
        for r, c in enumerate(self.coeffs):
            w.writerow([r, repr(float(c.real)), repr(float(c.imag)), repr(float(abs(c)))])
        return buf.getvalue()


def _guard(k: int) -> None:
    if not 1 <= k <= MAX_K:
        raise GuardError(f"k must lie in [1, {MAX_K}], got {k}")


def dft_direct(k: int) -> Spectrum:
    """Direct double-sum DFT. Exact phases via integer reduction of r*l mod 2**k."""
    _guard(k)
    size = 1 << k
    l = np.arange(size, dtype=np.int64)
    eps = epsilon_array(l).astype(float)
    coeffs = np.empty(size, dtype=complex)
    rows = max(1, DIRECT_CHUNK // size)
    for start in range(0, size, rows):
        r = np.arange(start, min(start + rows, size), dtype=np.int64)[:, None]
        ph = ((r * l) & (size - 1)) / size
        coeffs[start : start + r.shape[0]] = np.exp(-2j * np.pi * ph) @ eps
    return Spectrum(k, coeffs / size)


def _product(k: int, r: np.ndarray) -> np.ndarray:
    size = 1 << k
    r = np.asarray(r, dtype=np.int64)
    out = np.ones(r.shape, dtype=complex)
    for j in range(k):
        ph = ((r << j) & (size - 1)) / size
        out *= 1 - np.exp(-2j * np.pi * ph)
    return out / size


def dft_product(k: int, r: int) -> complex:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 0 <= r < (1 << k):
        raise ValueError(f"r must lie in [0, 2**{k}), got {r}")
    return complex(_product(k, np.int64(r)))


def spectrum(k: int) -> Spectrum:
    """All 2**k coefficients from the product form."""
    _guard(k)
    return Spectrum(k, _product(k, np.arange(1 << k)))


def coefficient_abs(t: int) -> np.ndarray:
    """|hat_eps_t(a)| for a < 2**t; t = 0 gives the single value |eps(0)| = 1."""
    if t == 0:
        return np.ones(1)
    return np.abs(spectrum(t).coeffs)


def coefficient_mass(k: int) -> float:
    """sum_r |hat_eps_k(r)|."""
    return spectrum(k).mass


def residue_class_mass(k: int, t: int, a: int) -> float:
    """sum of |hat_eps_k(r)| over r < 2**k with r = a (mod 2**t)."""
    _guard(k)
    if not 0 <= t <= k:
        raise ValueError(f"t must lie in [0, {k}], got {t}")
    if not 0 <= a < (1 << t):
        raise ValueError(f"a must lie in [0, 2**{t}), got {a}")
    r = a + (np.arange(1 << (k - t), dtype=np.int64) << t)
    return float(np.abs(_product(k, r)).sum())


def residue_class_masses(k: int, t: int) -> np.ndarray:
    """``residue_class_mass(k, t, a)`` for every a < 2**t at once."""
    _guard(k)
    return np.abs(spectrum(k).coeffs).reshape(1 << (k - t), 1 << t).sum(axis=0)


def lifted_factor(k: int, t: int, a: int, r2: int) -> float:
    """2**-(k-t) |prod_{j<k-t} (1 - e(-(a + 2**t r2) 2**j / 2**k))|.

    ``|hat_eps_k(a + 2**t r2)|`` equals ``|hat_eps_t(a)|`` times this factor.
    """
    size = 1 << k
    r = a + (r2 << t)
    prod = 1 + 0j
    for j in range(k - t):
        prod *= 1 - np.exp(-2j * np.pi * (((r << j) % size) / size))
    return abs(prod) / (1 << (k - t))
