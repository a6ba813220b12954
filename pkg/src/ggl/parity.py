"""Thue-Morse parity character and its k-bit truncation.

``epsilon(n)`` is +1 when the binary expansion of ``n`` has an even number of
ones and -1 otherwise; ``epsilon(0) = +1``.
"""

from __future__ import annotations

import numpy as np


def digit_sum(n: int) -> int:
    """Number of ones in the binary expansion of ``n``."""
    if n < 0:
        raise ValueError(f"digit_sum needs n >= 0, got {n}")
    return int(n).bit_count()


def epsilon(n: int) -> int:
    """Thue-Morse character: +1 for an even binary digit sum, -1 for odd."""
    return -1 if digit_sum(n) & 1 else 1


def epsilon_k(n: int, k: int) -> int:
    """Parity of the ``k`` lowest binary digits of ``n``."""
    if k < 1:
        raise ValueError(f"epsilon_k needs k >= 1, got {k}")
    return epsilon(n & ((1 << k) - 1))


def epsilon_array(n: np.ndarray | int) -> np.ndarray:
    """Vectorized ``epsilon`` over a non-negative integer array (int8 result).

    ``epsilon_array(N)`` with an int ``N`` returns the table for ``0..N-1``.
    """
    if isinstance(n, (int, np.integer)):
        n = np.arange(int(n), dtype=np.int64)
    n = np.asarray(n)
    if n.size and n.min() < 0:
        raise ValueError("epsilon_array needs non-negative entries")
    odd = np.bitwise_count(n.astype(np.uint64)) & 1
    return (1 - 2 * odd.astype(np.int8)).astype(np.int8)


def epsilon_k_array(n: np.ndarray, k: int) -> np.ndarray:
    if k < 1:
        raise ValueError(f"epsilon_k needs k >= 1, got {k}")
    n = np.asarray(n, dtype=np.int64)
    return epsilon_array(n & ((1 << k) - 1))
