"""Ordered ternary Goldbach counts J(N) and the class-restricted J_0(N).

For ordered prime triples p1 + p2 + p3 = N,

    T_j(N) = sum eps(p1) ... eps(pj)          (j = 0..3)
    J(N)   = T_0(N)
    J_0(N) = (T_0 + 3 T_1 + 3 T_2 + T_3) / 8

the last line being the expansion of prod (1 + eps(p_i)) / 2.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from ggl.arith import PrimeTable, check_range
from ggl.expsum import prime_sum

MAX_FAST_N = 2_000_001
REPORT_HEADER = ("N", "J", "J0", "ratio", "lower_bound_proxy")


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class RepCounts:
    N: int
    t0: int
    t1: int
    t2: int
    t3: int

    @property
    def J(self) -> int:
        return self.t0

    @property
    def J0(self) -> int:
        num = self.t0 + 3 * self.t1 + 3 * self.t2 + self.t3
        if num % 8:
            raise ArithmeticError(f"N={self.N}: T0+3T1+3T2+T3 = {num} is not divisible by 8")
        return num // 8

    @property
    def ratio(self) -> float:
        """8 J_0 / J (nan when J = 0)."""
        return 8 * self.J0 / self.J if self.J else math.nan


def _check_odd(N: int) -> None:
    if N % 2 == 0 or N < 7:
        raise DomainError(f"N must be odd and >= 7, got {N}")


def signed_triple_count(N: int, table: PrimeTable, signed: Sequence[bool]) -> int:
    """sum over ordered p1+p2+p3 = N of the product of eps(p_i) for i with ``signed[i]``."""
    check_range(N, table.limit)
    m = table.upto(N)
    ps, tags = table.primes[:m], table.class_tag[:m].astype(np.int64)
    is_p = table.is_prime_mask()
    eps = table.signed_indicator(N)
    total = 0
    for p1, e1 in zip(ps.tolist(), tags.tolist()):
        p3 = N - p1 - ps
        keep = p3 >= 2
        keep[keep] = is_p[p3[keep]]
        w = np.ones(int(keep.sum()), dtype=np.int64)
        if signed[1]:
            w = w * tags[keep]
        if signed[2]:
            w = w * eps[p3[keep]]
        total += (e1 if signed[0] else 1) * int(w.sum())
    return total


def rep_counts(N: int, table: PrimeTable) -> RepCounts:
    """Exact T_0..T_3 by looping over (p1, p2) and testing p3 = N - p1 - p2."""
    _check_odd(N)
    check_range(N, table.limit)
    m = table.upto(N)
    ps, tags = table.primes[:m], table.class_tag[:m].astype(np.int64)
    is_p = table.is_prime_mask()
    eps = table.signed_indicator(N)
    t = [0, 0, 0, 0]
    for p1, e1 in zip(ps.tolist(), tags.tolist()):
        p3 = N - p1 - ps
        keep = p3 >= 2
        keep[keep] = is_p[p3[keep]]
        e2 = tags[keep]
        e3 = eps[p3[keep]]
        t[0] += int(keep.sum())
        t[1] += e1 * int(keep.sum())
        t[2] += e1 * int(e2.sum())
        t[3] += e1 * int((e2 * e3).sum())
    return RepCounts(N, *t)


def _shift_add(target: np.ndarray, source: np.ndarray, shift: int, weight: int) -> None:
    n = target.size
    if shift < n:
        target[shift:] += weight * source[: n - shift]


def rep_count_tables(N_max: int, table: PrimeTable) -> tuple[np.ndarray, ...]:
    """Arrays T_0..T_3 indexed by N <= N_max, by exact integer convolution.

    Pair tables f*f, g*f, g*g (f the prime indicator, g = eps f) are built by
    shifting and adding once per prime, then convolved with f or g once more.
    """
    if N_max > MAX_FAST_N:
        raise MemoryError(f"N_max={N_max} exceeds the configured guard {MAX_FAST_N}")
    check_range(N_max, table.limit)
    m = table.upto(N_max)
    ps, tags = table.primes[:m].tolist(), table.class_tag[:m].tolist()
    f = table.indicator(N_max)
    g = table.signed_indicator(N_max)
    ff, gf, gg = (np.zeros(N_max + 1, dtype=np.int64) for _ in range(3))
    for p, e in zip(ps, tags):
        _shift_add(ff, f, p, 1)
        _shift_add(gf, f, p, e)
        _shift_add(gg, g, p, e)
    t0, t1, t2, t3 = (np.zeros(N_max + 1, dtype=np.int64) for _ in range(4))
    for p, e in zip(ps, tags):
        _shift_add(t0, ff, p, 1)
        _shift_add(t1, gf, p, 1)
        _shift_add(t2, gg, p, 1)
        _shift_add(t3, gg, p, e)
    return t0, t1, t2, t3


def rep_counts_fast(N_max: int, table: PrimeTable) -> Iterator[RepCounts]:
    """RepCounts for every odd N in [7, N_max], in increasing N."""
    t0, t1, t2, t3 = rep_count_tables(N_max, table)
    for N in range(7, N_max + 1, 2):
        yield RepCounts(N, int(t0[N]), int(t1[N]), int(t2[N]), int(t3[N]))


@dataclass(frozen=True)
class CircleCheck:
    N: int
    L: int
    j_integral: int
    j_direct: int
    j0_integral: int
    j0_direct: int
    residual: float

    @property
    def passed(self) -> bool:
        return self.j_integral == self.j_direct and self.j0_integral == self.j0_direct


def next_power_of_two_above(x: int) -> int:
    return 1 << x.bit_length()


def circle_identity_check(N: int, L: int, table: PrimeTable) -> CircleCheck:
    """Recover J(N) and J_0(N) from the prime sums sampled at alpha = j/L.

    With L > 3N no triple sum other than N itself aliases onto N, so

        J(N)   = (1/L)  sum_j S(j/L)**3 e(-jN/L)
        J_0(N) = (1/8L) sum_j (S + S_0)(j/L)**3 e(-jN/L)

    hold exactly. ``residual`` is the largest distance of either raw value from
    an integer, imaginary parts included.
    """
    _check_odd(N)
    if L <= 3 * N:
        raise ValueError(f"L={L} must exceed 3N={3 * N} for the discrete identity to be exact")
    alphas = np.arange(L) / L
    s = prime_sum(alphas, N, table)
    s0 = prime_sum(alphas, N, table, weighted=True)
    twist = np.exp(-2j * np.pi * ((np.arange(L) * N) % L) / L)
    j_raw = np.sum(s**3 * twist) / L
    j0_raw = np.sum((s + s0) ** 3 * twist) / (8 * L)
    direct = rep_counts(N, table)
    residual = max(
        abs(j_raw.real - round(j_raw.real)),
        abs(j_raw.imag),
        abs(j0_raw.real - round(j0_raw.real)),
        abs(j0_raw.imag),
    )
    return CircleCheck(N, L, round(j_raw.real), direct.J, round(j0_raw.real), direct.J0, residual)


def ratio_row(rc: RepCounts) -> dict:
    N = rc.N
    return {
        "N": N,
        "J": rc.J,
        "J0": rc.J0,
        "ratio": rc.ratio,
        "lower_bound_proxy": rc.J * math.log(N) ** 3 / N**2,
    }


def ratio_report(checkpoints: Iterable[int], table: PrimeTable) -> list[dict]:
    """Rows (N, J, J0, 8 J0 / J, J (ln N)**3 / N**2) for each checkpoint."""
    return [ratio_row(rep_counts(N, table)) for N in checkpoints]


def write_report_csv(rows: Sequence[dict], fh: IO[str]) -> None:
    w = csv.DictWriter(fh, fieldnames=REPORT_HEADER, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: _fmt(row[k]) for k in REPORT_HEADER})


def _fmt(v):
    return repr(v) if isinstance(v, float) else v
