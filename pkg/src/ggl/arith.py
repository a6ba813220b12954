"""Prime sieve tagged by Thue-Morse class, plus Lambda, mu and tau tables."""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ggl.parity import epsilon_array

SEGMENT = 1 << 20
CACHE_MAGIC = b"GGL1"
CACHE_ENV = "GGL_CACHE_DIR"


class RangeError(ValueError):
    """Requested index lies beyond the table that was built."""


@dataclass(frozen=True)
class PrimeTable:
    """Primes up to ``limit`` with ``class_tag[i] = epsilon(primes[i])``."""

    limit: int
    primes: np.ndarray
    class_tag: np.ndarray
    _mask: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.primes)

    def upto(self, n: int) -> int:
        """Number of primes <= n (n must not exceed ``limit``)."""
        check_range(n, self.limit)
        return int(np.searchsorted(self.primes, n, side="right"))

    def is_prime_mask(self) -> np.ndarray:
        """Boolean array of length ``limit + 1``."""
        if self._mask is None:
            mask = np.zeros(self.limit + 1, dtype=bool)
            mask[self.primes] = True
            object.__setattr__(self, "_mask", mask)
        return self._mask

    def signed_indicator(self, n: int | None = None) -> np.ndarray:
        """int64 array ``v`` of length ``n + 1`` with ``v[p] = epsilon(p)`` on primes."""
        n = self.limit if n is None else n
        check_range(n, self.limit)
        out = np.zeros(n + 1, dtype=np.int64)
        m = self.upto(n)
        out[self.primes[:m]] = self.class_tag[:m]
        return out

    def indicator(self, n: int | None = None) -> np.ndarray:
        n = self.limit if n is None else n
        check_range(n, self.limit)
        out = np.zeros(n + 1, dtype=np.int64)
        out[self.primes[: self.upto(n)]] = 1
        return out


def check_range(n: int, limit: int) -> None:
    if n > limit:
        raise RangeError(f"{n} exceeds table limit {limit}")


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _segmented_sieve(limit: int, segment: int = SEGMENT) -> np.ndarray:
    base = _simple_sieve(math.isqrt(limit))
    chunks = [base]
    low = math.isqrt(limit) + 1
    while low <= limit:
        high = min(low + segment, limit + 1)
        mask = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low :: p] = False
        chunks.append(np.flatnonzero(mask).astype(np.int64) + low)
        low = high
    return np.concatenate(chunks)


def sieve(limit: int) -> PrimeTable:
    """All primes <= ``limit``; segmented above 2**20 to bound memory."""
    if limit < 2:
        empty = np.zeros(0, dtype=np.int64)
        return PrimeTable(max(int(limit), 0), empty, empty.astype(np.int8))
    primes = _simple_sieve(limit) if limit <= SEGMENT else _segmented_sieve(limit)
    return PrimeTable(int(limit), primes, epsilon_array(primes))


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mangoldt(n: int) -> float:
    """von Mangoldt function: ln p for n = p**a, else 0."""
    if n < 1:
        raise ValueError(f"mangoldt needs n >= 1, got {n}")
    f = _factor(n)
    return math.log(next(iter(f))) if len(f) == 1 else 0.0


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError(f"moebius needs n >= 1, got {n}")
    f = _factor(n)
    if any(a > 1 for a in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@dataclass(frozen=True)
class ArithTables:
    """Lambda, mu and tau for ``0..limit`` (index 0 is a zero placeholder)."""

    limit: int
    mangoldt: np.ndarray
    moebius: np.ndarray
    divisor_count: np.ndarray
    epsilon: np.ndarray

    @classmethod
    def build(cls, limit: int) -> "ArithTables":
        if limit < 1:
            raise ValueError("ArithTables needs limit >= 1")
        primes = _simple_sieve(limit) if limit <= SEGMENT else _segmented_sieve(limit)
        lam = np.zeros(limit + 1)
        mu = np.ones(limit + 1, dtype=np.int8)
        mu[0] = 0
        for p in primes.tolist():
            lp = math.log(p)
            q = p
            while q <= limit:
                lam[q] = lp
                q *= p
            mu[::p] *= -1
            if p * p <= limit:
                mu[:: p * p] = 0
        tau = np.zeros(limit + 1, dtype=np.int64)
        for d in range(1, limit + 1):
            tau[d::d] += 1
        return cls(limit, lam, mu, tau, epsilon_array(limit + 1))


def class_prime_counts(table: PrimeTable, n_limit: int) -> tuple[int, int]:
    """``(pi(n_limit), #{p <= n_limit : epsilon(p) = +1})``."""
    m = table.upto(n_limit)
    return m, int(np.count_nonzero(table.class_tag[:m] == 1))


# Cache file: b"GGL1", <u64 limit>, <u64 count>, count x <u32 delta>, count x <i8 tag>.


def save_table(table: PrimeTable, path: str | os.PathLike) -> None:
    deltas = np.diff(table.primes, prepend=0).astype("<u4")
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<QQ", table.limit, len(table.primes)))
        fh.write(deltas.tobytes())
        fh.write(table.class_tag.astype("<i1").tobytes())


def load_table(path: str | os.PathLike) -> PrimeTable:
    data = Path(path).read_bytes()
    if data[:4] != CACHE_MAGIC:
        raise ValueError(f"{path}: bad magic {data[:4]!r}")
    limit, count = struct.unpack_from("<QQ", data, 4)
    off = 20
    expected = off + 5 * count
    if len(data) != expected:
        raise ValueError(f"{path}: expected {expected} bytes, found {len(data)}")
    deltas = np.frombuffer(data, dtype="<u4", count=count, offset=off)
    tags = np.frombuffer(data, dtype="<i1", count=count, offset=off + 4 * count)
    primes = np.cumsum(deltas, dtype=np.int64)
    return PrimeTable(int(limit), primes, tags.astype(np.int8))


def cached_sieve(limit: int, cache_dir: str | os.PathLike | None = None) -> PrimeTable:
    """``sieve(limit)`` backed by a file cache in ``cache_dir`` or $GGL_CACHE_DIR."""
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    if not cache_dir:
        return sieve(limit)
    path = Path(cache_dir) / f"primes_{limit}.ggl"
    if path.exists():
        return load_table(path)
    table = sieve(limit)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_table(table, path)
    return table
