"""Exact integer arithmetic: primality, factorization, p-adic valuation, prime streams."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

# Deterministic Miller-Rabin: the first 13 primes are a valid witness set for n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
_EXTRA_BASES = 24
_SEED = 0x5EED

TRIAL_LIMIT = 10**6
# smallest-prime-factor table covers [0, SPF_LIMIT)
SPF_LIMIT = 1 << 22


@dataclass(frozen=True)
class Factorization:
    value: int
    sign: int
    factors: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        prod = self.sign
        for p, e in self.factors.items():
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factorization does not multiply back to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(self.factors)

    def exponent(self, p: int) -> int:
        return self.factors.get(p, 0)

    def __iter__(self):
        return iter(self.factors.items())


def _check_nonzero(n: int) -> int:
    n = int(n)
    if n == 0:
        raise ValueError("zero has no factorization / finite valuation")
    return n


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(primes_up_to(TRIAL_LIMIT))


@lru_cache(maxsize=1)
def _spf_table() -> np.ndarray:
    spf = np.zeros(SPF_LIMIT, dtype=np.int32)
    spf[2::2] = 2
    for p in range(3, math.isqrt(SPF_LIMIT - 1) + 1, 2):
        if spf[p] == 0:
            block = spf[p * p :: 2 * p]
            block[block == 0] = p
            spf[p * p :: 2 * p] = block
    unset = spf == 0
    spf[unset] = np.arange(SPF_LIMIT, dtype=np.int32)[unset]
    return spf


def _miller_rabin(n: int, bases) -> bool:
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic below 3.3e24; above that the fixed witnesses are followed
    by a seeded batch of extra random bases.
    """
    n = int(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if n < _MR_DETERMINISTIC_LIMIT:
        return _miller_rabin(n, _MR_BASES)
    if not _miller_rabin(n, _MR_BASES):
        return False
    rng = random.Random(_SEED ^ (n & 0xFFFFFFFF))
    return _miller_rabin(n, [rng.randrange(2, n - 1) for _ in range(_EXTRA_BASES)])


def _brent(n: int, rng: random.Random) -> int:
    # Pollard rho with Brent's cycle detection; n odd composite.
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int], rng: random.Random) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m, rng)
        stack += [d, m // d]


def _factor_spf(n: int, out: dict[int, int]) -> None:
    spf = _spf_table()
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = out.get(p, 0) + e


@lru_cache(maxsize=1 << 16)
def _factor_abs(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    if n < SPF_LIMIT:
        _factor_spf(n, out)
        return tuple(sorted(out.items()))
    for i, p in enumerate(_small_primes()):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
            if n < SPF_LIMIT:
                _factor_spf(n, out)
                n = 1
                break
        # past the cheap prefix, stop trial division once the cofactor is prime
        if i % 256 == 255 and is_prime(n):
            break
    if n > 1:
        _split_large(n, out, random.Random(_SEED))
    return tuple(sorted(out.items()))


def factorize(n: int) -> Factorization:
    """Exact factorization of a nonzero integer, primes in ascending order.

    >>> factorize(12).factors
    {2: 2, 3: 1}
    >>> factorize(-1).sign, factorize(-1).factors
    (-1, {})
    """
    n = _check_nonzero(n)
    return Factorization(n, 1 if n > 0 else -1, dict(_factor_abs(abs(n))))


def valuation(p: int, n: int) -> int:
    """Largest e with p**e dividing n, by repeated exact division."""
    n = _check_nonzero(n)
    if p < 2:
        raise ValueError(f"{p} is not a prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def prime_support(n: int) -> tuple[int, ...]:
    """Ascending distinct primes dividing n (n nonzero)."""
    return tuple(p for p, _ in _factor_abs(abs(_check_nonzero(n))))


def primes_up_to(bound: int) -> Iterator[int]:
    """Yield every prime <= bound in increasing order (segmented sieve)."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    root = math.isqrt(bound)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if base[p]:
            base[p * p :: p] = False
    base_primes = np.flatnonzero(base)
    yield from (int(p) for p in base_primes)
    seg = 1 << 18
    lo = root + 1
    while lo <= bound:
        hi = min(lo + seg, bound + 1)
        mark = np.ones(hi - lo, dtype=bool)
        for p in base_primes:
            p = int(p)
            start = max(p * p, (lo + p - 1) // p * p)
            if start >= hi:
                if p * p >= hi:
                    break
                continue
            mark[start - lo :: p] = False
        yield from (int(x) + lo for x in np.flatnonzero(mark))
        lo = hi


def totients_up_to(bound: int) -> np.ndarray:
    """Euler phi for 0..bound as an int64 array (phi(0) = 0)."""
    phi = np.arange(bound + 1, dtype=np.int64)
    for p in range(2, bound + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def strip_primes(n: int, primes) -> int:
    """|n| with every factor from `primes` divided out."""
    n = abs(_check_nonzero(n))
    for p in primes:
        while n % p == 0:
            n //= p
    return n
