"""Exact integer arithmetic primitives: factorization, divisor sum,
p-adic valuation, multiplicative order, primality, Omega.

Everything here is pure and exact at arbitrary precision; no floats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, isqrt

# Deterministic Miller-Rabin witness set for n < 2^64
# (Sinclair's 7-base set, verified in the literature).
_MR_BASES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_U64 = 1 << 64

# Strong-probable-prime rounds above 2^64; error probability < 4^-64.
_SPRP_ROUNDS = 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _mr_round(n: int, a: int) -> bool:
    """One Miller-Rabin round; True means 'probably prime' for base a."""
    a %= n
    if a == 0:
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, proof: bool = False) -> bool:
    """Primality test.

    Below 2^64 the result is deterministic (fixed Miller-Rabin witness
    set). Above 2^64 the default is a strong probable-prime test with
    error probability below 4^-64; pass proof=True to demand a
    Pocklington-Lehmer certificate instead (raises if the proof attempt
    stalls on factoring n-1).
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _U64:
        return all(_mr_round(n, a) for a in _MR_BASES_64)
    if proof:
        return _pocklington(n)
    rng = random.Random(n)
    return all(_mr_round(n, rng.randrange(2, n - 1)) for _ in range(_SPRP_ROUNDS))


def _pocklington(n: int) -> bool:
    """Pocklington-Lehmer proof via full factorization of n-1."""
    if not is_prime(n):  # cheap rejection before the expensive part
        return False
    primes = set(factor(n - 1).primes())
    for q in primes:
        for a in range(2, 1000):
            if pow(a, n - 1, n) != 1:
                return False
            if gcd(pow(a, (n - 1) // q, n) - 1, n) == 1:
                break
        else:
            raise ValueError(f"cannot certify primality of {n}: no witness for factor {q}")
    return True


@dataclass(frozen=True)
class Factorization:
    """Sorted multiset of (prime, exponent) pairs for a positive integer."""

    factors: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        prev = 0
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be positive")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p

    @property
    def n(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


_TRIAL_BOUND = 10_000

# Lazy smallest-prime-factor sieve for fast repeated factoring of small n.
_SPF_LIMIT = 1 << 20
_spf: list[int] | None = None


def _spf_sieve() -> list[int]:
    global _spf
    if _spf is None:
        spf = list(range(_SPF_LIMIT))
        for i in range(2, isqrt(_SPF_LIMIT) + 1):
            if spf[i] == i:
                for j in range(i * i, _SPF_LIMIT, i):
                    if spf[j] == j:
                        spf[j] = i
        _spf = spf
    return _spf


def _brent_rho(n: int) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
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
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factor(n: int) -> Factorization:
    """Full prime factorization; factor(1) is the empty product."""
    if n < 1:
        raise ValueError("factor requires n >= 1")
    counts: dict[int, int] = {}

    def add(p: int, e: int = 1):
        counts[p] = counts.get(p, 0) + e

    if n < _SPF_LIMIT:
        spf = _spf_sieve()
        while n > 1:
            p = spf[n]
            while n % p == 0:
                n //= p
                add(p)
    else:
        for p in (2, 3, 5):
            while n % p == 0:
                n //= p
                add(p)
        d = 7
        wheel = (4, 2, 4, 2, 4, 6, 2, 6)
        i = 0
        while d <= _TRIAL_BOUND and d * d <= n:
            while n % d == 0:
                n //= d
                add(d)
            d += wheel[i]
            i = (i + 1) % 8
        stack = [n] if n > 1 else []
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                add(m)
                continue
            root = isqrt(m)
            if root * root == m:
                stack += [root, root]
                continue
            g = _brent_rho(m)
            stack += [g, m // g]
    return Factorization(tuple(sorted(counts.items())))


def sigma(f: Factorization) -> int:
    """Sum of divisors, computed multiplicatively via exact geometric sums."""
    out = 1
    for p, e in f:
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def sigma_of(n: int) -> int:
    return sigma(factor(n))


_SIGMA_ENUM_CAP = 10**8


def sigma_by_divisors(n: int) -> int:
    """Independent sigma oracle: direct divisor enumeration, O(sqrt n)."""
    if not 1 <= n <= _SIGMA_ENUM_CAP:
        raise ValueError(f"sigma_by_divisors accepts 1 <= n <= {_SIGMA_ENUM_CAP}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
        d += 1
    return total


def nu(p: int, n: int) -> int:
    """p-adic valuation: largest j with p^j | n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    j = 0
    while n % p == 0:
        n //= p
        j += 1
    return j


def ord_mod(q: int, m: int) -> int:
    """Multiplicative order of m modulo prime q; divides q-1."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if m % q == 0:
        raise ValueError(f"{m} is divisible by {q}; order undefined")
    d = q - 1
    for p in factor(d).primes():
        while d % p == 0 and pow(m, d // p, q) == 1:
            d //= p
    return d


def big_omega(n: int) -> int:
    """Number of prime factors counted with multiplicity."""
    if n < 1:
        raise ValueError("big_omega requires n >= 1")
    return factor(n).big_omega()
