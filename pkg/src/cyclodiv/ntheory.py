"""Small-integer number theory: factoring by trial division, divisors, Moebius, inverses."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod


class NotCoprime(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization as ((p, e), ...) with p increasing."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass(frozen=True)
class FactoredIndex:
    """A positive integer together with its factorization."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"index must be positive, got {self.n}")
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                raise ValueError(f"bad factorization {self.factors} of {self.n}")
            last = p
        if prod(p ** e for p, e in self.factors) != self.n:
            raise ValueError(f"factors {self.factors} do not multiply to {self.n}")

    @classmethod
    def of(cls, n: int) -> FactoredIndex:
        return cls(n, factorize(n))

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def kernel(self) -> int:
        """Squarefree kernel: the product of the distinct primes dividing n."""
        return prod(self.primes)

    def divisors(self) -> list[int]:
        return divisors(self.n)

    @property
    def num_divisors(self) -> int:
        return prod(e + 1 for _, e in self.factors)

    def __int__(self) -> int:
        return self.n


def as_index(n: int | FactoredIndex) -> FactoredIndex:
    return n if isinstance(n, FactoredIndex) else FactoredIndex.of(n)


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n):
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def totient(n: int) -> int:
    return prod((p - 1) * p ** (e - 1) for p, e in factorize(n))


def inv_mod(a: int, m: int) -> int:
    """The inverse of a modulo m in [0, m); m = 1 gives 0."""
    if m == 1:
        return 0
    if gcd(a, m) != 1:
        raise NotCoprime(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def frac_mod(a: int, b: int, m: int) -> int:
    """{a/b; m}: the least non-negative m' with m'*b congruent to a modulo m."""
    return a * inv_mod(b, m) % m
