"""
Cyclotomic and inverse cyclotomic polynomials, plus the auxiliary families
(tau, sigma, g, g-bar, inclusion-exclusion) that describe divisors of x^n - 1.

Most constructors have a second, independent route so the two can be checked
against each other: :func:`phi` divides x^m - 1 by the smaller cyclotomic
factors, :func:`phi_mobius` multiplies and divides binomials x^d - 1, and
:func:`phi_binary_explicit` writes down Phi_pq coefficient by coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd, prod
from typing import Sequence

from .ntheory import FactoredIndex, NotCoprime, as_index, divisors, is_prime, mobius
from .polyring import (
    ONE,
    IntPoly,
    div_binomial,
    div_exact,
    mul,
    mul_binomial,
    negate_variable,
    reciprocal,
    substitute_power,
)

PHI_CACHE_SIZE = 4096


class NotPairwiseCoprime(ValueError):
    pass


def phi(n: int | FactoredIndex) -> IntPoly:
    """
    The n-th cyclotomic polynomial.

    >>> phi(21)
    IntPoly('x^12 - x^11 + x^9 - x^8 + x^6 - x^4 + x^3 - x + 1')
    """
    return _phi(int(as_index(n).n))


@lru_cache(maxsize=PHI_CACHE_SIZE)
def _phi(n: int) -> IntPoly:
    if n == 1:
        return IntPoly((-1, 1))
    idx = FactoredIndex.of(n)
    r = idx.kernel
    if r < n:
        # Phi_{pm}(x) = Phi_m(x^p) whenever p | m
        return substitute_power(_phi(r), n // r)
    if r == 2:
        return IntPoly((1, 1))
    if r % 2 == 0:
        return negate_variable(_phi(r // 2))
    f = IntPoly.binomial(r)
    for d in reversed(divisors(r)[:-1]):
        f = div_exact(f, _phi(d))
    return f


def psi(n: int | FactoredIndex) -> IntPoly:
    """
    The n-th inverse cyclotomic polynomial (x^n - 1)/Phi_n(x).

    >>> psi(15)
    IntPoly('x^7 + x^6 + x^5 - x^2 - x - 1')
    """
    return _psi(int(as_index(n).n))


@lru_cache(maxsize=PHI_CACHE_SIZE)
def _psi(n: int) -> IntPoly:
    if n == 1:
        return ONE
    r = FactoredIndex.of(n).kernel
    if r < n:
        return substitute_power(_psi(r), n // r)
    return div_exact(IntPoly.binomial(r), _phi(r))


def phi_mobius(n: int) -> IntPoly:
    """Phi_n as the product of (x^d - 1)^mu(n/d), using only binomial steps."""
    up = [d for d in divisors(n) if mobius(n // d) == 1]
    down = [d for d in divisors(n) if mobius(n // d) == -1]
    f = ONE
    for d in up:
        f = mul_binomial(f, d)
    for d in down:
        f = div_binomial(f, d)
    return f


@dataclass(frozen=True)
class BinaryDecomposition:
    """The unique rho, sigma >= 0 with 1 + pq = (rho + 1)p + (sigma + 1)q."""

    p: int
    q: int
    rho: int
    sigma: int

    def __post_init__(self):
        p, q = self.p, self.q
        if 1 + p * q != (self.rho + 1) * p + (self.sigma + 1) * q:
            raise ValueError(f"{self} does not decompose 1 + pq")
        if not (0 <= self.rho <= q - 1 and 0 <= self.sigma <= p - 1):
            raise ValueError(f"{self} out of range")

    @classmethod
    def of(cls, p: int, q: int) -> BinaryDecomposition:
        rho1 = pow(p, -1, q)
        sigma1 = (1 + p * q - rho1 * p) // q
        return cls(p, q, rho1 - 1, sigma1 - 1)


def phi_binary_explicit(p: int, q: int) -> IntPoly:
    """
    Phi_pq for distinct odd primes, one coefficient at a time, without any division.

    >>> phi_binary_explicit(3, 5)
    IntPoly('x^8 - x^7 + x^5 - x^4 + x^3 - x + 1')
    """
    if p == q or not (is_prime(p) and is_prime(q)):
        raise ValueError(f"need distinct primes, got {p}, {q}")
    if p == 2 or q == 2:
        raise ValueError("p = 2 or q = 2: use phi(2q) = phi(q)(-x)")
    bd = BinaryDecomposition.of(p, q)
    p_inv_q = pow(p, -1, q)
    q_inv_p = pow(q, -1, p)
    n = p * q
    coeffs = []
    for m in range(n):
        alpha = m * p_inv_q % q
        beta = m * q_inv_p % p
        s = alpha * p + beta * q
        if s == m and alpha <= bd.rho and beta <= bd.sigma:
            coeffs.append(1)
        elif s - n == m and alpha >= bd.rho + 1 and beta >= bd.sigma + 1:
            coeffs.append(-1)
        else:
            coeffs.append(0)
    return IntPoly(coeffs)


def tau(u: int, v: int) -> IntPoly:
    """(x - 1)(x^uv - 1) / ((x^u - 1)(x^v - 1)) for coprime u, v > 1."""
    if u < 2 or v < 2:
        raise ValueError("tau needs u, v > 1")
    if gcd(u, v) != 1:
        raise NotCoprime(f"gcd({u}, {v}) = {gcd(u, v)}")
    f = mul_binomial(mul_binomial(ONE, 1), u * v)
    return div_binomial(div_binomial(f, u), v)


def sigma(u: int, v: int) -> IntPoly:
    """
    ((x^u - 1)/(x - 1)) ((x^v - 1)/(x - 1)), written down from its ramp/plateau shape.

    >>> sigma(3, 5).coeffs
    (1, 2, 3, 3, 3, 2, 1)
    """
    if u < 1 or v < 1:
        raise ValueError("sigma needs u, v >= 1")
    u, v = min(u, v), max(u, v)
    out = []
    for j in range(u + v - 1):
        if j <= u - 1:
            out.append(j + 1)
        elif j <= v - 1:
            out.append(u)
        else:
            out.append(v + u - j - 1)
    return IntPoly(out)


def gabc(a: int, b: int, c: int) -> IntPoly:
    """(1 + ... + x^(a-1) + 2x^a + ... + 2x^(a+b-1)) (1 + ... + x^(c-1))."""
    if min(a, b, c) < 1:
        raise ValueError("g needs positive a, b, c")
    return mul(IntPoly([1] * a + [2] * b), IntPoly.ones(c))


def gbar(a: int, b: int, c: int) -> IntPoly:
    return reciprocal(gabc(a, b, c))


def _check_pairwise_coprime(rs: Sequence[int]) -> None:
    if any(r < 2 for r in rs):
        raise ValueError(f"parameters must exceed 1: {list(rs)}")
    for a, b in combinations(rs, 2):
        if gcd(a, b) != 1:
            raise NotPairwiseCoprime(f"gcd({a}, {b}) = {gcd(a, b)}")


def inclusion_exclusion_support(rs: Sequence[int]) -> list[int]:
    """The divisors d of prod(rs) sharing a factor with every r_i."""
    _check_pairwise_coprime(rs)
    return [d for d in divisors(prod(rs)) if all(gcd(d, r) > 1 for r in rs)]


def inclusion_exclusion(rs: Sequence[int]) -> IntPoly:
    """Q_rho as the product of Phi_d over its support."""
    f = ONE
    for d in inclusion_exclusion_support(rs):
        f = mul(f, phi(d))
    return f


def inclusion_exclusion_rational(rs: Sequence[int]) -> IntPoly:
    """Q_rho from its alternating product of binomials x^(n0 / r_S) - 1."""
    _check_pairwise_coprime(rs)
    n0 = prod(rs)
    up, down = [], []
    for k in range(len(rs) + 1):
        for sub in combinations(rs, k):
            (up if k % 2 == 0 else down).append(n0 // prod(sub))
    f = ONE
    for d in up:
        f = mul_binomial(f, d)
    for d in down:
        f = div_binomial(f, d)
    return f
