"""
Monic divisors of x^n - 1.

Every monic divisor is a product of distinct cyclotomic factors Phi_d with d | n,
so a divisor is named by a bit mask over the divisors of n.  For n = p^2 q the
bit order is Phi_1, Phi_p, Phi_q, Phi_pq, Phi_{p^2}, Phi_{p^2 q}, which makes
the mask coincide with the usual index k of f_k.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .cyclotomic import phi
from .ntheory import FactoredIndex, as_index, is_prime
from .polyring import ONE, IntPoly, mul

DEFAULT_ENUMERATION_BUDGET = 2 ** 20


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, n: int, num_divisors: int, budget: int):
        self.n = n
        self.num_divisors = num_divisors
        self.budget = budget
        super().__init__(
            f"x^{n} - 1 has 2^{num_divisors} monic divisors (d({n}) = {num_divisors}), "
            f"over the budget of {budget}")


def p2q_shape(n: FactoredIndex) -> tuple[int, int] | None:
    """(p, q) when n = p^2 q with p != q, else None."""
    if len(n.factors) != 2:
        return None
    (a, ea), (b, eb) = n.factors
    if (ea, eb) == (2, 1):
        return a, b
    if (ea, eb) == (1, 2):
        return b, a
    return None


def canonical_divisor_order(n: int | FactoredIndex) -> tuple[int, ...]:
    """
    Divisors of n in mask-bit order.

    >>> canonical_divisor_order(12), canonical_divisor_order(15)
    ((1, 2, 3, 6, 4, 12), (1, 3, 5, 15))
    """
    idx = as_index(n)
    shape = p2q_shape(idx)
    if shape is None:
        return tuple(idx.divisors())
    p, q = shape
    return (1, p, q, p * q, p * p, p * p * q)


@dataclass(frozen=True)
class DivisorIndex:
    n: FactoredIndex
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < 1 << self.n.num_divisors:
            raise ValueError(f"mask {self.mask} out of range for n = {self.n.n}")

    @classmethod
    def of(cls, n: int | FactoredIndex, mask: int) -> DivisorIndex:
        return cls(as_index(n), mask)

    @property
    def selected(self) -> tuple[int, ...]:
        """The d whose Phi_d is a factor, in bit order."""
        order = canonical_divisor_order(self.n)
        return tuple(d for j, d in enumerate(order) if self.mask >> j & 1)

    def complement(self) -> DivisorIndex:
        return DivisorIndex(self.n, ((1 << self.n.num_divisors) - 1) ^ self.mask)

    def is_full(self) -> bool:
        return self.mask == (1 << self.n.num_divisors) - 1


@dataclass(frozen=True)
class FkIndex:
    """f_k for x^(p^2 q) - 1; bit j of k selects the j-th factor of Phi_1, Phi_p, Phi_q, Phi_pq, Phi_p^2, Phi_p^2q."""

    p: int
    q: int
    k: int

    def __post_init__(self):
        if self.p == self.q or not (is_prime(self.p) and is_prime(self.q)):
            raise ValueError(f"need distinct primes, got {self.p}, {self.q}")
        if not 0 <= self.k <= 63:
            raise ValueError(f"k = {self.k} outside [0, 63]")

    @property
    def n(self) -> int:
        return self.p * self.p * self.q

    def to_divisor_index(self) -> DivisorIndex:
        return DivisorIndex.of(self.n, self.k)


def product_of_phis(ds) -> IntPoly:
    # smallest factors first keeps the early products cheap
    f = ONE
    for d in sorted(ds, key=lambda d: len(phi(d))):
        f = mul(f, phi(d))
    return f


def materialize(d: DivisorIndex) -> IntPoly:
    """The divisor named by ``d``; the empty mask gives 1."""
    return product_of_phis(d.selected)


def fk(i: FkIndex) -> IntPoly:
    return materialize(i.to_divisor_index())


def enumerate_divisors(n: int | FactoredIndex,
                       budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[tuple[DivisorIndex, IntPoly]]:
    """
    Yield every monic divisor of x^n - 1 once, in increasing mask order.

    Each divisor is one fresh product low * high, where low and high range over
    the products of the first and last halves of the cyclotomic factors.  The
    two half tables (2 * 2^(d(n)/2) entries) are the only state kept.
    """
    idx = as_index(n)
    count = idx.num_divisors
    if 1 << count > budget:
        raise EnumerationBudgetExceeded(idx.n, count, budget)
    order = canonical_divisor_order(idx)
    h = count // 2
    low = [product_of_phis(_bits(order[:h], m)) for m in range(1 << h)]
    high = [product_of_phis(_bits(order[h:], m)) for m in range(1 << (count - h))]
    lowmask = (1 << h) - 1
    for mask in range(1 << count):
        yield DivisorIndex(idx, mask), mul(low[mask & lowmask], high[mask >> h])


def _bits(ds, m: int) -> list[int]:
    return [d for j, d in enumerate(ds) if m >> j & 1]
