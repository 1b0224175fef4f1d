"""
Coefficient-set analytics for divisors of x^n - 1.

Three kinds of things live here:

* verdicts on a single polynomial (flat, coefficient convex, strongly convex);
* closed-form predictions of C(f) for the monic divisors of x^(p^e) - 1,
  x^(pq) - 1 and x^(p^2 q) - 1, and the atlas that checks them against
  brute force;
* aggregate maxima over all divisors of x^n - 1 (B, B+, B-, B', C) and the
  flat-divisor count.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .lattice import DEFAULT_ENUMERATION_BUDGET, enumerate_divisors, p2q_shape
from .ntheory import NotCoprime, as_index, frac_mod, is_prime
from .polyring import IntPoly, coeff_set, height, height_minus, height_plus


# ------------------------------------------------------------------ verdicts

@dataclass(frozen=True)
class ConvexityVerdict:
    is_flat: bool
    is_convex: bool
    is_strongly_convex: bool
    missing: tuple[int, ...]


def classify(f: IntPoly) -> ConvexityVerdict:
    """
    >>> classify(IntPoly([-1, 1]))
    ConvexityVerdict(is_flat=True, is_convex=True, is_strongly_convex=False, missing=(0,))
    """
    c = coeff_set(f)
    lo, hi = c.lo, c.hi
    lo0, hi0 = min(lo, 0), max(hi, 0)
    convex = hi0 - lo0 + 1 == len(c) + (0 not in c)
    return ConvexityVerdict(
        is_flat=lo >= -1 and hi <= 1,
        is_convex=convex,
        # C itself must be the interval C_0, so {2} is not strongly convex
        is_strongly_convex=convex and c.is_interval(),
        missing=c.missing(),
    )


# --------------------------------------------------------------- predictions

@dataclass(frozen=True)
class Prediction:
    """An integer interval, optionally without 0, unless an explicit set overrides it."""

    interval: tuple[int, int]
    remove_zero: bool = False
    override_set: tuple[int, ...] | None = None

    def values(self) -> tuple[int, ...]:
        if self.override_set is not None:
            return tuple(sorted(self.override_set))
        lo, hi = self.interval
        return tuple(v for v in range(lo, hi + 1) if not (self.remove_zero and v == 0))


@dataclass(frozen=True)
class PQParams:
    p: int
    q: int
    p_star: int = field(init=False)
    alpha: int = field(init=False)
    beta: int = field(init=False)
    gamma: int = field(init=False)

    def __post_init__(self):
        p, q = self.p, self.q
        if p == q or not (is_prime(p) and is_prime(q)):
            raise ValueError(f"need distinct primes, got {p}, {q}")
        ps = pow(p, -1, q)
        set_ = object.__setattr__
        set_(self, "p_star", ps)
        set_(self, "alpha", min((q - 1) // p + 1, p))
        set_(self, "beta", min(p, q, q % (p * p), p * p - q % (p * p)))
        set_(self, "gamma", min(p, ps) + min(p, q - ps))


_ONE = frozenset({0, 2, 4, 14, 18, 62})
_ZERO_ONE = frozenset({10, 12, 16, 26, 44, 46, 48, 50, 52, 58, 60})
_TWO = frozenset({9, 35, 39, 41, 43, 57})


def _p2q_interval(pp: PQParams, k: int) -> tuple[int, int]:
    p, q = pp.p, pp.q
    m = min(p, q)
    if k in _ONE:
        return 1, 1
    if k in _ZERO_ONE:
        return 0, 1
    if k in _TWO:
        return -2, 2
    if k in (6, 30):
        return 1, m
    if k in (28, 54):
        return 0, m
    if k == 20:
        return min(q // p, 1), min((q - 1) // p + 1, p)
    if k == 22:
        return 1, min(p * p, q)
    if k == 24:
        return -min(p, q - pp.p_star), min(p, pp.p_star)
    if k == 25:
        return -pp.gamma, pp.gamma
    if k == 29:
        return -m, m
    if k == 38:
        return -pp.beta, m
    return -1, 1


def _p2q_drops_zero(pp: PQParams, k: int) -> bool:
    p, q = pp.p, pp.q
    m = min(p, q)
    return (k == 1
            or (k in (13, 17, 29, 33, 61) and p == 2)
            or (k in (11, 40, 43, 59) and q == 2)
            or (k in (8, 24, 34) and m == 2)
            or (k == 9 and m <= 3)
            or (k == 25 and p <= 3 and q != 2)
            or (k == 38 and p == 2 and q == 3)
            or (k == 41 and q <= 3))


def predict_p2q(params: PQParams, k: int) -> Prediction:
    """
    Predicted C(f_k) for the monic divisor f_k of x^(p^2 q) - 1.

    >>> predict_p2q(PQParams(5, 7), 22).values()
    (1, 2, 3, 4, 5, 6, 7)
    >>> predict_p2q(PQParams(3, 2), 38).values()
    (-2, 0, 1, 2)
    """
    if not 0 <= k <= 63:
        raise ValueError(f"k = {k} outside [0, 63]")
    if k == 38 and params.q == 2:
        return Prediction((-2, 2), override_set=(-2, 0, 1, 2))
    return Prediction(_p2q_interval(params, k), _p2q_drops_zero(params, k))


def predict_pq(p: int, q: int, mask: int) -> Prediction:
    """
    Predicted C(f) for a monic divisor of x^(pq) - 1; mask bits select Phi_1, Phi_p, Phi_q, Phi_pq.

    >>> predict_pq(3, 5, 0b1001).values()
    (-2, -1, 1, 2)
    """
    if not 0 <= mask < 16:
        raise ValueError(f"mask {mask} outside [0, 15]")
    m = min(p, q)
    if mask == 0b1001:
        return Prediction((-2, 2), remove_zero=m <= 3)
    if mask == 0b0110:
        return Prediction((1, m))
    return predict_p2q(PQParams(p, q), mask)


def predict_prime_power(p: int, e: int, mask: int) -> Prediction:
    """
    Predicted C(g) for the monic divisor g of x^(p^e) - 1 whose mask selects Phi_(p^j) by bit j.

    >>> predict_prime_power(2, 2, 0b110).values()
    (1,)
    >>> predict_prime_power(2, 2, 0b101).values()
    (-1, 1)
    """
    if not is_prime(p) or e < 1:
        raise ValueError(f"bad prime power {p}^{e}")
    if not 0 <= mask < 1 << (e + 1):
        raise ValueError(f"mask {mask} out of range")
    for j in range(e + 1):
        # (x^(p^j) - 1)/(x - 1) = Phi_p ... Phi_(p^j)
        if mask == (1 << (j + 1)) - 2:
            return Prediction((1, 1))
    if mask == 1:
        # x - 1 alone: its zero set in [0, deg] is empty
        return Prediction((-1, 1), remove_zero=True)
    if p == 2:
        for j in range(2, e + 1):
            # (x - 1)(x^(2^j) - 1)/(x^2 - 1) = Phi_1 Phi_4 ... Phi_(2^j)
            if mask == 1 + (1 << (j + 1)) - 4:
                return Prediction((-1, 1), remove_zero=True)
    return Prediction((-1, 1)) if mask & 1 else Prediction((0, 1))


def predict(n: int, mask: int) -> Prediction | None:
    """Closed-form prediction for mask over the canonical divisor order of n, when one is known."""
    idx = as_index(n)
    f = idx.factors
    if len(f) == 1:
        return predict_prime_power(f[0][0], f[0][1], mask)
    if len(f) == 2 and f[0][1] == f[1][1] == 1:
        return predict_pq(f[0][0], f[1][0], mask)
    shape = p2q_shape(idx)
    if shape is not None:
        return predict_p2q(PQParams(*shape), mask)
    return None


# --------------------------------------------------------------------- atlas

@dataclass(frozen=True)
class AtlasRow:
    k: int
    predicted: tuple[int, ...]
    computed: tuple[int, ...]
    match: bool
    height: int
    height_plus: int
    height_minus: int
    verdict: ConvexityVerdict


@dataclass(frozen=True)
class AtlasReport:
    p: int
    q: int
    rows: tuple[AtlasRow, ...]

    def __post_init__(self):
        if len(self.rows) != 64:
            raise ValueError(f"atlas for ({self.p}, {self.q}) has {len(self.rows)} rows")

    @property
    def n(self) -> int:
        return self.p * self.p * self.q

    @property
    def mismatches(self) -> list[AtlasRow]:
        return [r for r in self.rows if not r.match]


def build_atlas(p: int, q: int) -> AtlasReport:
    """Predicted against computed C(f_k) for all 64 divisors of x^(p^2 q) - 1."""
    params = PQParams(p, q)
    rows = []
    for di, f in enumerate_divisors(p * p * q):
        k = di.mask
        computed = coeff_set(f).values
        predicted = predict_p2q(params, k).values()
        hp, hm = height_plus(f), height_minus(f)
        rows.append(AtlasRow(k, predicted, computed, predicted == computed,
                             max(hp, -hm), hp, hm, classify(f)))
    return AtlasReport(p, q, tuple(rows))


# -------------------------------------------------------- aggregate heights

@dataclass(frozen=True)
class HeightProfile:
    """Maxima over all monic divisors of x^n - 1 (the primed ones over balanced divisors only)."""

    n: int
    b: int
    b_plus: int
    b_minus: int
    b_prime: int
    balanced_c: int
    flat_count: int
    divisor_count: int


@lru_cache(maxsize=8192)
def height_profile(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> HeightProfile:
    b = b_plus = b_prime = c_bal = flat = total = 0
    lowest = 0
    for _, f in enumerate_divisors(n, budget):
        total += 1
        vals = set(f.coeffs)
        hp, hm = max(vals), min(vals)
        h = max(hp, -hm)
        b = max(b, h)
        b_plus = max(b_plus, hp)
        lowest = min(lowest, hm)
        if hm >= -1 and hp <= 1:
            flat += 1
        if hp > 0 and hm < 0:
            b_prime = max(b_prime, h)
            c_bal = max(c_bal, len(vals | {0}) - 1)
    return HeightProfile(n, b, b_plus, -lowest, b_prime, c_bal, flat, total)


def big_b(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    """B(n): the largest height of a divisor of x^n - 1."""
    return height_profile(n, budget).b


def big_b_plus(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    return height_profile(n, budget).b_plus


def big_b_minus(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    """B-(n): minus the smallest coefficient over all divisors of x^n - 1."""
    return height_profile(n, budget).b_minus


def big_b_prime(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    """B'(n): B(n) restricted to divisors with coefficients of both signs."""
    return height_profile(n, budget).b_prime


def balanced_c(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    """C(n) = max |C_0(f)| - 1 over balanced divisors f."""
    return height_profile(n, budget).balanced_c


def count_flat_divisors(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    return height_profile(n, budget).flat_count


def closed_form_heights(n: int) -> dict[str, int] | None:
    """Known closed forms for B and friends when n is p^e, pq or p^2 q."""
    idx = as_index(n)
    f = idx.factors
    if len(f) == 1:
        return {"b": 1}
    if len(f) == 2 and f[0][1] == f[1][1] == 1:
        p, q = idx.primes
        return {"b": min(p, q), "b_prime": 2, "balanced_c": 4}
    shape = p2q_shape(idx)
    if shape is not None:
        pp = PQParams(*shape)
        p, q = shape
        return {"b": min(p * p, q), "b_plus": min(p * p, q), "b_minus": pp.gamma,
                "b_prime": pp.gamma, "balanced_c": 2 * pp.gamma}
    return None


# --------------------------------------------------------- modular identities

def decker_values(p: int, q: int) -> tuple[int, int, int, int]:
    """(r1, s1, r2, s2) for the distinct primes p, q."""
    pp = p * p
    r1 = frac_mod(1, q, pp) * q + frac_mod(1, p, q) * pp
    s1 = frac_mod(-1, q, p) * p * q + frac_mod(-1, pp, q) * pp + p + 1
    r2 = frac_mod(-1, q, pp) * q + frac_mod(-1, p, q) * pp + p + 1
    s2 = frac_mod(1, q, p) * p * q + frac_mod(1, pp, q) * pp
    return r1, s1, r2, s2


def mod_inverse_reciprocity(a: int, b: int) -> bool:
    """
    Check gcd(a - {1/b;a}, {1/a;b}) = gcd({1/b;a}, b - {1/a;b}) = 1, and for
    prime a, b also r1 = s1 and r2 = s2 in both orders.

    >>> mod_inverse_reciprocity(3, 5)
    True
    """
    if a < 2 or b < 2:
        raise ValueError("need a, b > 1")
    if gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) = {gcd(a, b)}")
    x, y = frac_mod(1, b, a), frac_mod(1, a, b)
    ok = gcd(a - x, y) == 1 and gcd(x, b - y) == 1
    if is_prime(a) and is_prime(b):
        for p, q in ((a, b), (b, a)):
            r1, s1, r2, s2 = decker_values(p, q)
            ok = ok and r1 == s1 and r2 == s2
    return ok


def reciprocity_parity(a: int, b: int) -> bool:
    """{1/a;b} and {1/b;a} have the same parity (a, b odd and coprime)."""
    if a % 2 == 0 or b % 2 == 0:
        raise ValueError("need odd a, b")
    return frac_mod(1, a, b) % 2 == frac_mod(1, b, a) % 2


def f42_degree(p: int, q: int) -> int:
    return p * p * (q - 1) + p - q


def f43_two_positions(p: int, q: int) -> tuple[int, int]:
    """
    The position k_j where f_43 = (x - 1) Phi_p Phi_pq Phi_(p^2 q) has coefficient 2,
    and the mirrored position deg(f_42) - k_j + 1 carrying -2.

    >>> f43_two_positions(7, 3)
    (7, 96)
    """
    if p == q or not (is_prime(p) and is_prime(q)):
        raise ValueError(f"need distinct primes, got {p}, {q}")
    pp, n = p * p, p * p * q
    deg = f42_degree(p, q)
    k1 = 1 + frac_mod(p - 1, pp, q) * pp
    k2 = 1 + frac_mod(p - 1, q, pp) * q
    r1, s1, r2, s2 = decker_values(p, q)
    first = 1 < k1 <= deg and r1 > n and s1 > n
    second = k2 <= deg and r2 > n and s2 > n
    if first == second:
        raise ArithmeticError(f"conditions hold for {'both' if first else 'neither'} of k1={k1}, k2={k2}")
    k = k1 if first else k2
    return k, deg - k + 1
