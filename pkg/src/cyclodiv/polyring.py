"""
Exact dense arithmetic in Z[x].

A polynomial is stored as a tuple of Python integers, lowest degree first, with
no trailing zeros; the zero polynomial is the empty tuple.  Large products go
through Kronecker substitution: both operands are packed into one big integer,
multiplied (by GMP when ``gmpy2`` is importable), and unpacked again.  Packing
and unpacking use numpy while every coefficient fits a machine word and fall
back to plain Python integers otherwise.
"""
from __future__ import annotations

import operator
import sys
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Mapping

import numpy as np

try:
    import gmpy2
except ImportError:  # pragma: no cover - exercised only without gmpy2
    gmpy2 = None

# schoolbook while len(f) * len(g) <= MUL_THRESHOLD**2; measured crossover with
# Kronecker packing on CPython 3.10 + GMP
MUL_THRESHOLD = 16

_LITTLE = sys.byteorder == "little"


class NotDivisible(ArithmeticError):
    """Raised by :func:`div_exact` when the divisor leaves a remainder."""

    def __init__(self, index: int, value: int):
        self.index = index
        self.value = value
        super().__init__(f"nonzero remainder coefficient {value} at x^{index}")


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = tuple(coeffs)
    end = len(c)
    while end and c[end - 1] == 0:
        end -= 1
    return c if end == len(c) else c[:end]


@dataclass(frozen=True, init=False, repr=False)
class IntPoly:
    """
    A polynomial with integer coefficients, ``coeffs[j]`` being the coefficient of x^j.

    >>> IntPoly([1, -2, 0, 1])
    IntPoly('x^3 - 2x + 1')
    >>> IntPoly([0, 0]).is_zero()
    True
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> IntPoly:
        # caller guarantees a stripped tuple of ints
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> IntPoly:
        """Build from a sparse ``{exponent: coefficient}`` mapping."""
        if not terms:
            return ZERO
        out = [0] * (max(terms) + 1)
        for j, c in terms.items():
            if j < 0:
                raise ValueError(f"negative exponent {j}")
            out[j] += c
        return cls(out)

    @classmethod
    def monomial(cls, j: int, c: int = 1) -> IntPoly:
        return cls.from_terms({j: c})

    @classmethod
    def binomial(cls, d: int) -> IntPoly:
        """x^d - 1."""
        if d < 1:
            raise ValueError("x^d - 1 needs d >= 1")
        return cls._raw((-1,) + (0,) * (d - 1) + (1,))

    @classmethod
    def ones(cls, n: int) -> IntPoly:
        """1 + x + ... + x^(n-1)."""
        return cls._raw((1,) * n)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no degree")
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, j: int) -> int:
        """Coefficient of x^j (zero beyond the degree)."""
        if j < 0:
            raise IndexError(j)
        return self.coeffs[j] if j < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPoly) -> IntPoly:
        return add(self, other)

    def __sub__(self, other: IntPoly) -> IntPoly:
        return sub(self, other)

    def __neg__(self) -> IntPoly:
        return IntPoly._raw(tuple(-c for c in self.coeffs))

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"IntPoly('{format_sparse(self)}')"

    def __str__(self) -> str:
        return format_sparse(self)


ZERO = IntPoly._raw(())
ONE = IntPoly._raw((1,))
X = IntPoly._raw((0, 1))


@dataclass(frozen=True)
class CoeffSet:
    """
    A finite set of coefficients, stored sorted.

    ``includes_zero_pad`` is True for C_0(f), the coefficient set with 0 adjoined.
    """

    values: tuple[int, ...]
    includes_zero_pad: bool = False

    @classmethod
    def of(cls, values: Iterable[int], includes_zero_pad: bool = False) -> CoeffSet:
        s = set(values)
        if includes_zero_pad:
            s.add(0)
        return cls(tuple(sorted(s)), includes_zero_pad)

    @property
    def lo(self) -> int:
        return self.values[0]

    @property
    def hi(self) -> int:
        return self.values[-1]

    def __contains__(self, v: int) -> bool:
        return v in self.as_set()

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.values)

    def is_interval(self) -> bool:
        return bool(self.values) and self.hi - self.lo + 1 == len(self.values)

    def missing(self) -> tuple[int, ...]:
        """Integers strictly between the extremes that do not occur."""
        if not self.values:
            return ()
        present = self.as_set()
        return tuple(v for v in range(self.lo, self.hi + 1) if v not in present)

    def __str__(self) -> str:
        return format_set(self.values)


def format_set(values: Iterable[int]) -> str:
    """
    Render a coefficient set as an interval ``[a,b]`` when it is one.

    >>> format_set([-1, 0, 1]), format_set([-1, 1]), format_set([3])
    ('[-1,1]', '{-1,1}', '{3}')
    """
    v = sorted(set(values))
    if len(v) > 1 and v[-1] - v[0] + 1 == len(v):
        return f"[{v[0]},{v[-1]}]"
    return "{" + ",".join(map(str, v)) + "}"


def format_sparse(f: IntPoly, var: str = "x") -> str:
    """
    Render highest degree first, omitting zero terms.

    >>> format_sparse(IntPoly([1, -1, 0, 1]))
    'x^3 - x + 1'
    >>> format_sparse(IntPoly([0, -2]))
    '-2x'
    """
    if f.is_zero():
        return "0"
    parts = []
    for j in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[j]
        if c == 0:
            continue
        mono = "" if j == 0 else var if j == 1 else f"{var}^{j}"
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mono) else ""
        body += mono
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------- ring operations

def add(f: IntPoly, g: IntPoly) -> IntPoly:
    a, b = f.coeffs, g.coeffs
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return f if a is f.coeffs else g
    out = [x + y for x, y in zip(a, b)]
    out.extend(a[len(b):])
    return IntPoly._raw(_strip(out))


def sub(f: IntPoly, g: IntPoly) -> IntPoly:
    return add(f, -g)


def scale(f: IntPoly, c: int) -> IntPoly:
    if c == 0:
        return ZERO
    return IntPoly._raw(tuple(c * a for a in f.coeffs))


def shift(f: IntPoly, k: int) -> IntPoly:
    """x^k f(x)."""
    if f.is_zero() or k == 0:
        return f
    return IntPoly._raw((0,) * k + f.coeffs)


def mul(f: IntPoly, g: IntPoly) -> IntPoly:
    a, b = f.coeffs, g.coeffs
    if not a or not b:
        return ZERO
    if len(a) * len(b) <= MUL_THRESHOLD * MUL_THRESHOLD:
        return IntPoly._raw(_mul_schoolbook(a, b))
    return IntPoly._raw(_mul_kronecker(a, b))


def _mul_schoolbook(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) > len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    nb = len(b)
    for i, c in enumerate(a):
        if c == 0:
            continue
        if c == 1:
            out[i:i + nb] = [x + y for x, y in zip(out[i:i + nb], b)]
        elif c == -1:
            out[i:i + nb] = [x - y for x, y in zip(out[i:i + nb], b)]
        else:
            out[i:i + nb] = [x + c * y for x, y in zip(out[i:i + nb], b)]
    return tuple(out)


def _height_of(a: tuple[int, ...]) -> int:
    return max(max(a), -min(a))


def _offset_pattern(nbytes: int, length: int) -> bytes:
    # digit value 2^(8*nbytes - 1), repeated, little endian
    return (b"\x00" * (nbytes - 1) + b"\x80") * length


def _to_big(raw: bytes):
    if gmpy2 is not None:
        return gmpy2.mpz.from_bytes(raw, "little")
    return int.from_bytes(raw, "little")


def _pack(a: tuple[int, ...], nbytes: int):
    """Return sum(a[i] * 2^(8*nbytes*i)) as a big integer; requires |a[i]| < 2^(8*nbytes-1)."""
    off = 1 << (8 * nbytes - 1)
    if nbytes <= 8 and _LITTLE:
        arr = np.array(a, dtype=np.int64).astype(np.uint64)
        arr += np.uint64(off)
        raw = arr.view(np.uint8).reshape(len(a), 8)[:, :nbytes].tobytes()
    else:
        raw = b"".join((c + off).to_bytes(nbytes, "little") for c in a)
    return _to_big(raw) - _to_big(_offset_pattern(nbytes, len(a)))


def _unpack(value, nbytes: int, length: int) -> tuple[int, ...] | None:
    """Inverse of :func:`_pack`; None when ``value`` has no such representation."""
    off = 1 << (8 * nbytes - 1)
    shifted = value + _to_big(_offset_pattern(nbytes, length))
    if shifted < 0:
        return None
    try:
        raw = shifted.to_bytes(nbytes * length, "little")
    except OverflowError:
        return None
    if nbytes <= 8 and _LITTLE:
        digits = np.frombuffer(raw, dtype=np.uint8).reshape(length, nbytes)
        if nbytes < 8:
            padded = np.zeros((length, 8), dtype=np.uint8)
            padded[:, :nbytes] = digits
            digits = padded
        words = np.ascontiguousarray(digits).view(np.uint64).reshape(length)
        words = words - np.uint64(off)
        return tuple(words.view(np.int64).tolist())
    return tuple(int.from_bytes(raw[i:i + nbytes], "little") - off
                 for i in range(0, nbytes * length, nbytes))


def _bytes_for(bound: int) -> int:
    # smallest byte width whose signed digit range covers |c| <= bound
    return bound.bit_length() // 8 + 1


def _mul_kronecker(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    bound = min(len(a), len(b)) * _height_of(a) * _height_of(b)
    nbytes = _bytes_for(bound)
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    out = _unpack(prod, nbytes, len(a) + len(b) - 1)
    assert out is not None, "Kronecker digit width too small"
    return out


def div_exact(f: IntPoly, g: IntPoly) -> IntPoly:
    """
    Quotient q with q*g == f.

    Raises :class:`NotDivisible` naming the first remainder coefficient found
    nonzero, scanning from the top as long division does.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return ZERO
    a, b = f.coeffs, g.coeffs
    if len(a) < len(b):
        raise NotDivisible(len(a) - 1, a[-1])
    if len(b) == 1:
        return IntPoly._raw(_long_div(a, b))
    nnz = sum(1 for c in b if c)
    if nnz * (len(a) - len(b) + 1) > 4096 and len(b) >= 8:
        q = _div_kronecker(a, b)
        if q is not None:
            return IntPoly._raw(q)
    return IntPoly._raw(_long_div(a, b))


def _long_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    lc = b[-1]
    db = len(b) - 1
    dq = len(a) - len(b)
    rem = list(a)
    q = [0] * (dq + 1)
    terms = [(j, c) for j, c in enumerate(b[:-1]) if c]
    for i in range(dq, -1, -1):
        c = rem[i + db]
        if c == 0:
            continue
        qi, r = divmod(c, lc)
        if r:
            raise NotDivisible(i + db, c)
        q[i] = qi
        rem[i + db] = 0
        for j, bc in terms:
            rem[i + j] -= qi * bc
    for j in range(db - 1, -1, -1):
        if rem[j]:
            raise NotDivisible(j, rem[j])
    return tuple(q)


def _div_kronecker(a: tuple[int, ...], b: tuple[int, ...], tries: int = 3) -> tuple[int, ...] | None:
    """Exact quotient via packed integers, verified by multiplying back; None if undecided."""
    nbytes = _bytes_for(max(_height_of(a), _height_of(b))) + 2
    qlen = len(a) - len(b) + 1
    for _ in range(tries):
        num, den = _pack(a, nbytes), _pack(b, nbytes)
        if gmpy2 is not None:
            qv, r = gmpy2.f_divmod(num, den)
        else:
            qv, r = divmod(num, den)
        if r != 0:
            return None
        q = _unpack(qv, nbytes, qlen)
        if q is not None and q[-1] != 0 and _mul_kronecker(q, b) == a:
            return q
        nbytes *= 2
    return None


# ------------------------------------------------------------- substitutions

def substitute_power(f: IntPoly, p: int) -> IntPoly:
    """f(x^p)."""
    if p < 1:
        raise ValueError("substitute_power needs p >= 1")
    if p == 1 or len(f.coeffs) <= 1:
        return f
    out = [0] * ((len(f.coeffs) - 1) * p + 1)
    out[::p] = f.coeffs
    return IntPoly._raw(tuple(out))


def negate_variable(f: IntPoly) -> IntPoly:
    """f(-x)."""
    return IntPoly._raw(tuple(-c if j & 1 else c for j, c in enumerate(f.coeffs)))


def reciprocal(f: IntPoly) -> IntPoly:
    """x^deg(f) f(1/x)."""
    if f.is_zero():
        raise ValueError("reciprocal of the zero polynomial")
    return IntPoly._raw(_strip(reversed(f.coeffs)))


def mul_binomial(f: IntPoly, d: int) -> IntPoly:
    """f(x) * (x^d - 1) in linear time."""
    a = f.coeffs
    if not a:
        return ZERO
    out = [-c for c in a] + [0] * d
    out[d:] = [x + y for x, y in zip(out[d:], a)]
    return IntPoly._raw(_strip(out))


def div_binomial(f: IntPoly, d: int) -> IntPoly:
    """f(x) / (x^d - 1) in linear time; raises NotDivisible like :func:`div_exact`."""
    a = f.coeffs
    if not a:
        return ZERO
    n = len(a) - 1
    if n < d:
        raise NotDivisible(n, a[-1])
    # f_i = q_{i-d} - q_i, so q_i = q_{i-d} - f_i along each residue class
    q = [0] * (n - d + 1)
    for r in range(min(d, n - d + 1)):
        q[r::d] = list(accumulate(a[r:n - d + 1:d], operator.sub, initial=0))[1:]
    for i in range(n, n - d, -1):
        expect = q[i - d] if i - d >= 0 else 0
        if a[i] != expect:
            raise NotDivisible(i, a[i] - expect)
    return IntPoly._raw(_strip(q))


# ------------------------------------------------------------ coefficient queries

def coeff_set(f: IntPoly) -> CoeffSet:
    """C(f): the coefficients at indices 0..deg f."""
    if f.is_zero():
        raise ValueError("coefficient set of the zero polynomial")
    return CoeffSet.of(f.coeffs)


def coeff_set0(f: IntPoly) -> CoeffSet:
    """C_0(f) = C(f) with 0 adjoined."""
    return CoeffSet.of(f.coeffs, includes_zero_pad=True)


def height_plus(f: IntPoly) -> int:
    if f.is_zero():
        raise ValueError("height of the zero polynomial")
    return max(f.coeffs)


def height_minus(f: IntPoly) -> int:
    if f.is_zero():
        raise ValueError("height of the zero polynomial")
    return min(f.coeffs)


def height(f: IntPoly) -> int:
    return max(height_plus(f), -height_minus(f))
