import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cyclodiv.cyclotomic import phi, psi
from cyclodiv.polyring import (
    MUL_THRESHOLD,
    ONE,
    ZERO,
    CoeffSet,
    IntPoly,
    NotDivisible,
    _mul_kronecker,
    _mul_schoolbook,
    add,
    coeff_set,
    coeff_set0,
    div_binomial,
    div_exact,
    format_set,
    format_sparse,
    height,
    height_minus,
    height_plus,
    mul,
    mul_binomial,
    negate_variable,
    reciprocal,
    scale,
    shift,
    sub,
    substitute_power,
)

from oracles import naive_divmod, naive_mul

small = st.integers(-50, 50)
polys = st.lists(small, max_size=24).map(IntPoly)
nonzero = polys.filter(lambda f: not f.is_zero())
# wide coefficients and long operands push mul onto the packed-integer route
wide = st.builds(lambda c, top: IntPoly(c + [top]),
                 st.lists(st.integers(-2 ** 200, 2 ** 200), min_size=20, max_size=90),
                 st.integers(1, 2 ** 200))
monic = st.lists(small, min_size=1, max_size=5).map(lambda c: IntPoly(c + [1]))


def P(*c):
    return IntPoly(c)


# ---------------------------------------------------------------- representation

def test_trailing_zeros_stripped():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([0, 0]).is_zero() and IntPoly([0, 0]) == ZERO
    assert ZERO.coeffs == ()


def test_zero_has_no_degree():
    with pytest.raises(ValueError):
        ZERO.degree
    assert P(5).degree == 0 and P(0, 0, 3).degree == 2


def test_getitem_beyond_degree():
    f = P(1, 2)
    assert f[0] == 1 and f[1] == 2 and f[7] == 0


def test_big_coefficients_exact():
    f = P(2 ** 100, -(3 ** 80))
    g = mul(f, f)
    assert g.coeffs == (2 ** 200, -2 * 2 ** 100 * 3 ** 80, 3 ** 160)


def test_coeffset_invariants():
    c = CoeffSet.of([3, -1, 3, 0])
    assert c.values == (-1, 0, 3) and not c.includes_zero_pad
    c0 = coeff_set0(P(1, 1))
    assert 0 in c0 and c0.includes_zero_pad


def test_rendering():
    assert format_sparse(P(1, -1, 0, 1)) == "x^3 - x + 1"
    assert format_sparse(ZERO) == "0"
    assert format_set([-1, 0, 1]) == "[-1,1]"
    assert format_set([-2, 0, 1, 2]) == "{-2,0,1,2}"
    assert repr(P(-1, 1)) == "IntPoly('x - 1')"


# ------------------------------------------------------------------ examples

def test_add_examples():
    assert add(P(-1, 1), P(1)) == P(0, 1)
    f = P(3, 0, -2)
    assert add(ZERO, f) == f
    assert add(P(1, 1), P(1, -1)) == P(2)
    assert sub(f, f) == ZERO


def test_mul_examples():
    assert mul(P(-1, 1), P(1, 1)) == P(-1, 0, 1)
    f = P(4, -3, 2)
    assert mul(f, ONE) == f
    s = mul(phi(3), phi(5))
    assert s.coeffs == (1, 2, 3, 3, 3, 2, 1)
    assert coeff_set(s).values == (1, 2, 3)


def test_div_exact_examples():
    assert div_exact(P(-1, 0, 1), P(-1, 1)) == P(1, 1)
    via_division = div_exact(IntPoly.binomial(15), phi(15))
    via_product = div_exact(mul(IntPoly.binomial(5), IntPoly.binomial(3)), P(-1, 1))
    assert via_division == via_product == psi(15)


def test_div_exact_reports_remainder():
    with pytest.raises(NotDivisible) as e:
        div_exact(P(1, 0, 1), P(-1, 1))
    assert e.value.index == 0 and e.value.value == 2
    with pytest.raises(NotDivisible):
        div_exact(P(1, 1), P(1, 0, 1))
    with pytest.raises(ZeroDivisionError):
        div_exact(P(1), ZERO)


def test_div_exact_first_offending_index_from_top():
    # x^3 + x^2 + 5 = (x^2 + 1)(x + 1) + (-x + 4): the x^1 remainder is met first
    with pytest.raises(NotDivisible) as e:
        div_exact(P(5, 0, 1, 1), P(1, 0, 1))
    assert (e.value.index, e.value.value) == (1, -1)


def test_substitute_power_examples():
    assert substitute_power(P(-1, 1), 3) == IntPoly.binomial(3)
    assert substitute_power(phi(3), 3) == P(1, 0, 0, 1, 0, 0, 1) == phi(9)
    f = P(2, -1, 7)
    assert substitute_power(f, 1) == f


def test_negate_variable_examples():
    assert negate_variable(phi(3)) == P(1, -1, 1) == phi(6)
    even = substitute_power(P(1, 2, 3), 2)
    assert negate_variable(even) == even
    assert negate_variable(P(0, 1)) == P(0, -1)


def test_reciprocal_examples():
    assert reciprocal(P(1, 2, 3)) == P(3, 2, 1)
    assert reciprocal(phi(12)) == phi(12)
    assert reciprocal(P(0, 0, 1)) == P(1)
    with pytest.raises(ValueError):
        reciprocal(ZERO)


def test_coeff_set_examples():
    assert coeff_set(phi(21)).values == (-1, 0, 1)
    assert [j for j, c in enumerate(phi(21).coeffs) if c == 0] == [2, 5, 7, 10]
    assert coeff_set(P(-1, 1)).values == (-1, 1)
    assert coeff_set0(P(-1, 1)).values == (-1, 0, 1)


def test_height_examples():
    assert height(phi(105)) == 2
    assert all(height(phi(n)) == 1 for n in range(1, 105))
    f = P(-1, 1)
    assert (height_plus(f), height_minus(f), height(f)) == (1, -1, 1)
    for p, q in [(3, 5), (7, 11), (2, 13), (43, 47)]:
        assert height(phi(p * q)) == 1
    with pytest.raises(ValueError):
        height(ZERO)
    with pytest.raises(ValueError):
        coeff_set(ZERO)


# ---------------------------------------------------------------- properties

@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert mul(f, g) == mul(g, f)
    assert mul(mul(f, g), h) == mul(f, mul(g, h))
    assert mul(f, add(g, h)) == add(mul(f, g), mul(f, h))
    assert add(f, g) == add(g, f)
    assert sub(add(f, g), g) == f


@given(polys, polys)
def test_mul_matches_schoolbook_oracle(f, g):
    assert list(mul(f, g).coeffs) == naive_mul(list(f.coeffs), list(g.coeffs))


@given(wide, wide)
def test_kronecker_route_matches_schoolbook(f, g):
    assert len(f) * len(g) > MUL_THRESHOLD ** 2
    assert _mul_kronecker(f.coeffs, g.coeffs) == _mul_schoolbook(f.coeffs, g.coeffs)
    assert mul(f, g).coeffs == _mul_schoolbook(f.coeffs, g.coeffs)


@given(polys, nonzero)
def test_div_round_trip(f, g):
    assert div_exact(mul(f, g), g) == f


@given(st.lists(st.integers(-3, 3), min_size=40, max_size=200).map(IntPoly),
       st.lists(st.integers(-3, 3), min_size=9, max_size=200).map(IntPoly))
def test_div_round_trip_long(f, g):
    assume(not g.is_zero() and not f.is_zero())
    assert div_exact(mul(f, g), g) == f


@given(polys, monic)
def test_div_matches_long_division_oracle(f, g):
    q, r = naive_divmod(list(f.coeffs), list(g.coeffs))
    if r:
        with pytest.raises(NotDivisible):
            div_exact(f, g)
    else:
        assert list(div_exact(f, g).coeffs) == q


@given(polys, st.integers(1, 30))
def test_binomial_ops(f, d):
    g = mul_binomial(f, d)
    assert g == mul(f, IntPoly.binomial(d))
    assert div_binomial(g, d) == f
    if not f.is_zero():
        with pytest.raises(NotDivisible):
            div_binomial(add(g, P(1)), d)


@given(nonzero, nonzero)
def test_height_product_bound(f, g):
    if f.degree > g.degree:
        f, g = g, f
    assert height(mul(f, g)) <= (1 + f.degree) * height(f) * height(g)


@given(nonzero, st.integers(1, 40))
def test_binomial_at_most_doubles_height(f, k):
    assert height(mul_binomial(f, k)) <= 2 * height(f)


@given(nonzero, st.integers(0, 8), st.integers(1, 5))
def test_sparse_geometric_factor(f, extra, m):
    k = f.degree + 1 + extra
    geo = IntPoly.from_terms({k * i: 1 for i in range(m + 1)})
    prod = mul(f, geo)
    assert coeff_set0(prod) == coeff_set0(f)
    if k > f.degree + 1:
        assert coeff_set(prod).as_set() == coeff_set(f).as_set() | {0}


@given(nonzero, st.sampled_from([2, 3, 5, 7]))
def test_repetition_by_phi_p(f, p):
    assert coeff_set(mul(phi(p), substitute_power(f, p))) == coeff_set(f)


@given(nonzero)
def test_reciprocal_involution(f):
    assume(f.coeffs[0] != 0)
    assert reciprocal(reciprocal(f)) == f


@given(polys, st.integers(-5, 5), st.integers(0, 6))
def test_scale_and_shift(f, c, k):
    assert scale(f, c) == mul(f, P(c))
    assert shift(f, k) == mul(f, IntPoly.monomial(k))
    assert f * c == c * f == scale(f, c)


@given(polys, st.integers(-4, 4))
def test_evaluation_is_a_homomorphism(f, x):
    g = P(x, 1)
    assert mul(f, g)(x) == f(x) * g(x)
