from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from ratfourier import ddarith as dd

finite = st.floats(min_value=-1e100, max_value=1e100, allow_nan=False, allow_infinity=False)


@given(finite, finite)
def test_two_sum_is_exact(a, b):
    s, e = dd.two_sum(a, b)
    assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


moderate = st.one_of(
    st.just(0.0),
    st.floats(min_value=1e-100, max_value=1e100),
    st.floats(min_value=-1e100, max_value=-1e-100),
)


# exact barring underflow of the error term, hence the magnitude window
@given(moderate, moderate)
def test_two_prod_is_exact(a, b):
    p, e = dd.two_prod(a, b)
    assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


def test_dd_convolve_matches_exact_rationals():
    rng = np.random.default_rng(7)
    a = rng.normal(size=9) * 10.0 ** rng.integers(-5, 5, size=9)
    b = rng.normal(size=6) * 10.0 ** rng.integers(-5, 5, size=6)
    hi, lo = dd.dd_convolve(a, np.zeros_like(a), b, np.zeros_like(b))
    for k in range(hi.size):
        exact = sum(Fraction(a[i]) * Fraction(b[k - i]) for i in range(a.size) if 0 <= k - i < b.size)
        got = Fraction(hi[k]) + Fraction(lo[k])
        assert abs(got - exact) <= abs(exact) * Fraction(1, 2**100)


def test_dd_add_carries_tails():
    hi, lo = dd.dd_add(1.0, 1e-20, 1e-30, 0.0)
    assert hi == 1.0
    assert lo == 1e-20 + 1e-30
