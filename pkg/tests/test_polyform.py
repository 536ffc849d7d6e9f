import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ratfourier.approx import PartialFractionModel
from ratfourier.coeffs import TermCoefficients
from ratfourier.fnmodel import Parity, make_params
from ratfourier.polyform import (
    Polynomial,
    Precision,
    RationalPolynomial,
    agreement,
    agreement_tolerance,
    collapse,
    eval_rational,
    export_rational,
    load_rational,
    poly_mul,
)

from conftest import PLOT_GRID


def _model(rows, parity=Parity.MIXED, sigma=1.0):
    """Model from explicit (alpha, beta, eta, theta, kappa, lam) rows."""
    rows = np.array(rows, dtype=float)
    M = len(rows)
    params = make_params(M, 1, 0.1, sigma)
    a, b, e, t, k, l = rows.T
    return PartialFractionModel(TermCoefficients(params, parity, a, b, e, t, k, l, np.arange(1.0, M + 1)))


def _exact_collapse(rows):
    def mul(p, q):
        r = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            for j, y in enumerate(q):
                r[i + j] += x * y
        return r

    P, Q = [Fraction(0)], [Fraction(1)]
    for a, b, e, t, k, l in rows:
        num = [Fraction(a), Fraction(e), Fraction(b), Fraction(t)]
        quart = [Fraction(k), 0, Fraction(l), 0, Fraction(1)]
        left, right = mul(P, quart), mul(num, Q)
        n = max(len(left), len(right))
        P = [(left[i] if i < len(left) else 0) + (right[i] if i < len(right) else 0) for i in range(n)]
        Q = mul(Q, quart)
    return P, Q


def test_poly_mul_difference_of_squares():
    r = poly_mul(Polynomial([1.0, 1.0]), Polynomial([1.0, -1.0]))
    assert r.coef.tolist() == [1.0, 0.0, -1.0]
    assert r.degree == 2


def test_poly_mul_by_zero():
    r = poly_mul(Polynomial([3.0, 2.0, 1.0]), Polynomial([0.0]))
    assert r.is_zero and r.degree == 0


def test_poly_mul_quartics():
    q1 = Polynomial([0.3, 0, -1.7, 0, 1])
    q2 = Polynomial([2.5, 0, 0.4, 0, 1])
    r = poly_mul(q1, q2)
    assert r.degree == 8
    assert r.coef[0] == 0.3 * 2.5
    assert np.all(r.coef[1::2] == 0)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=7),
    st.lists(st.integers(-20, 20), min_size=1, max_size=7),
)
def test_poly_mul_integer_exact(a, b):
    r = poly_mul(Polynomial(a), Polynomial(b))
    expected = np.polynomial.polynomial.polymul(a, b)
    expected = Polynomial(expected)
    assert np.array_equal(r.coef, expected.coef)


def test_polynomial_trims_and_degree():
    p = Polynomial([1.0, 2.0, 0.0, 0.0])
    assert p.degree == 1 and p.coef.tolist() == [1.0, 2.0]
    assert Polynomial([]).is_zero


def test_single_term_collapse_is_identity():
    m = _model([(0.7, -0.2, 0.3, 0.05, 2.0, -1.0)])
    r = collapse(m)
    assert r.P.coef.tolist() == [0.7, 0.3, -0.2, 0.05]
    assert r.Q.coef.tolist() == [2.0, 0.0, -1.0, 0.0, 1.0]
    nu = np.linspace(-3, 3, 61)
    assert np.allclose(eval_rational(r, nu), m(nu), rtol=1e-14, atol=0)


def test_origin_value_is_alpha_over_kappa():
    m = _model([(0.7, -0.2, 0.0, 0.0, 2.0, -1.0)], Parity.EVEN_REAL)
    assert eval_rational(collapse(m), 0.0) == 0.7 / 2.0


@pytest.mark.parametrize("M", [1, 2, 3])
def test_collapse_matches_exact_rationals(M):
    rng = np.random.default_rng(M)
    rows = []
    for _ in range(M):
        k = float(rng.integers(1, 9))
        l = float(rng.integers(-4, 5))
        rows.append(tuple(float(x) for x in rng.integers(-9, 10, size=4)) + (k, l))
    r = collapse(_model(rows))
    P, Q = _exact_collapse(rows)
    for got, exact in zip(np.pad(r.P.coef, (0, len(P) - r.P.coef.size)), P):
        assert abs(Fraction(got) - exact) <= abs(exact) * Fraction(1, 10**12)
    for got, exact in zip(r.Q.coef, Q):
        assert abs(Fraction(got) - exact) <= abs(exact) * Fraction(1, 10**12)


def test_degrees_and_structure(preset_id, preset_models):
    m = preset_models[preset_id]
    r = collapse(m)
    M = m.params.M
    assert r.Q.degree == 4 * M
    assert r.P.degree <= 4 * M - 1
    if m.parity is Parity.EVEN_REAL:
        assert r.P.degree <= 4 * M - 2
        assert np.all(r.P.coef[1::2] == 0)
    assert np.all(r.Q.coef[1::2] == 0) and np.all(r.Q.tail[1::2] == 0)
    assert r.Q.coef[-1] == 1.0
    assert r.precision is (Precision.EXTENDED if M > 16 else Precision.STANDARD)


def test_q_positive_dense(preset_id, preset_models):
    r = collapse(preset_models[preset_id])
    nu = np.linspace(-50, 50, 100_001)
    assert np.all(r.Q(nu) > 0)


def test_grid_agreement(preset_id, preset_models):
    m = preset_models[preset_id]
    r = collapse(m)
    diff, scale = agreement(r, m, PLOT_GRID)
    assert diff <= agreement_tolerance(m.params.M) * scale


def test_parity_of_collapsed_form(preset_id, preset_models):
    m = preset_models[preset_id]
    r = collapse(m)
    nu = np.linspace(-40, 40, 2001)
    if preset_id % 2 == 0:
        assert np.array_equal(r(nu), r(-nu))
    else:
        assert np.array_equal(r(nu), -r(-nu))


def test_large_nu_does_not_overflow(preset_id, preset_models):
    m = preset_models[preset_id]
    r = collapse(m)
    nu = np.array([1e3, 1e5, 1e150])
    got = r(nu)
    assert np.all(np.isfinite(got))
    # far tails are tiny and cancellation-limited in both forms; compare
    # against the peak magnitude as the agreement tolerance does
    peak = np.max(np.abs(m(PLOT_GRID)))
    tol = agreement_tolerance(m.params.M) * peak
    assert np.all(np.abs(got[:2] - m(nu[:2])) <= tol)
    assert abs(got[2]) <= tol


def test_matches_close_to_ideal(preset_models):
    r = collapse(preset_models[0])
    assert np.max(np.abs(r(PLOT_GRID) - np.sinc(PLOT_GRID))) <= 2 * 2.5e-3


@pytest.mark.parametrize("compact", [True, False])
def test_export_round_trip_bitwise(tmp_path, preset_id, preset_models, compact):
    r = collapse(preset_models[preset_id])
    path = tmp_path / "r.json"
    export_rational(r, path, compact=compact)
    s = load_rational(path)
    assert s.precision is r.precision and s.params == r.params and s.parity is r.parity
    assert eval_rational(s, PLOT_GRID).tobytes() == eval_rational(r, PLOT_GRID).tobytes()


def test_export_records_degrees_and_compacts_q(tmp_path, preset_models):
    import json

    r = collapse(preset_models[0])
    path = tmp_path / "r.json"
    export_rational(r, path)
    d = json.loads(path.read_text())
    M = 32
    assert d["deg_Q"] == 4 * M and d["deg_P"] == r.P.degree
    assert len(d["q"]) == math.ceil((4 * M + 1) / 2)
    assert len(d["q_lo"]) == len(d["q"])
    assert d["params"]["M"] == M and d["precision"] == "extended"


def test_export_reports_path_on_failure(tmp_path, preset_models):
    r = collapse(preset_models[2])
    with pytest.raises(OSError, match="missing"):
        export_rational(r, tmp_path / "missing" / "r.json")


def test_rational_rejects_odd_q():
    with pytest.raises(ValueError):
        RationalPolynomial(Polynomial([1.0]), Polynomial([1.0, 1.0]))


def test_double_only_coefficients_are_not_enough_at_32_terms(preset_models):
    # the reason the extended representation exists
    m = preset_models[0]
    r = collapse(m)
    rounded = RationalPolynomial(Polynomial(r.P.coef + r.P.tail), Polynomial(r.Q.coef + r.Q.tail))
    diff, scale = agreement(rounded, m, PLOT_GRID)
    assert diff > 1e-6 * scale
