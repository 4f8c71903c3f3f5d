import csv
import json

import pytest
from hypothesis import given, settings, strategies as st

from springer_lab import pointcount as P
from springer_lab.poly import QPolynomial, q_factorial
from springer_lab.weyl import Word


def series_of(poly, primes, label="s"):
    return P.CountSeries(label, tuple((p, poly(p)) for p in primes))


# -- interpolation --------------------------------------------------------------


def test_interpolates_flag_variety():
    poly = q_factorial(3)
    assert P.interpolate(series_of(poly, [2, 3, 5, 7]), 3) == poly


def test_constant_series():
    assert P.interpolate(P.CountSeries("c", ((2, 5), (3, 5), (5, 5))), 2) == QPolynomial((5,))


@given(st.lists(st.integers(0, 20), min_size=1, max_size=5))
@settings(max_examples=50)
def test_interpolation_recovers_nonnegative_polynomials(coeffs):
    poly = QPolynomial(tuple(coeffs))
    bound = len(coeffs) - 1
    primes = P.prime_schedule(bound + 2)
    assert P.interpolate(series_of(poly, primes), bound) == poly


def test_non_integral_fit_raises():
    s = P.CountSeries("bad", ((2, 1), (3, 2), (5, 2)))
    with pytest.raises(P.NonPolynomialSeriesError):
        P.interpolate(s, 2)


def test_degree_above_bound_raises():
    poly = QPolynomial((0, 0, 0, 1))
    with pytest.raises(P.NonPolynomialSeriesError):
        P.interpolate(series_of(poly, [2, 3, 5, 7]), 2)


def test_too_few_samples():
    with pytest.raises(ValueError):
        P.interpolate(series_of(QPolynomial((1,)), [2]), 2)


def test_series_validation():
    with pytest.raises(ValueError):
        P.CountSeries("x", ((2, 1), (2, 1)))
    with pytest.raises(ValueError):
        P.CountSeries("x", ((2, -1),))


def test_exponential_series_is_non_polynomial():
    with pytest.raises(P.NonPolynomialSeriesError):
        P.fit_series("pow2", lambda p: (2 ** p, "formula"), 2, primes=[2, 3, 5], holdout=7)


def test_underfit_series_caught_by_holdout():
    fit = P.fit_series("cube", lambda p: (p ** 3, "formula"), 2, primes=[2, 3, 5], holdout=7)
    assert fit.holdout.predicted == 303 and not fit.holdout
    assert "MISMATCH" in fit.holdout.diagnostic()


def test_holdout_match_and_negative_control():
    poly = QPolynomial((1, 3, 2))
    good = P.validate_holdout(poly, (13, poly(13)))
    bad = P.validate_holdout(poly, (13, poly(13) + 1))
    assert good.ok and not bad.ok
    assert bad.to_json()["ok"] is False


def test_holdout_among_primes_rejected():
    with pytest.raises(ValueError):
        P.fit_series("x", lambda p: (1, "f"), 0, primes=[2, 3], holdout=3)


def test_prime_schedule():
    assert P.prime_schedule(5) == [2, 3, 5, 7, 11]
    assert P.prime_schedule(3, odd_only=True) == [3, 5, 7]


def test_default_schedule_holds_out_last_prime():
    fit = P.fit_series("fl", lambda p: (q_factorial(3)(p), "formula"), 3)
    assert fit.series.primes == [2, 3, 5, 7] and fit.holdout.prime == 11 and fit.holdout


# -- targets and backends -------------------------------------------------------


def test_parse_target():
    assert P.parse_target("fiber") == P.Target("fiber")
    assert P.parse_target("component:2") == P.Target("component", tableau_id=2)
    assert P.parse_target("xhat") == P.Target("xhat")
    assert P.parse_target("schubert:121").word == Word((1, 2, 1))
    assert P.parse_target("schubert:121").label() == "schubert:121"
    with pytest.raises(ValueError):
        P.parse_target("nonsense")


@pytest.mark.parametrize("p", [2, 3])
def test_backends_agree_on_overlapping_primes(p):
    n, r = 4, 1
    for kind, other in [("fiber", "orbit")]:
        t = P.Target(kind)
        assert P.count_target("A", n, r, t, p, "enumerate")[0] == P.count_target("A", n, r, t, p, other)[0]
    for i in range(3):
        comp = P.Target("component", i)
        xhat = P.Target("xhat", i)
        assert P.count_target("A", n, r, comp, p, "enumerate")[0] == P.count_target("A", n, r, comp, p, "orbit")[0]
        assert P.count_target("A", n, r, xhat, p, "enumerate")[0] == P.count_target("A", n, r, xhat, p, "cells")[0]
    w = P.Target("schubert", word=Word((1, 2, 1)))
    assert P.count_target("A", 3, 0, w, p, "enumerate")[0] == P.count_target("A", 3, 0, w, p, "cells")[0] == 1 + 2 * p + 2 * p * p + p ** 3


def test_auto_backend_switches_with_size():
    assert P.count_target("A", 4, 1, P.Target("fiber"), 2)[1] == "enumerate"
    assert P.count_target("A", 4, 1, P.Target("fiber"), 11)[1] == "orbit"


def test_type_d_only_enumerates():
    with pytest.raises(ValueError):
        P.count_target("D", 2, 1, P.Target("fiber"), 3, "orbit")


def test_fiber_fit_type_a():
    fit = P.fit_series("fiber", lambda p: P.count_target("A", 4, 2, P.Target("fiber"), p), 2,
                       primes=[2, 3, 5], holdout=7)
    assert fit.poly == QPolynomial((1, 3, 2)) and fit.holdout


def test_fiber_fit_type_d():
    fit = P.fit_series("fiber", lambda p: P.count_target("D", 2, 1, P.Target("fiber"), p), 1,
                       primes=[3, 5], holdout=7)
    assert fit.poly == QPolynomial((1, 1)) and fit.holdout


def test_degree_bound():
    assert P.degree_bound("A", 5) == 10
    assert P.degree_bound("D", 3) == 6


# -- serialisation --------------------------------------------------------------


def test_csv_and_json(tmp_path):
    fit = P.fit_series("fl", lambda p: (q_factorial(2)(p), "formula"), 1, primes=[2, 3], holdout=5)
    path = tmp_path / "out.csv"
    P.write_csv([fit.series], path)
    rows = list(csv.reader(path.open()))
    assert rows == [["label", "prime", "count"], ["fl", "2", "3"], ["fl", "3", "4"]]
    data = json.loads(P.fits_to_json([fit]))
    assert data[0]["coefficients"] == [1, 1] and data[0]["holdout"]["ok"] is True


def test_small_examples():
    assert P.interpolate(P.CountSeries("one", ((2, 1), (3, 1))), 1) == QPolynomial((1,))
    assert P.interpolate(P.CountSeries("lines", ((2, 3), (3, 4), (5, 6))), 2) == QPolynomial((1, 1))
    assert P.validate_holdout(QPolynomial((1,)), (17, 1))
    assert P.validate_holdout(QPolynomial((1, 1)), (7, 8))
