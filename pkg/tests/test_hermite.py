"""Hermite polynomial evaluation, zeros, identities, Stirling remainder.

Oracles: exact integer/rational recurrences (Fraction), mpmath at 60 digits,
and closed forms for small orders.  Frozen constants below were generated
from those oracles and are independent of the library's float code paths.
"""

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import betafreeze as bf
from betafreeze.errors import ConvergenceFailure, DegenerateInput, InvalidConfig

mp.mp.dps = 60


def hermite_exact(n: int, x: Fraction) -> Fraction:
    """H_n at a rational point by the exact three-term recurrence."""
    h_prev, h_cur = Fraction(1), 2 * x
    if n == 0:
        return h_prev
    for m in range(1, n):
        h_prev, h_cur = h_cur, 2 * x * h_cur - 2 * m * h_prev
    return h_cur


def log_abs_fraction(f: Fraction) -> float:
    return float(mp.log(mp.mpf(abs(f.numerator))) - mp.log(mp.mpf(f.denominator)))


# ----------------------------------------------------------------------
# hermite_eval
# ----------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 5, 10, 25, 40])
@pytest.mark.parametrize(
    "x", [Fraction(-3), Fraction(-1), Fraction(-1, 2), Fraction(0),
          Fraction(1, 4), Fraction(1), Fraction(7, 2)]
)
def test_eval_matches_exact_recurrence(n, x):
    exact = hermite_exact(n, x)
    exact_deriv = 2 * n * hermite_exact(n - 1, x)
    value, deriv = bf.hermite_eval(n, float(x))
    for got, want in ((value, exact), (deriv, exact_deriv)):
        if want == 0:
            assert got.sign == 0.0 and got.log_abs == -math.inf
            assert got.to_float() == 0.0
        else:
            assert got.sign == (1.0 if want > 0 else -1.0)
            assert got.log_abs == pytest.approx(
                log_abs_fraction(want), rel=0, abs=5e-12 * max(1, n)
            )


def test_eval_parity_at_origin():
    for m in range(0, 21):
        value, _ = bf.hermite_eval(2 * m + 1, 0.0)
        assert value.sign == 0.0 and value.to_float() == 0.0
        value, _ = bf.hermite_eval(2 * m, 0.0)
        # H_{2m}(0) = (-1)^m (2m)! / m!
        want = Fraction((-1) ** m * math.factorial(2 * m), math.factorial(m))
        assert value.sign == (1.0 if want > 0 else -1.0)
        assert value.log_abs == pytest.approx(
            log_abs_fraction(want), rel=0, abs=1e-12
        )


def test_eval_order_zero_and_invalid():
    value, deriv = bf.hermite_eval(0, 3.7)
    assert value.to_float() == 1.0
    assert deriv.to_float() == 0.0
    with pytest.raises(InvalidConfig):
        bf.hermite_eval(-1, 0.0)


def test_scaled_real_round_trip():
    value, _ = bf.hermite_eval(12, 1.75)
    assert value.to_float() == pytest.approx(
        value.sign * math.exp(value.log_abs), rel=1e-15
    )


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=60),
    x=st.floats(min_value=-8, max_value=8, allow_nan=False),
)
def test_eval_against_float_recurrence(n, x):
    """Where the plain float recurrence does not overflow, the scaled one
    must agree to full precision."""
    h_prev, h_cur = 1.0, 2.0 * x
    for m in range(1, n):
        h_prev, h_cur = h_cur, 2.0 * x * h_cur - 2.0 * m * h_prev
    assert math.isfinite(h_cur)
    value, _ = bf.hermite_eval(n, x)
    got = value.to_float()
    scale = max(abs(h_cur), abs(h_prev), 1e-300)
    assert got == pytest.approx(h_cur, rel=0, abs=1e-9 * scale)


def test_eval_no_overflow_at_large_order():
    # Plain float recurrence overflows near n ~ 180 at x = 8; scaled form
    # must stay finite and meaningful.
    value, deriv = bf.hermite_eval(500, 8.0)
    assert math.isfinite(value.log_abs) and abs(value.sign) == 1.0
    assert math.isfinite(deriv.log_abs)


# ----------------------------------------------------------------------
# compute_zeros
# ----------------------------------------------------------------------

def test_zeros_closed_forms():
    # roots of H_2, H_3, H_4, H_5
    cases = {
        2: [math.sqrt(0.5)],
        3: [math.sqrt(1.5), 0.0],
        4: [math.sqrt((3 + math.sqrt(6)) / 2), math.sqrt((3 - math.sqrt(6)) / 2)],
        5: [math.sqrt((5 + math.sqrt(10)) / 2), math.sqrt((5 - math.sqrt(10)) / 2), 0.0],
    }
    for n, upper in cases.items():
        want = np.array(upper + [-u for u in reversed(upper) if u != 0.0])
        got = bf.compute_zeros(n).zeros
        np.testing.assert_allclose(got, want, rtol=0, atol=1e-14)


def test_zeros_antisymmetric_and_descending(zeros_cache):
    for n in (2, 3, 7, 24, 61, 120):
        z = zeros_cache(n).zeros
        assert np.all(np.diff(z) < 0)
        np.testing.assert_array_equal(z, -z[::-1])
        if n % 2 == 1:
            assert z[n // 2] == 0.0


def test_zeros_deterministic():
    a = bf.compute_zeros(37).zeros
    b = bf.compute_zeros(37).zeros
    np.testing.assert_array_equal(a, b)


def test_zeros_residuals_small(zeros_cache):
    for n in (2, 17, 50, 200):
        z = zeros_cache(n).zeros
        assert bf.fixed_point_residual(z) <= 1e-10
        assert bf.potential_identity_gap(z) <= 1e-9


def test_zeros_match_quadrature_nodes(zeros_cache):
    # Independent route: Golub-Welsch nodes from numpy's Gauss-Hermite rule.
    for n in (5, 16, 33):
        nodes = np.polynomial.hermite.hermgauss(n)[0][::-1]
        np.testing.assert_allclose(zeros_cache(n).zeros, nodes, rtol=0, atol=5e-13)


def test_zeros_invalid_and_unreachable_tolerance():
    with pytest.raises(InvalidConfig):
        bf.compute_zeros(1)
    with pytest.raises(InvalidConfig):
        bf.compute_zeros(0)
    for n in (2, 10):
        with pytest.raises(ConvergenceFailure):
            bf.compute_zeros(n, tol=1e-30)


def test_hermite_zeros_container_validation():
    with pytest.raises(DegenerateInput):
        bf.HermiteZeros(3, np.array([1.0, 2.0, 3.0]))  # ascending
    hz = bf.compute_zeros(4)
    with pytest.raises(ValueError):
        hz.zeros[0] = 99.0  # read-only


# ----------------------------------------------------------------------
# identity diagnostics
# ----------------------------------------------------------------------

def test_fixed_point_residual_exact_for_true_fixed_point():
    # For n = 2 the fixed point equation is z = 1/(2z); at the float zeros
    # the residual is at rounding level but not zero.
    z = bf.compute_zeros(2).zeros
    r = bf.fixed_point_residual(z)
    assert 0.0 < r < 1e-15


def test_residual_rejects_degenerate_points():
    with pytest.raises(DegenerateInput):
        bf.fixed_point_residual(np.array([1.0, 1.0]))
    with pytest.raises(DegenerateInput):
        bf.potential_identity_gap(np.array([0.5, 0.5]))
    with pytest.raises(DegenerateInput):
        bf.potential_identity_gap(np.array([0.0, 1.0]))  # not descending


def test_potential_gap_detects_perturbation(zeros_cache):
    # The zeros are a stationary point of the log-potential, so the gap
    # responds only at second order in the perturbation size.
    z = zeros_cache(12).zeros.copy()
    z[0] += 1e-2
    assert bf.potential_identity_gap(z) > 1e-5


# ----------------------------------------------------------------------
# normalization constant and Stirling remainder
# ----------------------------------------------------------------------

# mpmath (60 digits): lgamma(N+1) - N/2 ln(2 pi) + N lgamma(1+k)
#                     - sum_{j<=N} lgamma(1+jk)
LOG_NORM_ORACLE = [
    ((3, 2.5), -12.899867925774858481),
    ((5, 1.0), -10.257653146159309639),
    ((2, 10000.0), -95967.838630270196258),
    ((10, 0.5), -13.519672131887562947),
]


@pytest.mark.parametrize("args,want", LOG_NORM_ORACLE)
def test_log_norm_const_oracle(args, want):
    assert bf.log_norm_const(*args) == pytest.approx(want, rel=1e-13)


# mpmath (60 digits): mu(x) = loggamma(x) - (x - 1/2) ln x + x - ln(2 pi)/2
STIRLING_ORACLE = [
    (1.001, 0.080984323530169038561),
    (1.5, 0.054814121051917653896),
    (2.0, 0.041340695955409294094),
    (2.718281828459045, 0.030523208615394927843),
    (10.0, 0.0083305634333628712565),
    (16.0, 0.0052076559196096404407),
    (100.0, 0.00083333055563491468338),
    (2500.0, 0.000033333333155555563683),
    (1e6, 8.3333333333330555556e-8),
]


@pytest.mark.parametrize("x,want", STIRLING_ORACLE)
def test_stirling_mu_oracle(x, want):
    got = bf.stirling_mu(x)
    assert got.x == x
    assert got.mu == pytest.approx(want, rel=5e-13)


def test_stirling_mu_two_sided_bound_everywhere():
    xs = np.logspace(math.log10(1.001), 6, 400)
    lo_m, hi_m = bf.stirling_bound_margins(xs)
    assert np.all(lo_m > 0.0), "mu must exceed 1/(12x) - 1/(360x^3)"
    assert np.all(hi_m > 0.0), "mu must stay below 1/(12x)"


def test_stirling_margins_scalar_and_continuity_at_cutoff():
    lo_s, hi_s = bf.stirling_bound_margins(10.0)
    assert isinstance(lo_s, float) and isinstance(hi_s, float)
    lo_a, hi_a = bf.stirling_bound_margins(15.999999)
    lo_b, hi_b = bf.stirling_bound_margins(16.000001)
    assert lo_a == pytest.approx(lo_b, rel=1e-4)
    assert hi_a == pytest.approx(hi_b, rel=1e-4)
    with pytest.raises(InvalidConfig):
        bf.stirling_bound_margins(1.0)


def test_stirling_margins_match_series_meaning():
    # At moderate x the margins must agree with a direct high-precision
    # subtraction.
    for x in (1.5, 3.0, 8.0, 30.0, 200.0):
        mu_hp = float(
            mp.loggamma(x) - (mp.mpf(x) - mp.mpf(1) / 2) * mp.log(x) + x
            - mp.log(2 * mp.pi) / 2
        )
        lo_m, hi_m = bf.stirling_bound_margins(x)
        want_lo = mu_hp - (1 / (12 * x) - 1 / (360 * x**3))
        want_hi = 1 / (12 * x) - mu_hp
        assert lo_m == pytest.approx(want_lo, rel=1e-6)
        assert hi_m == pytest.approx(want_hi, rel=1e-6)


# mpmath (60 digits): (N-1) mu(k) - sum_{l=2..N} mu(l k)
EXPONENT_M_ORACLE = [
    ((5, 3.7), 0.060981318553514839591),
    ((2, 1.0), 0.039720770839917964126),
    ((100, 10000.0), 0.00079010518707856429695),
]


@pytest.mark.parametrize("args,want", EXPONENT_M_ORACLE)
def test_exponent_m_oracle(args, want):
    assert bf.exponent_M(*args) == pytest.approx(want, rel=1e-11)


def test_exponent_m_lower_bound_grid():
    for N in (2, 3, 10, 47, 100):
        for k in np.logspace(0, 4, 25):
            assert bf.exponent_M(N, float(k)) >= (N - 1) / (26.0 * float(k))


def test_exponent_m_validation():
    with pytest.raises(InvalidConfig):
        bf.exponent_M(1, 2.0)
    with pytest.raises(InvalidConfig):
        bf.exponent_M(3, 0.5)


@settings(max_examples=50, deadline=None)
@given(x=st.floats(min_value=1.0001, max_value=1e8))
def test_stirling_mu_positive_decreasing(x):
    mu_x = bf.stirling_mu(x).mu
    mu_2x = bf.stirling_mu(2.0 * x).mu
    assert 0.0 < mu_2x < mu_x
