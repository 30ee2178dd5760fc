import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3lat.diophantine import bundle_distance_seq
from k3lat.majorant import (majorant_arnold_z, majorant_b_hat, majorant_ueda, radius_estimate,
                            super_liouville_dseq, ueda_bound, ueda_constant, ueda_unit_radius)

pos = st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8)
dists = st.lists(st.fractions(min_value=Fraction(1, 20), max_value=1, max_denominator=20),
                 min_size=10, max_size=10)


def series_oracle(d, K, M, n):
    """Truncated power series: A = X + sum_n (1/d_{n-1}) [X^n] K M A^2 (1 + MA + (MA)^2 + ...)."""
    def mul(a, b):
        c = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[:n + 1 - i]):
                    c[i + j] += x * y
        return c

    A = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(2, n + 1):
        MA = [M * c for c in A]
        geo = [Fraction(1)] + [Fraction(0)] * n
        power = [Fraction(1)] + [Fraction(0)] * n
        for _ in range(n):
            power = mul(power, MA)
            geo = [g + p for g, p in zip(geo, power)]
        rhs = mul(mul(A, A), geo)
        A[k] = K * M * rhs[k] / d[k - 2]
    return A[1:]


def test_ueda_constant_examples():
    assert ueda_constant(Fraction(1, 2), 3) == (2, 3, 384, 192, 1153)
    L1, L2, K1, K2, K = ueda_constant(Fraction(1, 10 ** 12), 4)
    assert float(L1) == pytest.approx(0, abs=1e-11) and float(L2) == pytest.approx(1)
    assert float(K) == pytest.approx(1 + 2 ** 5, rel=1e-9)
    with pytest.raises(ValueError):
        ueda_constant(1, 3)


def test_ueda_bound_grid():
    for s in (Fraction(k, 11) for k in range(1, 11)):
        for N in range(1, 11):
            assert ueda_constant(s, N)[4] < ueda_bound(s, N)


def test_low_order_coefficients_exact():
    K, M = Fraction(5, 2), Fraction(3)
    d = [Fraction(1, 3), Fraction(2, 7)] + [Fraction(1)] * 5
    A = majorant_ueda(d, K, M, 5).coeffs
    assert A[0] == 1
    assert A[1] == K * M / d[0]
    assert A[2] == (K / d[1]) * (2 * M * A[1] + M * M)


@given(dists, pos, pos)
def test_matches_series_oracle(d, K, M):
    assert majorant_ueda(d, K, M, 11).coeffs == series_oracle(d, K, M, 11)


def test_unit_series_oracle_twelve_terms():
    d = [Fraction(1)] * 12
    ours = majorant_ueda(d, 1, 1, 12).coeffs
    assert ours == series_oracle(d, 1, 1, 12)
    assert ours[:6] == [1, 1, 3, 11, 45, 197]


def test_float_mode_agrees_with_exact():
    d = [Fraction(1, k + 1) for k in range(15)]
    ex = majorant_ueda(d, 2, 3, 16).coeffs
    fl = majorant_ueda(d, 2, 3, 16, exact=False).coeffs
    with mpmath.workprec(200):
        assert all(abs(mpmath.mpf(a.numerator) / a.denominator - b) < mpmath.mpf(10) ** -40 * b
                   for a, b in zip(ex, fl))


def test_arnold_z_low_order():
    K, M, Q = Fraction(2), Fraction(3), Fraction(1, 2)
    d = [Fraction(1, 2), Fraction(1, 5), Fraction(1)]
    A = majorant_arnold_z(d, K, M, Q, 3).coeffs
    assert A[0] == 2 * K * Q * M / d[0]
    assert A[1] == (2 * K * Q / d[1]) * (M * Q + A[0])


@given(dists, pos, pos, pos)
def test_b_hat_dominates(d, K, M, Q):
    A = majorant_arnold_z(d, K, M, Q, 9).coeffs
    B = majorant_b_hat([Fraction(1)] + d, K, M, Q, 10).coeffs
    # B_v = A_{v-1} with d shifted; the hat series has d_{v-1} on B_v
    Bh = majorant_b_hat(d, K, M, Q, 10).coeffs
    assert all(Bh[v - 1] >= A[v - 2] for v in range(2, 11))
    assert all(c > 0 for c in B)


def test_radius_unit_oracle():
    est = radius_estimate(majorant_ueda([Fraction(1)] * 60, 1, 1, 60, exact=False))
    r = ueda_unit_radius()
    assert abs(est.radius - r) / r < 0.2
    assert r == pytest.approx(3 - 2 * math.sqrt(2))


def test_radius_golden_positive():
    d = bundle_distance_seq(0, "phi", 64)
    assert radius_estimate(majorant_ueda(d, 10, 2, 64)).radius > 1e-4


def test_radius_collapses_for_super_liouville():
    r = [radius_estimate(majorant_ueda(super_liouville_dseq(n), 1, 1, n)).radius for n in (16, 24, 32)]
    assert r[0] > r[1] > r[2] or r[2] == 0
    assert r[0] < 1e-20


def test_radius_needs_terms():
    with pytest.raises(ValueError):
        radius_estimate(majorant_ueda([Fraction(1)] * 8, 1, 1, 8))


def test_zero_distance_rejected():
    with pytest.raises(ValueError):
        majorant_ueda([Fraction(1), Fraction(0), Fraction(1)], 1, 1, 4)
    with pytest.raises(ValueError):
        majorant_arnold_z([Fraction(0)], 1, 1, 1, 1)


@given(dists, pos, pos, st.integers(2, 10))
def test_prefix_stability(d, K, M, n):
    assert majorant_ueda(d, K, M, n).coeffs == majorant_ueda(d, K, M, 11).coeffs[:n]


@given(dists, dists, pos, pos, pos)
def test_monotone_in_parameters(d1, d2, K, M, extra):
    lo = [min(a, b) for a, b in zip(d1, d2)]
    base = majorant_ueda(d1, K, M, 11).coeffs
    assert all(x >= 0 for x in base)
    bigger = majorant_ueda(lo, K + extra, M + extra, 11).coeffs
    assert all(b >= a for a, b in zip(base, bigger))
    A = majorant_arnold_z(d1, K, M, extra, 10).coeffs
    Ab = majorant_arnold_z(lo, K, M, extra + 1, 10).coeffs
    assert all(b >= a for a, b in zip(A, Ab))
