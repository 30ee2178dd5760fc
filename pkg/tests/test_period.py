import math
import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3lat import exact_linalg as xl
from k3lat.catalog import K3_LABELS, k3_lattice
from k3lat.period import (GluingParams, blowup_tangent_cohomology, example_period,
                          im_x_threshold, in_span, monodromy_type_II, period_from_params,
                          period_pairing, picard_lattice, random_params, realizability_check,
                          tube_closed_form, tube_integral_check, v_vector, volume_log_formula)
from k3lat.symbolic import example_algebra, gaussian_algebra


def test_example_period_entries():
    s = example_period()
    A = s.algebra
    mu, i, x = A.gen("mu"), A.gen("i"), A.gen("x")
    assert s["A_ab"] == 2 * mu and s["B_g"] == mu and s["B_a"] == i and s["B_b"] == 1
    assert s["A_ga"] == -mu * mu - i * x
    assert period_pairing(s, s).is_zero()


def test_example_hermitian_pairing_and_threshold():
    s = example_period()
    A = s.algebra
    pr = period_pairing(s, s, conjugate_second=True)
    i, x, xb = A.gen("i"), A.gen("x"), A.gen("xbar")
    assert pr == -4 + 2 * i * xb - 2 * i * x
    # -4 + 4 Im x > Lambda  <=>  Im x > 1 + Lambda/4
    assert im_x_threshold(s, 0) == 1.0
    assert im_x_threshold(s, 2) == 1.5


def test_realizability_codes():
    s = example_period()
    A = s.algebra
    mu = A.gen("mu")
    ok = realizability_check(s, 0, mu, 0, values={"x": 3j, "xbar": -3j})
    assert ok.passed
    low = realizability_check(s, 0, mu, 0, values={"x": 0.5j, "xbar": -0.5j})
    assert low.failed == "c"
    assert realizability_check(s, 1, mu).failed == "precondition"
    # v = A_ab pairs only with B_g, so zeroing B_g keeps xi orthogonal
    degenerate = s.replace("B_b", 0).replace("B_g", 0)
    assert realizability_check(degenerate, 0, 0).failed == "a"


def test_condition_b():
    G = gaussian_algebra()
    p = GluingParams(G, tau=G.gen("i"), a_alpha=0, a_beta=1)
    s = period_from_params(p).replace("B_a", -G.gen("i"))
    # keep orthogonality to v: only B_a changed, which v does not see
    assert realizability_check(s, 0, 1).failed == "b"


def test_tau_in_upper_half_plane():
    G = gaussian_algebra()
    with pytest.raises(ValueError):
        GluingParams(G, tau=-G.gen("i"), a_alpha=0, a_beta=0)


@given(st.integers(0, 10 ** 6))
def test_random_gluing_identities(seed):
    rng = random.Random(seed)
    p = random_params(rng)
    s = period_from_params(p)
    assert period_pairing(s, s).is_zero()
    assert period_pairing(s, v_vector(p.algebra, p.a_alpha, p.a_beta)).is_zero()
    i = p.algebra.gen("i")
    s2 = period_from_params(replace(p, x=p.x + i))
    slope = (period_pairing(s2, s2, True) - period_pairing(s, s, True)).rational()
    assert slope == 4 * p.tau.imag_part().rational()


def test_monodromy_type_II():
    m = monodromy_type_II()
    G = k3_lattice()[0].G
    N = xl.mat_sub(m.M, xl.identity(22))
    assert xl.mat_mul(xl.mat_mul(xl.transpose(m.M), G), m.M) == G
    assert not any(any(r) for r in xl.mat_mul(N, N))
    assert any(any(r) for r in N)


def test_picard_rank_17():
    L, rank, basis = picard_lattice(example_period())
    assert rank == 17
    assert L.inertia == (0, 17, 0)
    for lab in ["B_g"] + [l for l in K3_LABELS if l.startswith("C")]:
        assert in_span(basis, [1 if k == lab else 0 for k in K3_LABELS])
    assert not in_span(basis, [1 if k == "A_ab" else 0 for k in K3_LABELS])


def test_generic_period_has_no_picard():
    A = example_algebra()
    p = GluingParams(A, tau=A.gen("i"), a_alpha=0, a_beta=A.gen("mu"), x=A.gen("x"),
                     c_plus=[A.gen("mu") * k + A.gen("i") for k in range(1, 9)],
                     c_minus=[A.gen("i") * A.gen("mu") * k for k in range(1, 9)])
    _, rank, _ = picard_lattice(period_from_params(p))
    assert rank < 17


@given(st.floats(-3, 3), st.floats(1.05, 30), st.floats(1.05, 30))
def test_tube_integral(a, Rp, Rm):
    assert abs(tube_integral_check(a, Rp, Rm) - tube_closed_form(a, Rp, Rm)) < 1e-6


def test_tube_integral_rejects_bad_radii():
    with pytest.raises(ValueError):
        tube_integral_check(0, 0.5, 2)


def test_volume_and_appendix():
    assert volume_log_formula(math.e, 1, 1) == pytest.approx(4 * math.pi)
    assert blowup_tangent_cohomology(9) == (0, 10, 0)
    assert blowup_tangent_cohomology(4) == (0, 0, 0)
    with pytest.raises(ValueError):
        blowup_tangent_cohomology(3)
