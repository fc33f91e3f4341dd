import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcrit import auxseries as aux
from lcrit import primesums as ps
from lcrit.characters import enumerate_characters


@pytest.fixture(scope="module")
def chr5():
    return enumerate_characters(5)[1]


@pytest.fixture(scope="module")
def scheme_b(chr5, tbl):
    return aux.make_scheme("B", chr5, 1e5, tbl, delta=0.75)


def test_params_validation(chr5):
    with pytest.raises(ValueError):
        aux.SchemeParams(x=1e5, delta=0.4, m=2.0, chr=chr5)
    with pytest.raises(ValueError):
        aux.SchemeParams(x=1e5, delta=0.75, m=0.5, chr=chr5)
    with pytest.raises(ValueError):
        aux.SchemeParams(x=20.0, delta=0.51, m=2.0, chr=chr5)  # x^eps <= q
    chr0 = enumerate_characters(5)[0]
    with pytest.raises(ValueError):
        aux.SchemeParams(x=1e5, delta=0.75, m=2.0, chr=chr0)


@given(delta=st.floats(0.501, 0.999))
@settings(max_examples=50, deadline=None)
def test_curvature_identity(delta):
    # 2 delta^2 - 1 - eps^2 = -2 (delta - 1)^2 with eps = 2 delta - 1
    eps = 2 * delta - 1
    curv = 2 * delta**2 - 1 - eps**2
    assert curv == pytest.approx(-2 * (delta - 1) ** 2, abs=1e-12)
    assert curv < 0


def test_breakpoints_ordered(chr5):
    pr = aux.SchemeParams(x=1e6, delta=0.75, m=3.0, chr=chr5)
    b1, b2, b3, b4 = pr.breakpoints()
    assert b1 < b2 < b3 < b4 == pr.x


@pytest.mark.parametrize("kind", aux.SCHEME_KINDS)
def test_weights_unimodular_off_ramified(kind, chr5, tbl):
    scheme = aux.make_scheme(kind, chr5, 1e5, tbl, delta=0.75)
    p = tbl.primes_upto(1e5)
    w = scheme.prime_weights(p)
    mag = np.abs(w)
    assert np.all((np.abs(mag - 1) < 1e-12) | (mag < 1e-12))
    # primes beyond x get zero weight
    beyond = scheme.prime_weights(np.array([1000003]))
    assert beyond[0] == 0


@pytest.mark.parametrize("kind", aux.SCHEME_KINDS)
def test_weight_angles_match_weights(kind, chr5, tbl):
    scheme = aux.make_scheme(kind, chr5, 1e4, tbl, delta=0.75)
    p = tbl.primes_upto(1e4)
    w = scheme.prime_weights(p)
    for i, pi in enumerate(p[:200]):
        if abs(w[i]) < 1e-12:
            continue
        ang = scheme.prime_weight_angle(int(pi))
        expect = np.exp(2j * np.pi * float(ang))
        assert abs(w[i] - expect) < 1e-12


def test_small_prime_override_is_real(chr5, tbl):
    # B and B' force weight -1/+1 on p | q below x^eps; C and C' force +-1 everywhere below
    chr15 = enumerate_characters(15)[1]
    for kind, expect in (("B", 1), ("Bprime", -1)):
        scheme = aux.make_scheme(kind, chr15, 1e6, tbl, delta=0.75)
        w = scheme.prime_weights(np.array([3, 5]))
        assert np.allclose(w, expect)
    for kind, expect in (("C", 1), ("Cprime", -1)):
        scheme = aux.make_scheme(kind, chr15, 1e6, tbl, delta=0.75)
        w = scheme.prime_weights(np.array([2, 3, 5, 7]))  # all in the first range
        assert np.allclose(w, expect)


def test_s1_constant_dual_route(chr5, tbl):
    direct = aux.s1_constant(chr5, tbl)
    series = aux.s1_constant_series(chr5, float(tbl.limit), tbl)
    assert abs(direct - series) < 5e-3  # series converges like 1/log at 1e6


def test_s2_constant_dual_route(chr5, tbl):
    direct = aux.s2_constant(chr5, tbl)
    series = aux.s2_constant_series(chr5, float(tbl.limit), tbl)
    assert abs(direct - series) < 5e-3


def test_choose_m(chr5, tbl):
    s = aux.s1_constant(chr5, tbl)
    m2 = aux.choose_m(s, 2)
    assert 4 * math.log(m2) == pytest.approx(s.real + 4 * abs(s) + 1)
    m4 = aux.choose_m(s, 4)
    assert 4 * math.log(m4) == pytest.approx(-s.real + 4 * abs(s) + 1)
    with pytest.raises(ValueError):
        aux.choose_m(s, 3)


def test_linear_form_value_at_one(scheme_b):
    # W_x(1) = S_1 - 2 log m exactly
    pr = scheme_b.params
    got = aux.linear_form(1.0 + 0j, scheme_b)
    expect = pr.s_const - 2 * math.log(pr.m)
    assert abs(got - expect) < 1e-12


def test_closed_form_root_zeroes_linear_form(scheme_b):
    root = aux.closed_form_root(scheme_b)
    assert abs(aux.linear_form(root, scheme_b)) < 1e-10
    assert root.real > 1


def test_newton_root_close_to_closed_form(scheme_b, tbl):
    root = aux.newton_root(scheme_b, tbl)
    closed = aux.closed_form_root(scheme_b)
    logx = math.log(scheme_b.params.x)
    assert abs(root - closed) < 50.0 / logx**3
    # Newton target: the full auxiliary series is small at the root
    assert abs(aux.aux_series(root, scheme_b, tbl) ) < 1e-3 / logx**3 + 1e-9


def test_rouche_circle_geometry(scheme_b):
    circles = aux.rouche_circles(scheme_b.params)
    assert circles.outer_radius == pytest.approx(2 * circles.inner_radius)
    # inner circle sits in Re s >= 1
    pts = aux.inner_circle_points(scheme_b.params)
    assert np.all(pts.real >= 1 - 1e-12)


def test_root_inside_inner_circle(scheme_b):
    assert aux.root_in_inner_circle(scheme_b)


def test_linear_form_min_on_inner_exceeds_eighth(scheme_b):
    # |W_x| >= 1/8 * (1 - o(1)) on the inner circle by construction
    assert aux.linear_form_min_on_inner(scheme_b) > 0.1


def test_v_series_shift_at_tau_zero(chr5, tbl):
    s = 1.0 + 0j
    plain = aux.v_series_shifted(s, 0, 1e4, tbl, over_log=True, chr=chr5)
    pp = tbl.prime_powers(1e4)
    chi = ps.weights_for_character(chr5, pp.n)
    direct = complex(np.sum(chi / pp.k * np.exp(-pp.logn)))
    assert abs(plain - direct) < 1e-10


def test_aux_series_conjugation(chr5, tbl):
    # conjugate character gives the conjugate series at real s
    chars = enumerate_characters(5)
    sch = aux.make_scheme("B", chars[1], 1e4, tbl, delta=0.75)
    schbar = aux.make_scheme("B", chars[3], 1e4, tbl, delta=0.75)
    a = aux.aux_series(1.2 + 0j, sch, tbl)
    b = aux.aux_series(1.2 + 0j, schbar, tbl)
    assert abs(a - b.conjugate()) < 1e-10


def test_m_series_value_at_one(chr5, tbl):
    # scheme C transfer: M_x(1) tracks -log(phi(q)/q) + V-type sum; the
    # ramified bookkeeping must close to a small residual
    sch_c = aux.make_scheme("C", chr5, 1e4, tbl, delta=0.75)
    lhs, rhs, defect = aux.m_series_ramified_check(sch_c, tbl)
    assert defect < 1e-3
    sch_cp = aux.make_scheme("Cprime", chr5, 1e4, tbl, delta=0.75)
    _, _, defect_p = aux.m_series_ramified_check(sch_cp, tbl)
    assert defect_p < 1e-3


def test_linear_domain_guard(scheme_b):
    with pytest.raises(ValueError):
        aux.linear_form(5.0 + 0j, scheme_b)
