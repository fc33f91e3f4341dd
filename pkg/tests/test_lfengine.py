import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcrit import lfengine as lf
from lcrit.characters import enumerate_characters


def test_zeta_two_exact():
    ev = lf.zeta(2.0 + 0j)
    assert abs(ev.value - math.pi**2 / 6) <= max(ev.error_radius, 1e-14)


def test_zeta_matches_mpmath_random_points():
    rng = np.random.default_rng(7)
    for _ in range(25):
        s = complex(rng.uniform(0.2, 5.0), rng.uniform(-40.0, 40.0))
        ev = lf.zeta(s)
        ref = complex(mp.zeta(mp.mpc(s)))
        assert abs(ev.value - ref) <= ev.error_radius + 1e-11 * (1 + abs(ref))


def test_zeta_prime_matches_mpmath():
    rng = np.random.default_rng(8)
    for _ in range(15):
        s = complex(rng.uniform(0.5, 4.0), rng.uniform(-30.0, 30.0))
        ev = lf.zeta_prime(s)
        ref = complex(mp.zeta(mp.mpc(s), derivative=1))
        assert abs(ev.value - ref) <= ev.error_radius + 1e-10 * (1 + abs(ref))


def test_zeta_second_vs_finite_difference():
    s = 2.3 + 4.0j
    h = 1e-5
    fd = (lf.zeta_prime(s + h).value - lf.zeta_prime(s - h).value) / (2 * h)
    assert abs(lf.zeta_second(s).value - fd) < 1e-8


def test_pole_guard():
    with pytest.raises(lf.ZetaPoleError):
        lf.zeta(1.0 + 0j)
    with pytest.raises(lf.ZetaPoleError):
        lf.zeta(1.0 + 1e-14j)


def test_hurwitz_regularized_matches_mpmath():
    # R(s, a) = zeta(s, a) - 1/(s-1) away from s = 1
    for s in (2.5 + 3.0j, 0.7 - 11.0j, 4.0 + 0j):
        for a in (0.2, 0.5, 0.9, 1.0):
            ev = lf.hurwitz_regularized(s, a)
            ref = complex(mp.zeta(mp.mpc(s), a) - 1 / (mp.mpc(s) - 1))
            assert abs(ev.value - ref) <= ev.error_radius + 1e-11 * (1 + abs(ref))


def test_hurwitz_regularized_finite_at_one():
    # the pole is subtracted: R(s, 1) -> -euler_gamma * (-1)... value at s = 1
    ev = lf.hurwitz_regularized(1.0 + 0j, 1.0)
    # lim_{s->1} zeta(s) - 1/(s-1) = euler gamma
    assert ev.value == pytest.approx(0.5772156649015329, abs=1e-12)


@pytest.mark.parametrize("q,label", [(5, 1), (5, 2), (7, 3), (8, 2), (11, 4)])
def test_dirichlet_l_matches_mpmath(q, label):
    chr = enumerate_characters(q)[label]
    for s in (2.0 + 3.0j, 0.8 - 7.0j, 1.5 + 21.0j, 1.0 + 0.5j):
        ev = lf.dirichlet_l(s, chr)
        ref = complex(lf.dirichlet_l_mp(s, chr))
        assert abs(ev.value - ref) <= ev.error_radius + 1e-10 * (1 + abs(ref))


def test_dirichlet_l_continuous_through_one():
    # the pole terms cancel for non-principal chi; s = 1 is a regular point
    chr = enumerate_characters(5)[1]
    at_one = lf.dirichlet_l(1.0 + 0j, chr).value
    h = 1e-6
    nearby = (lf.dirichlet_l(1.0 + h, chr).value + lf.dirichlet_l(1.0 - h, chr).value) / 2
    assert abs(at_one - nearby) < 1e-9


def test_dirichlet_l_prime_vs_finite_difference():
    chr = enumerate_characters(5)[1]
    s = 1.2 + 2.0j
    h = 1e-5
    fd = (lf.dirichlet_l(s + h, chr).value - lf.dirichlet_l(s - h, chr).value) / (2 * h)
    assert abs(lf.dirichlet_l_prime(s, chr).value - fd) < 1e-8


def test_principal_characters_rejected():
    chr0 = enumerate_characters(5)[0]
    with pytest.raises(ValueError):
        lf.dirichlet_l(1.0 + 0j, chr0)


def test_log_l_exponentiates_back():
    chr = enumerate_characters(7)[1]
    for s in (1.0 + 5.0j, 1.3 - 9.0j, 2.0 + 0j):
        lv = lf.log_l(s, chr)
        direct = lf.dirichlet_l(s, chr).value
        assert abs(cmath.exp(lv.value) - direct) < 1e-9 * (1 + abs(direct))


def test_log_l_branch_continuity():
    # moving slowly along a vertical line never jumps by ~2 pi
    chr = enumerate_characters(5)[1]
    ts = np.linspace(2.0, 8.0, 61)
    vals = [lf.log_l(complex(1.0, t), chr).value for t in ts]
    steps = np.abs(np.diff(vals))
    assert steps.max() < 1.0


def test_euler_product_consistency_sigma_3(tbl):
    # log L(3) vs the prime sum over the full table
    chr = enumerate_characters(5)[1]
    lv = lf.log_l(3.0 + 0j, chr)
    truncated = lf.log_l_truncated(3.0 + 0j, chr, float(tbl.limit), tbl)
    assert abs(lv.value - truncated) < 1e-6


def test_truncated_log_l_defect_decays(tbl):
    chr = enumerate_characters(5)[1]
    d1 = lf.log_l_defect(1.0 + 50.0j, chr, 1e3, tbl)
    d2 = lf.log_l_defect(1.0 + 50.0j, chr, 1e5, tbl)
    assert d2 < d1


def test_log_derivative_consistency():
    chr = enumerate_characters(5)[1]
    s = 1.4 + 3.0j
    ratio = lf.dirichlet_l_prime(s, chr).value / lf.dirichlet_l(s, chr).value
    assert abs(lf.l_log_derivative(s, chr).value - ratio) < 1e-10


@given(sr=st.floats(1.1, 3.0), si=st.floats(-15.0, 15.0))
@settings(max_examples=20, deadline=None)
def test_conjugation_symmetry(sr, si):
    # L(conj s, conj chi) = conj L(s, chi)
    chars = enumerate_characters(5)
    chr, chrbar = chars[1], chars[3]
    s = complex(sr, si)
    a = lf.dirichlet_l(s, chr).value
    b = lf.dirichlet_l(s.conjugate(), chrbar).value
    assert abs(b - a.conjugate()) < 1e-10 * (1 + abs(a))


def test_eval_config_validation():
    with pytest.raises(ValueError):
        lf.EvalConfig(euler_maclaurin_cutoff=5)
    with pytest.raises(ValueError):
        lf.EvalConfig(bernoulli_terms=1)
    with pytest.raises(ValueError):
        lf.EvalConfig(branch_anchor_sigma=1.0)
