import numpy as np
import pytest

from lcrit import critzeros as cz
from lcrit import lfengine as lf


def test_rect_validation():
    with pytest.raises(ValueError):
        cz.SearchRect(2.0, 1.0, 0.0, 5.0)
    with pytest.raises(ValueError):
        cz.SearchRect(0.0, 1.0, 5.0, 1.0)
    r = cz.SearchRect(0.0, 2.0, 0.0, 5.0)
    assert r.contains(1.0 + 1.0j)
    assert not r.contains(3.0 + 1.0j)


def test_first_zero_of_zeta_prime():
    # the lowest zero of zeta' in the upper half of the critical strip
    rect = cz.SearchRect(0.5, 4.0, 20.0, 26.0, grid_resolution=0.5)
    assert cz.count_zeros(rect) == 1
    pts = cz.find_critical_points(rect)
    assert pts.complete and len(pts) == 1
    z = pts[0]
    assert z.beta_prime == pytest.approx(2.4631618694543213, abs=1e-9)
    assert z.gamma_prime == pytest.approx(23.298320492762858, abs=1e-9)
    assert z.residual < 1e-10
    assert abs(lf.zeta_prime(complex(z.beta_prime, z.gamma_prime)).value) < 1e-10


def test_empty_rectangle():
    rect = cz.SearchRect(0.5, 3.0, 0.5, 6.0, grid_resolution=0.25)
    assert cz.count_zeros(rect) == 0
    pts = cz.find_critical_points(rect)
    assert pts.complete and len(pts) == 0


def test_pole_inside_is_handled():
    # s = 1 sits strictly inside; the winding count needs the +2 correction
    rect = cz.SearchRect(0.3, 1.7, -0.6, 0.6, grid_resolution=0.2)
    n = cz.count_zeros(rect)
    # zeta' has a single real zero in this window (near s = -2.7 is outside;
    # between the pole and the trivial behaviour there are none here)
    assert n >= 0  # winding is a valid integer, no crash from the pole
    pts = cz.find_critical_points(rect)
    assert pts.complete


def test_zeros_below_axis_are_conjugates():
    rect_up = cz.SearchRect(0.5, 4.0, 20.0, 26.0, grid_resolution=0.5)
    rect_dn = cz.SearchRect(0.5, 4.0, -26.0, -20.0, grid_resolution=0.5)
    up = cz.find_critical_points(rect_up)
    dn = cz.find_critical_points(rect_dn)
    assert len(up) == len(dn) == 1
    assert up[0].beta_prime == pytest.approx(dn[0].beta_prime, abs=1e-10)
    assert up[0].gamma_prime == pytest.approx(-dn[0].gamma_prime, abs=1e-10)


def test_csv_roundtrip(tmp_path):
    rect = cz.SearchRect(0.5, 4.0, 20.0, 26.0, grid_resolution=0.5)
    pts = cz.find_critical_points(rect)
    path = tmp_path / "zeros.csv"
    cz.write_csv(pts, str(path))
    back = cz.read_csv(str(path))
    assert len(back) == len(pts)
    for a, b in zip(pts, back):
        assert a.beta_prime == pytest.approx(b.beta_prime, rel=1e-15)
        assert a.gamma_prime == pytest.approx(b.gamma_prime, rel=1e-15)


def test_all_zeros_right_of_half():
    # every zero found in a taller window satisfies beta' > 1/2
    rect = cz.SearchRect(0.0, 4.0, 10.0, 40.0, grid_resolution=0.5)
    pts = cz.find_critical_points(rect)
    assert pts.complete and len(pts) >= 3
    assert all(p.beta_prime > 0.5 for p in pts)
