import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mkzgs import bridge as Br
from mkzgs.errors import DomainError
from mkzgs.functions import RAY, UNIT, RealFunction, constant, get_function, ray_identity
from mkzgs.interp import GRID_EDGE
from mkzgs.operators import OperatorConfig
from mkzgs.spectral import dtilde

e0, e1, sin = (get_function(s) for s in ("e0", "e1", "sin"))


def test_sigma_examples():
    assert Br.sigma(0.0) == 0.0
    assert Br.sigma(0.5) == 1.0
    assert Br.sigma_inv(3.0) == 0.75
    with pytest.raises(DomainError):
        Br.sigma(1.0 - 1e-16)
    with pytest.raises(DomainError):
        Br.sigma(-0.1)
    with pytest.raises(DomainError):
        Br.sigma_inv(-1.0)


@given(x=st.floats(0.0, 0.999999))
def test_sigma_round_trip(x):
    assert Br.sigma_inv(Br.sigma(x)) == pytest.approx(x, rel=1e-15, abs=1e-300)


def test_sigma_monotone_and_weight_range():
    x = np.linspace(0.0, 0.999, 1001)
    assert np.all(np.diff(Br.sigma(x)) > 0)
    w = Br.weight(Br.sigma(x))
    assert np.all((w > 0) & (w <= 1))


def test_to_unit_examples():
    x = np.linspace(0.0, 0.99, 17)
    one_plus = RealFunction(RAY, lambda z: 1.0 + np.asarray(z, dtype=float), "1+z")
    assert Br.to_unit(one_plus)(x) == pytest.approx(np.ones_like(x), abs=1e-14)
    assert Br.to_unit(constant(1.0, RAY))(x) == pytest.approx(1.0 - x, abs=1e-15)
    with pytest.raises(DomainError):
        Br.to_unit(e1)


def test_to_ray_examples():
    z = np.array([0.0, 0.5, 2.0, 30.0])
    assert Br.to_ray(e0)(z) == pytest.approx(1.0 + z, rel=1e-15)
    assert Br.to_ray(e1)(z) == pytest.approx(z, rel=1e-15)
    with pytest.raises(DomainError):
        Br.to_ray(ray_identity())


@pytest.mark.parametrize("name", ["e0", "e1", "x2", "sin", "rat", "sqrt"])
def test_round_trip(name):
    f = get_function(name)
    x = np.linspace(0.0, 0.99, 41)
    assert Br.to_unit(Br.to_ray(f))(x) == pytest.approx(f(x), abs=1e-14)


@pytest.mark.parametrize("name", ["x2", "sin", "rat"])
def test_transformed_derivatives(name):
    f = get_function(name)
    F = Br.to_ray(f)
    z, h = np.array([0.2, 1.0, 3.5]), 1e-4
    fd1 = (F(z + h) - F(z - h)) / (2 * h)
    fd2 = (F(z + h) - 2 * F(z) + F(z - h)) / h**2
    assert F.d1(z) == pytest.approx(fd1, rel=1e-6)
    assert F.d2(z) == pytest.approx(fd2, rel=1e-4)
    back = Br.to_unit(F)
    x = np.array([0.1, 0.5, 0.8])
    assert back.d1(x) == pytest.approx(f.d1(x), rel=1e-12, abs=1e-13)
    assert back.d2(x) == pytest.approx(f.d2(x), rel=1e-12, abs=1e-13)


def test_conjugation():
    # D~(T F) = T(psi F'') with differences on the left and analytic F'' on the right
    F = RealFunction(RAY, lambda z: np.sin(np.asarray(z, dtype=float)) + np.asarray(z, dtype=float) ** 2,
                     "sin z + z^2", d2=lambda z: 2.0 - np.sin(np.asarray(z, dtype=float)))
    f = Br.to_unit(RealFunction(RAY, F.eval, F.label))
    rhs = Br.to_unit(RealFunction(RAY, lambda z: dtilde(F, z), "psi F''"))
    for x in (0.1, 0.3, 0.5, 0.7):
        assert dtilde(f, x) == pytest.approx(rhs(x), abs=1e-6)


def test_bridge_residual_examples():
    grid = np.linspace(0.0, 0.95, 33)
    for n in (1, 4, 17):
        assert Br.bridge_residual(n, e0, grid) <= 1e-9
    assert Br.bridge_residual(5, e1, grid) <= 1e-9
    assert Br.bridge_residual(10, sin, grid) <= 1e-7


def test_norm_correspondence_examples():
    assert Br.norm_correspondence(e0) == pytest.approx((1.0, 1.0), abs=1e-12)
    a, b = Br.norm_correspondence(e1)
    assert a == pytest.approx(GRID_EDGE, abs=1e-12) and b == pytest.approx(GRID_EDGE, abs=1e-12)
    a, b = Br.norm_correspondence(sin)
    assert a == pytest.approx(b, abs=1e-12) and a == pytest.approx(1.0, abs=1e-5)


def test_matched_grids():
    x, z = Br.matched_grids(65)
    assert x[0] == 0.0 and x[-1] == pytest.approx(GRID_EDGE, rel=1e-15)
    assert Br.sigma_inv(z) == pytest.approx(x, rel=1e-15)


@pytest.mark.parametrize("name", ["x2", "sin"])
def test_modified_norm_correspondence(name):
    (m_u, m_r), (d_u, d_r) = Br.modified_norm_correspondence(OperatorConfig(9), get_function(name))
    assert m_u == pytest.approx(m_r, abs=1e-7)
    assert d_u == pytest.approx(d_r, abs=1e-7)
