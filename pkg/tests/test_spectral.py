import warnings

import mpmath
import numpy as np
import pytest
import sympy as sp

from mkzgs import spectral as Sp
from mkzgs.errors import DomainError
from mkzgs.functions import RAY, UNIT, RealFunction, get_function

X = sp.symbols("x")
SYMBOLIC = {
    "e0": sp.Integer(1),
    "e1": X,
    "x2": X**2,
    "sin": sp.sin(sp.pi * X),
    "rat": X / (2 - X),
}
PTS = np.array([0.0, 0.1, 0.37, 0.5, 0.8, 0.99])


def sym_chain(expr, m):
    out = []
    for _ in range(m):
        expr = sp.simplify(X * (1 - X) ** 2 * sp.diff(expr, X, 2))
        out.append(sp.lambdify(X, expr, "numpy"))
    return out


@pytest.mark.parametrize("name", sorted(SYMBOLIC))
def test_registry_chains_match_sympy(name):
    f = get_function(name)
    expr = SYMBOLIC[name]
    want = sym_chain(expr, 3)
    for m in range(3):
        got = f.dtilde_chain[m](PTS)
        ref = np.broadcast_to(np.asarray(want[m](PTS), dtype=float), PTS.shape)
        assert got == pytest.approx(ref, rel=1e-10, abs=1e-10)
    for j, d in enumerate((f.d1, f.d2, f.d3), start=1):
        ref = sp.lambdify(X, sp.diff(expr, X, j), "numpy")(PTS)
        assert d(PTS) == pytest.approx(np.broadcast_to(np.asarray(ref, dtype=float), PTS.shape), rel=1e-12, abs=1e-12)


def test_sqrt_has_no_chain():
    f = get_function("sqrt")
    assert f.dtilde_chain == () and f.w2_0 is False


def test_dtilde_examples():
    assert Sp.dtilde(get_function("e1"), 0.3) == 0.0
    assert Sp.dtilde(get_function("x2"), 0.5) == pytest.approx(0.25, rel=1e-15)
    sq = lambda z: np.asarray(z, dtype=float) ** 2
    F = RealFunction(RAY, sq, "z^2", d2=lambda z: np.full_like(np.asarray(z, dtype=float), 2.0))
    assert Sp.dtilde(F, 1.0) == 4.0
    assert Sp.dtilde(RealFunction(RAY, sq, "z^2"), 1.0) == pytest.approx(4.0, rel=1e-4)


def test_dtilde_stencil_leaves_domain():
    F = RealFunction(UNIT, lambda x: np.asarray(x, dtype=float) ** 3, "x^3")
    with pytest.raises(DomainError):
        Sp.dtilde(F, 0.0)
    with pytest.raises(DomainError):
        Sp.dtilde(F, 1.0 - 1e-7)


def test_dtilde_power_examples():
    e1, x2 = get_function("e1"), get_function("x2")
    for m in (1, 2, 3):
        assert Sp.dtilde_power(e1, m, 0.4) == 0.0
    assert Sp.dtilde_power(x2, 2, 0.5) == pytest.approx(-0.25, rel=1e-14)
    with pytest.raises(DomainError):
        Sp.dtilde_power(x2, 4, 0.5)


def test_dtilde_cubed_matches_nested_difference_of_square():
    x2 = get_function("x2")
    sq = RealFunction(UNIT, lambda t: Sp.dtilde_power(x2, 2, t), "D~^2 x^2")
    assert Sp.dtilde_power(x2, 3, 0.5) == pytest.approx(Sp.dtilde(sq, 0.5), rel=1e-6)


@pytest.mark.parametrize("name", ["x2", "sin", "rat"])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_numeric_powers_match_chains(name, m):
    f = get_function(name)
    for x in (0.3, 0.5, 0.7):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", Sp.AccuracyWarning)
            num = Sp.dtilde_power(f, m, x, numeric=True)
        ana = Sp.dtilde_power(f, m, x)
        assert num == pytest.approx(ana, rel=1e-3, abs=1e-6)


def test_depth_three_warns():
    with pytest.warns(Sp.AccuracyWarning):
        Sp.dtilde_power(get_function("sin"), 3, 0.5, numeric=True)


@pytest.mark.parametrize("name", ["x2", "sin", "rat"])
def test_analytic_vs_difference_derivatives(name):
    f = get_function(name)
    h = 1e-5
    for x in (0.2, 0.5, 0.8):
        fd1 = (f(x + h) - f(x - h)) / (2 * h)
        assert f.d1(x) == pytest.approx(fd1, rel=1e-4, abs=1e-8)
        plain = RealFunction(UNIT, f.eval, f.label)
        assert Sp.dtilde(plain, x) == pytest.approx(Sp.dtilde(f, x), rel=1e-4, abs=1e-7)


def test_central_moment_examples():
    assert Sp.central_moment(3, 2, 2.0) == pytest.approx(2.0, rel=1e-15)
    assert Sp.central_moment(2, 3, 1.0) == pytest.approx(1.5, rel=1e-15)
    for n in (1, 4, 30):
        for z in (0.0, 0.7, 9.0):
            assert Sp.central_moment(n, 1, z) == 0.0
    with pytest.raises(DomainError):
        Sp.central_moment(3, 4, 1.0)
    with pytest.raises(DomainError):
        Sp.central_moment(0, 2, 1.0)
    with pytest.raises(DomainError):
        Sp.central_moment_series(3, 7, 1.0)


@pytest.mark.parametrize("n", [2, 5, 17, 100])
@pytest.mark.parametrize("z", [0.0, 0.5, 1.0, 3.0, 10.0])
def test_moment_identities(n, z):
    for j in range(4):
        assert Sp.central_moment_series(n, j, z) == pytest.approx(Sp.central_moment(n, j, z), abs=1e-8)
    for alpha in (0.0, 1.0, -2.0):
        series, closed = Sp.phi_alpha(n, alpha, z)
        assert closed == alpha**2 + 2 + 2 / n
        assert series == pytest.approx(closed, abs=1e-7)
    assert abs(Sp.t_weighted_first_moment(n, z)) <= 1e-6


def test_higher_series_moments():
    # fourth central moment of the Baskakov operator: 3 psi^2/n^2 + psi (1 + 6 psi)/n^3
    n, z = 7, 1.5
    psi = z * (1 + z)
    want = 3 * psi**2 / n**2 + psi * (1 + 6 * psi) / n**3
    assert Sp.central_moment_series(n, 4, z) == pytest.approx(want, rel=1e-10)


def test_phi_alpha_examples():
    assert Sp.phi_alpha(2, 1.0, 0.7)[1] == 4.0
    assert Sp.phi_alpha(2, 0.0, 0.7)[1] == 3.0
    series, closed = Sp.phi_alpha(17, -2.0, 3.7)
    assert series == pytest.approx(6.0 + 2 / 17, abs=1e-7)
    assert closed == pytest.approx(6.1176470588, abs=1e-9)


def test_t_weighted_examples():
    assert Sp.t_weighted_first_moment(2, 0.0) == 0.0
    assert abs(Sp.t_weighted_first_moment(5, 1.0)) <= 1e-7
    assert abs(Sp.t_weighted_first_moment(100, 10.0)) <= 1e-6


def test_tail_sum_examples():
    t = Sp.tail_sums(2)
    with mpmath.workdps(30):
        lam = float(mpmath.nsum(lambda k: 1 / (k * (k + 1) ** 2), [2, mpmath.inf]))
        theta = float(mpmath.nsum(lambda k: 1 / (k * k * (k + 1) ** 2), [2, mpmath.inf]))
    assert t.lam == pytest.approx(lam, rel=1e-14)
    assert t.theta == pytest.approx(theta, rel=1e-14)
    # the seven-digit references 0.1050664 and 0.0398679 are off in the last digit
    assert t.lam == pytest.approx(0.1050664, abs=1e-6)
    assert t.theta == pytest.approx(0.0398679, abs=1e-6)
    assert 1 / 12 <= t.lam <= 1 / 4 and t.theta <= 4 / 72
    big = Sp.tail_sums(1000)
    assert 1 / 3e6 <= big.lam <= 1e-6
    with pytest.raises(DomainError):
        Sp.tail_sums(1)


def test_tail_sums_closed_vs_direct():
    for n in (2, 3, 17, 250):
        t = Sp.tail_sums(n)
        lam, theta, rem = Sp.tail_sums_direct(n, cutoff=1_000_000)
        assert t.lam == pytest.approx(lam, abs=rem + 1e-14)
        assert t.theta == pytest.approx(theta, abs=rem + 1e-14)


def test_tail_sums_bounds_and_monotone():
    sums = [Sp.tail_sums(n) for n in range(2, 1001)]
    assert all(s.bounds_hold() for s in sums)
    lam = np.array([s.lam for s in sums])
    theta = np.array([s.theta for s in sums])
    assert np.all(np.diff(lam) < 0) and np.all(np.diff(theta) < 0)
