"""Weighted second-derivative operators, Baskakov central moments, the
T-weighted series identities and the tail sums lambda(n), theta(n)."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, polygamma

from . import _scalar as S
from . import kernels
from .basis import TruncationPolicy
from .errors import DomainError
from .functions import RAY, UNIT, RealFunction


class AccuracyWarning(UserWarning):
    """A purely numeric nested difference of depth 3 was used."""


EPS = np.finfo(float).eps


def weight_poly(domain: str, x):
    x = np.asarray(x, dtype=float)
    return x * (1.0 - x) ** 2 if domain == UNIT else x * (1.0 + x)


def _fd_step(x, depth):
    if depth == 1:
        return max(1e-5, math.sqrt(EPS) * (1.0 + abs(x)))
    # nested depth m with one Richardson step: balance h^4 against eps / h^(2m)
    return EPS ** (1.0 / (2 * depth + 4)) * (1.0 + abs(x))


def _check_stencil(domain, x, reach):
    if x - reach < 0.0 or (domain == UNIT and x + reach >= 1.0):
        raise DomainError(f"finite-difference stencil [{x - reach:.3g}, {x + reach:.3g}] leaves the domain")


def _nested_h(f, m, x, h):
    def level(j, t):
        if j == 0:
            return float(f.eval(np.asarray(t)))
        return float(weight_poly(f.domain, t)) * (
            level(j - 1, t + h) - 2.0 * level(j - 1, t) + level(j - 1, t - h)) / (h * h)
    return level(m, x)


def _nested(f: RealFunction, m: int, x: float) -> float:
    h = _fd_step(x, m)
    _check_stencil(f.domain, x, m * h)
    if m == 1:
        return _nested_h(f, 1, x, h)
    return (4.0 * _nested_h(f, m, x, 0.5 * h) - _nested_h(f, m, x, h)) / 3.0


def dtilde(f: RealFunction, point):
    """phi f'' on the unit side, psi F'' on the half-line; analytic when a
    second derivative closure is present, centred differences otherwise."""
    x = np.asarray(point, dtype=float)
    if f.d2 is not None:
        out = weight_poly(f.domain, x) * np.asarray(f.d2(x), dtype=float)
        return out if x.ndim else float(out)
    out = np.array([_nested(f, 1, float(t)) for t in x.ravel()]).reshape(x.shape)
    return out if x.ndim else float(out)


def dtilde_power(f: RealFunction, m: int, point, numeric: bool = False):
    """m-fold application (m = 1, 2, 3). Registry chains are used when present
    unless ``numeric`` forces nested differences."""
    if m not in (1, 2, 3):
        raise DomainError("power must be 1, 2 or 3")
    x = np.asarray(point, dtype=float)
    if not numeric:
        if f.dtilde_chain and len(f.dtilde_chain) >= m:
            out = np.asarray(f.dtilde_chain[m - 1](x), dtype=float)
            out = np.broadcast_to(out, x.shape).copy() if out.shape != x.shape else out
            return out if x.ndim else float(out)
        if m == 1:
            return dtilde(f, point)
    if m == 3:
        warnings.warn("depth-3 nested differences lose about six digits", AccuracyWarning, stacklevel=2)
    out = np.array([_nested(f, m, float(t)) for t in x.ravel()]).reshape(x.shape)
    return out if x.ndim else float(out)


# --------------------------------------------------------------------------
# Baskakov-basis series


def _basis_run(n, z, growth, pol: TruncationPolicy, pole_order=0):
    lo, hi = kernels.windows(n, np.array([float(z)]), growth, pol.tail_tol, pol.max_terms, pole_order)
    k = np.arange(lo[0], hi[0] + 1, dtype=float)
    if z == 0.0:
        return k, (k == 0).astype(float)
    lp = gammaln(n + k) - gammaln(k + 1.0) - gammaln(n) + k * math.log(z) - (n + k) * math.log1p(z)
    return k, np.exp(lp)


def _t_vec(n, k, z):
    if z >= 1.0:
        d = k - n * z
        return (d * d - (1.0 + 2.0 * z) * d) / (z * (1.0 + z)) - n
    return k * (k - 1.0) * (1.0 + z) / z - 2.0 * k * (n + k) + (n + k) * (n + k + 1.0) * z / (1.0 + z)


def central_moment(n: int, j: int, z: float) -> float:
    """Closed forms of the Baskakov central moments for j <= 3."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if z < 0:
        raise DomainError("z must be >= 0")
    psi = z * (1.0 + z)
    forms = {0: 1.0, 1: 0.0, 2: psi / n, 3: (1.0 + 2.0 * z) * psi / n ** 2}
    if j not in forms:
        raise DomainError("closed forms exist for j <= 3; use central_moment_series")
    return forms[j]


def central_moment_series(n: int, j: int, z: float, pol: TruncationPolicy = TruncationPolicy()) -> float:
    """sum_k (k/n - z)^j P_{n,k}(z), j <= 6."""
    if not 0 <= j <= 6:
        raise DomainError("series moments are provided for j <= 6")
    k, p = _basis_run(n, z, j, pol)
    return float(math.fsum((k / n - z) ** j * p))


def phi_alpha(n: int, alpha: float, z: float, pol: TruncationPolicy = TruncationPolicy()):
    """(series value, closed form alpha^2 + 2 + 2/n) of sum_k (alpha - T_{n,k}/n)^2 P_{n,k}(z).

    At z = 0 the products T P and T^2 P are taken as their limits: every
    T P vanishes, and T^2 P survives only for k = 2 with limit 4 C(n+1, 2).
    """
    closed = alpha * alpha + 2.0 + 2.0 / n
    if z == 0.0:
        return alpha * alpha + 4.0 * (n * (n + 1) / 2.0) / n ** 2, closed
    k, p = _basis_run(n, z, 4, pol, pole_order=2)
    t = _t_vec(float(n), k, z)
    return float(math.fsum((alpha - t / n) ** 2 * p)), closed


def t_weighted_first_moment(n: int, z: float, pol: TruncationPolicy = TruncationPolicy()) -> float:
    """sum_k T_{n,k}(z) (k/n - z) P_{n,k}(z); zero in exact arithmetic."""
    if z == 0.0:
        return 0.0
    k, p = _basis_run(n, z, 3, pol, pole_order=1)
    t = _t_vec(float(n), k, z)
    return float(math.fsum(t * (k / n - z) * p))


# --------------------------------------------------------------------------
# tail sums


@dataclass(frozen=True)
class TailSums:
    n: int
    lam: float
    theta: float

    def bounds_hold(self) -> bool:
        n = self.n
        return (1.0 / (3 * n * n) <= self.lam <= 1.0 / (n * n)) and self.theta <= 4.0 / (9.0 * n ** 3)


def tail_sums(n: int) -> TailSums:
    """lambda(n) = sum_{k>=n} 1/(k (k+1)^2) and theta(n) = sum_{k>=n} 1/(k^2 (k+1)^2).

    Partial fractions give lambda(n) = 1/n - psi_1(n+1) and
    theta(n) = psi_1(n) + psi_1(n+1) - 2/n with psi_1 the trigamma function.
    """
    if n < 2:
        raise DomainError("tail sums are defined here for n >= 2")
    tri_n = float(polygamma(1, n))
    tri_n1 = float(polygamma(1, n + 1))
    return TailSums(n, 1.0 / n - tri_n1, tri_n + tri_n1 - 2.0 / n)


def tail_sums_direct(n: int, cutoff: int = 10_000_000) -> tuple[float, float, float]:
    """Direct summation to ``cutoff`` plus the integral remainder.

    Returns (lambda, theta, remainder bound). The remainder of both sums past
    the cutoff N is below 1/(2 N^2).
    """
    k = np.arange(cutoff, n - 1, -1, dtype=float)  # small terms first
    lam = math.fsum(1.0 / (k * (k + 1.0) ** 2))
    th = math.fsum(1.0 / (k * k * (k + 1.0) ** 2))
    n_c = float(cutoff)
    lam += 1.0 / (2.0 * (n_c + 1.0) ** 2)  # integral of x^-3 from N+1
    th += 1.0 / (3.0 * (n_c + 1.0) ** 3)
    return lam, th, 1.0 / (2.0 * n_c ** 2)
