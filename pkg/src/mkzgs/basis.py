"""MKZ and Baskakov basis functions, the spectral factor T_{n,k} and the
modified (Goodman-Sharma type) bases.

Notation: ``x`` is a point of the unit interval [0, 1), ``z`` a point of the
half-line [0, inf). All evaluators return 0 for k < 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import nbinom

from . import _scalar as S
from . import kernels
from .errors import DomainError, SingularityError

LOG_SPACE_THRESHOLD = 30


@dataclass(frozen=True)
class TruncationPolicy:
    """How infinite basis series are cut.

    ``tail_tol`` bounds the neglected mass sum (1+k)^growth_degree * basis
    outside the summation window; ``max_terms`` caps the upper index.
    """

    tail_tol: float = 1e-12
    max_terms: int = 2_000_000
    growth_degree: int = 0

    def __post_init__(self):
        if not self.tail_tol > 0:
            raise DomainError("tail_tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if self.growth_degree not in (0, 1, 2):
            raise DomainError("growth_degree must be 0, 1 or 2")

    def with_growth(self, degree: int) -> "TruncationPolicy":
        return TruncationPolicy(self.tail_tol, self.max_terms, degree)


def _check_order(n):
    if int(n) != n or n < 1:
        raise DomainError(f"order n must be an integer >= 1, got {n!r}")


def _check_unit(x):
    if not (0.0 <= x < 1.0):
        raise DomainError(f"unit-interval point must lie in [0, 1), got {x!r}")


def _check_ray(z):
    if not (z >= 0.0) or math.isinf(z):
        raise DomainError(f"half-line point must be finite and >= 0, got {z!r}")


def _log_binom(a, b):
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def mkz_basis(n: int, k: int, x: float) -> float:
    """P_{n,k}(x) = C(n+k, k) x^k (1-x)^(n+1)."""
    _check_order(n)
    _check_unit(x)
    if k < 0:
        return 0.0
    if n + k <= LOG_SPACE_THRESHOLD:
        return math.comb(n + k, k) * x**k * (1.0 - x) ** (n + 1)
    if x == 0.0:
        return 1.0 if k == 0 else 0.0
    # negative binomial pmf with n + 1 successes; the library evaluator avoids
    # the cancellation of large log-gamma differences
    return float(nbinom.pmf(k, n + 1, 1.0 - x))


def baskakov_basis(n: int, k: int, z: float) -> float:
    """Baskakov basis C(n+k-1, k) z^k (1+z)^(-n-k)."""
    _check_order(n)
    _check_ray(z)
    if k < 0:
        return 0.0
    if n + k <= LOG_SPACE_THRESHOLD:
        return math.comb(n + k - 1, k) * z**k * (1.0 + z) ** (-n - k)
    if z == 0.0:
        return 1.0 if k == 0 else 0.0
    return float(nbinom.pmf(k, n, 1.0 / (1.0 + z)))


def baskakov_recurrences(n: int, k: int, z: float) -> tuple[float, float]:
    """The index-shift identities evaluated from the right-hand sides.

    Returns ``(n z P_{n+1,k-1}(z), n (1+z) P_{n+1,k}(z))`` which equal
    ``k P_{n,k}(z)`` and ``(n+k) P_{n,k}(z)`` respectively.
    """
    return (n * z * baskakov_basis(n + 1, k - 1, z),
            n * (1.0 + z) * baskakov_basis(n + 1, k, z))


def t_factor(n: int, k: int, z: float, form: str = "rational") -> float:
    """Spectral factor T_{n,k}(z), the eigen-multiplier of psi D^2 on P_{n,k}.

    ``form="rational"`` evaluates
    k(k-1)(1+z)/z - 2k(n+k) + (n+k)(n+k+1) z/(1+z);
    ``form="central"`` evaluates n[-1 - (1+2z)/psi (k/n - z) + n/psi (k/n - z)^2]
    with psi = z(1+z), which is undefined at z = 0.
    """
    _check_order(n)
    _check_ray(z)
    if z == 0.0:
        if k >= 2 or form == "central":
            raise SingularityError("T_{n,k} has a pole at z = 0; use t_times_basis")
        return -2.0 * k * (n + k)
    if form == "rational":
        return k * (k - 1.0) * (1.0 + z) / z - 2.0 * k * (n + k) + (n + k) * (n + k + 1.0) * z / (1.0 + z)
    if form == "central":
        psi = z * (1.0 + z)
        u = k / n - z
        return n * (-1.0 - (1.0 + 2.0 * z) / psi * u + n / psi * u * u)
    raise ValueError(f"unknown form {form!r}")


def t_factor_d1(n: int, k: int, z: float) -> float:
    _check_ray(z)
    if z == 0.0:
        if k >= 2:
            raise SingularityError("T'_{n,k} has a pole at z = 0")
        return float((n + k) * (n + k + 1))
    return -k * (k - 1.0) / z**2 + (n + k) * (n + k + 1.0) / (1.0 + z) ** 2


def t_factor_d2(n: int, k: int, z: float) -> float:
    _check_ray(z)
    if z == 0.0:
        if k >= 2:
            raise SingularityError("T''_{n,k} has a pole at z = 0")
        return -2.0 * (n + k) * (n + k + 1.0)
    return 2.0 * k * (k - 1.0) / z**3 - 2.0 * (n + k) * (n + k + 1.0) / (1.0 + z) ** 3


def t_times_basis(n: int, k: int, z: float) -> float:
    """T_{n,k}(z) P_{n,k}(z) = psi P''_{n,k}(z), finite down to z = 0.

    Below z = 1 the three rational terms are combined with P_{n,k} in log
    space so the 1/z of the first term is absorbed into z^k; above z = 1 the
    stable central form of T multiplies the basis value.
    """
    _check_order(n)
    _check_ray(z)
    if k < 0:
        return 0.0
    if z == 0.0:
        return 0.0
    if z >= 1.0:
        return S.t_value(n, k, z) * baskakov_basis(n, k, z)
    lb = _log_binom(n + k - 1, k)
    lz, l1z = math.log(z), math.log1p(z)
    out = 0.0
    if k >= 2:
        out += k * (k - 1.0) * math.exp(lb + (k - 1) * lz + (1 - n - k) * l1z)
    if k >= 1:
        out -= 2.0 * k * (n + k) * math.exp(lb + k * lz - (n + k) * l1z)
    out += (n + k) * (n + k + 1.0) * math.exp(lb + (k + 1) * lz - (n + k + 1) * l1z)
    return out


def modified_baskakov_basis(n: int, k: int, z: float) -> float:
    """P~_{n,k} = P_{n,k} - (1/n) psi P''_{n,k} = (1 - T_{n,k}/n) P_{n,k}.
    Can be negative."""
    return baskakov_basis(n, k, z) - t_times_basis(n, k, z) / n


def mkz_dtilde_basis(n: int, k: int, x: float) -> float:
    """phi(x) P''_{n,k}(x) with phi = x (1-x)^2, from the differentiated
    polynomial-times-power form."""
    _check_order(n)
    _check_unit(x)
    if k < 0 or x == 0.0:
        return 0.0
    lb = _log_binom(n + k, k)
    lx, l1x = math.log(x), math.log1p(-x)
    out = 0.0
    if k >= 2:
        out += k * (k - 1.0) * math.exp(lb + (k - 1) * lx + (n + 3) * l1x)
    if k >= 1:
        out -= 2.0 * k * (n + 1.0) * math.exp(lb + k * lx + (n + 2) * l1x)
    out += n * (n + 1.0) * math.exp(lb + (k + 1) * lx + (n + 1) * l1x)
    return out


def modified_mkz_basis(n: int, k: int, x: float) -> float:
    """P~_{n,k}(x) = P_{n,k}(x) - (1/n) phi(x) P''_{n,k}(x)."""
    return mkz_basis(n, k, x) - mkz_dtilde_basis(n, k, x) / n


def dtilde_modified_baskakov_basis(n: int, k: int, z: float) -> float:
    """psi D^2 applied to P~_{n,k}, via the three-term expansion

    (psi/n) T''_{n,k} P_{n,k} + 2 [T_{n+1,k-1} P_{n+1,k-1} + T_{n+1,k} P_{n+1,k}]
    + (1 - T_{n,k}/n) T_{n,k} P_{n,k}.
    """
    _check_order(n)
    _check_ray(z)
    if k < 0 or z == 0.0:
        return 0.0
    return S.term_weight(S.RAY_DPT, float(n), float(k), z) * baskakov_basis(n, k, z)


def truncation_window(n: int, z: float, pol: TruncationPolicy = TruncationPolicy(),
                      pole_order: int = 0) -> tuple[int, int]:
    """Index range [lo, hi] of P_{n,.}(z) whose complement carries weighted
    mass at most ``pol.tail_tol``. Raises TruncationError past ``max_terms``.

    Series weighted by T_{n,k}^p should pass ``pole_order=p``: T has a 1/z
    pole, so the tolerance is tightened to tail_tol * min(1, z)^p.
    """
    _check_order(n)
    _check_ray(z)
    lo, hi = kernels.windows(n, np.array([z]), pol.growth_degree, pol.tail_tol, pol.max_terms, pole_order)
    return int(lo[0]), int(hi[0])


def mkz_truncation_window(n: int, x: float, pol: TruncationPolicy = TruncationPolicy()) -> tuple[int, int]:
    """Window for the MKZ basis; P_{n,k}(x) equals the Baskakov P_{n+1,k} at x/(1-x)."""
    _check_unit(x)
    return truncation_window(n + 1, x / (1.0 - x), pol)
