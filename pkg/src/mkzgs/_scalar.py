"""Scalar formulas shared by both kernel backends.

Everything here uses plain arithmetic plus the ``math`` module so numba can
compile it unchanged. Functions without ``math`` calls also accept numpy arrays
for ``k``, which is how the numpy backend reuses them.
"""
import math

from ._backend import njit

RAY_P = 0
RAY_TP = 1
RAY_PT = 2
RAY_DPT = 3
UNIT_P = 4
UNIT_PT = 5
UNIT_DP = 6

RENORM_EVERY = 256


def t_value(n, k, z):
    """Spectral factor T_{n,k}(z) for z > 0.

    The rational form cancels badly once z and k are large, so for z >= 1
    the algebraically equivalent central-moment form is used, written in
    terms of the exact offset d = k - n z.
    """
    if z >= 1.0:
        d = k - n * z
        return (d * d - (1.0 + 2.0 * z) * d) / (z * (1.0 + z)) - n
    return k * (k - 1.0) * (1.0 + z) / z - 2.0 * k * (n + k) + (n + k) * (n + k + 1.0) * z / (1.0 + z)


def psi_t2(n, k, z):
    """psi(z) * T''_{n,k}(z) for z > 0, stable form for z >= 1."""
    if z >= 1.0:
        d = k - n * z
        psi = z * (1.0 + z)
        num = (d * d * (3.0 * psi + 1.0)
               + d * (2.0 * n * psi * (1.0 + 2.0 * z) - (1.0 + z) ** 3 - z ** 3)
               + n * n * psi * psi - n * psi * (z * z + (1.0 + z) ** 2))
        return 2.0 * num / (psi * psi)
    return 2.0 * k * (k - 1.0) * (1.0 + z) / (z * z) - 2.0 * (n + k) * (n + k + 1.0) * z / ((1.0 + z) ** 2)


def term_weight(kind, n, k, z):
    """Multiplier applied to the plain basis value for each basis kind.

    For ray kinds the plain basis is P_{n,k}(z) (Baskakov); for unit kinds it
    is the MKZ basis at x = z / (1 + z).
    """
    if kind == RAY_P or kind == UNIT_P:
        return 1.0 + 0.0 * k
    t = t_value(n, k, z)
    if kind == RAY_TP or kind == UNIT_DP:
        return t
    if kind == RAY_PT or kind == UNIT_PT:
        return 1.0 - t / n
    # RAY_DPT: D(P~) via the three-term relation, P_{n+1,k-1} and P_{n+1,k}
    # rewritten through the index recurrences.
    a = psi_t2(n, k, z) / n
    b = 2.0 * (t_value(n + 1, k - 1.0, z) * k / (n * z)
               + t_value(n + 1, k, z) * (n + k) / (n * (1.0 + z)))
    return a + b + (1.0 - t / n) * t


@njit
def log_ray_basis(n, k, z):
    if z == 0.0:
        return 0.0 if k == 0 else -math.inf
    return (math.lgamma(n + k) - math.lgamma(k + 1.0) - math.lgamma(n)
            + k * math.log(z) - (n + k) * math.log1p(z))


@njit
def log_unit_basis(n, k, x):
    if x == 0.0:
        return 0.0 if k == 0 else -math.inf
    return (math.lgamma(n + k + 1.0) - math.lgamma(k + 1.0) - math.lgamma(n + 1.0)
            + k * math.log(x) + (n + 1.0) * math.log1p(-x))


@njit
def _log_term(n, k, z, g):
    return log_ray_basis(n, k, z) + g * math.log1p(k)


@njit
def _log_ratio(n, k, lq, g):
    # term_{k+1} / term_k for (1+k)^g * P_{n,k}
    return math.log((n + k) / (k + 1.0)) + lq + g * math.log((k + 2.0) / (k + 1.0))


def window(n, z, g, tol, max_terms):
    """Index window [lo, hi] of the Baskakov basis P_{n,.}(z) such that the
    weighted mass sum (1+k)^g P_{n,k}(z) outside it is at most ``tol``.

    Candidate edges move outward from the mode in steps of a quarter standard
    deviation. Each factor of the term ratio is monotone in k, so beyond an
    edge the ratio never exceeds its value at the edge; once that value is
    below 1 the geometric bound term/(1 - r) covers the whole tail, and the
    edge is accepted when the bound is below tol/2. Returns (-1, -1) when
    the upper edge would exceed ``max_terms``.
    """
    if z == 0.0:
        return 0, 0
    lq = math.log(z / (1.0 + z))
    mode = int(math.floor((n - 1.0) * z)) if n > 1 else 0
    if mode > max_terms:
        return -1, -1
    step = max(1, int(math.sqrt(n * z * (1.0 + z)) / 4.0))
    half = 0.5 * tol

    hi = mode
    while True:
        r = math.exp(_log_ratio(n, hi + 1, lq, g))
        if r < 1.0:
            if math.exp(_log_term(n, hi + 1, z, g)) / (1.0 - r) <= half:
                break
        if hi >= max_terms:
            return -1, -1
        hi = min(hi + step, max_terms)

    lo = mode
    while lo > 0:
        s = math.exp(-_log_ratio(n, lo - 2, lq, g)) if lo >= 2 else 0.0
        if s < 1.0:
            if math.exp(_log_term(n, lo - 1, z, g)) / (1.0 - s) <= half:
                break
        lo = max(lo - step, 0)
    return lo, hi
