"""Hot numeric loops: truncated basis series, banded Beta-weight quadrature
and barycentric interpolation.

Each public function dispatches on :func:`mkzgs._backend.get_backend` to a
numba-compiled loop or to a vectorised numpy implementation. The two paths
use the same formulas (:mod:`mkzgs._scalar`) and agree to rounding.
"""
import math

import numpy as np
from scipy.special import gammaln

from . import _backend
from . import _scalar as S
from ._backend import njit
from .errors import TruncationError

# --------------------------------------------------------------------------
# numba loops

_t_value = njit(S.t_value)
_psi_t2 = njit(S.psi_t2)


@njit
def _term_weight(kind, n, k, z):
    if kind == 0 or kind == 4:
        return 1.0
    t = _t_value(n, k, z)
    if kind == 1 or kind == 6:
        return t
    if kind == 2 or kind == 5:
        return 1.0 - t / n
    a = _psi_t2(n, k, z) / n
    b = 2.0 * (_t_value(n + 1, k - 1.0, z) * k / (n * z)
               + _t_value(n + 1, k, z) * (n + k) / (n * (1.0 + z)))
    return a + b + (1.0 - t / n) * t


_log_ray_basis = S.log_ray_basis
_log_unit_basis = S.log_unit_basis
_window_nb = njit(S.window)


@njit
def _series_one_nb(kind, n, pt, coeffs, lo, hi):
    if pt == 0.0:
        if kind == 0 or kind == 2 or kind == 4 or kind == 5:
            return coeffs[0]
        return 0.0
    unit = kind >= 4
    if unit:
        z = pt / (1.0 - pt)
    else:
        z = pt
    q = z / (1.0 + z)
    acc = 0.0
    comp = 0.0
    p = 0.0
    for k in range(lo, hi + 1):
        if (k - lo) % 256 == 0:
            if unit:
                p = math.exp(_log_unit_basis(n, float(k), pt))
            else:
                p = math.exp(_log_ray_basis(n, float(k), z))
        elif unit:
            p *= (n + k) / k * pt
        else:
            p *= (n + k - 1.0) / k * q
        term = coeffs[k] * _term_weight(kind, n, float(k), z) * p
        s = acc + term
        if abs(acc) >= abs(term):
            comp += (acc - s) + term
        else:
            comp += (term - s) + acc
        acc = s
    return acc + comp


@njit
def _series_many_nb(kind, n, pts, coeffs, los, his):
    out = np.empty(pts.shape[0])
    for i in range(pts.shape[0]):
        out[i] = _series_one_nb(kind, n, pts[i], coeffs, los[i], his[i])
    return out


@njit
def _windows_nb(n, zs, g, tols, max_terms):
    m = zs.shape[0]
    los = np.empty(m, np.int64)
    his = np.empty(m, np.int64)
    for i in range(m):
        lo, hi = _window_nb(n, zs[i], g, tols[i], max_terms)
        los[i] = lo
        his[i] = hi
    return los, his


@njit
def _beta_expect_nb(lt, l1t, lj, gv, a_arr, b, lbeta, lo, hi):
    # Consecutive shapes a-1 -> a rescale the density by t * B(a-1,b)/B(a,b),
    # so nodes shared with the previous window are updated by one multiply
    # and only nodes entering the window (or underflowed ones) need an exp.
    m = a_arr.shape[0]
    out_i = np.empty(m)
    out_a = np.empty(m)
    out_m = np.empty(m)
    t = np.exp(lt)
    w = np.empty(lt.shape[0])
    plo = 0
    phi = 0
    for i in range(m):
        a = a_arr[i]
        chain = i > 0 and a_arr[i - 1] + 1.0 == a
        r = math.exp(lbeta[i - 1] - lbeta[i]) if chain else 0.0
        s = 0.0
        sa = 0.0
        mass = 0.0
        for j in range(lo[i], hi[i]):
            if chain and plo <= j < phi and w[j] > 1e-250:
                w[j] *= t[j] * r
            else:
                w[j] = math.exp((a - 1.0) * lt[j] + (b - 1.0) * l1t[j] + lj[j] - lbeta[i])
            s += w[j] * gv[j]
            sa += w[j] * abs(gv[j])
            mass += w[j]
        out_i[i] = s
        out_a[i] = sa
        out_m[i] = mass
        plo = lo[i]
        phi = hi[i]
    return out_i, out_a, out_m


@njit
def _bary_nb(nodes, values, weights, pts):
    out = np.empty(pts.shape[0])
    for i in range(pts.shape[0]):
        t = pts[i]
        num = 0.0
        den = 0.0
        hit = -1
        for j in range(nodes.shape[0]):
            d = t - nodes[j]
            if d == 0.0:
                hit = j
                break
            c = weights[j] / d
            num += c * values[j]
            den += c
        out[i] = values[hit] if hit >= 0 else num / den
    return out


# --------------------------------------------------------------------------
# numpy fallbacks


def _series_one_np(kind, n, pt, coeffs, lo, hi):
    if pt == 0.0:
        return float(coeffs[0]) if kind in (S.RAY_P, S.RAY_PT, S.UNIT_P, S.UNIT_PT) else 0.0
    k = np.arange(lo, hi + 1, dtype=float)
    if kind >= S.UNIT_P:
        z = pt / (1.0 - pt)
        logp = (gammaln(n + k + 1.0) - gammaln(k + 1.0) - gammaln(n + 1.0)
                + k * math.log(pt) + (n + 1.0) * math.log1p(-pt))
    else:
        z = pt
        logp = (gammaln(n + k) - gammaln(k + 1.0) - gammaln(n)
                + k * math.log(z) - (n + k) * math.log1p(z))
    w = S.term_weight(kind, n, k, z)
    return float(np.sum(coeffs[lo:hi + 1] * w * np.exp(logp)))


def _windows_np(n, zs, g, tols, max_terms):
    los = np.empty(zs.shape[0], np.int64)
    his = np.empty(zs.shape[0], np.int64)
    for i, z in enumerate(zs):
        los[i], his[i] = S.window(n, float(z), g, float(tols[i]), max_terms)
    return los, his


def _beta_expect_np(lt, l1t, lj, gv, a_arr, b, lbeta, lo, hi, chunk_elems=4_000_000):
    m = a_arr.shape[0]
    out_i = np.empty(m)
    out_a = np.empty(m)
    out_m = np.empty(m)
    widths = hi - lo
    start = 0
    while start < m:
        wmax = 1
        stop = start
        while stop < m and (stop - start + 1) * max(wmax, widths[stop]) <= chunk_elems:
            wmax = max(wmax, widths[stop])
            stop += 1
        stop = max(stop, start + 1)
        wmax = max(1, int(widths[start:stop].max()))
        idx = lo[start:stop, None] + np.arange(wmax)[None, :]
        valid = idx < hi[start:stop, None]
        idx = np.where(valid, idx, 0)
        a = a_arr[start:stop, None]
        lw = (a - 1.0) * lt[idx] + (b - 1.0) * l1t[idx] + lj[idx] - lbeta[start:stop, None]
        w = np.where(valid, np.exp(lw), 0.0)
        g = gv[idx]
        out_i[start:stop] = np.sum(w * g, axis=1)
        out_a[start:stop] = np.sum(w * np.abs(g), axis=1)
        out_m[start:stop] = np.sum(w, axis=1)
        start = stop
    return out_i, out_a, out_m


def _bary_np(nodes, values, weights, pts, chunk=2048):
    out = np.empty(pts.shape[0])
    for s in range(0, pts.shape[0], chunk):
        t = pts[s:s + chunk, None]
        d = t - nodes[None, :]
        exact = d == 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            c = weights[None, :] / d
            vals = (c @ values) / c.sum(axis=1)
        hit = exact.any(axis=1)
        if hit.any():
            vals[hit] = values[np.argmax(exact[hit], axis=1)]
        out[s:s + chunk] = vals
    return out


# --------------------------------------------------------------------------
# dispatch


def windows(n, zs, growth, tail_tol, max_terms, pole_order=0):
    """Two-sided truncation windows of P_{n,.}(z) for each z in ``zs``.

    T_{n,k}(z) grows like 1/z as z -> 0, so for series weighted by T^p the
    tail bound is tightened to tail_tol * min(1, z)^p (``pole_order`` = p).
    """
    zs = np.ascontiguousarray(zs, dtype=float)
    tols = np.full(zs.shape, float(tail_tol))
    if pole_order:
        small = (zs > 0.0) & (zs < 1.0)
        tols[small] = np.maximum(tail_tol * zs[small] ** pole_order, 1e-300)
    if _backend.get_backend() == "numba":
        los, his = _windows_nb(float(n), zs, float(growth), tols, int(max_terms))
    else:
        los, his = _windows_np(float(n), zs, float(growth), tols, int(max_terms))
    bad = his < 0
    if bad.any():
        z = zs[np.argmax(bad)]
        raise TruncationError(
            f"tail below {tail_tol:g} not reachable within max_terms={max_terms} "
            f"(order {n}, point {z:g})")
    return los, his


def series(kind, n, pts, coeffs, los, his):
    """sum_k coeffs[k] * basis_kind_{n,k}(pt) over each point's window."""
    pts = np.ascontiguousarray(pts, dtype=float)
    coeffs = np.ascontiguousarray(coeffs, dtype=float)
    if _backend.get_backend() == "numba":
        return _series_many_nb(int(kind), float(n), pts, coeffs,
                               np.ascontiguousarray(los, np.int64), np.ascontiguousarray(his, np.int64))
    return np.array([_series_one_np(kind, float(n), float(p), coeffs, int(lo), int(hi))
                     for p, lo, hi in zip(pts, los, his)])


def beta_expect(lt, l1t, lj, gv, a_arr, b, lbeta, lo, hi):
    """Banded quadrature sums: for each shape ``a`` returns
    (sum w g, sum w |g|, sum w) with w the Beta(a, b) density times node weights."""
    args = [np.ascontiguousarray(v, dtype=float) for v in (lt, l1t, lj, gv, a_arr)]
    lbeta = np.ascontiguousarray(lbeta, dtype=float)
    lo = np.ascontiguousarray(lo, np.int64)
    hi = np.ascontiguousarray(hi, np.int64)
    if _backend.get_backend() == "numba":
        return _beta_expect_nb(*args, float(b), lbeta, lo, hi)
    return _beta_expect_np(*args, float(b), lbeta, lo, hi)


def barycentric(nodes, values, weights, pts):
    pts = np.ascontiguousarray(pts, dtype=float)
    if _backend.get_backend() == "numba":
        return _bary_nb(nodes, values, weights, pts)
    return _bary_np(nodes, values, weights, pts)
