"""Change of variables between [0, 1) and [0, inf) and the induced
function transforms, weight and norm correspondences."""
from __future__ import annotations

import numpy as np

from . import operators as ops
from .errors import DomainError
from .functions import RAY, UNIT, RealFunction
from .quadrature import v_coefficients
from .interp import GRID_EDGE

SIGMA_LIMIT = 1.0 - 1e-15


def sigma(x):
    """x / (1 - x)."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > SIGMA_LIMIT):
        raise DomainError(f"sigma needs 0 <= x <= {SIGMA_LIMIT!r}")
    out = arr / (1.0 - arr)
    return out if arr.ndim else float(out)


def sigma_inv(z):
    """z / (1 + z)."""
    arr = np.asarray(z, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("sigma_inv needs z >= 0")
    out = arr / (1.0 + arr)
    return out if arr.ndim else float(out)


def weight(z):
    """The half-line weight 1 / (1 + z)."""
    arr = np.asarray(z, dtype=float)
    out = 1.0 / (1.0 + arr)
    return out if arr.ndim else float(out)


def _arr(x):
    return np.asarray(x, dtype=float)


def to_unit(F: RealFunction) -> RealFunction:
    """f(x) = (1 - x) F(x / (1 - x)).

    With s = sigma(x): f' = (1 + s) F'(s) - F(s) and f'' = (1 + s)^3 F''(s).
    """
    if F.domain != RAY:
        raise DomainError("to_unit expects a half-line function")

    def f(x):
        x = _arr(x)
        return (1.0 - x) * F.eval(x / (1.0 - x))

    d1 = d2 = None
    if F.d1 is not None:
        def d1(x):
            x = _arr(x)
            s = x / (1.0 - x)
            return -F.eval(s) + (1.0 + s) * F.d1(s)
    if F.d2 is not None:
        def d2(x):
            x = _arr(x)
            s = x / (1.0 - x)
            return (1.0 + s) ** 3 * F.d2(s)
    return RealFunction(UNIT, f, f"T[{F.label}]", d1=d1, d2=d2)


def to_ray(f: RealFunction) -> RealFunction:
    """F(z) = (1 + z) f(z / (1 + z)); F'' = f''(x) / (1 + z)^3."""
    if f.domain != UNIT:
        raise DomainError("to_ray expects a unit-interval function")

    def F(z):
        z = _arr(z)
        return (1.0 + z) * f.eval(z / (1.0 + z))

    d1 = d2 = None
    if f.d1 is not None:
        def d1(z):
            z = _arr(z)
            x = z / (1.0 + z)
            return f.eval(x) + f.d1(x) / (1.0 + z)
    if f.d2 is not None:
        def d2(z):
            z = _arr(z)
            return f.d2(z / (1.0 + z)) / (1.0 + z) ** 3
    return RealFunction(RAY, F, f"Tinv[{f.label}]", d1=d1, d2=d2)


def bridge_residual(n: int, f: RealFunction, x_grid, cfg: ops.OperatorConfig | None = None) -> float:
    """max |M~_n f(x) - (1 - x) V~_n F(sigma(x))| over the grid, each side
    computed by its own series and coefficient functionals."""
    cfg = cfg.with_n(n) if cfg is not None else ops.OperatorConfig(n)
    x = _arr(x_grid)
    unit_side = ops.apply(ops.OperatorKind.MKZ_GS_MOD, cfg, f, x)
    ray_side = (1.0 - x) * ops.apply(ops.OperatorKind.BASKAKOV_GS_MOD, cfg, to_ray(f), sigma(x))
    return float(np.max(np.abs(unit_side - ray_side)))


def matched_grids(m: int = 513, x_max: float = GRID_EDGE):
    """Chebyshev-spaced unit grid on [0, x_max] and its sigma image."""
    j = np.arange(m)
    x = 0.5 * x_max * (1.0 - np.cos(np.pi * j / (m - 1)))
    return x, sigma(x)


def norm_correspondence(f: RealFunction, grid=None):
    """(sup |f| on the unit grid, sup |w F| on its sigma image)."""
    x, z = (np.asarray(grid, dtype=float), sigma(grid)) if grid is not None else matched_grids()
    F = to_ray(f)
    return float(np.max(np.abs(f(x)))), float(np.max(np.abs(weight(z) * F(z))))


def modified_norm_correspondence(cfg: ops.OperatorConfig, f: RealFunction, grid=None):
    """Sup norms of M~_n f and D~ M~_n f on the unit grid next to the
    weighted sup norms of V~_n F and its D-image on the sigma image."""
    from . import _scalar as S
    from . import kernels

    x, z = (np.asarray(grid, dtype=float), sigma(grid)) if grid is not None else matched_grids(x_max=cfg.x_max)
    F = to_ray(f)
    unit_m = ops.apply(ops.OperatorKind.MKZ_GS_MOD, cfg, f, x)
    unit_d = ops.dtilde_of_modified(cfg, f, x)
    ray_m = ops.apply(ops.OperatorKind.BASKAKOV_GS_MOD, cfg, F, z)
    los, his = kernels.windows(cfg.n, z, 3, cfg.trunc.tail_tol, cfg.trunc.max_terms, 2)
    coeffs = v_coefficients(cfg.n, F, int(his.max()), cfg.quad)
    ray_d = kernels.series(S.RAY_DPT, cfg.n, z, coeffs, los, his)
    w = weight(z)
    return ((float(np.max(np.abs(unit_m))), float(np.max(np.abs(w * ray_m)))),
            (float(np.max(np.abs(unit_d))), float(np.max(np.abs(w * ray_d)))))
