"""The six operators, their iterates and the series form of the weighted
second derivative of the modified operator."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _scalar as S
from . import kernels
from .basis import TruncationPolicy
from .errors import DomainError
from .functions import RAY, UNIT, RealFunction
from .interp import GRID_EDGE, GRID_POINTS, ChebInterpolant, lobatto_nodes
from .quadrature import QuadraturePolicy, check_linear_growth, u_coefficients, v_coefficients


class OperatorKind(str, enum.Enum):
    MKZ_CLASSICAL = "mkz_classical"
    MKZ_GS = "mkz_gs"
    MKZ_GS_MOD = "mkz_gs_mod"
    BASKAKOV = "baskakov"
    BASKAKOV_GS = "baskakov_gs"
    BASKAKOV_GS_MOD = "baskakov_gs_mod"

    @property
    def domain(self) -> str:
        return UNIT if self.value.startswith("mkz") else RAY

    @property
    def modified(self) -> bool:
        return self.value.endswith("_mod")

    @classmethod
    def parse(cls, name) -> "OperatorKind":
        if isinstance(name, cls):
            return name
        key = str(name).replace("-", "_").lower()
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown operator kind {name!r}") from None


_BASIS = {
    OperatorKind.MKZ_CLASSICAL: S.UNIT_P,
    OperatorKind.MKZ_GS: S.UNIT_P,
    OperatorKind.MKZ_GS_MOD: S.UNIT_PT,
    OperatorKind.BASKAKOV: S.RAY_P,
    OperatorKind.BASKAKOV_GS: S.RAY_P,
    OperatorKind.BASKAKOV_GS_MOD: S.RAY_PT,
}


@dataclass(frozen=True)
class OperatorConfig:
    """Order plus numerical policies. Unit-side points must lie in [0, x_max]."""

    n: int
    trunc: TruncationPolicy = field(default_factory=TruncationPolicy)
    quad: QuadraturePolicy = field(default_factory=QuadraturePolicy)
    x_max: float = GRID_EDGE

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"operator order must be an integer >= 1, got {self.n!r}")
        if not 0.0 < self.x_max < 1.0:
            raise DomainError("x_max must lie in (0, 1)")

    def with_n(self, n: int) -> "OperatorConfig":
        return OperatorConfig(n, self.trunc, self.quad, self.x_max)


def _points(domain, pts, cfg):
    arr = np.atleast_1d(np.asarray(pts, dtype=float)).ravel()
    if not np.all(np.isfinite(arr)):
        raise DomainError("evaluation points must be finite")
    if domain == UNIT:
        if arr.size and (arr.min() < 0.0 or arr.max() > cfg.x_max):
            raise DomainError(f"unit-side points must lie in [0, {cfg.x_max!r}]")
    elif arr.size and arr.min() < 0.0:
        raise DomainError("half-line points must be >= 0")
    return arr


# order of the 1/z singularity of the term weights (T or T^2 factors)
_POLE_ORDER = {S.RAY_TP: 1, S.RAY_PT: 1, S.RAY_DPT: 2, S.UNIT_PT: 1, S.UNIT_DP: 1}


class _Series:
    """Coefficients of one function for one operator order, grown on demand."""

    def __init__(self, kind_code, n, coeff_fn, growth, trunc):
        self.kind_code = kind_code
        self.pole = _POLE_ORDER.get(kind_code, 0)
        self.n = n
        self.coeff_fn = coeff_fn
        self.growth = growth
        self.trunc = trunc
        self.coeffs = np.empty(0)

    def _ensure(self, kmax):
        if kmax < self.coeffs.size:
            return
        k = max(kmax + 1, 2 * self.coeffs.size, 64)
        self.coeffs = np.ascontiguousarray(self.coeff_fn(k - 1))

    def __call__(self, pts):
        unit = self.kind_code >= S.UNIT_P
        if unit:
            zs = pts / (1.0 - pts)
            los, his = kernels.windows(self.n + 1, zs, self.growth,
                                       self.trunc.tail_tol, self.trunc.max_terms, self.pole)
        else:
            los, his = kernels.windows(self.n, pts, self.growth,
                                       self.trunc.tail_tol, self.trunc.max_terms, self.pole)
        self._ensure(int(his.max()) if his.size else 0)
        return kernels.series(self.kind_code, self.n, pts, self.coeffs, los, his)


def _coeff_fn(kind, n, f, quad):
    if kind is OperatorKind.MKZ_CLASSICAL:
        return lambda K: f.eval(np.arange(K + 1) / (np.arange(K + 1) + n))
    if kind is OperatorKind.BASKAKOV:
        return lambda K: f.eval(np.arange(K + 1) / n)
    if kind.domain == UNIT:
        return lambda K: u_coefficients(n, f, K, quad)
    return lambda K: v_coefficients(n, f, K, quad)


class BoundOperator:
    """An operator applied to a fixed function; coefficients are memoised so
    repeated evaluations reuse them."""

    def __init__(self, kind, cfg: OperatorConfig, f: RealFunction):
        kind = OperatorKind.parse(kind)
        if f.domain != kind.domain:
            raise DomainError(f"{kind.value} acts on {kind.domain} functions, got a {f.domain} function")
        if kind.domain == RAY:
            check_linear_growth(f)
        self.kind, self.cfg, self.f = kind, cfg, f
        growth = cfg.trunc.growth_degree
        if kind.modified:
            growth = 2
        if kind.domain == RAY and kind is not OperatorKind.BASKAKOV:
            growth += 1  # v-coefficients of linearly growing F grow like k
        elif kind is OperatorKind.BASKAKOV:
            growth += 1
        self._series = _Series(_BASIS[kind], cfg.n, _coeff_fn(kind, cfg.n, f, cfg.quad), growth, cfg.trunc)
        self._dt = None

    def __call__(self, pts):
        arr = np.asarray(pts, dtype=float)
        out = self._series(_points(self.kind.domain, arr, self.cfg))
        return out.reshape(arr.shape) if arr.ndim else float(out[0])

    def dtilde(self, pts):
        """D-tilde of the operator image of an unmodified unit-side kind:
        sum_k c_k T_{n,k} P_{n,k}."""
        if self.kind not in (OperatorKind.MKZ_GS, OperatorKind.MKZ_CLASSICAL):
            raise DomainError("series D-tilde is available for mkz_gs and mkz_classical")
        arr = np.asarray(pts, dtype=float)
        p = _points(UNIT, arr, self.cfg)
        self._series._ensure(0)
        if self._dt is None:
            s = _Series(S.UNIT_DP, self.cfg.n, self._series.coeff_fn, 2, self.cfg.trunc)
            self._dt = s
        out = self._dt(p)
        return out.reshape(arr.shape) if arr.ndim else float(out[0])


def bind(kind, cfg: OperatorConfig, f: RealFunction) -> BoundOperator:
    return BoundOperator(kind, cfg, f)


def apply(kind, cfg: OperatorConfig, f: RealFunction, points):
    """Op_n(f) at ``points`` (scalar in, scalar out)."""
    return BoundOperator(kind, cfg, f)(points)


_RAY_IMAGES: dict = {}


def to_ray_function(f: RealFunction) -> RealFunction:
    """(1 + z) f(z / (1 + z)), evaluated without cancellation.

    The image is memoised per function so its coefficient runs are reused."""
    hit = _RAY_IMAGES.get(id(f))
    if hit is not None and hit[0] is f:
        return hit[1]

    def F(z):
        z = np.asarray(z, dtype=float)
        return (1.0 + z) * f.eval(z / (1.0 + z))
    out = RealFunction(RAY, F, f"T^-1[{f.label}]")
    if len(_RAY_IMAGES) >= 64:
        _RAY_IMAGES.pop(next(iter(_RAY_IMAGES)))
    _RAY_IMAGES[id(f)] = (f, out)
    return out


class ModifiedDtilde:
    """D-tilde of the modified MKZ-GS image, via the half-line series
    sum_k v_{n,k}(F) D(P~_{n,k}) with F the transform of f, multiplied by 1 - x."""

    def __init__(self, cfg: OperatorConfig, f: RealFunction):
        if f.domain != UNIT:
            raise DomainError("expects a unit-interval function")
        self.cfg = cfg
        F = to_ray_function(f)
        n = cfg.n
        self._series = _Series(S.RAY_DPT, n, lambda K: v_coefficients(n, F, K, cfg.quad), 3, cfg.trunc)

    def __call__(self, pts):
        arr = np.asarray(pts, dtype=float)
        x = _points(UNIT, arr, self.cfg)
        out = (1.0 - x) * self._series(x / (1.0 - x))
        return out.reshape(arr.shape) if arr.ndim else float(out[0])


def dtilde_of_modified(cfg: OperatorConfig, f: RealFunction, points):
    return ModifiedDtilde(cfg, f)(points)


def materialize(kind, cfg: OperatorConfig, f: RealFunction, m: int = GRID_POINTS) -> RealFunction:
    """Op_n f as a Chebyshev interpolant on [0, x_max] (unit kinds only)."""
    kind = OperatorKind.parse(kind)
    if kind.domain != UNIT:
        raise DomainError("materialisation is defined for unit-side kinds")
    op = BoundOperator(kind, cfg, f)
    interp = ChebInterpolant(op(lobatto_nodes(m, cfg.x_max)), cfg.x_max)
    return interp.as_function(f"{kind.value}[{cfg.n}]({f.label})")


def iterate(kind, cfg: OperatorConfig, f: RealFunction, times: int) -> list[RealFunction]:
    """[f, Op f, Op^2 f, ...] up to ``times - 1`` materialised levels."""
    if not 1 <= times <= 3:
        raise DomainError("iteration depth must be 1, 2 or 3")
    levels = [f]
    for _ in range(times - 1):
        levels.append(materialize(kind, cfg, levels[-1]))
    return levels


def apply_iterated(kind, cfg: OperatorConfig, f: RealFunction, times: int, points):
    """Op^times f at ``points``; inner levels are materialised interpolants."""
    inner = iterate(kind, cfg, f, times)[-1]
    return apply(kind, cfg, inner, points)
