"""Sup norms, K-functional bounds, convergence experiments and the
verification harness for the identities and inequalities of the operator
family."""
from __future__ import annotations

import math
import platform
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from . import _backend, bridge, spectral
from . import operators as ops
from .basis import TruncationPolicy
from .errors import DomainError
from .functions import REGISTRY, UNIT, RealFunction, get_function
from .interp import GRID_POINTS, ChebInterpolant, lobatto_nodes
from .operators import OperatorConfig, OperatorKind
from .quadrature import QuadraturePolicy, u_coefficients, v_coefficients

SQRT6 = math.sqrt(6.0)
C_BERNSTEIN = 17
C_CONVERSE = 10 + C_BERNSTEIN ** 2  # 299
L_CONVERSE = 8 * C_BERNSTEIN / 3  # 136/3
# absolute floor for quantities that vanish in exact arithmetic (exact
# reproduction of e0, e1); matches the reproduction tolerance
NOISE_FLOOR = 1e-9
INEQ_TOL = 1e-6

GM, GS = OperatorKind.MKZ_GS, OperatorKind.MKZ_GS_MOD


# --------------------------------------------------------------------------
# sup norms


@dataclass(frozen=True)
class SupNormEstimate:
    value: float
    argmax: float
    grid_size: int
    window_delta: float


def chebyshev_grid(m: int, a: float, b: float) -> np.ndarray:
    """Chebyshev-Lobatto points on [a, b], ascending."""
    j = np.arange(m)
    return a + 0.5 * (b - a) * (1.0 - np.cos(np.pi * j / (m - 1)))


def sup_norm(g: Callable, window_delta: float = 2.0 ** -10, grid_size: int = 513,
             domain: str = UNIT, refine: bool = True, ray_cap: Optional[float] = None) -> SupNormEstimate:
    """max |g| on a Chebyshev grid over [0, 1 - window_delta] (unit) or its
    sigma image (ray), refined by a bounded scalar search around the argmax.

    On the ray side ``window_delta`` is the distance of the matched unit
    window edge from 1 unless ``ray_cap`` sets the right end directly.
    """
    if grid_size < 33:
        raise DomainError("grid_size must be >= 33")
    if not 0.0 < window_delta < 1.0:
        raise DomainError("window_delta must lie in (0, 1)")
    x = chebyshev_grid(grid_size, 0.0, 1.0 - window_delta)
    if domain != UNIT:
        x = ray_cap * x / x[-1] if ray_cap is not None else bridge.sigma(x)
    vals = np.abs(np.asarray(g(x), dtype=float))
    i = int(np.argmax(vals))
    best, arg = float(vals[i]), float(x[i])
    if refine and 0 < i < grid_size - 1:
        res = minimize_scalar(lambda t: -abs(float(g(np.array([t]))[0])),
                              bounds=(x[i - 1], x[i + 1]), method="bounded",
                              options={"xatol": 1e-12 * max(1.0, abs(x[i]))})
        if -res.fun > best:
            best, arg = float(-res.fun), float(res.x)
    return SupNormEstimate(best, arg, grid_size, window_delta)


# --------------------------------------------------------------------------
# K-functional


@dataclass(frozen=True)
class KFunctionalBound:
    t: float
    upper: float
    lower: float
    witness: str


@dataclass(frozen=True)
class UpperEstimate:
    value: float
    distance: float
    smoothness: float
    witness: str


def _cfg(n, cfg):
    return cfg.with_n(n) if cfg is not None else OperatorConfig(n)


def _delta(cfg):
    return 1.0 - cfg.x_max


def dtilde2_of_modified(cfg: OperatorConfig, h: RealFunction) -> Callable:
    """x -> D~^2 M~_n h(x). The inner D~ M~_n h comes from its half-line
    series, is sampled on the Chebyshev grid and differentiated spectrally."""
    q = ops.ModifiedDtilde(cfg, h)
    interp = ChebInterpolant(q(lobatto_nodes(GRID_POINTS, cfg.x_max)), cfg.x_max)

    def dd(x):
        x = np.asarray(x, dtype=float)
        return spectral.weight_poly(UNIT, x) * interp.d2(x)
    return dd


def self_witness_ok(f: RealFunction) -> bool:
    return bool(f.w2_0) and len(f.dtilde_chain) >= 2


def k_upper(f: RealFunction, t: float, n_hint: int, witness="best",
            cfg: Optional[OperatorConfig] = None, grid_size: int = 513) -> UpperEstimate:
    """Upper bound ||f - g|| + t ||D~^2 g|| for an admissible g.

    ``witness`` is "auto" (g = M~_n^3 f with n = n_hint), "self" (g = f, needs
    the analytic chain and the boundary condition), a RealFunction with an
    analytic ``dtilde_chain``, or "best" for the smaller of the first two.
    """
    if not t > 0:
        raise DomainError("t must be positive")
    if n_hint < 2:
        raise DomainError("n_hint must be >= 2")
    cfg = _cfg(n_hint, cfg)
    delta = _delta(cfg)
    if isinstance(witness, RealFunction):
        if len(witness.dtilde_chain) < 2:
            raise DomainError("an explicit witness needs an analytic second D~ power")
        dist = sup_norm(lambda x: f(x) - witness(x), delta, grid_size).value
        sm = sup_norm(witness.dtilde_chain[1], delta, grid_size).value
        return UpperEstimate(dist + t * sm, dist, sm, f"explicit:{witness.label}")
    if witness not in ("auto", "self", "best"):
        raise DomainError(f"unknown witness mode {witness!r}")
    cands = []
    if witness in ("self", "best") and self_witness_ok(f):
        sm = sup_norm(f.dtilde_chain[1], delta, grid_size).value
        cands.append(UpperEstimate(t * sm, 0.0, sm, f"self:{f.label}"))
    elif witness == "self":
        raise DomainError(f"{f.label} has no analytic chain with the boundary condition")
    if witness in ("auto", "best"):
        f1, f2 = ops.iterate(GS, cfg, f, 3)[1:]
        g = ops.bind(GS, cfg, f2)
        dist = sup_norm(lambda x: f(x) - g(x), delta, grid_size).value
        sm = sup_norm(dtilde2_of_modified(cfg, f2), delta, grid_size).value
        cands.append(UpperEstimate(dist + t * sm, dist, sm, f"auto:M~_{cfg.n}^3 f"))
    return min(cands, key=lambda c: c.value)


def modified_error(f: RealFunction, n: int, cfg: Optional[OperatorConfig] = None, grid_size: int = 513):
    cfg = _cfg(n, cfg)
    op = ops.bind(GS, cfg, f)
    return sup_norm(lambda x: op(x) - f(x), _delta(cfg), grid_size)


def k_lower(f: RealFunction, n: int, cfg: Optional[OperatorConfig] = None, grid_size: int = 513) -> float:
    """||M~_n f - f|| / (sqrt 6 + 1), a lower bound for K(f, 1/n^2)."""
    if n < 2:
        raise DomainError("n must be >= 2")
    return modified_error(f, n, cfg, grid_size).value / (SQRT6 + 1.0)


def k_bounds(f: RealFunction, n: int, cfg: Optional[OperatorConfig] = None, witness="best") -> KFunctionalBound:
    up = k_upper(f, 1.0 / n ** 2, n, witness, cfg)
    return KFunctionalBound(1.0 / n ** 2, up.value, k_lower(f, n, cfg), up.witness)


# --------------------------------------------------------------------------
# convergence


@dataclass(frozen=True)
class ConvergenceReport:
    kind: str
    label: str
    n_list: tuple
    errors: tuple
    slope: float
    reliable: bool


def convergence_experiment(kind, f: RealFunction, n_list, cfg: Optional[OperatorConfig] = None,
                           grid_size: int = 513) -> ConvergenceReport:
    """sup |Op_n f - f| for each n and the least-squares log-log slope.

    The slope is flagged unreliable when every error sits at the noise floor
    (exact reproduction)."""
    kind = OperatorKind.parse(kind)
    n_list = [int(n) for n in n_list]
    if len(n_list) < 2:
        raise DomainError("need at least two orders")
    errs = []
    for n in n_list:
        c = _cfg(n, cfg)
        op = ops.bind(kind, c, f)
        errs.append(sup_norm(lambda x: op(x) - f(x), _delta(c), grid_size).value)
    errs = np.array(errs)
    reliable = bool(np.all(errs > NOISE_FLOOR))
    slope = float(np.polyfit(np.log(n_list), np.log(np.maximum(errs, 1e-300)), 1)[0])
    return ConvergenceReport(kind.value, f.label, tuple(n_list), tuple(float(e) for e in errs), slope, reliable)


# --------------------------------------------------------------------------
# verification harness


@dataclass
class VerificationReport:
    id: str
    anchor: str
    lhs: float
    rhs: float
    ratio: float
    threshold: float
    passed: bool
    config: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _finite(v):
    # JSON has no infinities; clamp to the largest double
    return float(v) if np.isfinite(v) else math.copysign(1.7976931348623157e308, v)


def _report(id_, anchor, lhs, rhs, threshold, config):
    lhs, rhs = float(lhs), float(rhs)
    if rhs > 0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0 else math.inf
    ok = bool(np.isfinite(ratio) and ratio <= threshold)
    return VerificationReport(id_, anchor, _finite(lhs), _finite(rhs), _finite(ratio), threshold, ok, config)


def _residual(id_, anchor, residual, tol, config):
    """Residual checks report lhs = residual, rhs = tolerance, threshold 1."""
    return _report(id_, anchor, residual, tol, 1.0, config)


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    grid_size: int = 33
    sup_grid: int = 513
    window_delta: float = 2.0 ** -10
    trunc: TruncationPolicy = field(default_factory=TruncationPolicy)
    quad: QuadraturePolicy = field(default_factory=QuadraturePolicy)
    functions: tuple = tuple(REGISTRY)

    def op(self, n) -> OperatorConfig:
        return OperatorConfig(n, self.trunc, self.quad, 1.0 - self.window_delta)

    def snapshot(self, **extra) -> dict:
        d = {"seed": self.seed, "grid_size": self.grid_size, "sup_grid": self.sup_grid,
             "window_delta": self.window_delta, "tail_tol": self.trunc.tail_tol,
             "max_terms": self.trunc.max_terms, "quad_rel_tol": self.quad.rel_tol,
             "nodes_per_panel": self.quad.nodes_per_panel, "backend": _backend.get_backend()}
        d.update(extra)
        return d

    def grid(self) -> np.ndarray:
        """Chebyshev grid on the unit window plus seeded random points."""
        base = chebyshev_grid(self.grid_size, 0.0, 1.0 - self.window_delta)
        rng = np.random.default_rng(self.seed)
        extra = np.sort(rng.uniform(0.0, 1.0 - self.window_delta, 8))
        return np.concatenate([base, extra])

    def funcs(self, pred=lambda f: True):
        return [get_function(n) for n in self.functions if pred(get_function(n))]


def _w2_0(f):
    return bool(f.w2_0) and len(f.dtilde_chain) >= 1


def _dtilde_fn(f: RealFunction) -> RealFunction:
    chain = f.dtilde_chain
    nxt = tuple(chain[1:]) if len(chain) > 1 else ()
    return RealFunction(UNIT, chain[0], f"D~[{f.label}]", dtilde_chain=nxt)


# identity checks -----------------------------------------------------------


def check_moments(vc: VerifyConfig, ns=(2, 5, 17, 100), zs=(0.0, 0.5, 1.0, 3.0, 10.0), alphas=(0.0, 1.0, -2.0)):
    mom = phi = tw = 0.0
    for n in ns:
        for z in zs:
            for j in range(4):
                mom = max(mom, abs(spectral.central_moment_series(n, j, z, vc.trunc)
                                   - spectral.central_moment(n, j, z)))
            for a in alphas:
                s, c = spectral.phi_alpha(n, a, z, vc.trunc)
                phi = max(phi, abs(s - c))
            tw = max(tw, abs(spectral.t_weighted_first_moment(n, z, vc.trunc)))
    cfg = vc.snapshot(n=list(ns), z=list(zs), alpha=list(alphas))
    return [_residual("moments-closed-form", "baskakov-central-moments", mom, 1e-8, cfg),
            _residual("phi-alpha", "phi-alpha-identity", phi, 1e-7, cfg),
            _residual("t-weighted-first-moment", "t-weighted-first-moment-vanishes", tw, 1e-6, cfg)]


def check_normalization(vc: VerifyConfig, ns=(1, 2, 5, 17, 100, 500), kmax=1000):
    e0 = get_function("e0")
    one = RealFunction("ray", lambda z: np.ones_like(np.asarray(z, dtype=float)), "ray_e0")
    dev = 0.0
    for n in ns:
        dev = max(dev, np.max(np.abs(u_coefficients(n, e0, kmax, vc.quad) - 1.0)))
        dev = max(dev, np.max(np.abs(v_coefficients(n, one, kmax, vc.quad) - 1.0)))
    return [_residual("coefficient-normalization", "coefficient-functionals-normalized", dev, 1e-10,
                      vc.snapshot(n=list(ns), kmax=kmax))]


def check_reproduction(vc: VerifyConfig, ns=(2, 6, 17, 64)):
    x = chebyshev_grid(33, 0.0, 1.0 - vc.window_delta)
    dev = 0.0
    for n in ns:
        for kind in (GM, GS):
            for name in ("e0", "e1"):
                f = get_function(name)
                dev = max(dev, np.max(np.abs(ops.apply(kind, vc.op(n), f, x) - f(x))))
    return [_residual("linear-reproduction", "reproduces-e0-e1", dev, 1e-9, vc.snapshot(n=list(ns)))]


def check_bridge(vc: VerifyConfig, ns=(5, 10, 17), names=("e0", "e1", "sin")):
    x = vc.grid()
    res = corr = 0.0
    for n in ns:
        for name in names:
            f = get_function(name)
            res = max(res, bridge.bridge_residual(n, f, x, vc.op(n)))
            (a, b), (c, d) = bridge.modified_norm_correspondence(vc.op(n), f, x)
            corr = max(corr, abs(a - b), abs(c - d))
    for name in names:
        a, b = bridge.norm_correspondence(get_function(name), x)
        corr = max(corr, abs(a - b))
    cfg = vc.snapshot(n=list(ns), functions=list(names))
    return [_residual("bridge-two-path", "unit-ray-bridge", res, 1e-7, cfg),
            _residual("norm-correspondence", "weighted-norm-correspondence", corr, 1e-7, cfg)]


def check_commutation(vc: VerifyConfig, ns=(2, 5, 17), pair=(5, 8)):
    x = vc.grid()
    tele = defn = dcomm = mcomm = mm = gsd = 0.0
    funcs = vc.funcs()
    smooth = [f for f in funcs if _w2_0(f)]
    for n in ns:
        c = vc.op(n)
        for f in funcs:
            b = ops.bind(GM, c, f)
            lhs = b(x) - ops.apply(GM, vc.op(n + 1), f, x)
            tele = max(tele, np.max(np.abs(lhs - b.dtilde(x) / (n * (n + 1)))))
        for f in smooth:
            df = _dtilde_fn(f)
            shifted = RealFunction(UNIT, lambda t, f=f, df=df: f.eval(t) - df.eval(t) / n, "shifted")
            defn = max(defn, np.max(np.abs(ops.apply(GS, c, f, x) - ops.apply(GM, c, shifted, x))))
            dcomm = max(dcomm, np.max(np.abs(ops.dtilde_of_modified(c, f, x) - ops.apply(GS, c, df, x))))
            gsd = max(gsd, np.max(np.abs(ops.bind(GM, c, f).dtilde(x) - ops.apply(GM, c, df, x))))
    m, n = pair
    for f in smooth:
        cm, cn = vc.op(m), vc.op(n)
        a = ops.apply(GM, cn, ops.materialize(GS, cn, f), x)
        b = ops.apply(GS, cn, ops.materialize(GM, cn, f), x)
        mcomm = max(mcomm, np.max(np.abs(a - b)))
        a = ops.apply(GS, cm, ops.materialize(GS, cn, f), x)
        b = ops.apply(GS, cn, ops.materialize(GS, cm, f), x)
        mm = max(mm, np.max(np.abs(a - b)))
    cfg = vc.snapshot(n=list(ns), pair=list(pair))
    return [_residual("telescoping", "gs-telescoping", tele, 1e-7, cfg),
            _residual("modified-definition", "modified-equals-gs-of-shift", defn, 1e-7, cfg),
            _residual("dtilde-commutes-modified", "dtilde-commutes-with-modified", dcomm, 1e-6, cfg),
            _residual("dtilde-commutes-gs", "dtilde-commutes-with-gs", gsd, 1e-6, cfg),
            _residual("gs-modified-commute", "gs-and-modified-commute", mcomm, 1e-6, cfg),
            _residual("modified-orders-commute", "modified-operators-commute", mm, 1e-6, cfg)]


def verify_identities(vc: VerifyConfig = VerifyConfig()) -> list[VerificationReport]:
    return (check_moments(vc) + check_normalization(vc) + check_reproduction(vc)
            + check_bridge(vc) + check_commutation(vc))


# inequality checks ---------------------------------------------------------


def find_nonpositivity_witness(n: int = 17, vc: VerifyConfig = VerifyConfig()):
    """Search narrow nonnegative Gaussian bumps for a point where M~_n f < 0.
    Returns a dict describing the best witness found."""
    best = None
    x = chebyshev_grid(129, 0.0, 1.0 - vc.window_delta)
    for c in (0.2, 0.5, 0.8):
        for w in (0.01, 0.03, 0.1):
            f = RealFunction(UNIT, lambda t, c=c, w=w: np.exp(-((np.asarray(t) - c) / w) ** 2),
                             f"bump(c={c},w={w})")
            v = ops.apply(GS, vc.op(n), f, x)
            i = int(np.argmin(v))
            if best is None or v[i] < best["value"]:
                best = {"n": n, "center": c, "width": w, "x": float(x[i]), "value": float(v[i])}
    return best


def _input_norm(f: RealFunction, vc: VerifyConfig) -> float:
    """sup |f| over [0, 1). Operator images near the window edge average f
    beyond it, so the strip [1 - delta, 1] is swept as well (registry
    functions are continuous up to 1)."""
    strip = chebyshev_grid(33, 1.0 - vc.window_delta, 1.0)
    edge = float(np.max(np.abs(f(strip))))
    return max(sup_norm(f, vc.window_delta, vc.sup_grid).value, edge)


def check_norm_bound(vc: VerifyConfig, ns=(2, 17, 64)):
    worst, contr = 0.0, 0.0
    for n in ns:
        for f in vc.funcs():
            fn = _input_norm(f, vc)
            op = ops.bind(GS, vc.op(n), f)
            worst = max(worst, sup_norm(op, vc.window_delta, vc.sup_grid).value / fn)
            gm = ops.bind(GM, vc.op(n), f)
            contr = max(contr, sup_norm(gm, vc.window_delta, vc.sup_grid).value / fn)
    wit = find_nonpositivity_witness(17, vc)
    cfg = vc.snapshot(n=list(ns))
    return [_report("norm-bound", "modified-norm-at-most-sqrt6", worst, SQRT6, 1.0 + INEQ_TOL / SQRT6, cfg),
            _report("gs-contraction", "gs-norm-one", contr, 1.0, 1.0 + INEQ_TOL, cfg),
            # passes when the witness value is below -NOISE_FLOOR
            _report("non-positivity-witness", "modified-not-positive", NOISE_FLOOR, -wit["value"], 1.0,
                    vc.snapshot(**wit))]


def check_jackson(vc: VerifyConfig, ns=(2, 4, 8, 16, 32, 64)):
    f = get_function("x2")
    d2 = sup_norm(f.dtilde_chain[1], vc.window_delta, vc.sup_grid).value
    d1 = sup_norm(f.dtilde_chain[0], vc.window_delta, vc.sup_grid).value
    mod = gs = 0.0
    lhs_m = rhs_m = lhs_g = rhs_g = 0.0
    for n in ns:
        em = modified_error(f, n, vc.op(n), vc.sup_grid).value
        op = ops.bind(GM, vc.op(n), f)
        eg = sup_norm(lambda x: op(x) - f(x), vc.window_delta, vc.sup_grid).value
        if n * n * em / d2 >= mod:
            mod, lhs_m, rhs_m = n * n * em / d2, n * n * em, d2
        if n * eg / d1 >= gs:
            gs, lhs_g, rhs_g = n * eg / d1, n * eg, d1
    cfg = vc.snapshot(n=list(ns), function="x2")
    return [_report("jackson-modified", "modified-jackson-second-order", lhs_m, rhs_m, 1.0 + INEQ_TOL, cfg),
            _report("jackson-gs", "gs-jackson-first-order", lhs_g, rhs_g, 1.0 + INEQ_TOL, cfg)]


def check_convergence(vc: VerifyConfig, ns=(4, 8, 16, 32, 64)):
    out = []
    for name in ("x2", "sin"):
        f = get_function(name)
        for kind, lo, hi in ((GS, -2.3, -1.8), (GM, -1.3, -0.8)):
            rep = convergence_experiment(kind, f, ns, vc.op(ns[0]), vc.sup_grid)
            local = np.diff(np.log(rep.errors)) / np.diff(np.log(np.asarray(ns, dtype=float)))
            cfg = vc.snapshot(n=list(ns), function=name, kind=kind.value, errors=list(rep.errors),
                              slope=rep.slope, local_slopes=[float(v) for v in local],
                              slope_range=[lo, hi], reliable=rep.reliable)
            # distance of the slope from the centre of the range, in half-widths
            mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
            dev = abs(rep.slope - mid) if rep.reliable else math.inf
            out.append(_report(f"slope-{kind.value}-{name}", "convergence-order", dev, half, 1.0, cfg))
    return out


def check_voronovskaya(vc: VerifyConfig, ns=(8, 16, 32)):
    f = get_function("x2")
    d2, d3 = f.dtilde_chain[1], f.dtilde_chain[2]
    d3n = sup_norm(d3, vc.window_delta, vc.sup_grid).value
    out = []
    for n in ns:
        ts = spectral.tail_sums(n)
        op = ops.bind(GS, vc.op(n), f)
        lhs = sup_norm(lambda x: op(x) - f(x) + ts.lam * d2(x), vc.window_delta, vc.sup_grid).value
        out.append(_report(f"voronovskaya-n{n}", "modified-voronovskaya", lhs, ts.theta * d3n, 1.0 + 1e-4,
                           vc.snapshot(n=n, function="x2", lam=ts.lam, theta=ts.theta)))
    bad = [n for n in range(2, 1001) if not spectral.tail_sums(n).bounds_hold()]
    ts2 = spectral.tail_sums(2)
    dev = max(abs(ts2.lam - 0.1050664), abs(ts2.theta - 0.0398679))
    out.append(_residual("tail-sum-bounds", "tail-sum-estimates", float(len(bad)), 0.5,
                         vc.snapshot(n_range=[2, 1000], failures=bad[:10])))
    out.append(_residual("tail-sum-values", "tail-sum-values-n2", dev, 1e-6, vc.snapshot(n=2)))
    return out


def check_bernstein(vc: VerifyConfig, ns=(17, 32, 64)):
    worst, at = 0.0, None
    for n in ns:
        for f in vc.funcs():
            fn = _input_norm(f, vc)
            d = ops.ModifiedDtilde(vc.op(n), f)
            r = sup_norm(d, vc.window_delta, vc.sup_grid).value / (n * fn)
            if r >= worst:
                worst, at = r, (n, f.label)
    return [_report("bernstein", "modified-bernstein-constant-17", worst, C_BERNSTEIN, 1.0 + INEQ_TOL,
                    vc.snapshot(n=list(ns), observed_max_ratio=worst, at=list(at)))]


def check_direct(vc: VerifyConfig, ns=(4, 8, 17, 32)):
    out = []
    for f in vc.funcs():
        worst = None
        for n in ns:
            lo = k_lower(f, n, vc.op(n), vc.sup_grid)
            up = k_upper(f, 1.0 / n ** 2, n, "best", vc.op(n), vc.sup_grid)
            # lower <= upper, with the absolute noise floor on the right
            r = (lo, up.value + NOISE_FLOOR, n, up.witness)
            if worst is None or r[0] / r[1] > worst[0] / worst[1]:
                worst = r
        lo, rhs, n, wit = worst
        out.append(_report(f"sandwich-{f.label}", "direct-and-converse-sandwich", lo, rhs, 1.0,
                           vc.snapshot(n=list(ns), worst_n=n, witness=wit, function=f.label)))
    return out


def check_converse(vc: VerifyConfig, n: int = 17, names=("e1", "x2", "sin", "rat", "sqrt")):
    ell = math.ceil(L_CONVERSE * n - 1e-12)
    out = []
    for name in names:
        f = get_function(name)
        up = k_upper(f, 1.0 / n ** 2, n, "best", vc.op(n), vc.sup_grid)
        auto = up if up.witness.startswith("auto") else k_upper(f, 1.0 / n ** 2, n, "auto", vc.op(n), vc.sup_grid)
        en = modified_error(f, n, vc.op(n), vc.sup_grid).value
        el = modified_error(f, ell, vc.op(ell), vc.sup_grid).value
        rhs = C_CONVERSE * (ell / n) ** 2 * (en + el)
        out.append(_report(f"converse-{name}", "strong-converse-instance", up.value, rhs + NOISE_FLOOR,
                           1.0 + INEQ_TOL,
                           vc.snapshot(n=n, ell=ell, C=C_CONVERSE, L=L_CONVERSE, witness=up.witness,
                                       auto_witness_upper=auto.value, err_n=en, err_ell=el,
                                       iterate_distance=auto.distance,
                                       iterate_bound_10x=10.0 * en)))
    return out


SUITES = {
    "identities": verify_identities,
    "norms": lambda vc: check_norm_bound(vc),
    "jackson": lambda vc: check_jackson(vc) + check_convergence(vc),
    "voronovskaya": lambda vc: check_voronovskaya(vc),
    "bernstein": lambda vc: check_bernstein(vc),
    "direct": lambda vc: check_direct(vc),
    "converse": lambda vc: check_converse(vc),
}


def verify_inequalities(vc: VerifyConfig = VerifyConfig()) -> list[VerificationReport]:
    out = []
    for name in ("norms", "jackson", "voronovskaya", "bernstein", "direct", "converse"):
        out += SUITES[name](vc)
    return out


def run_suite(name: str, vc: VerifyConfig = VerifyConfig()) -> list[VerificationReport]:
    if name == "all":
        return verify_identities(vc) + verify_inequalities(vc)
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}")
    return SUITES[name](vc)
