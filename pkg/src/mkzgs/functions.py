"""Real functions on the unit interval or the half-line, and the registry of
test functions with hand-derived derivative chains."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import Polynomial as Poly

from .errors import DomainError

UNIT = "unit"
RAY = "ray"

PHI = Poly([0.0, 1.0, -2.0, 1.0])  # x (1-x)^2
PSI = Poly([0.0, 1.0, 1.0])  # z (1+z)

Fn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class RealFunction:
    """A vectorised real function tagged with its domain.

    ``d1``..``d3`` are optional analytic derivatives. ``dtilde_chain`` holds
    analytic closures for the first three powers of the weighted second
    derivative operator (phi D^2 on the unit side), when hand-derivable.
    ``w2`` / ``w2_0`` record membership in the smoothness classes; None means
    unknown.
    """

    domain: str
    eval: Fn
    label: str
    d1: Optional[Fn] = None
    d2: Optional[Fn] = None
    d3: Optional[Fn] = None
    dtilde_chain: tuple = field(default=())
    w2: Optional[bool] = None
    w2_0: Optional[bool] = None
    description: str = ""

    def __post_init__(self):
        if self.domain not in (UNIT, RAY):
            raise DomainError(f"unknown domain tag {self.domain!r}")

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        out = np.asarray(self.eval(arr), dtype=float)
        if out.shape != arr.shape:
            out = np.broadcast_to(out, arr.shape).copy()
        return out if arr.ndim else float(out)

    def relabel(self, label: str) -> "RealFunction":
        return replace(self, label=label)


def _wrap(fn):
    return lambda x: fn(np.asarray(x, dtype=float))


# --------------------------------------------------------------------------
# exact symbolic helpers for the D-tilde chains


class _PolyTrig:
    """p(x) sin(w x) + q(x) cos(w x); polynomials use w = 0 and q only."""

    def __init__(self, p: Poly, q: Poly, w: float):
        self.p, self.q, self.w = p, q, w

    def deriv(self) -> "_PolyTrig":
        p, q, w = self.p, self.q, self.w
        return _PolyTrig(p.deriv() - w * q, q.deriv() + w * p, w)

    def times(self, poly: Poly) -> "_PolyTrig":
        return _PolyTrig(self.p * poly, self.q * poly, self.w)

    def dtilde(self) -> "_PolyTrig":
        return self.deriv().deriv().times(PHI)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.p(x) * np.sin(self.w * x) + self.q(x) * np.cos(self.w * x)


class _PolyOverPower:
    """p(x) / (c - x)^m."""

    def __init__(self, p: Poly, c: float, m: int):
        self.p, self.c, self.m = p, c, m

    def deriv(self) -> "_PolyOverPower":
        lin = Poly([self.c, -1.0])
        return _PolyOverPower(self.p.deriv() * lin + self.m * self.p, self.c, self.m + 1)

    def dtilde(self) -> "_PolyOverPower":
        d2 = self.deriv().deriv()
        return _PolyOverPower(d2.p * PHI, self.c, d2.m)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.p(x) / (self.c - x) ** self.m


class _PhiTimes:
    """x (1-x)^2 g(x) with the weight kept in factored form, so values near
    x = 1 keep their relative accuracy."""

    def __init__(self, g):
        self.g = g

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return x * (1.0 - x) ** 2 * self.g(x)


def _from_exact(label, base, description, w2=True, w2_0=True):
    d1 = base.deriv()
    d2 = d1.deriv()
    d3 = d2.deriv()
    chain, cur = [], base
    for _ in range(3):
        chain.append(_PhiTimes(cur.deriv().deriv()))
        cur = cur.dtilde()
    return RealFunction(UNIT, base, label, d1=d1, d2=d2, d3=d3,
                        dtilde_chain=tuple(chain), w2=w2, w2_0=w2_0, description=description)


def _sqrt_fn():
    def f(x):
        return np.sqrt(x)

    def d1(x):
        with np.errstate(divide="ignore"):
            return 0.5 / np.sqrt(x)

    def d2(x):
        with np.errstate(divide="ignore"):
            return -0.25 * np.asarray(x, dtype=float) ** -1.5

    def d3(x):
        with np.errstate(divide="ignore"):
            return 0.375 * np.asarray(x, dtype=float) ** -2.5

    return RealFunction(UNIT, f, "sqrt", d1=d1, d2=d2, d3=d3, dtilde_chain=(),
                        w2=False, w2_0=False,
                        description="sqrt(x); weighted second derivative unbounded at 0")


_ZERO = Poly([0.0])

REGISTRY: dict[str, RealFunction] = {
    "e0": _from_exact("e0", _PolyTrig(_ZERO, Poly([1.0]), 0.0), "constant 1"),
    "e1": _from_exact("e1", _PolyTrig(_ZERO, Poly([0.0, 1.0]), 0.0), "identity x"),
    "x2": _from_exact("x2", _PolyTrig(_ZERO, Poly([0.0, 0.0, 1.0]), 0.0), "x^2"),
    "sin": _from_exact("sin", _PolyTrig(Poly([1.0]), _ZERO, np.pi), "sin(pi x)"),
    "rat": _from_exact("rat", _PolyOverPower(Poly([0.0, 1.0]), 2.0, 1), "x / (2 - x)"),
    "sqrt": _sqrt_fn(),
}


def get_function(name: str) -> RealFunction:
    try:
        return REGISTRY[name]
    except KeyError:
        raise DomainError(f"unknown function id {name!r}; known: {', '.join(REGISTRY)}") from None


def constant(c: float, domain: str = UNIT) -> RealFunction:
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    return RealFunction(domain, lambda x: np.full_like(np.asarray(x, dtype=float), c), f"const({c:g})",
                        d1=zero, d2=zero, d3=zero, dtilde_chain=(zero, zero, zero), w2=True, w2_0=True)


def linear_combination(terms, label=None) -> RealFunction:
    """sum a_i f_i for pairs (a_i, f_i) sharing a domain."""
    terms = list(terms)
    dom = terms[0][1].domain
    if any(f.domain != dom for _, f in terms):
        raise DomainError("linear combination of functions on different domains")

    def combo(attr):
        fns = [getattr(f, attr) for _, f in terms]
        if any(g is None for g in fns):
            return None
        return lambda x: sum(a * g(x) for (a, _), g in zip(terms, fns))

    chains = [f.dtilde_chain for _, f in terms]
    chain = ()
    if all(len(c) == 3 for c in chains):
        chain = tuple((lambda i: (lambda x: sum(a * c[i](x) for (a, _), c in zip(terms, chains))))(i)
                      for i in range(3))
    lab = label or "+".join(f"{a:g}*{f.label}" for a, f in terms)
    return RealFunction(dom, lambda x: sum(a * f.eval(x) for a, f in terms), lab,
                        d1=combo("d1"), d2=combo("d2"), d3=combo("d3"), dtilde_chain=chain)


def ray_identity() -> RealFunction:
    one = lambda z: np.ones_like(np.asarray(z, dtype=float))
    zero = lambda z: np.zeros_like(np.asarray(z, dtype=float))
    return RealFunction(RAY, lambda z: np.asarray(z, dtype=float), "ray_e1", d1=one, d2=zero, d3=zero)
