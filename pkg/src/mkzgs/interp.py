"""Chebyshev-Lobatto interpolants on [0, b] used to materialise iterates."""
from __future__ import annotations

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.fft import dct

from . import kernels
from .functions import UNIT, RealFunction

GRID_POINTS = 513
GRID_EDGE = 1.0 - 2.0 ** -10


def lobatto_nodes(m: int = GRID_POINTS, b: float = GRID_EDGE) -> np.ndarray:
    """Chebyshev-Lobatto points on [0, b], in descending order."""
    j = np.arange(m)
    return 0.5 * b * (1.0 + np.cos(np.pi * j / (m - 1)))


class ChebInterpolant:
    """Polynomial interpolant through values at :func:`lobatto_nodes`.

    Evaluation inside [0, b] is barycentric; beyond b the interpolant is
    continued linearly with its end slope, which keeps half-line transforms
    of the result of at most linear growth.
    """

    def __init__(self, values, b: float = GRID_EDGE):
        self.values = np.ascontiguousarray(values, dtype=float)
        m = self.values.size
        self.b = b
        self.nodes = lobatto_nodes(m, b)
        w = (-1.0) ** np.arange(m)
        w[0] *= 0.5
        w[-1] *= 0.5
        self.weights = w
        c = dct(self.values, type=1) / (m - 1)
        c[0] *= 0.5
        c[-1] *= 0.5
        self.coef = c
        self._d = [c]
        self.edge = float(self.values[0])
        self.edge_slope = float(self.deriv(np.array([b]), 1)[0])

    def _s(self, t):
        return 2.0 * t / self.b - 1.0

    def deriv(self, t, order: int):
        while len(self._d) <= order:
            self._d.append(C.chebder(self._d[-1]))
        scale = (2.0 / self.b) ** order
        return scale * C.chebval(self._s(np.minimum(t, self.b)), self._d[order])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        flat = t.ravel()
        out = np.empty_like(flat)
        inside = flat <= self.b
        if inside.any():
            out[inside] = kernels.barycentric(self.nodes, self.values, self.weights, flat[inside])
        if (~inside).any():
            out[~inside] = self.edge + self.edge_slope * (flat[~inside] - self.b)
        return out.reshape(t.shape)

    def d1(self, t):
        t = np.asarray(t, dtype=float)
        out = self.deriv(t, 1)
        return np.where(t > self.b, self.edge_slope, out)

    def d2(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t > self.b, 0.0, self.deriv(t, 2))

    def d3(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t > self.b, 0.0, self.deriv(t, 3))

    def as_function(self, label: str) -> RealFunction:
        return RealFunction(UNIT, self.__call__, label, d1=self.d1, d2=self.d2, d3=self.d3)


def sample(f, m: int = GRID_POINTS, b: float = GRID_EDGE) -> ChebInterpolant:
    return ChebInterpolant(np.asarray(f(lobatto_nodes(m, b)), dtype=float), b)
