"""Energy-per-area providers ``w -> E_p(w)`` consumed by the geometry code.

Any callable works as a provider. The classes here add an analytic
``derivative`` (used by the force integrals) and, for power laws, expose the
exponent so closed-form corrections can be applied safely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError
from .planar import LayerStack, energy_derivative, energy_per_area

__all__ = ["PowerLaw", "StackEnergy", "SampledEnergy", "derivative", "power_law_exponent", "provider_for_stack"]


@dataclass(frozen=True)
class PowerLaw:
    """``E_p(w) = -C / w**zeta``."""

    C: float
    zeta: float = 2.0

    def __post_init__(self):
        if not self.zeta > 0:
            raise DomainError(f"zeta must be > 0, got {self.zeta}")

    def __call__(self, w):
        return -self.C / w**self.zeta

    def derivative(self, w):
        return self.zeta * self.C / w ** (self.zeta + 1.0)


@dataclass(frozen=True)
class StackEnergy:
    """Direct quadrature of a layer stack; accurate but slow per call."""

    stack: LayerStack
    quad_tol: float = 1e-8

    def __call__(self, w):
        return energy_per_area(self.stack, w, self.quad_tol)

    def derivative(self, w):
        return energy_derivative(self.stack, w, self.quad_tol)


class SampledEnergy:
    """Cubic-spline surrogate of a provider on a logarithmic grid.

    Interpolates ``log|w**2 E_p|`` against ``log w``, which is nearly flat for
    van der Waals energies, so modest grids reach ~1e-7 relative accuracy.
    Outside the sampled range the end exponents are extrapolated.
    ``error_estimate`` is the largest relative deviation from ``ep`` found at
    a few cell midpoints.
    """

    def __init__(self, ep, w_min: float, w_max: float, points: int = 96):
        if not 0 < w_min < w_max:
            raise DomainError("need 0 < w_min < w_max")
        lw = np.linspace(math.log(w_min), math.log(w_max), points)
        vals = np.array([ep(math.exp(x)) for x in lw])
        if np.any(vals == 0) or not (np.all(vals < 0) or np.all(vals > 0)):
            raise DomainError("sampled energy must have a fixed, non-zero sign")
        self.sign = float(np.sign(vals[0]))
        self.w_min, self.w_max = w_min, w_max
        self._spline = CubicSpline(lw, np.log(np.abs(vals)) + 2.0 * lw)
        self._dspline = self._spline.derivative()
        mids = [0.5 * (lw[i] + lw[i + 1]) for i in (points // 4, points // 2, (3 * points) // 4)]
        self.error_estimate = max(abs(self(math.exp(m)) / ep(math.exp(m)) - 1.0) for m in mids)

    def _eval(self, w):
        lw = math.log(w)
        lo, hi = math.log(self.w_min), math.log(self.w_max)
        if lw < lo:
            return float(self._spline(lo) + self._dspline(lo) * (lw - lo)), float(self._dspline(lo))
        if lw > hi:
            return float(self._spline(hi) + self._dspline(hi) * (lw - hi)), float(self._dspline(hi))
        return float(self._spline(lw)), float(self._dspline(lw))

    def __call__(self, w):
        g, _ = self._eval(w)
        return self.sign * math.exp(g) / (w * w)

    def derivative(self, w):
        g, dg = self._eval(w)
        return self.sign * math.exp(g) * (dg - 2.0) / (w * w * w)


def derivative(ep, w: float) -> float:
    """``dE_p/dw`` from the provider, or a 5-point stencil if it has none."""
    d = getattr(ep, "derivative", None)
    if d is not None:
        return d(w)
    h = 1e-3 * w
    return (ep(w - 2 * h) - 8 * ep(w - h) + 8 * ep(w + h) - ep(w + 2 * h)) / (12 * h)


def power_law_exponent(ep) -> float | None:
    """The exponent when ``ep`` is a known pure power law, else ``None``."""
    return ep.zeta if isinstance(ep, PowerLaw) else None


def provider_for_stack(stack: LayerStack, quad_tol: float = 1e-8, w_range=None):
    """Fastest faithful provider for a stack.

    ``1|3|5`` stacks scale exactly as ``w**-2``, so one quadrature fixes the
    constant. Coated stacks are sampled over ``w_range`` when given.
    """
    if stack.is_three_region:
        C = -energy_per_area(stack, 1.0, quad_tol)
        return PowerLaw(C, 2.0)
    exact = StackEnergy(stack, quad_tol)
    if w_range is None:
        return exact
    lo, hi = w_range
    return SampledEnergy(exact, lo, hi)
