"""Non-retarded interaction energy per unit area of planar layer stacks.

The stack is ``1 | 2 | 3 | 4 | 5`` with region 3 the gap of width ``w``.
Regions 2 and 4 are coatings of thickness ``d2``/``d4`` (0 removes the layer,
``inf`` makes it the semi-infinite medium). Lengths are nm, energies eV, and
energies per area eV/nm^2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, special

from .errors import DomainError, NumericalError
from .materials import (
    GOLD,
    VACUUM,
    DielectricModel,
    IdealMetal,
    frequency_scale,
    reflection,
)

__all__ = [
    "LayerStack",
    "CharacteristicSeries",
    "mode_ratio",
    "energy_per_area",
    "energy_derivative",
    "characteristic_integral",
    "characteristic_series",
    "energy_series",
    "local_exponent",
]

_U_MAX = 50.0  # u * exp(-u) < 1e-20 beyond this
_PREFACTOR = 1.0 / (16.0 * math.pi**2)


@dataclass(frozen=True)
class LayerStack:
    eps1: DielectricModel = GOLD
    eps2: DielectricModel = GOLD
    eps3: DielectricModel = VACUUM
    eps4: DielectricModel = GOLD
    eps5: DielectricModel = GOLD
    d2: float = 0.0
    d4: float = 0.0

    def __post_init__(self):
        for name in ("d2", "d4"):
            d = getattr(self, name)
            if not d >= 0:
                raise DomainError(f"{name} must be >= 0 or inf, got {d}")

    @classmethod
    def three_region(cls, outer1, gap, outer5):
        """Plain ``1|3|5`` stack: two half spaces across a gap."""
        return cls(outer1, outer1, gap, outer5, outer5, 0.0, 0.0)

    @classmethod
    def coated(cls, outer1, gap, coating, core, thickness, *, coat_side=5):
        """One coated side: ``1|3|4|5`` (``coat_side=5``) or ``1|2|3|5``."""
        if coat_side == 5:
            return cls(outer1, outer1, gap, coating, core, 0.0, thickness)
        if coat_side == 1:
            return cls(core, coating, gap, outer1, outer1, thickness, 0.0)
        raise DomainError(f"coat_side must be 1 or 5, got {coat_side}")

    @property
    def is_three_region(self) -> bool:
        """True when the stack reduces exactly to ``1|3|5``-type media."""
        left = self.d2 == 0 or math.isinf(self.d2) or self.eps1 == self.eps2
        right = self.d4 == 0 or math.isinf(self.d4) or self.eps4 == self.eps5
        return left and right

    def outer_models(self):
        """The two media effectively bounding the gap for a ``1|3|5`` stack."""
        left = self.eps2 if math.isinf(self.d2) else self.eps1 if self.d2 == 0 else self.eps2
        right = self.eps4 if math.isinf(self.d4) else self.eps5 if self.d4 == 0 else self.eps4
        return left, right

    def models(self):
        return (self.eps1, self.eps2, self.eps3, self.eps4, self.eps5)


def _side(r_outer, r_inner, d, k, mid_outer):
    """Effective reflection of one side of the gap.

    ``r_inner`` is the coating/gap interface, ``r_outer`` the outer/coating one;
    ``mid_outer`` is the reflection for a vanished coating.
    """
    if d == 0:
        return mid_outer()
    if math.isinf(d):
        return r_inner()
    e = math.exp(-2.0 * k * d)
    ri, ro = r_inner(), r_outer()
    return (ri + e * ro) / (1.0 + e * ro * ri)


class _Reflections:
    """All reflection coefficients of a stack at one imaginary frequency."""

    __slots__ = ("stack", "xi", "_cache")

    def __init__(self, stack: LayerStack, xi: float):
        self.stack = stack
        self.xi = xi
        self._cache = {}

    def r(self, i: int, j: int) -> float:
        key = (i, j)
        if key not in self._cache:
            m = self.stack.models()
            self._cache[key] = reflection(m[i - 1], m[j - 1], self.xi)
        return self._cache[key]

    def left(self, k: float) -> float:
        s = self.stack
        return _side(lambda: self.r(1, 2), lambda: self.r(2, 3), s.d2, k, lambda: self.r(1, 3))

    def right(self, k: float) -> float:
        s = self.stack
        return _side(lambda: self.r(4, 5), lambda: self.r(3, 4), s.d4, k, lambda: self.r(3, 5))

    def product(self, k: float) -> float:
        return self.left(k) * self.right(k)


def mode_ratio(stack: LayerStack, k: float, xi: float, w: float) -> float:
    """Normal-mode function ratio ``f(k, i xi, w) / f(k, i xi, inf)``.

    The four-interface numerator and denominator factorize into one effective
    reflection per side, so the ratio is ``1 + exp(-2 k w) R_left R_right``.
    """
    if not k > 0:
        raise DomainError(f"k must be > 0, got {k}")
    if not w > 0:
        raise DomainError(f"w must be > 0, got {w}")
    if not xi > 0:
        raise DomainError(f"xi must be > 0, got {xi}")
    if math.isinf(w):
        return 1.0
    return 1.0 + math.exp(-2.0 * k * w) * _Reflections(stack, xi).product(k)


def _quad(f, a, b, epsrel, epsabs=0.0, points=None, limit=200, what="integral"):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        res = integrate.quad(
            f, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit, points=points, full_output=1
        )
    val, err = res[0], res[1]
    if len(res) > 3 and err > 10 * max(epsabs, epsrel * abs(val)):
        raise NumericalError(f"{what} did not converge: {res[3]}", val, err)
    return val, err


def _check_decay(stack: LayerStack, xi0: float):
    """Reject stacks whose frequency integrand does not vanish at large xi."""
    if abs(_Reflections(stack, 1e6 * xi0).product(1.0)) > 1e-9:
        raise DomainError(
            "reflection product does not decay at high frequency; "
            "the frequency integral diverges (ideal metals or constant media on both sides?)"
        )


def _kernel_points(stack, w):
    pts = [min(w / d, _U_MAX) for d in (stack.d2, stack.d4) if 0 < d < math.inf]
    pts = sorted({p for p in pts if 0 < p < _U_MAX})
    return pts or None


def _frequency_integral(stack, w, inner, quad_tol, what):
    xi0 = frequency_scale(*[m for m in stack.models() if not isinstance(m, IdealMetal)])
    _check_decay(stack, xi0)
    points = _kernel_points(stack, w)

    def outer(t):
        if t <= 0.0 or t >= 1.0:
            return 0.0
        xi = xi0 * t / (1.0 - t)
        refl = _Reflections(stack, xi)
        val, _ = _quad(
            lambda u: inner(u, refl.product(u / (2.0 * w))),
            0.0,
            _U_MAX,
            epsrel=quad_tol * 0.1,
            epsabs=1e-300,
            points=points,
            what=f"{what} (wave-vector integral)",
        )
        return val * xi0 / (1.0 - t) ** 2

    val, err = _quad(outer, 0.0, 1.0, epsrel=quad_tol, epsabs=1e-300, what=f"{what} (frequency integral)")
    return val, err


def energy_per_area(stack: LayerStack, w: float, quad_tol: float = 1e-8) -> float:
    """Interaction energy per unit area ``E_p(w)`` in eV/nm^2.

    Evaluates the double integral over imaginary frequency and in-plane wave
    vector with ``u = 2 k w`` and ``xi = xi0 t / (1 - t)``. The reference
    energy is zero at infinite separation.

    Raises
    ------
    DomainError
        For ``w <= 0`` or a divergent frequency integral.
    NumericalError
        If adaptive quadrature does not converge.
    """
    if not w > 0:
        raise DomainError(f"gap w must be > 0, got {w}")
    if not 1e-12 < quad_tol < 1e-2:
        raise DomainError(f"quad_tol must lie in (1e-12, 1e-2), got {quad_tol}")

    def inner(u, q):
        return u * math.log1p(math.exp(-u) * q)

    val, _ = _frequency_integral(stack, w, inner, quad_tol, "energy_per_area")
    return _PREFACTOR * val / (w * w)


def energy_derivative(stack: LayerStack, w: float, quad_tol: float = 1e-8) -> float:
    """``dE_p/dw`` in eV/nm^3, by differentiating under the integral sign."""
    if not w > 0:
        raise DomainError(f"gap w must be > 0, got {w}")

    def inner(u, q):
        e = math.exp(-u) * q
        return -u * u * e / (1.0 + e)

    val, _ = _frequency_integral(stack, w, inner, quad_tol, "energy_derivative")
    return _PREFACTOR * val / (w * w * w)


@dataclass(frozen=True)
class CharacteristicSeries:
    """Characteristic dielectric integrals ``<omega_l>`` for ``l = 1..l_max``.

    ``truncation_bound`` bounds ``|sum_{l > l_max} <omega_l> / l**3|`` in eV.
    """

    terms: tuple
    truncation_bound: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(float(t) for t in self.terms))
        if len(self.terms) < 1:
            raise DomainError("series needs at least one term")
        if not self.truncation_bound >= 0:
            raise DomainError("truncation_bound must be >= 0")

    @property
    def l_max(self) -> int:
        return len(self.terms)

    @property
    def weighted_sum(self) -> float:
        """``sum_l <omega_l> / l**3`` over the stored terms (eV)."""
        l = np.arange(1, len(self.terms) + 1, dtype=float)
        return float(np.sum(np.asarray(self.terms) / l**3))


def _outer_product(eps1, eps3, eps5):
    xi0 = frequency_scale(*[m for m in (eps1, eps3, eps5) if not isinstance(m, IdealMetal)])

    def p(xi):
        return reflection(eps1, eps3, xi) * reflection(eps5, eps3, xi)

    if abs(p(1e6 * xi0)) > 1e-9:
        raise DomainError(
            "characteristic integral diverges: reflection product does not decay "
            "at high frequency"
        )
    return p, xi0


def characteristic_integral(l: int, eps1, eps3, eps5, tol: float = 1e-11) -> float:
    """``<omega_l> = 2 * int_0^inf dxi [r13(i xi) r53(i xi)]**l`` in eV.

    Raises
    ------
    DomainError
        For ``l < 1`` or a divergent integral (e.g. ideal metal on both sides).
    """
    if int(l) != l or l < 1:
        raise DomainError(f"l must be a positive integer, got {l}")
    p, xi0 = _outer_product(eps1, eps3, eps5)

    def f(t):
        if t <= 0.0 or t >= 1.0:
            return 0.0
        xi = xi0 * t / (1.0 - t)
        return p(xi) ** l * xi0 / (1.0 - t) ** 2

    val, _ = _quad(f, 0.0, 1.0, epsrel=tol, epsabs=1e-300, limit=500, what="characteristic_integral")
    return 2.0 * val


def _sup_product(p, xi0) -> float:
    xis = xi0 * np.logspace(-12, 6, 1801)
    rho = max(abs(p(float(x))) for x in xis)
    return min(rho, 1.0)


def _tail_sum(rho: float, l_max: int) -> float:
    """``sum_{j >= 1} rho**j / (l_max + j)**3``."""
    if rho >= 1.0:
        return float(special.zeta(3.0, l_max + 1))
    if rho == 0.0:
        return 0.0
    j = np.arange(1, 20000, dtype=float)
    terms = rho**j / (l_max + j) ** 3
    return float(np.sum(terms))


def characteristic_series(eps1, eps3, eps5, tol: float = 1e-8, l_max: int | None = None) -> CharacteristicSeries:
    """Build ``<omega_l>`` up to an adaptive (or fixed) ``l_max``.

    The dropped tail is bounded with ``|<omega_l>| <= A_L rho**(l - L)`` where
    ``A_L = 2 int |r13 r53|**L`` and ``rho = sup |r13 r53|``. ``l_max`` is
    doubled until that bound falls below ``tol`` times the partial sum.
    """
    p, xi0 = _outer_product(eps1, eps3, eps5)
    rho = _sup_product(p, xi0)
    L = l_max or 16
    while True:
        ls = np.arange(1, L + 1, dtype=float)

        def f(t):
            if t <= 0.0 or t >= 1.0:
                return np.zeros(L + 1)
            xi = xi0 * t / (1.0 - t)
            pv = p(xi)
            jac = xi0 / (1.0 - t) ** 2
            return np.append(pv**ls, abs(pv) ** L) * jac

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            vals, err = integrate.quad_vec(f, 0.0, 1.0, epsrel=min(tol, 1e-10) * 0.1, epsabs=0, norm="max", limit=2000)
        vals = 2.0 * vals
        terms, a_l = vals[:-1], vals[-1]
        total = float(np.sum(terms / ls**3))
        bound = a_l * _tail_sum(rho, L)
        if l_max is not None or bound <= tol * abs(total) or total == 0.0 or L >= 8192:
            return CharacteristicSeries(tuple(terms), float(bound))
        L *= 2


def energy_series(w: float, series: CharacteristicSeries, full_output: bool = False):
    """``E_p(w) = -(1 / 32 pi^2 w^2) * sum_l <omega_l> / l**3``.

    With ``full_output`` returns ``(value, error_bound)``, the bound coming from
    the series truncation.
    """
    if not w > 0:
        raise DomainError(f"gap w must be > 0, got {w}")
    pref = 1.0 / (32.0 * math.pi**2 * w * w)
    val = -pref * series.weighted_sum
    if full_output:
        return val, pref * series.truncation_bound
    return val


def local_exponent(ep: Callable[[float], float], w: float, step: float = 0.01) -> float:
    """Local power-law exponent ``zeta(w) = -d ln|E_p| / d ln w``.

    Symmetric difference in ``ln w`` with half-width ``step``.
    """
    if not w > 0:
        raise DomainError(f"w must be > 0, got {w}")
    lo, hi = ep(w * math.exp(-step)), ep(w * math.exp(step))
    if lo == 0 or hi == 0 or (lo > 0) != (hi > 0):
        raise NumericalError("E_p changes sign or vanishes across the stencil", float("nan"), float("nan"))
    return -(math.log(abs(hi)) - math.log(abs(lo))) / (2.0 * step)
