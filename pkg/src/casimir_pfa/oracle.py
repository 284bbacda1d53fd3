"""Numerical PFA: integrate ``E_p`` over a projected surface and differentiate.

This module knows nothing about the closed forms in :mod:`casimir_pfa.shapes`;
it only transcribes each object's surface into a gap profile. ``force``
computes ``-dV/dz`` twice (integral of ``dE_p/dw`` and a 5-point difference
of the potential) and refuses to answer if the two disagree.

Edge singularities of spheres and cylinders, where ``dS/dw`` blows up like an
inverse square root, are removed by an angular chart ``rho = R sin(theta)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from .errors import DomainError, NumericalError, ValidationError
from .providers import derivative
from . import shapes as S

__all__ = [
    "Axisymmetric",
    "Translational",
    "ProjectionDensity",
    "profile_from_geometry",
    "potential",
    "force",
    "force_paths",
]

# a chart is (s0, s1, coord(s), dcoord/ds(s)) mapping a smooth parameter to rho or u
Chart = tuple


def _edges(lo, hi, breaks):
    inner = sorted(b for b in breaks if lo < b < hi)
    return [lo, *inner, hi]


class _Profile:
    def pieces(self):
        """List of ``(s0, s1, weight(s), offset(s))`` with ``dS = weight ds``."""
        raise NotImplementedError

    point_area: float = 0.0

    def _validate(self):
        worst = math.inf
        for a, b, _, off in self.pieces():
            for i in range(129):
                worst = min(worst, off(a + (b - a) * i / 128))
        if worst < -1e-12:
            raise ValidationError(f"profile interpenetrates the substrate (offset {worst:.3g} nm)")

    def min_offset(self) -> float:
        """Smallest sampled offset; zero for a profile touching at its apex."""
        vals = [off(a + (b - a) * i / 256) for a, b, _, off in self.pieces() for i in range(257)]
        return min(vals) if vals else 0.0


def _chart_pieces(charts, weight_of, offset):
    out = []
    for s0, s1, c, dc in charts:
        out.append((s0, s1, (lambda s, c=c, dc=dc: weight_of(c(s)) * dc(s)), (lambda s, c=c: offset(c(s)))))
    return out


@dataclass(frozen=True)
class Axisymmetric(_Profile):
    """Body of revolution: gap ``z + offset(rho)`` for ``0 <= rho <= rho_max``.

    ``charts`` optionally replaces ``rho`` by smoother parameters on
    sub-intervals; they must cover ``[0, rho_max]`` in order.
    """

    offset: Callable[[float], float]
    rho_max: float
    breakpoints: tuple = ()
    charts: tuple = ()

    def __post_init__(self):
        if not self.rho_max > 0:
            raise ValidationError("rho_max must be > 0")
        self._validate()

    def pieces(self):
        ring = lambda r: 2.0 * math.pi * r  # noqa: E731
        if self.charts:
            return _chart_pieces(self.charts, ring, self.offset)
        e = _edges(0.0, self.rho_max, self.breakpoints)
        return [(a, b, ring, self.offset) for a, b in zip(e, e[1:])]


@dataclass(frozen=True)
class Translational(_Profile):
    """Extruded body of length ``length``: gap ``z + offset(u)`` for ``0 <= u <= u_max``.

    ``two_sided`` mirrors the profile to ``-u_max <= u < 0``.
    """

    offset: Callable[[float], float]
    u_max: float
    length: float
    two_sided: bool = False
    breakpoints: tuple = ()
    charts: tuple = ()

    def __post_init__(self):
        if not (self.u_max > 0 and self.length > 0):
            raise ValidationError("u_max and length must be > 0")
        self._validate()

    def pieces(self):
        k = self.length * (2.0 if self.two_sided else 1.0)
        strip = lambda u: k  # noqa: E731
        if self.charts:
            return _chart_pieces(self.charts, strip, self.offset)
        e = _edges(0.0, self.u_max, self.breakpoints)
        return [(a, b, strip, self.offset) for a, b in zip(e, e[1:])]


@dataclass(frozen=True)
class ProjectionDensity(_Profile):
    """Area density ``g(t) = dS/dw`` at ``w = z + t`` on ``[0, delta]``.

    ``point_area`` is area sitting exactly at the closest gap (flat faces).
    """

    g: Callable[[float], float]
    delta: float
    point_area: float = 0.0
    breakpoints: tuple = ()

    def __post_init__(self):
        if not (self.delta >= 0 and self.point_area >= 0):
            raise ValidationError("delta and point_area must be >= 0")

    def pieces(self):
        if self.delta == 0:
            return []
        e = _edges(0.0, self.delta, self.breakpoints)
        ident = lambda t: t  # noqa: E731
        return [(a, b, self.g, ident) for a, b in zip(e, e[1:])]


def _quad(f, a, b, tol):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, epsabs=0.0, epsrel=tol, limit=400)
    if err > 10.0 * tol * abs(val) and err > 1e-300:
        raise NumericalError("profile quadrature did not converge", val, err)
    return val


def _check_z(z):
    if not z > 0:
        raise DomainError(f"separation z must be > 0, got {z}")


def potential(profile, z: float, ep, tol: float = 1e-10) -> float:
    """Interaction energy ``V(z) = int_S E_p(w) dS`` in eV."""
    _check_z(z)
    total = profile.point_area * ep(z) if profile.point_area else 0.0
    for a, b, wgt, off in profile.pieces():
        total += _quad(lambda s: wgt(s) * ep(z + off(s)), a, b, tol)
    return total


def _transformed(profile, z, ep, tol):
    total = -profile.point_area * derivative(ep, z) if profile.point_area else 0.0
    for a, b, wgt, off in profile.pieces():
        total -= _quad(lambda s: wgt(s) * derivative(ep, z + off(s)), a, b, tol)
    return total


def _differenced(profile, z, ep):
    h = 1e-3 * z
    V = [potential(profile, z + k * h, ep, tol=1e-13) for k in (-2, -1, 1, 2)]
    return -(V[0] - 8.0 * V[1] + 8.0 * V[2] - V[3]) / (12.0 * h)


def force_paths(profile, z: float, ep, tol: float = 1e-9):
    """``(transformed, differenced)`` force estimates, without the agreement check."""
    _check_z(z)
    return _transformed(profile, z, ep, 0.1 * tol), _differenced(profile, z, ep)


def force(profile, z: float, ep, tol: float = 1e-9) -> float:
    """``-dV/dz`` in eV/nm, cross-checked by two differentiation routes.

    Raises
    ------
    NumericalError
        If the routes differ by more than ``10 * tol`` relative.
    """
    a, b = force_paths(profile, z, ep, tol)
    if abs(a - b) > 10.0 * tol * max(abs(a), 1e-300):
        raise NumericalError("force paths disagree; profile transcription suspect", a, abs(a - b))
    return a


# -- geometry transcriptions ------------------------------------------------


def _cap(depth, radius, k=1.0):
    """Ellipsoidal cap offset ``k*depth*(1 - sqrt(1 - rho^2/radius^2))`` with its chart."""

    def offset(r):
        q = min(1.0, (r / radius) ** 2)
        return k * depth * q / (1.0 + math.sqrt(1.0 - q))

    chart = (0.0, 0.5 * math.pi, lambda th: radius * math.sin(th), lambda th: radius * math.cos(th))
    return offset, chart


def _axis_cap(depth, radius, k=1.0):
    off, chart = _cap(depth, radius, k)
    return Axisymmetric(off, radius, charts=(chart,))


def profile_from_geometry(geom) -> _Profile:
    """Gap profile of a geometry, built from its surface description alone."""
    if isinstance(geom, S.SphereSubstrate):
        return _axis_cap(geom.R, geom.R)
    if isinstance(geom, S.SphereSphere):
        return _axis_cap(geom.R, geom.R, 2.0)
    if isinstance(geom, S.OblateSubstrate):
        return _axis_cap(geom.B, geom.gamma * geom.B)
    if isinstance(geom, S.ProlateSubstrate):
        return _axis_cap(geom.A, geom.A / geom.gamma)
    if isinstance(geom, S.OblateOblate):
        return _axis_cap(geom.B, geom.gamma * geom.B, 2.0)
    if isinstance(geom, S.ProlateProlate):
        return _axis_cap(geom.A, geom.A / geom.gamma, 2.0)
    if isinstance(geom, (S.CylinderSubstrate, S.CylinderCylinder)):
        k = 2.0 if isinstance(geom, S.CylinderCylinder) else 1.0
        off, chart = _cap(geom.R, geom.R, k)
        return Translational(off, geom.R, geom.L, two_sided=True, charts=(chart,))
    if isinstance(geom, S.StandingCylinder):
        return ProjectionDensity(lambda t: 0.0, 0.0, point_area=math.pi * geom.R**2)
    if isinstance(geom, S.CubeStraight):
        return ProjectionDensity(lambda t: 0.0, 0.0, point_area=geom.L**2)
    if isinstance(geom, S.CubeTilted):
        L, a = geom.L, geom.alpha
        s, c = math.sin(a), math.cos(a)
        # the two faces through the lowest edge, seen in projection
        def g(t):
            return (L / math.tan(a) if t <= L * s else 0.0) + (L * math.tan(a) if t <= L * c else 0.0)

        return ProjectionDensity(g, L * max(s, c), breakpoints=(L * min(s, c),))
    if isinstance(geom, S.ConePointed):
        cot = 1.0 / math.tan(geom.alpha)
        return Axisymmetric(lambda r: r * cot, geom.L * math.tan(geom.alpha))
    if isinstance(geom, S.ConeSphericalTip):
        return _cone_tip(geom)
    if isinstance(geom, (S.WingsThick, S.WingsThin)):
        t = math.tan(geom.alpha)
        return Translational(lambda u: u * t, geom.L * math.cos(geom.alpha), geom.L, two_sided=True)
    raise DomainError(f"no profile for {type(geom).__name__}")


def _cone_tip(geom):
    R, L, a = geom.R, geom.L, geom.alpha
    s, c = math.sin(a), math.cos(a)
    cot = c / s
    rho_join = R * c
    cap_off, _ = _cap(R, R)

    def offset(r):
        if r <= rho_join:
            return cap_off(r)
        return R * (1.0 - s) + (r - rho_join) * cot

    tip = (0.0, 0.5 * math.pi - a, lambda th: R * math.sin(th), lambda th: R * math.cos(th))
    charts = [tip]
    if L > 0:
        charts.append((rho_join, rho_join + L * math.tan(a), lambda r: r, lambda r: 1.0))
    return Axisymmetric(offset, rho_join + L * math.tan(a), charts=tuple(charts))
