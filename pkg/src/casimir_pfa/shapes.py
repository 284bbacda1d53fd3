"""Extended-PFA forces for objects above a substrate and object pairs.

Every geometry takes the absolute closest separation ``z`` (nm) and an
energy-per-area provider ``ep(w)`` (eV/nm^2). Forces are in eV/nm and
attractive forces are negative.

Each geometry owns its scaled gap ``x = z / scale`` and the size multiplier
that turns the force into a scale-free ("universal") quantity, e.g.
``R * F`` against ``z / R`` for a sphere.

When the provider is a pure ``w**-2`` law the closed-form force is
``pfa_force * correction(x)``. For any other provider ``full_force`` integrates
the exact projected-surface expression instead of reusing those formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, ClassVar

from scipy import constants
from scipy import integrate

from .errors import DomainError, NumericalError, UnsupportedVariantError
from .providers import derivative, power_law_exponent

__all__ = [
    "SphereSubstrate",
    "SphereSphere",
    "OblateSubstrate",
    "ProlateSubstrate",
    "OblateOblate",
    "ProlateProlate",
    "CylinderSubstrate",
    "CylinderCylinder",
    "StandingCylinder",
    "CubeStraight",
    "CubeTilted",
    "ConePointed",
    "ConeSphericalTip",
    "WingsThick",
    "WingsThin",
    "GEOMETRIES",
    "SheetParams",
    "corr_factor",
    "cylinder_correction",
    "pfa_force",
    "correction",
    "full_force",
    "epsilon_leading",
    "scaled_gap",
    "universal_scaling",
    "scaled_force",
    "cone_pointed_power_law",
    "cone_tip_terms",
    "force_cone_spherical_tip",
    "cone_tip_infinite_limit",
    "general_interaction",
    "sheet2d_limit",
    "sheet_energy",
    "force_from_projection",
]


def _quad(f, a, b, tol=1e-12, points=None):
    val, err = integrate.quad(f, a, b, epsabs=0.0, epsrel=tol, limit=200, points=points)
    if err > 1e3 * tol * abs(val) and err > 1e-300:
        raise NumericalError("force quadrature did not converge", val, err)
    return val


def corr_factor(zeta: float, x: float) -> float:
    """Geometry correction for a cap whose gap grows linearly in projected area.

    Applies to spheres and spheroids when ``E_p = -C / w**zeta``; ``x`` is the
    gap over the cap depth. Equals ``1 / (1 + x)`` for ``zeta = 2`` and
    ``1 - x ln((1 + x) / x)`` for ``zeta = 1``.
    """
    if not zeta > 0:
        raise DomainError(f"zeta must be > 0, got {zeta}")
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x}")
    if zeta == 2:
        return 1.0 / (1.0 + x)
    lr = math.log(x / (1.0 + x))
    if zeta == 1:
        return 1.0 + x * lr
    # x - x**zeta / (1 + x)**(zeta - 1) written without cancellation near zeta = 1
    return 1.0 + x * math.expm1((zeta - 1.0) * lr) / (zeta - 1.0)


def cylinder_correction(x: float) -> float:
    """Full-geometry correction for a cylinder parallel to a substrate (``w**-2``)."""
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x}")
    s = math.sqrt(x * x + 2.0 * x)
    num = 6.0 * (x + 1) ** 2 * math.atan(1.0 / s) + 3.0 * math.pi * (x + 1) ** 2 + 2.0 * s * (2 * x * x + 4 * x + 3)
    den = 0.75 * math.pi * math.sqrt(2.0 / x) * (x + 1) * (x + 2) ** 2 * s
    return num / den


def _check_positive(**kw):
    for k, v in kw.items():
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"{k} must be a positive finite length, got {v}")


def _check_z(z):
    if not z > 0:
        raise DomainError(f"separation z must be > 0, got {z}")


class _Geometry:
    kind: ClassVar[str] = ""

    @property
    def scale(self) -> float:
        raise NotImplementedError

    @property
    def multiplier(self) -> float:
        raise NotImplementedError

    def pfa(self, z, ep):
        raise UnsupportedVariantError(f"{self.kind} has no leading PFA term")

    def corr(self, x):
        raise UnsupportedVariantError(
            f"{self.kind} has no closed-form correction; use full_force"
        )

    def eps(self, x):
        raise UnsupportedVariantError(f"{self.kind} has no tabulated lowest-order term")

    def exact(self, z, ep):
        raise NotImplementedError

    def power_law_force(self, z, ep, zeta):
        """Closed form for ``E_p = -C / w**zeta``; ``None`` if unavailable."""
        if zeta == 2:
            return self.pfa(z, ep) * self.corr(z / self.scale)
        return None


# -- caps: spheres and spheroids ------------------------------------------


class _Cap(_Geometry):
    """Projected area grows linearly with the gap: ``g(t) = g0 (1 - t / depth)``."""

    @property
    def g0(self) -> float:
        raise NotImplementedError

    @property
    def depth(self) -> float:
        return self.scale

    def pfa(self, z, ep):
        return self.g0 * ep(z)

    def corr(self, x):
        return corr_factor(2.0, x)

    def eps(self, x):
        return -x

    def exact(self, z, ep):
        return self.g0 * ep(z) - self.g0 / self.depth * _quad(ep, z, z + self.depth)

    def power_law_force(self, z, ep, zeta):
        return self.pfa(z, ep) * corr_factor(zeta, z / self.depth)


@dataclass(frozen=True)
class SphereSubstrate(_Cap):
    R: float
    kind: ClassVar[str] = "sphere_substrate"

    def __post_init__(self):
        _check_positive(R=self.R)

    scale = property(lambda self: self.R)
    multiplier = property(lambda self: self.R)
    g0 = property(lambda self: 2.0 * math.pi * self.R)


@dataclass(frozen=True)
class SphereSphere(_Cap):
    """Two equal spheres of radius ``R``."""

    R: float
    kind: ClassVar[str] = "sphere_sphere"

    def __post_init__(self):
        _check_positive(R=self.R)

    scale = property(lambda self: 2.0 * self.R)
    multiplier = property(lambda self: 8.0 * self.R)
    g0 = property(lambda self: math.pi * self.R)


def _check_gamma(gamma):
    if not gamma >= 1:
        raise DomainError(f"aspect ratio gamma must be >= 1, got {gamma}")


@dataclass(frozen=True)
class OblateSubstrate(_Cap):
    """Oblate spheroid, short semi-axis ``B`` normal to the substrate, ``A = gamma B``."""

    B: float
    gamma: float
    kind: ClassVar[str] = "oblate_substrate"

    def __post_init__(self):
        _check_positive(B=self.B)
        _check_gamma(self.gamma)

    scale = property(lambda self: self.B)
    multiplier = property(lambda self: self.B / self.gamma**2)
    g0 = property(lambda self: 2.0 * math.pi * self.B * self.gamma**2)


@dataclass(frozen=True)
class ProlateSubstrate(_Cap):
    """Prolate spheroid, long semi-axis ``A`` normal to the substrate, ``B = A / gamma``."""

    A: float
    gamma: float
    kind: ClassVar[str] = "prolate_substrate"

    def __post_init__(self):
        _check_positive(A=self.A)
        _check_gamma(self.gamma)

    scale = property(lambda self: self.A)
    multiplier = property(lambda self: self.A * self.gamma**2)
    g0 = property(lambda self: 2.0 * math.pi * self.A / self.gamma**2)


@dataclass(frozen=True)
class OblateOblate(_Cap):
    B: float
    gamma: float
    kind: ClassVar[str] = "oblate_oblate"

    def __post_init__(self):
        _check_positive(B=self.B)
        _check_gamma(self.gamma)

    scale = property(lambda self: 2.0 * self.B)
    multiplier = property(lambda self: 8.0 * self.B / self.gamma**2)
    g0 = property(lambda self: math.pi * self.B * self.gamma**2)


@dataclass(frozen=True)
class ProlateProlate(_Cap):
    A: float
    gamma: float
    kind: ClassVar[str] = "prolate_prolate"

    def __post_init__(self):
        _check_positive(A=self.A)
        _check_gamma(self.gamma)

    scale = property(lambda self: 2.0 * self.A)
    multiplier = property(lambda self: 8.0 * self.A * self.gamma**2)
    g0 = property(lambda self: math.pi * self.A / self.gamma**2)


# -- cylinders ---------------------------------------------------------------


class _LyingCylinder(_Geometry):
    _depth_factor: ClassVar[float] = 1.0

    def corr(self, x):
        return cylinder_correction(x)

    def eps(self, x):
        return -x / 4.0

    def exact(self, z, ep):
        # y = R sin(theta) removes the rim singularity of the chord integral
        R, k = self.R, self._depth_factor

        def f(th):
            return math.cos(th) * derivative(ep, z + 2.0 * k * R * math.sin(0.5 * th) ** 2)

        return -2.0 * self.L * R * _quad(f, 0.0, 0.5 * math.pi)


@dataclass(frozen=True)
class CylinderSubstrate(_LyingCylinder):
    """Cylinder of radius ``R`` and length ``L`` lying parallel to the substrate."""

    R: float
    L: float
    kind: ClassVar[str] = "cylinder_substrate"

    def __post_init__(self):
        _check_positive(R=self.R, L=self.L)

    scale = property(lambda self: self.R)
    multiplier = property(lambda self: self.R**2 / self.L)

    def pfa(self, z, ep):
        return 0.75 * math.pi * self.L * math.sqrt(2.0 * self.R / z) * ep(z)


@dataclass(frozen=True)
class CylinderCylinder(_LyingCylinder):
    """Two identical parallel cylinders."""

    R: float
    L: float
    kind: ClassVar[str] = "cylinder_cylinder"
    _depth_factor: ClassVar[float] = 2.0

    def __post_init__(self):
        _check_positive(R=self.R, L=self.L)

    scale = property(lambda self: 2.0 * self.R)
    multiplier = property(lambda self: 8.0 * self.R**2 / self.L)

    def pfa(self, z, ep):
        return 0.75 * math.pi * self.L * math.sqrt(self.R / z) * ep(z)


class _FlatFace(_Geometry):
    """Flat face parallel to the substrate: ``F = -area * dE_p/dz``."""

    @property
    def area(self) -> float:
        raise NotImplementedError

    def pfa(self, z, ep):
        return -self.area * derivative(ep, z)

    def corr(self, x):
        return 1.0

    def eps(self, x):
        return 0.0

    def exact(self, z, ep):
        return self.pfa(z, ep)

    def power_law_force(self, z, ep, zeta):
        return self.area * zeta * ep(z) / z


@dataclass(frozen=True)
class StandingCylinder(_FlatFace):
    """Cylinder standing on its circular end face."""

    R: float
    L: float
    kind: ClassVar[str] = "standing_cylinder"

    def __post_init__(self):
        _check_positive(R=self.R, L=self.L)

    scale = property(lambda self: self.R)
    multiplier = property(lambda self: self.R)
    area = property(lambda self: math.pi * self.R**2)


# -- cubes -------------------------------------------------------------------


@dataclass(frozen=True)
class CubeStraight(_FlatFace):
    L: float
    kind: ClassVar[str] = "cube_straight"

    def __post_init__(self):
        _check_positive(L=self.L)

    scale = property(lambda self: self.L)
    multiplier = property(lambda self: self.L)
    area = property(lambda self: self.L**2)


@dataclass(frozen=True)
class CubeTilted(_Geometry):
    """Cube rotated by ``alpha`` about an edge kept parallel to the substrate.

    Angles in ``(pi/4, pi/2)`` are folded to ``pi/2 - alpha`` by symmetry.
    """

    L: float
    alpha: float
    kind: ClassVar[str] = "cube_tilted"

    def __post_init__(self):
        _check_positive(L=self.L)
        if not 0 < self.alpha < 0.5 * math.pi:
            raise DomainError(f"tilt angle must be in (0, pi/2), got {self.alpha}")
        if self.alpha > 0.25 * math.pi:
            object.__setattr__(self, "alpha", 0.5 * math.pi - self.alpha)

    scale = property(lambda self: self.L)
    multiplier = property(lambda self: self.L)

    def pfa(self, z, ep):
        a = self.alpha
        return self.L * ep(z) / (math.sin(a) * math.cos(a))

    def corr(self, x):
        s, c = math.sin(self.alpha), math.cos(self.alpha)
        return 1.0 - c * c / (1.0 + s / x) ** 2 - s * s / (1.0 + c / x) ** 2

    def eps(self, x):
        t = math.tan(self.alpha)
        return -(t * t + 1.0 / (t * t)) * x * x

    def exact(self, z, ep):
        s, c, L = math.sin(self.alpha), math.cos(self.alpha), self.L
        return -L / (s * c) * (c * c * ep(z + L * s) + s * s * ep(z + L * c) - ep(z))


# -- cones -------------------------------------------------------------------


def cone_pointed_power_law(L: float, alpha: float, z: float, C: float, n: float) -> float:
    """Force on a pointed cone (height ``L``, half-aperture ``alpha``) for ``E_p = -C / w**n``."""
    _check_positive(L=L)
    _check_z(z)
    x = z / L
    R = L * math.tan(alpha)
    if n == 1:
        bracket = 1.0 + math.log(x / (x + 1.0)) - x / (x + 1.0)
    else:
        bracket = ((x + n) / (x + 1.0) ** n - 1.0 / x ** (n - 1.0)) / (n - 1.0)
    return 2.0 * math.pi * C * R * R / L ** (n + 1.0) * bracket


def _check_half_angle(alpha):
    if not 0 < alpha < 0.5 * math.pi:
        raise DomainError(f"half-aperture must be in (0, pi/2), got {alpha}")


@dataclass(frozen=True)
class ConePointed(_Geometry):
    """Cone of height ``L`` and half-aperture ``alpha``, apex toward the substrate."""

    L: float
    alpha: float
    kind: ClassVar[str] = "cone_pointed"

    def __post_init__(self):
        _check_positive(L=self.L)
        _check_half_angle(self.alpha)

    scale = property(lambda self: self.L)
    multiplier = property(lambda self: self.L / math.tan(self.alpha) ** 2)

    def pfa(self, z, ep):
        return 2.0 * math.pi * math.tan(self.alpha) ** 2 * z * ep(z)

    def corr(self, x):
        return 1.0 / (1.0 + x) ** 2

    def eps(self, x):
        return -2.0 * x

    def exact(self, z, ep):
        t2 = math.tan(self.alpha) ** 2
        L = self.L
        return 2.0 * math.pi * t2 * (_quad(ep, z, z + L) - L * ep(z + L))

    def power_law_force(self, z, ep, zeta):
        if zeta == 2:
            return super().power_law_force(z, ep, zeta)
        return cone_pointed_power_law(self.L, self.alpha, z, ep.C, zeta)


@dataclass(frozen=True)
class ConeSphericalTip(_Geometry):
    """Truncated cone of height ``L`` on a spherical tip of radius ``R``.

    The tip meets the cone flank tangentially. ``L = 0`` leaves a bare cap.
    """

    L: float
    R: float
    alpha: float
    kind: ClassVar[str] = "cone_spherical_tip"

    def __post_init__(self):
        _check_positive(R=self.R)
        if not (self.L >= 0 and math.isfinite(self.L)):
            raise DomainError(f"cone height L must be >= 0, got {self.L}")
        _check_half_angle(self.alpha)

    scale = property(lambda self: self.R)
    multiplier = property(lambda self: self.R)

    def pfa(self, z, ep):
        return 2.0 * math.pi * self.R * ep(z)

    def power_law_force(self, z, ep, zeta):
        if zeta != 2:
            return None
        return force_cone_spherical_tip(self.L, self.R, self.alpha, z, ep)

    def exact(self, z, ep):
        raise UnsupportedVariantError(
            "cone with spherical tip needs a w**-2 provider; use oracle.force for coated tips"
        )


def _tip_pieces(L, R, alpha, z, ep):
    x = z / R
    lr = L / R
    s = math.sin(alpha)
    e_x = R * R * ep(z)
    a = x + 1.0 - s
    b = a + lr
    return x, lr, s, e_x, a, b


def cone_tip_terms(L: float, R: float, alpha: float, z: float, ep) -> dict:
    """Scaled force pieces ``R * F`` of the cone with a spherical tip (``w**-2``).

    Returns ``tip`` (spherical cap, including its rim term), ``flank`` (the
    truncated-cone term in its commonly quoted form) and ``flank_rim``, the
    contribution of the flank's inner and outer boundary circles,
    ``2 pi sin(alpha) E_p(x) x**2 (1/a**2 - 1/b**2)``, which that quoted form
    omits. Their sum equals ``-dV/dz`` of the composite surface.
    """
    _check_z(z)
    x, lr, s, e_x, a, b = _tip_pieces(L, R, alpha, z, ep)
    t2 = math.tan(alpha) ** 2
    tip = 2.0 * math.pi * e_x * (1.0 - x * x * s / a**2 - (x - x * x / a))
    flank = 2.0 * math.pi * t2 * e_x * x * x * (1.0 / a - (a + 2.0 * lr) / b**2)
    flank_rim = 2.0 * math.pi * s * e_x * x * x * (1.0 / a**2 - 1.0 / b**2)
    return {"tip": tip, "flank": flank, "flank_rim": flank_rim}


def _require_w2(ep, zeta_hint=None):
    zeta = zeta_hint if zeta_hint is not None else power_law_exponent(ep)
    if zeta != 2:
        raise UnsupportedVariantError(
            "closed form assumes E_p = -C / w**2; use oracle.force for other providers"
        )


def force_cone_spherical_tip(L: float, R: float, alpha: float, z: float, ep, zeta_hint=None) -> float:
    """Full-PFA force on a cone with a spherical tip for a ``w**-2`` provider."""
    _require_w2(ep, zeta_hint)
    ConeSphericalTip(L, R, alpha)
    t = cone_tip_terms(L, R, alpha, z, ep)
    return (t["tip"] + t["flank"] + t["flank_rim"]) / R


def cone_tip_infinite_limit(R: float, alpha: float, z: float, ep, zeta_hint=None) -> float:
    """The ``L / R -> inf`` limit of :func:`force_cone_spherical_tip`."""
    _require_w2(ep, zeta_hint)
    x, _, s, e_x, a, _ = _tip_pieces(0.0, R, alpha, z, ep)
    t2 = math.tan(alpha) ** 2
    tip = 2.0 * math.pi * e_x * (1.0 - x * x * s / a**2 - (x - x * x / a))
    rest = 2.0 * math.pi * e_x * x * x * (t2 / a + s / a**2)
    return (tip + rest) / R


# -- wings -------------------------------------------------------------------


class _Wings(_Geometry):
    def _check(self):
        _check_positive(L=self.L)
        if not 0 <= self.alpha < 0.5 * math.pi:
            raise DomainError(f"wing angle must be in [0, pi/2), got {self.alpha}")

    scale = property(lambda self: self.L)
    multiplier = property(lambda self: self.L)

    def pfa(self, z, ep):
        if self.alpha == 0:
            return -2.0 * self.L**2 * derivative(ep, z)
        return 2.0 * self.L / math.tan(self.alpha) * ep(z)

    def exact(self, z, ep):
        L, a = self.L, self.alpha
        if a == 0:
            return -2.0 * L * L * derivative(ep, z)
        h = L * math.sin(a)
        if hasattr(ep, "derivative"):
            # integral of the derivative avoids cancellation for small angles
            return -2.0 * L / math.tan(a) * _quad(ep.derivative, z, z + h)
        return 2.0 * L / math.tan(a) * (ep(z) - ep(z + h))


@dataclass(frozen=True)
class WingsThick(_Wings):
    """Two square plates of side ``L`` meeting at the bottom edge, each tilted by ``alpha``."""

    L: float
    alpha: float
    kind: ClassVar[str] = "wings_thick"

    def __post_init__(self):
        self._check()

    def corr(self, x):
        if self.alpha == 0:
            return 1.0
        q = x / math.sin(self.alpha)
        return (1.0 + 2.0 * q) / (1.0 + q) ** 2

    def eps(self, x):
        if self.alpha == 0:
            return 0.0
        return -((x / math.sin(self.alpha)) ** 2)

    def power_law_force(self, z, ep, zeta):
        if zeta == 2 or self.alpha == 0:
            return self.pfa(z, ep) * self.corr(z / self.L)
        return None


@dataclass(frozen=True)
class WingsThin(_Wings):
    """Wings of finite thickness ``delta``.

    The provider must be the coated-plate energy ``E_p(w, delta)`` for this
    thickness; the force is then exact within PFA.
    """

    L: float
    alpha: float
    delta: float
    kind: ClassVar[str] = "wings_thin"

    def __post_init__(self):
        self._check()
        _check_positive(delta=self.delta)

    def power_law_force(self, z, ep, zeta):
        return None


GEOMETRIES = {
    cls.kind: cls
    for cls in (
        SphereSubstrate,
        SphereSphere,
        OblateSubstrate,
        ProlateSubstrate,
        OblateOblate,
        ProlateProlate,
        CylinderSubstrate,
        CylinderCylinder,
        StandingCylinder,
        CubeStraight,
        CubeTilted,
        ConePointed,
        ConeSphericalTip,
        WingsThick,
        WingsThin,
    )
}


# -- public operations -------------------------------------------------------


def scaled_gap(geom, z: float) -> float:
    """The geometry's dimensionless gap ``x`` for absolute separation ``z``."""
    return z / geom.scale


def universal_scaling(geom):
    """``(length_scale, force_multiplier)``: ``x = z / length_scale``, plotted ``multiplier * F``."""
    return geom.scale, geom.multiplier


def pfa_force(geom, z: float, ep) -> float:
    """Leading (uncorrected) PFA force.

    Flat faces use ``-area * dE_p/dz``; curved geometries use the closed-form
    leading term, which assumes a locally ``w**-2`` energy.
    """
    _check_z(z)
    return geom.pfa(z, ep)


def correction(geom, x: float) -> float:
    """Full-geometry correction factor at scaled gap ``x`` (``w**-2`` energy)."""
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x}")
    return geom.corr(x)


def epsilon_leading(geom, x: float) -> float:
    """Lowest-order term of ``correction(x) - 1`` for small ``x``."""
    if isinstance(geom, (WingsThin, ConeSphericalTip)):
        raise UnsupportedVariantError(f"{geom.kind} has no closed-form correction")
    return geom.eps(x)


def full_force(geom, z: float, ep, zeta_hint: float | None = None) -> float:
    """Full-PFA force including the geometry correction.

    Closed forms are used when the provider is a known power law (or
    ``zeta_hint`` asserts one); otherwise the projected-surface expression is
    integrated with ``ep`` directly, which covers coated objects.
    """
    _check_z(z)
    zeta = zeta_hint if zeta_hint is not None else power_law_exponent(ep)
    if zeta is not None:
        if zeta != 2 and zeta_hint is not None and not hasattr(ep, "C"):
            zeta = None
        if zeta is not None:
            val = geom.power_law_force(z, ep, zeta)
            if val is not None:
                return val
    return geom.exact(z, ep)


def scaled_force(geom, x: float, ep, zeta_hint=None) -> float:
    """``multiplier * F`` at scaled gap ``x``."""
    return geom.multiplier * full_force(geom, x * geom.scale, ep, zeta_hint)


def general_interaction(n: int, R1: float, R2: float, z: float, series_sum: float) -> float:
    """Leading PFA energy of two spheres (n=0), cylinders (n=1) or half spaces (n=2).

    ``series_sum`` is ``sum_l <omega_l> / l**3`` (eV). Returns an energy (eV),
    an energy per length (eV/nm) or an energy per area (eV/nm^2). ``R2`` may
    be ``inf`` for an object facing a substrate.
    """
    if n not in (0, 1, 2):
        raise DomainError(f"n must be 0, 1 or 2, got {n}")
    _check_z(z)
    p = 1.0 - n / 2.0
    if p == 0:
        radius_term = 1.0
    else:
        _check_positive(R1=R1)
        if not R2 > 0:
            raise DomainError(f"R2 must be > 0, got {R2}")
        reduced = R1 if math.isinf(R2) else R1 * R2 / (R1 + R2)
        radius_term = (2.0 * math.pi * reduced) ** p
    return -math.gamma(1.0 + n / 2.0) * radius_term * series_sum / (32.0 * math.pi**2 * z ** (1.0 + n / 2.0))


# -- two-dimensional sheet limit ---------------------------------------------

#: ``E_p = -SHEET_ENERGY_COEFF * sheet_scale * sqrt(delta) / w**2.5`` for a sheet facing a metal
SHEET_ENERGY_COEFF = 0.02477
SHEET_SPHERE_COEFF = 0.1556
SHEET_WINGS_COEFF = 0.04954
SHEET_WINGS_LIMIT_COEFF = 0.12385

# hbar^2 / m_e and e^2 / (4 pi eps0) in eV nm^2 and eV nm
_HBAR2_OVER_ME = (constants.hbar**2 / constants.m_e) / constants.e * 1e18
_E2 = constants.e / (4.0 * math.pi * constants.epsilon_0) * 1e9


@dataclass(frozen=True)
class SheetParams:
    """Ultra-thin metal film treated as a 2D electron sheet.

    ``sheet_scale`` is ``sqrt(n hbar^2 e^2 / m_e)`` in eV (Gaussian units),
    ``delta`` the film thickness in nm.
    """

    sheet_scale: float
    delta: float

    def __post_init__(self):
        if not self.sheet_scale > 0:
            raise DomainError("sheet_scale must be > 0")
        _check_positive(delta=self.delta)

    @classmethod
    def from_density(cls, n: float, delta: float) -> "SheetParams":
        """From the conduction electron density ``n`` in nm^-3."""
        if not n > 0:
            raise DomainError("electron density must be > 0")
        return cls(math.sqrt(n * _HBAR2_OVER_ME * _E2), delta)


def sheet_energy(params: SheetParams, w: float) -> float:
    """Energy per area of a 2D sheet facing a metal half space (eV/nm^2)."""
    _check_z(w)
    return -SHEET_ENERGY_COEFF * params.sheet_scale * math.sqrt(params.delta) / w**2.5


def sheet2d_limit(kind: str, params: SheetParams, z: float, *, R=None, L=None, alpha=None, limit=None) -> float:
    """Scaled force in the 2D-sheet limit (negative = attractive).

    ``kind="sphere_substrate"`` returns ``R * F`` for a sphere of radius ``R``.
    ``kind="wings"`` returns ``L * F`` for wings of side ``L`` at angle
    ``alpha``; ``limit`` may select the ``"alpha0"``, ``"small_x"`` or
    ``"large_x"`` asymptote instead of the full expression.
    """
    _check_z(z)
    S = params.sheet_scale
    if kind == "sphere_substrate":
        _check_positive(R=R)
        return -SHEET_SPHERE_COEFF * S * math.sqrt(params.delta / R) / (z / R) ** 2.5
    if kind == "wings":
        _check_positive(L=L)
        if alpha is None or not 0 <= alpha < 0.5 * math.pi:
            raise DomainError("wings need alpha in [0, pi/2)")
        x = z / L
        root = S * math.sqrt(params.delta / L)
        if limit == "alpha0" or (limit is None and alpha == 0):
            return -SHEET_WINGS_LIMIT_COEFF * root * x**-3.5
        if limit == "small_x":
            return -SHEET_WINGS_COEFF / math.tan(alpha) * root * x**-2.5
        if limit == "large_x":
            return -SHEET_WINGS_LIMIT_COEFF * math.cos(alpha) * root * x**-3.5
        if limit is not None:
            raise DomainError(f"unknown asymptote {limit!r}")
        s = math.sin(alpha)
        return -SHEET_WINGS_COEFF / math.tan(alpha) * root * (x**-2.5 - (x + s) ** -2.5)
    raise DomainError(f"unknown sheet geometry {kind!r}")


def force_from_projection(g: Callable[[float], float], Delta: float, z: float, ep, dg=None) -> float:
    """Force from a projected-area density ``g(t) = dS/dw`` at ``w = z + t``.

    ``F = g(0) E_p(z) - g(Delta) E_p(z + Delta) + int_0^Delta g'(t) E_p(z + t) dt``.
    ``dg`` defaults to a centred finite difference of ``g``.
    """
    _check_z(z)
    if not Delta >= 0:
        raise DomainError("Delta must be >= 0")
    if Delta == 0:
        return 0.0
    if dg is None:
        h = 1e-4 * Delta

        def dg(t):
            lo, hi = max(0.0, t - h), min(Delta, t + h)
            return (g(hi) - g(lo)) / (hi - lo)

    boundary = g(0.0) * ep(z) - g(Delta) * ep(z + Delta)
    if boundary == 0 and g(0.5 * Delta) == 0:
        return 0.0
    bulk = integrate.quad(lambda t: dg(t) * ep(z + t), 0.0, Delta, epsabs=0.0, epsrel=1e-12, limit=200)[0]
    return boundary + bulk
