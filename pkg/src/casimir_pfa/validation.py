"""Self-checks run by ``casimir-pfa validate``.

Each group returns :class:`Check` records; nothing here raises on a failed
check, so a report always completes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from . import materials as M
from . import oracle as O
from . import planar as P
from . import shapes as S
from .providers import PowerLaw, SampledEnergy, StackEnergy

__all__ = ["Check", "GROUPS", "run_checks", "check_table", "reference_geometries", "coating_stacks", "thin_film_stack"]


@dataclass(frozen=True)
class Check:
    group: str
    name: str
    passed: bool
    detail: str = ""
    #: a documented, mathematically unavoidable miss; reported but not fatal
    expected_failure: bool = False

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "XFAIL" if self.expected_failure else "FAIL"

    @property
    def fatal(self) -> bool:
        return not self.passed and not self.expected_failure

    def line(self) -> str:
        return f"{self.status}  [{self.group}] {self.name}  {self.detail}".rstrip()


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def reference_geometries():
    """One instance of every geometry, with generic shape parameters."""
    return [
        S.SphereSubstrate(1.0),
        S.SphereSphere(1.0),
        S.OblateSubstrate(1.0, 2.0),
        S.ProlateSubstrate(1.0, 2.0),
        S.OblateOblate(1.0, 2.0),
        S.ProlateProlate(1.0, 2.0),
        S.CylinderSubstrate(1.0, 3.0),
        S.CylinderCylinder(1.0, 3.0),
        S.StandingCylinder(1.0, 2.0),
        S.CubeStraight(1.0),
        S.CubeTilted(1.0, math.pi / 9),
        S.ConePointed(1.0, math.pi / 6),
        S.ConeSphericalTip(8.0, 1.0, math.pi / 6),
        S.WingsThick(1.0, math.radians(25)),
        S.WingsThin(1.0, math.radians(25), 0.1),
    ]


def coating_stacks(delta):
    """Gold facing a dielectric-coated dielectric, plus its two limiting stacks."""
    coat = M.OscillatorSum(((200.0, 10.0, 0.0),))
    core = M.OscillatorSum(((300.0, 10.0, 0.0),))
    coated = P.LayerStack.coated(M.GOLD, M.VACUUM, coat, core, delta)
    solid = P.LayerStack.three_region(M.GOLD, M.VACUUM, coat)
    bare = P.LayerStack.three_region(M.GOLD, M.VACUUM, core)
    return coated, solid, bare


def thin_film_stack(delta=1.0):
    """A free-standing gold film of thickness ``delta`` facing a gold half space."""
    return P.LayerStack.coated(M.GOLD, M.VACUUM, M.GOLD, M.VACUUM, delta)


def _materials():
    yield Check("materials", "Drude eps at 9 eV", _rel(M.epsilon_iw(M.GOLD, 9.0), 1 + 81 / (9 * 9.035)) < 1e-14)
    r = M.fresnel_r(1.0, 3.0)
    yield Check("materials", "fresnel (1,3) = 0.5 and antisymmetric", r == 0.5 and M.fresnel_r(3.0, 1.0) == -r)


def _series():
    st = P.LayerStack()
    ser = P.characteristic_series(M.GOLD, M.VACUUM, M.GOLD, tol=1e-9)
    for w in (1.0, 10.0, 100.0):
        a = P.energy_per_area(st, w, 1e-9)
        b = P.energy_series(w, ser)
        err = _rel(a, b)
        yield Check("series", f"quadrature vs series at w={w:g} nm", err < 1e-6, f"rel={err:.2e}")


def _omega():
    wp = 9.0
    d = M.Drude(wp, 0.0)
    for l, ref in ((1, math.pi * wp / (2 * math.sqrt(2))), (2, 20 * math.pi * wp / (64 * math.sqrt(2)))):
        err = _rel(P.characteristic_integral(l, d, M.VACUUM, d), ref)
        yield Check("omega", f"lossless Drude <omega_{l}>", err < 1e-8, f"rel={err:.2e}")


def _corr():
    worst = 0.0
    for i in range(50):
        x = 10 ** (-3 + 4 * i / 49)
        worst = max(worst, _rel(S.corr_factor(2.0, x), 1 / (1 + x)))
    yield Check("corr", "corr_factor(2, x) = 1/(1+x)", worst <= 2.3e-16, f"max rel={worst:.1e}")
    err = abs(S.corr_factor(1.0, 1.0) - (1 - math.log(2)))
    yield Check("corr", "corr_factor(1, 1) = 1 - ln 2", err < 1e-15, f"abs={err:.1e}")


def _expansions():
    geoms = [g for g in reference_geometries() if not isinstance(g, (S.ConeSphericalTip, S.WingsThin))]
    geoms += [S.CubeTilted(1.0, math.pi / 4), S.WingsThick(1.0, math.radians(5))]
    for g in geoms:
        ok, detail = _expansion(g, 1e-3)
        # for thick wings the ratio is exactly 1/(1 + x/sin(alpha))**2, which
        # leaves the 1% window at x = 1e-3 once alpha drops below ~5.7 degrees
        known = isinstance(g, S.WingsThick) and 1e-3 / math.sin(g.alpha) > 0.005
        yield Check("table1", f"{g.kind} {_angle(g)}lowest-order term at x=1e-3", ok, detail, known)
        if known:
            ok, detail = _expansion(g, 1e-5)
            yield Check("table1", f"{g.kind} {_angle(g)}lowest-order term at x=1e-5", ok, detail)


def _expansion(g, x):
    eps = S.epsilon_leading(g, x)
    c = S.correction(g, x)
    if eps == 0:
        return c == 1.0, f"corr={c!r}"
    ratio = (c - 1.0) / eps
    return 0.99 <= ratio <= 1.01, f"ratio={ratio:.5f}"


def _angle(g):
    a = getattr(g, "alpha", None)
    return "" if a is None else f"alpha={math.degrees(a):.1f}deg "


def _oracle():
    ep = PowerLaw(1.0)
    for g in reference_geometries():
        prof = O.profile_from_geometry(g)
        worst, worst_paths = 0.0, 0.0
        for x in (0.01, 0.1, 1.0):
            z = x * g.scale
            tr, fd = O.force_paths(prof, z, ep)
            worst = max(worst, _rel(S.full_force(g, z, ep), tr))
            worst_paths = max(worst_paths, _rel(fd, tr))
        yield Check("oracle", f"{g.kind} closed form vs quadrature", worst < 1e-6, f"rel={worst:.1e}")
        yield Check("oracle", f"{g.kind} derivative paths", worst_paths < 10 * 1e-9, f"rel={worst_paths:.1e}")


def _doubled(g):
    kw = {}
    for f in fields(g):
        v = getattr(g, f.name)
        kw[f.name] = 2.0 * v if f.name in ("R", "L", "A", "B", "delta") else v
    return type(g)(**kw)


def _scaling():
    ep = PowerLaw(0.035)
    for g in reference_geometries():
        g2 = _doubled(g)
        worst = max(_rel(S.scaled_force(g2, x, ep), S.scaled_force(g, x, ep)) for x in (0.01, 0.1, 1.0, 10.0))
        yield Check("scaling", f"{g.kind} universal curve", worst < 1e-12, f"rel={worst:.1e}")


def _coating():
    w = 10.0
    for ratio, which in ((100.0, "solid"), (1e-4, "substrate-only")):
        coated, solid, bare = coating_stacks(ratio * w)
        ref = solid if which == "solid" else bare
        err = _rel(P.energy_per_area(coated, w), P.energy_per_area(ref, w))
        yield Check("coating", f"delta/w={ratio:g} -> {which}", err < 1e-4, f"rel={err:.1e}")


def _exponent():
    ep = StackEnergy(thin_film_stack(1.0))
    best = None
    for i in range(13):
        w = 3.0 * 100 ** (i / 12)
        zeta = P.local_exponent(ep, w)
        if best is None or abs(zeta - 2.5) < abs(best[1] - 2.5):
            best = (w, zeta)
    yield Check("exponent", "thin film reaches zeta = 2.5", abs(best[1] - 2.5) <= 0.1, f"zeta={best[1]:.3f} at w/delta={best[0]:.3g}")


def _cone():
    ep = PowerLaw(1.0)
    alpha = math.pi / 6
    ok_below, ok_order = True, True
    for i in range(25):
        x = 10 ** (-2 + 4 * i / 24)
        inf = S.cone_tip_infinite_limit(1.0, alpha, x, ep)
        gaps = [abs(inf) - abs(S.force_cone_spherical_tip(lr, 1.0, alpha, x, ep)) for lr in (2.0, 8.0, 32.0)]
        ok_below &= all(gp > 0 for gp in gaps)
        ok_order &= gaps[0] > gaps[1] > gaps[2]
    yield Check("cone", "finite cone stays below the infinite-cone limit", ok_below)
    yield Check("cone", "gap shrinks as L/R grows", ok_order)


def _wings():
    ep = PowerLaw(1.0)
    err = max(
        _rel(S.full_force(S.WingsThick(1.0, a), x, ep), 2 * S.full_force(S.CubeStraight(1.0), x, ep))
        for a in (0.0, 1e-12)
        for x in (0.01, 0.1, 1.0)
    )
    yield Check("wings", "alpha -> 0 equals two straight cubes", err < 1e-8, f"rel={err:.1e}")
    for deg in (5.0, 25.0):
        a = math.radians(deg)
        g = S.WingsThick(1.0, a)
        small = S.full_force(g, 1e-3, ep) / (2 / math.tan(a) * ep(1e-3))
        large = S.full_force(g, 100.0, ep) / (4 * math.cos(a) * ep(100.0) / 100.0)
        yield Check("wings", f"alpha={deg:g}deg small-x asymptote", abs(small - 1) < 0.01, f"ratio={small:.5f}")
        yield Check("wings", f"alpha={deg:g}deg large-x asymptote", abs(large - 1) < 0.01, f"ratio={large:.5f}")


def _coated_sphere():
    # a coated object is handled by exact integration, not by the w^-2 correction
    coated, _, _ = coating_stacks(5.0)
    ep = SampledEnergy(StackEnergy(coated), 0.5, 400.0, points=64)
    g = S.SphereSubstrate(50.0)
    prof = O.profile_from_geometry(g)
    for z in (1.0, 10.0):
        err = _rel(S.full_force(g, z, ep), O.force(prof, z, ep))
        yield Check("coated", f"coated sphere at z={z:g} nm", err < 1e-6, f"rel={err:.1e}")


GROUPS = {
    "materials": _materials,
    "omega": _omega,
    "series": _series,
    "corr": _corr,
    "table1": _expansions,
    "oracle": _oracle,
    "scaling": _scaling,
    "coating": _coating,
    "exponent": _exponent,
    "cone": _cone,
    "wings": _wings,
    "coated": _coated_sphere,
}


def check_table(path) -> Check:
    """Load a material table and report whether it satisfies the invariants."""
    try:
        m = M.load_material_table(path)
    except (ValueError, OSError) as exc:
        return Check("tables", str(path), False, str(exc))
    return Check("tables", str(path), True, f"{len(m.xi)} samples")


def run_checks(only=None, tables=()) -> list[Check]:
    names = list(GROUPS) if not only else list(only)
    out = [check_table(t) for t in tables]
    for name in names:
        if name not in GROUPS:
            raise KeyError(name)
        out.extend(GROUPS[name]())
    return out
