"""Acceptance criteria, one test per criterion.

Each criterion is a list of sub-checks ``(name, passed, detail, known)``.
``known`` marks a sub-check that cannot pass for mathematical reasons; it
is excluded from the criterion's test and asserted separately under a
strict xfail, so the miss stays visible. A one-line verdict per criterion
is printed at the end of the pytest run (see ``conftest.py``) and when this
file is executed as a script.
"""

import math

import pytest

from casimir_pfa import materials as M
from casimir_pfa import oracle as O
from casimir_pfa import planar as P
from casimir_pfa import shapes as S
from casimir_pfa.providers import PowerLaw, StackEnergy
from casimir_pfa.validation import coating_stacks, reference_geometries, thin_film_stack

EP = PowerLaw(1.0)
RESULTS: dict[int, list] = {}

TITLES = {
    1: "series vs quadrature, gold|vacuum|gold, w in {1,10,100} nm, rel < 1e-6",
    2: "lossless-Drude <omega_1>, <omega_2> closed forms, rel < 1e-8",
    3: "corr_factor(2, x) = 1/(1+x) to machine precision, 50 log-spaced x",
    4: "lowest-order expansions, ratio in [0.99, 1.01] at x = 1e-3",
    5: "closed-form force vs oracle quadrature, all variants, rel < 1e-6",
    6: "universal curves for size s and 2s agree, rel < 1e-12",
    7: "coating limits at delta/w in {100, 1e-4}, rel < 1e-4",
    8: "thin-film local exponent reaches 2.5 +- 0.1 for w/delta in [3, 300]",
    9: "cone with tip below infinite cone, gap shrinking over L/R in {2, 8, 32}",
    10: "wings: flat limit (1e-8), small-x and large-x asymptotes (1%)",
    11: "transformed vs differenced oracle force within 10x tolerance",
}


def rel(a, b):
    return abs(a - b) / abs(b) if b else abs(a)


def _doubled(g):
    import dataclasses

    sized = {f.name: 2.0 * getattr(g, f.name) for f in dataclasses.fields(g) if f.name in ("R", "L", "A", "B", "delta")}
    return dataclasses.replace(g, **sized)


def _label(g):
    a = getattr(g, "alpha", None)
    return g.kind if a is None else f"{g.kind}(alpha={math.degrees(a):.4g}deg)"


# -- criteria ------------------------------------------------------------------------


def criterion_1():
    stack = P.LayerStack.three_region(M.GOLD, M.VACUUM, M.GOLD)
    ser = P.characteristic_series(M.GOLD, M.VACUUM, M.GOLD, tol=1e-9)
    out = []
    for w in (1.0, 10.0, 100.0):
        e = rel(P.energy_per_area(stack, w, 1e-9), P.energy_series(w, ser))
        out.append((f"w={w:g}", e < 1e-6, f"rel={e:.1e}", False))
    return out


def criterion_2():
    wp = 9.0
    d = M.Drude(wp, 0.0)
    refs = {1: math.pi * wp / (2 * math.sqrt(2)), 2: 20 * math.pi * wp / (64 * math.sqrt(2))}
    out = []
    for l, ref in refs.items():
        e = rel(P.characteristic_integral(l, d, M.VACUUM, d), ref)
        out.append((f"l={l}", e < 1e-8, f"rel={e:.1e}", False))
    return out


def criterion_3():
    worst = 0.0
    for i in range(50):
        x = 10 ** (-3 + 4 * i / 49)
        worst = max(worst, rel(S.corr_factor(2.0, x), 1.0 / (1.0 + x)))
    return [("50 points", worst <= 2.3e-16, f"max rel={worst:.1e}", False)]


def _c4_geometries():
    return [
        S.SphereSubstrate(1.0),
        S.SphereSphere(1.0),
        S.OblateSubstrate(1.0, 2.0),
        S.ProlateSubstrate(1.0, 2.0),
        S.OblateOblate(1.0, 2.0),
        S.ProlateProlate(1.0, 2.0),
        S.CylinderSubstrate(1.0, 1.0),
        S.CylinderCylinder(1.0, 1.0),
        S.StandingCylinder(1.0, 1.0),
        S.CubeStraight(1.0),
        S.CubeTilted(1.0, math.pi / 9),
        S.CubeTilted(1.0, math.pi / 4),
        S.ConePointed(1.0, math.pi / 6),
        S.WingsThick(1.0, math.radians(5)),
        S.WingsThick(1.0, math.radians(25)),
    ]


def criterion_4(x=1e-3):
    out = []
    for g in _c4_geometries():
        c, eps = S.correction(g, x), S.epsilon_leading(g, x)
        if eps == 0.0:
            out.append((_label(g), c == 1.0, f"corr={c!r}", False))
            continue
        ratio = (c - 1.0) / eps
        # thick wings: the ratio is exactly 1/(1 + x/sin(alpha))^2
        known = isinstance(g, S.WingsThick) and (1 + x / math.sin(g.alpha)) ** -2 < 0.99
        out.append((_label(g), 0.99 <= ratio <= 1.01, f"ratio={ratio:.5f}", known))
    return out


def criterion_5():
    out = []
    for g in reference_geometries():
        prof = O.profile_from_geometry(g)
        worst = max(rel(S.full_force(g, x * g.scale, EP), O.force(prof, x * g.scale, EP)) for x in (0.01, 0.1, 1.0))
        out.append((g.kind, worst < 1e-6, f"rel={worst:.1e}", False))
    return out


def criterion_6():
    out = []
    for g in reference_geometries():
        g2 = _doubled(g)
        worst = max(rel(S.scaled_force(g2, x, EP), S.scaled_force(g, x, EP)) for x in (1e-3, 0.01, 0.1, 1.0, 10.0))
        out.append((g.kind, worst < 1e-12, f"rel={worst:.1e}", False))
    return out


def criterion_7():
    w = 10.0
    out = []
    for ratio in (100.0, 1e-4):
        coated, solid, bare = coating_stacks(ratio * w)
        ref = solid if ratio > 1 else bare
        e = rel(P.energy_per_area(coated, w), P.energy_per_area(ref, w))
        out.append((f"delta/w={ratio:g}", e < 1e-4, f"rel={e:.1e}", False))
    return out


def criterion_8():
    delta = 1.0
    ep = StackEnergy(thin_film_stack(delta))
    samples = [(3.0 * 100 ** (i / 12) * delta, None) for i in range(13)]
    samples = [(w, P.local_exponent(ep, w)) for w, _ in samples]
    w_best, z_best = min(samples, key=lambda s: abs(s[1] - 2.5))
    return [("closest zeta", abs(z_best - 2.5) <= 0.1, f"zeta={z_best:.4f} at w/delta={w_best / delta:.3g}", False)]


def criterion_9():
    a = math.pi / 6
    below, shrinking = True, True
    for i in range(25):
        x = 10 ** (-2 + 4 * i / 24)
        inf = abs(S.cone_tip_infinite_limit(1.0, a, x, EP))
        gaps = [inf - abs(S.force_cone_spherical_tip(lr, 1.0, a, x, EP)) for lr in (2.0, 8.0, 32.0)]
        below &= all(gp > 0 for gp in gaps)
        shrinking &= gaps[0] > gaps[1] > gaps[2]
    return [("below limit", below, "25 x in [1e-2, 1e2]", False), ("gap decreasing", shrinking, "", False)]


def criterion_10():
    out = []
    flat = max(
        rel(S.full_force(S.WingsThick(1.0, a), x, EP), 2 * S.full_force(S.CubeStraight(1.0), x, EP))
        for a in (0.0, 1e-12)
        for x in (0.01, 0.1, 1.0)
    )
    out.append(("alpha->0", flat < 1e-8, f"rel={flat:.1e}", False))
    for deg in (5.0, 25.0):
        a = math.radians(deg)
        g = S.WingsThick(1.0, a)
        small = S.full_force(g, 1e-3, EP) / (2 / math.tan(a) * EP(1e-3))
        large = S.full_force(g, 100.0, EP) / (4 * math.cos(a) * EP(100.0) / 100.0)
        out.append((f"{deg:g}deg small x", abs(small - 1) < 0.01, f"ratio={small:.5f}", False))
        out.append((f"{deg:g}deg large x", abs(large - 1) < 0.01, f"ratio={large:.5f}", False))
    return out


def criterion_11(tol=1e-9):
    out = []
    for g in reference_geometries():
        prof = O.profile_from_geometry(g)
        worst = 0.0
        for x in (0.01, 0.1, 1.0):
            tr, fd = O.force_paths(prof, x * g.scale, EP, tol)
            worst = max(worst, rel(fd, tr))
        out.append((g.kind, worst <= 10 * tol, f"rel={worst:.1e}", False))
    return out


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}


def evaluate(n):
    RESULTS[n] = CRITERIA[n]()
    return RESULTS[n]


def verdict_line(n, checks):
    failed = [c for c in checks if not c[1]]
    status = "PASS" if not failed else "FAIL"
    line = f"{status} criterion {n:2d}: {TITLES[n]}"
    if failed:
        line += "  [" + "; ".join(f"{c[0]} {c[2]}{' (documented)' if c[3] else ''}" for c in failed) + "]"
    return line


def _assert_criterion(n):
    checks = evaluate(n)
    bad = [c for c in checks if not c[1] and not c[3]]
    assert not bad, verdict_line(n, checks)


# -- pytest ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    _assert_criterion(n)


@pytest.mark.xfail(
    strict=True,
    reason="(corr - 1)/eps = 1/(1 + x/sin(alpha))^2 is 0.9774 for alpha = 5 deg at x = 1e-3",
)
def test_criterion_4_thick_wings_5deg_at_1e_3():
    g = S.WingsThick(1.0, math.radians(5))
    ratio = (S.correction(g, 1e-3) - 1.0) / S.epsilon_leading(g, 1e-3)
    assert 0.99 <= ratio <= 1.01


def test_criterion_4_thick_wings_5deg_converges_at_smaller_x():
    g = S.WingsThick(1.0, math.radians(5))
    ratio = (S.correction(g, 1e-5) - 1.0) / S.epsilon_leading(g, 1e-5)
    assert 0.99 <= ratio <= 1.01


if __name__ == "__main__":
    import sys

    bad = 0
    for n in sorted(CRITERIA):
        checks = evaluate(n)
        print(verdict_line(n, checks))
        bad += any(not c[1] for c in checks)
    sys.exit(1 if bad else 0)
