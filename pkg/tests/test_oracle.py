import math

import pytest
from hypothesis import given, settings, strategies as st

from casimir_pfa import oracle as O
from casimir_pfa import shapes as S
from casimir_pfa.errors import DomainError, NumericalError, ValidationError
from casimir_pfa.providers import PowerLaw
from casimir_pfa.validation import reference_geometries

EP = PowerLaw(1.0)
GEOMS = reference_geometries()


def _rel(a, b):
    return abs(a - b) / abs(b)


# -- profile transcriptions --------------------------------------------------------


def test_sphere_profile_is_spherical_cap():
    R = 3.0
    p = O.profile_from_geometry(S.SphereSubstrate(R))
    assert isinstance(p, O.Axisymmetric)
    assert p.rho_max == R
    for r in (0.0, 1.0, 2.5, 3.0):
        assert p.offset(r) == pytest.approx(R - math.sqrt(R * R - r * r), rel=1e-14, abs=1e-15)


def test_cube_profile_is_point_area():
    p = O.profile_from_geometry(S.CubeStraight(2.0))
    assert isinstance(p, O.ProjectionDensity)
    assert p.point_area == 4.0 and p.delta == 0.0


def test_wings_profile_is_two_sided_plane():
    a = math.radians(25)
    p = O.profile_from_geometry(S.WingsThick(2.0, a))
    assert isinstance(p, O.Translational) and p.two_sided
    assert p.u_max == pytest.approx(2.0 * math.cos(a), rel=1e-15)
    assert p.offset(0.7) == pytest.approx(0.7 * math.tan(a), rel=1e-15)


@pytest.mark.parametrize("geom", GEOMS, ids=lambda g: g.kind)
def test_profiles_touch_at_zero_offset(geom):
    assert O.profile_from_geometry(geom).min_offset() == pytest.approx(0.0, abs=1e-12)


# -- potential -------------------------------------------------------------------------


def test_flat_potential_is_area_times_energy():
    p = O.ProjectionDensity(lambda t: 0.0, 0.0, point_area=2.5)
    assert O.potential(p, 0.4, EP) == 2.5 * EP(0.4)


@pytest.mark.parametrize("R", [0.5, 4.0])
@pytest.mark.parametrize("z", [0.01, 0.3, 7.0])
def test_sphere_potential_log_form(R, z):
    C = 1.3
    ref = -2 * math.pi * C * (R / z - math.log1p(R / z))
    V = O.potential(O.profile_from_geometry(S.SphereSubstrate(R)), z, PowerLaw(C))
    assert V == pytest.approx(ref, rel=1e-8)


def test_zero_area_profile():
    p = O.ProjectionDensity(lambda t: 0.0, 0.0)
    assert O.potential(p, 1.0, EP) == 0.0
    assert O.force(p, 1.0, EP) == 0.0


@given(st.floats(0.0, 5.0), st.floats(0.05, 3.0))
@settings(max_examples=25, deadline=None)
def test_potential_translation_consistent(c, z):
    base = O.profile_from_geometry(S.SphereSubstrate(1.0))
    shifted = O.Axisymmetric(lambda r: base.offset(r) + c, 1.0)
    plain = O.Axisymmetric(base.offset, 1.0)
    assert O.potential(shifted, z, EP) == pytest.approx(O.potential(plain, z + c, EP), rel=1e-9)


def test_interpenetration_rejected():
    with pytest.raises(ValidationError):
        O.Axisymmetric(lambda r: r - 0.5, 1.0)
    with pytest.raises(ValidationError):
        O.Translational(lambda u: -0.1 * u, 1.0, 1.0)
    with pytest.raises(ValidationError):
        O.ProjectionDensity(lambda t: 1.0, -1.0)


def test_bad_separation():
    p = O.profile_from_geometry(S.SphereSubstrate(1.0))
    with pytest.raises(DomainError):
        O.potential(p, 0.0, EP)
    with pytest.raises(DomainError):
        O.force(p, -1.0, EP)


# -- force -------------------------------------------------------------------------------


def test_flat_force():
    A, C, z = 2.0, 0.7, 0.3
    p = O.ProjectionDensity(lambda t: 0.0, 0.0, point_area=A)
    assert O.force(p, z, PowerLaw(C)) == pytest.approx(-2 * A * C / z**3, rel=1e-12)


@pytest.mark.parametrize("x", [0.01, 0.1, 1.0, 10.0])
def test_sphere_force_closed_form(x):
    R = 2.0
    p = O.profile_from_geometry(S.SphereSubstrate(R))
    z = x * R
    assert O.force(p, z, EP) == pytest.approx(2 * math.pi * R * EP(z) / (1 + x), rel=1e-9)


def test_wings_force_at_reference_angle():
    g = S.WingsThick(1.0, math.radians(25))
    z = 0.1
    assert O.force(O.profile_from_geometry(g), z, EP) == pytest.approx(S.full_force(g, z, EP), rel=1e-6)


@pytest.mark.parametrize("geom", GEOMS, ids=lambda g: g.kind)
def test_oracle_matches_closed_forms(geom):
    prof = O.profile_from_geometry(geom)
    for x in (0.01, 0.1, 1.0):
        z = x * geom.scale
        assert _rel(O.force(prof, z, EP), S.full_force(geom, z, EP)) < 1e-6


@pytest.mark.parametrize("geom", GEOMS, ids=lambda g: g.kind)
def test_differentiation_paths_agree(geom):
    prof = O.profile_from_geometry(geom)
    for x in (0.01, 0.1, 1.0):
        tr, fd = O.force_paths(prof, x * geom.scale, EP, tol=1e-9)
        assert abs(tr - fd) <= 10 * 1e-9 * abs(tr)


@pytest.mark.parametrize("zeta", [1.0, 2.5, 3.0])
@pytest.mark.parametrize("geom", [S.SphereSubstrate(1.0), S.ProlateProlate(1.0, 2.0), S.ConePointed(1.0, 0.5)], ids=lambda g: g.kind)
def test_other_exponents_match_closed_forms(geom, zeta):
    ep = PowerLaw(0.5, zeta)
    prof = O.profile_from_geometry(geom)
    for x in (0.05, 0.5):
        z = x * geom.scale
        assert _rel(O.force(prof, z, ep), S.full_force(geom, z, ep)) < 1e-7


@pytest.mark.parametrize("geom", GEOMS, ids=lambda g: g.kind)
def test_oracle_force_attractive_and_weakening(geom):
    prof = O.profile_from_geometry(geom)
    F = [O.force(prof, geom.scale * 10 ** (-2 + 0.5 * i), EP) for i in range(7)]
    assert all(f < 0 for f in F)
    assert all(abs(b) < abs(a) for a, b in zip(F, F[1:]))


class _WrongSlope:
    """A provider whose analytic derivative is off by 1%."""

    def __call__(self, w):
        return -1.0 / w**2

    def derivative(self, w):
        return 2.02 / w**3


def test_inconsistent_derivative_is_caught():
    prof = O.profile_from_geometry(S.SphereSubstrate(1.0))
    with pytest.raises(NumericalError):
        O.force(prof, 0.1, _WrongSlope())


def test_providers_without_derivative_use_differences():
    prof = O.profile_from_geometry(S.SphereSubstrate(1.0))
    bare = lambda w: -1.0 / w**2  # noqa: E731
    assert O.force(prof, 0.1, bare, tol=1e-8) == pytest.approx(O.force(prof, 0.1, EP), rel=1e-8)
