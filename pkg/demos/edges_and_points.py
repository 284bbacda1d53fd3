"""Forces on objects with edges and points, and how they scale.

Run with ``python demos/edges_and_points.py``.

A flat face feels ``F ~ z**-3``. Bend two plates into wings and, close to
the substrate, only the edge matters: ``F ~ z**-2`` with a prefactor set by
the edge length. A cone with a rounded tip behaves like a sphere at contact
and like a pointed cone far away.
"""

import math

from casimir_pfa import shapes
from casimir_pfa.providers import PowerLaw

ep = PowerLaw(0.035)  # gold-like w^-2 planar energy, eV/nm^2


def slope(geom, z):
    f1, f2 = shapes.full_force(geom, z, ep), shapes.full_force(geom, 1.1 * z, ep)
    return math.log(f2 / f1) / math.log(1.1)


print("log-slope of F(z) for wings of side 100 nm")
print("  alpha     z = 0.1 nm   z = 10 nm   z = 1000 nm")
for deg in (0, 5, 15, 25):
    w = shapes.WingsThick(100.0, math.radians(deg))
    print(f"  {deg:3d} deg   {slope(w, 0.1):8.3f}   {slope(w, 10.0):8.3f}   {slope(w, 1000.0):9.3f}")

print("\ncone (alpha = 30 deg) with a 10 nm tip: R*F against the infinite cone")
print("     x      L/R=2        L/R=32       infinite")
R, a = 10.0, math.radians(30)
for x in (0.01, 0.1, 1.0, 10.0):
    z = x * R
    row = [R * shapes.force_cone_spherical_tip(lr * R, R, a, z, ep) for lr in (2, 32)]
    inf = R * shapes.cone_tip_infinite_limit(R, a, z, ep)
    print(f"  {x:6.2f}  {row[0]:11.5f}  {row[1]:11.5f}  {inf:11.5f}")

print("\ntilting a 50 nm cube by a small angle changes the force abruptly")
z = 1.0
flat = shapes.full_force(shapes.CubeStraight(50.0), z, ep)
for deg in (0.1, 1.0, 10.0, 45.0):
    tilted = shapes.full_force(shapes.CubeTilted(50.0, math.radians(deg)), z, ep)
    print(f"  {deg:5.1f} deg: F_tilted / F_flat = {tilted / flat:.4f}")
