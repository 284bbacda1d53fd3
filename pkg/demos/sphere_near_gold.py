"""A gold sphere above a gold plate, from the planar kernel to a universal curve.

Run with ``python demos/sphere_near_gold.py``.

1. The planar energy per area of gold|vacuum|gold falls off exactly as
   ``1/w**2`` in the non-retarded limit, so a single number fixes it.
2. The leading PFA force ``2 pi R E_p(z)`` overestimates the attraction once
   the gap is not small compared to ``R``; the full-geometry factor
   ``1/(1 + z/R)`` repairs this.
3. ``R * F`` against ``z / R`` is the same curve for every sphere size.
"""

from casimir_pfa import oracle, planar, shapes
from casimir_pfa.providers import provider_for_stack

stack = planar.LayerStack()  # gold | vacuum | gold, Drude stand-in for gold
ep = provider_for_stack(stack)
print(f"E_p(w) = -{ep.C:.6f} / w^2  eV/nm^2  (w in nm)")

left, right = stack.outer_models()
series = planar.characteristic_series(left, stack.eps3, right)
print(f"series check at 10 nm: {planar.energy_series(10.0, series):.6e} vs {ep(10.0):.6e}")

print("\n  x=z/R    R*F leading    R*F full     full/leading")
for R in (20.0, 200.0):
    sphere = shapes.SphereSubstrate(R)
    for x in (0.01, 0.1, 1.0):
        z = x * R
        lead = R * shapes.pfa_force(sphere, z, ep)
        full = R * shapes.full_force(sphere, z, ep)
        print(f"  {x:5.2f}  {lead:12.6f}  {full:12.6f}  {full / lead:8.4f}   (R = {R:g} nm)")

# the oracle knows only the cap's shape, not the closed form
sphere = shapes.SphereSubstrate(50.0)
prof = oracle.profile_from_geometry(sphere)
z = 5.0
print(f"\nclosed form {shapes.full_force(sphere, z, ep):.10f} eV/nm")
print(f"quadrature  {oracle.force(prof, z, ep):.10f} eV/nm")
