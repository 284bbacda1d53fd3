"""A 1 nm gold film facing a gold half space: when a power law is not a power law.

Run with ``python demos/thin_film_exponent.py`` (about ten seconds).

Far from the film its electrons behave like a two-dimensional sheet and the
energy per area drops as ``w**-2.5`` instead of ``w**-2``. The local exponent
shows the crossover. Since no single power law holds, the sphere force is
obtained by integrating the sampled energy over the cap rather than by
multiplying with ``1/(1 + x)``; the oracle confirms the result.
"""

from casimir_pfa import oracle, planar, shapes
from casimir_pfa.materials import GOLD, VACUUM
from casimir_pfa.providers import SampledEnergy, StackEnergy

delta = 1.0
film = planar.LayerStack.coated(GOLD, VACUUM, GOLD, VACUUM, delta)
exact = StackEnergy(film)

print("   w/delta     E_p [eV/nm^2]     zeta")
for w in (0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0):
    print(f"  {w / delta:8.1f}   {exact(w):14.6e}   {planar.local_exponent(exact, w):6.3f}")

# the 2D-sheet law with the electron density of gold
sheet = shapes.SheetParams.from_density(59.0, delta)
print(f"\nsheet scale from n = 59 nm^-3: {sheet.sheet_scale:.3f} eV")
print(f"sheet-law energy at 300 nm: {shapes.sheet_energy(sheet, 300.0):.6e} eV/nm^2")

R = 100.0
ep = SampledEnergy(exact, 0.5, 4.0 * R, points=64)
sphere = shapes.SphereSubstrate(R)
prof = oracle.profile_from_geometry(sphere)
print(f"\nspline surrogate accuracy ~ {ep.error_estimate:.1e}")
print("   z [nm]   full PFA F [eV/nm]    quadrature       1/(1+x) guess")
for z in (1.0, 10.0, 50.0):
    full = shapes.full_force(sphere, z, ep)
    quad = oracle.force(prof, z, ep)
    naive = shapes.pfa_force(sphere, z, ep) / (1 + z / R)
    print(f"  {z:7.1f}   {full:16.9e}   {quad:16.9e}   {naive:16.9e}")
