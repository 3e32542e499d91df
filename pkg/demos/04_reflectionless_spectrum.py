"""The same levels from a Hermitian problem: where -x^4 stops reflecting.

A wave sent in from the right over the upside-down quartic is almost
entirely transmitted; |r| is small everywhere but vanishes exactly at
isolated energies. Those energies coincide with the shooting eigenvalues.
"""

import numpy as np

from ptspectra import ProblemSpec, compute_spectrum_reflectionless, compute_spectrum_shooting
from ptspectra import reflection_amplitude

spec = ProblemSpec(1)

print("   E       |r|          flux error")
for E in np.linspace(0.8, 7.0, 14):
    res = reflection_amplitude(spec, E, 10.0)
    print(f"{E:6.3f}  {abs(res.r):.3e}   {res.flux_error:.1e}")

shoot = compute_spectrum_shooting(spec, 3)
refl = compute_spectrum_reflectionless(spec, 3)
print("\n n  shooting          reflectionless    rel diff   min |r|")
for a, b in zip(shoot, refl):
    print(f"{a.n:2d}  {a.energy:.12f}  {b.energy:.12f}  {abs(a.energy - b.energy) / a.energy:.1e}"
          f"   {b.residual:.1e}")
