"""WKB quantisation between complex turning points.

The action of sqrt(E + x^(2K+2)) between the two lower-half-plane turning
points is real and grows like E^((K+2)/(2K+2)). Setting it to (n + 1/2) pi
gives closed-form levels, and solving the same condition by quadrature and
root finding reproduces them.
"""

import math

from ptspectra import ProblemSpec, action_integral, wkb_energy_closed_form, wkb_energy_quadrature
from ptspectra.wkb import action_closed_form

for K in (1, 2, 3, 4):
    spec = ProblemSpec(K)
    numeric = action_integral(spec, 1.0)
    exact = action_closed_form(spec)
    print(f"K={K}: I(1) quadrature {numeric:.15f}  Gamma formula {exact:.15f}")

spec = ProblemSpec(1)
print("\nhomogeneity, K = 1: I(16)/I(1) =", action_integral(spec, 16.0) / action_integral(spec, 1.0))

print("\n n   closed form        quadrature         action/(n+1/2)pi")
for n in (0, 1, 2, 5, 10):
    closed = wkb_energy_closed_form(spec, n).energy
    quad = wkb_energy_quadrature(spec, n).energy
    ratio = action_integral(spec, closed) / ((n + 0.5) * math.pi)
    print(f"{n:2d}  {closed:.12f}  {quad:.12f}  {ratio:.15f}")
