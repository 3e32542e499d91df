"""Where do the eigenfunctions of H = p^2 + x^(2K) (ix)^eps live?

For eps = 0 the boundary conditions sit on the real axis. As eps grows the
two Stokes wedges rotate down into the lower half plane and narrow. At
eps = 2 their upper edges touch the real axis, which is what lets the
real-axis scattering problem see the same spectrum.
"""

import cmath
import math

from ptspectra import ProblemSpec, asymptotic_wave, classify_roles, turning_points, wedge_geometry


def deg(rad):
    return f"{math.degrees(rad):8.2f} deg"


print("K = 1, rotating eps from 0 to 3")
for eps in (0.0, 0.5, 1.0, 2.0, 3.0):
    g = wedge_geometry(ProblemSpec(1, eps))
    print(f"  eps={eps:3.1f}  right centre {deg(g.theta_right)}  opening {deg(g.opening_angle)}"
          f"  upper edge {deg(g.right_upper_edge)}")

# eps = 2: the upper edges are exactly 0 and -pi
g = wedge_geometry(ProblemSpec(1, 2.0))
print("\neps = 2 upper edges:", g.right_upper_edge, g.left_upper_edge)
print("as multiples of pi:", g.pi_multiples["right_upper_edge"], g.pi_multiples["left_upper_edge"])

# which exponential decays where
for K in (1, 2):
    print(f"\nroles for K = {K}")
    for role in classify_roles(ProblemSpec(K)):
        print(f"  psi_{role.branch:5s} in {role.wedge:5s} wedge: {role.behavior:6s}, travels {role.travel}")

# check the table numerically on the wedge centre at |x| = 4
spec = ProblemSpec(2)
x = 4.0 * cmath.exp(1j * wedge_geometry(spec).theta_left)
print("\nK = 2 left centre, |psi_plus| =", abs(asymptotic_wave(spec, "plus", x)),
      " |psi_minus| =", abs(asymptotic_wave(spec, "minus", x)))

tp = turning_points(ProblemSpec(1), 1.0)
print("\nturning points at E = 1, K = 1:", tp.x_left, tp.x_right)
