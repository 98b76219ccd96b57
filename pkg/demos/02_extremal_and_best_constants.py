"""The closed-form radial extremal and the best constants it attains.

U(r) = C r^{-(alpha-beta-2)} (1 + r^{alpha-beta-2})^{-(N+beta)/(alpha-beta-2)}
is the unique radial optimizer (up to scaling and sign); its quotient value
is the closed-form radial constant S_r, which collapses to the classical
second-order Sobolev constant S0 on the line alpha = 0, beta = -4.
"""

import numpy as np

import ckn
from ckn.closedform import ExtremalSpec, extremal_u, omega_sphere

P = ckn.derive(5, 1.0, -2.0)
grid = ckn.make_grid()
spec = ExtremalSpec(P)

print("extremal profile samples:")
for r in (0.01, 0.1, 1.0, 10.0, 100.0):
    print(f"  U({r:7.2f}) = {extremal_u(spec, r):.6e}")

u = ckn.sample(grid, lambda r: extremal_u(spec, r))
energy = ckn.radial_energy(u, P)
star_p = omega_sphere(P.N) * ckn.integrate(u.values ** P.p, grid,
                                           P.gamma + P.N - 1.0)
print(f"\nenergy ||U||^2            = {energy:.10e}")
print(f"p-norm ||U||_*^p          = {star_p:.10e}")
print(f"relative defect (both equal on the natural constraint set): "
      f"{abs(energy - star_p) / energy:.2e}")

s_r = ckn.radial_constant_sr(P)
print(f"\nquotient of U             = {energy / star_p ** (2 / P.p):.10f}")
print(f"closed-form S_r           = {s_r:.10f}")

print("\nbest constants across dimensions:")
print("  N    S0(N)            S_r(N,0,-4)      B(N)")
for N in range(5, 9):
    p0 = ckn.derive(N, 0.0, -4.0)
    print(f"  {N}  {ckn.sobolev_s0(N):15.8f}  "
          f"{ckn.radial_constant_sr(p0):15.8f}  {ckn.b_of_m(float(N)):13.8f}")
print("(the first two columns agree: the alpha = 0, beta = -4 case is the "
      "classical inequality in disguise)")

print(f"\nweighted Rellich constant at the p = 2 boundary, alpha = -2: "
      f"{ckn.rellich_constant(5, -2.0)} (= ((N-4)/2)^4)")
print(f"sharp critical constant at (5, -1): {ckn.critical_constant(5, -1.0):.8f} "
      f"< S0 = {ckn.sobolev_s0(5):.8f}")
