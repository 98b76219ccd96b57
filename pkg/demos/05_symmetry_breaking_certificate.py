"""Numerical certificate that radial symmetry breaks below the curve.

Two independent routes to the same verdict at each (alpha, beta):

1. the closed-form second variation of the energy at U along the mode-1
   direction Z1 (sign of chi - (M-1) with chi = q^2 (N-1)), and
2. the full nonlinear quotient of U + t Z1 Psi_1, evaluated by quadrature,
   which dips strictly below the radial constant S_r for small t when the
   second variation is negative.

A drop certifies that no radial profile can be a global minimizer there.
"""

import numpy as np

import ckn
from ckn import spectral, variational

grid = ckn.make_grid()
bfs = ckn.felli_schneider(5, 1.0)
print(f"Felli-Schneider threshold at (N, alpha) = (5, 1): beta_fs = {bfs:.6f}\n")

for beta in (-3.2, -3.0, -2.8, bfs, -2.4, -2.0):
    P = ckn.derive(5, 1.0, beta)
    sv = spectral.second_variation_z1(P)
    s_r = ckn.radial_constant_sr(P)
    z1 = ckn.sample(grid, lambda r: ckn.linearized_mode(P, 1, r))
    q = variational.perturbed_quotient(P, 0.05, ckn.make_mode(P, 1), z1)
    verdict = "breaks" if q < s_r else "holds "
    print(f"beta = {beta:+.6f}: second variation = {sv:+.3e},  "
          f"quotient(t=0.05)/S_r - 1 = {(q - s_r) / s_r:+.2e}  -> symmetry {verdict}")

print("\nminimizing the radial quotient from a generic seed recovers S_r:")
for N, a, b in ((5, 1.0, -2.0), (5, 1.0, -3.0), (6, 0.5, -2.5)):
    P = ckn.derive(N, a, b)
    init = ckn.RadialProfile(grid=grid,
                             values=np.exp(-grid.ts ** 2 - P.kappa1 * grid.ts))
    value, _ = variational.minimize_radial(P, init)
    s_r = ckn.radial_constant_sr(P)
    print(f"  ({N}, {a}, {b}): minimized {value:.8f}  closed form {s_r:.8f}  "
          f"rel {abs(value - s_r) / s_r:.1e}")

print("\nin the breaking region the radial minimum is only a saddle of the "
      "full problem; the perturbed quotient exhibits the descent direction.")
