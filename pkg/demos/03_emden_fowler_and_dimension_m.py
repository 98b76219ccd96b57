"""The two changes of variables that trivialize the radial problem.

Emden-Fowler: u = r^{-kappa1} phi(-ln r) turns the weighted fourth-order
radial equation into a constant-coefficient ODE on the line whose solution
is an explicit power of cosh.  The effective-dimension map v(s) = r^a u(r),
r = s^q sends the weighted energy onto the plain radial biharmonic energy
in (generally non-integer) dimension M.
"""

import numpy as np

import ckn
from ckn import transforms
from ckn.closedform import ExtremalSpec, extremal_u, omega_sphere

P = ckn.derive(5, 1.0, -2.0)
grid = ckn.make_grid()

c, nu, m = transforms.cosh_constants(P)
print(f"cosh profile constants: C = {c:.8f}, nu = {nu}, m = {m}")
r1, r2, r3 = transforms.cosh_ansatz_check(P)
print(f"algebraic relations of the ansatz: {r1:.1e}, {r2:.1e}, {r3:.1e}")

lo, hi, n = transforms.ODE_CHECK_GRID
ef = transforms.cosh_profile(P, ckn.make_grid(lo, hi, n))
print(f"fourth-order ODE residual of the exact profile: "
      f"{transforms.ode_residual(ef):.2e}")

u = ckn.sample(grid, lambda r: extremal_u(ExtremalSpec(P), r))
ef_u = transforms.to_emden_fowler(u, P)
exact = transforms.cosh_profile(P, ef_u.grid)
print(f"max |transform(U) - cosh profile| / max = "
      f"{np.abs(ef_u.phi - exact.phi).max() / np.abs(exact.phi).max():.2e}")

v = transforms.to_dimension_m(u, P)
print(f"\neffective dimension M = {P.M_dim}")
print(f"transformed extremal matches C (1+s^2)^-(M-4)/2: max rel err "
      f"{np.abs(v.values / (P.C_amp * (1 + v.grid.nodes ** 2) ** (-(P.M_dim - 4) / 2)) - 1).max():.2e}")

ray = transforms.rayleigh_m(v, P.M_dim)
print(f"Rayleigh quotient in dimension M: {ray:.8f} vs B(M) = "
      f"{ckn.b_of_m(P.M_dim):.8f}")

chain = ((-P.q_pow) ** (4.0 / P.M_dim - 4.0)
         * omega_sphere(P.N) ** (1.0 - 2.0 / P.p) * ray)
print(f"chained back through the prefactors: {chain:.8f} vs "
      f"S_r = {ckn.radial_constant_sr(P):.8f}")

print("\nB(M) along non-integer dimensions:")
for M in (6.0, 7.5, 10.0, 13.5):
    vq = ckn.sample(grid, lambda s: (1.0 + s ** 2) ** (-(M - 4.0) / 2.0))
    print(f"  M = {M:5.1f}: quadrature {transforms.rayleigh_m(vq, M):14.8f}  "
          f"closed form {ckn.b_of_m(M):14.8f}")
