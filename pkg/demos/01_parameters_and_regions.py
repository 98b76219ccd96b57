"""Parameter algebra of the weighted inequality and the (alpha, beta) plane.

A point (N, alpha, beta) determines everything else: the third weight
gamma, the critical exponent p, the effective dimension M, and the
Felli-Schneider threshold beta_fs below which radial extremals become
unstable.  This script derives a few points and sketches the region map.
"""

import numpy as np

import ckn

P = ckn.derive(5, 1.0, -2.0)
print("derived scalars at (N, alpha, beta) = (5, 1, -2):")
for name in ("gamma", "p", "kappa1", "kappa2", "K2", "K0", "m_exp", "nu",
             "q_pow", "M_dim", "a_shift", "C_amp", "beta_fs"):
    print(f"  {name:8s} = {getattr(P, name):.12g}")
print(f"  region   = {P.region.value}")

print("\nFelli-Schneider threshold beta_fs(alpha) at N = 5:")
for alpha in (0.0, 0.5, 1.0, 2.0, 3.0):
    lo = ckn.beta_lower(5, alpha)
    print(f"  alpha = {alpha:4.1f}: beta in [{lo:+.4f}, {alpha - 2:+.4f}], "
          f"beta_fs = {ckn.felli_schneider(5, alpha):+.6f}")

print("\nregion map slice at N = 5 (rows: beta, columns: alpha):")
alphas = np.linspace(-2.0, 3.0, 11)
betas = np.linspace(-5.5, 0.5, 13)
glyph = {"SymmetryBreaking": "x", "ConjecturedSymmetry": ".",
         "FSCurve": "F", "RellichBoundary": "r", "Invalid": " ",
         "CriticalUpperAlphaPos": "c", "CriticalUpperAlphaNeg": "c",
         "CriticalUpperAlphaZero": "c"}
print("        " + "".join(f"{a:6.1f}" for a in alphas))
for b in betas[::-1]:
    row = "".join(f"     {glyph[ckn.region_of(5, float(a), float(b)).value]}"
                  for a in alphas)
    print(f"  {b:+5.2f}" + row)
print("  x = symmetry breaking, . = conjectured symmetry, c = critical "
      "boundary, r = p = 2 boundary")
