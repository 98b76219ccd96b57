"""Per-mode linearized eigenproblems and the closed-form second variation.

For each spherical mode k the linearization of the Euler-Lagrange equation
at the radial extremal U reduces to the generalized eigenproblem

    E_k(f) = nu * D(f),
    E_k(f) = int [f'' + (N-1+alpha)/r f' - lambda_k/r^2 f]^2 r^{N+2alpha-beta-1} dr,
    D(f)   = int U^{p-2} f^2 r^{gamma+N-1} dr.

Mode 0 has nu_1 = 1 (eigenprofile U) and nu_2 = p - 1 (the scaling
direction); the mode-1 bottom eigenvalue crosses p - 1 exactly on the
Felli-Schneider curve, which is the spectral face of the symmetry-breaking
threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import _forms, numerics
from .errors import NoConvergence, RellichBoundary, WrongRegion
from .numerics import LogGrid, RadialProfile
from .params import CknParams, RegionClass
from .variational import ModeSpec, make_mode

__all__ = ["SpectralResult", "mode_eigenvalue", "second_variation_z1",
           "second_variation_bracket", "second_variation_sign",
           "linearized_residual", "gamma_comparison", "spectral_gap"]

MAX_EIG_ITERS = 500
RESIDUAL_MARGIN = 8
EIG_TOL = 1e-13
SHIFT_INDEX1 = 0.9


@dataclass(frozen=True)
class SpectralResult:
    """Converged eigenpair: profile normalized to unit weighted mass
    (int U^{p-2} f^2 r^{gamma+N-1} dr = 1) and positive at the first
    interior node; residual is the normwise backward error of the
    weak-form eigenpair, far below 1e-8 |nu| at convergence."""

    eigenvalue: float
    profile: RadialProfile
    residual: float
    iters: int


def _inverse_iteration(E: sp.csc_matrix, d: np.ndarray, sigma: float,
                       deflate: np.ndarray | None = None,
                       max_iters: int = MAX_EIG_ITERS,
                       tol: float = EIG_TOL) -> tuple[float, np.ndarray, float, int]:
    """Shifted inverse iteration on the pencil (E, diag(d)).

    After a few fixed-shift sweeps the shift is refreshed with the current
    Rayleigh quotient, which keeps the cost at a handful of banded
    factorizations.  Deflation keeps the iterate d-orthogonal to an
    already-converged eigenvector.
    """
    D = sp.diags(d)
    lu = spla.splu((E - sigma * D).tocsc())
    rng = np.random.RandomState(1234)
    x = rng.standard_normal(E.shape[0])
    norm_e = float(np.max(np.abs(E).sum(axis=0)))
    nu_prev = math.inf
    stagnant = 0

    def project(y: np.ndarray) -> np.ndarray:
        if deflate is None:
            return y
        return y - deflate * (np.dot(deflate * d, y) / np.dot(deflate * d, deflate))

    for it in range(1, max_iters + 1):
        x = project(lu.solve(d * project(x)))
        x /= math.sqrt(np.dot(x * d, x))
        nu = float(x @ (E @ x))
        r = E @ x - nu * (d * x)
        # normwise backward error of the generalized eigenpair
        residual = float(np.linalg.norm(r)
                         / ((norm_e + abs(nu) * d.max()) * np.linalg.norm(x)))
        if residual < tol:
            return nu, x, residual, it
        # Rayleigh refreshes converge cubically; once the eigenvalue stops
        # moving the residual has reached the rounding floor of the solve.
        stagnant = stagnant + 1 if abs(nu - nu_prev) <= 1e-14 * abs(nu) else 0
        if stagnant >= 2 and residual < 1e-10:
            return nu, x, residual, it
        if it >= 3 and abs(nu - nu_prev) > 1e-14 * abs(nu):
            lu = spla.splu((E - nu * D).tocsc())
        nu_prev = nu
    raise NoConvergence(f"eigen iteration residual {residual:.2e} after {max_iters} steps")


def mode_eigenvalue(params: CknParams, mode: ModeSpec, index: int,
                    grid: LogGrid) -> SpectralResult:
    """index-th eigenvalue of the mode-k pencil (index 2 only for k = 0).

    Inverse-iteration shifts: 0.9 for index 1 (below the whole spectrum,
    which is bounded below by the mode-0 bottom eigenvalue 1), and
    p - 1 - 0.1 for index 2 with deflation against the index-1 profile.
    """
    if index not in (1, 2):
        raise ValueError("index must be 1 or 2")
    if index == 2 and mode.k != 0:
        raise ValueError("index 2 is only available for mode k = 0")
    if not params.subcritical:
        raise RellichBoundary("mode_eigenvalue requires beta < alpha - 2")
    E = _forms.energy_matrix(params, mode.lambda_k, grid, clamp=True)
    d = _forms.mass_vector(params, grid, clamp=True)
    if index == 1:
        nu, x, res, it = _inverse_iteration(E, d, SHIFT_INDEX1)
    else:
        nu1, x1, res1, it1 = _inverse_iteration(E, d, SHIFT_INDEX1)
        nu, x, res, it = _inverse_iteration(E, d, params.p - 1.0 - 0.1, deflate=x1)
        it += it1
    if x[0] < 0:
        x = -x
    full = np.zeros(grid.n)
    full[_forms.keep_indices(grid.n)] = x
    profile = RadialProfile(grid=grid, values=_forms.from_scaled(params, grid, full))
    return SpectralResult(eigenvalue=nu, profile=profile, residual=res, iters=it)


def _x1_integrals(M: float, grid: LogGrid | None = None) -> tuple[float, float]:
    """(int X1'^2 s^{M-3} ds, int X1^2 s^{M-5} ds) for X1 = s (1+s^2)^{-(M-2)/2},
    by quadrature on the given grid."""
    g = grid if grid is not None else numerics.make_grid()
    s = g.nodes
    env = (1.0 + s ** 2)
    x1 = s * env ** (-(M - 2.0) / 2.0)
    x1p = (1.0 - (M - 3.0) * s ** 2) * env ** (-M / 2.0)
    return (numerics.integrate(x1p ** 2, g, M - 3.0),
            numerics.integrate(x1 ** 2, g, M - 5.0))


def second_variation_bracket(params: CknParams, grid: LogGrid | None = None) -> float:
    """Positive factor 2 int X1'^2 s^{M-3} ds + (3M - 9 + chi) int X1^2 s^{M-5} ds
    multiplying chi - (M-1) in the second variation along the mode-1 direction."""
    if not params.subcritical:
        raise RellichBoundary("second variation requires beta < alpha - 2")
    M = params.M_dim
    chi = params.q_pow ** 2 * (params.N - 1.0)
    i1, i2 = _x1_integrals(M, grid)
    return 2.0 * i1 + (3.0 * M - 9.0 + chi) * i2


def second_variation_z1(params: CknParams, grid: LogGrid | None = None) -> float:
    """Second variation of the energy at U along the mode-1 direction Z1:

        (omega_{N-1}/N) nu^3 [chi - (M-1)]
            * { 2 int X1'^2 s^{M-3} ds + [(3M-9) + chi] int X1^2 s^{M-5} ds },

    chi = q^2 (N-1).  Negative exactly when beta < beta_fs (alpha > 0),
    zero on the Felli-Schneider curve, positive above it: the sign decides
    whether the radial extremal is a local minimum against mode-1
    perturbations.
    """
    from .closedform import omega_sphere

    P = params
    chi = P.q_pow ** 2 * (P.N - 1.0)
    return (omega_sphere(P.N) / P.N * P.nu ** 3
            * (chi - (P.M_dim - 1.0)) * second_variation_bracket(P, grid))


def second_variation_sign(params: CknParams) -> int:
    """Sign of second_variation_z1 without quadrature (the bracket is
    always positive, so the sign is that of chi - (M-1))."""
    if not params.subcritical:
        raise RellichBoundary("second variation requires beta < alpha - 2")
    gap = params.q_pow ** 2 * (params.N - 1.0) - (params.M_dim - 1.0)
    return (gap > 0) - (gap < 0)


def linearized_residual(params: CknParams, which: int, grid: LogGrid) -> float:
    """Normalized sup residual of the effective-dimension linearized ODE

        (L_s - varpi_k/s^2)^2 X = (q^2 lambda_k - varpi_k)
              (2/s^2 X'' + 2(M-3)/s^3 X' - [2(M-4) + q^2 lambda_k + varpi_k]/s^4 X)
            + (p_M - 1) Gamma_M (1+s^2)^{-4} X,

    where L_s = d^2/ds^2 + (M-1)/s d/ds and p_M = 2M/(M-4), with
    X = X0 = (1-s^2)(1+s^2)^{-(M-2)/2} (which = 0, k = 0) or
    X = X1 = s(1+s^2)^{-(M-2)/2} (which = 1, k = 1).

    X0 always solves its equation; X1 solves it exactly only on the
    Felli-Schneider curve, where q^2 lambda_1 = varpi_1.  Derivatives are
    taken by finite differences from the samples, so the value certifies
    the profile rather than restating algebra.
    """
    if which not in (0, 1):
        raise ValueError("which must be 0 or 1")
    if not params.subcritical:
        raise RellichBoundary("linearized_residual requires beta < alpha - 2")
    M = params.M_dim
    k = which
    varpi = float(k) * (M - 2.0 + k)
    q2lam = params.q_pow ** 2 * k * (params.N - 2.0 + k)
    s = grid.nodes
    env = (1.0 + s ** 2) ** (-(M - 2.0) / 2.0)
    x = ((1.0 - s ** 2) * env) if which == 0 else (s * env)

    # Everything is evaluated multiplied by s^4 and expressed through
    # d/dt (t = ln s), which keeps all terms bounded: with
    # G1 = s^2 (L_s - varpi/s^2) X the left side becomes
    # s^4 (L_s - varpi/s^2)^2 X = G1'' + (M-6) G1' + (8 - 2M - varpi) G1.
    prof = numerics.with_derivatives(RadialProfile(grid=grid, values=x))
    g1 = prof.d2 + (M - 2.0) * prof.d1 - varpi * x
    gp = numerics.with_derivatives(RadialProfile(grid=grid, values=g1))
    lhs = gp.d2 + (M - 6.0) * gp.d1 + (8.0 - 2.0 * M - varpi) * g1

    gamma_m = (M - 4.0) * (M - 2.0) * M * (M + 2.0)
    p_m = 2.0 * M / (M - 4.0)
    ratio4 = (s / (1.0 + s ** 2)) ** 4
    eig_term = (p_m - 1.0) * gamma_m * ratio4 * x
    # s^2 X'' = X_tt - X_t and s X' = X_t
    extra = (q2lam - varpi) * (2.0 * (prof.d2 - prof.d1) + 2.0 * (M - 3.0) * prof.d1
                               - (2.0 * (M - 4.0) + q2lam + varpi) * x)
    res = np.abs(lhs - extra - eig_term)
    m = RESIDUAL_MARGIN
    return float(res[m:-m].max() / np.abs(eig_term).max())


def gamma_comparison(M: float, k: int) -> tuple[float, float, bool]:
    """Both sides of the mode-exclusion comparison (p_M - 1) Gamma_M vs
    Gamma_{M+2k}, Gamma_X = (X-4)(X-2)X(X+2).

    Equality holds identically at k = 1 (both sides reduce to
    (M-2)M(M+2)(M+4)); for k >= 2 the right side strictly dominates, which
    is what rules out nontrivial higher-mode solutions.
    """
    if not M > 4:
        from .errors import MOutOfRange

        raise MOutOfRange(f"need M > 4, got {M}")
    if k < 1:
        raise ValueError("k must be >= 1")
    gm = (M - 4.0) * (M - 2.0) * M * (M + 2.0)
    m2 = M + 2.0 * k
    lhs = (2.0 * M / (M - 4.0) - 1.0) * gm
    rhs = (m2 - 4.0) * (m2 - 2.0) * m2 * (m2 + 2.0)
    holds = lhs <= rhs * (1.0 + 1e-12) if k == 1 else lhs < rhs
    return lhs, rhs, holds


def spectral_gap(params: CknParams, grid: LogGrid) -> float:
    """Numerical surrogate for the third eigenvalue on the critical lower
    boundary with alpha < 0: the minimum over k in {1, 2, 3} of the mode-k
    bottom eigenvalue.  Grid-dependent; reported, not asserted against any
    closed form, beyond the requirement that it exceed p - 1."""
    if params.region is not RegionClass.CRITICAL_UPPER_ALPHA_NEG:
        raise WrongRegion("spectral_gap is defined on the critical lower "
                          "boundary with 2 - N < alpha < 0")
    value = min(mode_eigenvalue(params, make_mode(params, k), 1, grid).eigenvalue
                for k in (1, 2, 3))
    if value <= params.p - 1.0:
        raise NoConvergence(f"gap surrogate {value} does not exceed p-1 = {params.p - 1.0}")
    return value
