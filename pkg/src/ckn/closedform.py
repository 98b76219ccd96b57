"""Closed-form extremals and best constants.

Everything here is an explicit formula: the radial extremal profile U and
its scalings, the classical second-order Sobolev constant S0, the
one-dimensional constant B(M) of the effective-dimension problem, the
radial best constant S_r, the weighted Rellich constant, the sharp
constant of the critical case with negative alpha, the two linearized
profiles Z0/Z1, and the Rellich test-sequence quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .errors import (AlphaOutOfRange, EpsOutOfRange, InvalidDimension,
                     MOutOfRange, NonPositiveRadius, RellichBoundary)
from .numerics import LogGrid, log_gamma
from .params import CknParams

__all__ = [
    "ExtremalSpec", "extremal_u", "scaling_direction", "sobolev_s0", "b_of_m",
    "omega_sphere", "radial_constant_sr", "rellich_constant",
    "rellich_constant_alt", "critical_constant", "linearized_mode",
    "rellich_test_quotient", "rellich_limit_grid", "RAMP_WIDTH",
]


@dataclass(frozen=True)
class ExtremalSpec:
    """A scaled copy of the extremal: lam^{kappa1} U(lam r), amplitude C by default."""

    params: CknParams
    lam: float = 1.0
    amplitude: float | None = None

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"scaling must be positive, got {self.lam}")
        if self.amplitude is None:
            object.__setattr__(self, "amplitude", self.params.C_amp)
        if not math.isfinite(self.amplitude):
            raise RellichBoundary("extremal amplitude undefined at beta = alpha - 2")


def _softplus(z: np.ndarray) -> np.ndarray:
    """log(1 + e^z) without overflow."""
    return np.maximum(z, 0.0) + np.log1p(np.exp(-np.abs(z)))


def extremal_u(spec: ExtremalSpec, r) -> np.ndarray | float:
    """Extremal profile  amplitude * lam^{kappa1} (lam r)^{-2nu} (1+(lam r)^{2nu})^{-(M-4)/2}.

    Behaves like r^{-(alpha-beta-2)} at the origin and r^{-(N+alpha-2)} at
    infinity, which is what the quadrature tail checks rely on.
    """
    P = spec.params
    if not P.subcritical:
        raise RellichBoundary("extremal_u requires beta < alpha - 2")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise NonPositiveRadius("extremal_u requires r > 0")
    z = 2.0 * P.nu * (np.log(r_arr) + math.log(spec.lam))
    logu = (math.log(spec.amplitude) + P.kappa1 * math.log(spec.lam)
            - z - (P.M_dim - 4.0) / 2.0 * _softplus(z))
    out = np.exp(logu)
    return out if out.ndim else float(out)


def scaling_direction(spec: ExtremalSpec, r) -> np.ndarray | float:
    """d/d lam of the scaled extremal at the spec's lam: kappa1 U + r U' in closed form."""
    P = spec.params
    if not P.subcritical:
        raise RellichBoundary("scaling_direction requires beta < alpha - 2")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise NonPositiveRadius("scaling_direction requires r > 0")
    z = 2.0 * P.nu * (np.log(r_arr) + math.log(spec.lam))
    # amplitude * nu (M-4)/2 * (lam r)^{-2nu} (1 - (lam r)^{2nu}) (1+(lam r)^{2nu})^{-(M-2)/2}
    mag = (spec.amplitude * P.nu * (P.M_dim - 4.0) / 2.0 * spec.lam ** (P.kappa1 - 1.0)
           * np.exp(-z - (P.M_dim - 2.0) / 2.0 * _softplus(z)))
    out = mag * (-np.expm1(z))
    return out if out.ndim else float(out)


def omega_sphere(N: int) -> float:
    """Surface area of the unit sphere in R^N: 2 pi^{N/2} / Gamma(N/2)."""
    return math.exp(math.log(2.0) + N / 2.0 * math.log(math.pi) - log_gamma(N / 2.0))


def sobolev_s0(N: int) -> float:
    """Best constant of the second-order Sobolev inequality in R^N (N >= 5):

        pi^2 N (N-4) (N^2-4) * (Gamma(N/2) / Gamma(N))^{4/N}.
    """
    if not (isinstance(N, int) and N >= 5):
        raise InvalidDimension(f"need integer N >= 5, got {N}")
    return (math.pi ** 2 * N * (N - 4) * (N ** 2 - 4)
            * math.exp(4.0 / N * (log_gamma(N / 2.0) - log_gamma(float(N)))))


def b_of_m(M: float) -> float:
    """One-dimensional biharmonic Sobolev constant in effective dimension M > 4:

        (M-4)(M-2)M(M+2) * (Gamma(M/2)^2 / (2 Gamma(M)))^{4/M}.
    """
    if not M > 4:
        raise MOutOfRange(f"need M > 4, got {M}")
    return ((M - 4.0) * (M - 2.0) * M * (M + 2.0)
            * math.exp(4.0 / M * (2.0 * log_gamma(M / 2.0) - math.log(2.0) - log_gamma(M))))


def radial_constant_sr(params: CknParams) -> float:
    """Best constant of the weighted inequality restricted to radial functions:

        (2/(alpha-beta-2))^{2(alpha-beta-2)/T - 4} * omega_{N-1}^{2(alpha-beta-2)/T} * B(M)

    with T = N + 2 alpha - beta - 4 and M = 2T/(alpha-beta-2).
    """
    if not params.subcritical:
        raise RellichBoundary("radial_constant_sr requires beta < alpha - 2")
    anb2 = params.alpha - params.beta - 2.0
    T = 2.0 * params.kappa1
    e = 2.0 * anb2 / T
    return ((2.0 / anb2) ** (e - 4.0) * omega_sphere(params.N) ** e * b_of_m(params.M_dim))


def rellich_constant(N: int, alpha: float) -> float:
    """Sharp constant of the weighted Rellich inequality (the p = 2 boundary):

        (N(N-4)/4)^2 + 2 (Q - N + 2) ((N-4)/2)^2 + Q^2,
        Q = (2+alpha)/2 * (N - 2 + alpha - (2+alpha)/2).

    At alpha = -2 the expression collapses to ((N-4)/2)^4 exactly.
    """
    if not (isinstance(N, int) and N >= 5):
        raise InvalidDimension(f"need integer N >= 5, got {N}")
    if not alpha > 2 - N:
        raise AlphaOutOfRange(f"need alpha > {2 - N}, got {alpha}")
    Q = (2.0 + alpha) / 2.0 * (N - 2.0 + alpha - (2.0 + alpha) / 2.0)
    return (N * (N - 4.0) / 4.0) ** 2 + 2.0 * (Q - N + 2.0) * ((N - 4.0) / 2.0) ** 2 + Q ** 2


def rellich_constant_alt(N: int, alpha: float) -> float:
    """Alternative closed form of the same Rellich constant; agrees with
    rellich_constant because N^2 + (N-4)^2 = 2(N^2 - 4N + 8)."""
    if not alpha > 2 - N:
        raise AlphaOutOfRange(f"need alpha > {2 - N}, got {alpha}")
    Q = (2.0 + alpha) / 2.0 * (N - 2.0 + alpha - (2.0 + alpha) / 2.0)
    c = 4.0 * (Q - N + 2.0) / (N ** 2 - 4.0 * N + 8.0)
    return ((N * (N - 4.0) / 4.0) ** 2 * (1.0 + c)
            + ((N - 4.0) / 2.0) ** 4 * c + Q ** 2)


def critical_constant(N: int, alpha: float) -> float:
    """Sharp constant on the critical lower boundary with 2 - N < alpha < 0:

        (1 + alpha/(N-2))^{4 - 4/N} * S0(N),  strictly below S0.
    """
    if not (2 - N < alpha < 0):
        raise AlphaOutOfRange(f"need {2 - N} < alpha < 0, got {alpha}")
    return (1.0 + alpha / (N - 2.0)) ** (4.0 - 4.0 / N) * sobolev_s0(N)


def linearized_mode(params: CknParams, which: int, r) -> np.ndarray | float:
    """Radial factor of the linearized-solution basis.

    which = 0: Z0(r) = (1 - r^{2+beta-alpha}) (1 + r^{alpha-beta-2})^{-(N-2+alpha)/(alpha-beta-2)},
               proportional to the scaling direction kappa1 U + r U'.
    which = 1: r^{(2+beta-alpha)/2} (1 + r^{alpha-beta-2})^{-(N-2+alpha)/(alpha-beta-2)},
               the extra direction that appears exactly on the Felli-Schneider curve.
    """
    if which not in (0, 1):
        raise ValueError("which must be 0 or 1")
    P = params
    if not P.subcritical:
        raise RellichBoundary("linearized_mode requires beta < alpha - 2")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise NonPositiveRadius("linearized_mode requires r > 0")
    z = 2.0 * P.nu * np.log(r_arr)
    e = (P.M_dim - 2.0) / 2.0          # = (N-2+alpha)/(alpha-beta-2)
    env = np.exp(-e * _softplus(z))
    if which == 0:
        out = -np.expm1(-z) * env
    else:
        out = np.exp(-z / 2.0) * env
    return out if out.ndim else float(out)


#: Width (in t = ln r) of the quintic cutoff ramp used by the Rellich
#: test sequence; the ramp spans r in [1, e^RAMP_WIDTH].
RAMP_WIDTH = 12.0


def _cutoff(t: np.ndarray, L: float = RAMP_WIDTH):
    """C^2 cutoff in t = ln r: 1 for t <= 0, 0 for t >= L, quintic ramp between.

    The ramp is g(t) = 1 - S(t/L) with S(u) = 6u^5 - 15u^4 + 10u^3, which has
    S' = S'' = 0 at both ends.  Returns (g, dg/dt, d2g/dt2).
    """
    u = np.clip(t / L, 0.0, 1.0)
    inside = (t > 0) & (t < L)
    g = np.where(t <= 0, 1.0, 1.0 - (6 * u ** 5 - 15 * u ** 4 + 10 * u ** 3))
    g1 = np.where(inside, -(30 * u ** 4 - 60 * u ** 3 + 30 * u ** 2) / L, 0.0)
    g2 = np.where(inside, -(120 * u ** 3 - 180 * u ** 2 + 60 * u) / L ** 2, 0.0)
    return g, g1, g2


def rellich_limit_grid(n: int = numerics.DEFAULT_N) -> LogGrid:
    """Grid wide enough at the origin for the slowly-decaying test sequences."""
    return numerics.make_grid(-400.0, 15.0, n)


def rellich_test_quotient(N: int, eps: float, grid: LogGrid) -> float:
    """Quotient of the Rellich test sequence u_eps = r^{-(N-4)/2 + eps} g(r):

        int |x|^4 |div(|x|^{-2} grad u_eps)|^2 dx / int |x|^{-4} u_eps^2 dx,

    with the fixed cutoff of _cutoff.  Decreases to ((N-4)/2)^4 as eps -> 0+;
    the grid must reach far below r = 1 (see rellich_limit_grid) because the
    mass concentrates near the origin like r^{2 eps - 1}.
    """
    if not (0 < eps < 0.5):
        raise EpsOutOfRange(f"need 0 < eps < 1/2, got {eps}")
    if not (isinstance(N, int) and N >= 5):
        raise InvalidDimension(f"need integer N >= 5, got {N}")
    t = grid.ts
    sigma = -(N - 4.0) / 2.0 + eps
    c0 = sigma * (sigma + N - 4.0)
    g, g1, g2 = _cutoff(t)
    rho = g2 + (2.0 * sigma + N - 4.0) * g1 + c0 * g
    w = 2.0 * sigma + N - 5.0          # both integrands share the weight r^{2 sigma + N - 5}
    num = numerics.integrate(rho ** 2, grid, w)
    den = numerics.integrate(g ** 2, grid, w)
    return num / den
