"""Parameter algebra for the weighted second-order inequality.

A point (N, alpha, beta) with N >= 5, alpha > 2 - N and
(N-4)/(N-2)*alpha - 4 <= beta <= alpha - 2 fixes every scalar of the
theory: the third weight gamma, the critical exponent p, the
Emden-Fowler constants, the effective dimension M, and the
Felli-Schneider threshold beta_fs separating stable from unstable
radial extremals.  ``derive`` computes them all; ``classify`` places the
point in the (alpha, beta) plane.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import AlphaOutOfRange, BetaOutOfRange, InvalidDimension


class RegionClass(enum.Enum):
    RELLICH_BOUNDARY = "RellichBoundary"
    CRITICAL_UPPER_ALPHA_POS = "CriticalUpperAlphaPos"
    CRITICAL_UPPER_ALPHA_NEG = "CriticalUpperAlphaNeg"
    CRITICAL_UPPER_ALPHA_ZERO = "CriticalUpperAlphaZero"
    SYMMETRY_BREAKING = "SymmetryBreaking"
    FS_CURVE = "FSCurve"
    CONJECTURED_SYMMETRY = "ConjecturedSymmetry"
    INVALID = "Invalid"


@dataclass(frozen=True)
class CknParams:
    """Validated parameter point with every derived scalar.

    For beta = alpha - 2 (the p = 2 boundary) the subcritical-only fields
    m_exp, q_pow, M_dim and C_amp are NaN: the formulas divide by
    alpha - beta - 2 there and no operation on that boundary uses them.
    """

    N: int
    alpha: float
    beta: float
    gamma: float
    p: float
    kappa1: float
    kappa2: float
    cal_A: float
    cal_B: float
    K2: float
    K0: float
    m_exp: float
    nu: float
    C_amp: float
    a_shift: float
    q_pow: float
    M_dim: float
    beta_fs: float
    region: RegionClass

    @property
    def subcritical(self) -> bool:
        """True away from the p = 2 boundary, where U, M and q exist."""
        return self.beta < self.alpha - 2


def beta_lower(N: int, alpha: float) -> float:
    """Lower end of the admissible beta interval."""
    return (N - 4) * alpha / (N - 2) - 4.0


def felli_schneider(N: int, alpha: float) -> float:
    """Felli-Schneider threshold beta_fs(alpha) = N + 2a - 4 - sqrt((N-2+a)^2 + 4(N-1)).

    Radial extremals lose linearized stability below this curve (alpha > 0).
    At alpha = 0 it collapses to -4 for every N since (N-2)^2 + 4(N-1) = N^2.
    """
    if not (isinstance(N, (int,)) and N >= 5):
        raise InvalidDimension(f"need integer N >= 5, got {N}")
    return N + 2.0 * alpha - 4.0 - math.sqrt((N - 2.0 + alpha) ** 2 + 4.0 * (N - 1.0))


def derive(N: int, alpha: float, beta: float) -> CknParams:
    """Validate (N, alpha, beta) and populate every derived scalar."""
    if not (isinstance(N, int) and not isinstance(N, bool) and N >= 5):
        raise InvalidDimension(f"need integer N >= 5, got {N!r}")
    alpha = float(alpha)
    beta = float(beta)
    if not alpha > 2 - N:
        raise AlphaOutOfRange(f"need alpha > {2 - N}, got {alpha}")
    lo = beta_lower(N, alpha)
    hi = alpha - 2.0
    if not (lo <= beta <= hi):
        raise BetaOutOfRange(f"need beta in [{lo}, {hi}], got {beta}")

    T = N + 2.0 * alpha - beta - 4.0          # = 2 kappa1 > 0
    gamma = T * T / (N + beta) - N
    p = 2.0 * T / (N + beta)
    kappa1 = T / 2.0
    kappa2 = (N + beta) / 2.0
    cal_A = (beta + 2.0 - alpha) / 2.0
    cal_B = kappa1 * kappa2
    K2 = ((N + alpha - 2.0) ** 2 + (beta + 2.0 - alpha) ** 2) / 2.0
    K0 = cal_B ** 2
    nu = (alpha - beta - 2.0) / 2.0
    a_shift = N + alpha - 2.0
    if beta < hi:
        m_exp = (N + beta) / (beta + 2.0 - alpha)
        q_pow = 2.0 / (2.0 + beta - alpha)
        M_dim = 2.0 * T / (alpha - beta - 2.0)
        try:
            # the amplitude blows up as beta -> alpha - 2; inf is the honest value
            C_amp = math.exp((N + beta) / (4.0 * (alpha - beta - 2.0)) *
                             math.log((N + beta) * (N + alpha - 2.0) * T *
                                      (N + 3.0 * alpha - 2.0 * beta - 6.0)))
        except OverflowError:
            C_amp = math.inf
    else:
        m_exp = q_pow = M_dim = C_amp = math.nan

    bfs = felli_schneider(N, alpha)
    region = _classify_raw(N, alpha, beta, lo, hi, bfs)
    return CknParams(N=N, alpha=alpha, beta=beta, gamma=gamma, p=p,
                     kappa1=kappa1, kappa2=kappa2, cal_A=cal_A, cal_B=cal_B,
                     K2=K2, K0=K0, m_exp=m_exp, nu=nu, C_amp=C_amp,
                     a_shift=a_shift, q_pow=q_pow, M_dim=M_dim,
                     beta_fs=bfs, region=region)


def _classify_raw(N: int, alpha: float, beta: float,
                  lo: float, hi: float, bfs: float) -> RegionClass:
    # Boundary ties are broken by exact comparison on the derived values;
    # sweeps must quantize beta onto grid values before classifying.
    if beta == hi:
        return RegionClass.RELLICH_BOUNDARY
    if alpha == 0.0 and beta == -4.0:
        return RegionClass.CRITICAL_UPPER_ALPHA_ZERO
    if beta == lo:
        if alpha > 0.0:
            return RegionClass.CRITICAL_UPPER_ALPHA_POS
        return RegionClass.CRITICAL_UPPER_ALPHA_NEG
    if beta == bfs and alpha >= 0.0:
        return RegionClass.FS_CURVE
    if alpha > 0.0 and lo < beta < bfs:
        return RegionClass.SYMMETRY_BREAKING
    return RegionClass.CONJECTURED_SYMMETRY


def classify(params: CknParams) -> RegionClass:
    """Region of the (alpha, beta) plane this parameter point belongs to."""
    return params.region


def region_of(N: int, alpha: float, beta: float) -> RegionClass:
    """classify() for raw tuples; returns Invalid instead of raising."""
    try:
        return derive(N, alpha, beta).region
    except (InvalidDimension, AlphaOutOfRange, BetaOutOfRange):
        return RegionClass.INVALID
