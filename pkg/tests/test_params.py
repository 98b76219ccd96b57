import math

import numpy as np
import pytest

import ckn
from ckn.errors import AlphaOutOfRange, BetaOutOfRange, InvalidDimension
from ckn.params import RegionClass, beta_lower, derive, felli_schneider, region_of
from conftest import ORACLE

# admissible sample points used by the invariant sweeps
SAMPLES = [(5, 1.0, -2.0), (5, 1.0, -3.0), (5, 1.0, -11 / 3), (6, 0.5, -2.5),
           (7, 2.0, -1.0), (5, -1.0, -3.5), (5, -1.0, -13 / 3), (6, -2.0, -4.5),
           (9, 0.0, -3.0), (5, 0.0, -4.0), (10, 3.0, -0.5)]


class TestDerive:
    def test_hand_checked_point(self):
        p = derive(5, 1.0, -2.0)
        assert p.gamma == pytest.approx(10 / 3, rel=1e-14)
        assert p.p == pytest.approx(10 / 3, rel=1e-14)
        assert p.M_dim == pytest.approx(10.0, rel=1e-14)
        assert p.m_exp == pytest.approx(-3.0, rel=1e-14)
        assert p.nu == pytest.approx(0.5, rel=1e-14)
        assert p.q_pow == pytest.approx(-2.0, rel=1e-14)
        assert p.a_shift == pytest.approx(4.0, rel=1e-14)
        assert p.C_amp == pytest.approx(ORACLE["C_5_1_-2"], rel=1e-13)

    @pytest.mark.parametrize("N", [5, 6, 7, 8])
    def test_critical_lower_alpha_zero(self, N):
        p = derive(N, 0.0, -4.0)
        assert p.gamma == pytest.approx(4 * N / (N - 4), rel=1e-13)
        assert p.p == pytest.approx(2 * N / (N - 4), rel=1e-13)
        assert p.region is RegionClass.CRITICAL_UPPER_ALPHA_ZERO

    def test_rellich_boundary(self):
        p = derive(5, 1.0, -1.0)
        assert p.p == pytest.approx(2.0, rel=1e-14)
        assert p.region is RegionClass.RELLICH_BOUNDARY
        assert math.isnan(p.M_dim) and math.isnan(p.q_pow) and math.isnan(p.m_exp)
        assert p.nu == 0.0
        assert not p.subcritical

    def test_validation(self):
        with pytest.raises(InvalidDimension):
            derive(4, 0.0, -4.0)
        with pytest.raises(AlphaOutOfRange):
            derive(5, -3.0, -4.0)
        with pytest.raises(BetaOutOfRange):
            derive(5, 1.0, -0.5)          # above alpha - 2
        with pytest.raises(BetaOutOfRange):
            derive(5, 1.0, -4.0)          # below (N-4)alpha/(N-2) - 4


class TestFelliSchneider:
    @pytest.mark.parametrize("N", [5, 6, 7, 8, 9, 10])
    def test_alpha_zero_collapses(self, N):
        assert felli_schneider(N, 0.0) == -4.0

    def test_oracle_values(self):
        assert felli_schneider(5, 1.0) == pytest.approx(ORACLE["beta_fs_5_1"], rel=1e-15)
        assert felli_schneider(6, 2.0) == pytest.approx(6.0 - math.sqrt(56.0), rel=1e-15)
        assert felli_schneider(6, 2.0) == pytest.approx(ORACLE["beta_fs_6_2"], rel=1e-15)

    def test_inside_admissible_interval_for_positive_alpha(self):
        for alpha in (0.5, 1.0, 2.0, 3.0):
            bfs = felli_schneider(5, alpha)
            assert beta_lower(5, alpha) < bfs < alpha - 2.0


class TestClassify:
    def test_symmetry_breaking(self):
        assert derive(5, 1.0, -3.0).region is RegionClass.SYMMETRY_BREAKING

    def test_critical_neg(self):
        assert derive(5, -1.0, beta_lower(5, -1.0)).region \
            is RegionClass.CRITICAL_UPPER_ALPHA_NEG

    def test_critical_pos(self):
        assert derive(5, 1.0, beta_lower(5, 1.0)).region \
            is RegionClass.CRITICAL_UPPER_ALPHA_POS

    def test_named_zero_case(self):
        assert derive(5, 0.0, -4.0).region is RegionClass.CRITICAL_UPPER_ALPHA_ZERO

    def test_fs_curve_exact_tie(self):
        bfs = felli_schneider(5, 1.0)
        assert derive(5, 1.0, bfs).region is RegionClass.FS_CURVE
        # no tolerance band: a nudged value falls on either side
        assert derive(5, 1.0, np.nextafter(bfs, 0)).region \
            is RegionClass.CONJECTURED_SYMMETRY
        assert derive(5, 1.0, np.nextafter(bfs, -4)).region \
            is RegionClass.SYMMETRY_BREAKING

    def test_rellich_tie_wins(self):
        assert derive(5, 1.0, -1.0).region is RegionClass.RELLICH_BOUNDARY

    def test_region_of_invalid(self):
        assert region_of(4, 0.0, -4.0) is RegionClass.INVALID
        assert region_of(5, 1.0, 5.0) is RegionClass.INVALID

    def test_conjectured_region_negative_alpha(self):
        assert derive(5, -1.0, -3.5).region is RegionClass.CONJECTURED_SYMMETRY


class TestInvariants:
    @pytest.mark.parametrize("N,alpha,beta", SAMPLES)
    def test_kappa_relations(self, N, alpha, beta):
        p = derive(N, alpha, beta)
        assert p.p * p.kappa1 == pytest.approx(N + p.gamma, rel=1e-12)
        assert p.kappa1 + p.kappa2 == pytest.approx(N + alpha - 2.0, rel=1e-12)

    @pytest.mark.parametrize("N,alpha,beta", SAMPLES)
    def test_m_two_formulas(self, N, alpha, beta):
        p = derive(N, alpha, beta)
        if p.subcritical:
            assert p.m_exp == pytest.approx(-4.0 / (p.p - 2.0), rel=1e-12)

    @pytest.mark.parametrize("N,alpha,beta", SAMPLES)
    def test_effective_dimension(self, N, alpha, beta):
        p = derive(N, alpha, beta)
        if p.subcritical:
            assert p.M_dim > 4.0
            assert p.p == pytest.approx(2.0 * p.M_dim / (p.M_dim - 4.0), rel=1e-12)

    @pytest.mark.parametrize("N,alpha,beta", SAMPLES)
    def test_nu_from_quartic(self, N, alpha, beta):
        p = derive(N, alpha, beta)
        assert p.K2 ** 2 >= 4.0 * p.K0 * (1.0 - 1e-14)
        if p.subcritical:
            disc = math.sqrt(max(p.K2 ** 2 - 4.0 * p.K0, 0.0))
            assert p.nu ** 2 == pytest.approx((p.K2 - disc) / (2.0 * p.m_exp ** 2),
                                              rel=1e-11)

    @pytest.mark.parametrize("N,alpha,beta", SAMPLES)
    def test_constraints_positive(self, N, alpha, beta):
        p = derive(N, alpha, beta)
        assert N + beta > 0
        assert 2.0 * p.kappa1 > 0
        assert 2.0 - 1e-14 <= p.p <= 2.0 * N / (N - 4.0) + 1e-14
