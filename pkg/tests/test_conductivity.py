import math

import numpy as np
import pytest

import oracles
from magcp import (B_REF, ConvergenceError, GrapheneParams, ValidationError,
                   conductivity_sample, fermi_dirac, landau_level, landau_scale,
                   predict_crossings, sigma_xx, sigma_xy)
from magcp._backend import landau_block
from magcp.conductivity import _interband_tail
from magcp.constants import E_CHARGE, HBAR, K_B

MU_C = 0.115 * E_CHARGE
Q_HALL = E_CHARGE**2 / (math.pi * HBAR)  # e^2/(pi hbar)
SIGMA0 = E_CHARGE**2 / (4.0 * HBAR)      # universal large-frequency value


class TestLandauLevel:
    def test_n0_is_zero(self):
        assert landau_level(0, 10.0) == 0.0

    def test_sqrt4_is_twice_level_one(self):
        assert landau_level(4, 7.3) == pytest.approx(2.0 * landau_level(1, 7.3), rel=1e-15)

    def test_level_one_at_10T_sits_at_mu_c(self):
        # closed-form SI evaluation: the n=1 crossing is at B ~ 10 T
        ev = landau_level(1, 10.0) / E_CHARGE
        assert ev == pytest.approx(0.114735518, rel=1e-8)
        assert abs(ev - 0.115) / 0.115 < 3e-3

    def test_domain_errors(self):
        with pytest.raises(ValidationError):
            landau_level(1, 0.0)
        with pytest.raises(ValidationError):
            landau_level(1, -2.0)
        with pytest.raises(ValidationError):
            landau_level(-1, 1.0)

    def test_gap_sequence_strictly_decreasing(self):
        # drives the downward jumps: the n <-> n+1 gap shrinks with n
        for B in (0.5, 5.0, 12.0):
            M = np.array([landau_level(n, B) for n in range(0, 2001)])
            gaps = np.diff(M)
            assert np.all(np.diff(gaps) < 0)


class TestFermiDirac:
    def test_symmetry_point(self):
        assert fermi_dirac(MU_C, MU_C, 77.0) == pytest.approx(0.5, rel=1e-15)

    def test_one_thermal_unit_above(self):
        T = 120.0
        val = fermi_dirac(MU_C + K_B * T, MU_C, T)
        assert val == pytest.approx(1.0 / (1.0 + math.e), rel=1e-12)

    def test_zero_temperature_step(self):
        eps = 1e-30
        assert fermi_dirac(MU_C + eps, MU_C, 0.0) == 0.0
        assert fermi_dirac(MU_C - eps, MU_C, 0.0) == 1.0
        assert fermi_dirac(MU_C, MU_C, 0.0) == 0.5

    def test_overflow_safe(self):
        assert fermi_dirac(1.0, 0.0, 1e-3) == 0.0  # (E-mu)/kT ~ 7e19
        assert fermi_dirac(-1.0, 0.0, 1e-3) == 1.0
        arr = fermi_dirac(np.array([-1.0, 0.0, 1.0]), 0.0, 300.0)
        assert arr.shape == (3,)
        assert np.all((arr >= 0) & (arr <= 1))

    def test_negative_temperature_rejected(self):
        with pytest.raises(ValidationError):
            fermi_dirac(0.0, 0.0, -1.0)


class TestSigmaAdaptive:
    def test_matches_brute_force_oracle(self):
        # frozen from the extended-precision oracle (N_max=1e5 + integrated
        # remainder): sigma_xx(1e14 rad/s; B=5 T, T=4 K, defaults)
        p = GrapheneParams(B=5.0, T=4.0)
        val = sigma_xx(1e14, p, 1e-10)
        assert val == pytest.approx(1.249261244427e-04, rel=1e-9)
        ref, _ = oracles.sigma_brute(1e14, 5.0, 4.0, MU_C)
        assert val == pytest.approx(ref, rel=1e-8)

    @pytest.mark.parametrize("xi,B,T", [(0.0, 12.0, 4.0), (3.3e12, 7.0, 4.0),
                                        (2.5e14, 3.0, 300.0)])
    def test_brute_agreement_other_points(self, xi, B, T):
        p = GrapheneParams(B=B, T=T)
        s = conductivity_sample(xi, p, 1e-9)
        bx, by = oracles.sigma_brute(xi, B, T, MU_C)
        assert s.sigma_xx == pytest.approx(bx, rel=1e-7)
        assert s.sigma_xy == pytest.approx(by, rel=1e-7, abs=1e-18)

    def test_truncation_stability_under_doubling(self):
        # doubling the truncation index beyond the adaptive cutoff moves the
        # result by less than the requested tolerance
        p = GrapheneParams(B=5.0, T=4.0)
        tol = 1e-8
        s = conductivity_sample(1e14, p, tol)
        m1 = landau_scale(5.0)
        h_xi = HBAR * (1e14 + 1.0 / p.tau)
        n2 = 2 * s.n_terms_used
        sxx_sum, _ = landau_block(h_xi, m1, p.mu_c, K_B * p.T, 0, n2)
        pref = E_CHARGE**3 * 1e12 * 5.0 / math.pi
        doubled = pref * h_xi * (sxx_sum + _interband_tail(n2, m1, h_xi))
        assert abs(doubled - s.sigma_xx) <= tol * abs(doubled)

    def test_dc_dominated_by_lowest_intraband_channel(self):
        # at 12 T, 4 K only M_0 is occupied: the M_0 <-> M_1 transition
        # (the n = 0 term) carries most of sigma_xx(0)
        p = GrapheneParams(B=12.0, T=4.0)
        s = conductivity_sample(0.0, p, 1e-9)
        assert s.sigma_xx > 0.0
        m1 = landau_scale(12.0)
        h_xi = HBAR / p.tau
        first, _ = landau_block(h_xi, m1, p.mu_c, K_B * 4.0, 0, 1)
        rest, _ = landau_block(h_xi, m1, p.mu_c, K_B * 4.0, 1, s.n_terms_used)
        rest += _interband_tail(s.n_terms_used, m1, h_xi)
        assert first > rest

    def test_universal_large_frequency_limit(self):
        # pins the SI prefactor: sigma_xx(i xi) -> e^2/(4 hbar)
        p = GrapheneParams(B=5.0, T=4.0)
        assert sigma_xx(1e17, p, 1e-9) == pytest.approx(SIGMA0, rel=1e-6)

    def test_positivity_sweep(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            xi = 10 ** rng.uniform(10, 16)
            B = 10 ** rng.uniform(-0.5, 1.08)
            T = 10 ** rng.uniform(0.3, 2.48)
            s = conductivity_sample(xi, GrapheneParams(B=B, T=T), 1e-6)
            assert s.sigma_xx > 0.0
            assert math.isfinite(s.sigma_xy)

    def test_particle_hole_symmetry(self):
        # analytically every Hall bracket vanishes at mu_c = 0; in floating
        # point the +/-E occupations round independently, so "identically
        # zero" means zero at machine precision relative to sigma_xx
        rng = np.random.default_rng(11)
        for _ in range(10):
            p = GrapheneParams(mu_c=0.0, B=10 ** rng.uniform(-0.3, 1.0),
                               T=10 ** rng.uniform(0.3, 2.48))
            xi = 10 ** rng.uniform(11, 15)
            s = conductivity_sample(xi, p, 1e-8)
            assert abs(s.sigma_xy) <= 1e-12 * s.sigma_xx

    def test_hard_cap_breach_raises(self):
        # a microtesla-scale field puts the occupation boundary past N_HARD
        with pytest.raises(ConvergenceError):
            conductivity_sample(1e13, GrapheneParams(B=1e-7, T=4.0), 1e-8)

    def test_validation(self):
        p = GrapheneParams(B=5.0, T=4.0)
        with pytest.raises(ValidationError):
            conductivity_sample(-1.0, p)
        with pytest.raises(ValidationError):
            conductivity_sample(1e13, p, tol=0.0)


class TestDcHallPlateaus:
    def test_n0_plateau_quantized_to_1e3(self):
        # N=0 plateau (B > B_1): |sigma_xy(0)| = e^2/(pi hbar) to 1e-3
        for B in (10.6, 11.0, 12.0):
            s = conductivity_sample(0.0, GrapheneParams(B=B, T=4.0), 1e-9)
            assert abs(abs(s.sigma_xy) - Q_HALL) / Q_HALL < 1e-3

    def test_n1_plateau_value_is_broadening_shifted(self):
        # N=1 plateau: the exact sum equals the closed form with the
        # (hbar/tau)^2 broadening retained in both denominators; the
        # deviation from 3 e^2/(pi hbar) is therefore ~7e-3 at 7.5 T,
        # irreducible at the default scattering time.
        B = 7.5
        s = conductivity_sample(0.0, GrapheneParams(B=B, T=4.0), 1e-10)
        m1 = landau_scale(B)
        g = HBAR / 1.84e-13
        closed = (E_CHARGE**3 * 1e12 * B / math.pi) * (
            1.0 / ((math.sqrt(2) - 1) ** 2 * m1**2 + g * g)
            + 1.0 / ((math.sqrt(2) + 1) ** 2 * m1**2 + g * g))
        assert abs(s.sigma_xy) == pytest.approx(closed, rel=1e-12)
        dev = abs(abs(s.sigma_xy) - 3 * Q_HALL) / (3 * Q_HALL)
        assert dev == pytest.approx(7.29e-3, rel=0.05)

    def test_plateau_sequence_and_clean_limit(self):
        # ideal (broadening -> 0) plateau values are exactly (2N+1) e^2/(pi hbar):
        # 1/(sqrt(n+1)-sqrt(n))^2 + 1/(sqrt(n+1)+sqrt(n))^2 = 2(2n+1)
        for n in range(0, 6):
            total = (math.sqrt(n + 1) + math.sqrt(n)) ** 2 + (math.sqrt(n + 1) - math.sqrt(n)) ** 2
            assert total == pytest.approx(2.0 * (2 * n + 1), rel=1e-12)


class TestZeroFieldFallback:
    def test_hall_component_vanishes(self):
        s = conductivity_sample(1e13, GrapheneParams(B=0.0, T=4.0), 1e-7)
        assert s.sigma_xy == 0.0

    def test_dc_limit_matches_drude(self):
        # independent anchor: graphene Drude DC value e^2 mu_c tau/(pi hbar^2)
        p = GrapheneParams(B=0.0, T=4.0)
        drude = E_CHARGE**2 * MU_C * p.tau / (math.pi * HBAR**2)
        s = conductivity_sample(0.0, p, 1e-8)
        assert s.sigma_xx == pytest.approx(drude, rel=1e-3)

    def test_reference_field_is_documented_value(self):
        assert B_REF == 1e-3


class TestPredictCrossings:
    def test_defaults_largest_near_10T(self):
        p = GrapheneParams(B=0.0, T=4.0)
        out = predict_crossings(p, (0.5, 12.0))
        assert out == sorted(out)
        assert out[-1] == pytest.approx(10.0462, rel=1e-4)
        assert abs(out[-1] - 10.0) < 0.5

    def test_inverse_n_scaling(self):
        p = GrapheneParams(B=0.0, T=4.0)
        out = predict_crossings(p, (0.5, 12.0))
        assert out[-2] == pytest.approx(out[-1] / 2.0, rel=1e-14)

    def test_mu_squared_scaling(self):
        p1 = GrapheneParams(B=0.0, T=4.0)
        p2 = GrapheneParams(mu_c=2 * MU_C, B=0.0, T=4.0)
        b1 = predict_crossings(p1, (0.5, 200.0))[-1]
        b2 = predict_crossings(p2, (0.5, 200.0))[-1]
        assert b2 == pytest.approx(4.0 * b1, rel=1e-14)

    def test_empty_when_out_of_range(self):
        p = GrapheneParams(B=0.0, T=4.0)
        assert predict_crossings(p, (11.0, 12.0)) == []

    def test_requires_positive_mu(self):
        with pytest.raises(ValidationError):
            predict_crossings(GrapheneParams(mu_c=0.0), (0.5, 12.0))


class TestParamsValidation:
    @pytest.mark.parametrize("kw", [dict(v_F=0.0), dict(tau=0.0), dict(B=-1.0),
                                    dict(T=-4.0)])
    def test_rejects(self, kw):
        with pytest.raises(ValidationError):
            GrapheneParams(**kw)
