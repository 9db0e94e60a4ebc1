import io

import numpy as np
import pytest

import conftest
from magcp import (LorentzPolarizability, ValidationError, alpha_imag,
                   alpha_static, load_table)
from magcp.constants import ALPHA_AU, EV, HBAR


class TestLorentz:
    def test_static_limit_exact(self):
        m = LorentzPolarizability(alpha0=5.26e-39, omega0=2.41e15)
        assert alpha_static(m) == 5.26e-39

    def test_half_value_at_resonance(self):
        m = LorentzPolarizability(alpha0=5.26e-39, omega0=2.41e15)
        assert alpha_imag(m, 2.41e15) == pytest.approx(5.26e-39 / 2.0, rel=1e-15)

    def test_monotone_decay_to_zero(self):
        m = LorentzPolarizability(alpha0=1e-39, omega0=2.5e15)
        xs = np.geomspace(1e10, 1e19, 40)
        vals = np.array([alpha_imag(m, x) for x in xs])
        assert np.all(np.diff(vals) < 0)
        assert vals[-1] < 1e-6 * alpha_static(m)

    def test_validation(self):
        with pytest.raises(ValidationError):
            LorentzPolarizability(alpha0=0.0, omega0=1e15)
        with pytest.raises(ValidationError):
            LorentzPolarizability(alpha0=1e-39, omega0=-1.0)
        m = LorentzPolarizability(alpha0=1e-39, omega0=1e15)
        with pytest.raises(ValidationError):
            alpha_imag(m, -1.0)


class TestLoadTable:
    def test_roundtrip_minimal(self):
        rows = [(10 ** (13 + 0.5 * i), 1e-40 * 10 ** (-1.5 * i)) for i in range(8)]
        m = load_table(conftest.make_table(rows))
        assert m.omega.shape == (8,)
        assert m.im_alpha.shape == (8,)

    def test_too_few_rows(self):
        rows = [(1e13, 1e-40), (1e14, 1e-41), (1e15, 1e-42)]
        with pytest.raises(ValidationError, match="8"):
            load_table(conftest.make_table(rows))

    def test_descending_omega_rejected(self):
        rows = [(1e13 * 2**i, 1e-40) for i in range(8)]
        rows[4], rows[5] = rows[5], rows[4]
        with pytest.raises(ValidationError, match="ascending"):
            load_table(conftest.make_table(rows))

    def test_duplicate_omega_rejected(self):
        rows = [(1e13 * 2**i, 1e-40 * 2.0**-i) for i in range(8)]
        rows[3] = rows[2]
        with pytest.raises(ValidationError, match="duplicate"):
            load_table(conftest.make_table(rows))

    def test_negative_im_alpha_rejected(self):
        rows = [(1e13 * 2**i, 1e-40 * 2.0**-i) for i in range(8)]
        rows[5] = (rows[5][0], -1e-42)
        with pytest.raises(ValidationError, match="Im alpha"):
            load_table(conftest.make_table(rows))

    def test_parse_error_reports_line_number(self):
        text = b"# header\n1e13 1e-40\n1e14 not_a_number\n"
        with pytest.raises(ValidationError, match="line 3"):
            load_table(text)

    def test_wrong_column_count_reports_line(self):
        text = b"1e13 1e-40\n1e14 1e-41 7\n"
        with pytest.raises(ValidationError, match="line 2"):
            load_table(text)

    def test_units_pragma_ev_au(self):
        # (hbar*omega in eV, Im alpha in au) -> SI at load
        rows_ev = [(0.1 * 2**i, 3.0 * 8.0**-i) for i in range(8)]
        m = load_table(conftest.make_table(rows_ev, header="#units: eV au"))
        assert m.omega[0] == pytest.approx(0.1 * EV / HBAR, rel=1e-12)
        assert m.im_alpha[0] == pytest.approx(3.0 * ALPHA_AU, rel=1e-12)

    def test_file_and_stream_sources(self, tmp_path, lorentzian_table):
        path = tmp_path / "alpha.dat"
        path.write_bytes(lorentzian_table)
        m1 = load_table(path)
        m2 = load_table(io.BytesIO(lorentzian_table))
        assert np.array_equal(m1.omega, m2.omega)

    def test_flat_tail_rejected(self):
        rows = [(1e13 * 2**i, 1e-40) for i in range(12)]
        with pytest.raises(ValidationError, match="exponent"):
            load_table(conftest.make_table(rows))


class TestTransform:
    def test_tail_exponent_is_lorentzian(self, lorentzian_table):
        m = load_table(lorentzian_table)
        assert 2.8 < m.tail_exponent < 3.2

    def test_matches_closed_form_lorentz_within_half_percent(self, lorentzian_table):
        # core acceptance oracle of the module: the transform of a sampled
        # (narrow) Lorentzian reproduces the closed-form oscillator model
        m = load_table(lorentzian_table)
        ref = LorentzPolarizability(alpha0=1e-39, omega0=2.5e15)
        for xi in np.concatenate([[0.0], np.geomspace(1e12, 1e17, 25)]):
            got = alpha_imag(m, float(xi))
            want = alpha_imag(ref, float(xi))
            assert abs(got - want) / want < 5e-3

    def test_static_value_finite_positive_and_monotone(self, lorentzian_table):
        m = load_table(lorentzian_table)
        a0 = alpha_static(m)
        assert np.isfinite(a0) and a0 > 0
        xs = np.geomspace(1e12, 1e18, 30)
        vals = np.array([alpha_imag(m, float(x)) for x in xs])
        assert np.all(np.diff(vals) < 0)

    def test_above_grid_edge_branch(self, lorentzian_table):
        # xi close to the top of the table exercises the quadrature tail
        m = load_table(lorentzian_table)
        v = alpha_imag(m, 9e17)
        assert np.isfinite(v) and v > 0
