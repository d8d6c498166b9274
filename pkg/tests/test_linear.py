import numpy as np
import pytest

from wavemod import (
    FbmcModem,
    build_linear_matrices,
    fbmc_modulate,
    linear_demodulate,
    linear_modulate,
    phydyas,
    qam_map,
)
from wavemod.prototypes import PrototypeFilter


def _support(col, tol=0.0):
    nz = np.flatnonzero(np.abs(col) > tol)
    return (nz[0], nz[-1]) if len(nz) else (None, None)


class TestBuildLinearMatrices:
    def test_table_profile_dimensions(self):
        mats = build_linear_matrices(phydyas(128, 4), 128, 4)
        assert mats.a_i.shape == (962, 512)
        assert mats.a_q.shape == (962, 512)
        assert mats.frame_len == 962
        assert mats.support_len == 961

    def test_last_column_no_wrap(self):
        mats = build_linear_matrices(phydyas(128, 4), 128, 4)
        first, last = _support(mats.a_q[:, -1])
        assert last == 3 * 128 + 64 + 513 - 1 == 960
        assert last < mats.frame_len

    @pytest.mark.parametrize("k,m", [(4, 2), (16, 4), (128, 4)])
    def test_wrap_freedom_contiguous_support(self, k, m):
        mats = build_linear_matrices(phydyas(k, 4), k, m)
        for mat in (mats.a_i, mats.a_q):
            for col in range(mat.shape[1]):
                nz = np.flatnonzero(np.abs(mat[:, col]) > 0)
                assert np.array_equal(nz, np.arange(nz[0], nz[-1] + 1))

    def test_quadrature_shift_relation(self):
        # Each quadrature column is the in-phase column delayed by K/2
        # samples, times the per-subcarrier sign picked up by the absolute-
        # index modulating exponential.
        k, m = 16, 2
        mats = build_linear_matrices(phydyas(k, 4), k, m)
        for mm in range(m):
            for kk in range(k):
                col = mm * k + kk
                shifted = np.roll(mats.a_i[:, col], k // 2)
                shifted[: k // 2] = 0.0
                want = shifted * (-1) ** kk
                np.testing.assert_allclose(mats.a_q[:, col], want, atol=1e-12)

    def test_small_even_case(self):
        p = PrototypeFilter(coefficients=np.array([1.0, 0.0, 0.0]), overlap=1, subcarriers=2)
        mats = build_linear_matrices(p, 2, 1)
        assert mats.frame_len == 3 + 2
        # tail rows beyond the support stay structurally zero
        assert not mats.a_i[mats.support_len:].any()
        assert not mats.a_q[mats.support_len:].any()

    def test_rejects_odd_subcarriers(self):
        p = PrototypeFilter(coefficients=np.ones(3), overlap=1, subcarriers=3)
        with pytest.raises(ValueError):
            build_linear_matrices(p, 3, 1)


class TestLinearModulate:
    def test_real_impulse_extracts_first_column(self):
        mats = build_linear_matrices(phydyas(16, 4), 16, 2)
        d = np.zeros(32, dtype=complex)
        d[0] = 1.0
        np.testing.assert_allclose(linear_modulate(mats, d), mats.a_i[:, 0])

    def test_energy_additivity(self):
        mats = build_linear_matrices(phydyas(128, 4), 128, 4)
        rng = np.random.default_rng(0)
        d = qam_map(rng.integers(0, 2, 2048), 16)
        x = linear_modulate(mats, d)
        col_e = np.sum(np.abs(mats.a_i[:, 0]) ** 2)
        want = np.sum(np.abs(d.real) ** 2 + np.abs(d.imag) ** 2) * col_e
        assert abs(np.sum(np.abs(x) ** 2) - want) / want <= 0.01

    def test_smooth_edges(self):
        mats = build_linear_matrices(phydyas(128, 4), 128, 4)
        rng = np.random.default_rng(1)
        d = qam_map(rng.integers(0, 2, 2048), 16)
        x = linear_modulate(mats, d)
        peak = np.abs(x).max()
        assert abs(x[0]) <= 1e-3 * peak
        assert abs(x[-1]) <= 1e-3 * peak

    def test_matches_fbmc_burst(self):
        k, m = 128, 4
        mats = build_linear_matrices(phydyas(k, 4), k, m)
        modem = FbmcModem(phydyas(k, 4), k, m)
        rng = np.random.default_rng(2)
        d = qam_map(rng.integers(0, 2, 4 * k * m), 16)
        x_lin = linear_modulate(mats, d)
        x_fbmc = fbmc_modulate(modem, d)
        assert np.abs(x_lin[: len(x_fbmc)] - x_fbmc).max() <= 1e-10
        assert np.abs(x_lin[len(x_fbmc):]).max() == 0.0


class TestLinearDemodulate:
    def test_noiseless_loopback(self):
        mats = build_linear_matrices(phydyas(128, 4), 128, 4)
        rng = np.random.default_rng(3)
        d = qam_map(rng.integers(0, 2, 2048), 16)
        d_hat = linear_demodulate(mats, linear_modulate(mats, d))
        err = np.mean(np.abs(d_hat - d) ** 2) / np.mean(np.abs(d) ** 2)
        assert 10 * np.log10(err) <= -40.0

    def test_zero_input(self):
        mats = build_linear_matrices(phydyas(16, 4), 16, 2)
        assert not linear_demodulate(mats, np.zeros(mats.frame_len)).any()

    def test_dimension_check(self):
        mats = build_linear_matrices(phydyas(16, 4), 16, 2)
        with pytest.raises(ValueError):
            linear_demodulate(mats, np.zeros(10))
