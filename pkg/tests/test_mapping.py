import numpy as np
import pytest

from wavemod import constellation, qam_demap, qam_map, split_oqam


class TestQamMap:
    def test_qpsk_all_zero_bits(self):
        np.testing.assert_allclose(qam_map([0, 0], 4), [(1 + 1j) / np.sqrt(2)])

    @pytest.mark.parametrize("order", [4, 16, 64])
    def test_unit_average_energy(self, order):
        pts = constellation(order)
        assert abs(np.mean(np.abs(pts) ** 2) - 1.0) <= 1e-12

    def test_16qam_grid(self):
        pts = constellation(16)
        assert len(set(np.round(pts, 12))) == 16
        grid = np.array([a + 1j * b for a in (-3, -1, 1, 3) for b in (-3, -1, 1, 3)])
        grid = grid / np.sqrt(10)
        assert set(np.round(pts, 12)) == set(np.round(grid, 12))

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            qam_map([0, 1, 0], 16)
        with pytest.raises(ValueError):
            qam_map([0, 1, 0], 8)


class TestQamDemap:
    @pytest.mark.parametrize("order", [4, 16, 64])
    def test_noiseless_roundtrip(self, order):
        rng = np.random.default_rng(0)
        bits = rng.integers(0, 2, 10_008)
        np.testing.assert_array_equal(qam_demap(qam_map(bits, order), order), bits)

    def test_tie_break_toward_smaller_label(self):
        # A symbol exactly on the boundary between two levels must always
        # resolve to the numerically smaller bit label.
        pts = constellation(16)
        labels = np.arange(16)
        order_by_real = np.argsort(pts.real + 1e-6 * pts.imag)
        # midpoint between two horizontally adjacent points, same imag row
        a, b = pts[order_by_real[0]], pts[order_by_real[4]]
        mid = (a + b) / 2
        got = qam_demap([mid], 16)
        label = int("".join(map(str, got)), 2)
        cand = {int(labels[order_by_real[0]]), int(labels[order_by_real[4]])}
        assert label == min(cand)

    def test_corner_point_with_offset(self):
        target = (3 + 3j) / np.sqrt(10)
        want = qam_demap([target], 16)
        got = qam_demap([target + 0.01], 16)
        np.testing.assert_array_equal(got, want)

    def test_gray_property(self):
        # Points at minimum distance differ in exactly one bit.
        pts = constellation(16)
        nb = 4
        dmin = np.inf
        for i in range(16):
            for j in range(i + 1, 16):
                dmin = min(dmin, abs(pts[i] - pts[j]))
        for i in range(16):
            for j in range(16):
                if i != j and abs(pts[i] - pts[j]) <= dmin * 1.001:
                    assert bin(i ^ j).count("1") == 1, (i, j)


class TestSplitOqam:
    def test_basic(self):
        re, im = split_oqam([1 + 2j])
        np.testing.assert_array_equal(re, [1])
        np.testing.assert_array_equal(im, [2])

    def test_zeros(self):
        re, im = split_oqam(np.zeros(5, dtype=complex))
        assert not re.any() and not im.any()

    def test_exact_recombination(self):
        rng = np.random.default_rng(1)
        d = rng.standard_normal(100) + 1j * rng.standard_normal(100)
        re, im = split_oqam(d)
        assert np.max(np.abs(re + 1j * im - d)) == 0.0
