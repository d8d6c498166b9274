"""Channel models, noise injection and frequency-domain ZF equalization.

Three profiles are provided: ideal AWGN (single unit tap), a fixed 8-tap
time-invariant frequency-selective response, and a per-frame-drawn 4-tap
block-fading response.  Frames protected by a cyclic prefix use circular
convolution semantics; the prefix-free waveforms use linear convolution and
full-frame frequency-domain zero forcing.
"""

from dataclasses import dataclass

import numpy as np

TIFS_TAPS = np.array([1.0, 0.0, 0.0, 0.0, 0.4, 0.0, 0.0, 0.2])

# Per-tap gains of the block-fading profile, taken verbatim from the source
# configuration: the middle taps are vanishingly small, leaving an almost
# flat Rayleigh channel.  The corrected variant replaces them with gains that
# actually produce frequency selectivity.
TVFS_GAINS = np.array([1.0, 0.0, 0.01 ** 2, 0.02 ** 2]) / np.sqrt(2.0)
TVFS_GAINS_CORRECTED = np.array([1.0, 0.4, 0.01, 0.02]) / np.sqrt(2.0)


class EqualizationError(RuntimeError):
    """Raised when a channel frequency bin is too small to invert."""

    def __init__(self, bin_index: int, magnitude: float):
        self.bin_index = bin_index
        self.magnitude = magnitude
        super().__init__(
            f"ill-conditioned equalization: bin {bin_index} has magnitude {magnitude:.3e}"
        )


@dataclass(frozen=True)
class ChannelRealization:
    taps: np.ndarray
    mode: str  # "linear_convolution" | "circular_convolution"
    label: str  # "AWGN" | "TIFS" | "TVFS"


def make_awgn(mode: str = "circular_convolution") -> ChannelRealization:
    return ChannelRealization(taps=np.array([1.0 + 0j]), mode=mode, label="AWGN")


def make_tifs(mode: str = "circular_convolution") -> ChannelRealization:
    return ChannelRealization(taps=TIFS_TAPS.astype(complex), mode=mode, label="TIFS")


def draw_tvfs(
    rng: np.random.Generator,
    mode: str = "circular_convolution",
    corrected: bool = False,
) -> ChannelRealization:
    """Draw one block-fading realization: gain_n times standard complex Gaussian."""
    gains = TVFS_GAINS_CORRECTED if corrected else TVFS_GAINS
    r = (rng.standard_normal(4) + 1j * rng.standard_normal(4)) / np.sqrt(2.0)
    return ChannelRealization(taps=gains * r, mode=mode, label="TVFS")


def complex_awgn(rng: np.random.Generator, shape, noise_var: float) -> np.ndarray:
    """I.i.d. circular complex Gaussian noise with total per-sample variance."""
    sigma = np.sqrt(noise_var / 2.0)
    return sigma * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def apply_channel(
    x,
    ch: ChannelRealization,
    rng: np.random.Generator | None = None,
    noise_var: float = 0.0,
) -> np.ndarray:
    """Convolve with the channel taps and add white Gaussian noise.

    Linear mode lengthens the frame by ``len(taps) - 1`` samples; circular
    mode keeps the frame length (the cyclic-prefix-equivalent view).
    """
    x = np.asarray(x, dtype=complex)
    if len(ch.taps) == 0:
        raise ValueError("channel has no taps")
    if noise_var < 0:
        raise ValueError("noise_var must be >= 0")
    if ch.mode == "linear_convolution":
        y = np.convolve(x, ch.taps)
    elif ch.mode == "circular_convolution":
        if len(ch.taps) > len(x):
            raise ValueError("more taps than samples in circular mode")
        h = np.zeros(len(x), dtype=complex)
        h[: len(ch.taps)] = ch.taps
        y = np.fft.ifft(np.fft.fft(x) * np.fft.fft(h))
    else:
        raise ValueError(f"unknown channel mode {ch.mode!r}")
    if noise_var > 0:
        if rng is None:
            raise ValueError("noise injection requires an rng")
        y = y + complex_awgn(rng, y.shape, noise_var)
    return y


def circulant_matrix(taps, n: int) -> np.ndarray:
    """N x N circulant matrix whose first column is the zero-padded taps."""
    taps = np.asarray(taps, dtype=complex)
    if len(taps) > n:
        raise ValueError(f"{len(taps)} taps do not fit a {n}x{n} circulant")
    first = np.zeros(n, dtype=complex)
    first[: len(taps)] = taps
    h = np.empty((n, n), dtype=complex)
    for j in range(n):
        h[:, j] = np.roll(first, j)
    return h


def freq_response(taps, fft_len: int) -> np.ndarray:
    taps = np.asarray(taps, dtype=complex)
    h = np.zeros(fft_len, dtype=complex)
    h[: len(taps)] = taps
    return np.fft.fft(h)


def fd_zf_equalize(y, taps, fft_len: int, min_bin: float = 1e-12) -> np.ndarray:
    """Bin-wise zero-forcing over an ``fft_len``-point transform.

    The input is zero-padded to ``fft_len``, divided by the channel response
    and transformed back; the first ``len(y)`` samples are returned.  Bins
    with magnitude below ``min_bin`` raise :class:`EqualizationError`.
    """
    y = np.asarray(y, dtype=complex)
    if fft_len < y.shape[-1]:
        raise ValueError(f"fft_len {fft_len} shorter than frame {y.shape[-1]}")
    hf = freq_response(taps, fft_len)
    mags = np.abs(hf)
    worst = int(np.argmin(mags))
    if mags[worst] < min_bin:
        raise EqualizationError(worst, float(mags[worst]))
    yf = np.fft.fft(y, n=fft_len, axis=-1)
    out = np.fft.ifft(yf / hf, axis=-1)
    return out[..., : y.shape[-1]]
