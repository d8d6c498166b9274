"""Evaluation instruments: bit error counting, Welch PSD, PAPR and its CCDF."""

from dataclasses import dataclass, field

import numpy as np
from scipy import signal as sps


@dataclass
class MetricCurve:
    """Ordered (abscissa, value) pairs with a kind tag and free-form metadata."""

    abscissa: np.ndarray
    values: np.ndarray
    kind: str  # "BER" | "PSD_dB" | "CCDF"
    meta: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)  # named companion columns

    def __post_init__(self):
        self.abscissa = np.asarray(self.abscissa, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if np.any(np.diff(self.abscissa) <= 0):
            raise ValueError("abscissas must be strictly increasing")

    def write_csv(self, path) -> None:
        """Header naming kind and meta, then full-precision value rows."""
        meta = " ".join(f"{k}={v}" for k, v in self.meta.items())
        names = ["abscissa", "value"] + list(self.extra)
        cols = [self.abscissa, self.values] + [np.asarray(c) for c in self.extra.values()]
        with open(path, "w") as f:
            f.write(f"# kind={self.kind} {meta}".rstrip() + "\n")
            f.write("# " + ",".join(names) + "\n")
            for row in zip(*cols):
                f.write(",".join(repr(float(v)) for v in row) + "\n")

    def interpolate(self, x: float) -> float:
        return float(np.interp(x, self.abscissa, self.values))


def ber_count(tx_bits, rx_bits) -> tuple[int, int, float]:
    """Exact Hamming error count and ratio between two equal-length streams."""
    tx = np.asarray(tx_bits).ravel()
    rx = np.asarray(rx_bits).ravel()
    if tx.shape != rx.shape:
        raise ValueError(f"length mismatch: {tx.shape} vs {rx.shape}")
    errors = int(np.count_nonzero(tx != rx))
    total = tx.size
    return errors, total, errors / total if total else 0.0


def welch_psd(
    frames,
    seg_len: int = 2048,
    overlap_frac: float = 0.5,
    window: str = "hann",
    meta: dict | None = None,
) -> MetricCurve:
    """Averaged windowed periodogram, two-sided, plateau-normalized to 0 dB.

    ``frames`` may be a single sample stream or a sequence of frames that are
    concatenated back to back before estimation.
    """
    if not 0 <= overlap_frac < 1:
        raise ValueError("overlap_frac must be in [0, 1)")
    if isinstance(frames, np.ndarray) and frames.ndim == 1:
        stream = frames
    else:
        parts = [np.asarray(f) for f in frames]
        if not parts:
            raise ValueError("no input frames")
        stream = np.concatenate(parts)
    if len(stream) < seg_len:
        raise ValueError(f"need at least {seg_len} samples, got {len(stream)}")
    freqs, pxx = sps.welch(
        stream,
        fs=1.0,
        window=window,
        nperseg=seg_len,
        noverlap=int(seg_len * overlap_frac),
        return_onesided=False,
        detrend=False,
        scaling="density",
    )
    freqs = np.fft.fftshift(freqs)
    pxx = np.fft.fftshift(pxx)
    plateau = np.median(pxx[pxx >= pxx.max() / 2.0])
    vals_db = 10.0 * np.log10(np.maximum(pxx / plateau, 1e-300))
    return MetricCurve(freqs, vals_db, kind="PSD_dB", meta=dict(meta or {}))


def papr(frame) -> float:
    """Peak-to-average power ratio of one frame, in dB."""
    frame = np.asarray(frame)
    power = np.abs(frame) ** 2
    mean = power.mean() if power.size else 0.0
    if mean == 0.0:
        raise ValueError("PAPR undefined for an all-zero frame")
    return float(10.0 * np.log10(power.max() / mean))


def papr_batch(frames: np.ndarray) -> np.ndarray:
    """Per-row PAPR in dB for a (n_frames, n_samples) array."""
    power = np.abs(frames) ** 2
    mean = power.mean(axis=-1)
    if np.any(mean == 0.0):
        raise ValueError("PAPR undefined for an all-zero frame")
    return 10.0 * np.log10(power.max(axis=-1) / mean)


def papr_ccdf(paprs, thresholds, meta: dict | None = None) -> MetricCurve:
    """Empirical exceedance probability at each threshold."""
    paprs = np.sort(np.asarray(paprs, dtype=float))
    if paprs.size == 0:
        raise ValueError("no PAPR samples")
    thresholds = np.asarray(thresholds, dtype=float)
    exceed = paprs.size - np.searchsorted(paprs, thresholds, side="right")
    return MetricCurve(thresholds, exceed / paprs.size, kind="CCDF", meta=dict(meta or {}))


def default_papr_thresholds() -> np.ndarray:
    return np.arange(6.0, 15.0 + 0.25, 0.5)


def oob_ratio(psd: MetricCurve, band_edge: float, offset: float) -> float:
    """Plateau level minus the PSD value ``offset`` beyond the band edge, in dB.

    Positive results mean suppression relative to the in-band plateau.
    """
    target = band_edge + offset
    if target < psd.abscissa[0] or target > psd.abscissa[-1]:
        raise ValueError(f"offset frequency {target} outside the PSD support")
    vals = psd.values
    plateau = np.median(vals[vals >= vals.max() - 3.0])
    return float(plateau - psd.interpolate(target))
