"""Scenario runner: BER, PSD and PAPR experiments over the five waveforms.

Every frame draws its bits, fading taps and noise from an RNG stream keyed by
(master seed, scenario id, frame index), so results are bit-identical across
runs and worker counts.  Frames are processed in fixed-size chunks; heavy
linear algebra is batched per chunk.
"""

import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import channel as chan
from . import fbmc as fbmc_mod
from . import gfdm as gfdm_mod
from . import linear as linear_mod
from .mapping import qam_map, qam_demap
from .metrics import (
    MetricCurve,
    ber_count,
    default_papr_thresholds,
    papr_batch,
    papr_ccdf,
    welch_psd,
)
from .ofdm import OfdmParams, ofdm_demodulate, ofdm_modulate, theoretical_ber
from .prototypes import phydyas, rectangular

WAVEFORMS = ("ofdm", "gfdm", "gfdm_oqam_circular", "linear_gfdm", "fbmc")
CHANNELS = ("awgn", "tifs", "tvfs")
METRICS = ("ber", "psd", "papr")

_CHUNK = 64


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the offending field."""


@dataclass(frozen=True)
class WaveformParams:
    qam_order: int = 16
    subcarriers: int = 128
    subsymbols: int = 4
    overlap: int = 4
    prototype: str | None = None  # None = per-waveform default
    cp_len: int = 32
    n_fft: int = 512  # OFDM only
    active: tuple | None = None  # active subcarrier indices; None = all
    receiver: str = "zf"  # plain GFDM receiver kind


@dataclass(frozen=True)
class ScenarioConfig:
    waveform: str
    channel: str = "awgn"
    metric: str = "ber"
    ebn0_grid_db: tuple = (0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0)
    frames: int = 1000
    seed: int = 0
    waveform_params: WaveformParams = field(default_factory=WaveformParams)
    output_path: str | None = None
    error_target: int | None = 500
    min_bits: int = 100_000
    tvfs_corrected: bool = False

    def validate(self):
        if self.waveform not in WAVEFORMS:
            raise ConfigError(f"waveform: {self.waveform!r} not in {WAVEFORMS}")
        if self.channel not in CHANNELS:
            raise ConfigError(f"channel: {self.channel!r} not in {CHANNELS}")
        if self.metric not in METRICS:
            raise ConfigError(f"metric: {self.metric!r} not in {METRICS}")
        if self.frames < 1:
            raise ConfigError(f"frames: must be >= 1, got {self.frames}")
        if self.metric == "ber" and len(self.ebn0_grid_db) == 0:
            raise ConfigError("ebn0_grid_db: must be nonempty for BER runs")
        wp = self.waveform_params
        if wp.qam_order not in (4, 16, 64):
            raise ConfigError(f"qam_order: {wp.qam_order} not in (4, 16, 64)")
        if wp.subcarriers < 2:
            raise ConfigError(f"subcarriers: must be >= 2, got {wp.subcarriers}")
        if wp.subsymbols < 1:
            raise ConfigError(f"subsymbols: must be >= 1, got {wp.subsymbols}")
        if wp.receiver not in ("zf", "mf", "mmse"):
            raise ConfigError(f"receiver: {wp.receiver!r} not in ('zf', 'mf', 'mmse')")


def n_threads() -> int:
    try:
        return max(1, int(os.environ.get("WAVEMOD_THREADS", "1")))
    except ValueError:
        return 1


def _scenario_id(config: ScenarioConfig, point_index: int = 0) -> int:
    tag = f"{config.metric}|{config.waveform}|{config.channel}|{point_index}"
    return zlib.crc32(tag.encode())


def frame_rng(seed: int, scenario_id: int, frame_index: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=[seed & 0xFFFFFFFFFFFFFFFF, scenario_id, frame_index])
    )


def _next_pow2(n: int) -> int:
    return 1 << (n - 1).bit_length()


# ---------------------------------------------------------------------------
# Modem adapters: a uniform transmit/receive surface over the five waveforms.
# Data enters and leaves as (n_data, batch) arrays; frames travel as
# (samples, batch) arrays.


class _OfdmAdapter:
    name = "ofdm"

    def __init__(self, wp: WaveformParams):
        active = None if wp.active is None else np.asarray(wp.active, dtype=int)
        self.params = OfdmParams(n_fft=wp.n_fft, n_cp=wp.cp_len, active=active)
        self.n_data = len(self.params.active_indices)
        self.frame_len = wp.n_fft + wp.cp_len
        self.support_len = self.frame_len

    def transmit(self, d):
        return ofdm_modulate(d, self.params)

    def receive(self, y, taps, noise_var):
        hf = chan.freq_response(taps, self.params.n_fft)
        return ofdm_demodulate(y, self.params, hf)


class _GfdmAdapter:
    name = "gfdm"

    def __init__(self, wp: WaveformParams):
        proto_name = wp.prototype or "rect"
        k, m = wp.subcarriers, wp.subsymbols
        p = phydyas(k, wp.overlap) if proto_name == "phydyas" else rectangular(k)
        self.mats = gfdm_mod.build_gfdm_matrix(p, k, m)
        self.receiver_kind = wp.receiver
        self.cp_len = wp.cp_len
        self.core_len = k * m
        self.frame_len = self.core_len + wp.cp_len
        self.support_len = self.frame_len
        self._mask = _active_mask(wp, k, m)
        self.n_data = int(self._mask.sum())
        self._rx_cache = {}

    def _receiver(self, noise_var):
        if self.receiver_kind != "mmse":
            key = self.receiver_kind
        else:
            key = ("mmse", round(float(noise_var), 15))
        if key not in self._rx_cache:
            self._rx_cache[key] = gfdm_mod.build_receiver(
                self.mats, self.receiver_kind, noise_var=noise_var
            )
        return self._rx_cache[key]

    def transmit(self, d):
        full = _scatter(d, self._mask)
        x = gfdm_mod.gfdm_modulate(self.mats, full)
        return np.concatenate([x[-self.cp_len:], x], axis=0) if self.cp_len else x

    def receive(self, y, taps, noise_var):
        core = y[self.cp_len:self.cp_len + self.core_len]
        y_eq = chan.fd_zf_equalize(core.T, taps, self.core_len).T
        d_hat = gfdm_mod.gfdm_demodulate(self._receiver(noise_var), y_eq)
        return d_hat[self._mask]


class _CircularOqamAdapter:
    name = "gfdm_oqam_circular"

    def __init__(self, wp: WaveformParams):
        k, m = wp.subcarriers, wp.subsymbols
        proto_name = wp.prototype or "phydyas"
        p = phydyas(k, wp.overlap) if proto_name == "phydyas" else rectangular(k)
        self.mats = gfdm_mod.build_oqam_matrices(p, k, m)
        self.cp_len = wp.cp_len
        self.core_len = k * m
        self.frame_len = self.core_len + wp.cp_len
        self.support_len = self.frame_len
        self._mask = _active_mask(wp, k, m)
        self.n_data = int(self._mask.sum())

    def transmit(self, d):
        full = _scatter(d, self._mask)
        x = gfdm_mod.oqam_modulate(self.mats, full)
        return np.concatenate([x[-self.cp_len:], x], axis=0) if self.cp_len else x

    def receive(self, y, taps, noise_var):
        core = y[self.cp_len:self.cp_len + self.core_len]
        y_eq = chan.fd_zf_equalize(core.T, taps, self.core_len).T
        return gfdm_mod.oqam_demodulate(self.mats, y_eq)[self._mask]


class _LinearGfdmAdapter:
    name = "linear_gfdm"

    def __init__(self, wp: WaveformParams):
        k, m = wp.subcarriers, wp.subsymbols
        self.mats = linear_mod.build_linear_matrices(phydyas(k, wp.overlap), k, m)
        self.frame_len = self.mats.frame_len
        self.support_len = self.mats.support_len
        self.cp_len = 0
        self._mask = _active_mask(wp, k, m)
        self.n_data = int(self._mask.sum())

    def transmit(self, d):
        return linear_mod.linear_modulate(self.mats, _scatter(d, self._mask))

    def receive(self, y, taps, noise_var):
        y_eq = chan.fd_zf_equalize(y.T, taps, _next_pow2(y.shape[0])).T
        return linear_mod.linear_demodulate(self.mats, y_eq[: self.frame_len])[self._mask]


class _FbmcAdapter:
    name = "fbmc"

    def __init__(self, wp: WaveformParams):
        k, m = wp.subcarriers, wp.subsymbols
        self.modem = fbmc_mod.FbmcModem(phydyas(k, wp.overlap), k, m)
        self.frame_len = self.modem.burst_len
        self.support_len = self.frame_len
        self.cp_len = 0
        self._mask = _active_mask(wp, k, m)
        self.n_data = int(self._mask.sum())

    def transmit(self, d):
        return fbmc_mod.fbmc_modulate(self.modem, _scatter(d, self._mask))

    def receive(self, y, taps, noise_var):
        y_eq = chan.fd_zf_equalize(y.T, taps, _next_pow2(y.shape[0])).T
        return fbmc_mod.fbmc_demodulate(self.modem, y_eq[: self.frame_len])[self._mask]


def _active_mask(wp: WaveformParams, k: int, m: int) -> np.ndarray:
    mask = np.zeros(k * m, dtype=bool)
    if wp.active is None:
        mask[:] = True
    else:
        active = np.asarray(wp.active, dtype=int)
        for mm in range(m):
            mask[mm * k + active] = True
    return mask


def _scatter(d, mask) -> np.ndarray:
    full = np.zeros((len(mask),) + d.shape[1:], dtype=complex)
    full[mask] = d
    return full


def build_adapter(config: ScenarioConfig):
    wp = config.waveform_params
    return {
        "ofdm": _OfdmAdapter,
        "gfdm": _GfdmAdapter,
        "gfdm_oqam_circular": _CircularOqamAdapter,
        "linear_gfdm": _LinearGfdmAdapter,
        "fbmc": _FbmcAdapter,
    }[config.waveform](wp)


# ---------------------------------------------------------------------------
# Frame pipeline


def _draw_chunk(config: ScenarioConfig, adapter, scenario_id, start, count, noise_len):
    """Per-frame draws for frames [start, start+count): bits, taps, noise."""
    order = config.waveform_params.qam_order
    bits_per_frame = adapter.n_data * int(np.log2(order))
    bits = np.empty((count, bits_per_frame), dtype=np.int64)
    taps_list = []
    noise = np.empty((count, noise_len), dtype=complex) if noise_len else None
    for j in range(count):
        rng = frame_rng(config.seed, scenario_id, start + j)
        bits[j] = rng.integers(0, 2, bits_per_frame)
        if config.channel == "tvfs":
            taps_list.append(chan.draw_tvfs(rng, corrected=config.tvfs_corrected).taps)
        if noise_len:
            noise[j] = chan.complex_awgn(rng, noise_len, 1.0)
    return bits, taps_list, noise


def _channel_taps(config: ScenarioConfig) -> np.ndarray | None:
    if config.channel == "awgn":
        return np.array([1.0 + 0j])
    if config.channel == "tifs":
        return chan.TIFS_TAPS.astype(complex)
    return None  # tvfs: per frame


def _convolve_rows(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """Row-wise linear convolution via FFT; output has the full length."""
    out_len = x.shape[1] + len(taps) - 1
    fft_len = _next_pow2(out_len)
    hf = chan.freq_response(taps, fft_len)
    y = np.fft.ifft(np.fft.fft(x, fft_len, axis=1) * hf, axis=1)
    return y[:, :out_len]


def _process_ber_chunk(config, adapter, scenario_id, start, count, noise_var):
    order = config.waveform_params.qam_order
    taps_fixed = _channel_taps(config)
    tail = {"awgn": 0, "tifs": len(chan.TIFS_TAPS) - 1, "tvfs": len(chan.TVFS_GAINS) - 1}[
        config.channel
    ]
    noise_len = adapter.frame_len + tail
    bits, taps_list, noise = _draw_chunk(
        config, adapter, scenario_id, start, count, noise_len
    )
    d = qam_map(bits.ravel(), order).reshape(count, adapter.n_data)
    x = adapter.transmit(d.T)  # (frame_len, count)
    if taps_fixed is not None:
        y = _convolve_rows(x.T, taps_fixed)
        groups = [(taps_fixed, np.arange(count))]
    else:
        y = np.empty((count, noise_len), dtype=complex)
        groups = [(taps_list[j], np.array([j])) for j in range(count)]
        for j in range(count):
            y[j] = _convolve_rows(x.T[j:j + 1], taps_list[j])[0, :noise_len]
    y = y[:, :noise_len] + np.sqrt(noise_var) * noise
    errors = 0
    for taps, rows in groups:
        d_hat = adapter.receive(y[rows].T, taps, noise_var)
        rx_bits = qam_demap(d_hat.T.ravel(), order)
        e, _, _ = ber_count(bits[rows].ravel(), rx_bits)
        errors += e
    return errors, bits.size


def _parallel_rounds(process, total, chunk=_CHUNK, stop=None):
    """Run chunk jobs in fixed order, optionally threaded, until done/stopped.

    ``process(start, count)`` returns a tuple of accumulables; accumulation
    order is by chunk index, so results do not depend on the thread count.
    """
    threads = n_threads()
    acc = None
    start = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while start < total:
            round_jobs = []
            for _ in range(threads):
                if start >= total:
                    break
                count = min(chunk, total - start)
                round_jobs.append(pool.submit(process, start, count))
                start += count
            for job in round_jobs:
                res = job.result()
                acc = res if acc is None else tuple(a + b for a, b in zip(acc, res))
            if stop is not None and stop(acc):
                break
    return acc


def run_ber(config: ScenarioConfig) -> MetricCurve:
    """Monte Carlo BER over the Eb/N0 grid, with the closed-form reference."""
    config.validate()
    if config.metric != "ber":
        raise ConfigError(f"metric: expected 'ber', got {config.metric!r}")
    adapter = build_adapter(config)
    order = config.waveform_params.qam_order
    bits_per_symbol = np.log2(order)
    grid = np.asarray(config.ebn0_grid_db, dtype=float)
    bers, err_col, bit_col = [], [], []
    for idx, ebn0_db in enumerate(grid):
        noise_var = 1.0 / (bits_per_symbol * 10.0 ** (ebn0_db / 10.0))
        sid = _scenario_id(config, idx)

        def process(start, count):
            return _process_ber_chunk(config, adapter, sid, start, count, noise_var)

        def stop(acc):
            errors, bits = acc
            return (
                config.error_target is not None
                and errors >= config.error_target
                and bits >= config.min_bits
            )

        errors, bits = _parallel_rounds(process, config.frames, stop=stop)
        bers.append(errors / bits)
        err_col.append(errors)
        bit_col.append(bits)
    theory = _theory_reference(config, grid)
    curve = MetricCurve(
        grid,
        np.array(bers),
        kind="BER",
        meta=_meta(config),
        extra={"theory": theory, "errors": np.array(err_col), "bits": np.array(bit_col)},
    )
    _maybe_write(curve, config)
    return curve


def _theory_reference(config: ScenarioConfig, grid: np.ndarray) -> np.ndarray:
    order = config.waveform_params.qam_order
    if config.channel == "tvfs":
        gains = (
            chan.TVFS_GAINS_CORRECTED if config.tvfs_corrected else chan.TVFS_GAINS
        )
        mean_power = float(np.sum(gains ** 2))
        shift = 10.0 * np.log10(mean_power)
        return theoretical_ber(grid + shift, order, channel="rayleigh")
    return theoretical_ber(grid, order, channel="awgn")


def psd_default_active(subcarriers: int) -> tuple:
    """Centered allocation leaving guard bands for out-of-band measurements."""
    half = int(round(subcarriers * 7 / 32))
    return tuple(np.arange(-half, half) % subcarriers)


def psd_band_edge(config: ScenarioConfig) -> float:
    """Upper band edge (cycles/sample) of the default centered allocation."""
    wp = config.waveform_params
    k = wp.n_fft if config.waveform == "ofdm" else wp.subcarriers
    active = wp.active if wp.active is not None else psd_default_active(k)
    freqs = (np.asarray(active) % k) / k
    freqs = np.where(freqs >= 0.5, freqs - 1.0, freqs)
    return float(freqs.max())


def run_psd(config: ScenarioConfig) -> MetricCurve:
    """Welch PSD of a continuous multicarrier stream.

    Prefix-free waveforms are overlap-added at the data-symbol stride;
    block waveforms are concatenated back to back.  When no explicit
    allocation is given, a centered sub-band is used so that out-of-band
    behavior is observable.
    """
    config.validate()
    if config.metric != "psd":
        raise ConfigError(f"metric: expected 'psd', got {config.metric!r}")
    wp = config.waveform_params
    if wp.active is None:
        k = wp.n_fft if config.waveform == "ofdm" else wp.subcarriers
        config = replace(config, waveform_params=replace(wp, active=psd_default_active(k)))
        wp = config.waveform_params
    adapter = build_adapter(config)
    order = wp.qam_order
    sid = _scenario_id(config)
    if config.waveform in ("linear_gfdm", "fbmc"):
        stride = wp.subcarriers * wp.subsymbols
        stream = np.zeros(
            (config.frames - 1) * stride + adapter.frame_len, dtype=complex
        )
    else:
        stride = adapter.frame_len
        stream = np.zeros(config.frames * adapter.frame_len, dtype=complex)
    start = 0
    while start < config.frames:
        count = min(_CHUNK, config.frames - start)
        bits, _, _ = _draw_chunk(config, adapter, sid, start, count, 0)
        d = qam_map(bits.ravel(), order).reshape(count, adapter.n_data)
        x = adapter.transmit(d.T).T  # (count, frame_len)
        for j in range(count):
            off = (start + j) * stride
            stream[off:off + adapter.frame_len] += x[j]
        start += count
    curve = welch_psd(stream, meta=_meta(config))
    _maybe_write(curve, config)
    return curve


def run_papr(config: ScenarioConfig) -> MetricCurve:
    """Per-frame PAPR CCDF on the standard threshold grid.

    PAPR is measured over each frame's signal-bearing support at baseband
    rate, with no oversampling; the channel plays no role here.
    """
    config.validate()
    if config.metric != "papr":
        raise ConfigError(f"metric: expected 'papr', got {config.metric!r}")
    adapter = build_adapter(config)
    order = config.waveform_params.qam_order
    sid = _scenario_id(config)

    def process(start, count):
        bits, _, _ = _draw_chunk(config, adapter, sid, start, count, 0)
        d = qam_map(bits.ravel(), order).reshape(count, adapter.n_data)
        x = adapter.transmit(d.T).T
        return (list(papr_batch(x[:, : adapter.support_len])),)

    (paprs,) = _parallel_rounds(process, config.frames, chunk=4 * _CHUNK)
    curve = papr_ccdf(np.array(paprs), default_papr_thresholds(), meta=_meta(config))
    _maybe_write(curve, config)
    return curve


def _meta(config: ScenarioConfig) -> dict:
    wp = config.waveform_params
    return {
        "waveform": config.waveform,
        "channel": config.channel,
        "metric": config.metric,
        "seed": config.seed,
        "frames": config.frames,
        "qam_order": wp.qam_order,
        "subcarriers": wp.subcarriers,
        "subsymbols": wp.subsymbols,
    }


def _maybe_write(curve: MetricCurve, config: ScenarioConfig):
    if config.output_path:
        curve.write_csv(config.output_path)


def run_scenario(config: ScenarioConfig) -> MetricCurve:
    return {"ber": run_ber, "psd": run_psd, "papr": run_papr}[config.metric](config)
