"""Multicarrier waveform modem library.

Circular and linear-filtered GFDM (plain and OQAM), FBMC-OQAM and CP-OFDM
modems built from explicit transmit matrices, together with channel models,
evaluation metrics (BER, Welch PSD, PAPR CCDF) and a deterministic Monte
Carlo scenario runner.
"""

from .channel import (
    TIFS_TAPS,
    TVFS_GAINS,
    TVFS_GAINS_CORRECTED,
    ChannelRealization,
    EqualizationError,
    apply_channel,
    circulant_matrix,
    complex_awgn,
    draw_tvfs,
    fd_zf_equalize,
    freq_response,
    make_awgn,
    make_tifs,
)
from .fbmc import FbmcModem, burst_length, fbmc_demodulate, fbmc_modulate, synthesis_pulse
from .gfdm import (
    GfdmMatrixSet,
    ReceiverMatrix,
    add_cp,
    build_gfdm_matrix,
    build_oqam_matrices,
    build_receiver,
    gfdm_demodulate,
    gfdm_modulate,
    oqam_demodulate,
    oqam_modulate,
    remove_cp,
)
from .linear import (
    LinearGfdmMatrixSet,
    build_linear_matrices,
    linear_demodulate,
    linear_modulate,
)
from .mapping import constellation, qam_demap, qam_map, split_oqam
from .metrics import (
    MetricCurve,
    ber_count,
    default_papr_thresholds,
    oob_ratio,
    papr,
    papr_batch,
    papr_ccdf,
    welch_psd,
)
from .ofdm import OfdmParams, ofdm_demodulate, ofdm_modulate, theoretical_ber
from .prototypes import (
    PrototypeFilter,
    linear_pad_length,
    phydyas,
    rectangular,
    zero_pad,
)
from .sim import (
    CHANNELS,
    METRICS,
    WAVEFORMS,
    ConfigError,
    ScenarioConfig,
    WaveformParams,
    run_ber,
    run_papr,
    run_psd,
    run_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "CHANNELS",
    "METRICS",
    "TIFS_TAPS",
    "TVFS_GAINS",
    "TVFS_GAINS_CORRECTED",
    "WAVEFORMS",
    "ChannelRealization",
    "ConfigError",
    "EqualizationError",
    "FbmcModem",
    "GfdmMatrixSet",
    "LinearGfdmMatrixSet",
    "MetricCurve",
    "OfdmParams",
    "PrototypeFilter",
    "ReceiverMatrix",
    "ScenarioConfig",
    "WaveformParams",
    "add_cp",
    "apply_channel",
    "ber_count",
    "build_gfdm_matrix",
    "build_linear_matrices",
    "build_oqam_matrices",
    "build_receiver",
    "burst_length",
    "circulant_matrix",
    "complex_awgn",
    "constellation",
    "default_papr_thresholds",
    "draw_tvfs",
    "fbmc_demodulate",
    "fbmc_modulate",
    "fd_zf_equalize",
    "freq_response",
    "gfdm_demodulate",
    "gfdm_modulate",
    "linear_demodulate",
    "linear_modulate",
    "linear_pad_length",
    "make_awgn",
    "make_tifs",
    "ofdm_demodulate",
    "ofdm_modulate",
    "oob_ratio",
    "oqam_demodulate",
    "oqam_modulate",
    "papr",
    "papr_batch",
    "papr_ccdf",
    "phydyas",
    "qam_demap",
    "qam_map",
    "rectangular",
    "remove_cp",
    "run_ber",
    "run_papr",
    "run_psd",
    "run_scenario",
    "split_oqam",
    "synthesis_pulse",
    "theoretical_ber",
    "welch_psd",
    "zero_pad",
]
