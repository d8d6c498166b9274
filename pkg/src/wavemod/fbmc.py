"""FBMC-OQAM transceiver built from explicit synthesis/analysis pulses.

Each subcarrier/time-slot pair gets two pulses: the in-phase pulse at offset
m*K and the quadrature pulse delayed by half a symbol period.  The burst is
the superposition of all pulses weighted by the real and imaginary symbol
parts; the receiver correlates against the same pulses.
"""

from dataclasses import dataclass, field

import numpy as np

from .prototypes import PrototypeFilter


def burst_length(p: PrototypeFilter, subcarriers: int, m_symbols: int) -> int:
    return p.length + (2 * m_symbols - 1) * subcarriers // 2


def synthesis_pulse(
    k: int,
    m: int,
    part: str,
    p: PrototypeFilter,
    subcarriers: int,
    length: int | None = None,
) -> np.ndarray:
    """Shifted, subcarrier-modulated, quarter-turn-rotated prototype pulse.

    ``part`` selects the in-phase ("I") or quadrature ("Q") pulse; the latter
    is the prototype delayed by an extra K/2 samples.  The modulating
    exponential runs over the absolute sample index.
    """
    if not 0 <= k < subcarriers:
        raise ValueError(f"subcarrier index {k} out of range [0, {subcarriers})")
    if part not in ("I", "Q"):
        raise ValueError(f"part must be 'I' or 'Q', got {part!r}")
    offset = m * subcarriers + (subcarriers // 2 if part == "Q" else 0)
    if length is None:
        length = offset + p.length
    pulse = np.zeros(length, dtype=complex)
    stop = min(length, offset + p.length)
    pulse[offset:stop] = p.coefficients[: stop - offset]
    n = np.arange(length)
    pulse *= np.exp(2j * np.pi * k * n / subcarriers) * np.exp(1j * np.pi * k / 2)
    return pulse


@dataclass
class FbmcModem:
    """Pulse bank for a finite burst of ``m_symbols`` complex OQAM symbols.

    Symbol (k, m) sits at flat index m*K + k, matching the matrix modems.
    """

    prototype: PrototypeFilter
    subcarriers: int
    m_symbols: int
    _gi: np.ndarray = field(init=False, repr=False)
    _gq: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.subcarriers % 2 != 0:
            raise ValueError("subcarriers must be even for OQAM")
        length = burst_length(self.prototype, self.subcarriers, self.m_symbols)
        n_sym = self.subcarriers * self.m_symbols
        self._gi = np.empty((length, n_sym), dtype=complex)
        self._gq = np.empty((length, n_sym), dtype=complex)
        for m in range(self.m_symbols):
            for k in range(self.subcarriers):
                col = m * self.subcarriers + k
                self._gi[:, col] = synthesis_pulse(
                    k, m, "I", self.prototype, self.subcarriers, length
                )
                self._gq[:, col] = synthesis_pulse(
                    k, m, "Q", self.prototype, self.subcarriers, length
                )

    @property
    def burst_len(self) -> int:
        return self._gi.shape[0]

    @property
    def n_symbols(self) -> int:
        return self.subcarriers * self.m_symbols


def fbmc_modulate(modem: FbmcModem, d) -> np.ndarray:
    """Finite-burst OQAM synthesis: real parts on I pulses, imaginary on Q."""
    d = np.asarray(d, dtype=complex)
    if d.shape[0] != modem.n_symbols:
        raise ValueError(f"expected {modem.n_symbols} symbols, got {d.shape[0]}")
    return modem._gi @ d.real + 1j * (modem._gq @ d.imag)


def fbmc_demodulate(modem: FbmcModem, y_eq) -> np.ndarray:
    """Analysis bank on an equalized burst, gain-normalized per symbol."""
    y_eq = np.asarray(y_eq, dtype=complex)
    if y_eq.shape[0] != modem.burst_len:
        raise ValueError(f"expected {modem.burst_len} samples, got {y_eq.shape[0]}")
    gain_i = np.sum(np.abs(modem._gi) ** 2, axis=0)
    gain_q = np.sum(np.abs(modem._gq) ** 2, axis=0)
    if y_eq.ndim > 1:
        gain_i = gain_i[:, None]
        gain_q = gain_q[:, None]
    re = (modem._gi.conj().T @ y_eq).real / gain_i
    im = (modem._gq.conj().T @ y_eq).imag / gain_q
    return re + 1j * im
