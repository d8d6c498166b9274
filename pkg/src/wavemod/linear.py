"""Linear GFDM: wrap-free transmit matrices built from a zero-padded prototype.

Padding the prototype so that no column shift ever wraps turns the circular
modem into a linear filter bank: every column has contiguous support, the
frame edges ramp smoothly to zero, and the emitted signal coincides with the
FBMC-OQAM burst for the same data.
"""

from dataclasses import dataclass

import numpy as np

from .prototypes import PrototypeFilter, linear_pad_length


@dataclass(frozen=True)
class LinearGfdmMatrixSet:
    """Extended-frame OQAM matrix pair and derived dimensions.

    The matrices have ``frame_len`` rows and K*M columns; ``support_len`` is
    the index one past the last row that can carry signal (the remaining rows
    are structural zeros from the padding arithmetic).
    """

    subcarriers: int
    subsymbols: int
    a_i: np.ndarray
    a_q: np.ndarray
    support_len: int

    @property
    def frame_len(self) -> int:
        return self.a_i.shape[0]

    @property
    def n_symbols(self) -> int:
        return self.subcarriers * self.subsymbols

    @property
    def b_i(self) -> np.ndarray:
        return self.a_i.conj().T

    @property
    def b_q(self) -> np.ndarray:
        return self.a_q.conj().T


def build_linear_matrices(
    p: PrototypeFilter,
    subcarriers: int,
    subsymbols: int,
    subcarrier_phase: bool = True,
) -> LinearGfdmMatrixSet:
    """Build the wrap-free matrix pair over ``len(p) + pad`` output samples.

    In-phase columns place the prototype at offset m*K; quadrature columns at
    m*K + K/2.  The subcarrier exponential runs over the absolute sample
    index, matching the FBMC synthesis pulses, so the quadrature columns
    equal the shifted in-phase columns only up to a per-subcarrier sign.
    """
    if subcarriers % 2 != 0:
        raise ValueError(f"subcarriers must be even, got {subcarriers}")
    lp = p.length
    pad = linear_pad_length(subcarriers, subsymbols)
    n_ext = lp + pad
    max_offset = (subsymbols - 1) * subcarriers + subcarriers // 2
    if max_offset + lp > n_ext:
        raise ValueError(
            f"prototype of length {lp} does not fit the {n_ext}-sample frame"
        )
    n = np.arange(n_ext)
    n_sym = subcarriers * subsymbols
    a_i = np.zeros((n_ext, n_sym), dtype=complex)
    a_q = np.zeros((n_ext, n_sym), dtype=complex)
    carriers = np.exp(2j * np.pi * np.outer(n, np.arange(subcarriers)) / subcarriers)
    if subcarrier_phase:
        carriers = carriers * np.exp(1j * np.pi * np.arange(subcarriers) / 2)[None, :]
    for m in range(subsymbols):
        sl_i = np.zeros(n_ext)
        sl_i[m * subcarriers:m * subcarriers + lp] = p.coefficients
        sl_q = np.zeros(n_ext)
        off = m * subcarriers + subcarriers // 2
        sl_q[off:off + lp] = p.coefficients
        cols = slice(m * subcarriers, (m + 1) * subcarriers)
        a_i[:, cols] = sl_i[:, None] * carriers
        a_q[:, cols] = sl_q[:, None] * carriers
    return LinearGfdmMatrixSet(
        subcarriers=subcarriers,
        subsymbols=subsymbols,
        a_i=a_i,
        a_q=a_q,
        support_len=max_offset + lp,
    )


def linear_modulate(mats: LinearGfdmMatrixSet, d) -> np.ndarray:
    """Transmit frame of ``frame_len`` samples; no cyclic prefix is used."""
    d = np.asarray(d, dtype=complex)
    if d.shape[0] != mats.n_symbols:
        raise ValueError(f"expected {mats.n_symbols} symbols, got {d.shape[0]}")
    return mats.a_i @ d.real + 1j * (mats.a_q @ d.imag)


def linear_demodulate(mats: LinearGfdmMatrixSet, y_eq) -> np.ndarray:
    """Matched-filter demodulation of an equalized extended frame."""
    y_eq = np.asarray(y_eq, dtype=complex)
    if y_eq.shape[0] != mats.frame_len:
        raise ValueError(f"expected {mats.frame_len} samples, got {y_eq.shape[0]}")
    gain_i = np.sum(np.abs(mats.a_i) ** 2, axis=0)
    gain_q = np.sum(np.abs(mats.a_q) ** 2, axis=0)
    if y_eq.ndim > 1:
        gain_i = gain_i[:, None]
        gain_q = gain_q[:, None]
    re = (mats.a_i.conj().T @ y_eq).real / gain_i
    im = (mats.a_q.conj().T @ y_eq).imag / gain_q
    return re + 1j * im
