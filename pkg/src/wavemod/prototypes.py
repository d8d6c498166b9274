"""Prototype filter design for the multicarrier modems.

Provides the PHYDYAS frequency-sampling filter used by the filter-bank
waveforms, the rectangular pulse used by OFDM, and the zero-padding helpers
that turn a circular modulation matrix into a linear one.
"""

from dataclasses import dataclass, field

import numpy as np

# Frequency-domain sampling coefficients of the PHYDYAS filter, indexed by
# overlapping factor.  Only the positive-frequency half is listed; the design
# is symmetric.
_FREQ_COEFFS = {
    1: (1.0,),
    2: (1.0, np.sqrt(2.0) / 2.0),
    3: (1.0, 0.91143783, 0.41143783),
    4: (1.0, 0.97195983, np.sqrt(2.0) / 2.0, 0.23514695),
}


@dataclass(frozen=True)
class PrototypeFilter:
    """Real-valued, unit-energy prototype filter impulse response."""

    coefficients: np.ndarray
    overlap: int
    subcarriers: int

    @property
    def length(self) -> int:
        return len(self.coefficients)


def phydyas(subcarriers: int, overlap: int = 4) -> PrototypeFilter:
    """PHYDYAS frequency-sampling prototype of length ``overlap * subcarriers + 1``.

    The impulse response is built by summing the frequency samples with
    alternating signs, which centers the main lobe at the middle of the
    filter, and is then scaled to unit energy.
    """
    if subcarriers < 2 or subcarriers % 2 != 0:
        raise ValueError(f"subcarriers must be even and >= 2, got {subcarriers}")
    if overlap < 1:
        raise ValueError(f"overlap must be >= 1, got {overlap}")
    if overlap not in _FREQ_COEFFS:
        raise ValueError(
            f"no frequency-sampling coefficients for overlap {overlap}; "
            f"supported: {sorted(_FREQ_COEFFS)}"
        )
    span = overlap * subcarriers
    n = np.arange(span + 1)
    coeffs = _FREQ_COEFFS[overlap]
    p = np.full(span + 1, coeffs[0], dtype=float)
    for l in range(1, overlap):
        p += 2.0 * (-1) ** l * coeffs[l] * np.cos(2.0 * np.pi * l * n / span)
    p /= np.linalg.norm(p)
    return PrototypeFilter(coefficients=p, overlap=overlap, subcarriers=subcarriers)


def rectangular(subcarriers: int) -> PrototypeFilter:
    """Length-``subcarriers`` rectangular pulse with unit energy."""
    if subcarriers < 1:
        raise ValueError(f"subcarriers must be >= 1, got {subcarriers}")
    p = np.full(subcarriers, 1.0 / np.sqrt(subcarriers))
    return PrototypeFilter(coefficients=p, overlap=1, subcarriers=subcarriers)


def linear_pad_length(subcarriers: int, subsymbols: int, i_only: bool = False) -> int:
    """Number of zeros appended to the prototype for wrap-free column shifts.

    The default accounts for the extra half-subcarrier shift of the
    quadrature matrix; ``i_only`` returns the shorter pad that suffices when
    only integer-subsymbol shifts occur.
    """
    if subcarriers % 2 != 0:
        raise ValueError(f"subcarriers must be even, got {subcarriers}")
    if subsymbols < 1:
        raise ValueError(f"subsymbols must be >= 1, got {subsymbols}")
    if i_only:
        return subcarriers * (subsymbols - 1) + 1
    return subcarriers * subsymbols - subcarriers // 2 + 1


def zero_pad(p, n_zeros: int) -> np.ndarray:
    """Append ``n_zeros`` zeros to a prototype (or plain coefficient array)."""
    if n_zeros < 0:
        raise ValueError(f"n_zeros must be >= 0, got {n_zeros}")
    coeffs = p.coefficients if isinstance(p, PrototypeFilter) else np.asarray(p, dtype=float)
    return np.concatenate([coeffs, np.zeros(n_zeros)])
