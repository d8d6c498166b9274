# %%
# Power spectral density: where Linear GFDM earns its keep
# ========================================================
#
# Out-of-band emission is the whole point of replacing circular filtering
# with linear filtering.  This demo estimates the Welch PSD of a 1000-frame
# stream for each waveform (a centered 56-of-128 subcarrier allocation, so
# the skirts are visible) and tabulates the suppression at a few offsets
# beyond the band edge.

import numpy as np

from wavemod import ScenarioConfig, run_psd
from wavemod.sim import psd_band_edge

WAVEFORMS = ("ofdm", "gfdm", "gfdm_oqam_circular", "linear_gfdm", "fbmc")

curves = {}
edges = {}
for w in WAVEFORMS:
    cfg = ScenarioConfig(waveform=w, metric="psd", frames=1000)
    curves[w] = run_psd(cfg)
    edges[w] = psd_band_edge(cfg)

# %%
# PSD level (dB relative to the in-band plateau) at fixed offsets beyond
# each waveform's own band edge, measured in GFDM subcarrier spacings
# (1/128 cycles/sample).

offsets = (1, 2, 4, 8, 16, 32)
sub = 1.0 / 128.0
print(f"{'offset':>8} " + " ".join(f"{w:>20}" for w in WAVEFORMS))
for o in offsets:
    row = f"{o:>5} sc "
    for w in WAVEFORMS:
        row += f"{curves[w].interpolate(edges[w] + o * sub):>20.1f}"
    print(row)

# %%
# Reading the table:
#   - OFDM and plain GFDM decay like a sinc: tens of dB at best.
#   - Circular GFDM-OQAM does better in close but flattens out — the
#     wrapped filter tails put a hard edge on every frame.
#   - Linear GFDM and FBMC-OQAM drop below -90 dB within one subcarrier
#     and agree with each other everywhere: same pulses, same spectrum.

diff = max(
    abs(curves["linear_gfdm"].interpolate(edges["linear_gfdm"] + i * sub)
        - curves["fbmc"].interpolate(edges["fbmc"] + i * sub))
    for i in range(1, 33)
)
print(f"\nmax |linear_gfdm - fbmc| over 1..32 subcarrier offsets: {diff:.2f} dB")
