# %%
# From circular to linear filtering: the transmit matrices
# ========================================================
#
# A GFDM frame is x = A d, where each column of A is the prototype filter
# shifted to a subcarrier frequency and a subsymbol slot.  In the classic
# modem the shifts are circular, so the filter tails wrap around the frame
# edges.  Zero-padding the prototype removes the wrap: the columns of the
# extended matrices have contiguous support and the frame edges decay
# smoothly — that is the Linear GFDM configuration, and its output is
# sample-identical to an FBMC-OQAM burst.

import numpy as np

from wavemod import (
    FbmcModem,
    build_gfdm_matrix,
    build_linear_matrices,
    build_oqam_matrices,
    fbmc_modulate,
    linear_modulate,
    oqam_modulate,
    phydyas,
    qam_map,
)

K, M = 128, 4
p = phydyas(K, 4)

# %%
# Circular OQAM matrices: N x N, hard wrap at the frame edges.

circ = build_oqam_matrices(p, K, M)
print("circular A_i shape:", circ.a_i.shape)
print("A_q is A_i rolled by K/2 samples:",
      np.allclose(circ.a_q, np.roll(circ.a_i, K // 2, axis=0)))
first_row_power = np.sum(np.abs(circ.a_i[0]) ** 2)
print(f"power in first row (wrapped tails): {first_row_power:.3f}")

# %%
# Linear matrices: taller (962 x 512 for the default profile), no wrap.

lin = build_linear_matrices(p, K, M)
print("\nlinear A_i shape:", lin.a_i.shape)
print("signal support ends at sample:", lin.support_len)
edge_power = np.sum(np.abs(lin.a_i[0]) ** 2) + np.sum(np.abs(lin.a_i[-1]) ** 2)
print(f"power in first+last rows: {edge_power:.2e}  (smooth edges)")

# %%
# The headline equivalence: modulating the same data through the linear
# matrices and through the FBMC-OQAM synthesis bank gives the same signal.

rng = np.random.default_rng(0)
d = qam_map(rng.integers(0, 2, 4 * K * M), 16)

x_lin = linear_modulate(lin, d)
x_fbmc = fbmc_modulate(FbmcModem(p, K, M), d)
print("\nmax |linear - fbmc|:", np.abs(x_lin[: len(x_fbmc)] - x_fbmc).max())

# %%
# Contrast with the circular modem: same data, visibly different edges.

x_circ = oqam_modulate(circ, d)
print("\nframe edge magnitudes (relative to the frame peak):")
print(f"  circular: |x[0]| = {abs(x_circ[0]) / np.abs(x_circ).max():.3f}")
print(f"  linear:   |x[0]| = {abs(x_lin[0]) / np.abs(x_lin).max():.2e}")

# %%
# A plain GFDM sanity check: with a rectangular prototype and one subsymbol
# the transmit matrix is just the unitary inverse DFT, i.e. OFDM.

from wavemod import rectangular

rect_case = build_gfdm_matrix(rectangular(4), 4, 1)
idft = np.exp(2j * np.pi * np.outer(np.arange(4), np.arange(4)) / 4) / 2.0
print("\nGFDM(rect, M=1) equals the unitary IDFT:",
      np.allclose(rect_case.a, idft))
