"""
Chebyshev transition profiles
=============================

A narrowband sequence of length L flips the qubit only when the rotation
angle is near pi.  Everything else is pushed below delta_b^2.
"""

# %%
import math
import numpy as np
from coherent_imaging import ProfileParams, p_narrow, p_broad, peak_widths, ratio_R_asymptotic

delta_b = 1e-2  # sidelobe amplitude, so sidelobes sit at 1e-4
theta = np.linspace(0, 2 * np.pi, 9)

# %% the narrowband peak sharpens as L triples
for L in (3, 9, 27, 81):
    params = ProfileParams(L, delta_b)
    w = peak_widths(params, math.sqrt(0.5))
    print(f"L={L:3d}  theta_b={w.theta_b:.4f}  theta_m={w.theta_m:.4f}  R={w.ratio_R:.3f}")

# %% theta_b * L stays roughly constant, so the width falls like 1/L
print("asymptotic R:", ratio_R_asymptotic(delta_b, math.sqrt(0.5)))

# %% the broadband profile is the complement shifted by pi
params = ProfileParams(27, delta_b)
print("theta   p_narrow   p_broad")
for t, a, b in zip(theta, p_narrow(theta, params), p_broad(theta, params)):
    print(f"{t:5.3f}  {a:.3e}  {b:.3e}")
