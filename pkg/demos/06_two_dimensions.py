"""
Three beams in two dimensions
=============================

Each radial beam's theta = pi ring passes through the object.  Adding the
log probabilities leaves a single sharp maximum where the rings meet.
"""

# %%
import numpy as np
from coherent_imaging.demo2d import GridSpec, grid_argmax, log_profile_grid, three_beam_layout

grid = GridSpec()
field = log_profile_grid(three_beam_layout(1e-2), grid)
print("argmax (x, y, value):", grid_argmax(field, grid))

# %% coarse text rendering of the field, clipped at -30 nats
coarse = field[::20, ::20]
for row in coarse[::-1]:
    print("".join(" .:-=+*#%@"[int(np.clip((v + 30) / 3, 0, 9))] for v in row))
