"""
Closed-form phase synthesis
===========================

Build the length 3^n phase lists and check them against a direct SU(2)
product.
"""

# %%
import numpy as np
from coherent_imaging import SequenceSpec, synth, compose, transition_prob, ProfileParams, p_narrow

# %% the length-3 broadband block and its narrowband toggle
print(synth(SequenceSpec(1, 0.01, "broadband")).phases)
print(synth(SequenceSpec(1, 0.01, "narrowband")).phases)

# %% nesting produces 3^n phases; compare against the analytic profile
theta = np.linspace(0, 2 * np.pi, 2048, endpoint=False)
for n in (1, 2, 3, 4):
    seq = synth(SequenceSpec(n, 0.01, "narrowband"))
    sim = transition_prob(compose(seq, theta))
    err = np.abs(sim - p_narrow(theta, ProfileParams(seq.L, 0.01))).max()
    print(f"n={n}  L={seq.L:3d}  max deviation {err:.1e}")
