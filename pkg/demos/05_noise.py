"""
Depolarizing noise
==================

Noise pulls probabilities toward 1/2.  Longer sequences need more repeats,
so runtime bends upward once tau * L approaches the coherence time.
"""

# %%
from dataclasses import replace
from coherent_imaging import ClassifierConfig, NoiseModel, SearchConfig, saturated_prior
from coherent_imaging.classify import depolarizing_gamma, repeats_for_noise
from coherent_imaging.search import scaling_diagnostic

clf = ClassifierConfig(0.01, 0.9, 10)
base = SearchConfig(clf, saturated_prior(clf, L0=3), M=5, trials=100, seed=5)
noise = NoiseModel.depolarizing(729.0)

# %%
for L in (9, 81, 729):
    g = depolarizing_gamma(L, 1.0, noise)
    print(f"L={L:4d} gamma={g:.3f} repeats={repeats_for_noise(clf, g)}")

# %%
for label, cfg in (("clean", base), ("noisy", replace(base, noise=noise))):
    rows = scaling_diagnostic(cfg, [1, 2, 3, 4, 5])
    print(label, [round(r.slope_local, 2) for r in rows[1:]], "success", min(r.success_rate for r in rows))
