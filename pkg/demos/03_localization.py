"""
Logarithmic search for one emitter
==================================

A Gaussian beam turns position into rotation angle, so the narrowband
profile becomes a spatial filter.  Each iteration triples the sequence
length and shrinks the confinement interval threefold.
"""

# %%
import numpy as np
from coherent_imaging import ClassifierConfig, SearchConfig, run_search, saturated_prior

clf = ClassifierConfig(delta_b_sq=1e-4, delta_m_sq=0.5, l_repeats=5)
cfg = SearchConfig(clf, saturated_prior(clf, L0=3), M=4)
print("prior:", cfg.I0)

# %%
rng = np.random.default_rng(3)
x = 0.17
res = run_search(cfg, x, rng)
for rec in res.history:
    print(f"n={rec.n} L={rec.L_n:4d} D={rec.D} picked d={rec.decision_d} "
          f"I=[{rec.interval_center - rec.interval_width / 2:+.5f}, "
          f"{rec.interval_center + rec.interval_width / 2:+.5f}] t={rec.cumulative_time:.0f}")
print("estimate", res.estimate_xe, "true", x, "predicted sigma", res.sigma_predicted)

# %% a forced wrong pick is caught one level later and undone
res = run_search(cfg, x, np.random.default_rng(3), inject_at={2})
print("backtracks:", res.ledger.backtracks, "still contains x:", res.final_interval.contains(x))
