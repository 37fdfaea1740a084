"""
Heisenberg scaling
==================

Total time grows 3x per iteration while the error shrinks 3x, so
sigma * t stays constant.
"""

# %%
from coherent_imaging import ClassifierConfig, SearchConfig, saturated_prior
from coherent_imaging.search import fit_loglog_slope, runtime_formula, scaling_diagnostic

clf = ClassifierConfig(0.45, 0.55, 200)
cfg = SearchConfig(clf, saturated_prior(clf, L0=3), trials=300, seed=1, scan_order="center")
rows = scaling_diagnostic(cfg, [1, 2, 3, 4, 5])
print(" M  sigma_emp   sigma_pred  t_mean     t_formula")
for r in rows:
    print(f"{r.M:2d}  {r.sigma_empirical:.3e}  {r.sigma_predicted:.3e}  {r.t_mean:9.0f}  {r.t_formula:9.0f}")
print("log-log slope:", round(fit_loglog_slope(rows), 3))

# %% the worked runtime constant for a moderate classifier
from coherent_imaging import SpatialInterval
est = runtime_formula(SearchConfig(ClassifierConfig(7 / 20, 13 / 20, 5), SpatialInterval(0, 0.2), M=6))
print("t * Omega' * sigma =", round(est.heisenberg_constant, 2))
