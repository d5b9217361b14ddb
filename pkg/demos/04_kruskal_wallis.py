"""
Kruskal-Wallis over duty-cycle groups
=====================================
"""

import numpy as np
from scipy import stats as sps

from ssvep_duty.stats import GroupedAmplitudes, kruskal_wallis, select_best_duty

rng = np.random.default_rng(0)
groups = {50: rng.normal(400, 8, 150).round(),
          85: rng.normal(420, 8, 150).round(),   # rounding adds ties
          95: rng.normal(380, 8, 150).round()}

res = kruskal_wallis(GroupedAmplitudes.from_mapping(groups))
print("H =", res.h_statistic, "df =", res.df, "p =", res.p_value)
print("mean ranks:", {l: round(float(r), 1) for l, r in zip(res.labels, res.mean_ranks)})
print("best duty:", select_best_duty({8: res}).selected[8])

# same numbers from scipy
print("scipy:", sps.kruskal(*groups.values()))
