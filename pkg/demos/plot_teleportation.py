"""
How much entanglement beats the best cloner?
============================================

Teleportation with a two-mode squeezed resource of strength lambda must
beat the optimal clone fidelity for the same prior. The required lambda
grows as the prior narrows: from 1/3 for a flat prior to 1/sqrt(2).
"""

import numpy as np

from gaussclone import teleportation as tp

# %%
for sigma in (0.0, 0.5, 1.0, 3.0, 10.0, 1000.0):
    lam = tp.nocloning_lambda(sigma)
    print(f"sigma={sigma:7.1f}  lambda={lam:.6f}  squeezing={tp.squeezing_db(lam):7.3f} dB")

# %%
# A fixed resource lambda = 0.5 loses to cloning for narrow priors.
for p in tp.crossing_scan(0.5, np.linspace(0.0, 3.0, 7)):
    print(f"sigma={p.sigma:.2f}  tele={p.tele_F:.4f}  clone={p.noclone_F:.4f}  above={p.above}")

# %%
# "sigma = 3" can be read as a width or as a variance.
print("width 3:", tp.nocloning_lambda(3.0), " variance 3:", tp.nocloning_lambda(np.sqrt(3.0)))
