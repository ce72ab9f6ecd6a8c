"""
Cloning states on a line
========================

If only the amplitude quadrature carries information, an OPO at H = 9/8 and
a squeezed ancilla at the beam splitter give clones of fidelity
(4/9)(sqrt(10) - 1), and the two clones are entangled.
"""

import numpy as np

from gaussclone import single_quad_cloner as sq

# %%
v, F = sq.optimal_vsqz()
cfg = sq.LineClonerConfig(sq.unity_gain_H(), v)
print("optimal injected variance", v, "fidelity", F)
print("clone variances", sq.clone_line(0.0, cfg).clone_variances(0))
print("SNR+ per clone", sq.snr_plus(v), " summed SNR", sq.sum_snr_transfer(cfg))
print("Duan value", sq.duan_value(sq.clone_line(0.0, cfg)), "(< 2 means entangled)")

# %%
for vp in np.geomspace(0.2, 5, 7):
    print(f"v+={vp:.3f}  F={sq.fidelity_line(vp):.6f}")

# %%
# A coarse search over (H, v_plus) finds nothing better.
best = sq.parameter_sweep(n_H=31, n_v=31)
print(f"sweep best F={best.fidelity:.9f} at H={best.H:.6f}, v+={best.v_plus:.6f}")
