"""Small-mass magnetic convergence at desk scale.

The raw second level of the Z lift drifts away from the Brownian lift by
(t-s) * v with ||v|| = eps^{-beta}/sqrt(2) -> infinity, while the
translated lift converges.  A quick schedule (smaller than the acceptance
run) already shows both effects; runs in about half a minute.
"""
import numpy as np

from roughlift import MagneticConfig, magnetic_experiment
from roughlift.report import fit_loglog

J = np.array([[0.0, -1.0], [1.0, 0.0]])
cfg = MagneticConfig(A=np.eye(2), B0=J, beta=0.5,
                     eps_schedule=tuple(2.0 ** -k for k in range(2, 7)),
                     T=1.0, alpha=0.3, grid_n=128, mc_trials=16, base_seed=42)

rows = magnetic_experiment(cfg, threads=2)

print(f"{'eps':>10} {'T||v||':>9} {'raw area dev':>13} {'dist renorm':>12} {'dist raw':>10}")
for r in rows:
    print(f"{r['eps']:10.5f} {r['vnorm']:9.4f} "
          f"{r['areaDev1_mean']:13.4f} {r['distZ_renorm_mean']:12.4f} "
          f"{r['distZ_raw_mean']:10.4f}")

eps = [r["eps"] for r in rows]
slope_ren, _, se = fit_loglog([(e, r["distZ_renorm_mean"]) for e, r in zip(eps, rows)])
print(f"\nrenormalised distance ~ eps^{slope_ren:.2f} (se {se:.2f}); positive slope")
print("means the distance shrinks along the schedule.")
print("raw area deviation tracks T ||v|| =", [round(r["vnorm"], 3) for r in rows])
