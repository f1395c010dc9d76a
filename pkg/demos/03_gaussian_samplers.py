"""Exact Gaussian samplers: fBm by circulant embedding and the OU pair.

Verifies sampled moments against the closed-form covariances: the fBm
covariance R(s,t) = (t^{2H} + s^{2H} - |t-s|^{2H})/2, the negative lag-1
increment correlation for H < 1/2, and the stationary momentum variance
eps^2 C of the physical pair.
"""
import numpy as np

from roughlift import (SamplerSpec, StableDrift, derive_seed, fgn_autocov,
                       lyapunov_C, sample_bm, sample_fbm, sample_physical)

rng_trials = 20000

print("== fBm increment autocovariance (H = 0.25, n = 64, lag 1) ==")
H, n = 0.25, 64
target = fgn_autocov(1, H, 1.0 / n)
acc = []
for i in range(rng_trials):
    v = sample_fbm(SamplerSpec(seed=derive_seed(0, i), H=H, n=n)).values[:, 0]
    inc = np.diff(v)
    acc.append(np.mean(inc[:-1] * inc[1:]))
acc = np.asarray(acc)
print(f"sampled {acc.mean():+.6f}  target {target:+.6f}  "
      f"se {acc.std(ddof=1) / np.sqrt(len(acc)):.6f}")
print("(negative: rough paths anti-correlate consecutive increments)")

print("\n== method cross-check at H = 1/2 ==")
a = sample_fbm(SamplerSpec(seed=7, H=0.5, n=128, method="circulant"))
b = sample_fbm(SamplerSpec(seed=7, H=0.5, n=128, method="cholesky"))
print("max |circulant - cholesky| from identical normals:",
      np.abs(a.values - b.values).max())

print("\n== Brownian motion covariance ==")
prods = np.array([sample_bm(1.0, 2, 1, seed=derive_seed(1, i)).values[1:, 0].prod()
                  for i in range(rng_trials)])
print(f"E[W_1/2 W_1] sampled {prods.mean():.5f}  target 0.5")

print("\n== physical pair: stationary momentum variance ==")
J = np.array([[0.0, -1.0], [1.0, 0.0]])
drift = StableDrift(np.eye(2), 4.0 * J)
eps = 0.3
C = lyapunov_C(drift)
term = np.empty((4000, 2))
for i in range(4000):
    P, _ = sample_physical(drift, eps, 1.0, 512, seed=derive_seed(2, i))
    term[i] = P.values[-1]
print("sampled Var(P_T) =", np.var(term, axis=0).round(5),
      " target eps^2 diag(C) =", (eps ** 2 * np.diag(C)).round(5))
print("(T = 1 >> eps^2: the momentum has relaxed to stationarity)")
