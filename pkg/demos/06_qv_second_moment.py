"""The quadratic-variation second moment and its linear-in-K bound.

psi(n, K) is the variance-type sum controlling how far a K-cell block of
squared fBm increments strays from its mean.  Scaled by n^{4H} it depends
on K alone, and stays below 2K for every H <= 1/2 -- the fact that makes
the lead-lag counter-term scale like sqrt(K) pathwise.
"""
import numpy as np

from roughlift import psi_closed, psi_profile

print("psi(n, K) * n^{4H} is independent of n:")
for n in (64, 512, 4096):
    print(f"  n={n:5d}: ", [round(psi_closed(n, K, 0.35) * n ** 1.4, 6)
                            for K in (1, 4, 16)])

print("\nworst ratio psi / (2 K n^{-4H}) over K <= 4096:")
for H in (0.30, 0.35, 0.40, 0.45, 0.50):
    prof = psi_profile(4096, H)
    ratio = prof / (2.0 * np.arange(1, 4097))
    k_star = int(np.argmax(ratio)) + 1
    print(f"  H={H:.2f}: max ratio {ratio.max():.4f} at K={k_star}")

print("\nat H = 1/2 increments are independent and psi = K/n^2 exactly:")
for (n, K) in ((16, 5), (256, 100)):
    print(f"  psi({n}, {K}, 1/2) = {psi_closed(n, K, 0.5)}  K/n^2 = {K / n**2}")
