"""Small-mass magnetic experiment.

The momentum P of a physical Brownian motion with friction A and magnetic
force B^eps = eps^{-beta} B0 is sampled exactly on a fine grid together
with its driving noise W; Z = W - P.  Piecewise-linear lifts of P, Z and W
are restricted to a coarse output grid, the counter-term v built from the
stationary covariance is applied, and the alpha-Hoelder distances of the
translated lifts to their limits (the zero path for P, the W lift for Z)
are recorded per trial.  The raw (untranslated) distances diverge with the
counter-term; the translated ones shrink as eps -> 0.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .gauss import derive_Z, derive_seed, float_index, required_steps, sample_physical
from .linstable import StableDrift, renorm_v
from .tensor2 import IDENTITY_TOL, holder_distance, lift_piecewise_linear, translate, zero_lift

MAGNETIC_FIELDS = ("distP_renorm", "distP_raw", "distZ_renorm", "distZ_raw", "areaDev1")


@dataclass(frozen=True)
class MagneticConfig:
    """Run parameters; alpha must stay below 1/2 - beta/4 so that the
    Hoelder window is admissible for the growth exponent beta."""

    A: np.ndarray
    B0: np.ndarray
    beta: float
    eps_schedule: tuple
    T: float = 1.0
    alpha: float = 0.3
    grid_n: int = 256
    mc_trials: int = 64
    base_seed: int = 0

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        B0 = np.asarray(self.B0, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B0.shape:
            raise ValueError("A and B0 must be square matrices of equal size")
        if np.linalg.norm(A - A.T) > IDENTITY_TOL * max(1.0, np.linalg.norm(A)):
            raise ValueError("A must be symmetric")
        if np.min(np.linalg.eigvalsh(0.5 * (A + A.T))) <= 0.0:
            raise ValueError("A must be positive definite")
        if np.linalg.norm(B0 + B0.T) > IDENTITY_TOL * max(1.0, np.linalg.norm(B0)):
            raise ValueError("B0 must be anti-symmetric")
        if not (0.0 <= self.beta < 1.0):
            raise ValueError("requires 0 <= beta < 1")
        if not (0.0 <= self.alpha < 0.5 - self.beta / 4.0):
            raise ValueError(
                f"requires alpha < 1/2 - beta/4 = {0.5 - self.beta / 4.0:g}; "
                f"got alpha = {self.alpha:g}")
        eps = tuple(float(e) for e in self.eps_schedule)
        if len(eps) == 0:
            raise ValueError("eps schedule must be non-empty")
        if any(e <= 0.0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValueError("eps schedule must be positive and strictly decreasing")
        if self.T <= 0.0:
            raise ValueError("T must be positive")
        if self.grid_n < 2:
            raise ValueError("grid_n must be >= 2")
        if self.mc_trials < 1:
            raise ValueError("mc_trials must be >= 1")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B0", B0)
        object.__setattr__(self, "eps_schedule", eps)

    @property
    def d(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class TrialResult:
    """Per-trial distance statistics at one eps."""

    eps: float
    distP_renorm: float
    distP_raw: float
    distZ_renorm: float
    distZ_raw: float
    areaDev1: float
    vNorm: float


def drift_at(cfg: MagneticConfig, eps: float) -> StableDrift:
    """Drift A - eps^{-beta} B0 at mass eps^2."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    return StableDrift(cfg.A, eps ** (-cfg.beta) * cfg.B0)


def fine_grid_n(cfg: MagneticConfig, eps: float) -> int:
    """Fine simulation steps: the step rule rounded up to a multiple of the
    output grid so restriction is an exact subsample."""
    n_req = required_steps(drift_at(cfg, eps), eps, cfg.T)
    return cfg.grid_n * int(np.ceil(max(n_req, cfg.grid_n) / cfg.grid_n))


def run_magnetic_trial(cfg: MagneticConfig, eps: float, trial_index: int) -> TrialResult:
    drift = drift_at(cfg, eps)
    v = renorm_v(drift)
    n_fine = fine_grid_n(cfg, eps)
    stride = n_fine // cfg.grid_n
    seed = derive_seed(cfg.base_seed, float_index(eps), trial_index)
    P, W = sample_physical(drift, eps, cfg.T, n_fine, seed)
    Z = derive_Z(P, W)
    out_idx = np.arange(0, n_fine + 1, stride)

    liftP = lift_piecewise_linear(P.times, P.values).restrict(out_idx)
    liftZ = lift_piecewise_linear(Z.times, Z.values).restrict(out_idx)
    liftW = lift_piecewise_linear(W.times, W.values).restrict(out_idx)

    zero = zero_lift(liftP.times, cfg.d)
    distP_renorm = holder_distance(translate(liftP, v), zero, cfg.alpha)
    distP_raw = holder_distance(liftP, zero, cfg.alpha)
    distZ_renorm = holder_distance(translate(liftZ, v), liftW, cfg.alpha)
    distZ_raw = holder_distance(liftZ, liftW, cfg.alpha)
    area_dev = float(np.linalg.norm(liftZ.level2[-1] - liftW.level2[-1]))
    return TrialResult(eps=float(eps), distP_renorm=distP_renorm,
                       distP_raw=distP_raw, distZ_renorm=distZ_renorm,
                       distZ_raw=distZ_raw, areaDev1=area_dev, vNorm=v.norm)


def mean_se(samples) -> tuple[float, float]:
    a = np.asarray(samples, dtype=float)
    m = float(np.mean(a))
    se = float(np.std(a, ddof=1) / np.sqrt(len(a))) if len(a) > 1 else 0.0
    return m, se


def magnetic_experiment(cfg: MagneticConfig, threads: int = 1) -> list[dict]:
    """Per-eps means and standard errors over mc_trials independent trials.

    Trials run in parallel when threads > 1; seeds are derived per
    (eps, trial), and the reduction order is fixed, so the output is
    independent of the thread count.
    """
    jobs = [(eps, k) for eps in cfg.eps_schedule for k in range(cfg.mc_trials)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda j: run_magnetic_trial(cfg, *j), jobs))
    else:
        results = [run_magnetic_trial(cfg, *j) for j in jobs]
    rows = []
    for i, eps in enumerate(cfg.eps_schedule):
        batch = results[i * cfg.mc_trials:(i + 1) * cfg.mc_trials]
        row = {"eps": float(eps), "vnorm": batch[0].vNorm}
        for name in MAGNETIC_FIELDS:
            m, se = mean_se([getattr(t, name) for t in batch])
            row[f"{name}_mean"] = m
            row[f"{name}_se"] = se
        rows.append(row)
    return rows
