"""Step-2 truncated tensor algebra over R^d.

A step-2 lift stores a path increment together with its second iterated
integral.  Adjacent intervals compose with the Chen product

    (a, A) * (b, B) = (a + b, A + B + a (x) b),

which makes the set of lifts a group (identity (0, 0)).  Lifts of whole
paths are stored as running signatures S_{0,i} from the first grid point;
the lift over any subinterval is recovered by group inversion, so the Chen
relation holds by construction.

The area counter-term enters through ``translate``: adding (t-s)*v, with v
anti-symmetric, to the second level of every interval lift.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Algebraic identities are exact in exact arithmetic; 1e-12 relative leaves
# headroom for accumulation over <= 1e4 segments in double precision.
IDENTITY_TOL = 1e-12

# Full O(N^2) pair sweep in holder_distance up to this many grid intervals,
# dyadic pairs (i, i + 2^k) beyond.
FULL_PAIRS_LIMIT = 2048


def _as_vector(x, name="vector"):
    a = np.asarray(x, dtype=float)
    if a.ndim != 1:
        raise ValueError(f"{name} must be 1-d, got shape {a.shape}")
    return a


def _as_square(x, name="matrix"):
    a = np.asarray(x, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def is_antisymmetric(v, tol=IDENTITY_TOL):
    v = np.asarray(v, dtype=float)
    scale = max(1.0, float(np.linalg.norm(v)))
    return float(np.linalg.norm(v + v.T)) <= tol * scale


@dataclass(frozen=True)
class StepTwoLift:
    """Group element of one interval: level-1 increment and level-2 d x d matrix."""

    level1: np.ndarray
    level2: np.ndarray

    def __post_init__(self):
        l1 = _as_vector(self.level1, "level1")
        l2 = _as_square(self.level2, "level2")
        if l2.shape[0] != l1.shape[0]:
            raise ValueError("level1/level2 dimension mismatch")
        object.__setattr__(self, "level1", l1)
        object.__setattr__(self, "level2", l2)

    @property
    def dim(self) -> int:
        return self.level1.shape[0]


@dataclass(frozen=True)
class RenormTerm:
    """Anti-symmetric area shift v; translation adds (t-s)*v to every interval."""

    v: np.ndarray

    def __post_init__(self):
        v = _as_square(self.v, "v")
        if not is_antisymmetric(v):
            raise ValueError("area shift must be anti-symmetric")
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.v.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.v))


@dataclass(frozen=True)
class LiftedPath:
    """Running signatures S_{0,i} of a path over a strictly increasing grid.

    ``level1[i]``/``level2[i]`` are the two levels of S_{0,i}; S_{0,0} is the
    identity.  Interval lifts S_{i,j} come out of ``interval`` via group
    inversion and therefore satisfy Chen exactly.
    """

    times: np.ndarray
    level1: np.ndarray  # (N+1, d)
    level2: np.ndarray  # (N+1, d, d)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        l1 = np.asarray(self.level1, dtype=float)
        l2 = np.asarray(self.level2, dtype=float)
        if t.ndim != 1 or len(t) < 1:
            raise ValueError("times must be a non-empty 1-d array")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if l1.ndim != 2 or l2.ndim != 3:
            raise ValueError("running signature arrays must be (N+1, d) and (N+1, d, d)")
        d = l1.shape[1]
        if l1.shape != (len(t), d) or l2.shape != (len(t), d, d):
            raise ValueError("running signature arrays inconsistent with grid")
        if np.any(l1[0] != 0.0) or np.any(l2[0] != 0.0):
            raise ValueError("running signature must start at the identity")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "level1", l1)
        object.__setattr__(self, "level2", l2)

    @property
    def dim(self) -> int:
        return self.level1.shape[1]

    @property
    def n_points(self) -> int:
        return len(self.times)

    def lift_at(self, i: int) -> StepTwoLift:
        """Running lift S_{0,i}."""
        return StepTwoLift(self.level1[i].copy(), self.level2[i].copy())

    def interval(self, i: int, j: int) -> StepTwoLift:
        """Interval lift S_{i,j} = S_{0,i}^{-1} * S_{0,j}."""
        inc = self.level1[j] - self.level1[i]
        l2 = self.level2[j] - self.level2[i] - np.outer(self.level1[i], inc)
        return StepTwoLift(inc, l2)

    def restrict(self, indices) -> "LiftedPath":
        """Sub-grid path, rebased so the first retained point is the identity."""
        idx = np.asarray(indices, dtype=int)
        if idx.ndim != 1 or len(idx) < 1 or np.any(np.diff(idx) <= 0):
            raise ValueError("indices must be strictly increasing")
        t = self.times[idx].copy()
        l1 = self.level1[idx] - self.level1[idx[0]]
        l2 = (self.level2[idx] - self.level2[idx[0]]
              - np.einsum("d,ne->nde", self.level1[idx[0]], l1))
        return LiftedPath(t, np.ascontiguousarray(l1), np.ascontiguousarray(l2))


def identity_lift(dim: int) -> StepTwoLift:
    return StepTwoLift(np.zeros(dim), np.zeros((dim, dim)))


def exp_step2(increment) -> StepTwoLift:
    """Lift of a straight segment: level2 = (1/2) increment (x) increment."""
    inc = _as_vector(increment, "increment")
    if not np.all(np.isfinite(inc)):
        raise ValueError("increment must be finite")
    return StepTwoLift(inc, 0.5 * np.outer(inc, inc))


def chen_mul(a: StepTwoLift, b: StepTwoLift) -> StepTwoLift:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return StepTwoLift(a.level1 + b.level1,
                       a.level2 + b.level2 + np.outer(a.level1, b.level1))


def chen_inv(a: StepTwoLift) -> StepTwoLift:
    return StepTwoLift(-a.level1, np.outer(a.level1, a.level1) - a.level2)


def levy_area(a: StepTwoLift) -> np.ndarray:
    """Anti-symmetric part of the second level."""
    return 0.5 * (a.level2 - a.level2.T)


def sym_part(a: StepTwoLift) -> np.ndarray:
    return 0.5 * (a.level2 + a.level2.T)


def lift_piecewise_linear(times, values) -> LiftedPath:
    """Lift of the piecewise-linear path through ``values`` at ``times``.

    Running second level accumulates (x_j - x_0 + inc_j/2) (x) inc_j per
    segment, which is the Chen product of the segment exponentials.
    """
    t = np.asarray(times, dtype=float)
    x = np.asarray(values, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if t.ndim != 1 or len(t) < 2:
        raise ValueError("need at least 2 grid points")
    if np.any(np.diff(t) <= 0):
        raise ValueError("times must be strictly increasing")
    if x.shape[0] != len(t):
        raise ValueError("values length must match times")
    n, d = x.shape[0] - 1, x.shape[1]
    inc = np.diff(x, axis=0)
    l1 = np.zeros((n + 1, d))
    l1[1:] = np.cumsum(inc, axis=0)
    terms = np.einsum("nd,ne->nde", (x[:-1] - x[0]) + 0.5 * inc, inc)
    l2 = np.zeros((n + 1, d, d))
    np.cumsum(terms, axis=0, out=l2[1:])
    return LiftedPath(t, l1, l2)


def zero_lift(times, dim: int) -> LiftedPath:
    """Lift of the path constantly at the origin."""
    t = np.asarray(times, dtype=float)
    return LiftedPath(t, np.zeros((len(t), dim)), np.zeros((len(t), dim, dim)))


def translate(path: LiftedPath, v) -> LiftedPath:
    """Shift every interval's second level by (t_j - t_i) * v.

    Implemented on the running signatures: S_{0,i} gains (t_i - t_0) * v,
    which is interval-additive and leaves the Chen cross term untouched
    because level 1 is unchanged.
    """
    term = v if isinstance(v, RenormTerm) else RenormTerm(np.asarray(v, dtype=float))
    if term.dim != path.dim:
        raise ValueError(f"dimension mismatch: {term.dim} vs {path.dim}")
    shift = (path.times - path.times[0])[:, None, None] * term.v
    return LiftedPath(path.times, path.level1.copy(), path.level2 + shift)


def _dyadic_pairs(n: int):
    """Index pairs (i, i + 2^k) covering all scales of an n-interval grid."""
    k = 1
    while k <= n:
        i = np.arange(0, n - k + 1)
        yield i, i + k
        k *= 2


def holder_distance(x: LiftedPath, y: LiftedPath, alpha: float,
                    full_pairs_limit: int = FULL_PAIRS_LIMIT) -> float:
    """Inhomogeneous alpha-Hoelder distance between two lifts on one grid.

    Sum of sup |X_{s,t} - Y_{s,t}| / (t-s)^alpha (Euclidean norm) and
    sup |XX_{s,t} - YY_{s,t}| / (t-s)^(2 alpha) (Frobenius norm) over grid
    pairs s < t.  All pairs are swept when the grid has at most
    ``full_pairs_limit`` intervals; beyond that only the dyadic pairs
    (i, i + 2^k) are used, which still touches every scale.
    """
    if not (0.0 <= alpha < 0.5):
        raise ValueError("alpha must lie in [0, 1/2)")
    if x.dim != y.dim:
        raise ValueError("dimension mismatch")
    if len(x.times) != len(y.times) or np.any(x.times != y.times):
        raise ValueError("grids must be identical")
    n = len(x.times) - 1
    if n < 1:
        return 0.0
    t = x.times
    w = x.level1 - y.level1
    dl2 = x.level2 - y.level2
    sup1 = 0.0
    sup2 = 0.0

    def sweep(i, j):
        nonlocal sup1, sup2
        dt = t[j] - t[i]
        dev1 = np.linalg.norm(w[j] - w[i], axis=-1)
        cross = (np.einsum("nd,ne->nde", x.level1[i], x.level1[j] - x.level1[i])
                 - np.einsum("nd,ne->nde", y.level1[i], y.level1[j] - y.level1[i]))
        resid = dl2[j] - dl2[i] - cross
        dev2 = np.linalg.norm(resid.reshape(len(resid), -1), axis=-1)
        sup1 = max(sup1, float(np.max(dev1 / dt ** alpha)))
        sup2 = max(sup2, float(np.max(dev2 / dt ** (2.0 * alpha))))

    if n <= full_pairs_limit:
        for i in range(n):
            j = np.arange(i + 1, n + 1)
            sweep(np.full(len(j), i), j)
    else:
        for i, j in _dyadic_pairs(n):
            sweep(i, j)
    return sup1 + sup2
