"""Discrete Brownian paths on partitions and the delta operator.

Sampling is reproducible across platforms: a counter-based Philox generator
supplies raw 64-bit words, which become uniforms in (0,1) via
(raw >> 11) * 2^-53 + 2^-54 and normals via the exact quantile function
(scipy's ndtri).  Path i of a batch uses the master stream jumped i times, so
per-path results never depend on batch layout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import PreconditionError


def normal_cdf(x: float) -> float:
    return float(ndtr(x))


def _philox_stream(seed: int, stream: int = 0):
    bg = np.random.Philox(key=int(seed))
    return bg.jumped(stream) if stream else bg


def normal_samples(seed: int, count: int, stream: int = 0) -> np.ndarray:
    """Standard normals from the documented Philox + inverse-CDF transform."""
    raw = _philox_stream(seed, stream).random_raw(count)
    u = (raw >> np.uint64(11)).astype(np.float64) * 2.0**-53 + 2.0**-54
    return ndtri(u)


@dataclass(eq=False)
class Partition:
    """Strictly increasing time grid t_0 < ... < t_n."""

    times: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if self.times.ndim != 1 or self.times.size < 2:
            raise PreconditionError("a partition needs at least two times")
        if not np.all(np.diff(self.times) > 0):
            raise PreconditionError("partition times must be strictly increasing")

    @property
    def n(self) -> int:
        return self.times.size - 1

    @property
    def mesh(self) -> float:
        return float(np.max(np.diff(self.times)))

    @property
    def deltas(self) -> np.ndarray:
        return np.diff(self.times)

    @staticmethod
    def uniform(T: float, n: int) -> "Partition":
        if T <= 0 or n < 1:
            raise PreconditionError("need T > 0 and n >= 1")
        return Partition(np.linspace(0.0, T, n + 1))

    def refine(self, k: int = 2) -> "Partition":
        """Insert k-1 equally spaced times into every step."""
        fine = [self.times[0]]
        for a, b in zip(self.times, self.times[1:]):
            fine.extend(a + (b - a) * j / k for j in range(1, k + 1))
        return Partition(np.array(fine))


@dataclass(eq=False)
class DiscretePath:
    partition: Partition
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != self.partition.times.shape:
            raise PreconditionError("path length does not match its partition")

    @property
    def terminal(self) -> float:
        return float(self.values[-1])


@dataclass(frozen=True)
class GBMParams:
    alpha: float
    sigma: float
    x0: float
    T: float
    n: int
    seed: int = 0

    def __post_init__(self):
        if self.sigma < 0:
            raise PreconditionError("sigma must be >= 0")
        if self.x0 <= 0:
            raise PreconditionError("x0 must be > 0")
        if self.n < 1 or self.T <= 0:
            raise PreconditionError("need n >= 1 and T > 0")


def sample_brownian(T: float, n: int, seed: int = 0, stream: int = 0) -> DiscretePath:
    """Standard Brownian path on the uniform grid: W_0 = 0, independent
    normal increments with variance equal to the step."""
    part = Partition.uniform(T, n)
    incs = normal_samples(seed, n, stream) * np.sqrt(part.deltas)
    values = np.concatenate(([0.0], np.cumsum(incs)))
    return DiscretePath(part, values)


def sample_brownian_batch(T: float, n: int, n_paths: int, seed: int = 0) -> np.ndarray:
    """(n_paths, n+1) array of Brownian paths; row i reproduces
    sample_brownian(T, n, seed, stream=i)."""
    part = Partition.uniform(T, n)
    sq = np.sqrt(part.deltas)
    out = np.empty((n_paths, n + 1))
    out[:, 0] = 0.0
    for i in range(n_paths):
        incs = normal_samples(seed, n, stream=i) * sq
        out[i, 1:] = np.cumsum(incs)
    return out


def delta_increments(path: DiscretePath) -> np.ndarray:
    """The finite differences Delta_i X = X(t_{i+1}) - X(t_i)."""
    return np.diff(path.values)


def telescoped_sum(path: DiscretePath) -> float:
    """Sum of the increments; equals X_n - X_0 by telescoping."""
    return math.fsum(delta_increments(path))


def check_product_rule(x: DiscretePath, y: DiscretePath) -> float:
    """Max residual of Delta(XY) - (X DeltaY + DeltaX Y + DeltaX DeltaY).

    The identity is pathwise algebraic, so the residual is rounding noise;
    the cross term DeltaX DeltaY is exactly what stops the delta operator
    from being a derivation.
    """
    if x.partition.times.shape != y.partition.times.shape or \
            not np.array_equal(x.partition.times, y.partition.times):
        raise PreconditionError("paths must share a partition")
    xv, yv = x.values, y.values
    dx, dy = np.diff(xv), np.diff(yv)
    lhs = xv[1:] * yv[1:] - xv[:-1] * yv[:-1]
    rhs = xv[:-1] * dy + dx * yv[:-1] + dx * dy
    return float(np.max(np.abs(lhs - rhs))) if dx.size else 0.0


def quadratic_variation(path: DiscretePath) -> float:
    """Sum of squared increments over the partition."""
    return math.fsum(np.diff(path.values) ** 2)


def cross_variation(path: DiscretePath) -> float:
    """Sum of DeltaW * Deltat; vanishes in the fine-mesh limit."""
    return math.fsum(np.diff(path.values) * path.partition.deltas)


_ITO_CATALOG = {
    # name -> (f(t, w), d/dt, d/dw, d2/dw2)
    "w2": (lambda t, w: w ** 2,
           lambda t, w: 0.0 * w,
           lambda t, w: 2.0 * w,
           lambda t, w: 2.0 + 0.0 * w),
    "w3": (lambda t, w: w ** 3,
           lambda t, w: 0.0 * w,
           lambda t, w: 3.0 * w ** 2,
           lambda t, w: 6.0 * w),
    "exp": (lambda t, w: np.exp(w - 0.5 * t),
            lambda t, w: -0.5 * np.exp(w - 0.5 * t),
            lambda t, w: np.exp(w - 0.5 * t),
            lambda t, w: np.exp(w - 0.5 * t)),
    "t": (lambda t, w: t + 0.0 * w,
          lambda t, w: 1.0 + 0.0 * w,
          lambda t, w: 0.0 * w,
          lambda t, w: 0.0 * w),
}


def ito_residual(f: str, path: DiscretePath, quadratic_term: str = "time") -> float:
    """Absolute gap between f(T, W_T) - f(0, W_0) and the second-order
    expansion summed over the partition.

    quadratic_term selects the second-order weight: "time" uses
    (1/2) f_ww dt (the square of a Brownian increment replaced by the step),
    "increments" uses (1/2) f_ww (Delta_i W)^2 (the raw finite-difference
    expansion, exact for quadratic f).
    """
    if f not in _ITO_CATALOG:
        raise PreconditionError(f"unsupported function {f!r}; catalog: {sorted(_ITO_CATALOG)}")
    if quadratic_term not in ("time", "increments"):
        raise PreconditionError("quadratic_term must be 'time' or 'increments'")
    func, dt_, dw_, dww_ = _ITO_CATALOG[f]
    t, w = path.partition.times, path.values
    dts = path.partition.deltas
    dws = np.diff(w)
    second = dts if quadratic_term == "time" else dws ** 2
    expansion = math.fsum(dt_(t[:-1], w[:-1]) * dts
                          + dw_(t[:-1], w[:-1]) * dws
                          + 0.5 * dww_(t[:-1], w[:-1]) * second)
    total = func(t[-1], w[-1]) - func(t[0], w[0])
    return abs(float(total) - expansion)


def simulate_gbm(p: GBMParams, stream: int = 0) -> DiscretePath:
    """Geometric Brownian motion by the exact lognormal scheme:
    X(t_i) = x0 * exp((alpha - sigma^2/2) t_i + sigma W(t_i)).

    No discretization bias: the log-drift of the simulated path is exactly
    alpha - sigma^2/2 in expectation at any step count.
    """
    w = sample_brownian(p.T, p.n, p.seed, stream)
    drift = p.alpha - 0.5 * p.sigma ** 2
    values = p.x0 * np.exp(drift * w.partition.times + p.sigma * w.values)
    return DiscretePath(w.partition, values)


def gbm_terminal_log_rates(p: GBMParams, n_paths: int) -> np.ndarray:
    """log(X_T / x0) / T for n_paths independent streams of one seed."""
    drift = p.alpha - 0.5 * p.sigma ** 2
    sq = np.sqrt(Partition.uniform(p.T, p.n).deltas)
    rates = np.empty(n_paths)
    for i in range(n_paths):
        w_T = math.fsum(normal_samples(p.seed, p.n, stream=i) * sq)
        rates[i] = (drift * p.T + p.sigma * w_T) / p.T
    return rates


@dataclass(frozen=True)
class LogDriftEstimate:
    mean: float
    stderr: float
    n_paths: int

    @property
    def interval(self) -> tuple[float, float]:
        """Three-standard-error band around the sample mean."""
        return (self.mean - 3 * self.stderr, self.mean + 3 * self.stderr)


def estimate_log_drift(paths) -> LogDriftEstimate:
    """Sample mean and standard error of log(X_T/X_0)/T over >= 30 paths."""
    rates = []
    for p in paths:
        if isinstance(p, DiscretePath):
            rates.append(math.log(p.values[-1] / p.values[0]) / p.partition.times[-1])
        else:
            rates.append(float(p))
    if len(rates) < 30:
        raise PreconditionError(f"need at least 30 paths, got {len(rates)}")
    arr = np.asarray(rates)
    mean = float(arr.mean())
    stderr = float(arr.std(ddof=1) / math.sqrt(arr.size))
    return LogDriftEstimate(mean, stderr, arr.size)
