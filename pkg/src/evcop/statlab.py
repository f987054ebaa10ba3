"""Statistical verification helpers and the sampler scaling benchmark."""

import json
import math
import platform
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import ks_2samp

from .distributions import UniformHalf
from .errors import InvalidSpecError
from .frailty import sample_definetti
from .pickands import sample_pickands
from .stdf import CopulaModel


def _rank_scale(values):
    """Per-column ranks scaled to (0, 1]; ordinal tie-breaking."""
    n = values.shape[0]
    ranks = np.empty_like(values)
    for j in range(values.shape[1]):
        ranks[:, j] = np.argsort(np.argsort(values[:, j], kind="stable")) + 1.0
    return ranks / n


class EmpiricalCopula:
    """Rank-based empirical copula of a sample batch.

    Evaluation counts rows whose rank-scaled coordinates all lie at or
    below the query point, so the estimate is grounded at 0, reaches 1
    at (1, ..., 1), and is non-decreasing in every coordinate.
    """

    def __init__(self, values):
        values = np.asarray(getattr(values, "values", values), dtype=float)
        if values.ndim != 2:
            raise InvalidSpecError("expected an (n, d) sample array")
        self.pseudo = _rank_scale(values)
        self.n = values.shape[0]
        self.dim = values.shape[1]

    def evaluate(self, u):
        u = np.atleast_2d(np.asarray(u, dtype=float))
        if u.shape[1] != self.dim:
            raise InvalidSpecError(f"query points must have dimension {self.dim}")
        out = np.array(
            [np.mean(np.all(self.pseudo <= point, axis=1)) for point in u]
        )
        return out if out.size > 1 else float(out[0])


@dataclass(frozen=True)
class KSResult:
    statistic: float
    critical_value: float
    alpha: float
    passed: bool


def ks_critical_value(alpha, n, m=None):
    """Asymptotic Kolmogorov-Smirnov critical value c(alpha)/sqrt(n).

    For a two-sample test pass ``m``; the effective sample size is then
    n m / (n + m).
    """
    c = math.sqrt(-0.5 * math.log(alpha / 2.0))
    eff = n if m is None else n * m / (n + m)
    return c / math.sqrt(eff)


def ks_uniform(samples, alpha=0.01) -> KSResult:
    """Exact KS statistic of a sample against the uniform law on [0, 1]."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n < 100:
        raise InvalidSpecError("need at least 100 observations")
    if x[0] < 0.0 or x[-1] > 1.0:
        raise InvalidSpecError("samples must lie in [0, 1]")
    grid = np.arange(1, n + 1) / n
    stat = max(float(np.max(grid - x)), float(np.max(x - (grid - 1.0 / n))))
    crit = ks_critical_value(alpha, n)
    return KSResult(stat, crit, alpha, stat < crit)


def ks_two_sample(x, y, alpha=0.01) -> KSResult:
    """Two-sample KS test at the asymptotic critical value."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    stat = float(ks_2samp(x, y).statistic)
    crit = ks_critical_value(alpha, x.size, y.size)
    return KSResult(stat, crit, alpha, stat < crit)


@dataclass(frozen=True)
class AsymmetryResult:
    statistic: float           # signed, largest |C(u,v) - C(v,u)| on the grid
    threshold: float
    significant: bool
    exceedances: int


def asymmetry_test(values, n_grid=9) -> AsymmetryResult:
    """Detect exchangeability violations of a bivariate sample.

    Scans C(u, v) - C(v, u) of the empirical copula over the grid pairs
    u < v (the statistic is antisymmetric, so the lower triangle adds
    no information).  The difference is deemed significant when it
    exceeds 4 sqrt(0.25/n) at one or more points that all share a sign.
    """
    values = np.asarray(getattr(values, "values", values), dtype=float)
    if values.ndim != 2 or values.shape[1] != 2:
        raise InvalidSpecError("asymmetry_test needs a bivariate sample")
    emp = EmpiricalCopula(values)
    n = values.shape[0]
    grid = (np.arange(1, n_grid + 1)) / (n_grid + 1.0)
    threshold = 4.0 * math.sqrt(0.25 / n)
    statistic = 0.0
    exceed = []
    for i, a in enumerate(grid):
        for b in grid[i + 1:]:
            delta = emp.evaluate((a, b)) - emp.evaluate((b, a))
            if abs(delta) > abs(statistic):
                statistic = delta
            if abs(delta) > threshold:
                exceed.append(delta)
    consistent = len(exceed) > 0 and (
        all(v > 0 for v in exceed) or all(v < 0 for v in exceed)
    )
    return AsymmetryResult(statistic, threshold, consistent, len(exceed))


def min_stability_sample(values, t, ell_at_inverse_t):
    """Map copula rows to the statistic min_i(t_i Y_i) * ell(1/t).

    With Y_i = -log U_i the scaled minimum is exponential with rate
    ell(1/t_1, ..., 1/t_d), so after multiplying by that rate the
    result is a unit-exponential sample whenever the rows follow the
    model; feed 1 - exp(-result) to ks_uniform to test it.
    """
    values = np.asarray(getattr(values, "values", values), dtype=float)
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        y = -np.log(values)
    return np.min(t * y, axis=1) * ell_at_inverse_t


@dataclass(frozen=True)
class BenchReport:
    """Wall-clock scaling of the two samplers across dimensions."""

    dims: tuple
    n: int
    seed: int
    seconds: dict                  # method -> {d: median seconds}
    repetitions: int
    engine: str
    host: str = field(default_factory=platform.platform)

    def ratio(self, method) -> float:
        """time at the largest dimension over time at the smallest."""
        per_dim = self.seconds[method]
        return per_dim[max(self.dims)] / per_dim[min(self.dims)]

    def format_table(self) -> str:
        header = "Dimension d      " + "".join(f"{d:>10}" for d in self.dims)
        lines = [header, "-" * len(header)]
        labels = {"definetti": "De Finetti", "pickands": "Pickands"}
        for method, per_dim in self.seconds.items():
            row = f"{labels.get(method, method):<17}" + "".join(
                f"{per_dim[d]:>10.3f}" for d in self.dims
            )
            lines.append(row)
        lines.append(
            "ratios (largest/smallest d): "
            + ", ".join(f"{m} {self.ratio(m):.1f}" for m in self.seconds)
        )
        return "\n".join(lines)

    def to_json(self) -> str:
        payload = {
            "dims": list(self.dims),
            "n": self.n,
            "seed": self.seed,
            "repetitions": self.repetitions,
            "engine": self.engine,
            "host": self.host,
            "seconds": {
                method: {str(d): s for d, s in per_dim.items()}
                for method, per_dim in self.seconds.items()
            },
            "ratios": {method: self.ratio(method) for method in self.seconds},
        }
        return json.dumps(payload, indent=2)


_SAMPLERS = {"definetti": sample_definetti, "pickands": sample_pickands}


def bench_scaling(dims, n=5000, methods=("definetti", "pickands"), seed=0,
                  *, repetitions=3, engine="rows") -> BenchReport:
    """Time both samplers on the exchangeable uniform-half model.

    Measures wall clock over full batch generation (no I/O), runs
    ``repetitions`` times per cell and keeps the median, single
    threaded.  The default ``rows`` engine times the row-sequential
    reference implementation, whose per-row overhead mirrors the
    interpreted setting in which the dimension-scaling contrast between
    the two samplers is usually reported; pass engine="batch" to time
    the vectorized engine instead.
    """
    dims = tuple(int(d) for d in dims)
    seconds = {}
    for method in methods:
        sampler = _SAMPLERS[method]
        per_dim = {}
        for d in dims:
            model = CopulaModel((UniformHalf(),) * d)
            times = []
            for rep in range(repetitions):
                start = time.perf_counter()
                sampler(model, n, seed=seed + rep, engine=engine, threads=1)
                times.append(time.perf_counter() - start)
            per_dim[d] = float(np.median(times))
        seconds[method] = per_dim
    return BenchReport(dims, n, seed, seconds, repetitions, engine)
