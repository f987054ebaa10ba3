"""Exact copula sampling through the angular (Pickands) representation.

The stable tail dependence function of the model satisfies
ell(t) = d E[max_i t_i Q_i] for a simplex-valued angular vector Q, and
for this copula family Q has an explicit construction: pick a uniform
index D, replace the D-th coordinate of the independent margin draws
(X_1, ..., X_d) by a draw M_D from the size-biased law x dF_D(x), and
normalize W to unit sum.

A vector with standard Frechet margins and the target dependence is the
componentwise maximum Z_i = max_k Q_i^(k) / (e_1 + ... + e_k) over
independent copies Q^(k) and exponentials e_k of mean 1/d.  Because
every Q component is bounded by one and the arrival sums increase, the
maximum is reached after finitely many terms: once
1/(e_1 + ... + e_n) <= min_i Z_i(n), later terms cannot change any
component, so iteration stops at

    I = min{n : 1/(e_1 + ... + e_n) <= m_n}.

The output row is U_i = exp(-1/Z_i), mapping the Frechet margins to
uniforms.  Unlike the frailty sampler this works for arbitrary margins
(unbounded supports and atoms included), at a per-row cost that grows
quickly with the dimension.
"""

from dataclasses import dataclass, field

import numpy as np

from .sampling import DEFAULT_BLOCK_SIZE, SampleBatch, derive_rng, run_blocks


def sample_Q(model, rng):
    """Draw one angular vector Q on the unit simplex.

    Every component has mean 1/d.  Zero components are legal (atoms of
    a margin at zero); the size-biased coordinate is strictly positive,
    so the normalizing sum never vanishes.
    """
    w = _draw_w(model, rng)
    return w / w.sum()


def _draw_w(model, rng):
    # margin draws by inversion, vectorized per distinct margin; the
    # picked coordinate's uniform is discarded and replaced by a
    # size-biased draw (independence is preserved)
    u = rng.random(model.dim)
    w = np.empty(model.dim)
    for dist, idx in model.margin_groups:
        w[idx] = dist.quantile(u[idx])
    pick = int(rng.integers(model.dim))
    w[pick] = model.margins[pick].sample_size_biased(rng)
    return w


@dataclass
class PickandsState:
    """Running maxima of one row, advanced one angular draw at a time."""

    partial_max: np.ndarray
    arrival_sum: float = 0.0
    n: int = 0
    min_component: float = field(init=False, default=0.0)

    def advance(self, q, step):
        """Fold in the next angular vector with exponential step ``step``."""
        self.n += 1
        self.arrival_sum += step
        np.maximum(self.partial_max, q / self.arrival_sum, out=self.partial_max)
        self.min_component = float(self.partial_max.min())

    @property
    def stopped(self) -> bool:
        """True once no later term can raise any component."""
        return self.n > 0 and 1.0 / self.arrival_sum <= self.min_component


def simulate_row(model, rng, *, extra_iterations=0):
    """Iterate one row to its stopping index (plus optional extra terms).

    Returns (state, stopping_index).  Extra iterations past the
    stopping index are available to check that they never change the
    partial maxima.
    """
    d = model.dim
    state = PickandsState(np.zeros(d))
    while not state.stopped:
        state.advance(sample_Q(model, rng), rng.exponential() / d)
    stop_index = state.n
    for _ in range(extra_iterations):
        state.advance(sample_Q(model, rng), rng.exponential() / d)
    return state, stop_index


def _frechet_to_uniform(z):
    with np.errstate(divide="ignore"):
        # components stuck at zero map to u = 0 (possible only for atoms)
        return np.exp(-1.0 / z)


def _sample_rows(model, start, stop, seed):
    out = np.empty((stop - start, model.dim))
    iters = 0
    for r in range(start, stop):
        rng = derive_rng(seed, "pickands-row", r)
        state, stop_index = simulate_row(model, rng)
        out[r - start] = _frechet_to_uniform(state.partial_max)
        iters += stop_index
    return out, iters


def _sample_block(model, rng, m):
    """Vectorized stopping-rule iteration for a block of m rows."""
    d = model.dim
    z = np.zeros((m, d))
    arrival = np.zeros(m)
    active = np.arange(m)
    iters = 0
    while active.size:
        k = active.size
        iters += k
        arrival[active] += rng.exponential(size=k) / d
        u = rng.random((k, d))
        w = np.empty((k, d))
        for dist, idx in model.margin_groups:
            w[:, idx] = dist.quantile(u[:, idx])
        pick = rng.integers(d, size=k)
        for j, margin in enumerate(model.margins):
            rows = np.where(pick == j)[0]
            if rows.size:
                w[rows, j] = margin.sample_size_biased(rng, rows.size)
        q = w / w.sum(axis=1, keepdims=True)
        z_active = np.maximum(z[active], q / arrival[active, None])
        z[active] = z_active
        done = 1.0 / arrival[active] <= z_active.min(axis=1)
        active = active[~done]
    return z, iters


def sample_pickands(model, n, seed=0, *, engine="batch",
                    block_size=DEFAULT_BLOCK_SIZE, threads=1) -> SampleBatch:
    """Draw n rows of the copula through the angular representation.

    Works for any margins that support size-biased sampling.  Engines
    as in the frailty sampler: ``batch`` vectorizes rows in blocks,
    ``rows`` runs the reference per-row recursion with one stream per
    row.  The mean stopping index over the batch is reported in
    ``extra["mean_stopping_index"]``.
    """
    total_iters = 0

    if engine == "rows":
        def worker(block, start, stop):
            nonlocal total_iters
            values, iters = _sample_rows(model, start, stop, seed)
            total_iters += iters
            return values
    elif engine == "batch":
        def worker(block, start, stop):
            nonlocal total_iters
            z, iters = _sample_block(
                model, derive_rng(seed, "pickands", block), stop - start
            )
            total_iters += iters
            return _frechet_to_uniform(z)
    else:
        raise ValueError(f"unknown engine {engine!r}")

    values = run_blocks(n, model.dim, worker, block_size=block_size, threads=threads)
    return SampleBatch(
        values, seed=seed, method="pickands", engine=engine,
        extra={"mean_stopping_index": total_iters / max(n, 1)},
    )
