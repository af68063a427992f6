"""Quantitative experiments: graphical fractions, dominance comparability,
surrogate events with their Chernoff bounds, and total-variation comparisons
between the diagram law and the exponential-sums model.

Monte Carlo estimators carry full provenance (seed, stream, sample count) and
exact estimators carry stderr 0, so results serialize into comparable
records.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import get_context
from typing import Literal

import numpy as np

from .asymptotics import C, hardy_ramanujan_log
from .counting import RestrictedCountTable, count_partitions
from .partitions import _nash_williams, partitions
from .sampling import RngStream, exponential_sums, make_sampler, surrogate_batch

Method = Literal["exact-enumeration", "exact-ratio", "monte-carlo"]


@dataclass(frozen=True)
class Estimate:
    """Point estimate with its sampling provenance."""

    value: float
    stderr: float
    samples: int
    seed: int
    stream_id: int
    method: Method

    def __post_init__(self):
        exact = self.method != "monte-carlo"
        if exact != (self.stderr == 0.0):
            raise ValueError("stderr must be 0 exactly for exact methods")

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
            "stream_id": self.stream_id,
            "method": self.method,
        }


def _exact_estimate(value: float, samples: int, method: Method = "exact-enumeration") -> Estimate:
    return Estimate(value=value, stderr=0.0, samples=samples, seed=0, stream_id=0,
                    method=method)


def _bernoulli_estimate(hits: int, samples: int, rng: RngStream) -> Estimate:
    v = hits / samples
    return Estimate(value=v, stderr=math.sqrt(v * (1.0 - v) / samples), samples=samples,
                    seed=rng.seed, stream_id=rng.stream_id, method="monte-carlo")


def _require_stream(rng) -> RngStream:
    if not isinstance(rng, RngStream):
        raise TypeError("experiments require an RngStream for provenance")
    return rng


@dataclass(frozen=True)
class FractionRow:
    n: int
    graphical: int | None
    total: int | None
    estimate: Estimate

    @property
    def fraction(self) -> Fraction | None:
        if self.graphical is None:
            return None
        return Fraction(self.graphical, self.total)


@dataclass(frozen=True)
class FractionSeries:
    rows: tuple[FractionRow, ...]


WILF_EXACT_CAP = 80


def _wilf_largest_chunk(args: tuple[int, int]) -> tuple[int, int]:
    n, largest = args
    graphical = 0
    total = 0
    check = _nash_williams
    for rest in partitions(n - largest, max_part=largest):
        total += 1
        if check((largest,) + rest):
            graphical += 1
    return graphical, total


def wilf_graphical_counts(n: int, processes: int = 1) -> tuple[int, int]:
    """(graphical, total) over every partition of even n, by exhaustive sweep.

    The sweep splits by largest part, so it parallelizes across processes
    with order-independent aggregation.
    """
    if n == 0:
        return 1, 1
    tasks = [(n, m) for m in range(n, 0, -1)]
    if processes > 1:
        with get_context("fork").Pool(processes) as pool:
            results = pool.map(_wilf_largest_chunk, tasks)
    else:
        results = [_wilf_largest_chunk(t) for t in tasks]
    graphical = sum(g for g, _ in results)
    total = sum(t for _, t in results)
    return graphical, total


def wilf_fraction_exact(n: int, cap: int = WILF_EXACT_CAP, processes: int = 1) -> Estimate:
    """Exact fraction of graphical partitions of even n by full enumeration."""
    if n % 2:
        raise ValueError("n must be even")
    if n > cap:
        raise ValueError(f"n={n} beyond enumeration cap {cap}; use wilf_fraction_mc")
    graphical, total = wilf_graphical_counts(n, processes)
    return _exact_estimate(graphical / total, samples=total)


def wilf_fraction_mc(n: int, samples: int, rng, table: RestrictedCountTable) -> Estimate:
    """Monte Carlo fraction of graphical partitions via the exact sampler."""
    if n % 2:
        raise ValueError("n must be even")
    rng = _require_stream(rng)
    draw = make_sampler(n, rng, table)
    check = _nash_williams
    hits = 0
    for _ in range(samples):
        if check(draw()):
            hits += 1
    return _bernoulli_estimate(hits, samples, rng)


def wilf_series(n_values, samples: int, rng, table: RestrictedCountTable | None = None,
                cap: int = WILF_EXACT_CAP, processes: int = 1) -> FractionSeries:
    """Graphical fraction for each even n: exact below the cap, MC above."""
    rows = []
    for i, n in enumerate(n_values):
        if n % 2:
            raise ValueError("series is over even n only")
        if n <= cap:
            graphical, total = wilf_graphical_counts(n, processes)
            rows.append(FractionRow(n, graphical, total,
                                    _exact_estimate(graphical / total, total)))
        else:
            if table is None or table.n_max < n:
                raise ValueError("Monte Carlo rows need a table with n_max >= n")
            est = wilf_fraction_mc(n, samples, _require_stream(rng).split(i), table)
            rows.append(FractionRow(n, None, None, est))
    return FractionSeries(tuple(rows))


# Dominance comparability of two independent uniform partitions.

def _prefix_matrix(parts_list: list[tuple[int, ...]]) -> np.ndarray:
    depth = max((len(p) for p in parts_list), default=1)
    mat = np.zeros((len(parts_list), depth), dtype=np.int64)
    for i, p in enumerate(parts_list):
        mat[i, :len(p)] = p
    return np.cumsum(mat, axis=1)


MACDONALD_EXACT_CAP = 25


def macdonald_comparable_exact(n: int, cap: int = MACDONALD_EXACT_CAP) -> Estimate:
    """Exact probability that one uniform partition dominates another.

    Counts ordered pairs (lam, mu) with mu below lam in dominance order over
    all p(n)^2 pairs.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise ValueError(f"n={n} beyond pair-enumeration cap {cap}")
    prefix = _prefix_matrix(list(partitions(n)))
    count = len(prefix)
    comparable = 0
    block = 512
    for lo in range(0, count, block):
        chunk = prefix[lo:lo + block]
        # pair (i, j) counted when prefix_i >= prefix_j everywhere
        comparable += int(np.all(chunk[:, None, :] >= prefix[None, :, :], axis=2).sum())
    return _exact_estimate(comparable / count**2, samples=count**2)


def _dominates_prefix(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    # True when partial sums of a stay >= partial sums of b (equal weights)
    sa = sb = 0
    la, lb = len(a), len(b)
    for i in range(lb):
        sa += a[i] if i < la else 0
        sb += b[i]
        if sb > sa:
            return False
    return True


def _conjugate_tuple(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    out = []
    m = len(parts)
    for i in range(1, parts[0] + 1):
        while parts[m - 1] < i:
            m -= 1
        out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class MacdonaldMC:
    comparable: Estimate
    self_dual: Estimate


def macdonald_comparable_mc(n: int, samples: int, rng, table: RestrictedCountTable) -> MacdonaldMC:
    """Monte Carlo dominance probability for independent pairs, plus the
    probability that a single draw is dominated by its own conjugate."""
    rng = _require_stream(rng)
    draw = make_sampler(n, rng, table)
    comparable = 0
    self_dual = 0
    for _ in range(samples):
        lam = draw()
        mu = draw()
        if _dominates_prefix(lam, mu):
            comparable += 1
        if _dominates_prefix(_conjugate_tuple(lam), lam):
            self_dual += 1
    return MacdonaldMC(
        comparable=_bernoulli_estimate(comparable, samples, rng),
        self_dual=_bernoulli_estimate(self_dual, samples, rng),
    )


# Surrogate product event and the Chernoff-type bounds of its analysis.

def surrogate_event_pk(n: int, k: int, samples: int, rng, chunk: int = 100_000) -> Estimate:
    """P(min over i <= k of prod_{j<=i} S'_j/S_j >= 1/2), by Monte Carlo.

    Products run in log space; n is recorded for provenance but the event
    itself depends only on k.
    """
    if k < 1:
        raise ValueError("k must be positive")
    rng = _require_stream(rng)
    gen = rng.generator()
    hits = 0
    done = 0
    thresh = -math.log(2.0)
    while done < samples:
        m = min(chunk, samples - done)
        s, s_dual = exponential_sums(gen, m, k)
        drift = np.cumsum(np.log(s_dual) - np.log(s), axis=1)
        hits += int(np.count_nonzero(drift.min(axis=1) >= thresh))
        done += m
    return _bernoulli_estimate(hits, samples, rng)


def surrogate_event_pk_curve(n: int, ks, samples: int, rng,
                             chunk: int = 50_000) -> dict[int, Estimate]:
    """P_k estimates at several k from one shared sample, preserving nesting."""
    ks = sorted(set(int(k) for k in ks))
    if ks[0] < 1:
        raise ValueError("k must be positive")
    rng = _require_stream(rng)
    gen = rng.generator()
    kmax = ks[-1]
    hits = {k: 0 for k in ks}
    done = 0
    thresh = -math.log(2.0)
    idx = [k - 1 for k in ks]
    while done < samples:
        m = min(chunk, samples - done)
        s, s_dual = exponential_sums(gen, m, kmax)
        drift = np.cumsum(np.log(s_dual) - np.log(s), axis=1)
        running_min = np.minimum.accumulate(drift, axis=1)[:, idx]
        ok = running_min >= thresh
        for col, k in enumerate(ks):
            hits[k] += int(np.count_nonzero(ok[:, col]))
        done += m
    return {k: _bernoulli_estimate(hits[k], samples, rng) for k in ks}


def chernoff_bounds(j: int, d: float) -> tuple[float, float]:
    """(tight, loose) bounds for P(|S_j/j - 1| >= d): exp(j(log(1+d)-d)) and exp(-j d^2/2)."""
    if not 0.0 < d < 1.0:
        raise ValueError("d must lie in (0, 1)")
    return math.exp(j * (math.log1p(d) - d)), math.exp(-j * d * d / 2.0)


@dataclass(frozen=True)
class BoundCheck:
    """Empirical frequency of a tail event next to its analytic bound."""

    empirical: float
    bound: float
    bound_loose: float
    stderr: float
    samples: int

    @property
    def dominated(self) -> bool:
        """Bound holds up to Monte Carlo slack of five standard errors."""
        return self.empirical <= self.bound + 5.0 * self.stderr


def chernoff_validate(j: int, d: float, samples: int, rng) -> BoundCheck:
    """Empirical P(|S_j/j - 1| >= d) against its Chernoff bounds.

    S_j is drawn as Gamma(j), equal in law to the partial sum of j unit
    exponentials.
    """
    bound, loose = chernoff_bounds(j, d)
    rng = _require_stream(rng)
    gen = rng.generator()
    s = gen.gamma(j, size=samples)
    emp = float(np.mean(np.abs(s / j - 1.0) >= d))
    stderr = math.sqrt(emp * (1.0 - emp) / samples)
    return BoundCheck(empirical=emp, bound=bound, bound_loose=loose,
                      stderr=stderr, samples=samples)


def ratio_bound(j: int, beta: float) -> float:
    """(1 + (beta-1)^2 / (4 beta))^{-j}, bounding P(S'_j/S_j >= beta)."""
    if beta <= 1.0:
        raise ValueError("beta must exceed 1")
    return (1.0 + (beta - 1.0) ** 2 / (4.0 * beta)) ** (-j)


def ratio_bound_validate(j: int, beta: float, samples: int, rng) -> BoundCheck:
    """Empirical P(S'_j/S_j >= beta) against the moment bound."""
    bound = ratio_bound(j, beta)
    rng = _require_stream(rng)
    gen = rng.generator()
    s = gen.gamma(j, size=samples)
    s_dual = gen.gamma(j, size=samples)
    emp = float(np.mean(s_dual >= beta * s))
    stderr = math.sqrt(emp * (1.0 - emp) / samples)
    return BoundCheck(empirical=emp, bound=bound, bound_loose=bound,
                      stderr=stderr, samples=samples)


# Total variation distance between the joint law of the largest part and
# part count of a uniform partition and the k=1 surrogate law.

@dataclass(frozen=True)
class TvExact:
    """Exact-structure TV computation over a truncated support window."""

    n: int
    tv: float
    window_hi: int
    leak_true: float
    leak_model: float
    nonpositive_mass: float

    @property
    def unaccounted(self) -> float:
        """Mass where neither law is resolved; bounded by the smaller leak."""
        return min(self.leak_true, self.leak_model)


def _box_pmf_sweep(n: int, width: int) -> np.ndarray:
    """Joint counts of (largest part, part count) for partitions of n.

    Entry [l, m] is the number of partitions of n with largest part exactly
    l and exactly m parts, for 1 <= l, m <= width + 1.  Computed through the
    hook decomposition: that count equals the number of partitions of
    n + 1 - l - m inside an (l-1) x (m-1) box, and the box counts satisfy a
    local recurrence swept here in float64.  Counts stay below p(n), well
    inside double range for n up to ~7e4, and additions of nonnegative terms
    keep the relative error near 1e-12.
    """
    length = n + 1
    b = np.zeros((width + 1, length))
    b[:, 0] = 1.0
    pmf = np.zeros((width + 2, width + 2))
    a_idx = np.arange(1, width + 1)
    for count_bound in range(1, width + 1):
        for a in range(1, width + 1):
            row = b[a - 1].copy()
            if a < length:
                row[a:] += b[a, :length - a]
            b[a] = row
        read = n - 1 - count_bound - a_idx
        valid = read >= 0
        pmf[a_idx[valid] + 1, count_bound + 1] = b[a_idx[valid], read[valid]]
    if n <= width + 1:
        pmf[n, 1] = 1.0
        pmf[1, n] = 1.0
    return pmf


def tv_distance_k1(n: int, leak_budget: float = 1e-6) -> TvExact:
    """TV distance between the exact law of (largest part, part count) and the
    independent-exponential surrogate at k=1.

    Both laws are evaluated cell by cell on a finite window; the model law
    has closed-form cell probabilities, and the exact law comes from the box
    count sweep normalized by p(n).  Mass outside the window is accounted
    through closed-form tails (model side) and the sweep residual (exact
    side); an error is raised when more than leak_budget is unaccounted in
    either law.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if hardy_ramanujan_log(n) > 700.0:
        raise ValueError("n too large for float64 counts (log p(n) > 700)")
    scale = math.sqrt(n) / C
    tail_target = leak_budget / 100.0
    width = int(math.ceil(scale * math.log(scale / tail_target)))
    p_n = float(count_partitions(n))

    pmf_true = _box_pmf_sweep(n, width) / p_n
    mass_true = float(pmf_true.sum())
    leak_true = max(0.0, 1.0 - mass_true)

    # model marginal: P(height = t) = e^{-g(t)} - e^{-g(t-1)}, g(t) = scale e^{-t/scale}
    ts = np.arange(0, width + 2)
    surv = np.exp(-scale * np.exp(-ts / scale))  # P(height <= t)
    marg = np.diff(surv)  # index t-1 -> P(height = t), t = 1..width+1
    below = float(surv[0])  # P(height <= 0)
    in_range = float(marg.sum())
    pmf_model = np.outer(marg, marg)

    nonpositive = 1.0 - (1.0 - below) ** 2
    leak_model = (1.0 - below) ** 2 - in_range**2
    if leak_true > leak_budget or leak_model > leak_budget:
        raise ValueError(
            f"window leaves unaccounted mass beyond {leak_budget}: "
            f"true {leak_true:.3g}, model {leak_model:.3g}")

    core = float(np.abs(pmf_true[1:, 1:] - pmf_model).sum())
    tv = 0.5 * (core + nonpositive + leak_true + leak_model)
    return TvExact(n=n, tv=tv, window_hi=width + 1, leak_true=leak_true,
                   leak_model=leak_model, nonpositive_mass=nonpositive)


@dataclass(frozen=True)
class TvMc:
    estimate: Estimate
    cells: int
    clip: int


def _conjugate_prefix_k(parts: tuple[int, ...], k: int) -> tuple[int, ...]:
    # first k dual parts: number of parts >= j for j = 1..k
    m = len(parts)
    out = []
    for j in range(1, k + 1):
        while m > 0 and parts[m - 1] < j:
            m -= 1
        out.append(m)
    return tuple(out)


def tv_distance_mc(n: int, k: int, samples: int, rng, table: RestrictedCountTable,
                   clip: int | None = None, compare_with: str = "surrogate") -> TvMc:
    """Plug-in TV lower bound between empirical joint laws of the k largest
    parts and k largest dual parts, sampled exactly and from the surrogate.

    Joint outcomes bin into integer cells clipped to [0, clip]; coarsening
    can only lower the estimate, so the reported value is a lower bound on
    the true distance.  stderr is the conservative null scale
    sqrt(cells / (2 samples)) / sqrt(2).  compare_with="self" replaces the
    surrogate with a second independent exact stream, a null check whose
    distance should sit at the noise floor.
    """
    rng = _require_stream(rng)
    if clip is None:
        clip = int(math.ceil(3.0 * math.sqrt(n) / C * math.log(n)))
    if compare_with not in ("surrogate", "self"):
        raise ValueError("compare_with must be 'surrogate' or 'self'")

    def exact_counts(stream: RngStream) -> Counter:
        draw = make_sampler(n, stream, table)
        counts: Counter = Counter()
        for _ in range(samples):
            parts = draw()
            head = tuple(min(p, clip) for p in parts[:k]) + (0,) * max(0, k - len(parts))
            dual = tuple(min(q, clip) for q in _conjugate_prefix_k(parts, k))
            counts[head + dual] += 1
        return counts

    counts_true = exact_counts(rng)
    if compare_with == "self":
        counts_model = exact_counts(rng.split(rng.stream_id + 1))
    else:
        counts_model = Counter()
        gen = rng.split(rng.stream_id + 1).generator()
        done = 0
        while done < samples:
            m = min(100_000, samples - done)
            _, _, heights, widths = surrogate_batch(n, k, gen, m)
            np.clip(heights, 0, clip, out=heights)
            np.clip(widths, 0, clip, out=widths)
            stacked = np.hstack([heights, widths])
            for row in stacked:
                counts_model[tuple(int(x) for x in row)] += 1
            done += m

    keys = counts_true.keys() | counts_model.keys()
    tv = 0.5 * sum(abs(counts_true[key] - counts_model[key]) for key in keys) / samples
    stderr = 0.5 * math.sqrt(2.0 * len(keys) / samples)
    est = Estimate(value=tv, stderr=stderr, samples=samples, seed=rng.seed,
                   stream_id=rng.stream_id, method="monte-carlo")
    return TvMc(estimate=est, cells=len(keys), clip=clip)
