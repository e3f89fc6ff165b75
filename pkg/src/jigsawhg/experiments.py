"""Monte Carlo sweep harness and threshold-crossing estimation.

Grid points map a scale constant c to colour probabilities through the
threshold form of the model, trials are seeded independently through a
splitmix64 chain, and percolation frequencies are reported with Wilson
score intervals. The crossing estimator bisects c until the interval at
the midpoint contains the target or the bracket is narrow enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

from .combinatorics import rank_space
from .engine import percolate
from .errors import ValidationError
from .sampling import MODEL_LINE, MODEL_MULTI, SampleSpec, sample

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class SweepConfig:
    """One Monte Carlo experiment: model, sizes, c grid, allocation, trials, seed."""

    model: str
    n: int
    k: int
    j: int
    s: int
    r_threshold: int
    c_grid: Tuple[float, ...]
    allocation: Union[str, Tuple[float, ...]] = "balanced"
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c_grid", tuple(float(c) for c in self.c_grid))
        if self.model not in (MODEL_MULTI, MODEL_LINE):
            raise ValidationError(f"unknown model {self.model!r}")
        if self.trials < 1:
            raise ValidationError("trials must be at least 1")
        if not self.c_grid or any(c <= 0 for c in self.c_grid):
            raise ValidationError("c grid must hold positive values")
        if any(b <= a for a, b in zip(self.c_grid, self.c_grid[1:])):
            raise ValidationError("c grid must be strictly increasing")
        if not 1 <= self.j < self.k:
            raise ValidationError(f"need 1 <= j < k, got k={self.k}, j={self.j}")
        if self.s < 1 or not 1 <= self.r_threshold <= self.s:
            raise ValidationError(f"r_threshold {self.r_threshold} out of [1, {self.s}]")
        if self.model == MODEL_LINE:
            if self.k != 2 or self.j != 1 or self.s != 2:
                raise ValidationError("line model requires k=2, j=1, s=2")
        if self.allocation != "balanced":
            ratios = tuple(float(w) for w in self.allocation)
            if len(ratios) != self.s or any(w <= 0 for w in ratios):
                raise ValidationError("allocation ratios must be positive, one per colour")
            object.__setattr__(self, "allocation", ratios)


@dataclass(frozen=True)
class SweepRow:
    """Aggregated result of one grid point."""

    model: str
    n: int
    k: int
    j: int
    s: int
    r_threshold: int
    c: float
    p_values: Tuple[float, ...]
    trials: int
    percolated: int
    prob: float
    ci_low: float
    ci_high: float
    mean_rounds: float
    mean_max_cluster_frac: float
    min_p_condition_met: bool
    seed: int


@dataclass(frozen=True)
class CrossingResult:
    c_star: float
    rows: Tuple[SweepRow, ...]


def _splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix_seed(master: int, *indices: int) -> int:
    """Pure 64-bit mix of a master seed with grid/trial indices.

    Each index is folded in as splitmix64(h xor (index + 1) * golden), so
    parallel and serial trial orders derive identical per-trial seeds.
    """
    h = master & _MASK64
    for ix in indices:
        h = _splitmix64(h ^ (((ix + 1) * _GOLDEN) & _MASK64))
    return h


def wilson_interval(count: int, trials: int, z: float = _Z95) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1 or not 0 <= count <= trials:
        raise ValidationError(f"bad counts: {count}/{trials}")
    phat = count / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    # rounding must not push the point estimate outside the interval
    low = min(max(0.0, center - half), phat)
    high = max(min(1.0, center + half), phat)
    return low, high


def _model_scale(config: SweepConfig) -> Tuple[int, int]:
    """(vertex count, k) of the sampled structure the process runs on."""
    if config.model == MODEL_LINE:
        return math.comb(config.n, 2), 2
    return config.n, config.k


def probabilities_for_c(config: SweepConfig, c: float) -> Tuple[float, ...]:
    """Colour probabilities whose product sits at c times the threshold form.

    multi model: prod p_i = c / (n^(s(k-j-1)+1) * (ln n)^(s-1)); the line
    model uses c / (n ln n) in its base parameter n (the pair structure on
    binom(n,2) vertices percolates at that scale, matching the 2-uniform
    process it mirrors). Natural logarithm throughout. Balanced allocation
    takes the s-th root; ratio allocation scales the given weights to the
    same product.
    """
    if c <= 0:
        raise ValidationError("c must be positive")
    if config.model == MODEL_LINE:
        product = c / (config.n * math.log(config.n))
    else:
        exponent = config.s * (config.k - config.j - 1) + 1
        product = c / (config.n**exponent * math.log(config.n) ** (config.s - 1))
    if config.allocation == "balanced":
        p = product ** (1.0 / config.s)
        values = (p,) * config.s
    else:
        ratios = config.allocation
        scale = (product / math.prod(ratios)) ** (1.0 / config.s)
        values = tuple(w * scale for w in ratios)
    if any(p > 1.0 for p in values):
        raise ValidationError(f"allocation at c={c} yields a probability above 1")
    return values


def _min_p_condition(config: SweepConfig, c: float, p_values: Tuple[float, ...]) -> bool:
    # side condition c * ln(n) / n^(k-j); the line model states it in its base n
    if config.model == MODEL_LINE:
        bound = c * math.log(config.n) / config.n
    else:
        bound = c * math.log(config.n) / config.n ** (config.k - config.j)
    return min(p_values) >= bound


def evaluate_point(config: SweepConfig, c: float, point_index: int, trials: Optional[int] = None) -> SweepRow:
    """Monte Carlo estimate at a single c; trial seeds derive from
    (config.seed, point_index, trial)."""
    trials = config.trials if trials is None else int(trials)
    if trials < 1:
        raise ValidationError("trials must be at least 1")
    p_values = probabilities_for_c(config, c)
    n_eff, _ = _model_scale(config)
    family = rank_space(n_eff, config.j)
    count = 0
    rounds_total = 0
    frac_total = 0.0
    for trial in range(trials):
        seed = mix_seed(config.seed, point_index, trial)
        spec = SampleSpec(config.n, config.k, config.s, p_values, model=config.model, seed=seed)
        result = percolate(sample(spec), config.j, config.r_threshold)
        count += result.percolated
        rounds_total += result.rounds
        frac_total += result.trajectory[-1][2] / family
    low, high = wilson_interval(count, trials)
    return SweepRow(
        model=config.model,
        n=config.n,
        k=config.k,
        j=config.j,
        s=config.s,
        r_threshold=config.r_threshold,
        c=c,
        p_values=p_values,
        trials=trials,
        percolated=count,
        prob=count / trials,
        ci_low=low,
        ci_high=high,
        mean_rounds=rounds_total / trials,
        mean_max_cluster_frac=frac_total / trials,
        min_p_condition_met=_min_p_condition(config, c, p_values),
        seed=config.seed,
    )


def _check_monotone(rows: Sequence[SweepRow]) -> None:
    """Estimated probability must be non-decreasing in c up to interval overlap."""
    for prev, cur in zip(rows, rows[1:]):
        if cur.prob < prev.prob and cur.ci_high < prev.ci_low:
            raise RuntimeError(
                f"percolation estimate decreased beyond confidence overlap between c={prev.c} and c={cur.c}"
            )


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """One row per grid point; byte-reproducible for identical configs."""
    rows = [evaluate_point(config, c, gi) for gi, c in enumerate(config.c_grid)]
    _check_monotone(rows)
    return rows


def estimate_crossing(
    config: SweepConfig,
    target: float = 0.5,
    tolerance: float = 0.5,
    evaluate: Optional[Callable[[float, int], SweepRow]] = None,
) -> CrossingResult:
    """Bisect c within the grid's end points until the Wilson interval at the
    midpoint contains the target or the bracket is narrower than tolerance.

    evaluate(c, point_index) may replace the Monte Carlo evaluation (used by
    calibration tests); it must return a SweepRow.
    """
    if not 0.0 < target < 1.0:
        raise ValidationError("target must lie strictly between 0 and 1")
    if tolerance <= 0:
        raise ValidationError("tolerance must be positive")
    if evaluate is None:
        evaluate = lambda c, idx: evaluate_point(config, c, idx)
    lo, hi = config.c_grid[0], config.c_grid[-1]
    if lo >= hi:
        raise ValidationError("crossing needs a bracket of at least two grid values")
    rows = [evaluate(lo, 0), evaluate(hi, 1)]
    if rows[0].prob > target or rows[1].prob < target:
        raise ValidationError(
            f"bracket [{lo}, {hi}] does not straddle target {target}: "
            f"estimates {rows[0].prob} and {rows[1].prob}"
        )
    point_index = 2
    while hi - lo > tolerance:
        mid = (lo + hi) / 2.0
        row = evaluate(mid, point_index)
        point_index += 1
        rows.append(row)
        if row.ci_low <= target <= row.ci_high:
            return CrossingResult(mid, tuple(rows))
        if row.prob < target:
            lo = mid
        else:
            hi = mid
    return CrossingResult((lo + hi) / 2.0, tuple(rows))
