"""Seeded random point sets and empirical checks of the probability bound.

Trial ``i`` under master seed ``S`` draws from a Philox stream keyed by
``SeedSequence(S, spawn_key=(i,))``, so every trial is reproducible on its
own and the outcome does not depend on how trials are scheduled.
"""

from __future__ import annotations

import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy import stats

from .bounds import theorem_bound
from .core import PointSet, default_budget
from .discrepancy import cover_work, exact_work, star_discrepancy
from .errors import CapacityError, InputError

GENERATOR = f"numpy.random.Philox/SeedSequence(seed, spawn_key=(trial,)) numpy-{np.__version__}"


def trial_generator(seed: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(trial),))
    return np.random.Generator(np.random.Philox(ss))


def generate_uniform(s: int, N: int, seed: int, trial: int = 0) -> PointSet:
    """N i.i.d. uniform points in ``[0, 1)^s`` from the stream of ``(seed, trial)``."""
    if s < 1 or N < 1:
        raise InputError("s and N must be positive")
    return PointSet(trial_generator(seed, trial).random((N, s)))


def binomial_ci(pass_count: int, trials: int, level: float = 0.99) -> Tuple[float, float]:
    """Two-sided Clopper-Pearson interval for a binomial proportion."""
    if not 0 <= pass_count <= trials or trials < 1:
        raise InputError(f"need 0 <= pass_count <= trials, got {pass_count}/{trials}")
    if not 0.0 < level < 1.0:
        raise InputError(f"level must lie in (0, 1), got {level!r}")
    alpha = 1.0 - level
    k, n = pass_count, trials
    low = 0.0 if k == 0 else float(stats.beta.ppf(alpha / 2, k, n - k + 1))
    high = 1.0 if k == n else float(stats.beta.ppf(1 - alpha / 2, k + 1, n - k))
    return low, high


def binomial_lower_bound(pass_count: int, trials: int, level: float = 0.99) -> float:
    """One-sided Clopper-Pearson lower confidence bound."""
    if not 0 <= pass_count <= trials or trials < 1:
        raise InputError(f"need 0 <= pass_count <= trials, got {pass_count}/{trials}")
    if pass_count == 0:
        return 0.0
    return float(stats.beta.ppf(1.0 - level, pass_count, trials - pass_count + 1))


@dataclass(frozen=True)
class ExperimentConfig:
    s: int
    N: int
    q: float
    trials: int
    seed: int
    method: str = "exact"
    delta: Optional[float] = None
    parallelism: Union[int, str] = 1
    ci_level: float = 0.99
    budget: Optional[int] = None

    def __post_init__(self):
        if self.s < 1 or self.N < 1 or self.trials < 1:
            raise InputError("s, N and trials must be positive integers")
        if not 0.0 < self.q < 1.0:
            raise InputError(f"q must lie in the open interval (0, 1), got {self.q!r}")
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must be a 64-bit unsigned integer")
        if self.method not in ("exact", "cover"):
            raise InputError(f"unknown method {self.method!r}")
        if self.method == "cover" and (self.delta is None or not 0.0 < self.delta <= 1.0):
            raise InputError("method=cover needs delta in (0, 1]")
        if self.parallelism != "auto" and (int(self.parallelism) != self.parallelism
                                           or self.parallelism < 1):
            raise InputError("parallelism must be a positive integer or 'auto'")

    def workers(self) -> int:
        if self.parallelism == "auto":
            return os.cpu_count() or 1
        return int(self.parallelism)

    def echo(self) -> dict:
        """Fields that determine the result; parallelism is deliberately absent."""
        d = asdict(self)
        d.pop("parallelism")
        d["budget"] = self.resolved_budget()
        if self.method == "exact":
            d.pop("delta")
        return d

    def resolved_budget(self) -> int:
        return default_budget() if self.budget is None else int(self.budget)


@dataclass(frozen=True)
class TrialResult:
    trial: int
    value: float
    upper: float
    passed: bool


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    threshold: float
    pass_count: int
    empirical_probability: float
    ci_low: float
    ci_high: float
    lower_bound: float
    summary: dict
    surrogate: bool
    generator: str = GENERATOR
    trial_results: Tuple[TrialResult, ...] = field(default=(), repr=False)

    @property
    def violates_theorem(self) -> bool:
        """True when even the upper confidence limit falls below q."""
        return self.ci_high < self.config.q

    def to_dict(self) -> dict:
        return {
            "schema": "stardisc/1",
            "config": self.config.echo(),
            "generator": self.generator,
            "threshold": self.threshold,
            "surrogate": self.surrogate,
            "pass_count": self.pass_count,
            "trials": self.config.trials,
            "empirical_probability": self.empirical_probability,
            "ci_level": self.config.ci_level,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "lower_bound_one_sided": self.lower_bound,
            "discrepancy_summary": self.summary,
        }


def _run_trial(cfg: ExperimentConfig, threshold: float, budget: int, trial: int) -> TrialResult:
    P = generate_uniform(cfg.s, cfg.N, cfg.seed, trial)
    try:
        res = star_discrepancy(P, method=cfg.method, delta=cfg.delta, budget=budget)
    except CapacityError as exc:
        raise CapacityError(f"trial {trial}: {exc}", work=exc.work, budget=exc.budget) from exc
    # cover: only value + delta is a guaranteed upper bound
    return TrialResult(trial, res.value, res.upper, bool(res.upper <= threshold))


def _run_chunk(args) -> List[TrialResult]:
    cfg, threshold, budget, trials = args
    return [_run_trial(cfg, threshold, budget, t) for t in trials]


def _check_capacity(cfg: ExperimentConfig, budget: int):
    if cfg.method == "exact":
        work = exact_work(cfg.N, cfg.s)
    else:
        work = cover_work(cfg.N, cfg.s, cfg.delta)
    if work > budget:
        raise CapacityError(
            f"trial 0: method={cfg.method} needs {work} steps (budget {budget})"
            + ("; use method=cover" if cfg.method == "exact" else ""),
            work=work, budget=budget,
        )


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    budget = cfg.resolved_budget()
    _check_capacity(cfg, budget)
    threshold = theorem_bound(cfg.q, cfg.s, cfg.N)
    workers = min(cfg.workers(), cfg.trials)
    if workers == 1:
        results = _run_chunk((cfg, threshold, budget, range(cfg.trials)))
    else:
        chunks = [range(w, cfg.trials, workers) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_run_chunk, [(cfg, threshold, budget, c) for c in chunks])
            results = [r for part in parts for r in part]
    results.sort(key=lambda r: r.trial)

    pass_count = sum(r.passed for r in results)
    low, high = binomial_ci(pass_count, cfg.trials, cfg.ci_level)
    scale = math.sqrt(cfg.N / cfg.s)
    scaled = [scale * r.upper for r in results]
    summary = {
        "min": min(scaled),
        "median": statistics.median(scaled),
        "max": max(scaled),
        "mean": math.fsum(scaled) / len(scaled),
        "min_raw": min(r.value for r in results),
    }
    return ExperimentReport(
        config=cfg,
        threshold=threshold,
        pass_count=pass_count,
        empirical_probability=pass_count / cfg.trials,
        ci_low=low,
        ci_high=high,
        lower_bound=binomial_lower_bound(pass_count, cfg.trials, cfg.ci_level),
        summary=summary,
        surrogate=cfg.method == "cover",
        trial_results=tuple(results),
    )
