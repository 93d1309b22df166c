"""Monte Carlo backend: replicated trajectories with a relative-width stop.

Each replication draws one trajectory on [0, t_end] with the competing-
exponentials kernel (dwell ~ Exp(total rate), winner chosen proportionally
to rate, case sampled from the marking-dependent case distribution) and
returns the time-averaged reward (1/t_end) * integral of the predicate.
Replications use independent, reproducible RNG streams derived from
(seed, replication index); the estimate stops once the Student-t
half-width falls below the requested fraction of the mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy import stats

from .core import RewardVariable, SanError, SanModel, bind_reward


@dataclass(frozen=True)
class SimConfig:
    t_end: float = 1e7
    confidence_level: float = 0.95
    relative_half_width: float = 0.1
    min_replications: int = 10
    max_replications: int = 100_000
    seed: int = 12345

    def __post_init__(self):
        if not 0.0 < self.confidence_level < 1.0:
            raise SanError("confidence_level must be in (0,1)")
        if self.relative_half_width <= 0.0:
            raise SanError("relative_half_width must be positive")
        if self.t_end <= 0.0:
            raise SanError("t_end must be positive")
        if self.min_replications < 1 or self.max_replications < 1:
            raise SanError("replication counts must be positive")


@dataclass
class Estimate:
    mean: float
    half_width: float
    ci_low: float
    ci_high: float
    replications: int
    converged: bool

    @property
    def ci_low_clamped(self) -> float:
        # Unavailability cannot be negative; the raw bound is kept as-is.
        return max(0.0, self.ci_low)

    def contains(self, value: float) -> bool:
        return self.ci_low <= value <= self.ci_high


def replication_rng(seed: int, replication: int) -> np.random.Generator:
    """Independent stream for one replication, stable for a given seed."""
    return np.random.default_rng(np.random.SeedSequence((seed, replication)))


def simulate_replication(model: SanModel, params: Mapping,
                         reward: RewardVariable, t_end: float,
                         rng: np.random.Generator) -> float:
    """Time-averaged reward over one trajectory starting at the initial marking."""
    comp = model.compiled
    p = comp.pack_params(params)
    pred = bind_reward(reward, comp.place_names, params)
    acts = comp.activities
    m = comp.initial
    t = 0.0
    down = 0.0
    rates = [0.0] * len(acts)
    while True:
        total = 0.0
        for k, act in enumerate(acts):
            r = act.enabled_rate(m, p)
            rates[k] = r
            total += r
        in_reward = pred(m)
        if total <= 0.0:
            # absorbing marking: persists to the end of the horizon
            if in_reward:
                down += t_end - t
            break
        dwell = rng.exponential(1.0 / total)
        if t + dwell >= t_end:
            if in_reward:
                down += t_end - t
            break
        if in_reward:
            down += dwell
        t += dwell
        pick = rng.random() * total
        acc = 0.0
        chosen = len(acts) - 1
        for k, r in enumerate(rates):
            acc += r
            if pick < acc:
                chosen = k
                break
        act = acts[chosen]
        case = 0
        if act.n_cases > 1:
            probs = act.case_probs(m, p)
            u = rng.random()
            cum = 0.0
            for ci, q in enumerate(probs):
                cum += q
                if u < cum:
                    case = ci
                    break
            else:
                case = act.n_cases - 1
        m = act.fire(m, p, case)
    return down / t_end


def _half_width(values: list[float], confidence: float) -> float:
    n = len(values)
    if n < 2:
        return float("nan")
    std = float(np.std(values, ddof=1))
    tq = float(stats.t.ppf(0.5 + confidence / 2.0, n - 1))
    return tq * std / np.sqrt(n)


def run_estimate(model: SanModel, params: Mapping, reward: RewardVariable,
                 cfg: SimConfig) -> Estimate:
    """Replicate until the relative CI criterion is met or the cap is hit."""
    values: list[float] = []
    target = min(cfg.min_replications, cfg.max_replications)
    converged = False
    while True:
        while len(values) < target:
            rng = replication_rng(cfg.seed, len(values))
            values.append(simulate_replication(model, params, reward,
                                               cfg.t_end, rng))
        mean = float(np.mean(values))
        hw = _half_width(values, cfg.confidence_level)
        if mean > 0.0 and np.isfinite(hw) and hw <= cfg.relative_half_width * mean:
            converged = True
            break
        if target >= cfg.max_replications:
            break
        target = min(cfg.max_replications, max(target + 10, int(target * 1.5)))
    return Estimate(mean=mean, half_width=hw, ci_low=mean - hw,
                    ci_high=mean + hw, replications=len(values),
                    converged=converged)
