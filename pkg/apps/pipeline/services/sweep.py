"""
Synthetic experiment sweeps: strategies x K x seeds on simulated data.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np
import pandas as pd

from apps.hawkes.kernels import KernelBasis
from apps.optimization.services import REPORT_COLUMNS, OptConfig
from apps.pipeline.exceptions import PipelineConfigError
from apps.pipeline.services.strategies import PipelineConfig, Strategy, run_strategy
from apps.simulation.services import SimConfig, simulate_dataset

logger = logging.getLogger(__name__)

SWEEP_KEYS = ["strategy", "K", "seed"]
SWEEP_COLUMNS = SWEEP_KEYS + REPORT_COLUMNS
ERROR_COLUMNS = ["nll", "err_U", "err_A", "err_theta"]

_SUPERPOSING = (Strategy.AUGMENT, Strategy.SUPERPOSE)

# Summed batch gradients at C=20, M=100 scale diverge for a constant η >= 1e-3.
SWEEP_OPT = {"learning_rate": 3e-4, "decay": True, "epochs": 30, "tol": 0.0}
SWEEP_ROUNDS = 15


@dataclass(frozen=True, eq=False)
class SweepSpec:
    """
    One experiment grid.

    Superposing strategies run once per K; the others once per seed with K
    reported as 1 (SingleHP: K = M).

    With equal_budget every strategy gets the epochs StocOptSuperpose spends,
    two stages of stage_epochs per round, instead of opt.epochs.
    """

    strategies: tuple[Strategy, ...] = (
        Strategy.BATCH,
        Strategy.STOC,
        Strategy.AUGMENT,
        Strategy.SUPERPOSE,
    )
    Ks: tuple[int, ...] = (2, 4)
    seeds: tuple[int, ...] = tuple(range(10))
    sim: SimConfig = field(default_factory=SimConfig)
    opt: OptConfig = field(default_factory=lambda: OptConfig(**SWEEP_OPT))
    outer_rounds: int = SWEEP_ROUNDS
    round_tol: float = 0.0
    stage_epochs: int = 1
    equal_budget: bool = True

    def __post_init__(self) -> None:
        strategies = tuple(Strategy.parse(s) for s in self.strategies)
        object.__setattr__(self, "strategies", strategies)
        if not strategies or not self.seeds:
            raise PipelineConfigError("A sweep needs strategies and seeds")
        if any(k < 1 for k in self.Ks):
            raise PipelineConfigError("K values must be at least 1")
        if not self.Ks and any(s in _SUPERPOSING for s in strategies):
            raise PipelineConfigError("Superposing strategies need K values")

    def runs(self) -> list[tuple[Strategy, int]]:
        out = []
        for strategy in self.strategies:
            if strategy in _SUPERPOSING:
                out.extend((strategy, K) for K in self.Ks)
            elif strategy is Strategy.SINGLE:
                out.append((strategy, self.sim.M))
            else:
                out.append((strategy, 1))
        return out

    @property
    def epoch_budget(self) -> int:
        return 2 * self.outer_rounds * self.stage_epochs

    def pipeline(self, strategy: Strategy, K: int, seed: int) -> PipelineConfig:
        opt = replace(self.opt, seed=seed)
        if self.equal_budget and strategy is not Strategy.SUPERPOSE:
            opt = replace(opt, epochs=self.epoch_budget)
        return PipelineConfig(
            opt=opt,
            strategy=strategy,
            K=K,
            outer_rounds=self.outer_rounds,
            round_tol=self.round_tol,
            stage_epochs=self.stage_epochs,
            C=self.sim.C,
            basis=self.sim.basis,
        )


def run_sweep(spec: SweepSpec) -> pd.DataFrame:
    """
    Run every (strategy, K) on every seed's simulated dataset.

    Returns:
        Tidy frame with one row per epoch: strategy, K, seed and the report
        columns.
    """
    frames = []
    for seed in spec.seeds:
        truth, data = simulate_dataset(spec.sim.with_seed(seed))
        for strategy, K in spec.runs():
            cfg = replace(spec.pipeline(strategy, K, seed), truth=truth)
            frame = run_strategy(data, cfg).to_frame()
            frame.insert(0, "seed", seed)
            frame.insert(0, "K", K)
            frame.insert(0, "strategy", strategy.value)
            frames.append(frame)
            logger.info(
                f"Sweep seed={seed} {strategy.value} K={K}: "
                f"final err_A={frame['err_A'].iloc[-1]:.4g}"
            )
    return pd.concat(frames, ignore_index=True)[SWEEP_COLUMNS]


def summarize_final(frame: pd.DataFrame) -> pd.DataFrame:
    """Mean and std across seeds of each run's last epoch, per (strategy, K)."""
    final = frame.groupby(SWEEP_KEYS, sort=False).tail(1)
    summary = final.groupby(["strategy", "K"], sort=False)[ERROR_COLUMNS].agg(
        ["mean", "std"]
    )
    summary.columns = [f"{col}_{stat}" for col, stat in summary.columns]
    return summary.reset_index()


def _curve(
    runs: pd.DataFrame, strategy: Strategy, K: int | None = None
) -> np.ndarray:
    rows = runs[runs["strategy"] == strategy.value]
    if K is not None:
        rows = rows[rows["K"] == K]
    return rows["err_A"].to_numpy(dtype=float)


def _first_epoch_below(curve: np.ndarray, level: float) -> float:
    hit = np.flatnonzero(curve <= level)
    return float(hit[0] + 1) if hit.size else math.inf


def _superpose_ordered(runs: pd.DataFrame) -> bool:
    Ks = sorted(set(runs.loc[runs["strategy"] == Strategy.SUPERPOSE.value, "K"]))
    finals = [_curve(runs, Strategy.SUPERPOSE, K)[-1] for K in reversed(Ks)]
    finals.append(_curve(runs, Strategy.STOC)[-1])
    return all(a <= b for a, b in zip(finals, finals[1:]))


def _stoc_not_slower(runs: pd.DataFrame) -> bool:
    stoc, batch = _curve(runs, Strategy.STOC), _curve(runs, Strategy.BATCH)
    return all(
        _first_epoch_below(stoc, level) <= _first_epoch_below(batch, level)
        for level in batch
    )


def _augment_not_better(runs: pd.DataFrame) -> bool:
    def best(strategy: Strategy) -> float:
        final = runs[runs["strategy"] == strategy.value].groupby("K").tail(1)
        return float(final["err_A"].min())

    return best(Strategy.AUGMENT) >= best(Strategy.SUPERPOSE)


_CHECKS = {
    "superpose_ordered": ((Strategy.STOC, Strategy.SUPERPOSE), _superpose_ordered),
    "stoc_not_slower": ((Strategy.STOC, Strategy.BATCH), _stoc_not_slower),
    "augment_not_better": ((Strategy.AUGMENT, Strategy.SUPERPOSE), _augment_not_better),
}
PROTOCOL_CHECKS = list(_CHECKS)


def protocol_checks(frame: pd.DataFrame) -> pd.DataFrame:
    """
    Ordinal comparisons of the err_A curves, one row per seed.

    - superpose_ordered: final err_A of StocOptSuperpose does not grow with
      K and stays at or below StocOpt.
    - stoc_not_slower: every err_A level BatchOpt reaches, StocOpt reaches
      in no more epochs.
    - augment_not_better: the best StocOptAugment run ends no lower than
      the best StocOptSuperpose run.

    A check is left out when the sweep lacks one of its strategies.
    """
    present = set(frame["strategy"])
    checks = {
        name: check
        for name, (needs, check) in _CHECKS.items()
        if all(s.value in present for s in needs)
    }
    rows = []
    for seed, runs in frame.groupby("seed", sort=True):
        row = {"seed": int(seed)}
        row.update({name: bool(check(runs)) for name, check in checks.items()})
        rows.append(row)
    return pd.DataFrame(rows, columns=["seed", *checks])


def sweep_from_dict(data: dict[str, Any]) -> SweepSpec:
    """Build a SweepSpec from validated serializer data."""
    sim = dict(data.get("sim", {}))
    decay = sim.pop("decay", None)
    if decay is not None:
        sim["basis"] = KernelBasis.exponential(decay)
    kwargs = {}
    for key in ("strategies", "Ks", "seeds"):
        if key in data:
            kwargs[key] = tuple(data[key])
    for key in ("outer_rounds", "round_tol", "stage_epochs", "equal_budget"):
        if key in data:
            kwargs[key] = data[key]
    return SweepSpec(
        sim=SimConfig.from_settings(**sim),
        opt=OptConfig.from_settings(**{**SWEEP_OPT, **data.get("opt", {})}),
        **kwargs,
    )
