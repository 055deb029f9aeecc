"""Monte Carlo complexity and quality campaigns.

``run_bench`` measures iteration and flop counts of a reduction variant
against the average-case bounds; ``run_compare`` times several variants
on the same random bases. Every trial draws its basis from its own
generator seeded by (seed, n, trial), so results do not depend on the
order in which trials run.
"""

import logging
from dataclasses import dataclass

import numpy as np

from latred.core.domain import (
    ComplexMatrix,
    ReductionParams,
    ReductionVariant,
    SortMode,
)
from latred.core.linalg import gso
from latred.core.metrics import flop_bounds, potential
from latred.core.services.reducer import LatticeReducer
from latred.mimo.channel import ChannelModel, sample_basis

logger = logging.getLogger(__name__)

BENCH_COLUMNS = (
    "n",
    "delta",
    "trials",
    "mean_K",
    "bound_K",
    "mean_flops_c1",
    "bound_c1",
)

COMPARE_COLUMNS = (
    "n",
    "variant",
    "trials",
    "mean_wall_time",
    "mean_K",
    "mean_flops",
    "mean_log_potential",
    "mean_b1_norm",
)


@dataclass(frozen=True)
class BenchRow:
    """Mean complexity of one dimension next to its bounds."""

    n: int
    delta: float
    trials: int
    mean_k: float
    bound_k: float
    mean_flops_c1: float
    bound_c1: float

    def as_row(self) -> list[object]:
        return [
            self.n,
            self.delta,
            self.trials,
            self.mean_k,
            self.bound_k,
            self.mean_flops_c1,
            self.bound_c1,
        ]


@dataclass(frozen=True)
class CompareRow:
    """Mean cost and output quality of one variant at one dimension."""

    n: int
    variant: str
    trials: int
    mean_wall_time: float
    mean_k: float
    mean_flops: float
    mean_log_potential: float
    mean_b1_norm: float

    def as_row(self) -> list[object]:
        return [
            self.n,
            self.variant,
            self.trials,
            self.mean_wall_time,
            self.mean_k,
            self.mean_flops,
            self.mean_log_potential,
            self.mean_b1_norm,
        ]


def trial_basis(seed: int, n: int, trial: int) -> ComplexMatrix:
    """Random basis of trial ``trial`` at dimension ``n``."""
    rng = np.random.default_rng([seed, n, trial])
    return sample_basis(ChannelModel(n), rng)


def run_bench(
    n_list: list[int],
    delta: float,
    trials: int,
    seed: int,
    variant: ReductionVariant = ReductionVariant.EFFECTIVE,
    dual: bool = False,
) -> list[BenchRow]:
    """Measure mean K and mean C1 flops per dimension.

    Raises:
        InvalidDeltaError: If delta is not in (1/2, 1)
        ValueError: If trials < 1 or some n < 2
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    reducer = LatticeReducer(
        variant, ReductionParams(delta=delta, variant=variant), dual=dual
    )
    rows: list[BenchRow] = []
    for n in n_list:
        bounds = flop_bounds(n, delta)
        k_values = np.empty(trials)
        flop_values = np.empty(trials)
        for trial in range(trials):
            _, report = reducer.reduce(trial_basis(seed, n, trial))
            k_values[trial] = report.iterations
            flop_values[trial] = report.flops_c1
        row = BenchRow(
            n=n,
            delta=delta,
            trials=trials,
            mean_k=float(np.mean(k_values)),
            bound_k=bounds.k_total_bound,
            mean_flops_c1=float(np.mean(flop_values)),
            bound_c1=bounds.flop_bound_c1,
        )
        logger.info(
            f"bench n={n}: mean K={row.mean_k:.1f} (bound {row.bound_k:.1f})"
        )
        rows.append(row)
    return rows


def run_compare(
    n_list: list[int],
    variants: list[ReductionVariant],
    trials: int,
    seed: int,
    delta: float = 0.75,
    budget: int | None = None,
    hybrid_parallel_iters: int = 2,
    sort_mode: SortMode = SortMode.QR,
) -> list[CompareRow]:
    """Run several variants on the same random bases.

    Raises:
        ValueError: If trials < 1
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    rows: list[CompareRow] = []
    for n in n_list:
        bases = [trial_basis(seed, n, trial) for trial in range(trials)]
        for variant in variants:
            reducer = LatticeReducer(
                variant,
                ReductionParams(delta=delta, variant=variant),
                budget=budget,
                hybrid_parallel_iters=hybrid_parallel_iters,
                sort_mode=sort_mode,
            )
            times: list[float] = []
            ks: list[int] = []
            flops: list[int] = []
            potentials: list[float] = []
            b1: list[float] = []
            for basis in bases:
                reduced, report = reducer.reduce(basis)
                times.append(report.wall_time)
                ks.append(report.iterations)
                flops.append(report.flops)
                potentials.append(potential(gso(reduced)))
                b1.append(float(np.linalg.norm(reduced[:, 0])))
            row = CompareRow(
                n=n,
                variant=variant.value,
                trials=trials,
                mean_wall_time=float(np.mean(times)),
                mean_k=float(np.mean(ks)),
                mean_flops=float(np.mean(flops)),
                mean_log_potential=float(np.mean(potentials)),
                mean_b1_norm=float(np.mean(b1)),
            )
            logger.info(
                f"compare n={n} {variant.value}: "
                f"{row.mean_wall_time * 1e3:.2f} ms, K={row.mean_k:.1f}"
            )
            rows.append(row)
    return rows
