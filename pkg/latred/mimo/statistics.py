"""Distribution checks on random channel matrices.

The squared Gram-Schmidt norms of an i.i.d. complex normal matrix are
independent chi-square variables with 2(n - i) degrees of freedom (0-based
i). The minimum of them, measured in units of the per-entry variance, has
a cdf with slope 1 at the origin.
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import stats

from latred.core.domain import RealVector
from latred.core.linalg import gso
from latred.mimo.channel import ChannelModel, sample_basis

ENTRY_VARIANCE = 2.0


@dataclass(frozen=True)
class KsOutcome:
    """Kolmogorov-Smirnov test of one squared GS norm against chi-square."""

    index: int
    dof: int
    statistic: float
    pvalue: float

    def passes(self, significance: float = 0.01) -> bool:
        return self.pvalue >= significance


def sample_gs_norms(
    n: int, samples: int, rng: np.random.Generator
) -> npt.NDArray[np.float64]:
    """Squared GS norms of ``samples`` random n x n matrices, one row each."""
    model = ChannelModel(n)
    out = np.empty((samples, n), dtype=np.float64)
    for s in range(samples):
        out[s] = gso(sample_basis(model, rng)).gs_norms_sq
    return out


def gs_norm_means(n: int, samples: int, rng: np.random.Generator) -> RealVector:
    """Sample means of the squared GS norms; expected 2(n - i)."""
    return np.asarray(np.mean(sample_gs_norms(n, samples, rng), axis=0))


def chi2_diagonal_ks(
    n: int, samples: int, rng: np.random.Generator
) -> list[KsOutcome]:
    """Two-sided KS test of every squared GS norm against chi2(2(n - i))."""
    norms = sample_gs_norms(n, samples, rng)
    outcomes: list[KsOutcome] = []
    for i in range(n):
        dof = 2 * (n - i)
        result = stats.kstest(norms[:, i], "chi2", args=(dof,))
        outcomes.append(
            KsOutcome(
                index=i,
                dof=dof,
                statistic=float(result.statistic),
                pvalue=float(result.pvalue),
            )
        )
    return outcomes


def min_norm_cdf_slope(
    n: int,
    samples: int,
    rng: np.random.Generator,
    x_max: float = 0.1,
    points: int = 10,
) -> float:
    """Least-squares slope through the origin of the empirical cdf of the
    smallest squared GS norm (in units of the entry variance) on (0, x_max]."""
    norms = sample_gs_norms(n, samples, rng)
    minima = np.sort(np.min(norms, axis=1) / ENTRY_VARIANCE)
    grid = np.linspace(x_max / points, x_max, points)
    cdf = np.searchsorted(minima, grid, side="right") / samples
    return float(np.dot(cdf, grid) / np.dot(grid, grid))
