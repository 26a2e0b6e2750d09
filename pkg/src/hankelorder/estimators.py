"""Order estimators: Hankel rank sweeps, an AIC baseline, and the
covariance-determinant baseline.

The rank-sweep estimator computes the numerical rank of responses
matrices of growing row count and declares the order once the sweep has
plateaued.  By default each n-row matrix uses every available sample
(columns = len - n + 1): in exact arithmetic its rank equals the square
n x n rank, and the extra columns push small signal singular values well
clear of the rounding floor.  Pass ``columns="square"`` for the literal
n x n layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .hankel import build_rectangular_hankel
from .rank import RankPolicy, condition_number, default_policy, numerical_rank, singular_values
from .signals import Signal

__all__ = [
    "METHOD_HOKALMAN",
    "METHOD_AIC",
    "METHOD_COVDET",
    "SweepPoint",
    "RankSweep",
    "OrderEstimate",
    "ArFit",
    "AicReport",
    "CovDetReport",
    "hokalman_order",
    "plateau_onset",
    "ar_fit",
    "aic_order",
    "covariance_determinants",
    "covdet_order",
    "write_sweep_csv",
    "write_aic_csv",
    "write_covdet_csv",
]

METHOD_HOKALMAN = "hokalman_rank"
METHOD_AIC = "aic"
METHOD_COVDET = "covariance_determinant"

RSS_FLOOR = 1e-300


@dataclass(frozen=True)
class SweepPoint:
    n: int
    rank: int
    decision_gap: float
    condition: float


@dataclass(frozen=True)
class RankSweep:
    """Rank estimates as a function of the matrix row count n."""

    points: tuple[SweepPoint, ...]

    def __post_init__(self) -> None:
        ns = [p.n for p in self.points]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("sweep points must have strictly increasing n")
        if any(p.rank > p.n for p in self.points):
            raise ValueError("rank cannot exceed n")

    @property
    def ranks(self) -> list[int]:
        return [p.rank for p in self.points]


@dataclass(frozen=True)
class OrderEstimate:
    """A selected order (None when inconclusive) plus method diagnostics."""

    order: int | None
    method: str
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.order is not None and self.order < 0:
            raise ValueError("a conclusive order must be >= 0")

    @property
    def conclusive(self) -> bool:
        return self.order is not None


@dataclass(frozen=True)
class ArFit:
    """Least-squares autoregressive fit y[n] = sum_i a_i y[n-i]."""

    coefficients: np.ndarray
    rss: float
    regressor_rank: int
    rank_deficient: bool


@dataclass(frozen=True)
class AicReport:
    per_order: tuple[tuple[int, float, float], ...]  # (p, rss, aic_value)
    selected: int

    def __post_init__(self) -> None:
        best = min(self.per_order, key=lambda row: (row[2], row[0]))
        if best[0] != self.selected:
            raise ValueError("selected order must be the AIC argmin (ties to smaller p)")


@dataclass(frozen=True)
class CovDetReport:
    per_order: tuple[tuple[int, float], ...]  # (m, det)


def hokalman_order(
    signal: Signal,
    n_max: int,
    policy: RankPolicy | None = None,
    *,
    plateau_len: int = 3,
    columns: str = "all",
) -> tuple[OrderEstimate, RankSweep]:
    """Rank sweep over n = 2..n_max with plateau-based order selection.

    The estimate is the final sweep value provided the last
    ``plateau_len`` ranks are all equal; otherwise the result is
    inconclusive and the full sweep is returned for inspection.  The
    default policy is the per-matrix relative threshold
    max(rows, cols) * eps.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    if plateau_len < 1:
        raise ValueError("plateau_len must be >= 1")
    if columns not in ("all", "square"):
        raise ValueError("columns must be 'all' or 'square'")
    if len(signal) < 2 * n_max - 1:
        raise ValueError(
            f"signal has {len(signal)} samples but a sweep to n = {n_max} "
            f"requires 2n - 1 = {2 * n_max - 1}"
        )
    points = []
    for n in range(2, n_max + 1):
        cols = n if columns == "square" else len(signal) - n + 1
        mat = build_rectangular_hankel(signal, n, cols)
        spectrum = singular_values(mat.entries)
        pol = policy if policy is not None else default_policy(mat.shape)
        res = numerical_rank(spectrum, pol)
        points.append(SweepPoint(n, res.rank, res.decision_gap, condition_number(spectrum)))
    sweep = RankSweep(tuple(points))
    ranks = sweep.ranks
    tail = ranks[-plateau_len:]
    conclusive = len(ranks) >= plateau_len and len(set(tail)) == 1
    diagnostics = {
        "plateau_len": plateau_len,
        "columns": columns,
        "policy": (policy.describe() if policy is not None else "default(max(shape)*eps)"),
        "conclusive": conclusive,
    }
    order = ranks[-1] if conclusive else None
    return OrderEstimate(order, METHOD_HOKALMAN, diagnostics), sweep


def plateau_onset(sweep: RankSweep) -> int:
    """First n of the trailing constant-rank run (n_max if the last point
    stands alone)."""
    ranks = sweep.ranks
    final = ranks[-1]
    i = len(ranks)
    while i > 0 and ranks[i - 1] == final:
        i -= 1
    return sweep.points[i].n


def ar_fit(signal: Signal, p: int, n_start: int | None = None) -> ArFit:
    """Least-squares fit of y[n] = sum_{i=1..p} a_i y[n-i].

    The fit runs over n = n_start..len-1 (n_start defaults to p, i.e.
    all valid rows).  The least-squares cutoff follows the same relative
    tolerance convention as the rank machinery; a rank-deficient
    regressor matrix yields the minimum-norm solution and is flagged.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if len(signal) < 2 * p + 1:
        raise ValueError(f"signal must have at least 2p + 1 = {2 * p + 1} samples")
    if n_start is None:
        n_start = p
    if n_start < p:
        raise ValueError("n_start must be >= p")
    y = signal.samples
    idx = np.arange(n_start, len(y))
    if idx.size < 1:
        raise ValueError("no regression rows available")
    regressors = np.column_stack([y[idx - i] for i in range(1, p + 1)])
    targets = y[idx]
    rcond = max(regressors.shape) * np.finfo(float).eps
    coeffs, _, rank, _ = np.linalg.lstsq(regressors, targets, rcond=rcond)
    residuals = targets - regressors @ coeffs
    return ArFit(
        coefficients=coeffs,
        rss=float(residuals @ residuals),
        regressor_rank=int(rank),
        rank_deficient=int(rank) < p,
    )


def aic_order(signal: Signal, p_max: int) -> tuple[OrderEstimate, AicReport]:
    """AIC selection over AR orders p = 1..p_max.

    Every candidate is fit on the common window n = p_max..len-1, so the
    residual count K = len - p_max is the same for all p and the argmin
    is exactly invariant under positive scaling of the signal.
    aic(p) = K * ln(rss/K) + 2p, with rss floored at 1e-300.
    """
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    if len(signal) < 2 * p_max + 1:
        raise ValueError(f"signal must have at least 2*p_max + 1 = {2 * p_max + 1} samples")
    k = len(signal) - p_max
    rows = []
    deficient = 0
    best_p, best_val = None, math.inf
    for p in range(1, p_max + 1):
        fit = ar_fit(signal, p, n_start=p_max)
        deficient += fit.rank_deficient
        rss = max(fit.rss, RSS_FLOOR)
        value = k * math.log(rss / k) + 2.0 * p
        rows.append((p, fit.rss, value))
        if value < best_val:
            best_p, best_val = p, value
    report = AicReport(tuple(rows), best_p)
    estimate = OrderEstimate(
        best_p,
        METHOD_AIC,
        {"p_max": p_max, "residual_count": k, "rank_deficient_fits": deficient},
    )
    return estimate, report


def covariance_determinants(signal: Signal, m_range: Iterable[int]) -> CovDetReport:
    """det of the lag-vector covariance matrix for each candidate order m.

    For order m the lag vectors are phi_n = (y[n], y[n-1], ..., y[n-m])
    over all valid n and C_m = (1/count) * sum phi phi^T, an
    (m+1) x (m+1) matrix.  Once m reaches the true order the lag vectors
    become linearly dependent and the determinant collapses toward zero.
    """
    ms = [int(m) for m in m_range]
    if not ms:
        raise ValueError("m_range must be non-empty")
    if any(m < 0 for m in ms):
        raise ValueError("orders must be >= 0")
    if len(signal) < max(ms) + 2:
        raise ValueError(f"signal must have at least max(m) + 2 = {max(ms) + 2} samples")
    y = signal.samples
    rows_out = []
    for m in ms:
        idx = np.arange(m, len(y))
        lags = np.column_stack([y[idx - i] for i in range(m + 1)])
        cov = lags.T @ lags / idx.size
        rows_out.append((m, float(np.linalg.det(cov))))
    return CovDetReport(tuple(rows_out))


def covdet_order(report: CovDetReport, collapse_ratio: float = 1e-6) -> OrderEstimate:
    """Read an order suggestion off the determinant collapse.

    The suggested order is the first m whose determinant magnitude falls
    below ``collapse_ratio`` times the previous one (orders must be
    consecutive for the ratio to be meaningful).  Without a collapse the
    result is inconclusive, mirroring how the determinant table is often
    unreadable in practice.
    """
    prev_m, prev_det = None, None
    for m, det in report.per_order:
        if prev_det is not None and m == prev_m + 1:
            if abs(prev_det) == 0.0 or abs(det) <= collapse_ratio * abs(prev_det):
                return OrderEstimate(
                    m,
                    METHOD_COVDET,
                    {"collapse_ratio": collapse_ratio, "det": det, "prev_det": prev_det},
                )
        prev_m, prev_det = m, det
    return OrderEstimate(None, METHOD_COVDET, {"collapse_ratio": collapse_ratio})


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_sweep_csv(sweep: RankSweep, path: str | Path) -> Path:
    path = Path(path)
    lines = ["n,rank,gap,condition"]
    lines += [f"{p.n},{p.rank},{_fmt(p.decision_gap)},{_fmt(p.condition)}" for p in sweep.points]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_aic_csv(report: AicReport, path: str | Path) -> Path:
    path = Path(path)
    lines = ["p,rss,aic"]
    lines += [f"{p},{_fmt(rss)},{_fmt(aic)}" for p, rss, aic in report.per_order]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_covdet_csv(report: CovDetReport, path: str | Path) -> Path:
    path = Path(path)
    lines = ["m,det"]
    lines += [f"{m},{_fmt(det)}" for m, det in report.per_order]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
