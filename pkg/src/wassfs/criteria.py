"""Class-pairwise distance matrices and the Frobenius utility.

A feature subset is scored by the squared Frobenius norm of the ``K x K``
matrix whose ``(i, j)`` entry is a probability metric between the empirical
distributions of classes ``i`` and ``j`` restricted to that subset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .data import EmpiricalMeasure1D, FeatureSubset, LabeledDataset, as_subset, class_slice
from .exceptions import EstimatorError, MeasureError
from .ot1d import w1_general, w1_sorted_samples
from .entropic import SinkhornConfig, cost_matrix, w1_sinkhorn

EstimatorKind = Literal["exact-1d-w1", "sinkhorn-w1", "mmd-gaussian"]
KINDS = ("exact-1d-w1", "sinkhorn-w1", "mmd-gaussian")


@dataclass(frozen=True)
class EstimatorChoice:
    """Which probability metric fills the distance matrix.

    ``bandwidth=None`` for the MMD estimator means the median heuristic,
    evaluated per class pair.
    """

    kind: EstimatorKind = "exact-1d-w1"
    sinkhorn: SinkhornConfig = field(default_factory=SinkhornConfig)
    bandwidth: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise EstimatorError(f"unknown estimator {self.kind!r}; expected one of {KINDS}")
        if self.bandwidth is not None and not self.bandwidth > 0:
            raise EstimatorError(f"bandwidth must be positive, got {self.bandwidth}")

    def check(self, subset_size: int) -> None:
        if subset_size < 1:
            raise EstimatorError("feature subset must be non-empty")
        if self.kind == "exact-1d-w1" and subset_size != 1:
            raise EstimatorError(
                f"exact-1d-w1 only scores single features, got a subset of size {subset_size}"
            )


EXACT_1D = EstimatorChoice("exact-1d-w1")


@dataclass(frozen=True)
class ClassDistanceMatrix:
    d: np.ndarray

    def __post_init__(self):
        d = np.array(self.d, dtype=np.float64, copy=True)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got {d.shape}")
        if np.any(d < 0) or np.any(np.diag(d) != 0):
            raise ValueError("distance matrix needs nonnegative entries and zero diagonal")
        if not np.allclose(d, d.T, rtol=0, atol=1e-9):
            raise ValueError("distance matrix is not symmetric")
        d.flags.writeable = False
        object.__setattr__(self, "d", d)


def _rows(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return x[:, None] if x.ndim == 1 else x


def median_bandwidth(x, y) -> float:
    """Median pairwise distance over the pooled samples (1.0 if degenerate)."""
    pooled = np.vstack([_rows(x), _rows(y)])
    dist = cost_matrix(pooled, pooled)
    off = dist[np.triu_indices(pooled.shape[0], k=1)]
    med = float(np.median(off)) if off.size else 0.0
    return med if med > 0 else 1.0


def mmd_gaussian(x, y, bandwidth: float | None = None) -> float:
    """Closed-form empirical MMD with a Gaussian kernel.

    ``sqrt(sum_ij Y_i Y_j k(X_i, X_j))`` over the pooled sample, with
    coefficients ``1/m`` on ``x`` rows and ``-1/n`` on ``y`` rows, evaluated
    as ``mean K_xx + mean K_yy - 2 mean K_xy``.
    """
    x, y = _rows(x), _rows(y)
    if x.shape[0] == 0 or y.shape[0] == 0:
        raise MeasureError("sample sets must be non-empty")
    if bandwidth is None:
        bandwidth = median_bandwidth(x, y)
    if not bandwidth > 0:
        raise MeasureError(f"bandwidth must be positive, got {bandwidth}")
    kxx = np.exp(-cost_matrix(x, x) ** 2 / (2.0 * bandwidth**2)).mean()
    kyy = np.exp(-cost_matrix(y, y) ** 2 / (2.0 * bandwidth**2)).mean()
    kxy = np.exp(-cost_matrix(x, y) ** 2 / (2.0 * bandwidth**2)).mean()
    # block form of the signed double sum; identical inputs cancel exactly
    val = float(kxx + kyy - 2.0 * kxy)
    if val < 0:
        if val < -1e-12:
            raise MeasureError(f"negative MMD radicand {val:.3g}; kernel matrix is not PSD")
        val = 0.0
    return float(np.sqrt(val))


def pair_distance(xi: np.ndarray, xj: np.ndarray, est: EstimatorChoice) -> float:
    if est.kind == "exact-1d-w1":
        if xi.shape[0] == xj.shape[0]:
            return w1_sorted_samples(xi[:, 0], xj[:, 0])
        return w1_general(EmpiricalMeasure1D.from_samples(xi[:, 0]),
                          EmpiricalMeasure1D.from_samples(xj[:, 0]))
    if est.kind == "sinkhorn-w1":
        return w1_sinkhorn(xi, xj, est.sinkhorn)
    return mmd_gaussian(xi, xj, est.bandwidth)


def distance_matrix(ds: LabeledDataset, subset, est: EstimatorChoice = EXACT_1D) -> ClassDistanceMatrix:
    """Pairwise class distances on ``subset``; only ``i < j`` is solved, then mirrored."""
    subset = as_subset(subset)
    est.check(len(subset))
    subset.check(ds.n_features)
    k = ds.n_classes
    slices = [class_slice(ds, c, subset) for c in range(k)]
    d = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            d[i, j] = d[j, i] = pair_distance(slices[i], slices[j], est)
    return ClassDistanceMatrix(d)


def utility(dm: ClassDistanceMatrix) -> float:
    """Squared Frobenius norm: every ordered pair counted, so each unordered pair twice."""
    return float(np.sum(dm.d**2))


def feature_utility(ds: LabeledDataset, feature_idx: int, est: EstimatorChoice = EXACT_1D) -> float:
    return utility(distance_matrix(ds, FeatureSubset((int(feature_idx),)), est))


def subset_utility(ds: LabeledDataset, subset, est: EstimatorChoice) -> float:
    """Utility of a subset; the empty subset scores 0."""
    subset = as_subset(subset)
    if len(subset) == 0:
        return 0.0
    return utility(distance_matrix(ds, subset, est))
