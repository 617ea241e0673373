"""Labeled datasets, feature subsets and 1-D empirical measures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import DatasetError, MeasureError

WEIGHT_SUM_TOL = 1e-12


def _sort_key(label):
    # numeric labels compare numerically, everything else lexicographically
    try:
        return (0, float(label), "")
    except (TypeError, ValueError):
        return (1, 0.0, str(label))


def encode_labels(raw: Sequence) -> tuple[np.ndarray, tuple[str, ...]]:
    """Map raw labels to contiguous indices ``0..K-1`` in sorted order."""
    raw = [str(r) if not isinstance(r, str) else r for r in raw]
    names = sorted(set(raw), key=_sort_key)
    lookup = {name: i for i, name in enumerate(names)}
    return np.array([lookup[r] for r in raw], dtype=np.intp), tuple(names)


@dataclass(frozen=True)
class LabeledDataset:
    """Dense sample matrix with integer class labels.

    Build instances with :meth:`from_raw` when labels are arbitrary values;
    the constructor expects already-encoded labels.  Arrays are copied and
    marked read-only.
    """

    values: np.ndarray
    labels: np.ndarray
    class_names: tuple[str, ...]
    feature_names: tuple[str, ...] | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        labels = np.array(self.labels, dtype=np.intp, copy=True)
        if values.ndim != 2:
            raise DatasetError(f"values must be 2-D, got shape {values.shape}")
        if labels.ndim != 1 or labels.shape[0] != values.shape[0]:
            raise DatasetError(
                f"labels length {labels.shape} does not match {values.shape[0]} samples"
            )
        if not np.all(np.isfinite(values)):
            raise DatasetError("values contain NaN or Inf")
        k = len(self.class_names)
        if k < 2:
            raise DatasetError(f"need at least 2 classes, got {k}")
        if labels.size and (labels.min() < 0 or labels.max() >= k):
            raise DatasetError("label index outside 0..K-1")
        counts = np.bincount(labels, minlength=k)
        empty = [self.class_names[i] for i in np.flatnonzero(counts == 0)]
        if empty:
            raise DatasetError(f"classes with no samples: {empty}")
        if self.feature_names is not None and len(self.feature_names) != values.shape[1]:
            raise DatasetError(
                f"{len(self.feature_names)} feature names for {values.shape[1]} features"
            )
        values.flags.writeable = False
        labels.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "class_names", tuple(str(c) for c in self.class_names))
        if self.feature_names is not None:
            object.__setattr__(self, "feature_names", tuple(self.feature_names))

    @classmethod
    def from_raw(cls, values, raw_labels, feature_names=None) -> "LabeledDataset":
        labels, names = encode_labels(raw_labels)
        return cls(values, labels, names, feature_names)

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_features(self) -> int:
        return self.values.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def with_values(self, values: np.ndarray) -> "LabeledDataset":
        return LabeledDataset(values, self.labels, self.class_names, self.feature_names)

    def take_rows(self, rows) -> "LabeledDataset":
        """Row subset; fails if a class ends up empty."""
        rows = np.asarray(rows, dtype=np.intp)
        return LabeledDataset(
            self.values[rows], self.labels[rows], self.class_names, self.feature_names
        )


@dataclass(frozen=True)
class FeatureSubset:
    """Ordered set of distinct feature indices."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(set(idx)) != len(idx):
            raise DatasetError(f"duplicate feature indices in {idx}")
        if any(i < 0 for i in idx):
            raise DatasetError(f"negative feature index in {idx}")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def check(self, n_features: int) -> None:
        bad = [i for i in self.indices if i >= n_features]
        if bad:
            raise DatasetError(f"feature indices {bad} out of range for d={n_features}")


def as_subset(subset) -> FeatureSubset:
    if isinstance(subset, FeatureSubset):
        return subset
    if isinstance(subset, (int, np.integer)):
        return FeatureSubset((int(subset),))
    return FeatureSubset(tuple(subset))


@dataclass(frozen=True)
class EmpiricalMeasure1D:
    """Weighted point masses on the real line, sorted by value."""

    values: np.ndarray
    weights: np.ndarray = field(default=None)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True).ravel()
        if values.size == 0:
            raise MeasureError("measure needs at least one atom")
        if self.weights is None:
            weights = np.full(values.size, 1.0 / values.size)
        else:
            weights = np.array(self.weights, dtype=np.float64, copy=True).ravel()
        if weights.shape != values.shape:
            raise MeasureError("values and weights differ in length")
        if not (np.all(np.isfinite(values)) and np.all(np.isfinite(weights))):
            raise MeasureError("non-finite value or weight")
        if np.any(weights <= 0):
            raise MeasureError("weights must be strictly positive")
        if abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise MeasureError(f"weights sum to {weights.sum()!r}, not 1")
        if np.any(np.diff(values) < 0):
            raise MeasureError("values must be sorted ascending; use from_samples")
        values.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_samples(cls, samples, weights=None, normalize: bool = False) -> "EmpiricalMeasure1D":
        """Sort ``samples`` (carrying weights along); optionally renormalize weights."""
        samples = np.asarray(samples, dtype=np.float64).ravel()
        order = np.argsort(samples, kind="stable")
        if weights is None:
            return cls(samples[order])
        weights = np.asarray(weights, dtype=np.float64).ravel()[order]
        if normalize:
            weights = weights / weights.sum()
        return cls(samples[order], weights)

    def __len__(self):
        return self.values.size

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.weights == self.weights[0]))

    def coalesced(self) -> "EmpiricalMeasure1D":
        """Merge atoms at equal values; never changes any distance."""
        uniq, inv = np.unique(self.values, return_inverse=True)
        w = np.bincount(inv, weights=self.weights)
        return EmpiricalMeasure1D(uniq, w / w.sum())

    def shifted(self, c: float) -> "EmpiricalMeasure1D":
        return EmpiricalMeasure1D(self.values + c, self.weights)

    def scaled(self, a: float) -> "EmpiricalMeasure1D":
        """Push-forward under ``x -> a*x`` (re-sorted for negative ``a``)."""
        return EmpiricalMeasure1D.from_samples(self.values * a, self.weights)


# --- views -----------------------------------------------------------------


def _check_class(ds: LabeledDataset, class_idx) -> int:
    c = int(class_idx)
    if not 0 <= c < ds.n_classes:
        raise DatasetError(f"class index {class_idx} out of range for K={ds.n_classes}")
    return c


def class_slice(ds: LabeledDataset, class_idx: int, subset) -> np.ndarray:
    """Rows of class ``class_idx`` restricted to ``subset`` columns, in row order."""
    c = _check_class(ds, class_idx)
    subset = as_subset(subset)
    subset.check(ds.n_features)
    rows = np.flatnonzero(ds.labels == c)
    return ds.values[np.ix_(rows, list(subset.indices))]


def feature_measure(ds: LabeledDataset, class_idx: int, feature_idx: int) -> EmpiricalMeasure1D:
    """Uniform empirical measure of one feature within one class."""
    col = class_slice(ds, class_idx, FeatureSubset((int(feature_idx),)))
    return EmpiricalMeasure1D(np.sort(col[:, 0], kind="stable"))


def standardization_stats(ds: LabeledDataset) -> tuple[np.ndarray, np.ndarray]:
    """Per-feature mean and population std over all samples; zero std becomes 1."""
    v = ds.values
    # exact test for constancy: the float mean of equal values can drift
    constant = v.max(axis=0) == v.min(axis=0)
    mean = np.where(constant, v[0], v.mean(axis=0))
    std = v.std(axis=0)
    # a tiny nonzero spread can still underflow to std == 0
    std = np.where(constant | (std == 0), 1.0, std)
    return mean, std


def standardize(ds: LabeledDataset, stats: tuple[np.ndarray, np.ndarray] | None = None) -> LabeledDataset:
    """Global z-score per feature (population std).

    ``stats`` lets a test split reuse the training split's mean/std.
    Constant features map to zeros.
    """
    mean, std = standardization_stats(ds) if stats is None else stats
    return ds.with_values((ds.values - mean) / std)
