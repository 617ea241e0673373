"""Downstream evaluation: stratified splits, 1-NN accuracy, RSD."""

from __future__ import annotations

import numpy as np

from .data import LabeledDataset, as_subset
from .exceptions import DatasetError


def train_test_split(ds: LabeledDataset, test_frac: float, seed: int):
    """Stratified split; every class keeps at least one row on each side."""
    if not 0 < test_frac < 1:
        raise ValueError(f"test_frac must lie in (0, 1), got {test_frac}")
    rng = np.random.default_rng(seed)
    train, test = [], []
    for c in range(ds.n_classes):
        rows = np.flatnonzero(ds.labels == c)
        if rows.size < 2:
            raise DatasetError(f"class {ds.class_names[c]!r} has {rows.size} row(s); cannot split")
        rows = rng.permutation(rows)
        k = min(max(int(round(test_frac * rows.size)), 1), rows.size - 1)
        test.extend(rows[:k])
        train.extend(rows[k:])
    return ds.take_rows(np.sort(train)), ds.take_rows(np.sort(test))


def nearest_neighbor_predict(train_x, train_y, test_x, chunk: int = 512) -> np.ndarray:
    train_x = np.asarray(train_x, dtype=np.float64)
    test_x = np.asarray(test_x, dtype=np.float64)
    out = np.empty(test_x.shape[0], dtype=np.intp)
    for start in range(0, test_x.shape[0], chunk):
        block = test_x[start:start + chunk]
        diff = block[:, None, :] - train_x[None, :, :]
        dist = np.einsum("ijk,ijk->ij", diff, diff)
        # argmin returns the first minimum: ties go to the lowest training row
        out[start:start + chunk] = train_y[np.argmin(dist, axis=1)]
    return out


def evaluate_subset(ds_train: LabeledDataset, ds_test: LabeledDataset, subset) -> float:
    """1-nearest-neighbor test accuracy using only the ``subset`` columns."""
    subset = as_subset(subset)
    if len(subset) == 0:
        raise DatasetError("cannot evaluate an empty feature subset")
    if ds_train.n_features != ds_test.n_features:
        raise DatasetError("train and test feature counts differ")
    if ds_train.class_names != ds_test.class_names:
        raise DatasetError("train and test label universes differ")
    subset.check(ds_train.n_features)
    cols = list(subset.indices)
    pred = nearest_neighbor_predict(ds_train.values[:, cols], ds_train.labels, ds_test.values[:, cols])
    return float(np.mean(pred == ds_test.labels))


def rsd(accuracies) -> float:
    """Relative standard deviation: sample std (n-1) over the mean."""
    acc = np.asarray(accuracies, dtype=np.float64)
    if acc.size < 2:
        raise ValueError("rsd needs at least two values")
    mean = acc.mean()
    if mean <= 0:
        raise ValueError(f"rsd undefined for mean accuracy {mean}")
    return float(acc.std(ddof=1) / mean)
