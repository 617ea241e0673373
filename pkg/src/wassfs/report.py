"""Run reports: a key-sorted JSON record of one CLI invocation."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, is_dataclass

import numpy as np

from . import __version__
from .data import LabeledDataset


def dataset_fingerprint(ds: LabeledDataset) -> dict:
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(ds.values, dtype="<f8").tobytes())
    h.update(np.ascontiguousarray(ds.labels, dtype="<i8").tobytes())
    h.update("\x1f".join(ds.class_names).encode())
    return {
        "n_samples": ds.n_samples,
        "n_features": ds.n_features,
        "n_classes": ds.n_classes,
        "class_names": list(ds.class_names),
        "sha256": h.hexdigest(),
    }


def _plain(obj):
    if is_dataclass(obj):
        return _plain(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


@dataclass
class RunReport:
    method: str
    config: dict
    selected: list[int]
    selected_names: list[str]
    scores: list[float]
    trace: list[float]
    dataset: dict
    wall_time_s: float
    evaluation: dict | None = None
    version: str = field(default=__version__)

    def to_json(self) -> str:
        return json.dumps(_plain(asdict(self)), sort_keys=True, indent=2) + "\n"
