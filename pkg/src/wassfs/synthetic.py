"""Seeded Gaussian class-mixture generator."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .data import LabeledDataset


@dataclass(frozen=True)
class SyntheticSpec:
    """Informative features of class ``k`` are ``N(k * shift, 1)``; every other
    feature is ``N(0, 1) + N(0, noise_sigma**2)``."""

    n_per_class: int = 100
    n_classes: int = 3
    n_features: int = 20
    informative: tuple[int, ...] = (0, 1)
    shift: float = 2.0
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "informative", tuple(int(i) for i in self.informative))
        if self.n_per_class < 1 or self.n_classes < 2 or self.n_features < 1:
            raise ValueError("need n_per_class >= 1, n_classes >= 2, n_features >= 1")
        if any(not 0 <= i < self.n_features for i in self.informative):
            raise ValueError(f"informative indices {self.informative} outside [0, {self.n_features})")
        if len(set(self.informative)) != len(self.informative):
            raise ValueError("duplicate informative indices")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")

    @classmethod
    def from_json(cls, text: str) -> "SyntheticSpec":
        raw = json.loads(text)
        if "seed" not in raw:
            raise ValueError("synthetic spec must set 'seed'")
        return cls(**raw)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["informative"] = list(self.informative)
        return d


def gen_synthetic(spec: SyntheticSpec) -> LabeledDataset:
    rng = np.random.default_rng(spec.seed)
    n, k, d = spec.n_per_class, spec.n_classes, spec.n_features
    labels = np.repeat(np.arange(k), n)
    values = rng.standard_normal((n * k, d))
    noisy = [f for f in range(d) if f not in spec.informative]
    if spec.noise_sigma > 0 and noisy:
        values[:, noisy] += rng.normal(0.0, spec.noise_sigma, size=(n * k, len(noisy)))
    if spec.informative:
        values[:, list(spec.informative)] += (labels * spec.shift)[:, None]
    names = tuple(f"f{i}" for i in range(d))
    return LabeledDataset(values, labels, tuple(str(c) for c in range(k)), names)
