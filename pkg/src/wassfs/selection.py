"""Top-m, forward add-in and backward elimination feature selection.

All three maximize the Frobenius utility of the class distance matrix.
Candidates are always evaluated in ascending feature-index order, and ties
resolve by index: the lower index wins an inclusion, the higher index is
eliminated first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .criteria import EXACT_1D, EstimatorChoice, feature_utility, subset_utility
from .data import LabeledDataset
from .exceptions import WassfsError

logger = logging.getLogger(__name__)

METHODS = ("twd", "fawd", "bewd")
MONOTONE_SLACK = 1e-9


def default_estimator(method: str) -> EstimatorChoice:
    return EXACT_1D if method == "twd" else EstimatorChoice("sinkhorn-w1")


@dataclass(frozen=True)
class SelectionConfig:
    """``estimator=None`` picks the method default: exact 1-D W1 for TWD,
    Sinkhorn W1 for FAWD/BEWD.  ``seed`` is recorded but unused; every
    tie-break is by feature index."""

    m: int
    group_size: int = 1
    estimator: EstimatorChoice | None = None
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.group_size < 1:
            raise ValueError(f"group_size must be >= 1, got {self.group_size}")

    def check(self, n_features: int) -> None:
        if self.m > n_features:
            raise ValueError(f"m={self.m} exceeds the {n_features} available features")


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of one selection run.

    ``scores`` holds the per-feature utility (TWD only, indexed by feature);
    ``trace`` the subset utility after each add/remove step (FAWD/BEWD).
    ``eliminated`` is BEWD's elimination order, survivors excluded.
    """

    method: str
    selected: tuple[int, ...]
    config: SelectionConfig
    scores: tuple[float, ...] = ()
    trace: tuple[float, ...] = ()
    eliminated: tuple[int, ...] = field(default=())


def _evaluate(ds, subset, est, candidate) -> float:
    try:
        return subset_utility(ds, sorted(subset), est)
    except WassfsError as exc:
        raise type(exc)(f"while scoring candidate feature {candidate}: {exc}") from exc


def twd(ds: LabeledDataset, cfg: SelectionConfig) -> SelectionResult:
    """Rank single features by utility and keep the best ``m``."""
    cfg.check(ds.n_features)
    est = cfg.estimator or default_estimator("twd")
    scores = np.array([feature_utility(ds, f, est) for f in range(ds.n_features)])
    order = np.argsort(-scores, kind="stable")
    return SelectionResult(
        "twd",
        tuple(int(i) for i in order[: cfg.m]),
        cfg,
        scores=tuple(float(s) for s in scores),
    )


def fawd(ds: LabeledDataset, cfg: SelectionConfig) -> SelectionResult:
    """Greedy forward add-in.

    Each step scores every unselected feature ``f`` by ``U(T + {f})`` and
    adds the best ``group_size`` of them.  Stops once ``|T| >= m`` and keeps
    the first ``m`` in selection order.
    """
    cfg.check(ds.n_features)
    est = cfg.estimator or default_estimator("fawd")
    selected: list[int] = []
    trace: list[float] = []
    while len(selected) < cfg.m:
        cands = [f for f in range(ds.n_features) if f not in selected]
        util = np.array([_evaluate(ds, selected + [f], est, f) for f in cands])
        ranked = np.argsort(-util, kind="stable")[: cfg.group_size]
        selected.extend(cands[i] for i in ranked)
        trace.append(float(util[ranked[0]]) if len(ranked) == 1 else _evaluate(ds, selected, est, None))
        if len(trace) > 1 and trace[-1] < trace[-2] - MONOTONE_SLACK:
            logger.warning(
                "FAWD utility decreased at step %d: %.12g -> %.12g",
                len(trace), trace[-2], trace[-1],
            )
    return SelectionResult("fawd", tuple(selected[: cfg.m]), cfg, trace=tuple(trace))


def _elimination_step(ds, remaining, est, group):
    """Features whose removal leaves the highest utility, best first."""
    util = np.array([_evaluate(ds, [r for r in remaining if r != f], est, f) for f in remaining])
    idx = np.array(remaining)
    # highest remaining utility first; among ties the higher feature index goes first
    order = np.lexsort((-idx, -util))[:group]
    return [remaining[i] for i in order], util[order[0]]


def bewd(ds: LabeledDataset, cfg: SelectionConfig) -> SelectionResult:
    """Greedy backward elimination.

    Starting from all features, each step removes the ``group_size``
    features whose removal hurts utility least, never going below ``m``.
    Survivors are ranked by carrying on the same elimination among them,
    so ``selected`` lists the last-eliminated feature first.
    """
    cfg.check(ds.n_features)
    est = cfg.estimator or default_estimator("bewd")
    remaining = list(range(ds.n_features))
    eliminated: list[int] = []
    trace: list[float] = []
    while len(remaining) > cfg.m:
        group = min(cfg.group_size, len(remaining) - cfg.m)
        out, best = _elimination_step(ds, remaining, est, group)
        remaining = [r for r in remaining if r not in out]
        eliminated.extend(out)
        trace.append(float(best) if group == 1 else _evaluate(ds, remaining, est, None))

    survivors = list(remaining)
    ranking: list[int] = []
    while len(survivors) > 1:
        out, _ = _elimination_step(ds, survivors, est, 1)
        survivors.remove(out[0])
        ranking.append(out[0])
    ranking.extend(survivors)
    return SelectionResult(
        "bewd",
        tuple(reversed(ranking)),
        cfg,
        trace=tuple(trace),
        eliminated=tuple(eliminated),
    )


def select(ds: LabeledDataset, method: str, cfg: SelectionConfig) -> SelectionResult:
    try:
        fn = {"twd": twd, "fawd": fawd, "bewd": bewd}[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}") from None
    return fn(ds, cfg)
