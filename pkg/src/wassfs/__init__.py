"""Feature selection by Wasserstein distances between class-conditional distributions."""

__version__ = "0.1.0"

from .criteria import (
    ClassDistanceMatrix,
    EstimatorChoice,
    distance_matrix,
    feature_utility,
    mmd_gaussian,
    subset_utility,
    utility,
)
from .data import (
    EmpiricalMeasure1D,
    FeatureSubset,
    LabeledDataset,
    class_slice,
    feature_measure,
    standardize,
)
from .evaluation import evaluate_subset, rsd, train_test_split
from .ot1d import w1_equal_size, w1_general, wp_general
from .selection import SelectionConfig, SelectionResult, bewd, fawd, select, twd
from .entropic import SinkhornConfig, SinkhornResult, TransportProblem, cost_matrix, sinkhorn, w1_sinkhorn
from .synthetic import SyntheticSpec, gen_synthetic
