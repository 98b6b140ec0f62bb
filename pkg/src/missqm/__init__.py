"""Quality metrics and tooling for structural missingness in tabular data.

The package measures three families of missingness structure: the amount
missing per variable, joint missingness of variable pairs, and conditional
missingness of one variable's absence on another variable's recorded
values. It also generates datasets with controlled missingness structures,
orders and filters variables by the metrics, exports graph-tool-compatible
tables, and serves everything to an interactive explorer over HTTP.
"""

from .dataset import (
    CATEGORICAL,
    NUMERICAL,
    IncompleteDataset,
    IngestConfig,
    ItemSet,
    VariableColumn,
    load_csv,
    load_csv_text,
    missing_set,
    recorded_set,
    save_csv,
)
from .univariate import MissingnessProfile, amount_missing, profile
from .joint import (
    expected_jm,
    jm_absolute,
    jm_directional,
    jm_magnitude,
    jm_matrices,
    joint_missing_count,
)
from .conditional import (
    BinnedDistribution,
    ConditionalProfile,
    bin_distribution,
    cm_density_difference,
    cm_entropy,
    cm_matrices,
    conditional_profile,
    optimal_bin_count,
)
from .matrices import PairwiseQMMatrix
from .ordering import VariableOrdering, order_by_pairwise, order_by_univariate, threshold_select
from .filters import MetricPredicate, parse_filter
from .generate import (
    CmPairSpec,
    GroundTruthManifest,
    JmPairSpec,
    MissingnessSpec,
    inject,
    inject_am,
    inject_cm,
    inject_jm,
    load_spec,
    spec_from_dict,
)
from .exports import (
    NetworkExport,
    compute_all_matrices,
    export_network,
    read_matrix_csv,
    write_matrix_csv,
    write_network_csv,
)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "CATEGORICAL",
    "NUMERICAL",
    "IncompleteDataset",
    "IngestConfig",
    "ItemSet",
    "VariableColumn",
    "load_csv",
    "load_csv_text",
    "missing_set",
    "recorded_set",
    "save_csv",
    "MissingnessProfile",
    "amount_missing",
    "profile",
    "expected_jm",
    "jm_absolute",
    "jm_directional",
    "jm_magnitude",
    "jm_matrices",
    "joint_missing_count",
    "BinnedDistribution",
    "ConditionalProfile",
    "bin_distribution",
    "cm_density_difference",
    "cm_entropy",
    "cm_matrices",
    "conditional_profile",
    "optimal_bin_count",
    "PairwiseQMMatrix",
    "VariableOrdering",
    "order_by_pairwise",
    "order_by_univariate",
    "threshold_select",
    "MetricPredicate",
    "parse_filter",
    "CmPairSpec",
    "GroundTruthManifest",
    "JmPairSpec",
    "MissingnessSpec",
    "inject",
    "inject_am",
    "inject_cm",
    "inject_jm",
    "load_spec",
    "spec_from_dict",
    "NetworkExport",
    "compute_all_matrices",
    "export_network",
    "read_matrix_csv",
    "write_matrix_csv",
    "write_network_csv",
    "errors",
]
