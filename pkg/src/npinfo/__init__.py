"""Global correlation functionals on discrete joint distributions.

Total correlation, n-partite information, (conditional) mutual
information, sufficiency ratios and maximum-entropy updating, all in nats.
"""

from .dist import (
    Axis,
    JointDistribution,
    Partition,
    Statistic,
    condition,
    embed_statistic,
    marginalize,
    new_joint,
    product_independent,
    product_marginal,
    relabel,
)
from .errors import (
    AxisMismatch,
    AxisNameCollision,
    BadAxisIndex,
    BadLabel,
    BlockMismatch,
    EmptyKeepSet,
    EmptyTable,
    IncompleteMap,
    InfeasibleConstraint,
    InvalidPartition,
    InvalidTree,
    NPInfoError,
    NegativeProbability,
    NoBaselineCorrelation,
    NormalizationError,
    NotABijection,
    NotBinaryTheta,
    NotConverged,
    OutOfRange,
    OverlappingBlocks,
    ParseError,
    ShapeMismatch,
    UnknownLabel,
    ZeroConditioningEvent,
    ZeroMarginal,
)
from .functionals import (
    causation_entropy,
    chain_rule_terms,
    conditional_mutual_information,
    entropy_decomposition,
    mi_upper_bound,
    mutual_information,
    npartite_information,
    relative_entropy,
    shannon_entropy,
    total_correlation,
    transfer_entropy,
)
from .maxent import MaxEntResult, MomentConstraint, bayes_update, correlation_delta, maxent_update
from .partitions import BranchTree, enumerate_partitions, full_trees, parse_partition, stirling2, watanabe_sum
from .sufficiency import (
    apply_statistic,
    joint_sufficiency,
    npartite_sufficiency,
    posterior_ratio,
    sufficiency,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BranchTree",
    "JointDistribution",
    "MaxEntResult",
    "MomentConstraint",
    "Partition",
    "Statistic",
    "apply_statistic",
    "bayes_update",
    "causation_entropy",
    "chain_rule_terms",
    "condition",
    "conditional_mutual_information",
    "correlation_delta",
    "embed_statistic",
    "entropy_decomposition",
    "enumerate_partitions",
    "full_trees",
    "joint_sufficiency",
    "marginalize",
    "maxent_update",
    "mi_upper_bound",
    "mutual_information",
    "new_joint",
    "npartite_information",
    "npartite_sufficiency",
    "parse_partition",
    "posterior_ratio",
    "product_independent",
    "product_marginal",
    "relabel",
    "relative_entropy",
    "shannon_entropy",
    "stirling2",
    "sufficiency",
    "total_correlation",
    "transfer_entropy",
    "watanabe_sum",
    "AxisMismatch",
    "AxisNameCollision",
    "BadAxisIndex",
    "BadLabel",
    "BlockMismatch",
    "EmptyKeepSet",
    "EmptyTable",
    "IncompleteMap",
    "InfeasibleConstraint",
    "InvalidPartition",
    "InvalidTree",
    "NPInfoError",
    "NegativeProbability",
    "NoBaselineCorrelation",
    "NormalizationError",
    "NotABijection",
    "NotBinaryTheta",
    "NotConverged",
    "OutOfRange",
    "OverlappingBlocks",
    "ParseError",
    "ShapeMismatch",
    "UnknownLabel",
    "ZeroConditioningEvent",
    "ZeroMarginal",
    "__version__",
]
