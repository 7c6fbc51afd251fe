"""Exact-arithmetic information theory for uncertain variables.

Everything is computed over rationals (`fractions.Fraction`); no floats enter
any comparison.  The package models nonempty-range uncertain variables on
finite or interval grounds, measures sets with uncertainty functions, and
builds overlap families, capacities, and single-letter certificates on top.
"""

from .uvcore import (
    CardinalityPower,
    DiameterPlusOne,
    ExplicitWeights,
    FiniteGround,
    IncompatibleGround,
    IntervalGround,
    IntervalUnion,
    LebesguePlusOffset,
    PointOutsideRange,
    UncertainPair,
    UncertaintyFunction,
    UvinfoError,
    format_ratio,
    ratio,
    uncertainty_of,
)
from .infocalc import (
    AssociationSets,
    EmptyPair,
    LevelStatus,
    MIResult,
    NotDisassociated,
    OverlapFamily,
    TaxicabFamily,
    association_sets,
    classify_levels,
    delta_components,
    mutual_information,
    overlap_family,
    taxicab_family,
)
from .chancap import (
    CapacityResult,
    Channel,
    DeltaOutOfRange,
    NotNormalized,
    capacity,
    check_distinguishable,
    induced_pair,
    mi_sup_oracle,
    verify_coding_theorem,
)
from .memoryless import (
    ConfidenceSequence,
    HorizonTooLarge,
    NonProductUncertainty,
    NotCapacityAchieving,
    ProductChannel,
    Rate,
    SingleLetterCertificate,
    capacity_profile,
    parse_sequence_spec,
    product_pair,
    product_uncertainty,
    rate_at_horizon,
    single_letter_check,
    tensorization_check,
)
from .apps import (
    BitString,
    EquivocationMatrix,
    LengthMismatch,
    NotDistinguishable,
    confusion_ingest,
    hamming_distance_bound,
    hamming_equivocation,
    label_uncertainty,
    matrix_capacity,
)

__version__ = "0.1.0"

__all__ = [
    "AssociationSets",
    "BitString",
    "CapacityResult",
    "CardinalityPower",
    "Channel",
    "ConfidenceSequence",
    "DeltaOutOfRange",
    "DiameterPlusOne",
    "EmptyPair",
    "EquivocationMatrix",
    "ExplicitWeights",
    "FiniteGround",
    "HorizonTooLarge",
    "IncompatibleGround",
    "IntervalGround",
    "IntervalUnion",
    "LebesguePlusOffset",
    "LengthMismatch",
    "LevelStatus",
    "MIResult",
    "NonProductUncertainty",
    "NotCapacityAchieving",
    "NotDisassociated",
    "NotDistinguishable",
    "NotNormalized",
    "OverlapFamily",
    "PointOutsideRange",
    "ProductChannel",
    "Rate",
    "SingleLetterCertificate",
    "TaxicabFamily",
    "UncertainPair",
    "UncertaintyFunction",
    "UvinfoError",
    "association_sets",
    "capacity",
    "capacity_profile",
    "check_distinguishable",
    "classify_levels",
    "confusion_ingest",
    "delta_components",
    "format_ratio",
    "hamming_distance_bound",
    "hamming_equivocation",
    "induced_pair",
    "label_uncertainty",
    "matrix_capacity",
    "mi_sup_oracle",
    "mutual_information",
    "overlap_family",
    "parse_sequence_spec",
    "product_pair",
    "product_uncertainty",
    "rate_at_horizon",
    "ratio",
    "single_letter_check",
    "taxicab_family",
    "tensorization_check",
    "uncertainty_of",
    "verify_coding_theorem",
]
