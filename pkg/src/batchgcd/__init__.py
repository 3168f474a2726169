"""Batch GCD toolkit: shared-prime discovery across RSA modulus sets."""

from .bench import (
    ScalingFit,
    SpeedupSeries,
    TimingSeries,
    VerificationError,
    fit_scaling,
    golden_section_minimize,
    run_sweep,
    speedup_series,
    time_algorithm,
)
from .binary_tree import (
    FactorEntry,
    FactorReport,
    GcdTree,
    OpCounter,
    Status,
    aggregate_divisors,
    build_gcd_tree,
    enumerate_factors,
    resolve_full_modulus,
    run_binary_tree_batch_gcd,
)
from .dataset import (
    ADVERSARIAL_KINDS,
    DatasetParseError,
    ModulusSet,
    PlantedGroundTruth,
    generate_adversarial_dataset,
    generate_dataset,
    generate_primes,
    load_dataset,
    save_dataset,
    truth_path_for,
)
from .oracle import (
    ExpectedFactors,
    PairwiseResult,
    expected_factor_map,
    pairwise_gcd_all,
)
from .product_tree import ProductTree, build_product_tree, product_of
from .remainder_tree import run_remainder_tree_batch_gcd
from .verify import (
    diff_report_vs_expected,
    diff_report_vs_truth,
    diff_reports,
    expected_from_truth,
)

__version__ = "0.1.0"

__all__ = [
    "ADVERSARIAL_KINDS",
    "DatasetParseError",
    "ExpectedFactors",
    "FactorEntry",
    "FactorReport",
    "GcdTree",
    "ModulusSet",
    "OpCounter",
    "PairwiseResult",
    "PlantedGroundTruth",
    "ProductTree",
    "ScalingFit",
    "SpeedupSeries",
    "Status",
    "TimingSeries",
    "VerificationError",
    "aggregate_divisors",
    "build_gcd_tree",
    "build_product_tree",
    "diff_report_vs_expected",
    "diff_report_vs_truth",
    "diff_reports",
    "enumerate_factors",
    "expected_factor_map",
    "expected_from_truth",
    "fit_scaling",
    "generate_adversarial_dataset",
    "generate_dataset",
    "generate_primes",
    "golden_section_minimize",
    "load_dataset",
    "pairwise_gcd_all",
    "product_of",
    "resolve_full_modulus",
    "run_binary_tree_batch_gcd",
    "run_remainder_tree_batch_gcd",
    "run_sweep",
    "save_dataset",
    "speedup_series",
    "time_algorithm",
    "truth_path_for",
]
