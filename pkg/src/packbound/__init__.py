"""Adversarial lower-bound workbench for classic online bin packing.

Simulates the branching adversarial input against real online algorithms in
exact arithmetic, constructs and validates the offline packings behind every
optimum bound, certifies the supremum price of every bin type by exhaustive
enumeration, and reproduces the closing max-min bound exactly.
"""

from .adversary import (
    AdversaryReport,
    AItemGenerator,
    IntervalExhausted,
    ReplayMismatch,
    run_tree,
    synthesize_items,
)
from .algorithms import make_algorithm
from .analysis import (
    AffineW,
    CertificationFailure,
    PriceCertification,
    bound_asymptotic,
    bound_finite_t,
    certify_prices,
    check_weight_price_inequality,
    classify_bin,
    multipliers,
    optimize_bound,
    price_table,
)
from .core import (
    Item,
    OnlineAlgorithm,
    OverflowRejection,
    PackingState,
    Transcript,
    compute_stats,
)
from .inputs import ConstructionParams
from .layered import CertificateViolation, LayeredContext, LayeredValue
from .optbounds import (
    InfeasibleConstruction,
    OfflineSolution,
    construct_solution,
    exact_opt,
    first_batch_opt_lower,
    opt_upper_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AdversaryReport",
    "AffineW",
    "AItemGenerator",
    "CertificateViolation",
    "CertificationFailure",
    "ConstructionParams",
    "InfeasibleConstruction",
    "IntervalExhausted",
    "Item",
    "LayeredContext",
    "LayeredValue",
    "OfflineSolution",
    "OnlineAlgorithm",
    "OverflowRejection",
    "PackingState",
    "PriceCertification",
    "ReplayMismatch",
    "Transcript",
    "bound_asymptotic",
    "bound_finite_t",
    "certify_prices",
    "check_weight_price_inequality",
    "classify_bin",
    "compute_stats",
    "construct_solution",
    "exact_opt",
    "first_batch_opt_lower",
    "make_algorithm",
    "multipliers",
    "opt_upper_bound",
    "optimize_bound",
    "price_table",
    "run_tree",
    "synthesize_items",
]
