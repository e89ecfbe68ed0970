"""Reverse multiples in base n: integers X with k*X equal to the digit reversal of X."""

__version__ = "0.1.0"

from .digits import (  # noqa: E402
    ArithmeticCapacityError,
    DigitString,
    Solution,
    check_solution,
    digits_of,
    reverse,
    value_of,
)
from .enumeration import (  # noqa: E402
    EnumerationRequest,
    enumerate_fast,
    enumerate_naive,
    exists_solution,
    solve_for_k,
)
from .analysis import (  # noqa: E402
    FClassification,
    ProjectionOutcome,
    alternating_sum,
    delete_middle,
    derived_identity_check,
    f_class,
    kaczynski_project,
    question1_check,
)
from .families import (  # noqa: E402
    FamilyParams,
    corollary_solutions,
    family4,
    family5,
    family_all,
    is_in_family,
)

__all__ = [
    "ArithmeticCapacityError", "DigitString", "Solution", "check_solution", "digits_of",
    "reverse", "value_of", "EnumerationRequest", "enumerate_fast", "enumerate_naive",
    "exists_solution", "solve_for_k", "FClassification", "ProjectionOutcome",
    "alternating_sum", "delete_middle", "derived_identity_check", "f_class",
    "kaczynski_project", "question1_check", "FamilyParams", "corollary_solutions",
    "family4", "family5", "family_all", "is_in_family",
]
