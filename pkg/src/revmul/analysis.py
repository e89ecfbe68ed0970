"""Modular classification and middle-digit projections of solutions.

For a 5-digit solution with digits (a, b, c, d, e) and ``p = n + 1``, reducing
``k*X == reverse(X)`` modulo p gives ``p | (k-1)(a-b+c-d+e)``. When p is prime
this forces ``a-b+c-d+e == f*p`` with ``f`` in {-1, 0, 1, 2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import sympy

from .digits import DigitString, Solution, check_solution

F_RANGE = (-1, 0, 1, 2)


@lru_cache(maxsize=None)
def is_prime(m: int) -> bool:
    return bool(sympy.isprime(m))


@dataclass(frozen=True)
class FClassification:
    p: int
    s: int
    f: Optional[int]
    p_prime: bool

    @property
    def classified(self) -> bool:
        return self.f is not None

    @property
    def anomaly(self) -> bool:
        # Only a prime p forces f into {-1, 0, 1, 2}.
        return self.p_prime and (self.f is None or self.f not in F_RANGE)


@dataclass(frozen=True)
class ProjectionOutcome:
    projected: DigitString
    same_k_holds: bool
    any_k: Optional[int]
    f_class: Optional[FClassification]

    @property
    def counterexample(self) -> bool:
        """True when the projection is not a solution for any multiplier."""
        return self.any_k is None

    @property
    def same_k_only_failure(self) -> bool:
        return self.any_k is not None and not self.same_k_holds


def alternating_sum(d: DigitString) -> int:
    if len(d) != 5:
        raise ValueError(f"alternating sum needs exactly 5 digits, got {len(d)}")
    a, b, c, dd, e = d.digits
    return a - b + c - dd + e


def f_class(sol: Solution) -> FClassification:
    s = alternating_sum(sol.digits)
    p = sol.base + 1
    f, rem = divmod(s, p)
    return FClassification(p=p, s=s, f=None if rem else f, p_prime=is_prime(p))


def delete_middle(d: DigitString) -> DigitString:
    if len(d) < 3 or len(d) % 2 == 0:
        raise ValueError(f"need an odd length >= 3, got {len(d)}")
    mid = len(d) // 2
    return DigitString(d.base, d.digits[:mid] + d.digits[mid + 1:])


def _project(sol: Solution, fc: Optional[FClassification]) -> ProjectionOutcome:
    projected = delete_middle(sol.digits)
    any_k = check_solution(projected)
    return ProjectionOutcome(projected, any_k == sol.k, any_k, fc)


def question1_check(sol: Solution) -> ProjectionOutcome:
    """Delete the middle digit of a 5-digit solution and test the 4-digit result."""
    if len(sol) != 5:
        raise ValueError(f"expected a 5-digit solution, got {len(sol)} digits")
    return _project(sol, f_class(sol))


def kaczynski_project(sol: Solution) -> ProjectionOutcome:
    """3 -> 2 projection. A missing ``any_k`` here is an anomaly, never expected."""
    if len(sol) != 3:
        raise ValueError(f"expected a 3-digit solution, got {len(sol)} digits")
    return _project(sol, None)


def derived_identity_sides(sol: Solution, f: int) -> tuple[int, int]:
    n, k = sol.base, sol.k
    a, b, _, d, e = sol.digits.digits
    lhs = k * (a * n**3 + (b - a + f) * n**2 + (d - e) * n + e)
    rhs = e * n**3 + (d - e + f) * n**2 + (b - a) * n + a
    return lhs, rhs


def derived_identity_check(sol: Solution) -> bool:
    """Check the identity left after eliminating the middle digit via ``s == f*p``.

    Coefficients such as ``b - a + f`` may be negative or exceed ``n - 1``;
    both sides are plain integers, not digit strings.
    """
    if len(sol) != 5:
        raise ValueError(f"expected a 5-digit solution, got {len(sol)} digits")
    fc = f_class(sol)
    if fc.f is None:
        raise ValueError(f"f is undefined for {sol.digits} (p={fc.p} does not divide {fc.s})")
    lhs, rhs = derived_identity_sides(sol, fc.f)
    return lhs == rhs
