"""The parametric family of 4- and 5-digit solutions.

For ``a | (n - a)`` and ``k = (n - a) / a``::

    k * (a, a-1, n-1, n-a-1, n-a)_n == (n-a, n-a-1, n-1, a-1, a)_n
    k * (a, a-1, n-a-1, n-a)_n      == (n-a, n-a-1, a-1, a)_n

Setting ``a = 1`` gives a solution of each length for every ``n >= 3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .digits import DigitString, Solution


@dataclass(frozen=True)
class FamilyParams:
    base: int
    a: int

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if not 1 <= self.a <= self.base - 1:
            raise ValueError(f"a must satisfy 1 <= a <= {self.base - 1}, got {self.a}")

    def multiplier(self) -> Optional[int]:
        q, r = divmod(self.base - self.a, self.a)
        if r or not 1 < q < self.base:
            return None
        return q


def family5_digits(n: int, a: int) -> tuple[int, ...]:
    return (a, a - 1, n - 1, n - a - 1, n - a)


def family4_digits(n: int, a: int) -> tuple[int, ...]:
    return (a, a - 1, n - a - 1, n - a)


def family5(params: FamilyParams) -> Optional[Solution]:
    k = params.multiplier()
    if k is None:
        return None
    return Solution(DigitString(params.base, family5_digits(params.base, params.a)), k)


def family4(params: FamilyParams) -> Optional[Solution]:
    k = params.multiplier()
    if k is None:
        return None
    return Solution(DigitString(params.base, family4_digits(params.base, params.a)), k)


def family_all(n: int) -> list[tuple[FamilyParams, tuple[Solution, Solution]]]:
    if n < 2:
        raise ValueError(f"base must be >= 2, got {n}")
    out = []
    for a in range(1, n):
        params = FamilyParams(n, a)
        five = family5(params)
        if five is not None:
            out.append((params, (family4(params), five)))
    return out


def corollary_solutions(n: int) -> tuple[Solution, Solution]:
    if n < 3:
        raise ValueError(f"the a=1 family needs n >= 3, got {n}")
    params = FamilyParams(n, 1)
    return family4(params), family5(params)


def is_in_family(sol: Solution) -> Optional[FamilyParams]:
    length = len(sol)
    if length not in (4, 5):
        raise ValueError(f"family membership is defined for 4 or 5 digits, got {length}")
    n = sol.base
    a = sol.digits[0]
    pattern = family5_digits if length == 5 else family4_digits
    if a < 1 or sol.digits.digits != pattern(n, a):
        return None
    return FamilyParams(n, a)
