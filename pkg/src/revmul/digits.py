"""Base-n digit strings and the reverse-multiple predicate.

Digits are stored most-significant-first: ``DigitString(10, (2, 1, 7, 8))``
is the integer 2178.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

# Every supported search (n <= 2**16, L <= 7) stays far below this.
WORD_BITS = 128
WORD_LIMIT = 1 << WORD_BITS


class ArithmeticCapacityError(OverflowError):
    """A value left the checked 128-bit envelope."""


def checked(x: int) -> int:
    if not -WORD_LIMIT < x < WORD_LIMIT:
        raise ArithmeticCapacityError(
            f"value needs {abs(x).bit_length()} bits; limit is {WORD_BITS}"
        )
    return x


def check_envelope(n: int, length: int) -> None:
    """Raise unless every ``length``-digit base-``n`` value fits the envelope."""
    if n < 2:
        raise ValueError(f"base must be >= 2, got {n}")
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if n ** length > WORD_LIMIT:
        raise ArithmeticCapacityError(
            f"base {n} with {length} digits exceeds the {WORD_BITS}-bit envelope"
        )


@dataclass(frozen=True)
class DigitString:
    base: int
    digits: tuple[int, ...]

    def __init__(self, base: int, digits: Iterable[int]):
        digits = tuple(int(d) for d in digits)
        if base < 2:
            raise ValueError(f"base must be >= 2, got {base}")
        if not digits:
            raise ValueError("a digit string needs at least one digit")
        for d in digits:
            if not 0 <= d < base:
                raise ValueError(f"digit {d} out of range for base {base}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "digits", digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __str__(self) -> str:
        return f"({','.join(map(str, self.digits))})_{self.base}"

    @property
    def value(self) -> int:
        return value_of(self)


@dataclass(frozen=True, order=False)
class Solution:
    """A multiplicand X with ``k * X == reverse(X)``, ``1 < k < n``, end digits nonzero."""

    digits: DigitString
    k: int

    def __post_init__(self):
        found = check_solution(self.digits)
        if found != self.k:
            raise ValueError(f"{self.digits} is not a reverse multiple for k={self.k}")

    @property
    def base(self) -> int:
        return self.digits.base

    @property
    def value(self) -> int:
        return value_of(self.digits)

    @property
    def reversal(self) -> int:
        return value_of(reverse(self.digits))

    def sort_key(self) -> tuple[int, int]:
        return (self.k, self.value)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return f"{self.k}*{self.digits} = {reverse(self.digits)}"


def value_of(d: DigitString) -> int:
    n = d.base
    v = 0
    for x in d.digits:
        v = checked(v * n + x)
    return v


def reverse(d: DigitString) -> DigitString:
    return DigitString(d.base, d.digits[::-1])


def digits_of(x: int, n: int, min_width: int = 1) -> DigitString:
    if x < 0:
        raise ValueError("negative integers are not supported")
    if n < 2:
        raise ValueError(f"base must be >= 2, got {n}")
    out = []
    while x:
        x, r = divmod(x, n)
        out.append(r)
    out.extend([0] * (max(min_width, 1) - len(out)))
    return DigitString(n, reversed(out))


def check_solution(d: DigitString) -> Optional[int]:
    """Return the multiplier ``k`` if ``d`` is a reverse multiple, else None.

    Palindromes (``k == 1``) and ``k >= n`` are rejected here, so callers
    never need to re-apply the definitional range.
    """
    if d.digits[0] == 0 or d.digits[-1] == 0:
        return None
    x = value_of(d)
    r = value_of(reverse(d))
    k, rem = divmod(r, x)
    if rem or not 1 < k < d.base:
        return None
    return k


def parse_digits(text: str, base: int) -> DigitString:
    """Parse comma-separated decimal digits such as ``"2,8,3,13,16"``."""
    parts = [p.strip() for p in text.split(",")]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"malformed digit list {text!r}") from None
    return DigitString(base, values)


def as_digit_string(digits: Sequence[int] | DigitString, base: int | None = None) -> DigitString:
    if isinstance(digits, DigitString):
        return digits
    if base is None:
        raise ValueError("base is required for a plain digit sequence")
    return DigitString(base, digits)
