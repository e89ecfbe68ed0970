"""Exhaustive enumeration of reverse multiples of a fixed length.

Two engines share one contract. ``enumerate_naive`` tests every multiplicand
and is the trusted oracle; ``enumerate_fast`` runs the carry-propagation
solver once per multiplier. Both return solutions sorted by ``(k, value)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .digits import DigitString, Solution, check_envelope, check_solution, digits_of


@dataclass(frozen=True)
class EnumerationRequest:
    base: int
    length: int
    k: Optional[int] = None
    limit: Optional[int] = None

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        check_envelope(self.base, self.length)
        if self.limit is not None and self.limit < 0:
            raise ValueError("limit must be non-negative")

    def multipliers(self) -> range:
        if self.k is not None:
            return range(self.k, self.k + 1) if 1 < self.k < self.base else range(0)
        return range(2, self.base)


def _apply_limit(sols: list[Solution], limit: Optional[int]) -> list[Solution]:
    return sols if limit is None else sols[:limit]


def enumerate_naive(req: EnumerationRequest) -> list[Solution]:
    n, length = req.base, req.length
    if length < 2:
        return []
    wanted = set(req.multipliers())
    out = []
    for x in range(n ** (length - 1), n**length):
        if x % n == 0:
            continue
        r, rest = 0, x
        while rest:
            rest, digit = divmod(rest, n)
            r = r * n + digit
        k, rem = divmod(r, x)
        if rem or k not in wanted:
            continue
        d = digits_of(x, n, length)
        if check_solution(d) == k:
            out.append(Solution(d, k))
    out.sort(key=Solution.sort_key)
    return _apply_limit(out, req.limit)


def _carry_search(n: int, length: int, k: int) -> Iterator[list[int]]:
    """Yield LSB-first digit lists ``x`` with ``k * X == reverse(X)``.

    Longhand multiplication at LSB position j reads
    ``k*x[j] + c[j] == x[L-1-j] + n*c[j+1]`` with ``c[0] == c[L] == 0``; every
    carry lies in ``[0, k-1]``. Choosing ``x[i]`` fixes its partner
    ``x[L-1-i]`` and the low carry ``c[i+1]``; the partner's own position
    then fixes the high carry ``c[L-1-i]`` walking down from ``c[L]``.
    """
    x = [0] * length
    half = length // 2
    odd = length % 2 == 1

    def step(i: int, c_lo: int, c_hi: int) -> Iterator[list[int]]:
        # c_lo == c[i], c_hi == c[L-i]
        if i == half:
            if not odd:
                if c_lo == c_hi:
                    yield x[::-1]
                return
            # middle digit m: (k-1)*x[m] == n*c[m+1] - c[m]
            num = n * c_hi - c_lo
            m, rem = divmod(num, k - 1)
            if rem == 0 and 0 <= m < n:
                x[half] = m
                yield x[::-1]
            return
        j = length - 1 - i
        for lo in range(1 if i == 0 else 0, n):
            t = k * lo + c_lo
            hi, c_next = t % n, t // n
            if i == 0 and hi == 0:
                continue
            c_down = lo + n * c_hi - k * hi
            if not 0 <= c_down < k:
                continue
            x[i], x[j] = lo, hi
            yield from step(i + 1, c_next, c_down)

    yield from step(0, 0, 0)


def solve_for_k(n: int, length: int, k: int) -> list[Solution]:
    check_envelope(n, length)
    if not 1 < k < n:
        raise ValueError(f"multiplier must satisfy 1 < k < {n}, got {k}")
    if length < 2:
        return []
    out = [Solution(DigitString(n, msb), k) for msb in _carry_search(n, length, k)]
    out.sort(key=Solution.sort_key)
    return out


def enumerate_fast(req: EnumerationRequest) -> list[Solution]:
    out: list[Solution] = []
    for k in req.multipliers():
        out.extend(solve_for_k(req.base, req.length, k))
        if req.limit is not None and len(out) >= req.limit:
            break
    return _apply_limit(out, req.limit)


def exists_solution(n: int, length: int) -> bool:
    check_envelope(n, length)
    if length < 2:
        return False
    for k in range(2, n):
        for _ in _carry_search(n, length, k):
            return True
    return False


def enumerate_solutions(n: int, length: int, engine: str = "fast", k: Optional[int] = None,
                        limit: Optional[int] = None) -> list[Solution]:
    """Convenience front end; ``engine`` is ``"fast"``, ``"naive"`` or ``"both"``."""
    req = EnumerationRequest(n, length, k, limit)
    if engine == "fast":
        return enumerate_fast(req)
    if engine == "naive":
        return enumerate_naive(req)
    if engine == "both":
        fast, naive = enumerate_fast(req), enumerate_naive(req)
        if fast != naive:
            raise EngineDivergence(n, length, fast, naive)
        return fast
    raise ValueError(f"unknown engine {engine!r}")


class EngineDivergence(RuntimeError):
    def __init__(self, n: int, length: int, fast: list[Solution], naive: list[Solution]):
        super().__init__(
            f"engines disagree for base {n}, length {length}: "
            f"fast found {len(fast)}, naive found {len(naive)}"
        )
        self.fast = fast
        self.naive = naive
