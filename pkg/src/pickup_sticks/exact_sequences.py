"""
k-step Fibonacci-type sequences and the closed-form no-polygon probabilities.

All arithmetic is on Python ints and :class:`fractions.Fraction`, so values are
exact at any size and ratios are always in lowest terms.

The general sequence uses seeds ``s_1 = s_2 = 1`` and, from the third term on,
sums the previous ``min(i - 1, k - 1)`` terms. ``k = 3`` gives Fibonacci and
``k = 4`` gives Tribonacci (1, 1, 2, 4, 7, 13, ...).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import require

__all__ = [
    "SequenceSpec",
    "kbonacci",
    "fibonacci",
    "tribonacci",
    "fibonorial",
    "p_no_triangle",
    "p_no_quadrilateral",
    "p_cannot_ngon",
]


@dataclass(frozen=True)
class SequenceSpec:
    k: int
    count: int

    def __post_init__(self) -> None:
        require(self.k >= 2, f"window size k must be >= 2, got {self.k}")
        require(self.count >= 1, f"count must be >= 1, got {self.count}")


def kbonacci(spec: SequenceSpec | None = None, *, k: int | None = None,
             count: int | None = None) -> list[int]:
    """First ``count`` terms of the sequence whose terms sum ``k - 1`` predecessors.

    >>> kbonacci(k=3, count=6)
    [1, 1, 2, 3, 5, 8]
    >>> kbonacci(k=4, count=6)
    [1, 1, 2, 4, 7, 13]
    """
    if spec is None:
        if k is None or count is None:
            raise TypeError("pass a SequenceSpec or both k and count")
        spec = SequenceSpec(k, count)
    return list(_kbonacci_cached(spec.k, spec.count))


@lru_cache(maxsize=256)
def _kbonacci_cached(k: int, count: int) -> tuple[int, ...]:
    width = k - 1
    out = [1, 1][:count]
    window: deque[int] = deque(out, maxlen=width)
    total = sum(window)
    while len(out) < count:
        nxt = total
        if len(window) == width:
            total -= window[0]
        window.append(nxt)
        total += nxt
        out.append(nxt)
    return tuple(out)


def fibonacci(count: int) -> list[int]:
    """F_1 .. F_count."""
    return kbonacci(SequenceSpec(3, count))


def tribonacci(count: int) -> list[int]:
    """T_1 .. T_count with T_1 = T_2 = 1, T_3 = 2."""
    return kbonacci(SequenceSpec(4, count))


def fibonorial(n: int) -> int:
    """Product F_1 * F_2 * ... * F_n."""
    require(n >= 1, f"fibonorial needs n >= 1, got {n}")
    return math.prod(fibonacci(n))


def p_no_triangle(n: int) -> Fraction:
    """Probability that no three of ``n`` uniform sticks form a triangle."""
    require(n >= 1, f"need at least one stick, got n={n}")
    return Fraction(1, fibonorial(n))


def p_no_quadrilateral(n: int) -> Fraction:
    """Probability that no four of ``n`` uniform sticks form a quadrilateral.

    Equals ``1 / ((T_n - T_{n-2}) * T_1 * ... * T_{n-1})``. The factor
    ``T_n - T_{n-2}`` is what stops this from being a pure product; the formula
    is applied for every ``n >= 3`` (it gives exactly 1 at ``n = 3``).
    """
    require(n >= 1, f"need at least one stick, got n={n}")
    if n < 3:
        return Fraction(1)
    t = tribonacci(n)
    correction = t[n - 1] - t[n - 3]
    return Fraction(1, correction * math.prod(t[: n - 1]))


def p_cannot_ngon(n: int) -> Fraction:
    """Probability that ``n`` uniform sticks cannot close an ``n``-gon: 1/(n-1)!."""
    require(n >= 2, f"an n-gon needs n >= 2, got n={n}")
    return Fraction(1, math.factorial(n - 1))
