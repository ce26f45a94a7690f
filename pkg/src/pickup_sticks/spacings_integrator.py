"""
Exact no-k-gon probabilities by successive exponential integration.

Sorted uniforms are written as normalized cumulative sums of unit exponentials
``X_1, ..., X_{n+1}``. The window condition

    U_(i) + ... + U_(i+k-2) <= U_(i+k-1)

is scale-free, so the normalizer drops out and it becomes

    (k-2)(X_1 + ... + X_i) + (k-3) X_{i+1} + ... + 1 X_{i+k-3} <= X_{i+k-1}.

The probability is the integral of ``exp(-(x_1 + ... + x_n))`` over that region.
Integrating the innermost variable against its lower bound keeps the exponent
linear, with the shape

    a (x_1 + ... + x_m) + b_1 x_{m+1} + ... + b_{k-2} x_{m+k-2}

and a constant divisor collected from each ``1/b`` factor. The engine tracks only
those integers. For ``k = 3`` the pair ``(a, b_1)`` walks the Fibonacci numbers;
for ``k = 4`` the triple ``(a, b_1, b_2)`` is the ``(R, S, T)`` recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractViolation, require

__all__ = [
    "KGonQuery",
    "CoeffState",
    "init_state",
    "step",
    "probability",
    "coefficient_trace",
]


@dataclass(frozen=True)
class KGonQuery:
    n: int
    k: int

    def __post_init__(self) -> None:
        require(self.n >= 1, f"need at least one stick, got n={self.n}")
        require(self.k >= 3, f"polygon size k must be >= 3, got k={self.k}")


@dataclass(frozen=True)
class CoeffState:
    """Exponent coefficients after some number of integrations.

    ``a`` multiplies each of the first ``prefix_len`` variables, ``b[j]`` the
    trailing variables in order, and ``divisor`` is the product of every
    coefficient integrated out so far.
    """

    k: int
    prefix_len: int
    a: int
    b: tuple[int, ...]
    divisor: int

    def __post_init__(self) -> None:
        if len(self.b) != self.k - 2:
            raise ContractViolation(f"expected {self.k - 2} trailing coefficients, got {len(self.b)}")

    @property
    def integrand_product(self) -> int:
        """Divisor times every live coefficient: the reciprocal of the final probability."""
        return self.divisor * self.a * math.prod(self.b)


def _as_query(query: KGonQuery | tuple[int, int]) -> KGonQuery:
    if isinstance(query, KGonQuery):
        return query
    n, k = query
    return KGonQuery(n, k)


def init_state(query: KGonQuery | tuple[int, int]) -> CoeffState:
    q = _as_query(query)
    require(q.n >= q.k, f"engine needs n >= k, got n={q.n}, k={q.k}")
    return CoeffState(k=q.k, prefix_len=q.n - (q.k - 2), a=1, b=(1,) * (q.k - 2), divisor=1)


def step(state: CoeffState) -> CoeffState:
    """Integrate out the innermost variable.

    Its lower bound puts weight ``k-2`` on the prefix minus its last variable,
    then ``k-3, k-4, ..., 0`` on the following variables; each weight is
    multiplied by the integrated coefficient ``b[-1]`` and folded in.
    """
    if state.prefix_len < 2:
        raise ContractViolation("no constrained variable left to integrate")
    k = state.k
    last = state.b[-1]
    new_a = state.a + (k - 2) * last
    new_b = [state.a + (k - 3) * last]
    new_b.extend(bj + (k - 3 - j) * last for j, bj in enumerate(state.b[:-1], start=1))
    return CoeffState(
        k=k,
        prefix_len=state.prefix_len - 1,
        a=new_a,
        b=tuple(new_b),
        divisor=state.divisor * last,
    )


def coefficient_trace(query: KGonQuery | tuple[int, int]) -> list[CoeffState]:
    """Every state from the uniform start through the last constrained integration."""
    q = _as_query(query)
    state = init_state(q)
    trace = [state]
    for _ in range(q.n - (q.k - 1)):
        state = step(state)
        trace.append(state)
    return trace


def probability(query: KGonQuery | tuple[int, int]) -> Fraction:
    """Exact probability that no k of n uniform sticks form a k-gon."""
    q = _as_query(query)
    if q.n < q.k:
        return Fraction(1)
    final = coefficient_trace(q)[-1]
    # remaining k-1 variables are free on [0, inf): one 1/coef factor each
    return Fraction(1, final.integrand_product)
