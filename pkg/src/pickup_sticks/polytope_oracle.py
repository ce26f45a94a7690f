"""
Independent checks of the no-k-gon probabilities.

Two routes that share nothing with the integration engine:

* an exact simplex volume. Writing each sorted length as a slack plus the
  lengths it must dominate, ``u_i = v_i + (u_{i-k+1} + ... + u_{i-1})`` once a
  full window exists and ``u_i = v_i + u_{i-1}`` below it, is a unit-triangular
  change of variables. Only ``u_n <= 1`` binds, and ``u_n = sum c_j v_j``, so the
  ordered region is the simplex ``{v >= 0 : sum c_j v_j <= 1}`` of volume
  ``1 / (n! prod c_j)``. Multiplying by the ``n!`` orderings gives ``1 / prod c_j``.
* a midpoint-rule grid over the ordered region for ``n <= 4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import require
from .spacings_integrator import KGonQuery, _as_query

__all__ = [
    "SubstitutionCoeffs",
    "substitution_coefficients",
    "probability_oracle",
    "grid_volume_estimate",
]

GRID_MAX_N = 4
GRID_MIN_RESOLUTION = 16


@dataclass(frozen=True)
class SubstitutionCoeffs:
    n: int
    k: int
    c: tuple[int, ...]


def substitution_coefficients(query: KGonQuery | tuple[int, int]) -> SubstitutionCoeffs:
    """Coefficient of each slack ``v_j`` in the largest length ``u_n``.

    >>> substitution_coefficients((5, 3)).c
    (5, 3, 2, 1, 1)
    """
    q = _as_query(query)
    n, k = q.n, q.k
    # rows[i][j]: coefficient of v_j in u_i
    rows: list[list[int]] = []
    for i in range(n):
        row = [0] * n
        row[i] = 1
        if i >= k - 1:
            preds = rows[i - (k - 1): i]
        elif i >= 1:
            preds = rows[i - 1: i]
        else:
            preds = []
        for p in preds:
            for j in range(i):
                row[j] += p[j]
        rows.append(row)
    return SubstitutionCoeffs(n=n, k=k, c=tuple(rows[-1]))


def probability_oracle(query: KGonQuery | tuple[int, int]) -> Fraction:
    q = _as_query(query)
    if q.n < q.k:
        return Fraction(1)
    return Fraction(1, math.prod(substitution_coefficients(q).c))


def grid_volume_estimate(query: KGonQuery | tuple[int, int], resolution: int) -> float:
    """Midpoint-rule estimate of the no-k-gon probability for tiny ``n``.

    The outer ``n - 1`` sorted lengths are sampled on a midpoint grid. For each
    grid point the largest length is integrated analytically: it ranges over
    ``[sum of the last k-1 outer values, 1]``. Grid points where two midpoints
    tie sit on the ordering boundary and get half weight per tie.
    """
    q = _as_query(query)
    n, k = q.n, q.k
    require(k <= n <= GRID_MAX_N, f"grid check supports k <= n <= {GRID_MAX_N}, got n={n}, k={k}")
    require(resolution >= GRID_MIN_RESOLUTION,
            f"resolution must be >= {GRID_MIN_RESOLUTION}, got {resolution}")

    h = 1.0 / resolution
    mids = (np.arange(resolution) + 0.5) * h
    outer = np.meshgrid(*([mids] * (n - 1)), indexing="ij", sparse=True)

    weight = np.ones((resolution,) * (n - 1))
    for i in range(n - 2):
        lo, hi = outer[i], outer[i + 1]
        weight = weight * np.where(lo < hi, 1.0, np.where(lo == hi, 0.5, 0.0))
    # windows that close strictly inside the outer block
    for end in range(k - 1, n - 1):
        window = sum(outer[end - (k - 1): end])
        weight = weight * (window <= outer[end])

    top_floor = sum(outer[n - 1 - (k - 1): n - 1])
    inner = np.clip(1.0 - top_floor, 0.0, None)
    volume = float(np.sum(weight * inner)) * h ** (n - 1)
    return volume * math.factorial(n)
