import math
from fractions import Fraction

import pytest
import sympy as sp

from pickup_sticks.errors import DomainError
from pickup_sticks.exact_sequences import fibonacci, fibonorial
from pickup_sticks.polytope_oracle import (
    grid_volume_estimate,
    probability_oracle,
    substitution_coefficients,
)
from pickup_sticks.spacings_integrator import probability


def symbolic_top_coefficients(n, k):
    """Expand u_n in the slacks by substituting the tight inequalities with sympy."""
    v = sp.symbols(f"v1:{n + 1}")
    u = []
    for i in range(n):
        if i >= k - 1:
            base = sum(u[i - (k - 1): i])
        elif i >= 1:
            base = u[i - 1]
        else:
            base = 0
        u.append(sp.expand(base + v[i]))
    return [int(u[-1].coeff(vj)) for vj in v]


@pytest.mark.parametrize(
    "n, k, expected",
    [(5, 3, (5, 3, 2, 1, 1)), (4, 4, (3, 2, 1, 1)), (6, 4, (9, 7, 4, 2, 1, 1))],
)
def test_substitution_coefficients(n, k, expected):
    assert tuple(symbolic_top_coefficients(n, k)) == expected
    assert substitution_coefficients((n, k)).c == expected


@pytest.mark.parametrize("n, k", [(n, k) for k in range(3, 9) for n in range(k, 14)])
def test_substitution_matches_symbolic_expansion(n, k):
    assert list(substitution_coefficients((n, k)).c) == symbolic_top_coefficients(n, k)


def test_k3_coefficients_are_reversed_fibonacci():
    for n in range(1, 51):
        assert list(substitution_coefficients((n, 3)).c) == fibonacci(n)[::-1]
        assert probability_oracle((n, 3)) * fibonorial(n) == 1


def test_coefficient_shape():
    for k in range(3, 9):
        prev = 1
        for n in range(k, 26):
            c = substitution_coefficients((n, k)).c
            assert c[-1] == c[-2] == 1
            assert all(x >= 1 for x in c)
            assert all(a >= b for a, b in zip(c, c[1:]))
            assert math.prod(c) >= prev
            prev = math.prod(c)


@pytest.mark.parametrize(
    "n, k, expected",
    [(3, 3, Fraction(1, 2)), (6, 4, Fraction(1, 504)), (5, 5, Fraction(1, 24)), (2, 3, Fraction(1))],
)
def test_probability_oracle(n, k, expected):
    assert probability_oracle((n, k)) == expected


def test_hand_volume_n3():
    u1, u2, u3 = sp.symbols("u1 u2 u3")
    # ordered region with u1 + u2 <= u3 <= 1
    vol = sp.integrate(1, (u3, u1 + u2, 1), (u2, u1, 1 - u1), (u1, 0, sp.Rational(1, 2)))
    assert vol == sp.Rational(1, 12)
    assert probability_oracle((3, 3)) == Fraction(6, 12)


@pytest.mark.parametrize("n, k, resolution", [(3, 3, 512), (4, 3, 256), (4, 4, 256)])
def test_grid_documented_resolutions(n, k, resolution):
    exact = float(probability((n, k)))
    assert abs(grid_volume_estimate((n, k), resolution) - exact) < 5e-3


@pytest.mark.parametrize("n, k", [(3, 3), (4, 3), (4, 4)])
def test_grid_converges_when_resolution_doubles(n, k):
    exact = float(probability((n, k)))
    errors = [abs(grid_volume_estimate((n, k), r) - exact) for r in (16, 32, 64, 128)]
    assert all(b < a for a, b in zip(errors, errors[1:]))


@pytest.mark.parametrize("n, k, resolution", [(5, 3, 32), (3, 4, 32), (3, 3, 8)])
def test_grid_domain(n, k, resolution):
    with pytest.raises(DomainError):
        grid_volume_estimate((n, k), resolution)
