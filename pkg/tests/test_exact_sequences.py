import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pickup_sticks.errors import DomainError
from pickup_sticks.exact_sequences import (
    SequenceSpec,
    fibonacci,
    fibonorial,
    kbonacci,
    p_cannot_ngon,
    p_no_quadrilateral,
    p_no_triangle,
    tribonacci,
)


def naive_kbonacci(k, count):
    """Straight from the definition, no running window."""
    out = []
    for i in range(1, count + 1):
        if i <= 2:
            out.append(1)
        else:
            out.append(sum(out[-min(i - 1, k - 1):]))
    return out


@pytest.mark.parametrize(
    "k, count, expected",
    [
        (3, 6, [1, 1, 2, 3, 5, 8]),
        (4, 6, [1, 1, 2, 4, 7, 13]),
        (5, 7, [1, 1, 2, 4, 8, 15, 29]),
        (2, 5, [1, 1, 1, 1, 1]),
        (3, 1, [1]),
    ],
)
def test_kbonacci_examples(k, count, expected):
    assert naive_kbonacci(k, count) == expected
    assert kbonacci(SequenceSpec(k, count)) == expected
    assert kbonacci(k=k, count=count) == expected


@pytest.mark.parametrize("k, count", [(1, 5), (0, 5), (3, 0), (3, -1)])
def test_kbonacci_rejects_bad_spec(k, count):
    with pytest.raises(DomainError):
        kbonacci(k=k, count=count)


def test_fibonacci_and_tribonacci_recurrences_hold_for_200_terms():
    f = fibonacci(200)
    assert f[:2] == [1, 1]
    assert all(f[i] == f[i - 1] + f[i - 2] for i in range(2, 200))
    t = tribonacci(200)
    assert t[:3] == [1, 1, 2]
    assert all(t[i] == t[i - 1] + t[i - 2] + t[i - 3] for i in range(3, 200))
    # exact at large magnitude: F_200 has 42 digits
    assert f[-1] == 280571172992510140037611932413038677189525


@given(st.integers(2, 12), st.integers(3, 80))
def test_kbonacci_matches_definition_and_increases(k, count):
    s = kbonacci(k=k, count=count)
    assert s == naive_kbonacci(k, count)
    if k > 2:
        assert all(b > a for a, b in zip(s[1:], s[2:]))


@pytest.mark.parametrize("n, expected", [(1, 1), (5, 30), (10, 122522400)])
def test_fibonorial(n, expected):
    assert math.prod(naive_kbonacci(3, n)) == expected
    assert fibonorial(n) == expected


def test_fibonorial_domain():
    with pytest.raises(DomainError):
        fibonorial(0)


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, Fraction(1, 2)), (5, Fraction(1, 30))])
def test_p_no_triangle(n, expected):
    assert p_no_triangle(n) == expected


def test_p_no_triangle_telescopes():
    f = fibonacci(61)
    for n in range(1, 60):
        assert p_no_triangle(n + 1) == p_no_triangle(n) / f[n]


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 1), (4, Fraction(1, 6)), (5, Fraction(1, 40)),
                                         (6, Fraction(1, 504))])
def test_p_no_quadrilateral(n, expected):
    assert p_no_quadrilateral(n) == expected


@pytest.mark.parametrize("n, expected", [(2, 1), (3, Fraction(1, 2)), (4, Fraction(1, 6)), (6, Fraction(1, 120))])
def test_p_cannot_ngon(n, expected):
    assert p_cannot_ngon(n) == expected


@pytest.mark.parametrize("fn, bad", [(p_no_triangle, 0), (p_no_quadrilateral, 0), (p_cannot_ngon, 1)])
def test_probability_domains(fn, bad):
    with pytest.raises(DomainError):
        fn(bad)


def test_single_constraint_coincidence():
    assert p_no_triangle(3) == p_cannot_ngon(3)
    assert p_no_quadrilateral(4) == p_cannot_ngon(4)


@given(st.integers(1, 120))
def test_ratios_are_normalized_probabilities(n):
    for p in (p_no_triangle(n), p_no_quadrilateral(n), p_cannot_ngon(max(n, 2))):
        assert p.denominator > 0
        assert math.gcd(p.numerator, p.denominator) == 1
        assert 0 < p <= 1
