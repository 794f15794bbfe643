"""Exact q-analog combinatorics: Gaussian binomials and friends.

All functions return Python ints (arbitrary precision) or Fractions;
nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n, exactly.

    Evaluates (q^n-1)(q^n-q)...(q^n-q^(k-1)) / (q^k-1)(q^k-q)...(q^k-q^(k-1)).
    Returns 0 for k > n or k < 0 (documented convention).
    """
    if k < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    num = prod(q**n - q**i for i in range(k))
    den = prod(q**k - q**i for i in range(k))
    assert num % den == 0
    return num // den


def q_int(t: int, q: int) -> int:
    """[t]_q = 1 + q + ... + q^(t-1), the number of lines in F_q^t."""
    if t <= 0:
        return 0
    return (q**t - 1) // (q - 1)


def q_factorial(k: int, q: int) -> int:
    """[k]_q! = [1]_q [2]_q ... [k]_q."""
    return prod(q_int(j, q) for j in range(1, k + 1))


def mts_count(n: int, q: int) -> int:
    """Number of maximal totally singular n-spaces in a hyperbolic 2n-space:
    the product (1+q^0)(1+q^1)...(1+q^(n-1))."""
    return prod(1 + q**i for i in range(n))


def independent_tuple_count(n: int, k: int, q: int) -> int:
    """Ordered k-tuples of independent lines in F_q^n:
    (q^n-1)(q^n-q)...(q^n-q^(k-1)) / (q-1)^k."""
    num = prod(q**n - q**i for i in range(k))
    den = (q - 1) ** k
    assert num % den == 0
    return num // den


def cone_bound_closed_form(k: int, q: int) -> Fraction:
    """Closed-form cone size bound [k+1]_q ([k]_q!^2 (1 + sum_j 1/[j]_q!^2))."""
    s = 1 + sum(Fraction(1, q_factorial(j, q) ** 2) for j in range(1, k + 1))
    return q_int(k + 1, q) * q_factorial(k, q) ** 2 * s


def theta_threshold(k: int, q: int) -> Fraction:
    """Coboundary-deficiency threshold 1 - 1/([k]_q!^2 (1 + sum_j 1/[j]_q!^2))."""
    s = 1 + sum(Fraction(1, q_factorial(j, q) ** 2) for j in range(1, k + 1))
    return 1 - 1 / (q_factorial(k, q) ** 2 * s)
