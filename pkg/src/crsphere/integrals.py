"""Exact sphere integrals of monomials, normalized by the total area of the sphere.

All values returned here are in units of |S^m|, so the constant function 1
integrates to 1.  Multiply by ``m + 1`` to express a value in units of
``int phi_i^2 dM`` (the unit used by the hand computations for S^2).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .monomials import MultiIndex, Polynomial


def phi2_unit(m: int = 2) -> Fraction:
    """``int phi_i^2 dM / |S^m|``."""
    return Fraction(1, m + 1)


@lru_cache(maxsize=None)
def _integrate_sorted(m: int, a: MultiIndex) -> Fraction:
    # a is sorted descending and all even; the recursion keeps it that way up to re-sorting
    l = sum(a)
    if l == 0:
        return Fraction(1)
    total = Fraction(0)
    for i, ai in enumerate(a):
        if ai >= 2:
            b = list(a)
            b[i] -= 2
            total += ai * (ai - 1) * _integrate_sorted(m, tuple(sorted(b, reverse=True)))
    return total / (l * (l + m - 1))


def integrate_monomial(a: MultiIndex, m: int = 2) -> Fraction:
    """Exact ``int_{S^m} phi^a dM / |S^m|`` via the Laplacian recursion.

    The value vanishes as soon as one exponent is odd.
    """
    a = tuple(int(x) for x in a)
    if len(a) != m + 1:
        raise ValueError(f"exponent vector of length {len(a)} does not live on S^{m}")
    if min(a) < 0:
        raise ValueError(f"negative exponent in {a!r}")
    if any(x % 2 for x in a):
        return Fraction(0)
    return _integrate_sorted(m, tuple(sorted(a, reverse=True)))


def integrate_poly(P: Polynomial, m: int = 2) -> Fraction:
    """Linear extension of :func:`integrate_monomial`; mixed degrees are fine."""
    total = Fraction(0)
    for a, c in P.items():
        v = integrate_monomial(a, m)
        if v:
            total += c * v
    return total


def _double_factorial(k: int) -> int:
    # (-1)!! = 0!! = 1
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def factorial_oracle(a: MultiIndex) -> Fraction:
    """Closed form on S^2: prod (a_i - 1)!! / (|a| + 1)!! for all-even ``a``, else 0."""
    if len(a) != 3:
        raise ValueError("factorial_oracle is specific to S^2")
    if any(x % 2 for x in a):
        return Fraction(0)
    num = 1
    for x in a:
        num *= _double_factorial(x - 1)
    return Fraction(num, _double_factorial(sum(a) + 1))


def cache_info():
    return _integrate_sorted.cache_info()
