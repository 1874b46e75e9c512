from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import multi_indices
from crsphere.integrals import factorial_oracle, integrate_monomial, integrate_poly, phi2_unit
from crsphere.monomials import Polynomial, monomials_of_degree, phi, r_squared, unit

x1, x2, x3 = phi(1), phi(2), phi(3)


@pytest.mark.parametrize(
    "a, expected",
    [
        ((2, 0, 0), Fraction(1, 3)),
        ((2, 2, 0), Fraction(1, 15)),
        ((4, 0, 0), Fraction(1, 5)),
        ((6, 0, 0), Fraction(1, 7)),
        ((4, 2, 0), Fraction(1, 35)),
        ((2, 2, 2), Fraction(1, 105)),
        ((0, 0, 0), Fraction(1)),
        ((1, 2, 2), Fraction(0)),
    ],
)
def test_tabulated_values(a, expected):
    assert integrate_monomial(a) == expected


def test_polynomial_examples():
    assert integrate_poly(r_squared()) == 1
    assert integrate_poly(3 * x3**3) == 0
    assert integrate_poly(x1**2 * x2**2 - x1**4) == Fraction(-2, 15)


def test_phi2_unit():
    assert phi2_unit(2) == Fraction(1, 3)
    assert integrate_monomial((2, 0, 0)) == phi2_unit(2)
    # S^3 in R^4
    assert integrate_monomial((2, 0, 0, 0), m=3) == phi2_unit(3) == Fraction(1, 4)


def test_bad_input():
    with pytest.raises(ValueError):
        integrate_monomial((1, 0))
    with pytest.raises(ValueError):
        integrate_monomial((-1, 0, 0))


@pytest.mark.parametrize("d", range(0, 17, 2))
def test_factorial_oracle(d):
    for a in monomials_of_degree(d):
        if all(x % 2 == 0 for x in a):
            assert integrate_monomial(a) == factorial_oracle(a)


@given(multi_indices(8), st.permutations(range(3)))
def test_permutation_symmetry(a, perm):
    assert integrate_monomial(a) == integrate_monomial(tuple(a[i] for i in perm))


@given(multi_indices(8))
def test_odd_vanishes_even_positive(a):
    v = integrate_monomial(a)
    if any(x % 2 for x in a):
        assert v == 0
    else:
        assert v > 0


@given(multi_indices(8))
def test_multiplying_by_r2(a):
    total = sum(integrate_monomial(tuple(x + 2 * e for x, e in zip(a, unit(i)))) for i in (1, 2, 3))
    assert total == integrate_monomial(a)


@given(st.integers(2, 4), st.data())
def test_higher_spheres_r2(m, data):
    a = tuple(data.draw(st.integers(0, 3)) * 2 for _ in range(m + 1))
    total = sum(
        integrate_monomial(tuple(x + 2 * (j == i) for j, x in enumerate(a)), m) for i in range(m + 1)
    )
    assert total == integrate_monomial(a, m)


def test_linearity():
    p = Polynomial({(2, 0, 0): 3, (0, 2, 2): Fraction(-1, 2), (1, 1, 0): 7})
    assert integrate_poly(p) == 3 * Fraction(1, 3) - Fraction(1, 2) * Fraction(1, 15)
