# Sphere moments and the two pairings, computed exactly and checked by quadrature.
import math

import numpy as np

from crsphere.integrals import factorial_oracle, integrate_monomial
from crsphere.monomials import Polynomial, monomials_of_degree, phi, triple_det
from crsphere.pairings import cr_pair, dirichlet_pair, harmonic_decompose
from crsphere.quadrature import quad_integrate

# integrals are in units of the total area, so the constant 1 integrates to 1
for a in [(2, 0, 0), (2, 2, 0), (4, 2, 0), (2, 2, 2), (1, 2, 2)]:
    print(a, integrate_monomial(a), factorial_oracle(a) if all(x % 2 == 0 for x in a) else "-")

# the same numbers by Gauss-Legendre x trapezoid, in absolute area
errs = [abs(quad_integrate(Polynomial.monomial(a)) - 4 * math.pi * float(integrate_monomial(a)))
        for d in range(13) for a in monomials_of_degree(d)]
print("worst quadrature error up to degree 12:", max(errs))

# Dirichlet pairing on degree 2: a 6x6 Gram matrix
ms = monomials_of_degree(2)
G = np.array([[float(dirichlet_pair(a, b)) for b in ms] for a in ms])
print(ms)
print(np.round(G, 4))

# det(x, grad f, grad h) turns the coordinate functions into each other
x1, x2, x3 = phi(1), phi(2), phi(3)
print(triple_det(x1, x2), "|", triple_det(x2, x3), "|", triple_det(x3, x1))
print("cr_pair(3, e1, e2) =", cr_pair(3, (1, 0, 0), (0, 1, 0)))

# peel x1^3 into harmonic pieces of degree 3 and 1
for d, H in harmonic_decompose(x1**3):
    print(d, H)
