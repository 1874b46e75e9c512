"""Exact stability forms for Cauchy-Riemann type inequalities on the 2-sphere."""

__version__ = "0.1.0"

from .certify import Certificate, Inertia, inertia, instability_certificate, jacobi_spectrum, ldlt
from .forms import SymQForm, block_decompose, long_form, rayleigh_bound, short_form
from .integrals import integrate_monomial, integrate_poly
from .monomials import Polynomial, monomials_of_degree
from .pairings import cr_pair, dirichlet_pair, harmonic_decompose

__all__ = [
    "__version__",
    "Certificate", "Inertia", "inertia", "instability_certificate", "jacobi_spectrum", "ldlt",
    "SymQForm", "block_decompose", "long_form", "rayleigh_bound", "short_form",
    "integrate_monomial", "integrate_poly",
    "Polynomial", "monomials_of_degree",
    "cr_pair", "dirichlet_pair", "harmonic_decompose",
]
