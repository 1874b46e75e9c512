"""Spectral data on spheres and the two monomial pairings on S^2.

* ``dirichlet_pair(a, b)``  = int <grad phi^a, grad phi^b> dM / |S^2|
* ``cr_pair(i, a, b)``      = int phi_i <J grad phi^a, grad phi^b> dM / |S^2|

Both have a closed monomial formula (the production path) and an independent
route through explicit polynomial integrands (the oracle path).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .integrals import integrate_monomial, integrate_poly
from .monomials import (
    MultiIndex,
    Polynomial,
    grad0,
    lap0,
    offset,
    phi,
    r_squared,
    triple_det,
)


@dataclass(frozen=True)
class SpectralData:
    l: int
    m: int
    r: Fraction
    lam: Fraction
    multiplicity: int


def spectral(l: int, m: int = 2, r: Fraction | int = 1) -> SpectralData:
    """Eigenvalue l(l+m-1)/r^2 of the sphere of radius r and its multiplicity."""
    if l < 0 or m < 2:
        raise ValueError("need l >= 0 and m >= 2")
    r = Fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    mult = comb(m + l, m) - (comb(m + l - 2, m) if l >= 2 else 0)
    return SpectralData(l, m, r, Fraction(l * (l + m - 1)) / r**2, mult)


def _check_same_degree(a: MultiIndex, b: MultiIndex) -> int:
    l = sum(a)
    if sum(b) != l:
        raise ValueError(f"degree mismatch: |{a}| = {l} but |{b}| = {sum(b)}")
    return l


def _int_shifted(s: MultiIndex, delta) -> Fraction:
    t = offset(s, delta)
    return Fraction(0) if t is None else integrate_monomial(t)


_TWO_E = [(-2, 0, 0), (0, -2, 0), (0, 0, -2)]


def dirichlet_pair_pointwise(a: MultiIndex, b: MultiIndex) -> Fraction:
    """-l^2 int phi^{a+b} + sum_i a_i b_i int phi^{a+b-2e_i}."""
    l = _check_same_degree(a, b)
    s = tuple(x + y for x, y in zip(a, b))
    total = -l * l * integrate_monomial(s)
    for i in range(3):
        if a[i] and b[i]:
            total += a[i] * b[i] * _int_shifted(s, _TWO_E[i])
    return total


def dirichlet_pair_reduced(a: MultiIndex, b: MultiIndex) -> Fraction:
    """sum_i [l((a_i+b_i) - (a_i-b_i)^2) + 2 a_i b_i] / (2(2l+1)) int phi^{a+b-2e_i}."""
    l = _check_same_degree(a, b)
    if l == 0:
        return Fraction(0)
    s = tuple(x + y for x, y in zip(a, b))
    total = Fraction(0)
    for i in range(3):
        w = l * ((a[i] + b[i]) - (a[i] - b[i]) ** 2) + 2 * a[i] * b[i]
        if w:
            total += w * _int_shifted(s, _TWO_E[i])
    return total / (2 * (2 * l + 1))


def dirichlet_pair(a: MultiIndex, b: MultiIndex) -> Fraction:
    """Exact int <grad phi^a, grad phi^b> dM / |S^2| for |a| = |b|."""
    return dirichlet_pair_reduced(a, b)


# (coefficient pair, shift) for the three terms of each axis; the coefficient
# of a term is a_p b_q - a_q b_p for the listed (p, q)
_CR_TERMS = {
    1: [((0, 1), (0, -1, 1)), ((2, 0), (0, 1, -1)), ((1, 2), (2, -1, -1))],
    2: [((1, 2), (1, 0, -1)), ((0, 1), (-1, 0, 1)), ((2, 0), (-1, 2, -1))],
    3: [((2, 0), (-1, 1, 0)), ((1, 2), (1, -1, 0)), ((0, 1), (-1, -1, 2))],
}


def cr_pair(i: int, a: MultiIndex, b: MultiIndex) -> Fraction:
    """Exact int phi_i <J grad phi^a, grad phi^b> dM / |S^2| by the three-term formula."""
    if i not in _CR_TERMS:
        raise ValueError(f"axis must be 1, 2 or 3, got {i}")
    s = tuple(x + y for x, y in zip(a, b))
    total = Fraction(0)
    for (p, q), delta in _CR_TERMS[i]:
        c = a[p] * b[q] - a[q] * b[p]
        if c:
            total += c * _int_shifted(s, delta)
    return total


def cr_pair_oracle(i: int, a: MultiIndex, b: MultiIndex) -> Fraction:
    """Same quantity, integrating phi_i * triple_det(phi^a, phi^b) term by term."""
    return integrate_poly(phi(i) * triple_det(Polynomial.monomial(a), Polynomial.monomial(b)))


def dirichlet_integrand(f: Polynomial, h: Polynomial) -> Polynomial:
    """Polynomial equal to <grad f, grad h> on S^2 (tangential part of the ambient gradients)."""
    gf, gh = grad0(f), grad0(h)
    x = [phi(1), phi(2), phi(3)]
    radial_f = sum((xi * g for xi, g in zip(x, gf)), Polynomial())
    radial_h = sum((xi * g for xi, g in zip(x, gh)), Polynomial())
    dot = sum((p * q for p, q in zip(gf, gh)), Polynomial())
    return dot - radial_f * radial_h


def dirichlet_energy(f: Polynomial, h: Polynomial | None = None) -> Fraction:
    """int <grad f, grad h> dM / |S^2| for arbitrary polynomials (h defaults to f)."""
    return integrate_poly(dirichlet_integrand(f, f if h is None else h))


def cr_functional(i: int, f: Polynomial, h: Polynomial) -> Fraction:
    """int phi_i <J grad f, grad h> dM / |S^2| for arbitrary polynomials."""
    return integrate_poly(phi(i) * triple_det(f, h))


@dataclass(frozen=True)
class HarmonicDecomposition:
    components: tuple[tuple[int, Polynomial], ...]

    def degrees(self) -> list[int]:
        return [d for d, _ in self.components]

    def restricted_sum(self) -> Polynomial:
        """Sum of the components; equals the input on the unit sphere."""
        return sum((H for _, H in self.components), Polynomial())

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


def _harmonic_part(P: Polynomial, l: int) -> tuple[Polynomial, Polynomial]:
    """Split homogeneous P of degree l as H + r^2 Q with H harmonic.

    Uses H = sum_j c_j r^{2j} lap^j P with c_0 = 1, c_j = -c_{j-1} / (2j(2l-2j+1)).
    Returns (H, Q).
    """
    r2 = r_squared()
    H = P
    Q = Polynomial()
    c = Fraction(1)
    lapP = P
    r_pow = Polynomial.constant(1)  # r^{2(j-1)}
    j = 1
    while 2 * j <= l:
        lapP = lap0(lapP)
        if lapP.is_zero():
            break
        c = -c / (2 * j * (2 * l - 2 * j + 1))
        term = r_pow * lapP * c
        Q = Q - term
        H = H + r2 * term
        r_pow = r_pow * r2
        j += 1
    return H, Q


def harmonic_decompose(P: Polynomial) -> HarmonicDecomposition:
    """Harmonic components (degree, H_k) with P = sum_k r^{l-k} H_k on R^3.

    Components are listed by decreasing degree, zero components omitted.  A
    non-homogeneous input is decomposed piece by piece and same-degree
    components are merged.
    """
    merged: dict[int, Polynomial] = {}
    for l, part in P.homogeneous_parts().items():
        cur, d = part, l
        while not cur.is_zero():
            H, Q = _harmonic_part(cur, d)
            if not H.is_zero():
                merged[d] = merged.get(d, Polynomial()) + H
            cur, d = Q, d - 2
    comps = tuple((d, H) for d, H in sorted(merged.items(), reverse=True) if not H.is_zero())
    return HarmonicDecomposition(comps)


def sphere_laplacian(P: Polynomial, m: int = 2) -> Polynomial:
    """A polynomial representative of the Laplace-Beltrami operator applied to P on S^m.

    Per homogeneous degree-l piece: lap0(P_l) - l(l+m-1) P_l.  Non-positive convention,
    so a degree-l harmonic H maps to -l(l+1) H on S^2.
    """
    out = Polynomial(n=P.nvars)
    for l, part in P.homogeneous_parts().items():
        out = out + lap0(part) - part * (l * (l + m - 1))
    return out
