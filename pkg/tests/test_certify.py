import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crsphere.certify import (
    CertificationError,
    Certificate,
    Inertia,
    inertia,
    instability_certificate,
    jacobi_spectrum,
    kernel_basis,
    ldlt,
    quadratic_value,
    reconstruct,
)
from crsphere.forms import REFERENCE_WITNESS, f_hessian, f_hessian_form, long_form, short_form

REFERENCE_EIGENVALUES = [
    193.95260118883090, 123.94135950568288, 111.22289635621148, 64.826325872315152,
    39.493408799262383, 34.522364101735334, 26.731868670430774, 15.181112147219768,
    5.8125282188336085, -3.6844648605223074,
]


def _sym(n, rng, lo=-3, hi=3, rank=None):
    if rank is None:
        A = [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        return [[A[i][j] + A[j][i] for j in range(n)] for i in range(n)]
    B = [[Fraction(rng.randint(lo, hi)) for _ in range(rank)] for _ in range(n)]
    s = [rng.choice((-1, 1)) for _ in range(rank)]
    return [[sum(B[i][k] * s[k] * B[j][k] for k in range(rank)) for j in range(n)] for i in range(n)]


def _numpy_inertia(A, rel=1e-9):
    w = np.linalg.eigvalsh(np.array(A, dtype=float))
    tol = rel * max(1.0, np.abs(w).max())
    return (int((w > tol).sum()), int((w < -tol).sum()), int((abs(w) <= tol).sum()))


def test_inertia_small_cases():
    assert inertia([[0, 0], [0, 0]]).as_tuple() == (0, 0, 2)
    assert inertia([[0, 1], [1, 0]]).as_tuple() == (1, 1, 0)
    assert inertia([[1, 2], [2, 1]]).as_tuple() == (1, 1, 0)
    assert inertia([[2, 1], [1, 2]]).as_tuple() == (2, 0, 0)
    assert inertia([[0, 1, 0], [1, 0, 0], [0, 0, 0]]).as_tuple() == (1, 1, 1)


def test_inertia_rejects_bad_input():
    with pytest.raises(ValueError):
        inertia([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        inertia([[1, 2, 3], [2, 1, 0]])


@pytest.mark.parametrize("seed", range(12))
def test_ldlt_reconstructs(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    A = _sym(n, rng, rank=rng.randint(0, n) if seed % 2 else None)
    c = ldlt(A)
    assert reconstruct(c) == A
    assert inertia(A).as_tuple() == _numpy_inertia(A)


def test_ldlt_hyperbolic_pivots():
    A = [[0, 1, 2, 0], [1, 0, 0, 3], [2, 0, 0, 1], [0, 3, 1, 0]]
    A = [[Fraction(x) for x in r] for r in A]
    c = ldlt(A)
    assert any(size == 2 for _, size in c.blocks)
    assert reconstruct(c) == A
    assert inertia(A).as_tuple() == _numpy_inertia(A)


@pytest.mark.parametrize("seed", range(5))
def test_congruence_invariance(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(3, 12)
    A = _sym(n, rng, rank=rng.randint(1, n))
    want = inertia(A)
    for _ in range(20):
        # random invertible D: unit upper triangular times a permutation, times positive diagonal
        U = [[Fraction(int(i == j)) if i >= j else Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for j in range(n)]
             for i in range(n)]
        U = [[U[j][i] for j in range(n)] for i in range(n)]
        p = list(range(n))
        rng.shuffle(p)
        D = [[U[p[i]][j] * rng.randint(1, 3) for j in range(n)] for i in range(n)]
        DT = [[D[j][i] for j in range(n)] for i in range(n)]
        M = [[sum(DT[i][k] * A[k][l] * D[l][j] for k in range(n) for l in range(n) if DT[i][k] and D[l][j])
              for j in range(n)] for i in range(n)]
        assert inertia(M) == want


@settings(max_examples=40)
@given(st.integers(1, 8).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_inertia_matches_numpy(rows):
    n = len(rows)
    A = [[Fraction(rows[i][j] + rows[j][i]) for j in range(n)] for i in range(n)]
    assert inertia(A).as_tuple() == _numpy_inertia(A)
    assert len(kernel_basis(A)) == inertia(A).n_zero


def test_jacobi_matches_reference_spectrum():
    w, V = jacobi_spectrum(f_hessian_form())
    np.testing.assert_allclose(w, REFERENCE_EIGENVALUES, rtol=1e-6)
    assert inertia(f_hessian()).as_tuple() == (9, 1, 0)


@pytest.mark.parametrize("seed", range(6))
def test_jacobi_trace_and_orthogonality(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 30))
    M = rng.normal(size=(n, n))
    M = M + M.T
    w, V = jacobi_spectrum(M)
    assert abs(w.sum() - np.trace(M)) <= 1e-10 * max(1.0, abs(np.trace(M)))
    np.testing.assert_allclose(V.T @ V, np.eye(n), atol=1e-10)
    np.testing.assert_allclose(V @ np.diag(w) @ V.T, M, atol=1e-10)
    assert list(w) == sorted(w, reverse=True)


def test_jacobi_rejects_bad_input():
    with pytest.raises(ValueError):
        jacobi_spectrum([[1.0, 2.0], [0.0, 1.0]])


@pytest.mark.parametrize("l", range(0, 5))
def test_jacobi_sign_pattern_matches_exact(l):
    for Q in [long_form(l)] + [short_form(i, l) for i in (1, 2, 3)]:
        w, _ = jacobi_spectrum(Q)
        tol = 1e-8 * np.linalg.norm(Q.to_float())
        got = (int((w > tol).sum()), int((w < -tol).sum()), int((abs(w) <= tol).sum()))
        assert got == inertia(Q).as_tuple()


def test_kernel_examples():
    assert len(kernel_basis(long_form(0))) == 4
    assert len(kernel_basis(long_form(1))) == 8
    ker = kernel_basis(short_form(1, 1))
    assert len(ker) == 2
    Q = short_form(1, 1)
    for v in ([0, 1, 0, 0, 0, 1], [0, 0, 1, 0, -1, 0]):
        assert all(x == 0 for x in Q.matvec(v))


def test_hessian_witness():
    cert = instability_certificate(f_hessian_form())
    assert cert.kind == "unstable" and cert.scale == 10
    assert cert.verify(f_hessian_form())
    assert quadratic_value(f_hessian(), cert.witness) == cert.value < 0
    assert quadratic_value(f_hessian(), REFERENCE_WITNESS) == -276


@pytest.mark.parametrize("seed", range(8))
def test_certificate_soundness(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 10)
    A = _sym(n, rng, rank=rng.randint(1, n))
    cert = instability_certificate(A)
    assert cert.verify(A)
    if cert.kind == "unstable":
        # recompute from scratch without the certificate's own helpers
        v = cert.witness
        assert sum(v[i] * A[i][j] * v[j] for i in range(n) for j in range(n)) < 0
    else:
        assert inertia(A).n_neg == 0


def test_tampered_certificates_fail():
    A = [[Fraction(x) for x in r] for r in ((1, 2), (2, 1))]
    cert = instability_certificate(A)
    assert cert.kind == "unstable"
    bad = Certificate("unstable", cert.inertia, witness=[1, 1], value=cert.value)
    assert not bad.verify(A)
    P = [[Fraction(x) for x in r] for r in ((2, 1), (1, 2))]
    good = instability_certificate(P)
    assert good.kind == "stable" and good.verify(P)
    assert not good.verify(A)


def test_certificate_failure_is_reported():
    # a negative direction so thin no small integer vector reaches it
    s = Fraction(14143, 10000)  # s^2 barely exceeds 2
    A = [[Fraction(1), s], [s, Fraction(2)]]
    assert inertia(A).n_neg == 1
    with pytest.raises(CertificationError):
        instability_certificate(A, max_scale=2)


def test_inertia_json():
    assert Inertia(1, 2, 3).to_json() == {"pos": 1, "neg": 2, "zero": 3}
    assert Inertia(1, 2, 3).dim == 6
