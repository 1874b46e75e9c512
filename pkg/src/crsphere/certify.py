"""Semidefiniteness decisions for exact symmetric forms.

Exact rational arithmetic is authoritative: inertia comes from a symmetric
congruence (LDL^T with diagonal pivoting, plus 2x2 hyperbolic pivots when the
remaining diagonal is zero).  Floating point (cyclic Jacobi) is only used to
find directions and to report spectra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .forms import SymQForm
from .monomials import format_rational


class CertificationError(RuntimeError):
    pass


class JacobiConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Inertia:
    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def dim(self) -> int:
        return self.n_pos + self.n_neg + self.n_zero

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_pos, self.n_neg, self.n_zero)

    def to_json(self) -> dict:
        return {"pos": self.n_pos, "neg": self.n_neg, "zero": self.n_zero}


@dataclass
class Congruence:
    """Q = P^T L D L^T P, with P a permutation, L unit lower triangular and D block diagonal.

    ``perm[k]`` is the original index placed at position k.  ``blocks`` lists
    (start, size) of the D blocks (size 1, or 2 for hyperbolic pivots).
    """

    perm: list[int]
    L: list[list[Fraction]]
    D: list[list[Fraction]]
    blocks: list[tuple[int, int]]


def _as_rows(Q) -> list[list[Fraction]]:
    if isinstance(Q, SymQForm):
        return Q.rows()
    return [[Fraction(x) for x in row] for row in Q]


def _check_symmetric(A: list[list[Fraction]]) -> None:
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j] != A[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")


def ldlt(Q) -> Congruence:
    """Exact symmetric congruence with deterministic pivoting.

    Pivot rule: the largest |diagonal| in the active block (ties -> lowest index).
    If every active diagonal is zero but some off-diagonal is not, the first such
    pair (row-major) forms a 2x2 pivot [[0, b], [b, 0]].
    """
    A = _as_rows(Q)
    _check_symmetric(A)
    n = len(A)
    perm = list(range(n))
    S = [row[:] for row in A]  # active matrix, permuted in place
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [[Fraction(0)] * n for _ in range(n)]
    blocks: list[tuple[int, int]] = []

    def swap(i: int, j: int) -> None:
        if i == j:
            return
        perm[i], perm[j] = perm[j], perm[i]
        S[i], S[j] = S[j], S[i]
        for row in S:
            row[i], row[j] = row[j], row[i]
        for c in range(min(i, j)):
            L[i][c], L[j][c] = L[j][c], L[i][c]

    k = 0
    while k < n:
        best, piv = Fraction(0), -1
        for i in range(k, n):
            d = abs(S[i][i])
            if d > best:
                best, piv = d, i
        if piv >= 0:
            swap(k, piv)
            d = S[k][k]
            D[k][k] = d
            blocks.append((k, 1))
            col = [S[i][k] for i in range(n)]
            for i in range(k + 1, n):
                if not col[i]:
                    continue
                f = col[i] / d
                L[i][k] = f
                Si = S[i]
                for j in range(k + 1, i + 1):
                    if col[j]:
                        Si[j] -= f * col[j]
                        S[j][i] = Si[j]
            k += 1
            continue
        # every active diagonal entry is zero
        pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if S[i][j]), None)
        if pair is None:
            for i in range(k, n):
                blocks.append((i, 1))
            break
        i, j = pair
        swap(k, i)
        swap(k + 1, j)
        b = S[k][k + 1]
        D[k][k + 1] = D[k + 1][k] = b
        blocks.append((k, 2))
        # inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]]
        for r in range(k + 2, n):
            x, y = S[r][k], S[r][k + 1]
            L[r][k] = y / b
            L[r][k + 1] = x / b
        for r in range(k + 2, n):
            for c in range(k + 2, r + 1):
                # subtract [x_r, y_r] E^{-1} [x_c, y_c]^T = (x_r y_c + y_r x_c)/b
                delta = (S[r][k] * S[c][k + 1] + S[r][k + 1] * S[c][k]) / b
                if delta:
                    S[r][c] -= delta
                    if r != c:
                        S[c][r] = S[r][c]
        k += 2
    return Congruence(perm, L, D, blocks)


def congruence_inertia(c: Congruence) -> Inertia:
    pos = neg = zero = 0
    for start, size in c.blocks:
        if size == 2:
            pos += 1
            neg += 1
        else:
            d = c.D[start][start]
            if d > 0:
                pos += 1
            elif d < 0:
                neg += 1
            else:
                zero += 1
    return Inertia(pos, neg, zero)


def inertia(Q) -> Inertia:
    """Exact (n_pos, n_neg, n_zero) of a symmetric rational matrix."""
    return congruence_inertia(ldlt(Q))


def reconstruct(c: Congruence) -> list[list[Fraction]]:
    """P^T L D L^T P, rebuilt by plain matrix products (for independent verification)."""
    n = len(c.perm)
    L, D = c.L, c.D
    LD = [[sum((L[i][k] * D[k][j] for k in range(n) if L[i][k] and D[k][j]), Fraction(0)) for j in range(n)]
          for i in range(n)]
    M = [[sum((LD[i][k] * L[j][k] for k in range(n) if LD[i][k] and L[j][k]), Fraction(0)) for j in range(n)]
         for i in range(n)]
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[c.perm[i]][c.perm[j]] = M[i][j]
    return out


# ---- floating-point spectrum ---------------------------------------------

_EPS = np.finfo(float).eps


def jacobi_spectrum(Q, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigen-decomposition of a real symmetric matrix.

    Sweeps until the off-diagonal Frobenius norm drops below ``tol * ||Q||_F``.
    Returns eigenvalues sorted descending and the matching orthonormal
    eigenvectors as columns.
    """
    A = Q.to_float() if isinstance(Q, SymQForm) else np.array(Q, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix is not square")
    if not np.allclose(A, A.T, rtol=0, atol=0):
        raise ValueError("matrix is not symmetric")
    A = A.copy()
    n = A.shape[0]
    V = np.eye(n)
    norm = np.linalg.norm(A)
    if n < 2 or norm == 0:
        return _sorted_eig(np.diag(A).copy(), V)
    threshold = tol * norm

    def off(M):
        return np.linalg.norm(M - np.diag(np.diag(M)))

    for _ in range(max_sweeps):
        if off(A) < threshold:
            return _sorted_eig(np.diag(A).copy(), V)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                # negligible next to both diagonal entries: drop it instead of rotating
                if 100.0 * abs(apq) < _EPS * min(abs(A[p, p]), abs(A[q, q])):
                    A[p, q] = A[q, p] = 0.0
                    continue
                h = A[q, q] - A[p, p]
                if abs(h) * _EPS >= abs(apq) * 2.0:
                    t = apq / h  # theta is huge, t ~ 1/(2 theta)
                else:
                    theta = h / (2.0 * apq)
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # A <- R^T A R with the rotation acting on columns/rows p, q
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap = A[p, :].copy()
                aq = A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    if off(A) < threshold:
        return _sorted_eig(np.diag(A).copy(), V)
    raise JacobiConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def _sorted_eig(w: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


# ---- exact nullspace -----------------------------------------------------


def kernel_basis(Q) -> list[list[Fraction]]:
    """Exact basis of {v : Q v = 0} from the reduced row echelon form."""
    A = _as_rows(Q)
    n = len(A)
    m = len(A[0]) if A else 0
    R = [row[:] for row in A]
    pivots: list[int] = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(n):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * m
        v[fcol] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -R[row][fcol]
        basis.append(v)
    return basis


def matvec(Q, v: Sequence) -> list[Fraction]:
    A = _as_rows(Q)
    return [sum((a * Fraction(x) for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


def quadratic_value(Q, v: Sequence) -> Fraction:
    v = [Fraction(x) for x in v]
    return sum((x * y for x, y in zip(v, matvec(Q, v)) if x), Fraction(0))


# ---- certificates --------------------------------------------------------


@dataclass
class Certificate:
    kind: str                        # "stable" or "unstable"
    inertia: Inertia
    witness: list[int] | None = None
    value: Fraction | None = None
    scale: int | None = None
    congruence: Congruence | None = None
    kernel: list[list[Fraction]] = field(default_factory=list)

    def verify(self, Q) -> bool:
        """Re-check from scratch with products only (no elimination state reused)."""
        A = _as_rows(Q)
        if self.kind == "unstable":
            return self.witness is not None and quadratic_value(A, self.witness) == self.value and self.value < 0
        c = self.congruence
        if c is None:
            return False
        if any(size != 1 or c.D[s][s] < 0 for s, size in c.blocks):
            return False
        if reconstruct(c) != A:
            return False
        if len(self.kernel) != self.inertia.n_zero:
            return False
        return all(all(x == 0 for x in matvec(A, v)) for v in self.kernel)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "inertia": self.inertia.to_json()}
        if self.kind == "unstable":
            out["witness"] = {"vector": self.witness, "value": format_rational(self.value), "scale": self.scale}
        else:
            out["diagonal"] = [format_rational(self.congruence.D[s][s]) for s, _ in self.congruence.blocks]
            out["pivot_order"] = self.congruence.perm
            out["kernel_dim"] = len(self.kernel)
        return out


def _round_search(A, direction: np.ndarray, scales: Sequence[int]) -> tuple[list[int], Fraction, int] | None:
    for k in scales:
        v = [int(x) for x in np.rint(k * direction)]
        if not any(v):
            continue
        val = quadratic_value(A, v)
        if val < 0:
            return v, val, k
        # +-1 lattice neighbourhood, greedy coordinate descent
        best, best_v = val, v
        improved = True
        steps = 0
        while improved and steps < 4 * len(v):
            improved = False
            steps += 1
            for i in range(len(v)):
                for d in (1, -1):
                    w = best_v[:]
                    w[i] += d
                    if abs(w[i] - v[i]) > 1 or not any(w):
                        continue
                    wv = quadratic_value(A, w)
                    if wv < best:
                        best, best_v, improved = wv, w, True
            if best < 0:
                return best_v, best, k
    return None


def instability_certificate(Q, scale: int = 10, max_scale: int = 20) -> Certificate:
    """Exact verdict plus a re-checkable witness.

    Negative inertia: round ``k`` times the most negative Jacobi eigenvector to
    integers (trying ``k = scale`` first, then 1..max_scale) until the exact
    quadratic value is negative.  Otherwise return the stable congruence record
    and an exact kernel basis.
    """
    A = _as_rows(Q)
    cong = ldlt(A)
    ine = congruence_inertia(cong)
    if ine.n_neg == 0:
        return Certificate("stable", ine, congruence=cong, kernel=kernel_basis(A))
    w, V = jacobi_spectrum(A)
    order = [scale] + [k for k in range(1, max_scale + 1) if k != scale]
    for col in range(V.shape[1] - 1, V.shape[1] - 1 - ine.n_neg, -1):
        found = _round_search(A, V[:, col], order)
        if found:
            v, val, k = found
            return Certificate("unstable", ine, witness=v, value=val, scale=k)
    raise CertificationError(
        f"negative inertia {ine.as_tuple()} but no integer witness up to scale {max_scale}; raise max_scale"
    )
