"""Quadratic stability forms on spaces of degree-l monomial coefficients.

A 4-tuple (f4, f5, f6, f7) of degree-l combinations of monomials is encoded by
its coefficients A[alpha][a].  The long form is

    Q(A) = sum_alpha int |grad f_alpha|^2 - L(A)

where L collects the calibration-weighted twisted-gradient pairings.  The
inequality holds on the space iff Q is positive semidefinite.  Matrices are
exact (Fractions) and in units of |S^2|.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .monomials import (
    MultiIndex,
    Polynomial,
    format_rational,
    monomials_of_degree,
    parity,
    parse_rational,
)
from .pairings import cr_functional, cr_pair, dirichlet_energy, dirichlet_pair, spectral

# (alpha, beta, axis, sign): the long inequality pairs f_alpha with f_beta
# through phi_axis with this sign
CALIBRATION_TABLE: tuple[tuple[int, int, int, int], ...] = (
    (4, 5, 1, +1),
    (6, 7, 1, +1),
    (4, 6, 2, +1),
    (5, 7, 2, -1),
    (4, 7, 3, -1),
    (5, 6, 3, -1),
)

ALPHAS = (4, 5, 6, 7)

# parity of a+b that an axis can see (anything else integrates to zero)
AXIS_PARITY = {1: ("E", "O", "O"), 2: ("O", "E", "O"), 3: ("O", "O", "E")}

Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class SymQForm:
    """Symmetric rational matrix together with the labels of its rows/columns."""

    basis: tuple[Hashable, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.basis)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("matrix shape does not match basis")

    @classmethod
    def from_rows(cls, basis: Sequence[Hashable], rows: Sequence[Sequence], name: str = "") -> "SymQForm":
        return cls(tuple(basis), tuple(tuple(Fraction(x) for x in row) for row in rows), name)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def rows(self) -> Matrix:
        return [list(r) for r in self.matrix]

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(i + 1, n))

    def index(self, label: Hashable) -> int:
        return self.basis.index(label)

    def matvec(self, v: Sequence) -> list[Fraction]:
        return [sum((q * x for q, x in zip(row, v) if q and x), Fraction(0)) for row in self.matrix]

    def evaluate(self, v: Sequence) -> Fraction:
        """v^T Q v, exact."""
        if len(v) != self.dim:
            raise ValueError(f"vector of length {len(v)} for a form of dimension {self.dim}")
        v = [Fraction(x) for x in v]
        return sum((x * y for x, y in zip(v, self.matvec(v)) if x), Fraction(0))

    def submatrix(self, idx: Sequence[int], name: str = "") -> "SymQForm":
        return SymQForm(
            tuple(self.basis[i] for i in idx),
            tuple(tuple(self.matrix[i][j] for j in idx) for i in idx),
            name or self.name,
        )

    def scaled(self, c: Fraction | int) -> "SymQForm":
        c = Fraction(c)
        return SymQForm(self.basis, tuple(tuple(c * x for x in row) for row in self.matrix), self.name)

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.matrix], dtype=float)

    def nonzero_pattern(self) -> np.ndarray:
        return np.array([[bool(x) for x in row] for row in self.matrix])

    def to_json(self) -> dict:
        entries = [
            [i, j, format_rational(self.matrix[i][j])]
            for i in range(self.dim)
            for j in range(i, self.dim)
            if self.matrix[i][j]
        ]
        return {"name": self.name, "dim": self.dim, "basis": [_label_json(b) for b in self.basis], "entries": entries}

    @classmethod
    def from_json(cls, data: dict) -> "SymQForm":
        basis = tuple(_label_from_json(b) for b in data["basis"])
        n = len(basis)
        m = [[Fraction(0)] * n for _ in range(n)]
        for i, j, q in data["entries"]:
            m[i][j] = m[j][i] = parse_rational(q)
        return cls.from_rows(basis, m, data.get("name", ""))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label"] + [_label_str(b) for b in self.basis])
        for b, row in zip(self.basis, self.matrix):
            w.writerow([_label_str(b)] + [format_rational(x) for x in row])
        return buf.getvalue()


def _label_json(b):
    if isinstance(b, tuple) and len(b) == 2 and isinstance(b[1], tuple):
        return [b[0], list(b[1])]
    return b


def _label_from_json(b):
    if isinstance(b, list) and len(b) == 2 and isinstance(b[1], list):
        return (b[0], tuple(b[1]))
    return b


def _label_str(b) -> str:
    if isinstance(b, tuple) and len(b) == 2 and isinstance(b[1], tuple):
        return f"{b[0]}:{''.join(map(str, b[1]))}"
    return str(b)


def _zeros(n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(n)]


def _freeze(m: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(r) for r in m)


@lru_cache(maxsize=None)
def _gram_rows(l: int) -> tuple[tuple[Fraction, ...], ...]:
    ms = monomials_of_degree(l)
    n = len(ms)
    g = _zeros(n)
    for p in range(n):
        for q in range(p, n):
            g[p][q] = g[q][p] = dirichlet_pair(ms[p], ms[q])
    return _freeze(g)


@lru_cache(maxsize=None)
def _cr_rows(i: int, l: int) -> tuple[tuple[Fraction, ...], ...]:
    ms = monomials_of_degree(l)
    n = len(ms)
    t = _zeros(n)
    for p in range(n):
        for q in range(p + 1, n):
            v = cr_pair(i, ms[p], ms[q])
            t[p][q], t[q][p] = v, -v
    return _freeze(t)


def gram_matrix(l: int) -> SymQForm:
    """Dirichlet Gram matrix of the degree-l monomials."""
    if l < 0:
        raise ValueError("degree must be nonnegative")
    return SymQForm(tuple(monomials_of_degree(l)), _gram_rows(l), f"gram(l={l})")


def cr_tensor(i: int, l: int) -> tuple[tuple[MultiIndex, ...], tuple[tuple[Fraction, ...], ...]]:
    """Antisymmetric matrix T[a][b] = cr_pair(i, a, b) over the degree-l monomials."""
    if i not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {i}")
    if l < 0:
        raise ValueError("degree must be nonnegative")
    return tuple(monomials_of_degree(l)), _cr_rows(i, l)


def long_basis(l: int) -> tuple[tuple[int, MultiIndex], ...]:
    ms = monomials_of_degree(l)
    return tuple((alpha, a) for alpha in ALPHAS for a in ms)


@lru_cache(maxsize=None)
def long_form(l: int) -> SymQForm:
    """The long stability form on 4-tuples of degree-l monomial combinations."""
    if l < 0:
        raise ValueError("degree must be nonnegative")
    ms = monomials_of_degree(l)
    n = len(ms)
    G = _gram_rows(l)
    dim = 4 * n
    q = _zeros(dim)
    for k in range(4):
        for p in range(n):
            for r in range(n):
                q[k * n + p][k * n + r] = G[p][r]
    # L(A) = sum_ab 4 s T^i_ab A^alpha_a A^beta_b; symmetrize by halving onto both triangles
    for alpha, beta, axis, sign in CALIBRATION_TABLE:
        T = _cr_rows(axis, l)
        oa, ob = ALPHAS.index(alpha) * n, ALPHAS.index(beta) * n
        for p in range(n):
            for r in range(n):
                t = T[p][r]
                if t:
                    half = 2 * sign * t
                    q[oa + p][ob + r] -= half
                    q[ob + r][oa + p] -= half
    return SymQForm(long_basis(l), _freeze(q), f"long(l={l})")


@lru_cache(maxsize=None)
def short_form(i: int, l: int) -> SymQForm:
    """Form ||grad f||^2 + ||grad h||^2 - 4 int phi_i <J grad f, grad h> on pairs of degree-l combinations."""
    _, T = cr_tensor(i, l)
    ms = monomials_of_degree(l)
    n = len(ms)
    G = _gram_rows(l)
    q = _zeros(2 * n)
    for p in range(n):
        for r in range(n):
            q[p][r] = G[p][r]
            q[n + p][n + r] = G[p][r]
            t = T[p][r]
            if t:
                q[p][n + r] -= 2 * t
                q[n + r][p] -= 2 * t
    basis = tuple(("f", a) for a in ms) + tuple(("h", a) for a in ms)
    return SymQForm(basis, _freeze(q), f"short(i={i},l={l})")


def block_decompose(Q: SymQForm) -> list[list[int]]:
    """Connected components of the nonzero off-diagonal pattern, sorted by smallest index."""
    pattern = Q.nonzero_pattern()
    np.fill_diagonal(pattern, False)
    _, labels = connected_components(csr_matrix(pattern), directed=False)
    blocks: dict[int, list[int]] = {}
    for idx, lab in enumerate(labels):
        blocks.setdefault(int(lab), []).append(idx)
    return sorted(blocks.values(), key=lambda b: b[0])


# ---- coefficient vectors ---------------------------------------------------


@dataclass
class CoeffVector:
    """Coefficients A[alpha][a] of four degree-l monomial combinations."""

    l: int
    coeffs: dict[tuple[int, MultiIndex], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for (alpha, a), c in list(self.coeffs.items()):
            if alpha not in ALPHAS or sum(a) != self.l:
                raise ValueError(f"label {(alpha, a)!r} not in the degree-{self.l} space")
            self.coeffs[(alpha, tuple(a))] = Fraction(c)

    def to_vector(self) -> list[Fraction]:
        return [self.coeffs.get(lab, Fraction(0)) for lab in long_basis(self.l)]

    @classmethod
    def from_vector(cls, l: int, v: Sequence) -> "CoeffVector":
        basis = long_basis(l)
        if len(v) != len(basis):
            raise ValueError("length mismatch")
        return cls(l, {lab: Fraction(x) for lab, x in zip(basis, v) if x})

    def functions(self) -> tuple[Polynomial, ...]:
        out = []
        for alpha in ALPHAS:
            out.append(Polynomial({a: c for (al, a), c in self.coeffs.items() if al == alpha}))
        return tuple(out)


def embed_functions(fs: Sequence[Polynomial], l: int) -> CoeffVector:
    """Coefficient vector of (f4, f5, f6, f7), each homogeneous of degree l (or zero)."""
    if len(fs) != 4:
        raise ValueError("need exactly four functions f4..f7")
    coeffs = {}
    for alpha, f in zip(ALPHAS, fs):
        if f.is_zero():
            continue
        if not f.is_homogeneous() or f.degree() != l:
            raise ValueError(f"f{alpha} is not homogeneous of degree {l}: {f!r}")
        for a, c in f.items():
            coeffs[(alpha, a)] = c
    return CoeffVector(l, coeffs)


def long_functional(fs: Sequence[Polynomial]) -> Fraction:
    """Long form evaluated directly on arbitrary polynomial functions f4..f7.

    Independent of the monomial matrices: integrates the explicit integrands.
    """
    f = dict(zip(ALPHAS, fs))
    energy = sum((dirichlet_energy(g) for g in fs), Fraction(0))
    coupling = Fraction(0)
    for alpha, beta, axis, sign in CALIBRATION_TABLE:
        coupling += 4 * sign * cr_functional(axis, f[alpha], f[beta])
    return energy - coupling


def short_functional(i: int, f: Polynomial, h: Polynomial) -> Fraction:
    return dirichlet_energy(f) + dirichlet_energy(h) - 4 * cr_functional(i, f, h)


# ---- the ten-variable block at degree three ----------------------------------

F_VARIABLES = ("a", "b", "c", "x", "y", "z", "w", "u", "v", "g")

# which long-form coefficient each F variable stands for
F_VARIABLE_MAP: dict[str, tuple[int, MultiIndex]] = {
    "a": (4, (0, 0, 3)),
    "b": (5, (0, 3, 0)),
    "c": (6, (3, 0, 0)),
    "x": (4, (2, 0, 1)),
    "y": (4, (0, 2, 1)),
    "z": (5, (0, 1, 2)),
    "w": (5, (2, 1, 0)),
    "u": (6, (1, 2, 0)),
    "v": (6, (1, 0, 2)),
    "g": (7, (1, 1, 1)),
}

# the reference counterexample vector, in F_VARIABLES order
REFERENCE_WITNESS = (3, -4, -1, 3, 4, -4, -3, -1, -2, 1)


@lru_cache(maxsize=1)
def f_polynomial() -> Polynomial:
    """The ten-variable quadratic F[a, b, c, x, y, z, w, u, v, g], transcribed term by term."""
    a, b, c, x, y, z, w, u, v, g = (Polynomial.var(k, 10) for k in range(1, 11))
    F = (
        54 * (a * a + b * b + c * c)
        + 22 * (x * x + y * y + z * z + w * w + u * u + v * v)
        + 12 * g * g
        + 36 * a * b - 36 * a * c - 36 * b * c + 36 * y * b + 36 * a * z - 36 * x * c
        - 36 * w * c - 36 * b * u + 12 * x * b + 12 * x * w - 12 * y * c - 12 * a * u + 12 * x * v
        - 12 * y * u - 12 * z * c - 12 * b * v + 12 * w * u - 12 * c * u - 12 * c * v - 12 * b * w
        - 12 * b * z - 12 * a * x - 12 * a * y - 8 * g * (u - v + w - x + y - z)
        + 4 * y * w + 4 * x * z - 4 * x * u - 4 * y * v - 4 * z * u - 4 * w * v - 4 * x * y - 4 * w * z - 4 * u * v
    )
    return F


@lru_cache(maxsize=1)
def _f_hessian_rows() -> tuple[tuple[int, ...], ...]:
    F = f_polynomial()
    rows = []
    for i in range(1, 11):
        Fi = F.diff(i)
        rows.append(tuple(int(Fi.diff(j).coeff((0,) * 10)) for j in range(1, 11)))
    return tuple(rows)


def f_hessian() -> list[list[int]]:
    """Constant 10x10 integer Hessian of F."""
    return [list(r) for r in _f_hessian_rows()]


def f_hessian_form() -> SymQForm:
    return SymQForm.from_rows(F_VARIABLES, f_hessian(), "hess(F)")


def f_value(vec: Sequence) -> Fraction:
    return Fraction(f_polynomial()(*[Fraction(x) for x in vec]))


def f_block(Q: SymQForm | None = None) -> SymQForm:
    """The rows/columns of long_form(3) named by F's variables, in F's variable order."""
    Q = Q or long_form(3)
    idx = [Q.index(F_VARIABLE_MAP[name]) for name in F_VARIABLES]
    return Q.submatrix(idx, "long(l=3)|F")


def embed_f_vector(vec: Sequence) -> list[Fraction]:
    """Place a vector in F's variables into the 40-dimensional long_form(3) coordinates."""
    basis = long_basis(3)
    out = [Fraction(0)] * len(basis)
    for name, x in zip(F_VARIABLES, vec):
        out[basis.index(F_VARIABLE_MAP[name])] = Fraction(x)
    return out


def counterexample_functions() -> tuple[Polynomial, ...]:
    """The four cubic functions stated for the degree-three counterexample."""
    x1, x2, x3 = (Polynomial.var(i) for i in (1, 2, 3))
    f4 = 3 * x3**3 + 4 * x1**2 * x3 + 4 * x2**2 * x3
    f5 = -4 * x2**3 - 4 * x2 * x3**2 - 3 * x1**2 * x2
    f6 = -(x1**3) - x1 * x2**2 - 2 * x1 * x3**2
    f7 = x1 * x2 * x3
    return f4, f5, f6, f7


# ---- scalar inequalities -----------------------------------------------------


def six_term_gap(A, B, C, X, Y, Z) -> Fraction:
    """RHS minus LHS of the six-variable inequality used for the degree-two case.

    3(A^2+B^2+C^2) + 3(X^2+Y^2+Z^2) - [2AB+2AC+2BC+2XY+2XZ+2YZ + 4<(A,C,B),(X-Y,Y-Z,Z-X)>] >= 0
    """
    A, B, C, X, Y, Z = (Fraction(t) for t in (A, B, C, X, Y, Z))
    lhs = 2 * (A * B + A * C + B * C + X * Y + X * Z + Y * Z) + 4 * (
        A * (X - Y) + C * (Y - Z) + B * (Z - X)
    )
    rhs = 3 * (A * A + B * B + C * C) + 3 * (X * X + Y * Y + Z * Z)
    return rhs - lhs


def collinear(u: Sequence, v: Sequence) -> bool:
    """Exact test that two 3-vectors are linearly dependent (cross product vanishes)."""
    u = [Fraction(t) for t in u]
    v = [Fraction(t) for t in v]
    return (
        u[1] * v[2] - u[2] * v[1] == 0
        and u[2] * v[0] - u[0] * v[2] == 0
        and u[0] * v[1] - u[1] * v[0] == 0
    )


def _sum_of_roots_le_one(p: Fraction, q: Fraction) -> bool:
    """sqrt(p) + sqrt(q) <= 1 for p, q >= 0, decided with squared comparisons."""
    # sqrt(p) + sqrt(q) <= 1  <=>  p + q + 2 sqrt(pq) <= 1  <=>  4pq <= (1 - p - q)^2 with 1-p-q >= 0
    s = 1 - p - q
    return s >= 0 and 4 * p * q <= s * s


@dataclass(frozen=True)
class BoundReport:
    l: int
    s: int
    m: int
    n: int
    theta: Fraction
    lam_l: Fraction
    lam_s: Fraction
    sufficiency_lhs: int        # l(l+m-1)
    sufficiency_rhs: int        # m^2 (n-2)^2
    sufficient: bool            # l(l+m-1) >= m^2 (n-2)^2
    theta_stable: bool          # n == 2, or Theta <= 1/(sqrt(m)(n-2))
    coupling_sq: Fraction       # (m(n-2) Theta / sqrt(lam_l))^2
    coupling: float
    coupling_le_one: bool
    pair_coefficient: float     # m Theta (1/sqrt(lam_l) + 1/sqrt(lam_s))
    pair_le_one: bool

    def to_json(self) -> dict:
        return {
            "l": self.l, "s": self.s, "m": self.m, "n": self.n,
            "theta": format_rational(self.theta),
            "lambda_l": format_rational(self.lam_l), "lambda_s": format_rational(self.lam_s),
            "sufficiency": {"lhs": self.sufficiency_lhs, "rhs": self.sufficiency_rhs, "holds": self.sufficient},
            "theta_stable": self.theta_stable,
            "coupling": {"squared": format_rational(self.coupling_sq), "value": self.coupling,
                         "le_one": self.coupling_le_one},
            "pair_coefficient": {"value": self.pair_coefficient, "le_one": self.pair_le_one},
        }


def rayleigh_bound(l: int, s: int | None = None, m: int = 2, n: int = 5, theta: Fraction | int = 1) -> BoundReport:
    """Spectral sufficient conditions for the long inequality on eigenspaces l (and s) and above.

    All decisions involving square roots are made on squared rational quantities.
    """
    s = l if s is None else s
    if l < 1 or s < 1 or n < 2:
        raise ValueError("need l, s >= 1 and n >= 2")
    theta = Fraction(theta)
    lam_l = spectral(l, m).lam
    lam_s = spectral(s, m).lam
    lhs = l * (l + m - 1)
    rhs = m * m * (n - 2) ** 2
    theta_stable = n == 2 or theta * theta * m * (n - 2) ** 2 <= 1
    coupling_sq = Fraction(m * m * (n - 2) ** 2) * theta * theta / lam_l
    p = Fraction(m * m) * theta * theta / lam_l
    q = Fraction(m * m) * theta * theta / lam_s
    pair = float(m * theta) * (1 / float(lam_l) ** 0.5 + 1 / float(lam_s) ** 0.5)
    return BoundReport(
        l=l, s=s, m=m, n=n, theta=theta, lam_l=lam_l, lam_s=lam_s,
        sufficiency_lhs=lhs, sufficiency_rhs=rhs, sufficient=lhs >= rhs,
        theta_stable=theta_stable,
        coupling_sq=coupling_sq, coupling=float(coupling_sq) ** 0.5, coupling_le_one=coupling_sq <= 1,
        pair_coefficient=pair, pair_le_one=_sum_of_roots_le_one(p, q),
    )


def parity_allows(axis: int, a: MultiIndex, b: MultiIndex) -> bool:
    s = tuple(x + y for x, y in zip(a, b))
    return parity(s) == AXIS_PARITY[axis]

