"""Sparse polynomials with exact rational coefficients in (x1, x2, x3).

Exponent vectors are plain tuples of nonnegative ints.  Every coefficient is a
``fractions.Fraction``; nothing in this module touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

MultiIndex = tuple[int, ...]

EVEN, ODD = "E", "O"


def degree(a: MultiIndex) -> int:
    return sum(a)


def parity(a: MultiIndex) -> tuple[str, ...]:
    """Per-coordinate even/odd signature, e.g. ``(2, 1, 1) -> ('E', 'O', 'O')``."""
    return tuple(EVEN if ai % 2 == 0 else ODD for ai in a)


def all_even(a: MultiIndex) -> bool:
    return all(ai % 2 == 0 for ai in a)


def unit(i: int, n: int = 3) -> MultiIndex:
    """The exponent vector of the coordinate x_i (axes are 1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(n))


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def shift(a: MultiIndex, i: int, k: int) -> MultiIndex | None:
    """``a + k*e_i`` with a 1-based axis, or None when an exponent would go negative."""
    if a[i - 1] + k < 0:
        return None
    out = list(a)
    out[i - 1] += k
    return tuple(out)


def offset(a: MultiIndex, delta: Iterable[int]) -> MultiIndex | None:
    out = tuple(x + d for x, d in zip(a, delta))
    if min(out) < 0:
        return None
    return out


def monomials_of_degree(l: int, n: int = 3) -> list[MultiIndex]:
    """All exponent vectors of total degree ``l``, in descending lex order.

    This is the project-wide basis order: (3,0,0), (2,1,0), (2,0,1), (1,2,0), ...
    """
    if l < 0:
        return []
    out = [a for a in product(range(l, -1, -1), repeat=n) if sum(a) == l]
    return out


def basis_size(l: int) -> int:
    return (l + 1) * (l + 2) // 2


def monomial_key(a: MultiIndex) -> tuple:
    """Sort key for the graded lexicographic order (degree ascending, then lex descending)."""
    return (sum(a), tuple(-x for x in a))


def format_rational(q: Fraction | int) -> str:
    """``p/q`` with the denominator omitted when it is 1."""
    return str(Fraction(q))


def parse_rational(s: str | int | Fraction) -> Fraction:
    return Fraction(s)


class Polynomial:
    """Immutable sparse polynomial, a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("_terms", "_n", "_hash")

    def __init__(self, terms: Mapping[MultiIndex, Fraction | int] | None = None, n: int = 3):
        clean: dict[MultiIndex, Fraction] = {}
        if terms:
            for a, c in terms.items():
                a = tuple(int(x) for x in a)
                if len(a) != n or min(a, default=0) < 0:
                    raise ValueError(f"bad exponent vector {a!r} for {n} variables")
                c = Fraction(c)
                if c:
                    clean[a] = clean.get(a, Fraction(0)) + c
                    if not clean[a]:
                        del clean[a]
        self._terms = clean
        self._n = n
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[MultiIndex, Fraction], n: int = 3) -> "Polynomial":
        # trusted constructor: terms already canonical (no zeros)
        p = cls.__new__(cls)
        p._terms = terms
        p._n = n
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Fraction | int, n: int = 3) -> "Polynomial":
        return cls({(0,) * n: c}, n)

    @classmethod
    def monomial(cls, a: MultiIndex, c: Fraction | int = 1) -> "Polynomial":
        return cls({tuple(a): c}, len(a))

    @classmethod
    def var(cls, i: int, n: int = 3) -> "Polynomial":
        """The coordinate function x_i (1-based)."""
        return cls.monomial(unit(i, n))

    @property
    def terms(self) -> dict[MultiIndex, Fraction]:
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return self._n

    def items(self):
        return self._terms.items()

    def coeff(self, a: MultiIndex) -> Fraction:
        return self._terms.get(tuple(a), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(a) for a in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self._terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict[MultiIndex, Fraction]] = {}
        for a, c in self._terms.items():
            parts.setdefault(sum(a), {})[a] = c
        return {d: Polynomial._raw(t, self._n) for d, t in sorted(parts.items())}

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._n != self._n:
                raise ValueError("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self._n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for a, c in other._terms.items():
            v = out.get(a, 0) + c
            if v:
                out[a] = v
            else:
                out.pop(a, None)
        return Polynomial._raw(out, self._n)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({a: -c for a, c in self._terms.items()}, self._n)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw({}, self._n)
            return Polynomial._raw({a: c * other for a, c in self._terms.items()}, self._n)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[MultiIndex, Fraction] = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + c * d
        return Polynomial._raw({k: v for k, v in out.items() if v}, self._n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1, self._n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self._n)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    def __call__(self, *point):
        """Evaluate at a point; exact if the coordinates are ints/Fractions."""
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        total = 0
        for a, c in self._terms.items():
            t = c
            for x, e in zip(point, a):
                if e:
                    t = t * x**e
            total = total + t
        return total

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative with respect to x_i (1-based)."""
        j = i - 1
        out: dict[MultiIndex, Fraction] = {}
        for a, c in self._terms.items():
            if a[j]:
                b = a[:j] + (a[j] - 1,) + a[j + 1:]
                out[b] = c * a[j]
        return Polynomial._raw(out, self._n)

    def sorted_terms(self) -> list[tuple[MultiIndex, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def to_json(self) -> list[dict]:
        return [{"exponents": list(a), "coeff": format_rational(c)} for a, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "Polynomial":
        terms: dict[MultiIndex, Fraction] = {}
        n = 3
        for t in data:
            a = tuple(t["exponents"])
            n = len(a)
            terms[a] = terms.get(a, 0) + parse_rational(t["coeff"])
        return cls(terms, n)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for a, c in sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True):
            mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def phi(i: int) -> Polynomial:
    """Coordinate function x_i on R^3 (1-based), i.e. phi_i restricted to the sphere."""
    return Polynomial.var(i)


def r_squared(n: int = 3) -> Polynomial:
    """x_1^2 + ... + x_n^2, which is identically 1 on the unit sphere."""
    return Polynomial({tuple(2 * x for x in unit(i, n)): 1 for i in range(1, n + 1)}, n)


def grad0(P: Polynomial) -> tuple[Polynomial, ...]:
    """Ambient gradient (dP/dx_1, ..., dP/dx_n)."""
    return tuple(P.diff(i) for i in range(1, P.nvars + 1))


def lap0(P: Polynomial) -> Polynomial:
    """Ambient Laplacian, sum of second partials."""
    out: dict[MultiIndex, Fraction] = {}
    for a, c in P.items():
        for j, e in enumerate(a):
            if e >= 2:
                b = a[:j] + (e - 2,) + a[j + 1:]
                out[b] = out.get(b, 0) + c * e * (e - 1)
    return Polynomial._raw({k: v for k, v in out.items() if v}, P.nvars)


def triple_det(f: Polynomial, h: Polynomial) -> Polynomial:
    """det of the rows (x, grad f, grad h); on the unit sphere this is <J grad f, grad h>.

    Oriented so that triple_det(x1, x2) = x3.
    """
    if f.nvars != 3 or h.nvars != 3:
        raise ValueError("triple_det needs three ambient coordinates")
    f1, f2, f3 = grad0(f)
    h1, h2, h3 = grad0(h)
    x1, x2, x3 = phi(1), phi(2), phi(3)
    return x1 * (f2 * h3 - f3 * h2) + x2 * (f3 * h1 - f1 * h3) + x3 * (f1 * h2 - f2 * h1)
