"""Exact rational scalars, dense matrices and the subspace calculus.

Everything here is immutable and exact.  Scalars are :class:`fractions.Fraction`
values; a :class:`Matrix` is a tuple-of-tuples grid of them, and a
:class:`Subspace` is stored through its reduced row-echelon basis so that two
equal subspaces always compare equal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import sympy

Scalar = Fraction
Number = Union[int, Fraction, str]

__all__ = [
    "Scalar",
    "RationalityError",
    "scalar",
    "format_scalar",
    "QContext",
    "q_bracket",
    "Matrix",
    "Subspace",
    "kernel",
    "eigenspace",
    "spin",
    "subspace_sum",
    "subspace_intersect",
    "subspace_contains",
    "charpoly",
    "rational_roots",
    "rational_sqrt",
    "quadratic_roots",
    "restrict_operator",
    "quotient_operator",
    "complement_indices",
    "lift_subspace",
    "project_subspace",
]


class RationalityError(ArithmeticError):
    """A quantity the engine needs is not a rational number."""


def scalar(x: Number) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_scalar(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QContext:
    """The fixed deformation parameter ``q`` together with its powers."""

    q: Fraction = Fraction(2)

    def __post_init__(self):
        q = scalar(self.q)
        object.__setattr__(self, "q", q)
        if q == 0 or abs(q) == 1:
            raise ValueError(f"q must satisfy |q| not in {{0, 1}}, got {q}")

    @lru_cache(maxsize=None)
    def pow(self, n: int) -> Fraction:
        return self.q ** n


def q_bracket(n: int, ctx: QContext) -> Fraction:
    """Return ``[n]_q = (q^n - q^-n) / (q - q^-1)``."""
    if n < 0:
        raise ValueError("q_bracket is defined for n >= 0")
    return (ctx.pow(n) - ctx.pow(-n)) / (ctx.pow(1) - ctx.pow(-1))


def rational_sqrt(x: Fraction) -> Fraction:
    """Exact non-negative square root of a rational, or RationalityError."""
    x = scalar(x)
    if x < 0:
        raise RationalityError(f"{x} has no real square root")
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise RationalityError(f"{x} is not the square of a rational")
    return Fraction(rn, rd)


def quadratic_roots(a2: Fraction, a1: Fraction, a0: Fraction) -> tuple[Fraction, Fraction]:
    """Roots of ``a2 x^2 + a1 x + a0`` (a2 != 0), smaller first."""
    if a2 == 0:
        raise ValueError("leading coefficient must be nonzero")
    disc = a1 * a1 - 4 * a2 * a0
    try:
        s = rational_sqrt(disc)
    except RationalityError as exc:
        raise RationalityError(
            f"roots of {a2}x^2 + {a1}x + {a0} are not rational (discriminant {disc})"
        ) from exc
    r1, r2 = (-a1 - s) / (2 * a2), (-a1 + s) / (2 * a2)
    return (r1, r2) if r1 <= r2 else (r2, r1)


class Matrix:
    """Dense exact matrix.  Immutable; entries are Fractions."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, entries: Iterable[Iterable[Number]], cols: int | None = None):
        e = tuple(tuple(scalar(x) for x in row) for row in entries)
        if cols is None:
            cols = len(e[0]) if e else 0
        if any(len(r) != cols for r in e):
            raise ValueError("ragged matrix")
        self.rows = len(e)
        self.cols = cols
        self._e = e
        self._hash = None

    @classmethod
    def _raw(cls, e: tuple, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._e, m._hash = len(e), cols, e, None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.scalar_matrix(n, 1)

    @classmethod
    def scalar_matrix(cls, n: int, s: Number) -> "Matrix":
        s, z = scalar(s), Fraction(0)
        return cls._raw(tuple(tuple(s if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Number]], rows: int) -> "Matrix":
        if not columns:
            return cls.zeros(rows, 0)
        return cls([[c[i] for c in columns] for i in range(rows)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._e

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._e[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._e)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.cols == other.cols and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.cols, self._e))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._e)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.cols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.cols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._e), self.cols)

    def scale(self, s: Number) -> "Matrix":
        s = scalar(s)
        return Matrix._raw(tuple(tuple(s * a for a in r) for r in self._e), self.cols)

    def __mul__(self, s):
        if isinstance(s, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(s)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other._e)) if other.rows else ((),) * other.cols
        out = []
        for r in self._e:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * c[k] for k, a in nz), Fraction(0)) for c in cols))
        return Matrix._raw(tuple(out), other.cols)

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((r[k] * a for k, a in nz), Fraction(0)) for r in self._e)

    def transpose(self) -> "Matrix":
        if not self.rows:
            return Matrix.zeros(self.cols, 0)
        return Matrix._raw(tuple(zip(*self._e)), self.rows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._e)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self._e[i][i] for i in range(self.rows)), Fraction(0))

    def scalar_value(self) -> Fraction | None:
        """Return s if this matrix equals s*I, else None."""
        if not self.is_square():
            return None
        if self.rows == 0:
            return Fraction(0)
        s = self._e[0][0]
        for i, r in enumerate(self._e):
            for j, a in enumerate(r):
                if a != (s if i == j else 0):
                    return None
        return s

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row-echelon form and its pivot columns."""
        rows, pivots = _rref_rows([list(r) for r in self._e], self.cols)
        return Matrix._raw(tuple(tuple(r) for r in rows), self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._e)]
        rows, pivots = _rref_rows(aug, 2 * n)
        if pivots[:n] != tuple(range(n)) or len(rows) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in rows[:n]), n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def power(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse().power(-k)
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(x) for x in r] for r in self._e]


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], tuple[int, ...]]:
    """In-place Gauss-Jordan on a list of rows; drops zero rows."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = rows[r] = [x * inv for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [x - f * y if y else x for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return rows[:r], tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n held by its canonical reduced row-echelon basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...] = field(compare=False, hash=False, repr=False)

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Number]], ambient_dim: int) -> "Subspace":
        rows = [[scalar(x) for x in v] for v in vectors]
        if any(len(v) != ambient_dim for v in rows):
            raise ValueError("vector length does not match ambient dimension")
        red, piv = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in red), piv)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(Matrix.identity(n).entries, n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def basis_matrix(self) -> Matrix:
        """Basis vectors as rows."""
        return Matrix._raw(self.basis, self.ambient_dim) if self.basis else Matrix.zeros(0, self.ambient_dim)

    def reduce(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Remainder of v after eliminating the pivot coordinates."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, row)]
        return tuple(v)

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coordinates of v (assumed to lie in the subspace) w.r.t. the canonical basis."""
        return tuple(v[p] for p in self.pivots)

    def image(self, op: Matrix) -> "Subspace":
        return Subspace.span((op.apply(b) for b in self.basis), self.ambient_dim)

    def is_invariant(self, op: Matrix) -> bool:
        return all(self.contains_vector(op.apply(b)) for b in self.basis)

    def annihilator(self) -> "Subspace":
        return kernel(self.basis_matrix())

    def __le__(self, other: "Subspace") -> bool:
        return subspace_contains(other, self)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def sort_key(self) -> tuple:
        return (self.dim, self.basis)


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0} in canonical form."""
    n = m.cols
    red, piv = m.rref()
    free = [j for j in range(n) if j not in set(piv)]
    vecs = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red.entries, piv):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, n)


def eigenspace(m: Matrix, lam: Number) -> Subspace:
    if not m.is_square():
        raise ValueError("eigenspace of a non-square matrix")
    return kernel(m - Matrix.scalar_matrix(m.rows, lam))


def _check_ambient(u: Subspace, w: Subspace):
    if u.ambient_dim != w.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {u.ambient_dim} vs {w.ambient_dim}")


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    _check_ambient(u, w)
    return Subspace.span(u.basis + w.basis, u.ambient_dim)


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    _check_ambient(u, w)
    return subspace_sum(u.annihilator(), w.annihilator()).annihilator()


def subspace_contains(u: Subspace, w: Subspace) -> bool:
    """True when w is a subspace of u."""
    _check_ambient(u, w)
    return w.dim <= u.dim and all(u.contains_vector(b) for b in w.basis)


def spin(seed: Subspace, ops: Sequence[Matrix]) -> Subspace:
    """Smallest subspace containing ``seed`` and invariant under every op.

    Breadth-first: each newly accepted vector is pushed through every op and
    kept if it is independent of what has been accepted so far.
    """
    n = seed.ambient_dim
    for op in ops:
        if op.shape != (n, n):
            raise ValueError("operator size does not match the ambient dimension")
    return spin_maps(seed.basis, n, [op.apply for op in ops])


def spin_maps(seeds, n: int, maps) -> Subspace:
    """``spin`` for arbitrary linear maps given as callables on vectors."""
    echelon: list[tuple[int, list[Fraction]]] = []

    def insert(v):
        v = list(v)
        for p, row in echelon:
            f = v[p]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, row)]
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return None
        inv = 1 / v[p]
        v = [x * inv for x in v]
        echelon.append((p, v))
        return v

    queue = [v for v in (insert(b) for b in seeds) if v is not None]
    while queue and len(echelon) < n:
        nxt = []
        for v in queue:
            for f in maps:
                w = insert(f(v))
                if w is not None:
                    nxt.append(w)
        queue = nxt
    return Subspace.span((row for _, row in echelon), n)


def charpoly(m: Matrix) -> list[Fraction]:
    """Characteristic polynomial det(xI - m), coefficients from x^n down to x^0.

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    n = m.rows
    if not m.is_square():
        raise ValueError("charpoly of a non-square matrix")
    coeffs = [Fraction(1)]
    mk = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[-1])
        coeffs.append(-(m @ mk).trace() / k)
    return coeffs


def rational_roots(coeffs: Sequence[Fraction]) -> dict[Fraction, int]:
    """Rational roots of a polynomial (highest degree first) with multiplicities."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x, domain="QQ")
    if poly.degree() <= 0:
        return {}
    return {Fraction(int(r.p), int(r.q)): k for r, k in poly.ground_roots().items()}


def restrict_operator(op: Matrix, sub: Subspace) -> Matrix:
    """Matrix of op on an op-invariant subspace, w.r.t. its canonical basis."""
    cols = [sub.coordinates(op.apply(b)) for b in sub.basis]
    return Matrix.from_columns(cols, sub.dim)


def complement_indices(sub: Subspace) -> tuple[int, ...]:
    piv = set(sub.pivots)
    return tuple(j for j in range(sub.ambient_dim) if j not in piv)


def quotient_operator(op: Matrix, sub: Subspace) -> Matrix:
    """Matrix of op on V/sub.

    The cosets of the standard basis vectors at non-pivot positions of sub's
    canonical basis form the basis of the quotient.
    """
    comp = complement_indices(sub)
    n = sub.ambient_dim
    cols = []
    for j in comp:
        r = sub.reduce(op.column(j))
        cols.append(tuple(r[k] for k in comp))
    return Matrix.from_columns(cols, len(comp))


def lift_subspace(quot_sub: Subspace, sub: Subspace) -> Subspace:
    """Preimage in V of a subspace of V/sub (given in quotient coordinates)."""
    comp = complement_indices(sub)
    n = sub.ambient_dim
    vecs = []
    for b in quot_sub.basis:
        v = [Fraction(0)] * n
        for k, x in zip(comp, b):
            v[k] = x
        vecs.append(v)
    return Subspace.span(list(sub.basis) + vecs, n)


def project_subspace(big: Subspace, sub: Subspace) -> Subspace:
    """Image of big (containing sub) in V/sub, in quotient coordinates."""
    comp = complement_indices(sub)
    return Subspace.span((tuple(sub.reduce(b)[k] for k in comp) for b in big.basis), len(comp))
