"""Modules of the universal Askey-Wilson algebra.

An :class:`AWAction` holds the matrices of ``A, B, C`` together with the
central elements ``alpha, beta, gamma`` and the Casimir ``Omega``.  The
central elements are stored as matrices throughout; on the modules
``V_d(a, b, c)`` they happen to be scalar multiples of the identity, while on
pullbacks of DAHA modules they are only scalar on ``t0``-stable pieces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .exact import (
    Matrix,
    Number,
    QContext,
    Subspace,
    kernel,
    q_bracket,
    quotient_operator,
    restrict_operator,
    quadratic_roots,
    scalar,
)

__all__ = [
    "AWParams",
    "AWAction",
    "RelationCheck",
    "RelationReport",
    "casimir",
    "make_action",
    "build_vd",
    "check_aw_relations",
    "aw_irreducible_by_criterion",
    "trace_identify",
    "matches_traces",
    "twist_z2",
    "find_intertwiner",
    "restrict_action",
    "quotient_action",
]


@dataclass(frozen=True)
class AWParams:
    d: int
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("d must be a nonnegative integer")
        for name in ("a", "b", "c"):
            v = scalar(getattr(self, name))
            if v == 0:
                raise ValueError(f"parameter {name} must be nonzero")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class AWAction:
    A: Matrix
    B: Matrix
    C: Matrix
    alpha: Matrix
    beta: Matrix
    gamma: Matrix
    omega: Matrix
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def dim(self) -> int:
        return self.A.rows

    @property
    def generators(self) -> tuple[Matrix, Matrix, Matrix]:
        return self.A, self.B, self.C

    def scalars(self) -> tuple[Fraction | None, Fraction | None, Fraction | None]:
        """alpha, beta, gamma as scalars where they act as scalars."""
        return self.alpha.scalar_value(), self.beta.scalar_value(), self.gamma.scalar_value()


@dataclass(frozen=True)
class RelationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class RelationReport:
    checks: tuple[RelationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.passed]

    def __add__(self, other: "RelationReport") -> "RelationReport":
        return RelationReport(self.checks + other.checks)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]}


def casimir(A, B, C, alpha, beta, gamma, ctx: QContext) -> Matrix:
    """qABC + q^2 A^2 + q^-2 B^2 + q^2 C^2 - qA alpha - q^-1 B beta - qC gamma."""
    q, q2, qi, qi2 = ctx.pow(1), ctx.pow(2), ctx.pow(-1), ctx.pow(-2)
    return (
        (A @ B @ C).scale(q)
        + (A @ A).scale(q2)
        + (B @ B).scale(qi2)
        + (C @ C).scale(q2)
        - (A @ alpha).scale(q)
        - (B @ beta).scale(qi)
        - (C @ gamma).scale(q)
    )


def make_action(A, B, C, alpha, beta, gamma, ctx: QContext, **provenance) -> AWAction:
    return AWAction(A, B, C, alpha, beta, gamma, casimir(A, B, C, alpha, beta, gamma, ctx), dict(provenance))


def _c_from_gamma(A: Matrix, B: Matrix, gamma: Matrix, ctx: QContext) -> Matrix:
    q, qi = ctx.pow(1), ctx.pow(-1)
    return gamma.scale(1 / (q + qi)) - (A @ B).scale(q / (q * q - qi * qi)) + (B @ A).scale(
        qi / (q * q - qi * qi)
    )


def vd_theta(x: Fraction, i: int, d: int, ctx: QContext) -> Fraction:
    return x * ctx.pow(2 * i - d) + ctx.pow(d - 2 * i) / x


def vd_phi(p: AWParams, i: int, ctx: QContext) -> Fraction:
    a, b, c, d = p.a, p.b, p.c, p.d
    qp = ctx.pow
    return (
        qp(d + 1) / (a * b)
        * (qp(i) - qp(-i))
        * (qp(i - d - 1) - qp(d - i + 1))
        * (qp(-i) - a * b * c * qp(i - d - 1))
        * (qp(-i) - a * b / c * qp(i - d - 1))
    )


def vd_central_scalars(p: AWParams, ctx: QContext) -> tuple[Fraction, Fraction, Fraction]:
    a, b, c = (x + 1 / x for x in (p.a, p.b, p.c))
    e = ctx.pow(p.d + 1) + ctx.pow(-p.d - 1)
    return b * c + a * e, c * a + b * e, a * b + c * e


def build_vd(params: AWParams, ctx: QContext) -> AWAction:
    """The (d+1)-dimensional module V_d(a, b, c).

    ``A`` is lower bidiagonal with ones below the diagonal, ``B`` is upper
    bidiagonal, and ``C`` is recovered from ``A``, ``B`` and the scalar value
    of ``gamma``.
    """
    d, n = params.d, params.d + 1
    A = [[Fraction(0)] * n for _ in range(n)]
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = vd_theta(params.a, i, d, ctx)
        B[i][i] = vd_theta(params.b, i, d, ctx)
        if i + 1 < n:
            A[i + 1][i] = Fraction(1)
            B[i][i + 1] = vd_phi(params, i + 1, ctx)
    A, B = Matrix(A), Matrix(B)
    al, be, ga = (Matrix.scalar_matrix(n, s) for s in vd_central_scalars(params, ctx))
    C = _c_from_gamma(A, B, ga, ctx)
    return make_action(A, B, C, al, be, ga, ctx, family="VD", d=d, a=params.a, b=params.b, c=params.c)


def check_aw_relations(act: AWAction, ctx: QContext) -> RelationReport:
    """Defining relations of the universal Askey-Wilson algebra, checked exactly."""
    q, qi = ctx.pow(1), ctx.pow(-1)
    denom = q * q - qi * qi
    A, B, C = act.A, act.B, act.C

    def qcomm(x, y):
        return (x @ y).scale(q / denom) - (y @ x).scale(qi / denom)

    checks = []
    for name, lhs, central in (
        ("alpha", A + qcomm(B, C), act.alpha),
        ("beta", B + qcomm(C, A), act.beta),
        ("gamma", C + qcomm(A, B), act.gamma),
    ):
        residual = lhs - central.scale(1 / (q + qi))
        checks.append(RelationCheck(f"{name}/(q+q^-1) relation", residual.is_zero()))
        for gname, g in zip("ABC", (A, B, C)):
            checks.append(RelationCheck(f"{name} commutes with {gname}", central.commutator(g).is_zero()))
    omega = casimir(A, B, C, act.alpha, act.beta, act.gamma, ctx)
    checks.append(RelationCheck("stored Omega matches Casimir expression", omega == act.omega))
    for gname, g in zip("ABC", (A, B, C)):
        checks.append(RelationCheck(f"Omega commutes with {gname}", act.omega.commutator(g).is_zero()))
    return RelationReport(tuple(checks))


def aw_irreducible_by_criterion(params: AWParams, ctx: QContext) -> bool:
    a, b, c, d = params.a, params.b, params.c, params.d
    excluded = {ctx.pow(2 * i - d - 1) for i in range(1, d + 1)}
    return not ({a * b * c, b * c / a, a * c / b, a * b / c} & excluded)


def trace_identify(act: AWAction, ctx: QContext) -> tuple[tuple[Fraction, Fraction], ...]:
    """Root pairs of [d+1]_q x^2 - tr(X) x + [d+1]_q for X = A, B, C.

    Only meaningful for irreducible modules.  Raises RationalityError when a
    pair of roots is not rational.
    """
    br = q_bracket(act.dim, ctx)
    return tuple(quadratic_roots(br, -x.trace(), br) for x in act.generators)


def matches_traces(act: AWAction, abc: tuple[Fraction, Fraction, Fraction], ctx: QContext) -> bool:
    """True when a, b, c are roots of the trace quadratics of A, B, C."""
    br = q_bracket(act.dim, ctx)
    return all(br * x * x - m.trace() * x + br == 0 for x, m in zip(abc, act.generators))


def twist_z2(act: AWAction, ctx: QContext) -> AWAction:
    """Twist by the automorphism swapping A and B."""
    q, qi = ctx.pow(1), ctx.pow(-1)
    A, B = act.A, act.B
    C = act.C + (A @ B - B @ A).scale(1 / (q - qi))
    prov = dict(act.provenance)
    prov["z2_twist"] = (prov.get("z2_twist", 0) + 1) % 2
    return AWAction(B, A, C, act.beta, act.alpha, act.gamma,
                    casimir(B, A, C, act.beta, act.alpha, act.gamma, ctx), prov)


def find_intertwiner(m1: AWAction, m2: AWAction) -> Matrix | None:
    """An invertible T with T X1 = X2 T for X = A, B, C, or None.

    Intertwining C as well as A and B forces T gamma1 = gamma2 T, so a result
    is an isomorphism of Askey-Wilson modules.
    """
    n = m1.dim
    if m2.dim != n:
        return None
    g1, g2 = m1.gamma.scalar_value(), m2.gamma.scalar_value()
    if g1 is not None and g2 is not None and g1 != g2:
        return None
    # unknown t[r][s] sits at index r*n + s
    rows = []
    for X1, X2 in zip(m1.generators, m2.generators):
        for i, j in product(range(n), repeat=2):
            row = [Fraction(0)] * (n * n)
            for s in range(n):
                row[i * n + s] += X1[s, j]
            for r in range(n):
                row[r * n + j] -= X2[i, r]
            rows.append(row)
    sol = kernel(Matrix(rows, n * n))
    if sol.is_zero():
        return None
    mats = [Matrix([vec[r * n:(r + 1) * n] for r in range(n)]) for vec in sol.basis]
    for T in mats:
        if T.is_invertible():
            return T
    # generic combinations; an invertible element exists iff some combination is
    for shift in range(1, 2 * n + 2):
        T = mats[0]
        for k, M in enumerate(mats[1:], start=1):
            T = T + M.scale(shift ** k)
        if T.is_invertible():
            return T
    return None


def restrict_action(act: AWAction, sub: Subspace, ctx: QContext) -> AWAction:
    """Action on an invariant subspace, in the coordinates of its canonical basis."""
    mats = [restrict_operator(m, sub) for m in (act.A, act.B, act.C, act.alpha, act.beta, act.gamma)]
    return make_action(*mats, ctx, **act.provenance)


def quotient_action(act: AWAction, sub: Subspace, ctx: QContext) -> AWAction:
    """Action on V / sub, using the non-pivot coordinates as a complement."""
    mats = [quotient_operator(m, sub) for m in (act.A, act.B, act.C, act.alpha, act.beta, act.gamma)]
    return make_action(*mats, ctx, **act.provenance)
