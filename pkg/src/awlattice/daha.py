"""Finite-dimensional modules of the universal DAHA of type (C1v, C1).

The two families built here are the even-dimensional ``E(k0, k1, k2, k3)``
(odd ``d``, ``k0^2 = q^(-d-1)``) and the odd-dimensional ``O(k0, k1, k2, k3)``
(even ``d``, ``k0 k1 k2 k3 = q^(-d-1)``).  Generator matrices act on column
vectors, so column ``i`` of ``t_j`` holds the coordinates of ``t_j v_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .aw import AWAction, RelationCheck, RelationReport, make_action
from .exact import Matrix, QContext, scalar

__all__ = [
    "EParams",
    "OParams",
    "HModule",
    "XYPair",
    "build_E",
    "build_O",
    "build_h",
    "twist_z4",
    "check_h_relations",
    "xy_actions",
    "rho",
    "check_xy_recurrences",
    "pullback",
    "casimir_image",
    "check_casimir_image",
    "irr_criterion_E",
    "irr_criterion_O",
]


def _nonzero4(params) -> tuple[Fraction, ...]:
    ks = tuple(scalar(k) for k in params)
    if len(ks) != 4:
        raise ValueError("expected four parameters k0, k1, k2, k3")
    if any(k == 0 for k in ks):
        raise ValueError("all k_i must be nonzero")
    return ks


@dataclass(frozen=True)
class EParams:
    d: int
    k0: Fraction
    k1: Fraction
    k2: Fraction
    k3: Fraction
    q: Fraction = Fraction(2)

    def __post_init__(self):
        if self.d < 1 or self.d % 2 == 0:
            raise ValueError(f"E family needs an odd d >= 1, got {self.d}")
        ks = _nonzero4((self.k0, self.k1, self.k2, self.k3))
        for name, k in zip(("k0", "k1", "k2", "k3"), ks):
            object.__setattr__(self, name, k)
        object.__setattr__(self, "q", scalar(self.q))
        if self.k0 ** 2 != self.q ** (-self.d - 1):
            raise ValueError(f"E family needs k0^2 = q^(-d-1); got k0 = {self.k0}")

    @property
    def ks(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.k0, self.k1, self.k2, self.k3


@dataclass(frozen=True)
class OParams:
    d: int
    k0: Fraction
    k1: Fraction
    k2: Fraction
    k3: Fraction
    q: Fraction = Fraction(2)

    def __post_init__(self):
        if self.d < 0 or self.d % 2:
            raise ValueError(f"O family needs an even d >= 0, got {self.d}")
        ks = _nonzero4((self.k0, self.k1, self.k2, self.k3))
        for name, k in zip(("k0", "k1", "k2", "k3"), ks):
            object.__setattr__(self, name, k)
        object.__setattr__(self, "q", scalar(self.q))
        if self.k0 * self.k1 * self.k2 * self.k3 != self.q ** (-self.d - 1):
            raise ValueError("O family needs k0 k1 k2 k3 = q^(-d-1)")

    @property
    def ks(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.k0, self.k1, self.k2, self.k3


@dataclass(frozen=True)
class HModule:
    t: tuple[Matrix, Matrix, Matrix, Matrix]
    t_inv: tuple[Matrix, Matrix, Matrix, Matrix]
    c: tuple[Fraction, Fraction, Fraction, Fraction]
    family: str
    params: EParams | OParams = field(compare=False)
    twist: int = 0

    @property
    def dim(self) -> int:
        return self.t[0].rows

    @property
    def d(self) -> int:
        return self.dim - 1


@dataclass(frozen=True)
class XYPair:
    X: Matrix
    Y: Matrix
    X_inv: Matrix
    Y_inv: Matrix


class _Cols:
    """Column-wise builder: ``set(i, j, x)`` puts x as the v_j coefficient of t v_i."""

    def __init__(self, n: int):
        self.n = n
        self.m = [[Fraction(0)] * n for _ in range(n)]

    def set(self, i: int, j: int, x: Fraction):
        self.m[j][i] = x

    def matrix(self) -> Matrix:
        return Matrix(self.m)


def _finish(ts: list[Matrix], ks, family, params, ctx: QContext) -> HModule:
    cs = tuple(k + 1 / k for k in ks)
    t_inv = []
    for t, c in zip(ts, cs):
        inv = Matrix.scalar_matrix(t.rows, c) - t
        # the quadratic shortcut must agree with honest inversion
        if inv != t.inverse():
            raise ArithmeticError(f"{family}: t_i + t_i^-1 is not the expected scalar")
        t_inv.append(inv)
    return HModule(tuple(ts), tuple(t_inv), cs, family, params, 0)


def build_E(p: EParams, ctx: QContext) -> HModule:
    if p.q != ctx.q:
        raise ValueError("parameters were validated against a different q")
    d, n = p.d, p.d + 1
    k0, k1, k2, k3 = p.ks
    qp = ctx.pow
    t0, t1, t2, t3 = (_Cols(n) for _ in range(4))

    def rho_odd(i):
        x = k0 * k1 * k3 * qp(i)
        return (x - k2) * (x - 1 / k2)

    # t0
    t0.set(0, 0, k0)
    t0.set(d, d, k0)
    for i in range(2, d, 2):
        t0.set(i, i - 1, qp(-i) * (1 - qp(i)) * (1 - k0 * k0 * qp(i)) / k0)
        t0.set(i, i, k0 + 1 / k0 - qp(-i) / k0)
    for i in range(1, d - 1, 2):
        t0.set(i, i, qp(-i - 1) / k0)
        t0.set(i, i + 1, -qp(-i - 1) / k0)
    # t1
    t1.set(0, 0, k1)
    t1.set(0, 1, 1 / k1)
    for i in range(2, d, 2):
        t1.set(i, i - 1, -k1 * (1 - qp(i)) * (1 - k0 * k0 * qp(i)))
        t1.set(i, i, k1)
        t1.set(i, i + 1, 1 / k1)
    for i in range(1, d + 1, 2):
        t1.set(i, i, 1 / k1)
    # t2
    for i in range(0, d, 2):
        x = qp(-i - 1) / (k0 * k1 * k3)
        t2.set(i, i, x)
        t2.set(i, i + 1, -x)
    for i in range(1, d + 1, 2):
        t2.set(i, i - 1, rho_odd(i) / (k0 * k1 * k3 * qp(i)))
        t2.set(i, i, k2 + 1 / k2 - qp(-i) / (k0 * k1 * k3))
    # t3
    for i in range(0, d, 2):
        t3.set(i, i, k3)
    for i in range(1, d - 1, 2):
        t3.set(i, i - 1, -rho_odd(i) / k3)
        t3.set(i, i, 1 / k3)
        t3.set(i, i + 1, k3)
    t3.set(d, d - 1, -rho_odd(d) / k3)
    t3.set(d, d, 1 / k3)
    ts = [t.matrix() for t in (t0, t1, t2, t3)]
    return _finish(ts, p.ks, "E", p, ctx)


def build_O(p: OParams, ctx: QContext) -> HModule:
    if p.q != ctx.q:
        raise ValueError("parameters were validated against a different q")
    d, n = p.d, p.d + 1
    k0, k1, k2, k3 = p.ks
    qp = ctx.pow
    t0, t1, t2, t3 = (_Cols(n) for _ in range(4))
    # t0
    t0.set(0, 0, k0)
    for i in range(2, d + 1, 2):
        t0.set(i, i - 1, qp(-i) * (1 - qp(i)) * (1 - k0 * k0 * qp(i)) / k0)
        t0.set(i, i, k0 + 1 / k0 - qp(-i) / k0)
    for i in range(1, d, 2):
        t0.set(i, i, qp(-i - 1) / k0)
        t0.set(i, i + 1, -qp(-i - 1) / k0)
    # t1; for d = 0 the v_0 and v_d rules coincide and v_1 does not exist
    if d == 0:
        t1.set(0, 0, k1)
    else:
        t1.set(0, 0, k1)
        t1.set(0, 1, 1 / k1)
        t1.set(d, d - 1, -k1 * (1 - qp(d)) * (1 - k0 * k0 * qp(d)))
        t1.set(d, d, k1)
    for i in range(2, d - 1, 2):
        t1.set(i, i - 1, -k1 * (1 - qp(i)) * (1 - k0 * k0 * qp(i)))
        t1.set(i, i, k1)
        t1.set(i, i + 1, 1 / k1)
    for i in range(1, d, 2):
        t1.set(i, i, 1 / k1)
    # t2
    for i in range(0, d - 1, 2):
        t2.set(i, i, k2 * qp(d - i))
        t2.set(i, i + 1, -k2 * qp(d - i))
    for i in range(1, d, 2):
        t2.set(i, i - 1, -k2 * (1 - qp(i - d - 1) / (k2 * k2)) * (1 - qp(d - i + 1)))
        t2.set(i, i, k2 + 1 / k2 - k2 * qp(d - i + 1))
    t2.set(d, d, k2)
    # t3
    for i in range(0, d + 1, 2):
        t3.set(i, i, k3)
    for i in range(1, d, 2):
        t3.set(i, i - 1, -(1 - qp(i - d - 1) / (k2 * k2)) * (1 - qp(i - d - 1)) / k3)
        t3.set(i, i, 1 / k3)
        t3.set(i, i + 1, k3)
    ts = [t.matrix() for t in (t0, t1, t2, t3)]
    return _finish(ts, p.ks, "O", p, ctx)


def build_h(p: EParams | OParams, ctx: QContext, twist: int = 0) -> HModule:
    h = build_E(p, ctx) if isinstance(p, EParams) else build_O(p, ctx)
    return twist_z4(h, twist)


def twist_z4(h: HModule, eps: int) -> HModule:
    """Twist by the cyclic automorphism t_j -> t_(j+eps)."""
    e = eps % 4
    perm = [(j + e) % 4 for j in range(4)]
    return HModule(
        tuple(h.t[k] for k in perm),
        tuple(h.t_inv[k] for k in perm),
        tuple(h.c[k] for k in perm),
        h.family,
        h.params,
        (h.twist + e) % 4,
    )


def check_h_relations(h: HModule, ctx: QContext) -> RelationReport:
    n = h.dim
    eye = Matrix.identity(n)
    checks = []
    for i, (t, ti, c) in enumerate(zip(h.t, h.t_inv, h.c)):
        checks.append(RelationCheck(f"t{i} t{i}^-1 = 1", t @ ti == eye))
        checks.append(RelationCheck(f"t{i}^-1 t{i} = 1", ti @ t == eye))
        checks.append(RelationCheck(f"t{i} + t{i}^-1 = c{i}", t + ti == Matrix.scalar_matrix(n, c)))
        checks.append(RelationCheck(f"t{i}^2 - c{i} t{i} + 1 = 0", (t @ t - t.scale(c) + eye).is_zero()))
    prod = h.t[0] @ h.t[1] @ h.t[2] @ h.t[3]
    checks.append(RelationCheck("t0 t1 t2 t3 = q^-1", prod == Matrix.scalar_matrix(n, ctx.pow(-1))))
    return RelationReport(tuple(checks))


def xy_actions(h: HModule) -> XYPair:
    t0, t1, _, t3 = h.t
    i0, i1, _, i3 = h.t_inv
    return XYPair(t3 @ t0, t0 @ t1, i0 @ i3, i1 @ i0)


def rho(h: HModule, i: int, ctx: QContext) -> Fraction:
    """The coefficient rho_i of the X recurrence on an untwisted E or O module."""
    k0, k1, k2, k3 = h.params.ks
    d, qp = h.d, ctx.pow
    if not 1 <= i <= d:
        raise ValueError("rho_i is defined for 1 <= i <= d")
    if i % 2 == 0:
        return (1 - qp(i)) * (1 - k0 * k0 * qp(i))
    if h.family == "E":
        x = k0 * k1 * k3 * qp(i)
        return (x - k2) * (x - 1 / k2)
    return (qp(i - d - 1) - 1) * (qp(i - d - 1) / (k2 * k2) - 1)


def check_xy_recurrences(h: HModule, ctx: QContext) -> RelationReport:
    """The X and Y recurrences on the standard basis of an untwisted module."""
    if h.twist != 0:
        raise ValueError("recurrences are stated for the untwisted module")
    k0, k1, _, k3 = h.params.ks
    d, n = h.d, h.dim
    xy = xy_actions(h)
    eye = Matrix.identity(n)
    checks = []
    for i in range(n):
        up = 2 * ((i + 1) // 2)
        X = xy.X if i % 2 == 1 else xy.X_inv
        Y = xy.Y if i % 2 == 1 else xy.Y_inv
        lhs_x = (eye - X.scale(k0 * k3 * ctx.pow(up))).column(i)
        want_x = [Fraction(0)] * n
        if i > 0:
            want_x[i - 1] = rho(h, i, ctx)
        checks.append(RelationCheck(f"X recurrence at v{i}", list(lhs_x) == want_x))
        lhs_y = (eye - Y.scale(k0 * k1 * ctx.pow(up))).column(i)
        want_y = [Fraction(0)] * n
        if i < d:
            want_y[i + 1] = Fraction(1)
        checks.append(RelationCheck(f"Y recurrence at v{i}", list(lhs_y) == want_y))
    return RelationReport(tuple(checks))


def _t0_combo(h: HModule, ctx: QContext) -> Matrix:
    """q t0^-1 + q^-1 t0."""
    return h.t_inv[0].scale(ctx.pow(1)) + h.t[0].scale(ctx.pow(-1))


def pullback(h: HModule, ctx: QContext) -> AWAction:
    """View an H_q-module as a module of the universal Askey-Wilson algebra."""
    t0, t1, t2, t3 = h.t
    i0, i1, i2, i3 = h.t_inv
    n = h.dim
    A = t1 @ t0 + i0 @ i1
    B = t3 @ t0 + i0 @ i3
    C = t2 @ t0 + i0 @ i2
    c0, c1, c2, c3 = h.c
    s = _t0_combo(h, ctx)
    eye = Matrix.identity(n)
    alpha = eye.scale(c3 * c2) + s.scale(c1)
    beta = eye.scale(c2 * c1) + s.scale(c3)
    gamma = eye.scale(c1 * c3) + s.scale(c2)
    return make_action(A, B, C, alpha, beta, gamma, ctx, family=h.family, twist=h.twist, d=h.d)


def casimir_image(h: HModule, ctx: QContext) -> Matrix:
    """Image of the Casimir element written in t0 and the central c_i."""
    _, c1, c2, c3 = h.c
    q, qi = ctx.pow(1), ctx.pow(-1)
    u = _t0_combo(h, ctx)
    eye = Matrix.identity(h.dim)
    return eye.scale((q + qi) ** 2 - c1 * c1 - c2 * c2 - c3 * c3) - u @ u - u.scale(c1 * c2 * c3)


def check_casimir_image(h: HModule, act: AWAction, ctx: QContext) -> RelationReport:
    t0 = h.t[0]
    return RelationReport((
        RelationCheck("Omega equals its t0/c_i image", act.omega == casimir_image(h, ctx)),
        RelationCheck("t0 commutes with A", t0.commutator(act.A).is_zero()),
        RelationCheck("t0 commutes with B", t0.commutator(act.B).is_zero()),
        RelationCheck("t0 commutes with C", t0.commutator(act.C).is_zero()),
    ))


def irr_criterion_E(p: EParams) -> bool:
    k0, k1, k2, k3 = p.ks
    excluded = {p.q ** (-i) for i in range(1, p.d + 1, 2)}
    return not ({k0 * k1 * k2 * k3, k0 * k2 * k3 / k1, k0 * k1 * k3 / k2, k0 * k1 * k2 / k3} & excluded)


def irr_criterion_O(p: OParams) -> bool:
    excluded = {p.q ** (-i) for i in range(2, p.d + 1, 2)}
    return not ({k * k for k in p.ks} & excluded)


IRR_CRITERIA: dict[str, Callable] = {"E": irr_criterion_E, "O": irr_criterion_O}
