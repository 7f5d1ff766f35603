from fractions import Fraction

import pytest

from awlattice.aw import check_aw_relations
from awlattice.daha import (
    EParams,
    OParams,
    build_E,
    build_O,
    build_h,
    check_casimir_image,
    check_h_relations,
    check_xy_recurrences,
    irr_criterion_E,
    irr_criterion_O,
    pullback,
    rho,
    twist_z4,
    xy_actions,
)
from awlattice.exact import Matrix, eigenspace, kernel
from awlattice.lattice import is_absolutely_irreducible

F = Fraction
Q = F(2)


def e_params(d, sign=1, ks=(F(3), F(5, 2), F(-7))):
    return EParams(d, sign * Q ** (-(d + 1) // 2), *ks)


def o_params(d, k0=F(3), k1=F(5, 2), k2=F(-7)):
    return OParams(d, k0, k1, k2, Q ** (-d - 1) / (k0 * k1 * k2))


# --------------------------------------------------------------------------
# hand-entered fixtures: each returns {j: coefficient of v_j} for t_g v_i


def e_fixture(g, i, d, k0, k1, k2, k3, q=Q):
    even, odd = i % 2 == 0, i % 2 == 1
    if g == 0:
        if i in (0, d):
            return {i: k0}
        if even:
            return {i - 1: (1 - q ** i) * (1 - k0 * k0 * q ** i) / (k0 * q ** i),
                    i: k0 + 1 / k0 - 1 / (k0 * q ** i)}
        return {i: 1 / (k0 * q ** (i + 1)), i + 1: -1 / (k0 * q ** (i + 1))}
    if g == 1:
        if i == 0:
            return {0: k1, 1: 1 / k1}
        if even:
            return {i - 1: -k1 * (1 - q ** i) * (1 - k0 * k0 * q ** i), i: k1, i + 1: 1 / k1}
        return {i: 1 / k1}
    x = k0 * k1 * k3 * q ** i
    if g == 2:
        if even:
            s = 1 / (k0 * k1 * k3 * q ** (i + 1))
            return {i: s, i + 1: -s}
        return {i - 1: (x - k2) * (x - 1 / k2) / x, i: k2 + 1 / k2 - 1 / x}
    if even:
        return {i: k3}
    if i == d:
        return {d - 1: -(x - k2) * (x - 1 / k2) / k3, d: 1 / k3}
    return {i - 1: -(x - k2) * (x - 1 / k2) / k3, i: 1 / k3, i + 1: k3}


def o_fixture(g, i, d, k0, k1, k2, k3, q=Q):
    even = i % 2 == 0
    if g == 0:
        if i == 0:
            return {0: k0}
        if even:
            return {i - 1: (1 - q ** i) * (1 - k0 * k0 * q ** i) / (k0 * q ** i),
                    i: k0 + 1 / k0 - 1 / (k0 * q ** i)}
        return {i: 1 / (k0 * q ** (i + 1)), i + 1: -1 / (k0 * q ** (i + 1))}
    if g == 1:
        if d == 0:
            return {0: k1}
        if i == 0:
            return {0: k1, 1: 1 / k1}
        if i == d:
            return {d - 1: -k1 * (1 - q ** d) * (1 - k0 * k0 * q ** d), d: k1}
        if even:
            return {i - 1: -k1 * (1 - q ** i) * (1 - k0 * k0 * q ** i), i: k1, i + 1: 1 / k1}
        return {i: 1 / k1}
    if g == 2:
        if i == d:
            return {d: k2}
        if even:
            return {i: k2 * q ** (d - i), i + 1: -k2 * q ** (d - i)}
        return {i - 1: -k2 * (1 - q ** (i - d - 1) / (k2 * k2)) * (1 - q ** (d - i + 1)),
                i: k2 + 1 / k2 - k2 * q ** (d - i + 1)}
    if even:
        return {i: k3}
    return {i - 1: -(1 - q ** (i - d - 1) / (k2 * k2)) * (1 - q ** (i - d - 1)) / k3, i: 1 / k3, i + 1: k3}


def as_column(coeffs, n):
    col = [F(0)] * n
    for j, x in coeffs.items():
        col[j] += x
    return tuple(col)


@pytest.mark.parametrize("d", [1, 3, 5, 7])
@pytest.mark.parametrize("sign", [1, -1])
def test_E_transcription(ctx, d, sign):
    p = e_params(d, sign)
    h = build_E(p, ctx)
    for g in range(4):
        for i in range(d + 1):
            assert h.t[g].column(i) == as_column(e_fixture(g, i, d, *p.ks), d + 1), (g, i)


@pytest.mark.parametrize("d", [0, 2, 4, 6])
def test_O_transcription(ctx, d):
    p = o_params(d)
    h = build_O(p, ctx)
    for g in range(4):
        for i in range(d + 1):
            assert h.t[g].column(i) == as_column(o_fixture(g, i, d, *p.ks), d + 1), (g, i)


def test_param_validation():
    with pytest.raises(ValueError):
        EParams(2, F(1, 8), 1, 1, 1)
    with pytest.raises(ValueError):
        EParams(3, F(1, 2), 1, 1, 1)
    with pytest.raises(ValueError):
        EParams(3, F(1, 4), 0, 1, 1)
    with pytest.raises(ValueError):
        OParams(1, 1, 1, 1, F(1, 4))
    with pytest.raises(ValueError):
        OParams(2, 1, 1, 1, 1)


def test_E_central_scalars(ctx):
    p = e_params(3)
    h = build_E(p, ctx)
    assert h.c == tuple(k + 1 / k for k in p.ks)
    for t, ti, c in zip(h.t, h.t_inv, h.c):
        assert t + ti == Matrix.scalar_matrix(4, c)


def test_E_d1_t0_scalar(ctx):
    p = e_params(1)
    h = build_E(p, ctx)
    assert h.t[0] == Matrix.scalar_matrix(2, p.k0)


def test_E_d3_relations_and_eigenspace(ctx):
    p = e_params(3)
    assert p.k0 == F(1, 4)
    h = build_E(p, ctx)
    assert check_h_relations(h, ctx).ok
    assert kernel(h.t[0] - Matrix.scalar_matrix(4, p.k0)).dim == 3


def test_O_d0_scalars(ctx):
    p = OParams(0, F(3), F(5), F(1, 7), F(7, 30))
    h = build_O(p, ctx)
    for t, k in zip(h.t, p.ks):
        assert t == Matrix([[k]])
    assert check_h_relations(h, ctx).ok


def test_O_d2_named_params(ctx):
    p = OParams(2, 2, 2, 2, F(1, 64))
    h = build_O(p, ctx)
    assert check_h_relations(h, ctx).ok
    assert h.c[2] == F(5, 2)


@pytest.mark.parametrize("d", [1, 3, 5, 7])
@pytest.mark.parametrize("eps", range(4))
def test_E_all_twists(ctx, d, eps):
    h = build_h(e_params(d, -1 if eps % 2 else 1), ctx, eps)
    assert h.twist == eps
    assert check_h_relations(h, ctx).ok
    act = pullback(h, ctx)
    assert check_aw_relations(act, ctx).ok
    assert check_casimir_image(h, act, ctx).ok
    t0 = h.t[0]
    assert (t0 @ t0 - t0.scale(h.c[0]) + Matrix.identity(h.dim)).is_zero()


@pytest.mark.parametrize("d", [0, 2, 4, 6])
@pytest.mark.parametrize("eps", range(4))
def test_O_all_twists(ctx, d, eps):
    h = build_h(o_params(d), ctx, eps)
    assert check_h_relations(h, ctx).ok
    act = pullback(h, ctx)
    assert check_aw_relations(act, ctx).ok
    assert check_casimir_image(h, act, ctx).ok


def test_perturbed_t0_breaks_product(ctx):
    h = build_E(e_params(3), ctx)
    t = list(h.t)
    t[0] = t[0] + Matrix.identity(4)
    bad = type(h)(tuple(t), h.t_inv, h.c, h.family, h.params, h.twist)
    rep = check_h_relations(bad, ctx)
    assert not rep.ok
    assert "t0 t1 t2 t3 = q^-1" in [c.name for c in rep.failures()]


def test_twist_examples(ctx):
    p = e_params(3)
    h = build_E(p, ctx)
    assert twist_z4(h, 0) == h
    assert twist_z4(twist_z4(twist_z4(twist_z4(h, 1), 1), 1), 1) == h
    assert twist_z4(h, 1).c[0] == p.k1 + 1 / p.k1
    assert twist_z4(h, 1).t[0] == h.t[1]
    assert twist_z4(h, 3).t[0] == h.t[3]


@pytest.mark.parametrize("builder,params", [
    (build_E, e_params(1)), (build_E, e_params(5)), (build_E, e_params(7, -1)),
    (build_O, o_params(0)), (build_O, o_params(4)), (build_O, o_params(6, k0=F(-1))),
])
def test_xy_recurrences(ctx, builder, params):
    h = builder(params, ctx)
    rep = check_xy_recurrences(h, ctx)
    assert rep.ok, rep.failures()
    xy = xy_actions(h)
    assert xy.X == h.t[3] @ h.t[0] and xy.Y == h.t[0] @ h.t[1]
    assert xy.X @ xy.X_inv == Matrix.identity(h.dim)


def test_xy_boundary_rows(ctx):
    p = e_params(5)
    h = build_E(p, ctx)
    xy = xy_actions(h)
    k0, k1, _, k3 = p.ks
    n = h.dim
    # v0 is killed by 1 - k0 k3 X^-1, v_d by 1 - k0 k1 q^(d+1) Y
    assert not any((Matrix.identity(n) - xy.X_inv.scale(k0 * k3)).column(0))
    assert not any((Matrix.identity(n) - xy.Y.scale(k0 * k1 * Q ** 6)).column(5))


def test_recurrence_refused_on_twist(ctx):
    with pytest.raises(ValueError):
        check_xy_recurrences(build_h(e_params(3), ctx, 1), ctx)


def test_rho2_even(ctx):
    p = e_params(5)
    h = build_E(p, ctx)
    assert rho(h, 2, ctx) == (1 - Q ** 2) * (1 - p.k0 ** 2 * Q ** 2)


def test_pullback_against_xy(ctx):
    h = build_E(e_params(5), ctx)
    act = pullback(h, ctx)
    xy = xy_actions(h)
    assert act.A == xy.Y + xy.Y_inv
    assert act.B == xy.X + xy.X_inv
    # t0 commutes with the pulled back generators
    for m in act.generators:
        assert h.t[0].commutator(m).is_zero()


def test_pullback_twist2_is_q_shifted(ctx):
    h = build_E(e_params(5), ctx)
    xy = xy_actions(h)
    act = pullback(twist_z4(h, 2), ctx)
    assert act.A == xy.Y.scale(Q) + xy.Y_inv.scale(1 / Q)
    assert act.B == xy.X.scale(Q) + xy.X_inv.scale(1 / Q)


def test_criterion_examples():
    assert irr_criterion_O(OParams(0, 3, 5, 7, F(1, 210)))
    # k0 k1 k2 k3 = q^-1 is excluded
    k0 = F(1, 4)
    assert not irr_criterion_E(EParams(3, k0, 3, 5, 1 / (Q * k0 * 15)))
    assert irr_criterion_O(OParams(2, 1, 3, 5, Q ** -3 / 15))
    assert not irr_criterion_O(OParams(2, F(1, 2), 3, 5, Q ** -3 * 2 / 15))


@pytest.mark.parametrize("d", [1, 3, 5])
def test_E_criterion_matches_burnside(ctx, d):
    k0 = Q ** (-(d + 1) // 2)
    good = EParams(d, k0, F(3), F(5), F(7))
    bad = EParams(d, k0, F(3), F(5), Q ** (-d) / (k0 * 15))
    for p in (good, bad):
        assert is_absolutely_irreducible(list(build_E(p, ctx).t)) == irr_criterion_E(p)


def test_t0_eigenspaces_of_E(ctx):
    d = 5
    p = e_params(d)
    h = build_E(p, ctx)
    assert eigenspace(h.t[0], p.k0).dim == (d + 3) // 2
    assert eigenspace(h.t[0], 1 / p.k0).dim == (d - 1) // 2
