from fractions import Fraction

import pytest

from awlattice.aw import (
    AWParams,
    build_vd,
    casimir,
    check_aw_relations,
    find_intertwiner,
    make_action,
    aw_irreducible_by_criterion,
    matches_traces,
    trace_identify,
    twist_z2,
)
from awlattice.exact import Matrix, QContext, RationalityError
from awlattice.lattice import is_absolutely_irreducible

F = Fraction


def inv_pair(x):
    return {x, 1 / x}


def test_params_reject_zero():
    with pytest.raises(ValueError):
        AWParams(1, 0, 2, 3)
    with pytest.raises(ValueError):
        AWParams(-1, 1, 2, 3)


def test_d0_module(ctx):
    a, b, c = F(3), F(5), F(7)
    act = build_vd(AWParams(0, a, b, c), ctx)
    assert act.A == Matrix([[a + 1 / a]])
    assert act.B == Matrix([[b + 1 / b]])
    want_gamma = (a + 1 / a) * (b + 1 / b) + (c + 1 / c) * (F(2) + F(1, 2))
    assert act.gamma.scalar_value() == want_gamma
    assert check_aw_relations(act, ctx).ok


def test_phi1_hand_evaluated(ctx):
    # a=b=c=3, q=2, d=1: (1/9) * 4 * (3/2) * (-3/2) * (-13) * (-1)
    act = build_vd(AWParams(1, 3, 3, 3), ctx)
    assert act.B[0, 1] == -13
    assert act.A == Matrix([[F(3, 2) + F(2, 3), 0], [1, F(6) + F(1, 6)]])


def test_bidiagonal_shape(ctx):
    act = build_vd(AWParams(4, F(2, 3), 5, F(-1, 7)), ctx)
    n = act.dim
    for i in range(n):
        for j in range(n):
            if i not in (j, j + 1):
                assert act.A[i, j] == 0
            if j not in (i, i + 1):
                assert act.B[i, j] == 0
        if i + 1 < n:
            assert act.A[i + 1, i] == 1


@pytest.mark.parametrize("d", range(0, 7))
def test_relations_and_scalar_casimir(ctx, d):
    act = build_vd(AWParams(d, F(3, 2), F(-5), F(7, 3)), ctx)
    assert check_aw_relations(act, ctx).ok
    for m in (act.alpha, act.beta, act.gamma):
        assert m.scalar_value() is not None
    omega = act.omega.scalar_value()
    assert omega is not None
    # independent evaluation of the Casimir polynomial
    q = ctx.pow(1)
    A, B, C = act.A, act.B, act.C
    al, be, ga = act.scalars()
    direct = (q * (A @ B @ C) + q * q * (A @ A) + (B @ B) * (1 / (q * q)) + q * q * (C @ C)
              - A * (q * al) - B * (be / q) - C * (q * ga))
    assert direct == Matrix.scalar_matrix(act.dim, omega)


def test_perturbed_action_fails_relations(ctx):
    act = build_vd(AWParams(2, 3, 5, 7), ctx)
    bad = make_action(act.A + Matrix.identity(3), act.B, act.C, act.alpha, act.beta, act.gamma, ctx)
    rep = check_aw_relations(bad, ctx)
    assert not rep.ok
    assert any("relation" in c.name for c in rep.failures())


def test_d0_omega_trivially_central(ctx):
    act = build_vd(AWParams(0, 2, 3, 5), ctx)
    assert act.omega.rows == 1
    assert check_aw_relations(act, ctx).ok


def test_criterion_examples(ctx):
    assert aw_irreducible_by_criterion(AWParams(0, 1, 1, 1), ctx)
    assert aw_irreducible_by_criterion(AWParams(2, 5, 5, 5), ctx)
    for d in range(1, 6):
        # abc = q^(1-d) sits at i = 1
        a, b = F(3), F(5)
        c = ctx.pow(1 - d) / (a * b)
        assert not aw_irreducible_by_criterion(AWParams(d, a, b, c), ctx)


def test_trace_identify_recovers_params(ctx):
    for d in range(0, 5):
        p = AWParams(d, F(3), F(-2, 5), F(7, 2))
        act = build_vd(p, ctx)
        pairs = trace_identify(act, ctx)
        for pair, x in zip(pairs, (p.a, p.b, p.c)):
            assert set(pair) == inv_pair(x)
            assert pair[0] * pair[1] == 1
        assert matches_traces(act, (p.a, p.b, p.c), ctx)
        assert matches_traces(act, (1 / p.a, p.b, 1 / p.c), ctx)


def test_trace_identify_d0_quadratic(ctx):
    act = build_vd(AWParams(0, F(4), F(2), F(3)), ctx)
    assert set(trace_identify(act, ctx)[0]) == {F(4), F(1, 4)}


def test_trace_identify_irrational_refused():
    ctx = QContext(F(2))
    act = build_vd(AWParams(0, 1, 1, 1), ctx)
    # a 1x1 module with tr A = 1 has x^2 - x + 1, no rational roots
    odd = make_action(Matrix([[1]]), act.B, act.C, act.alpha, act.beta, act.gamma, ctx)
    with pytest.raises(RationalityError):
        trace_identify(odd, ctx)


def test_twist_is_involution(ctx):
    act = build_vd(AWParams(3, F(2, 3), 5, 7), ctx)
    tw = twist_z2(act, ctx)
    assert tw.A == act.B and tw.B == act.A
    assert tw.A.trace() == act.B.trace()
    back = twist_z2(tw, ctx)
    assert (back.A, back.B, back.C) == (act.A, act.B, act.C)
    assert check_aw_relations(tw, ctx).ok


@pytest.mark.parametrize("d", range(0, 5))
def test_twist_isomorphic_to_swapped(ctx, d):
    a, b, c = F(3), F(-5, 2), F(7)
    p = AWParams(d, a, b, c)
    assert aw_irreducible_by_criterion(p, ctx)
    tw = twist_z2(build_vd(p, ctx), ctx)
    other = build_vd(AWParams(d, b, a, c), ctx)
    T = find_intertwiner(tw, other)
    assert T is not None and T.is_invertible()
    for x1, x2 in zip(tw.generators, other.generators):
        assert T @ x1 == x2 @ T


def test_intertwiner_examples(ctx):
    act = build_vd(AWParams(2, 3, 5, 7), ctx)
    T = find_intertwiner(act, act)
    assert T is not None
    other = build_vd(AWParams(2, 3, 5, 11), ctx)
    assert find_intertwiner(act, other) is None
    smaller = build_vd(AWParams(1, 3, 5, 7), ctx)
    assert find_intertwiner(act, smaller) is None


def test_inverted_parameters_give_isomorphic_modules(ctx):
    # the trace quadratics cannot see inversion, so neither may the module
    p = AWParams(3, F(3), F(5, 2), F(-7))
    act = build_vd(p, ctx)
    for abc in ((1 / p.a, p.b, p.c), (p.a, 1 / p.b, p.c), (p.a, p.b, 1 / p.c)):
        assert find_intertwiner(act, build_vd(AWParams(3, *abc), ctx)) is not None


@pytest.mark.parametrize("d", range(1, 5))
def test_criterion_matches_burnside(ctx, d):
    for a, b in ((F(3), F(5)), (F(2, 3), F(-7))):
        good = AWParams(d, a, b, F(11))
        bad = AWParams(d, a, b, ctx.pow(2 - d - 1) / (a * b))
        for p in (good, bad):
            act = build_vd(p, ctx)
            assert is_absolutely_irreducible(list(act.generators)) == aw_irreducible_by_criterion(p, ctx)


def test_casimir_helper_matches_stored(ctx):
    act = build_vd(AWParams(2, 3, 5, 7), ctx)
    assert casimir(act.A, act.B, act.C, act.alpha, act.beta, act.gamma, ctx) == act.omega
