"""Submodule lattices of pulled-back DAHA modules.

The enumeration runs upward from ``{0}``: the covers of a submodule ``N`` are
the preimages of the minimal submodules of ``V/N``.  Minimal submodules are
found by spinning seed vectors.  Because every ``c_i`` is nonzero over the
rationals, ``t0`` is a polynomial in ``alpha`` and so preserves every
Askey-Wilson submodule; an irreducible subquotient therefore sits inside one
``t0``-eigenspace.  Inside an eigenspace, an operator with rational eigenvalues
and one-dimensional eigenspaces pins down finitely many seed lines that meet
every minimal submodule.  When no such operator exists the result is marked
INCONCLUSIVE instead of being guessed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Sequence

from .aw import (
    AWAction,
    AWParams,
    build_vd,
    find_intertwiner,
    make_action,
    matches_traces,
    trace_identify,
    twist_z2,
)
from .daha import IRR_CRITERIA, HModule, pullback
from .exact import (
    Matrix,
    QContext,
    RationalityError,
    Subspace,
    charpoly,
    eigenspace,
    kernel,
    lift_subspace,
    project_subspace,
    quadratic_roots,
    quotient_operator,
    rational_roots,
    restrict_operator,
    spin,
    spin_maps,
    subspace_contains,
)

CONFIRMED = "CONFIRMED"
MISMATCH = "MISMATCH"
INCONCLUSIVE = "INCONCLUSIVE"

__all__ = [
    "CONFIRMED",
    "MISMATCH",
    "INCONCLUSIVE",
    "SeedPropertyError",
    "EigenReport",
    "SubmoduleNode",
    "Factor",
    "LatticeReport",
    "Prediction",
    "Verdict",
    "Analysis",
    "t0_eigen",
    "eigenspace_is_submodule",
    "seed_vectors",
    "minimal_submodules",
    "lattice_of",
    "full_lattice",
    "subquotient_action",
    "predicted_factors",
    "expected_shape",
    "identify_factors",
    "summary_verdict",
    "analyze",
    "analyze_vd",
    "algebra_dimension",
    "is_absolutely_irreducible",
    "irreducible_by_search",
    "brute_force_submodules",
]


class SeedPropertyError(RuntimeError):
    """No operator certifies a finite seed set for some eigenspace."""


# --------------------------------------------------------------------------
# t0 eigenstructure


@dataclass(frozen=True)
class EigenReport:
    roots: tuple[Fraction, Fraction]
    spaces: tuple[Subspace, Subspace]
    dim: int

    @property
    def dims(self) -> tuple[int, int]:
        return self.spaces[0].dim, self.spaces[1].dim

    @property
    def eigenvalues(self) -> tuple[Fraction, ...]:
        """Distinct roots that actually occur as eigenvalues."""
        out = []
        for r, s in zip(self.roots, self.spaces):
            if s.dim and r not in out:
                out.append(r)
        return tuple(out)

    @property
    def diagonalizable(self) -> bool:
        return sum(self.space(t).dim for t in self.eigenvalues) == self.dim

    def space(self, theta: Fraction) -> Subspace:
        for r, s in zip(self.roots, self.spaces):
            if r == theta:
                return s
        return Subspace.zero(self.dim)

    def to_dict(self) -> dict:
        from .exact import format_scalar

        return {
            "roots": [format_scalar(r) for r in self.roots],
            "eigenvalues": [format_scalar(r) for r in self.eigenvalues],
            "eigenspace_dims": [self.space(t).dim for t in self.eigenvalues],
            "diagonalizable": self.diagonalizable,
        }


def t0_eigen(h: HModule) -> EigenReport:
    """Eigenvalues of t0 from its quadratic x^2 - c0 x + 1 and their eigenspaces."""
    r1, r2 = quadratic_roots(Fraction(1), -h.c[0], Fraction(1))
    t0 = h.t[0]
    return EigenReport((r1, r2), (eigenspace(t0, r1), eigenspace(t0, r2)), h.dim)


def eigenspace_is_submodule(h: HModule, theta: Fraction, ctx: QContext) -> bool:
    act = pullback(h, ctx)
    space = eigenspace(h.t[0], theta)
    return all(space.is_invariant(m) for m in act.generators)


# --------------------------------------------------------------------------
# seeds and minimal submodules


@dataclass(frozen=True)
class SeedCertificate:
    region: Subspace
    theta: Fraction | None
    operator: str


def _regions(t0: Matrix | None, n: int) -> list[tuple[Fraction | None, Subspace]]:
    if t0 is None:
        return [(None, Subspace.full(n))]
    roots = rational_roots(charpoly(t0))
    if sum(roots.values()) != n:
        raise SeedPropertyError("t0 has non-rational eigenvalues on this module")
    return [(theta, eigenspace(t0, theta)) for theta in sorted(roots)]


def _eigenlines(op: Matrix) -> list[tuple[Fraction, ...]] | None:
    """One vector per eigenvalue when op splits over Q with 1-dim eigenspaces."""
    n = op.rows
    roots = rational_roots(charpoly(op))
    if sum(roots.values()) != n:
        return None
    lines = []
    for lam in sorted(roots):
        sp = eigenspace(op, lam)
        if sp.dim != 1:
            return None
        lines.append(sp.basis[0])
    return lines


def seed_vectors(
    seed_ops: Sequence[tuple[str, Matrix]],
    t0: Matrix | None = None,
) -> tuple[list[tuple[Fraction, ...]], list[SeedCertificate]]:
    """Finite vector set meeting every minimal submodule.

    Raises SeedPropertyError when some region has no certifying operator.
    """
    n = seed_ops[0][1].rows
    seeds, certs = [], []
    for theta, region in _regions(t0, n):
        if region.is_zero():
            continue
        for name, op in seed_ops:
            if not region.is_invariant(op):
                continue
            lines = _eigenlines(restrict_operator(op, region))
            if lines is None:
                continue
            for coords in lines:
                v = [Fraction(0)] * n
                for c, b in zip(coords, region.basis):
                    if c:
                        v = [x + c * y for x, y in zip(v, b)]
                seeds.append(tuple(v))
            certs.append(SeedCertificate(region, theta, name))
            break
        else:
            where = "the whole module" if theta is None else f"the t0-eigenspace for {theta}"
            raise SeedPropertyError(f"no seed operator certifies {where}")
    return seeds, certs


def _minimal(ops, t0, seed_ops) -> tuple[list[Subspace], list[SeedCertificate]]:
    n = ops[0].rows
    if n == 0:
        return [], []
    seeds, certs = seed_vectors(seed_ops, t0)
    cands = []
    for v in seeds:
        s = spin(Subspace.span([v], n), ops)
        if s not in cands:
            cands.append(s)
    mins = [s for s in cands if not any(o < s for o in cands)]
    return sorted(mins, key=Subspace.sort_key), certs


def _seed_ops(act: AWAction) -> list[tuple[str, Matrix]]:
    return [("A", act.A), ("B", act.B), ("C", act.C)]


def minimal_submodules(act: AWAction, t0: Matrix | None = None) -> list[Subspace]:
    """All minimal Askey-Wilson submodules of ``act``.

    ``t0`` is the commuting DAHA generator when the module is a pullback; it
    localises the search to its eigenspaces.
    """
    return _minimal(act.generators, t0, _seed_ops(act))[0]


# --------------------------------------------------------------------------
# lattice


@dataclass
class SubmoduleNode:
    space: Subspace
    label: str | None = None

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass
class Factor:
    lower: int
    upper: int
    dim: int
    t0_scalar: Fraction | None = None
    traces: tuple[Fraction, Fraction, Fraction] | None = None
    prediction: str | None = None
    params: tuple | None = None
    trace_ok: bool | None = None
    intertwiner_ok: bool | None = None
    root_pairs: tuple | None = None
    candidates: list[int] = field(default_factory=list)


@dataclass
class LatticeReport:
    dim: int
    nodes: list[SubmoduleNode]
    covers: list[tuple[int, int]]
    status: str = CONFIRMED
    shape: str = "other"
    notes: list[str] = field(default_factory=list)
    factors: list[Factor] = field(default_factory=list)
    certificates: list[str] = field(default_factory=list)

    def index(self, space: Subspace) -> int | None:
        for i, nd in enumerate(self.nodes):
            if nd.space == space:
                return i
        return None

    @property
    def spaces(self) -> list[Subspace]:
        return [nd.space for nd in self.nodes]

    def node_dims(self) -> list[int]:
        return [nd.dim for nd in self.nodes]

    def maximal_chains(self) -> list[list[int]]:
        top = len(self.nodes) - 1
        up: dict[int, list[int]] = {}
        for a, b in self.covers:
            up.setdefault(a, []).append(b)
        chains = []

        def walk(path):
            last = path[-1]
            if last == top:
                chains.append(path)
                return
            for nxt in up.get(last, []):
                walk(path + [nxt])

        walk([0])
        return chains

    def composition_factor_dims(self) -> list[list[int]]:
        return [sorted(self.nodes[b].dim - self.nodes[a].dim for a, b in zip(ch, ch[1:]))
                for ch in self.maximal_chains()]

    def atoms(self) -> list[int]:
        return [b for a, b in self.covers if a == 0]

    def socle(self) -> Subspace:
        s = Subspace.zero(self.dim)
        for i in self.atoms():
            s = s + self.nodes[i].space
        return s

    def is_closed(self) -> bool:
        spaces = set(self.spaces)
        for u, w in combinations(self.spaces, 2):
            if (u + w) not in spaces or (u & w) not in spaces:
                return False
        return True

    def jordan_holder_ok(self) -> bool:
        dims = self.composition_factor_dims()
        return all(x == dims[0] for x in dims)

    def middle_dims(self) -> tuple[int, ...]:
        return tuple(sorted((nd.dim for nd in self.nodes[1:-1]), reverse=True))


def _classify(rep: LatticeReport) -> str:
    k = len(rep.nodes)
    spaces = rep.spaces
    comparable = all(u <= w or w <= u for u, w in combinations(spaces, 2))
    if comparable and k in (2, 3, 4):
        return f"chain{k}"
    if k == 4:
        m1, m2 = spaces[1], spaces[2]
        if not (m1 <= m2 or m2 <= m1) and sorted(rep.covers) == [(0, 1), (0, 2), (1, 3), (2, 3)]:
            return "diamond"
    return "other"


def subquotient_action(act: AWAction, lower: Subspace, upper: Subspace, ctx: QContext) -> AWAction:
    """The induced action on upper/lower."""
    sub = project_subspace(upper, lower)
    mats = [restrict_operator(quotient_operator(m, lower), sub)
            for m in (act.A, act.B, act.C, act.alpha, act.beta, act.gamma)]
    return make_action(*mats, ctx, **act.provenance)


def _subquotient_op(op: Matrix, lower: Subspace, upper: Subspace) -> Matrix:
    return restrict_operator(quotient_operator(op, lower), project_subspace(upper, lower))


def lattice_of(act: AWAction, ctx: QContext, t0: Matrix | None = None, certify: bool = True) -> LatticeReport:
    """Enumerate every Askey-Wilson submodule of ``act``."""
    n = act.dim
    zero, full = Subspace.zero(n), Subspace.full(n)
    found = [zero]
    covers: set[tuple[Subspace, Subspace]] = set()
    notes, certs = [], []
    status = CONFIRMED
    queue = [zero]
    while queue:
        N = queue.pop(0)
        if N == full:
            continue
        ops = [quotient_operator(m, N) for m in act.generators]
        qt0 = quotient_operator(t0, N) if t0 is not None else None
        seeds = list(zip("ABC", ops))
        try:
            mins, cert = _minimal(ops, qt0, seeds)
        except SeedPropertyError as exc:
            status = INCONCLUSIVE
            notes.append(f"above a {N.dim}-dimensional node: {exc}")
            continue
        certs.extend(f"dim {N.dim} quotient: {c.operator} on theta={c.theta}" for c in cert)
        for M in mins:
            L = lift_subspace(M, N)
            covers.add((N, L))
            if L not in found:
                found.append(L)
                queue.append(L)
    if full not in found:
        found.append(full)
    found.sort(key=Subspace.sort_key)
    nodes = [SubmoduleNode(s) for s in found]
    idx = {s: i for i, s in enumerate(found)}
    rep = LatticeReport(
        dim=n,
        nodes=nodes,
        covers=sorted((idx[a], idx[b]) for a, b in covers),
        status=status,
        notes=notes,
        certificates=certs,
    )
    rep.shape = _classify(rep)
    if status == CONFIRMED:
        _self_check(rep, act, t0, certify)
    return rep


def _self_check(rep: LatticeReport, act: AWAction, t0: Matrix | None, certify: bool):
    for nd in rep.nodes:
        if not all(nd.space.is_invariant(m) for m in act.generators):
            rep.status = MISMATCH
            rep.notes.append(f"node of dim {nd.dim} is not invariant")
    if not rep.is_closed():
        rep.status = MISMATCH
        rep.notes.append("node set is not closed under sum and intersection")
    if not rep.jordan_holder_ok():
        rep.status = MISMATCH
        rep.notes.append("maximal chains disagree on composition factor dimensions")
    if t0 is not None:
        spaces = set(rep.spaces)
        if any(nd.space.image(t0) not in spaces for nd in rep.nodes):
            rep.status = MISMATCH
            rep.notes.append("t0 does not permute the nodes")
    if certify:
        for a, b in rep.covers:
            lo, hi = rep.nodes[a].space, rep.nodes[b].space
            ops = [_subquotient_op(m, lo, hi) for m in act.generators]
            qt0 = _subquotient_op(t0, lo, hi) if t0 is not None else None
            try:
                mins, _ = _minimal(ops, qt0, list(zip("ABC", ops)))
            except SeedPropertyError as exc:
                rep.status = INCONCLUSIVE
                rep.notes.append(f"cover {a}->{b}: {exc}")
                continue
            if len(mins) != 1 or not mins[0].is_full():
                rep.status = MISMATCH
                rep.notes.append(f"cover {a}->{b} is not irreducible")


def full_lattice(act: AWAction, h: HModule | None, ctx: QContext) -> LatticeReport:
    rep = lattice_of(act, ctx, h.t[0] if h is not None else None)
    if h is not None:
        eig = t0_eigen(h)
        for theta in eig.eigenvalues:
            i = rep.index(eig.space(theta))
            if i is not None and rep.nodes[i].label is None:
                rep.nodes[i].label = f"V({theta})"
    return rep


# --------------------------------------------------------------------------
# predictions from the classification


@dataclass(frozen=True)
class Prediction:
    name: str
    d: int
    abc: tuple[Fraction, Fraction, Fraction]
    # the same factor written as the Z/2Z twist of V_d(abc_twisted), when stated that way
    abc_twisted: tuple[Fraction, Fraction, Fraction] | None = None


def predicted_factors(h: HModule, ctx: QContext) -> list[Prediction] | None:
    """Composition factors predicted for an irreducible E^eps or untwisted O module."""
    k0, k1, k2, k3 = h.params.ks
    d, qp, eps = h.d, ctx.pow, h.twist
    if h.family == "E":
        if d % 2 == 0:
            return None
        hi, lo, up = (d + 1) // 2, (d - 1) // 2, (d + 3) // 2
        if eps == 0:
            abc = (k0 * k1 * qp(hi), k0 * k3 * qp(hi), k0 * k2 * qp(hi))
            out = [Prediction(f"E(k0) = V_{hi}", hi, abc)]
            if d >= 3:
                out.append(Prediction(f"E/E(k0) = V_{(d - 3) // 2}", (d - 3) // 2, abc))
            return out
        if eps == 1:
            sub = (k0 * k3 * qp(hi), k0 * k1 * qp(up), k0 * k2 * qp(hi))
            quo = (k0 * k3 * qp(hi), k0 * k1 * qp(lo), k0 * k2 * qp(hi))
            return [
                Prediction(f"E1(k1^-1) = V_{lo}", lo, sub, (sub[1], sub[0], sub[2])),
                Prediction(f"E1/E1(k1^-1) = V_{lo}", lo, quo, (quo[1], quo[0], quo[2])),
            ]
        if eps == 2:
            base = (k0 * k1 * qp(hi), k0 * k3 * qp(hi))
            return [
                Prediction(f"E2(k2^-1) = V_{lo}", lo, base + (k0 * k2 * qp(up),)),
                Prediction(f"E2/E2(k2^-1) = V_{lo}", lo, base + (k0 * k2 * qp(lo),)),
            ]
        rest = (k0 * k1 * qp(hi), k0 * k2 * qp(hi))
        return [
            Prediction(f"E3(k3) = V_{lo}", lo, (k0 * k3 * qp(lo),) + rest),
            Prediction(f"E3/E3(k3) = V_{lo}", lo, (k0 * k3 * qp(up),) + rest),
        ]
    if h.family == "O" and eps == 0:
        half = d // 2
        if d == 0 or k0 * k0 != 1:
            top = (k0 * k1 * qp(half), k0 * k3 * qp(half), k0 * k2 * qp(half))
            out = [Prediction(f"O(k0) = V_{half}", half, top)]
            if d >= 2:
                nxt = (k0 * k1 * qp(half + 1), k0 * k3 * qp(half + 1), k0 * k2 * qp(half + 1))
                out.append(Prediction(f"O/O(k0) = V_{half - 1}", half - 1, nxt))
            return out
        nxt = (k0 * k1 * qp(half + 1), k0 * k3 * qp(half + 1), k0 * k2 * qp(half + 1))
        return [
            Prediction(f"O(k0)' = V_{half - 1}", half - 1, nxt),
            Prediction("O(k0)/O(k0)' = V_0", 0, (k0 * k1, k0 * k3, k0 * k2)),
            Prediction(f"O/O(k0) = V_{half - 1}", half - 1, nxt),
        ]
    return None


def expected_shape(h: HModule) -> tuple[str, tuple[int, ...]] | None:
    """Lattice shape and middle node dimensions predicted for an irreducible module."""
    d, eps = h.d, h.twist
    k = h.params.ks
    if h.family == "E":
        if eps == 0:
            return ("chain2", ()) if d == 1 else ("diamond", ((d + 3) // 2, (d - 1) // 2))
        half = (d + 1) // 2
        if k[eps] ** 2 == 1:
            return ("chain3", (half,))
        return ("diamond", (half, half))
    if h.family == "O" and eps == 0:
        if d == 0:
            return ("chain2", ())
        if k[0] ** 2 == 1:
            return ("chain4", (d // 2 + 1, d // 2))
        return ("diamond", (d // 2 + 1, d // 2))
    return None


def identify_factors(rep: LatticeReport, act: AWAction, h: HModule | None, ctx: QContext,
                     intertwine: bool = True) -> LatticeReport:
    """Label every covering quotient by its V_d'(a, b, c) model."""
    preds = predicted_factors(h, ctx) if h is not None else None
    rep.factors = []
    for a, b in rep.covers:
        lo, hi = rep.nodes[a].space, rep.nodes[b].space
        fac = subquotient_action(act, lo, hi, ctx)
        f = Factor(a, b, fac.dim, traces=tuple(m.trace() for m in fac.generators))
        if h is not None:
            f.t0_scalar = _subquotient_op(h.t[0], lo, hi).scalar_value()
        try:
            f.root_pairs = trace_identify(fac, ctx)
        except RationalityError:
            f.root_pairs = None
        if preds is not None:
            traced = [i for i, p in enumerate(preds)
                      if p.d + 1 == fac.dim and matches_traces(fac, p.abc, ctx)]
            f.trace_ok = bool(traced)
            if intertwine and traced:
                f.candidates = [i for i in traced if _intertwines(fac, preds[i], ctx)]
                f.intertwiner_ok = bool(f.candidates)
            else:
                f.candidates = traced
        elif f.root_pairs is not None:
            # no prediction to test against: name the model up to inverting each parameter
            f.prediction = f"V_{fac.dim - 1} up to inversion"
            f.params = (fac.dim - 1,) + tuple(max(pair) for pair in f.root_pairs)
        rep.factors.append(f)
    if preds is None:
        return rep
    by_edge = {(f.lower, f.upper): f for f in rep.factors}
    chains_ok = True
    for ch in rep.maximal_chains():
        edges = [by_edge[e] for e in zip(ch, ch[1:])]
        perm = None
        if len(edges) == len(preds):
            perm = next((pm for pm in permutations(range(len(preds)))
                         if all(i in f.candidates for f, i in zip(edges, pm))), None)
        if perm is None:
            chains_ok = False
            continue
        for f, i in zip(edges, perm):
            if f.prediction is None:
                f.prediction, f.params = preds[i].name, (preds[i].d,) + preds[i].abc
    for f in rep.factors:
        if f.prediction is None and f.candidates:
            p = preds[f.candidates[0]]
            f.prediction, f.params = p.name, (p.d,) + p.abc
    if rep.status == CONFIRMED:
        bad = [f for f in rep.factors if not f.trace_ok or f.intertwiner_ok is False]
        if bad:
            rep.status = MISMATCH
            rep.notes.append(f"{len(bad)} composition factor(s) do not match the predicted models")
        if not chains_ok:
            rep.status = MISMATCH
            rep.notes.append("a maximal chain does not carry the predicted factor multiset")
    return rep


def _intertwines(fac: AWAction, p: Prediction, ctx: QContext) -> bool:
    model = build_vd(AWParams(p.d, *p.abc), ctx)
    if find_intertwiner(fac, model) is None:
        return False
    if p.abc_twisted is not None:
        twisted = twist_z2(build_vd(AWParams(p.d, *p.abc_twisted), ctx), ctx)
        if find_intertwiner(fac, twisted) is None:
            return False
    return True


# --------------------------------------------------------------------------
# summary theorem and corollaries


@dataclass
class Verdict:
    status: str
    clauses: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.clauses.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.clauses)

    def to_dict(self) -> dict:
        return {"status": self.status,
                "clauses": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.clauses]}


def _is_irreducible_quotient(act: AWAction, t0: Matrix, sub: Subspace) -> bool:
    ops = [quotient_operator(m, sub) for m in act.generators]
    mins, _ = _minimal(ops, quotient_operator(t0, sub), list(zip("ABC", ops)))
    return len(mins) == 1 and mins[0].is_full()


def summary_verdict(h: HModule, ctx: QContext, rep: LatticeReport | None = None,
                    eig: EigenReport | None = None) -> Verdict:
    act = pullback(h, ctx)
    eig = eig or t0_eigen(h)
    rep = rep or full_lattice(act, h, ctx)
    v = Verdict(CONFIRMED)
    if rep.status == INCONCLUSIVE:
        v.status = INCONCLUSIVE
        v.add("lattice complete", False, "; ".join(rep.notes))
        return v
    n, shape, spaces = h.dim, rep.shape, rep.spaces
    thetas = eig.eigenvalues
    if not eig.diagonalizable:
        theta = thetas[0]
        v.add("unique eigenvalue in {1, -1}", len(thetas) == 1 and theta in (1, -1), f"eigenvalues {thetas}")
        vt = eig.space(theta)
        if n % 2 == 0:
            v.add("even dimension gives chain {0} < V(theta) < V",
                  shape == "chain3" and spaces[1] == vt, f"shape {shape}")
        else:
            ok = shape == "chain4" and spaces[2] == vt and spaces[1].dim == vt.dim - 1
            v.add("odd dimension gives chain {0} < V(theta)' < V(theta) < V", ok, f"shape {shape}")
    elif len(thetas) == 1:
        v.add("one eigenvalue gives an irreducible module of dim <= 2",
              shape == "chain2" and n <= 2, f"shape {shape}, dim {n}")
    else:
        th = [t for t in thetas if t not in (1, -1)]
        mids = set(spaces[1:-1])
        v.add("two eigenvalues give the diamond of V(theta), V(theta^-1)",
              shape == "diamond" and len(th) == 2 and mids == {eig.space(t) for t in thetas},
              f"shape {shape}")
    for theta in thetas:
        vt = eig.space(theta)
        ok = vt.is_full() or _is_irreducible_quotient(act, h.t[0], vt)
        v.add(f"V/V({theta}) is zero or irreducible", ok)
    completely_reducible = rep.socle().is_full()
    v.add("completely reducible iff t0 diagonalizable", completely_reducible == eig.diagonalizable,
          f"socle dim {rep.socle().dim}, diagonalizable {eig.diagonalizable}")
    if not v.ok:
        v.status = MISMATCH
    return v


# --------------------------------------------------------------------------
# full pipeline


@dataclass
class Analysis:
    h: HModule
    action: AWAction
    eigen: EigenReport
    lattice: LatticeReport
    verdict: Verdict | None
    expected: tuple[str, tuple[int, ...]] | None
    status: str
    irreducible: bool = True

    @property
    def shape_ok(self) -> bool | None:
        if self.expected is None:
            return None
        return (self.lattice.shape, self.lattice.middle_dims()) == self.expected


def analyze(h: HModule, ctx: QContext, intertwine: bool = True) -> Analysis:
    """build -> pullback -> lattice -> factor identification -> verdict.

    Theorem conformance is only claimed when the module passes its
    irreducibility criterion; otherwise the lattice is reported as computed.
    """
    act = pullback(h, ctx)
    eig = t0_eigen(h)
    rep = full_lattice(act, h, ctx)
    irreducible = IRR_CRITERIA[h.family](h.params)
    if not irreducible:
        identify_factors(rep, act, None, ctx)
        return Analysis(h, act, eig, rep, None, None, rep.status, False)
    identify_factors(rep, act, h, ctx, intertwine=intertwine)
    verdict = summary_verdict(h, ctx, rep, eig)
    expected = expected_shape(h)
    statuses = [rep.status, verdict.status]
    if expected is not None and rep.status != INCONCLUSIVE:
        if (rep.shape, rep.middle_dims()) != expected:
            statuses.append(MISMATCH)
            rep.notes.append(f"expected {expected[0]} with middle dims {expected[1]}")
    if INCONCLUSIVE in statuses:
        status = INCONCLUSIVE
    elif MISMATCH in statuses:
        status = MISMATCH
    else:
        status = CONFIRMED
    return Analysis(h, act, eig, rep, verdict, expected, status)


def analyze_vd(act: AWAction, ctx: QContext, irreducible: bool) -> LatticeReport:
    """Lattice of a standalone V_d; an irreducible one must be the two-node chain."""
    rep = lattice_of(act, ctx)
    identify_factors(rep, act, None, ctx)
    if irreducible and rep.status == CONFIRMED and rep.shape != "chain2":
        rep.status = MISMATCH
        rep.notes.append("criterion says irreducible but proper submodules were found")
    return rep


# --------------------------------------------------------------------------
# brute-force oracles


def algebra_dimension(ops: Sequence[Matrix]) -> int:
    """Dimension of the unital algebra generated by ops."""
    n = ops[0].rows

    def left(op):
        def f(v):
            m = Matrix._raw(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), n)
            return [x for row in (op @ m).entries for x in row]
        return f

    eye = [x for row in Matrix.identity(n).entries for x in row]
    return spin_maps([eye], n * n, [left(op) for op in ops]).dim


def is_absolutely_irreducible(ops: Sequence[Matrix]) -> bool:
    """Burnside: irreducible over the algebraic closure iff the ops generate all n x n matrices."""
    n = ops[0].rows
    return algebra_dimension(ops) == n * n


def irreducible_by_search(ops: Sequence[Matrix], seed_ops: Sequence[tuple[str, Matrix]],
                          t0: Matrix | None = None) -> bool:
    """Irreducible iff every seed spins to the whole space under ops."""
    n = ops[0].rows
    seeds, _ = seed_vectors(seed_ops, t0)
    return all(spin(Subspace.span([v], n), ops).is_full() for v in seeds)


def _divisor_kernels(op: Matrix) -> list[Subspace] | None:
    roots = rational_roots(charpoly(op))
    n = op.rows
    if sum(roots.values()) != n:
        return None
    if any(eigenspace(op, lam).dim != 1 for lam in roots):
        return None
    lams = sorted(roots)
    # ker prod (op - lam)^e is the direct sum of the ker (op - lam)^e, the factors being coprime
    pieces = []
    for lam in lams:
        shifted = op - Matrix.scalar_matrix(n, lam)
        acc, ks = Matrix.identity(n), [Subspace.zero(n)]
        for _ in range(roots[lam]):
            acc = acc @ shifted
            ks.append(kernel(acc))
        pieces.append(ks)
    out = []
    for choice in product(*pieces):
        s = Subspace.zero(n)
        for k in choice:
            s = s + k
        out.append(s)
    return out


def brute_force_submodules(act: AWAction, t0: Matrix | None = None) -> list[Subspace] | None:
    """Every submodule, by exhaustive search over the invariant subspaces of a cyclic operator.

    The invariant subspaces of a cyclic operator with split characteristic
    polynomial are exactly the kernels of the monic divisors of that
    polynomial.  Candidates are tried from A, B, C and A + u t0; returns
    None when none of them is cyclic and split.
    """
    cands = list(act.generators)
    if t0 is not None:
        cands += [act.A + t0.scale(u) for u in (1, 2, 3, 5, 7)]
        cands += [act.B + t0.scale(u) for u in (1, 2, 3, 5, 7)]
    for z in cands:
        subs = _divisor_kernels(z)
        if subs is None:
            continue
        found = {s for s in subs if all(s.is_invariant(m) for m in act.generators)}
        return sorted(found, key=Subspace.sort_key)
    return None
