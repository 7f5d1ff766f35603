"""Regression corpus runners behind ``verify-paper``.

Each scope returns tallies of named checks; a scope passes when every check
passes on every instance it was run on.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .aw import AWParams, build_vd, check_aw_relations, find_intertwiner, twist_z2
from .daha import build_h, check_casimir_image, check_h_relations, pullback, twist_z4
from .exact import Matrix, QContext, Subspace, kernel, spin
from .instances import InstanceSpec, sample
from .lattice import (
    CONFIRMED,
    INCONCLUSIVE,
    Analysis,
    analyze,
    analyze_vd,
    brute_force_submodules,
    irreducible_by_search,
    is_absolutely_irreducible,
    lattice_of,
)

SCOPES = ("relations", "casimir", "E0", "E1", "E2", "E3", "O", "factors", "criteria",
          "corollaries", "twists", "properties")


@dataclass
class Tally:
    name: str
    passed: int = 0
    total: int = 0
    failures: list[str] = field(default_factory=list)
    max_seconds: float = 0.0

    def record(self, ok: bool, what: str = ""):
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 20:
            self.failures.append(what)

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.passed == self.total

    def line(self) -> str:
        flag = "PASS" if self.ok else "FAIL"
        return f"{flag}  {self.name:<58} {self.passed}/{self.total}"


def _desc(spec: InstanceSpec) -> str:
    p = ",".join(f"{x}" for x in spec.params)
    return f"{spec.family} d={spec.d} twist={spec.twist} params=({p})"


class Corpus:
    """Sampled instances and cached analyses shared between scopes."""

    def __init__(self, dmax: int = 7, count: int = 10, seed: int = 0, q: Fraction = Fraction(2)):
        self.dmax, self.count, self.seed, self.q = dmax, count, seed, q
        self.ctx = QContext(q)
        self._analyses: dict[InstanceSpec, tuple[Analysis, float]] = {}

    def e_dims(self) -> list[int]:
        return [d for d in (1, 3, 5, 7) if d <= self.dmax]

    def o_dims(self) -> list[int]:
        return [d for d in (0, 2, 4, 6) if d <= self.dmax]

    def e_sample(self, d: int, n: int, mode: str, eps: int, seed: int | None = None) -> list[InstanceSpec]:
        """E samples split between the two signs of k0."""
        seed = self.seed if seed is None else seed
        plus = sample("E", d, n - n // 2, mode, seed, self.q, eps, k0_sign=1)
        return plus + sample("E", d, n // 2, mode, seed, self.q, eps, k0_sign=-1)

    def relation_instances(self, count: int | None = None) -> list[InstanceSpec]:
        n = count or self.count
        out = []
        for d in self.e_dims():
            for eps in range(4):
                out += self.e_sample(d, n, "generic", eps, self.seed + eps)
        for d in self.o_dims():
            for eps in range(4):
                out += sample("O", d, n, "generic", self.seed + eps, self.q, twist=eps)
        return out

    def shape_cases(self, family: str, eps: int) -> list[tuple[str, list[InstanceSpec]]]:
        """The acceptance cases for one family/twist, each with its samples."""
        n, cases = self.count, []
        if family == "E":
            for d in self.e_dims():
                cases.append((f"E{eps} d={d} generic", self.e_sample(d, n, "generic", eps)))
                if eps:
                    mode = f"k{eps}sq1"
                    cases.append((f"E{eps} d={d} k{eps}^2=1", self.e_sample(d, n, mode, eps)))
        else:
            for d in self.o_dims():
                cases.append((f"O d={d} generic", sample("O", d, n, "generic", self.seed, self.q, 0)))
                if d:
                    cases.append((f"O d={d} k0^2=1", sample("O", d, n, "k0sq1", self.seed, self.q, 0)))
        return cases

    def all_shape_specs(self) -> list[InstanceSpec]:
        out = []
        for eps in range(4):
            for _, specs in self.shape_cases("E", eps):
                out += specs
        for _, specs in self.shape_cases("O", 0):
            out += specs
        return out

    def analysis(self, spec: InstanceSpec) -> tuple[Analysis, float]:
        if spec not in self._analyses:
            t = time.perf_counter()
            an = analyze(spec.build(), self.ctx)
            self._analyses[spec] = (an, time.perf_counter() - t)
        return self._analyses[spec]


# --------------------------------------------------------------------------
# scopes


def scope_relations(c: Corpus, count: int | None = None) -> list[Tally]:
    th, ta = Tally("H_q relations"), Tally("Askey-Wilson relations on the pullback")
    for spec in c.relation_instances(count):
        t = time.perf_counter()
        h = spec.build()
        th.record(check_h_relations(h, c.ctx).ok, _desc(spec))
        ta.record(check_aw_relations(pullback(h, c.ctx), c.ctx).ok, _desc(spec))
        dt = time.perf_counter() - t
        th.max_seconds = ta.max_seconds = max(th.max_seconds, dt)
    return [th, ta]


def scope_casimir(c: Corpus, count: int | None = None) -> list[Tally]:
    t = Tally("Casimir image and t0 centralizing A, B, C")
    for spec in c.relation_instances(count):
        h = spec.build()
        t.record(check_casimir_image(h, pullback(h, c.ctx), c.ctx).ok, _desc(spec))
    return [t]


def _shape_scope(c: Corpus, family: str, eps: int) -> list[Tally]:
    out = []
    for name, specs in c.shape_cases(family, eps):
        t = Tally(f"lattice shape {name}")
        for spec in specs:
            an, dt = c.analysis(spec)
            t.max_seconds = max(t.max_seconds, dt)
            ok = an.status == CONFIRMED and an.shape_ok
            t.record(bool(ok), f"{_desc(spec)}: {an.status} {an.lattice.shape} {an.lattice.notes}")
        out.append(t)
    return out


def scope_factors(c: Corpus) -> list[Tally]:
    tt = Tally("factor parameters satisfy the trace quadratics")
    ti = Tally("factor intertwines with a freshly built model")
    for spec in c.all_shape_specs():
        an, _ = c.analysis(spec)
        for f in an.lattice.factors:
            tt.record(bool(f.trace_ok), f"{_desc(spec)} factor {f.lower}->{f.upper}")
            ti.record(bool(f.intertwiner_ok), f"{_desc(spec)} factor {f.lower}->{f.upper}")
    return [tt, ti]


def scope_corollaries(c: Corpus) -> list[Tally]:
    tc = Tally("completely reducible iff t0 diagonalizable")
    tq = Tally("V/V(theta) is zero or irreducible")
    tv = Tally("summary case table")
    for spec in c.all_shape_specs():
        an, _ = c.analysis(spec)
        v = an.verdict
        for name, ok, detail in v.clauses:
            if name.startswith("completely reducible"):
                tc.record(ok, f"{_desc(spec)}: {detail}")
            elif name.startswith("V/V("):
                tq.record(ok, f"{_desc(spec)}: {name}")
            else:
                tv.record(ok, f"{_desc(spec)}: {name} {detail}")
    return [tc, tq, tv]


def vd_brute_irreducible(act, ctx: QContext) -> bool:
    """Burnside on A, B, C plus exhaustive submodule search; both must agree."""
    burnside = is_absolutely_irreducible(list(act.generators))
    subs = brute_force_submodules(act)
    if subs is None:
        subs = lattice_of(act, ctx).spaces
    if burnside != (len(subs) == 2):
        raise AssertionError("brute-force oracles disagree")
    return burnside


def h_brute_irreducible(h, ctx: QContext) -> bool:
    burnside = is_absolutely_irreducible(list(h.t))
    act = pullback(h, ctx)
    search = irreducible_by_search(list(h.t), [("A", act.A), ("B", act.B), ("C", act.C)], h.t[0])
    if burnside != search:
        raise AssertionError("brute-force oracles disagree")
    return burnside


def scope_criteria(c: Corpus, count: int | None = None, dmax: int = 6) -> list[Tally]:
    n = count or c.count
    top = min(dmax, c.dmax)
    out = []
    for family in ("VD", "E", "O"):
        sat, vio = Tally(f"{family} criterion agrees with brute force (satisfied)"), \
            Tally(f"{family} criterion agrees with brute force (violated)")
        if family == "VD":
            dims = range(0, top + 1)
        elif family == "E":
            dims = [d for d in (1, 3, 5) if d <= top]
        else:
            dims = [d for d in (0, 2, 4, 6) if d <= top]
        for d in dims:
            modes = [("generic", sat)]
            if not (d == 0 and family in ("VD", "O")):
                modes.append(("violate-any", vio))
            for mode, tally in modes:
                for spec in sample(family, d, n, mode, c.seed, c.q, k0_sign=0):
                    crit = spec.criterion()
                    if family == "VD":
                        brute = vd_brute_irreducible(build_vd(spec.typed(), c.ctx), c.ctx)
                    else:
                        brute = h_brute_irreducible(spec.build(), c.ctx)
                    tally.record(crit == brute, f"{_desc(spec)}: criterion {crit}, brute force {brute}")
        out += [sat, vio]
    return out


def scope_twists(c: Corpus, count: int | None = None) -> list[Tally]:
    n = count or c.count
    tz2 = Tally("V_d(a,b,c) twisted by Z/2 is isomorphic to V_d(b,a,c)")
    for d in range(0, min(c.dmax, 6) + 1):
        for spec in sample("VD", d, max(2, n // 3), "generic", c.seed, c.q):
            a, b, cc = spec.params
            tw = twist_z2(build_vd(AWParams(d, a, b, cc), c.ctx), c.ctx)
            tz2.record(find_intertwiner(tw, build_vd(AWParams(d, b, a, cc), c.ctx)) is not None, _desc(spec))
    tz4 = Tally("Z/4 twist applied four times is the identity")
    for spec in c.relation_instances(max(1, n // 5)):
        h = spec.build()
        tz4.record(twist_z4(twist_z4(twist_z4(twist_z4(h, 1), 1), 1), 1) == h, _desc(spec))
    return [tz2, tz4]


def _rand_matrix(rng: random.Random, r: int, c: int, density: float = 0.6) -> Matrix:
    return Matrix([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if rng.random() < density else 0
                    for _ in range(c)] for _ in range(r)], c)


def scope_properties(c: Corpus, cases: int = 1000) -> list[Tally]:
    rng = random.Random(c.seed)
    ts, tr = Tally("spin is idempotent"), Tally("rank plus nullity equals column count")
    tc, tj = Tally("lattice closed under sum and intersection"), Tally("Jordan-Holder dims agree across chains")
    for i in range(cases):
        n = rng.randint(1, 5)
        ops = [_rand_matrix(rng, n, n, rng.choice((0.2, 0.5, 0.9))) for _ in range(rng.randint(1, 3))]
        seed_space = Subspace.span([[rng.randint(-2, 2) for _ in range(n)]], n)
        once = spin(seed_space, ops)
        ts.record(spin(once, ops) == once and all(once.is_invariant(m) for m in ops), f"case {i}")
        m = _rand_matrix(rng, rng.randint(1, 5), n, 0.5)
        tr.record(m.rank() + kernel(m).dim == n, f"case {i}")
        # a small module with a nontrivial lattice
        kind = i % 3
        if kind == 0:
            d = rng.randint(1, 3)
            spec = sample("VD", d, 1, rng.choice(("generic", "violate-any")), rng.randrange(10 ** 6), c.q)[0]
            rep = analyze_vd(spec.build(), c.ctx, spec.criterion())
        else:
            fam, d = ("E", rng.choice((1, 3))) if kind == 1 else ("O", rng.choice((0, 2)))
            spec = sample(fam, d, 1, "generic", rng.randrange(10 ** 6), c.q, twist=rng.randrange(4), k0_sign=0)[0]
            rep = c.analysis(spec)[0].lattice
        if rep.status == INCONCLUSIVE:
            tc.record(False, f"case {i}: {_desc(spec)} inconclusive")
            tj.record(False, f"case {i}: {_desc(spec)} inconclusive")
            continue
        tc.record(rep.is_closed(), f"case {i}: {_desc(spec)}")
        tj.record(rep.jordan_holder_ok(), f"case {i}: {_desc(spec)}")
    return [ts, tr, tc, tj]


def run_scope(scope: str, corpus: Corpus) -> list[Tally]:
    runners: dict[str, Callable[[], list[Tally]]] = {
        "relations": lambda: scope_relations(corpus),
        "casimir": lambda: scope_casimir(corpus),
        "E0": lambda: _shape_scope(corpus, "E", 0),
        "E1": lambda: _shape_scope(corpus, "E", 1),
        "E2": lambda: _shape_scope(corpus, "E", 2),
        "E3": lambda: _shape_scope(corpus, "E", 3),
        "O": lambda: _shape_scope(corpus, "O", 0),
        "factors": lambda: scope_factors(corpus),
        "criteria": lambda: scope_criteria(corpus),
        "corollaries": lambda: scope_corollaries(corpus),
        "twists": lambda: scope_twists(corpus),
        "properties": lambda: scope_properties(corpus),
    }
    if scope not in runners:
        raise ValueError(f"unknown scope {scope!r}")
    return runners[scope]()


def expand_scopes(names: Iterable[str]) -> list[str]:
    out = []
    for name in names:
        for s in (SCOPES if name == "all" else (name,)):
            if s not in SCOPES:
                raise ValueError(f"unknown scope {s!r}; expected one of {', '.join(SCOPES + ('all',))}")
            if s not in out:
                out.append(s)
    if not out:
        raise ValueError("no scope given")
    return out
