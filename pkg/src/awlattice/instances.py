"""Instance specs and the deterministic sampler."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .aw import AWAction, AWParams, aw_irreducible_by_criterion, build_vd
from .daha import EParams, HModule, OParams, build_h, irr_criterion_E, irr_criterion_O
from .exact import QContext, format_scalar, scalar

FAMILIES = ("E", "O", "VD")
MODES = ("generic", "k0sq1", "k1sq1", "k2sq1", "k3sq1", "violate", "violate-any")


class SpecError(ValueError):
    """An instance spec that violates its family constraints."""


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    d: int
    params: tuple[Fraction, ...]
    twist: int = 0
    q: Fraction = Fraction(2)
    seed: int | None = field(default=None, compare=False)
    mode: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        try:
            ps = tuple(scalar(x) for x in self.params)
            q = scalar(self.q)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(str(exc)) from exc
        object.__setattr__(self, "params", ps)
        object.__setattr__(self, "q", q)
        want = 3 if self.family == "VD" else 4
        if len(ps) != want:
            raise SpecError(f"family {self.family} takes {want} parameters, got {len(ps)}")
        ntw = 2 if self.family == "VD" else 4
        if not 0 <= self.twist < ntw:
            raise SpecError(f"twist for family {self.family} must be in 0..{ntw - 1}")
        # builds the typed params, which runs the family validators
        self.typed()
        self.context()

    def context(self) -> QContext:
        try:
            return QContext(self.q)
        except ValueError as exc:
            raise SpecError(str(exc)) from exc

    def typed(self) -> AWParams | EParams | OParams:
        try:
            if self.family == "VD":
                return AWParams(self.d, *self.params)
            cls = EParams if self.family == "E" else OParams
            return cls(self.d, *self.params, q=self.q)
        except ValueError as exc:
            raise SpecError(str(exc)) from exc

    def criterion(self) -> bool:
        p = self.typed()
        if self.family == "E":
            return irr_criterion_E(p)
        if self.family == "O":
            return irr_criterion_O(p)
        return aw_irreducible_by_criterion(p, self.context())

    def build(self) -> HModule | AWAction:
        ctx = self.context()
        if self.family == "VD":
            from .aw import twist_z2

            act = build_vd(self.typed(), ctx)
            return twist_z2(act, ctx) if self.twist else act
        return build_h(self.typed(), ctx, self.twist)

    def to_dict(self) -> dict:
        names = ("a", "b", "c") if self.family == "VD" else ("k0", "k1", "k2", "k3")
        out = {
            "family": self.family,
            "d": self.d,
            "params": {n: format_scalar(x) for n, x in zip(names, self.params)},
            "twist": self.twist,
            "q": format_scalar(self.q),
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.mode is not None:
            out["mode"] = self.mode
        return out

    def to_args(self) -> list[str]:
        return ["--family", self.family, "--d", str(self.d),
                "--params=" + ",".join(format_scalar(x) for x in self.params),
                "--twist", str(self.twist), "--q", format_scalar(self.q)]


def parse_params(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(scalar(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"cannot parse parameters {text!r}: {exc}") from exc


# --------------------------------------------------------------------------
# sampling

_MAX_TRIES = 500


def _small(rng: random.Random) -> Fraction:
    """A nonzero rational with small numerator and denominator."""
    return Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 6))


def _unit(rng: random.Random) -> Fraction:
    return Fraction(rng.choice((-1, 1)))


def _check_mode(family: str, d: int, mode: str):
    if mode not in MODES:
        raise SpecError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if family == "E":
        if d < 1 or d % 2 == 0:
            raise SpecError("family E needs an odd d >= 1")
        if mode == "k0sq1":
            raise SpecError("family E fixes k0^2 = q^(-d-1), so k0^2 = 1 is impossible")
    elif family == "O":
        if d < 0 or d % 2:
            raise SpecError("family O needs an even d >= 0")
        if mode.startswith("violate") and d == 0:
            raise SpecError("every O module with d = 0 satisfies the irreducibility criterion")
    elif family == "VD":
        if d < 0:
            raise SpecError("family VD needs d >= 0")
        if mode not in ("generic", "violate", "violate-any"):
            raise SpecError(f"mode {mode!r} does not apply to family VD")
        if mode.startswith("violate") and d == 0:
            raise SpecError("V_0 is always irreducible")
    else:
        raise SpecError(f"unknown family {family!r}")


def _draw_E(rng, d, q, mode, sign=1) -> tuple[Fraction, ...]:
    k0 = (sign or rng.choice((-1, 1))) * q ** (-(d + 1) // 2)
    if mode.startswith("violate"):
        # "violate" hits k0 k1 k2 k3 = q^-1; "violate-any" roams the whole excluded set
        k1, k2 = _small(rng), _small(rng)
        anywhere = mode == "violate-any"
        i = rng.randrange(1, d + 1, 2) if anywhere else 1
        target = q ** (-i)
        pattern = rng.randrange(4) if anywhere else 0
        signs = [(1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)][pattern]
        rest = target / (k0 * k1 ** signs[0] * k2 ** signs[1])
        k3 = rest if signs[2] == 1 else 1 / rest
        return k0, k1, k2, k3
    ks = [_small(rng) for _ in range(3)]
    if mode.startswith("k") and mode != "k0sq1":
        ks[int(mode[1]) - 1] = _unit(rng)
    return (k0, *ks)


def _draw_O(rng, d, q, mode, sign=1) -> tuple[Fraction, ...]:
    ks = [_small(rng) for _ in range(4)]
    solve = 3
    if mode.startswith("violate"):
        j = rng.randrange(4)
        i = rng.randrange(2, d + 1, 2)
        ks[j] = rng.choice((-1, 1)) * q ** (-(i // 2))
        solve = 2 if j == 3 else 3
    elif mode != "generic":
        j = int(mode[1])
        ks[j] = _unit(rng)
        solve = 2 if j == 3 else 3
    others = [k for idx, k in enumerate(ks) if idx != solve]
    ks[solve] = q ** (-d - 1) / (others[0] * others[1] * others[2])
    return tuple(ks)


def _draw_VD(rng, d, q, mode, sign=1) -> tuple[Fraction, ...]:
    a, b, c = _small(rng), _small(rng), _small(rng)
    if mode.startswith("violate"):
        i = rng.randint(1, d)
        x = q ** (2 * i - d - 1)
        pattern = rng.randrange(4)
        c = (x / (a * b), x * a / b, x * b / a, a * b / x)[pattern]
    return a, b, c


def _accept(spec: InstanceSpec, mode: str) -> bool:
    crit = spec.criterion()
    if mode.startswith("violate"):
        return not crit
    if not crit:
        return False
    if spec.family == "VD":
        return True
    ks = spec.params
    if mode == "generic":
        # keep the twisted lattices on their generic branch too
        lo = 0 if spec.family == "O" else 1
        return all(k * k != 1 for k in ks[lo:])
    return True


def sample(family: str, d: int, count: int = 1, mode: str = "generic", seed: int = 0,
           q: Fraction | str | int = 2, twist: int = 0, k0_sign: int = 1) -> list[InstanceSpec]:
    """Deterministic instances of a family; same arguments give the same list.

    ``k0_sign`` picks the root k0 = +-q^(-(d+1)/2) for family E; 0 draws it at random.
    """
    if k0_sign not in (-1, 0, 1):
        raise SpecError("k0_sign must be -1, 0 or 1")
    _check_mode(family, d, mode)
    q = scalar(q)
    QContext(q)
    rng = random.Random(seed)
    draw = {"E": _draw_E, "O": _draw_O, "VD": _draw_VD}[family]
    out: list[InstanceSpec] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > _MAX_TRIES * max(count, 1):
            raise SpecError(f"could not sample {count} {family} instances in mode {mode}")
        try:
            spec = InstanceSpec(family, d, draw(rng, d, q, mode, k0_sign), twist, q, seed=seed, mode=mode)
        except SpecError:
            continue
        if _accept(spec, mode) and spec not in out:
            out.append(spec)
    return out
