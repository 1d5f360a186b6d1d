"""Measures and systems of measures on maps between finite sets.

All weights are exact nonnegative rationals (`fractions.Fraction`), so
measure equivalence is support equality and every identity below is decided
with zero tolerance. A system of measures over f: X -> Y is one measure on X
per point of Y, concentrated on the fiber over that point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    BaseMismatch,
    IncompatibleFibredProduct,
    MalformedInput,
    NotMeasureClassPreserving,
)
from .groupoid import ValidationReport, Violation

ZERO = Fraction(0)
ONE = Fraction(1)


def as_weight(v) -> Fraction:
    w = Fraction(v)
    if w < 0:
        raise MalformedInput(f"negative weight {w}")
    return w


class FiniteMeasure:
    """Nonnegative rational weights on a finite base set, stored sparsely."""

    def __init__(self, base: Iterable[str], weights: Mapping[str, object] = ()):
        self.base: tuple[str, ...] = tuple(sorted(base))
        base_set = frozenset(self.base)
        w: dict[str, Fraction] = {}
        for x, v in dict(weights).items():
            if x not in base_set:
                raise MalformedInput(f"weight assigned to {x!r}, not in the base set")
            fv = as_weight(v)
            if fv:
                w[x] = fv
        self.weights = w

    def __call__(self, x: str) -> Fraction:
        return self.weights.get(x, ZERO)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self.weights)

    def mass(self) -> Fraction:
        return sum(self.weights.values(), ZERO)

    def is_zero(self) -> bool:
        return not self.weights

    def scaled(self, c) -> "FiniteMeasure":
        return FiniteMeasure(self.base, {x: v * Fraction(c) for x, v in self.weights.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteMeasure):
            return NotImplemented
        return self.base == other.base and self.weights == other.weights

    def __repr__(self) -> str:
        inside = ", ".join(f"{x}: {v}" for x, v in sorted(self.weights.items()))
        return f"FiniteMeasure({{{inside}}} on {len(self.base)} points)"


def dirac(base: Iterable[str], x: str) -> FiniteMeasure:
    return FiniteMeasure(base, {x: ONE})


def counting(base: Iterable[str], subset: Iterable[str] | None = None) -> FiniteMeasure:
    base = tuple(base)
    pts = base if subset is None else tuple(subset)
    return FiniteMeasure(base, {x: ONE for x in pts})


class MeasureSystem:
    """Family {lam^y} over a map f: X -> Y, one finite measure per y in Y.

    `family` may omit points of Y; missing entries denote the zero measure.
    """

    def __init__(
        self,
        over: Mapping[str, str],
        domain: Iterable[str],
        codomain: Iterable[str],
        family: Mapping[str, FiniteMeasure],
    ):
        self.domain: tuple[str, ...] = tuple(sorted(domain))
        self.codomain: tuple[str, ...] = tuple(sorted(codomain))
        self.over = dict(over)
        zero = FiniteMeasure(self.domain)
        fam = dict(family)
        self.family: dict[str, FiniteMeasure] = {y: fam.get(y, zero) for y in self.codomain}

    def at(self, y: str) -> FiniteMeasure:
        return self.family[y]

    def weight(self, y: str, x: str) -> Fraction:
        m = self.family.get(y)
        return m(x) if m is not None else ZERO

    def fiber(self, y: str) -> tuple[str, ...]:
        return tuple(x for x in self.domain if self.over.get(x) == y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MeasureSystem):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.over == other.over
            and self.family == other.family
        )

    def __repr__(self) -> str:
        return f"MeasureSystem({len(self.domain)} -> {len(self.codomain)})"


def dirac_system(base: Iterable[str]) -> MeasureSystem:
    """The system of point masses over the identity map of a finite set."""
    base = tuple(sorted(base))
    return MeasureSystem({x: x for x in base}, base, base, {x: dirac(base, x) for x in base})


def counting_system(over: Mapping[str, str], domain: Iterable[str], codomain: Iterable[str]) -> MeasureSystem:
    """Counting measure on every fiber of the given map."""
    domain = tuple(sorted(domain))
    fam: dict[str, dict[str, Fraction]] = {}
    for x in domain:
        fam.setdefault(over[x], {})[x] = ONE
    return MeasureSystem(over, domain, codomain, {y: FiniteMeasure(domain, w) for y, w in fam.items()})


def _system_structural_check(s: MeasureSystem) -> None:
    dom = frozenset(s.domain)
    cod = frozenset(s.codomain)
    for x in s.domain:
        if x not in s.over:
            raise MalformedInput(f"system map undefined at {x!r}")
        if s.over[x] not in cod:
            raise MalformedInput(f"system map sends {x!r} outside the codomain")
    for y, m in s.family.items():
        if y not in cod:
            raise MalformedInput(f"family indexed by unknown point {y!r}")
        if frozenset(m.base) != dom:
            raise MalformedInput(f"family member at {y!r} lives on the wrong base set")


def validate_system(s: MeasureSystem, require_full: bool = False) -> ValidationReport:
    """Concentration on fibers; optionally full support on every fiber."""
    _system_structural_check(s)
    bad: list[Violation] = []
    for y in s.codomain:
        m = s.family[y]
        fib = frozenset(s.fiber(y))
        for x in sorted(m.support - fib):
            bad.append(Violation("concentration", (y, x), f"lam^{y} charges {x} outside the fiber"))
        if require_full:
            for x in sorted(fib - m.support):
                bad.append(Violation("full-support", (y, x), f"lam^{y} vanishes at {x} inside the fiber"))
    return ValidationReport(tuple(bad))


def push_forward(f: Mapping[str, str], mu: FiniteMeasure, codomain: Iterable[str]) -> FiniteMeasure:
    """(f_* mu)(y) = sum of mu over the fiber of y; total mass is preserved."""
    codomain = tuple(codomain)
    out: dict[str, Fraction] = {}
    for x, v in mu.weights.items():
        if x not in f:
            raise MalformedInput(f"pushforward map undefined at {x!r}")
        y = f[x]
        out[y] = out.get(y, ZERO) + v
    return FiniteMeasure(codomain, out)


def same_measure_class(mu: FiniteMeasure, nu: FiniteMeasure) -> bool:
    """Mutual absolute continuity; exact support equality on a shared base."""
    if mu.base != nu.base:
        raise BaseMismatch("measures live on different base sets")
    return mu.support == nu.support


def class_witness(mu: FiniteMeasure, nu: FiniteMeasure) -> str | None:
    """A point where exactly one of the measures vanishes, if any."""
    diff = sorted(mu.support.symmetric_difference(nu.support))
    return diff[0] if diff else None


def compose_with_measure(s: MeasureSystem, nu: FiniteMeasure) -> FiniteMeasure:
    """mu(E) = sum_y lam^y(E) nu(y), the measure induced by a system."""
    if tuple(nu.base) != s.codomain:
        raise BaseMismatch("measure base does not match the system codomain")
    out: dict[str, Fraction] = {}
    for y, vy in nu.weights.items():
        for x, w in s.family[y].weights.items():
            out[x] = out.get(x, ZERO) + w * vy
    return FiniteMeasure(s.domain, out)


def disintegrate(f: Mapping[str, str], mu: FiniteMeasure, nu: FiniteMeasure) -> MeasureSystem:
    """Split mu along f into fiberwise measures gamma^y with
    sum_y gamma^y(E) nu(y) = mu(E) exactly.

    On nu-positive fibers gamma^y = mu/nu(y); nu-null fibers (necessarily
    mu-null, by the measure-class precondition) carry counting measure so that
    their full fiber support survives downstream support computations.
    """
    pushed = push_forward(f, mu, nu.base)
    if pushed.support != nu.support:
        w = class_witness(pushed, nu)
        raise NotMeasureClassPreserving(
            f"pushforward and target measure differ in support, witness {w!r}", witness=w
        )
    fibers: dict[str, list[str]] = {y: [] for y in nu.base}
    for x in mu.base:
        fibers[f[x]].append(x)
    family: dict[str, FiniteMeasure] = {}
    for y in nu.base:
        if nu(y) > 0:
            family[y] = FiniteMeasure(mu.base, {x: mu(x) / nu(y) for x in fibers[y]})
        else:
            family[y] = counting(mu.base, fibers[y])
    return MeasureSystem(dict(f), mu.base, nu.base, family)


def pair_key(x: str, y: str) -> str:
    return f"{x}|{y}"


class PairedSet:
    """A fibred product enumerated as explicit pairs with canonical ids."""

    def __init__(self, pairs: Iterable[tuple[str, str]]):
        self.pairs: tuple[tuple[str, str], ...] = tuple(sorted(set(pairs)))
        self.ids: tuple[str, ...] = tuple(pair_key(x, y) for x, y in self.pairs)
        if len(set(self.ids)) != len(self.ids):
            raise MalformedInput("ambiguous pair ids in fibred product")
        self.components: dict[str, tuple[str, str]] = dict(zip(self.ids, self.pairs))
        self.id_of: dict[tuple[str, str], str] = {p: i for i, p in zip(self.ids, self.pairs)}

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self.id_of


def fibred_product(left: Iterable[str], right: Iterable[str], to_base_left: Mapping[str, str], to_base_right: Mapping[str, str]) -> PairedSet:
    """{(x, y) : maps agree on the common base}, enumerated."""
    by_value: dict[str, list[str]] = {}
    for y in right:
        by_value.setdefault(to_base_right[y], []).append(y)
    pairs = [(x, y) for x in left for y in by_value.get(to_base_left[x], ())]
    return PairedSet(pairs)


def product_system(
    alpha: MeasureSystem,
    beta: MeasureSystem,
    domain_pairs: PairedSet,
    codomain_pairs: PairedSet,
) -> MeasureSystem:
    """Fibrewise product: the measure over (x0, y0) weighs (x, y) by
    alpha^{x0}(x) * beta^{y0}(y), restricted to the given fibred product."""
    over: dict[str, str] = {}
    for pid, (x, y) in domain_pairs.components.items():
        image = (alpha.over[x], beta.over[y])
        if image not in codomain_pairs:
            raise IncompatibleFibredProduct(
                f"pair ({x!r}, {y!r}) maps to {image!r}, outside the codomain fibred product"
            )
        over[pid] = codomain_pairs.id_of[image]
    family: dict[str, dict[str, Fraction]] = {}
    for pid, (x, y) in domain_pairs.components.items():
        x0, y0 = alpha.over[x], beta.over[y]
        w = alpha.weight(x0, x) * beta.weight(y0, y)
        if w:
            family.setdefault(over[pid], {})[pid] = w
    return MeasureSystem(
        over,
        domain_pairs.ids,
        codomain_pairs.ids,
        {y: FiniteMeasure(domain_pairs.ids, ws) for y, ws in family.items()},
    )


def lift_system(gamma: MeasureSystem, bottom: Mapping[str, str], bottom_domain: Iterable[str]) -> tuple[PairedSet, MeasureSystem]:
    """Lift gamma (on the right edge f: X -> Y of a pullback square) along the
    bottom edge h: W -> Y. Returns the corner W*X = {(w, x) : h(w) = f(x)}
    and the system over its projection to W: (h^* gamma)^w = delta_w x gamma^{h(w)}.
    """
    w_elems = tuple(sorted(bottom_domain))
    corner = fibred_product(w_elems, gamma.domain, dict(bottom), gamma.over)
    over = {pid: wx[0] for pid, wx in corner.components.items()}
    family: dict[str, dict[str, Fraction]] = {}
    for pid, (w, x) in corner.components.items():
        v = gamma.weight(bottom[w], x)
        if v:
            family.setdefault(w, {})[pid] = v
    system = MeasureSystem(
        over, corner.ids, w_elems, {w: FiniteMeasure(corner.ids, ws) for w, ws in family.items()}
    )
    return corner, system


def compose_systems(alpha: MeasureSystem, beta: MeasureSystem) -> MeasureSystem:
    """Composite system over q∘p for alpha over p: X -> Y and beta over q: Y -> Z,
    characterised by iterating the two integrals: (beta∘alpha)^z weighs x by
    sum_y alpha^y(x) beta^z(y)."""
    if alpha.codomain != beta.domain:
        raise MalformedInput("systems are not composable: codomain/domain mismatch")
    over = {x: beta.over[alpha.over[x]] for x in alpha.domain}
    family: dict[str, dict[str, Fraction]] = {}
    for z in beta.codomain:
        ws: dict[str, Fraction] = {}
        for y, vy in beta.family[z].weights.items():
            for x, vx in alpha.family[y].weights.items():
                ws[x] = ws.get(x, ZERO) + vx * vy
        if ws:
            family[z] = ws
    return MeasureSystem(
        over, alpha.domain, beta.codomain, {z: FiniteMeasure(alpha.domain, ws) for z, ws in family.items()}
    )
