"""The weak pullback of a cospan of Haar groupoids, with its Haar system,
unit-space measure and modular function, plus one check per structure theorem.

Given homomorphisms p: S -> G <- T: q, the pullback carries triples (s, g, t)
with r(g) = r(p(s)) and d(g) = r(q(t)); g mediates between the legs instead of
the on-the-nose equality of a regular pullback. The measured structure is

    lam_P^{(s,g,t)} = lam_S^s x delta_g x lam_T^t
    eta^x           = gamma_p^{r(x)} x delta_x x gamma_q^{d(x)}
    mu_P0(B)        = sum_x eta^x(B) mu_G(x)

with gamma_p, gamma_q the disintegrations of the leg unit measures along the
unit maps. Every check below is an exact rational identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InvalidCospan, MalformedInput, NotADisintegration
from .groupoid import (
    FiniteGroupoid,
    GroupoidHom,
    ValidationReport,
    Violation,
    orbits,
)
from .haar import (
    HaarGroupoid,
    ModularFunction,
    induced_measure,
    is_haar,
    is_quasi_invariant,
    modular_function,
    validate_haar_groupoid,
    validate_haar_hom,
)
from .measures import (
    FiniteMeasure,
    MeasureSystem,
    ZERO,
    compose_with_measure,
    disintegrate,
    validate_system,
)


@dataclass
class Cospan:
    """Two Haar groupoids mapping into a common base via Haar homomorphisms."""

    left: HaarGroupoid
    base: HaarGroupoid
    right: HaarGroupoid
    left_map: GroupoidHom
    right_map: GroupoidHom


def validate_cospan(c: Cospan) -> ValidationReport:
    reports = [
        validate_haar_groupoid(c.left),
        validate_haar_groupoid(c.base),
        validate_haar_groupoid(c.right),
    ]
    names = ("left", "base", "right")
    bad: list[Violation] = []
    for name, rep in zip(names, reports):
        for v in rep.violations:
            bad.append(Violation(f"{name}.{v.rule}", v.witnesses, v.detail))
    if not bad:
        for name, hom, leg in (("left_map", c.left_map, c.left), ("right_map", c.right_map, c.right)):
            for v in validate_haar_hom(hom, leg, c.base).violations:
                bad.append(Violation(f"{name}.{v.rule}", v.witnesses, v.detail))
    return ValidationReport(tuple(bad))


def triple_id(s: str, g: str, t: str) -> str:
    return f"{s}|{g}|{t}"


@dataclass
class PullbackGroupoid:
    """The algebraic (measure-free) weak pullback of a cospan of groupoids."""

    groupoid: FiniteGroupoid
    triples: dict[str, tuple[str, str, str]]
    id_of: dict[tuple[str, str, str], str]
    proj_left: GroupoidHom
    proj_right: GroupoidHom
    mediator: dict[str, str]  # id -> middle component, the arrow of the base


def weak_pullback_groupoid(
    s_g: FiniteGroupoid,
    base: FiniteGroupoid,
    t_g: FiniteGroupoid,
    p: Mapping[str, str],
    q: Mapping[str, str],
) -> PullbackGroupoid:
    """Enumerate the triples and build the structure tables.

    Composition pairs (s,g,t)·(σ,h,τ) = (sσ, g, tτ) exactly when
    d(s) = r(σ), d(t) = r(τ) and h = p(s)^{-1} g q(t); the inverse is
    (s^{-1}, p(s)^{-1} g q(t), t^{-1}).
    """
    triples: list[tuple[str, str, str]] = []
    for s in s_g.elements:
        for g in base.fiber(base.r(p[s])):
            for t in t_g.elements:
                if base.r(q[t]) == base.d(g):
                    triples.append((s, g, t))
    triples.sort()
    ids = [triple_id(*tr) for tr in triples]
    if len(set(ids)) != len(ids):
        raise MalformedInput("component ids collide under the s|g|t encoding")
    id_of = dict(zip(triples, ids))
    by_id = dict(zip(ids, triples))

    def conjugate(s: str, g: str, t: str) -> str:
        # p(s)^{-1} g q(t)
        return base.compose(base.compose(base.inv(p[s]), g), q[t])

    range_map: dict[str, str] = {}
    source_map: dict[str, str] = {}
    inverse_map: dict[str, str] = {}
    units: list[str] = []
    for pid, (s, g, t) in by_id.items():
        z = conjugate(s, g, t)
        range_map[pid] = id_of[(s_g.r(s), g, t_g.r(t))]
        source_map[pid] = id_of[(s_g.d(s), z, t_g.d(t))]
        inverse_map[pid] = id_of[(s_g.inv(s), z, t_g.inv(t))]
        if s in s_g.unit_set and t in t_g.unit_set:
            units.append(pid)

    by_range: dict[str, list[str]] = {}
    for pid in ids:
        by_range.setdefault(range_map[pid], []).append(pid)
    compose_map: dict[tuple[str, str], str] = {}
    for pid, (s, g, t) in by_id.items():
        for qid in by_range.get(source_map[pid], ()):
            s2, _, t2 = by_id[qid]
            compose_map[(pid, qid)] = id_of[(s_g.compose(s, s2), g, t_g.compose(t, t2))]

    pg = FiniteGroupoid(ids, units, range_map, source_map, inverse_map, compose_map)
    proj_left = GroupoidHom(pg, s_g, {pid: tr[0] for pid, tr in by_id.items()})
    proj_right = GroupoidHom(pg, t_g, {pid: tr[2] for pid, tr in by_id.items()})
    return PullbackGroupoid(pg, by_id, id_of, proj_left, proj_right, {pid: tr[1] for pid, tr in by_id.items()})


@dataclass
class WeakPullbackResult:
    """The measured weak pullback: groupoid, projections, Haar system,
    disintegrations, the system eta over the mediator map, the unit measure
    and the modular function, with the induced measure cached."""

    cospan: Cospan
    algebraic: PullbackGroupoid
    haar: MeasureSystem
    disint_left: MeasureSystem
    disint_right: MeasureSystem
    eta: MeasureSystem
    unit_measure: FiniteMeasure
    base_induced: FiniteMeasure
    induced: FiniteMeasure = field(init=False)
    modular: ModularFunction = field(init=False)
    # boundedness side conditions of the general theory; automatic on finite
    # sets, recorded so reports can say so explicitly
    assumptions: tuple[str, ...] = (
        "disintegrations are bounded (finite fibers)",
        "the base modular function is bounded (finite support)",
    )

    def __post_init__(self):
        self.induced = compose_with_measure(self.haar, self.unit_measure)
        self.modular = modular_function(self.haar_groupoid)

    @property
    def groupoid(self) -> FiniteGroupoid:
        return self.algebraic.groupoid

    @property
    def proj_left(self) -> GroupoidHom:
        return self.algebraic.proj_left

    @property
    def proj_right(self) -> GroupoidHom:
        return self.algebraic.proj_right

    @property
    def haar_groupoid(self) -> HaarGroupoid:
        return HaarGroupoid(self.algebraic.groupoid, self.haar, self.unit_measure)


def _pullback_haar_system(alg: PullbackGroupoid, c: Cospan) -> MeasureSystem:
    pg = alg.groupoid
    lam_s = c.left.haar
    lam_t = c.right.haar
    family: dict[str, FiniteMeasure] = {}
    for u in pg.units:
        s, _, t = alg.triples[u]
        ws: dict[str, Fraction] = {}
        for pid in pg.fiber(u):
            sigma, _, tau = alg.triples[pid]
            w = lam_s.weight(s, sigma) * lam_t.weight(t, tau)
            if w:
                ws[pid] = w
        family[u] = FiniteMeasure(pg.elements, ws)
    return MeasureSystem(dict(pg.range_map), pg.elements, pg.units, family)


def _eta_system(alg: PullbackGroupoid, c: Cospan, gamma_p: MeasureSystem, gamma_q: MeasureSystem) -> MeasureSystem:
    """eta^x(s,g,t) = gamma_p^{r(x)}(s) [g = x] gamma_q^{d(x)}(t), a system on
    the map sending a pullback unit to its mediating base arrow."""
    pg = alg.groupoid
    base = c.base.groupoid
    over = {u: alg.mediator[u] for u in pg.units}
    by_arrow: dict[str, list[str]] = {}
    for u in pg.units:
        by_arrow.setdefault(over[u], []).append(u)
    family: dict[str, FiniteMeasure] = {}
    for x in base.elements:
        ws: dict[str, Fraction] = {}
        for u in by_arrow.get(x, ()):
            s, _, t = alg.triples[u]
            w = gamma_p.weight(base.r(x), s) * gamma_q.weight(base.d(x), t)
            if w:
                ws[u] = w
        family[x] = FiniteMeasure(pg.units, ws)
    return MeasureSystem(over, pg.units, base.elements, family)


def build_weak_pullback(c: Cospan, validate: bool = True) -> WeakPullbackResult:
    """Construct the measured weak pullback of a valid cospan."""
    if validate:
        report = validate_cospan(c)
        if not report.ok:
            raise InvalidCospan("cospan failed validation:\n" + report.summary(), report=report)
    alg = weak_pullback_groupoid(
        c.left.groupoid, c.base.groupoid, c.right.groupoid, c.left_map.mapping, c.right_map.mapping
    )
    lam_p = _pullback_haar_system(alg, c)
    unit_map_left = {u: c.left_map.mapping[u] for u in c.left.groupoid.units}
    unit_map_right = {u: c.right_map.mapping[u] for u in c.right.groupoid.units}
    gamma_p = disintegrate(unit_map_left, c.left.unit_measure, c.base.unit_measure)
    gamma_q = disintegrate(unit_map_right, c.right.unit_measure, c.base.unit_measure)
    mu_g = induced_measure(c.base)
    eta = _eta_system(alg, c, gamma_p, gamma_q)
    mu_p0 = compose_with_measure(eta, mu_g)
    return WeakPullbackResult(
        cospan=c,
        algebraic=alg,
        haar=lam_p,
        disint_left=gamma_p,
        disint_right=gamma_q,
        eta=eta,
        unit_measure=mu_p0,
        base_induced=mu_g,
    )


def check_fiber_product_lemma(w: WeakPullbackResult) -> bool:
    """Every r-fiber of the pullback is S^s x {g} x T^t."""
    pg = w.groupoid
    s_g = w.cospan.left.groupoid
    t_g = w.cospan.right.groupoid
    for u in pg.units:
        s, g, t = w.algebraic.triples[u]
        expected = {
            triple_id(sigma, g, tau) for sigma in s_g.fiber(s) for tau in t_g.fiber(t)
        }
        if set(pg.fiber(u)) != expected:
            return False
    return True


def check_haar_theorem(w: WeakPullbackResult) -> ValidationReport:
    return is_haar(w.groupoid, w.haar)


@dataclass
class ModularCheck:
    quasi_invariant: bool
    witness: str | None
    checked: int
    skipped: int
    mismatches: tuple[str, ...]

    def ok(self, strict: bool = False) -> bool:
        if not self.quasi_invariant or self.mismatches:
            return False
        return not (strict and self.skipped)


def check_quasi_invariance_and_modular(w: WeakPullbackResult) -> ModularCheck:
    """Quasi-invariance of the pullback unit measure, and the modular identity
    Delta_P(σ,x,τ) · Delta_G(q(τ)) = Delta_S(σ) · Delta_T(τ) in multiplied-out
    form on every support triple whose constituents are all on-support;
    off-support triples are skipped and counted."""
    qi, witness = is_quasi_invariant(w.haar_groupoid)
    if not qi:
        return ModularCheck(False, witness, 0, 0, ())
    c = w.cospan
    delta_s = modular_function(c.left)
    delta_t = modular_function(c.right)
    delta_g = modular_function(c.base)
    q = c.right_map.mapping
    checked = skipped = 0
    mismatches: list[str] = []
    for pid in sorted(w.induced.support):
        sigma, _, tau = w.algebraic.triples[pid]
        if not (delta_s.defined_at(sigma) and delta_t.defined_at(tau) and delta_g.defined_at(q[tau])):
            skipped += 1
            continue
        checked += 1
        if w.modular(pid) * delta_g(q[tau]) != delta_s(sigma) * delta_t(tau):
            mismatches.append(pid)
    return ModularCheck(True, None, checked, skipped, tuple(mismatches))


def check_projection_homs(w: WeakPullbackResult) -> ValidationReport:
    """Both projections are homomorphisms of Haar groupoids."""
    h_p = w.haar_groupoid
    left = validate_haar_hom(w.proj_left, h_p, w.cospan.left)
    right = validate_haar_hom(w.proj_right, h_p, w.cospan.right)
    bad = [Violation(f"proj_left.{v.rule}", v.witnesses, v.detail) for v in left.violations]
    bad += [Violation(f"proj_right.{v.rule}", v.witnesses, v.detail) for v in right.violations]
    return ValidationReport(tuple(bad))


def check_commuting_diamond(w: WeakPullbackResult) -> bool:
    """Through the orbit space of the base the two composite maps agree."""
    base = w.cospan.base.groupoid
    part = orbits(base)
    p = w.cospan.left_map.mapping
    q = w.cospan.right_map.mapping
    for pid in w.groupoid.elements:
        s, _, t = w.algebraic.triples[pid]
        if part.index[base.r(p[s])] != part.index[base.r(q[t])]:
            return False
    return True


def outer_square_counterexample(w: WeakPullbackResult) -> str | None:
    """First pullback element where p(proj_left) != q(proj_right), if any.
    The outer square famously need not commute; this exhibits the failure."""
    p = w.cospan.left_map.mapping
    q = w.cospan.right_map.mapping
    for pid in w.groupoid.elements:
        s, _, t = w.algebraic.triples[pid]
        if p[s] != q[t]:
            return pid
    return None


def _verify_disintegration(system: MeasureSystem, f: Mapping[str, str], mu: FiniteMeasure, nu: FiniteMeasure, label: str) -> None:
    if system.over != dict(f):
        raise NotADisintegration(f"{label}: system is over the wrong map")
    if not validate_system(system).ok:
        raise NotADisintegration(f"{label}: system is not concentrated on fibers")
    if compose_with_measure(system, nu) != mu:
        raise NotADisintegration(f"{label}: reconstruction identity fails")


def check_disintegration_independence(
    c: Cospan,
    alt_left: MeasureSystem,
    alt_right: MeasureSystem,
    result: WeakPullbackResult | None = None,
) -> bool:
    """The pullback unit measure does not depend on which disintegrations are
    used. Alternates must genuinely disintegrate the same measures; the only
    freedom is on null fibers, and it is washed out by the null weights."""
    if result is None:
        result = build_weak_pullback(c)
    unit_map_left = {u: c.left_map.mapping[u] for u in c.left.groupoid.units}
    unit_map_right = {u: c.right_map.mapping[u] for u in c.right.groupoid.units}
    _verify_disintegration(alt_left, unit_map_left, c.left.unit_measure, c.base.unit_measure, "left")
    _verify_disintegration(alt_right, unit_map_right, c.right.unit_measure, c.base.unit_measure, "right")
    eta_alt = _eta_system(result.algebraic, c, alt_left, alt_right)
    mu_alt = compose_with_measure(eta_alt, result.base_induced)
    return mu_alt == result.unit_measure


def _base_leg_pairs(leg_g: FiniteGroupoid, base_g: FiniteGroupoid, leg_map: Mapping[str, str]) -> list[tuple[str, str]]:
    """Pairs (y, σ) of a base arrow and a leg arrow with r(y) = p(r(σ))."""
    return [(y, sigma) for sigma in leg_g.elements for y in base_g.fiber(base_g.r(leg_map[sigma]))]


def _triple_integral_sides(
    leg: HaarGroupoid, base: HaarGroupoid, leg_map: Mapping[str, str], gamma: MeasureSystem, u: str, y0: str, sigma0: str
) -> tuple[Fraction, Fraction]:
    """Both orders of integration for the singleton indicator at (y0, σ0):
    base arrow innermost on the left, outermost on the right."""
    leg_g = leg.groupoid
    base_g = base.groupoid
    lam_leg = leg.haar
    lam_base = base.haar
    lhs = ZERO
    rhs = ZERO
    for s in leg_g.units:
        lhs += lam_base.weight(base_g.r(leg_map[sigma0]), y0) * lam_leg.weight(s, sigma0) * gamma.weight(u, s)
        rhs += lam_leg.weight(s, sigma0) * gamma.weight(base_g.r(y0), s) * lam_base.weight(u, y0)
    return lhs, rhs


def check_triple_integral_lemma(c: Cospan, result: WeakPullbackResult | None = None) -> bool:
    """Exchanging the base integral with the leg double integral is exact for
    every base unit and every singleton indicator, on both legs."""
    if result is None:
        result = build_weak_pullback(c)
    sides = (
        (c.left, c.left_map.mapping, result.disint_left),
        (c.right, c.right_map.mapping, result.disint_right),
    )
    base = c.base
    for leg, leg_map, gamma in sides:
        pairs = _base_leg_pairs(leg.groupoid, base.groupoid, leg_map)
        for u in base.groupoid.units:
            for y0, sigma0 in pairs:
                lhs, rhs = _triple_integral_sides(leg, base, leg_map, gamma, u, y0, sigma0)
                if lhs != rhs:
                    return False
    return True


def check_expanding_lemma(w: WeakPullbackResult) -> bool:
    """The induced measure of the pullback equals the six-fold iterated sum
    over (unit, base arrow, leg units, leg arrows), singleton by singleton."""
    c = w.cospan
    base = c.base.groupoid
    s_g = c.left.groupoid
    t_g = c.right.groupoid
    lam_s = c.left.haar
    lam_t = c.right.haar
    lam_g = c.base.haar
    mu_g0 = c.base.unit_measure
    gamma_p = w.disint_left
    gamma_q = w.disint_right
    for pid in w.groupoid.elements:
        sigma0, x0, tau0 = w.algebraic.triples[pid]
        lhs = w.induced(pid)
        left_sum = ZERO
        for s in s_g.units:
            left_sum += gamma_p.weight(base.r(x0), s) * lam_s.weight(s, sigma0)
        right_sum = ZERO
        for t in t_g.units:
            right_sum += gamma_q.weight(base.d(x0), t) * lam_t.weight(t, tau0)
        rhs = ZERO
        for u in base.units:
            rhs += mu_g0(u) * lam_g.weight(u, x0) * left_sum * right_sum
        if lhs != rhs:
            return False
    return True
