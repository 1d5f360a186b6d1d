"""Haar systems, induced measures, quasi-invariance and modular functions.

A Haar system on a finite groupoid is a system of measures over the range map
with full support on every r-fiber and pointwise left invariance
lam^{d(x)}(y) = lam^{r(x)}(x·y). Together with a nonzero quasi-invariant
measure on the unit space this makes the groupoid a Haar groupoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import MalformedInput, NotQuasiInvariant
from .groupoid import FiniteGroupoid, GroupoidHom, ValidationReport, Violation, validate_hom
from .measures import (
    FiniteMeasure,
    MeasureSystem,
    ONE,
    class_witness,
    compose_with_measure,
    push_forward,
    same_measure_class,
    validate_system,
)


@dataclass
class HaarGroupoid:
    """Bundle of a groupoid, a Haar system over its range map, and a unit
    measure. A plain data holder; `validate_haar_groupoid` checks the laws."""

    groupoid: FiniteGroupoid
    haar: MeasureSystem
    unit_measure: FiniteMeasure

    def __eq__(self, other) -> bool:
        if not isinstance(other, HaarGroupoid):
            return NotImplemented
        return (
            self.groupoid == other.groupoid
            and self.haar == other.haar
            and self.unit_measure == other.unit_measure
        )


def haar_system_from_source_weights(g: FiniteGroupoid, source_weight: Mapping[str, object]) -> MeasureSystem:
    """The left-invariant system lam^u(x) = c(d(x)) determined by positive
    weights c on the units. Every Haar system on a finite groupoid arises this
    way, so this is also the random-instance parametrisation."""
    c = {u: Fraction(v) for u, v in source_weight.items()}
    for u in g.units:
        if u not in c or c[u] <= 0:
            raise MalformedInput(f"source weight missing or non-positive at unit {u!r}")
    family = {
        u: FiniteMeasure(g.elements, {x: c[g.d(x)] for x in g.fiber(u)}) for u in g.units
    }
    return MeasureSystem(dict(g.range_map), g.elements, g.units, family)


def counting_haar_system(g: FiniteGroupoid) -> MeasureSystem:
    return haar_system_from_source_weights(g, {u: ONE for u in g.units})


def is_haar(g: FiniteGroupoid, s: MeasureSystem) -> ValidationReport:
    """Full support on every r-fiber plus pointwise left invariance."""
    if s.over != g.range_map or frozenset(s.codomain) != g.unit_set:
        raise MalformedInput("system is not over the range map of the groupoid")
    report = validate_system(s, require_full=True)
    bad = list(report.violations)
    for x in g.elements:
        lam_d = s.family[g.d(x)]
        lam_r = s.family[g.r(x)]
        for y in g.fiber(g.d(x)):
            if lam_d(y) != lam_r(g.compose(x, y)):
                bad.append(
                    Violation(
                        "left-invariance",
                        (x, y),
                        f"lam^d(x)({y}) = {lam_d(y)} != lam^r(x)({g.compose(x, y)}) = {lam_r(g.compose(x, y))}",
                    )
                )
    return ValidationReport(tuple(bad))


def induced_measure(h: HaarGroupoid) -> FiniteMeasure:
    """mu(x) = lam^{r(x)}(x) · mu0(r(x)), i.e. the system composed with mu0."""
    return compose_with_measure(h.haar, h.unit_measure)


def inverse_measure(mu: FiniteMeasure, g: FiniteGroupoid) -> FiniteMeasure:
    """Image of mu under inversion: (mu^{-1})(x) = mu(x^{-1})."""
    if mu.base != g.elements:
        raise MalformedInput("measure does not live on the groupoid's elements")
    return FiniteMeasure(g.elements, {x: mu(g.inv(x)) for x in g.elements})


def is_quasi_invariant(h: HaarGroupoid) -> tuple[bool, str | None]:
    """Support equality of the induced measure and its inverse image;
    returns a witnessing element on failure."""
    mu = induced_measure(h)
    mu_inv = inverse_measure(mu, h.groupoid)
    if same_measure_class(mu, mu_inv):
        return True, None
    return False, class_witness(mu, mu_inv)


def validate_haar_groupoid(h: HaarGroupoid) -> ValidationReport:
    from .groupoid import validate_groupoid

    bad = list(validate_groupoid(h.groupoid).violations)
    bad.extend(is_haar(h.groupoid, h.haar).violations)
    if tuple(h.unit_measure.base) != h.groupoid.units:
        raise MalformedInput("unit measure does not live on the unit space")
    if h.unit_measure.is_zero():
        bad.append(Violation("nonzero-unit-measure", (), "the unit-space measure is identically zero"))
    ok, witness = is_quasi_invariant(h)
    if not ok:
        bad.append(
            Violation(
                "quasi-invariance",
                (witness,),
                f"induced measure and its inverse differ in support at {witness}",
            )
        )
    return ValidationReport(tuple(bad))


class ModularFunction:
    """Delta(x) = mu(x)/mu(x^{-1}), defined exactly on the support of mu."""

    def __init__(self, values: Mapping[str, Fraction]):
        self.values = dict(values)

    def __call__(self, x: str) -> Fraction:
        return self.values[x]

    def defined_at(self, x: str) -> bool:
        return x in self.values

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModularFunction):
            return NotImplemented
        return self.values == other.values


def modular_function(h: HaarGroupoid) -> ModularFunction:
    ok, witness = is_quasi_invariant(h)
    if not ok:
        raise NotQuasiInvariant(f"unit measure is not quasi-invariant, witness {witness!r}", witness=witness)
    mu = induced_measure(h)
    g = h.groupoid
    return ModularFunction({x: mu(x) / mu(g.inv(x)) for x in sorted(mu.support)})


def validate_haar_hom(p: GroupoidHom, dom: HaarGroupoid, cod: HaarGroupoid) -> ValidationReport:
    """Algebraic homomorphism plus measure-class preservation of the induced
    measures; also reports the derived unit-space class check, which can never
    fail on its own when the element-level check passes."""
    if p.domain != dom.groupoid or p.codomain != cod.groupoid:
        raise MalformedInput("hom endpoints do not match the given Haar groupoids")
    bad = list(validate_hom(p).violations)
    pushed = push_forward(p.mapping, induced_measure(dom), cod.groupoid.elements)
    target = induced_measure(cod)
    if not same_measure_class(pushed, target):
        w = class_witness(pushed, target)
        bad.append(
            Violation(
                "measure-class",
                (w,),
                f"pushforward of the induced measure and the target induced measure differ at {w}",
            )
        )
    unit_map = {u: p.mapping[u] for u in dom.groupoid.units if p.mapping.get(u) in cod.groupoid.unit_set}
    if len(unit_map) == len(dom.groupoid.units):
        pushed0 = push_forward(unit_map, dom.unit_measure, cod.groupoid.units)
        if not same_measure_class(pushed0, cod.unit_measure):
            w = class_witness(pushed0, cod.unit_measure)
            bad.append(
                Violation(
                    "unit-measure-class",
                    (w,),
                    f"pushforward of the unit measure and the target unit measure differ at {w}",
                )
            )
    return ValidationReport(tuple(bad))


def range_class_check(h: HaarGroupoid) -> bool:
    """r_*(mu) has the same support as mu0. True for every valid Haar
    groupoid; exposed as a self-test."""
    mu = induced_measure(h)
    pushed = push_forward(dict(h.groupoid.range_map), mu, h.groupoid.units)
    return same_measure_class(pushed, h.unit_measure)
