"""Finite groupoids as explicit composition tables.

A groupoid is a set of opaque string ids together with range/source/inverse
maps and a partial composition table, defined exactly on pairs (x, y) with
d(x) = r(y). Nothing is derived from a presentation; every axiom is checked
by enumeration, which is fine at desk scale (a few hundred elements).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import MalformedInput, NotAUnit


def check_element_id(x: str) -> str:
    if not isinstance(x, str) or not x or any(c.isspace() for c in x):
        raise MalformedInput(f"bad element id {x!r}: ids are nonempty strings without whitespace")
    return x


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance, with the elements that witness it."""

    rule: str
    witnesses: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        where = ", ".join(self.witnesses)
        return f"{self.rule} [{where}]: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return "ok" if self.ok else "\n".join(str(v) for v in self.violations)

    @staticmethod
    def merge(*reports: "ValidationReport") -> "ValidationReport":
        out: list[Violation] = []
        for r in reports:
            out.extend(r.violations)
        return ValidationReport(tuple(out))


class FiniteGroupoid:
    """Element set, unit subset, structure maps and composition table.

    Instances are immutable by convention; all derived indexes are built once
    at construction. Construction only checks id hygiene (nonempty, no
    whitespace, no duplicates); referential integrity and the groupoid axioms
    are the business of :func:`validate_groupoid`.
    """

    def __init__(
        self,
        elements: Iterable[str],
        units: Iterable[str],
        range_map: Mapping[str, str],
        source_map: Mapping[str, str],
        inverse_map: Mapping[str, str],
        compose_map: Mapping[tuple[str, str], str],
    ):
        els = [check_element_id(x) for x in elements]
        if len(els) != len(set(els)):
            raise MalformedInput("duplicate element ids")
        self.elements: tuple[str, ...] = tuple(sorted(els))
        self.element_set = frozenset(self.elements)
        us = [check_element_id(u) for u in units]
        if len(us) != len(set(us)):
            raise MalformedInput("duplicate unit ids")
        self.units: tuple[str, ...] = tuple(sorted(us))
        self.unit_set = frozenset(self.units)
        self.range_map = dict(range_map)
        self.source_map = dict(source_map)
        self.inverse_map = dict(inverse_map)
        self.compose_map = dict(compose_map)
        self._r_fibers: dict[str, list[str]] = {}
        for x in self.elements:
            u = self.range_map.get(x)
            if u is not None:
                self._r_fibers.setdefault(u, []).append(x)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.units == other.units
            and self.range_map == other.range_map
            and self.source_map == other.source_map
            and self.inverse_map == other.inverse_map
            and self.compose_map == other.compose_map
        )

    def __repr__(self) -> str:
        return f"FiniteGroupoid({len(self.elements)} elements, {len(self.units)} units)"

    def r(self, x: str) -> str:
        return self.range_map[x]

    def d(self, x: str) -> str:
        return self.source_map[x]

    def inv(self, x: str) -> str:
        return self.inverse_map[x]

    def is_unit(self, x: str) -> bool:
        return x in self.unit_set

    def composable(self, x: str, y: str) -> bool:
        return self.source_map[x] == self.range_map[y]

    def compose(self, x: str, y: str) -> str:
        return self.compose_map[(x, y)]

    def fiber(self, u: str) -> tuple[str, ...]:
        """All x with r(x) = u, in canonical order (no unit check)."""
        return tuple(self._r_fibers.get(u, ()))

    def between(self, u: str, v: str) -> tuple[str, ...]:
        """All x with r(x) = u and d(x) = v."""
        return tuple(x for x in self.fiber(u) if self.source_map[x] == v)


def r_fiber(g: FiniteGroupoid, u: str) -> frozenset[str]:
    """{x : r(x) = u}; raises NotAUnit when u is not a unit of g."""
    if u not in g.unit_set:
        raise NotAUnit(f"{u!r} is not a unit")
    return frozenset(g.fiber(u))


def _referential_check(g: FiniteGroupoid) -> None:
    els = g.element_set
    for name, table in (("range", g.range_map), ("source", g.source_map), ("inverse", g.inverse_map)):
        for x in g.elements:
            if x not in table:
                raise MalformedInput(f"{name} map undefined at {x!r}")
        for x, y in table.items():
            if x not in els:
                raise MalformedInput(f"{name} map keyed by unknown id {x!r}")
            if y not in els:
                raise MalformedInput(f"{name} map sends {x!r} to unknown id {y!r}")
    for u in g.units:
        if u not in els:
            raise MalformedInput(f"unit {u!r} is not an element")
    for (x, y), z in g.compose_map.items():
        for w in (x, y, z):
            if w not in els:
                raise MalformedInput(f"compose entry ({x!r}, {y!r}) -> {z!r} references unknown id {w!r}")


def validate_groupoid(g: FiniteGroupoid) -> ValidationReport:
    """Exhaustively check the groupoid axioms.

    Raises MalformedInput when tables reference unknown ids; otherwise returns
    a report naming every violated axiom with witnessing elements.
    """
    _referential_check(g)
    bad: list[Violation] = []

    for x in g.elements:
        if g.range_map[x] not in g.unit_set:
            bad.append(Violation("range-into-units", (x,), f"r({x}) = {g.range_map[x]} is not a unit"))
        if g.source_map[x] not in g.unit_set:
            bad.append(Violation("source-into-units", (x,), f"d({x}) = {g.source_map[x]} is not a unit"))

    for u in g.units:
        if g.range_map[u] != u or g.source_map[u] != u:
            bad.append(Violation("unit-fixed", (u,), f"r({u}) = {g.range_map[u]}, d({u}) = {g.source_map[u]}, expected both {u}"))

    # compose defined exactly on composable pairs, with correct range/source
    defined = set(g.compose_map)
    for x in g.elements:
        for y in g.elements:
            if g.source_map[x] == g.range_map[y]:
                if (x, y) not in defined:
                    bad.append(Violation("compose-total", (x, y), "composable pair has no product"))
            elif (x, y) in defined:
                bad.append(Violation("compose-domain", (x, y), "product defined on a non-composable pair"))
    for (x, y), z in sorted(g.compose_map.items()):
        if g.source_map[x] != g.range_map[y]:
            continue
        if g.range_map[z] != g.range_map[x]:
            bad.append(Violation("range-of-product", (x, y, z), f"r({x}{y}) = {g.range_map[z]} != r({x})"))
        if g.source_map[z] != g.source_map[y]:
            bad.append(Violation("source-of-product", (x, y, z), f"d({x}{y}) = {g.source_map[z]} != d({y})"))

    # associativity on all composable triples
    for (x, y), xy in sorted(g.compose_map.items()):
        if g.source_map[x] != g.range_map[y]:
            continue
        for z in g.fiber(g.source_map[y]):
            lhs = g.compose_map.get((xy, z))
            yz = g.compose_map.get((y, z))
            rhs = g.compose_map.get((x, yz)) if yz is not None else None
            if lhs is None or rhs is None or lhs != rhs:
                bad.append(Violation("associativity", (x, y, z), f"({x}{y}){z} = {lhs}, {x}({y}{z}) = {rhs}"))

    for x in g.elements:
        if g.compose_map.get((x, g.source_map[x])) != x:
            bad.append(Violation("right-unit-law", (x,), f"{x}·d({x}) != {x}"))
        if g.compose_map.get((g.range_map[x], x)) != x:
            bad.append(Violation("left-unit-law", (x,), f"r({x})·{x} != {x}"))

    for x in g.elements:
        xi = g.inverse_map[x]
        if g.inverse_map.get(xi) != x:
            bad.append(Violation("inverse-involution", (x,), f"inverse(inverse({x})) = {g.inverse_map.get(xi)}"))
        if g.range_map[xi] != g.source_map[x] or g.source_map[xi] != g.range_map[x]:
            bad.append(Violation("inverse-swaps-ends", (x,), f"r/d of inverse({x}) do not swap r/d of {x}"))
            continue
        if g.compose_map.get((x, xi)) != g.range_map[x]:
            bad.append(Violation("inverse-law", (x,), f"{x}·{x}⁻¹ != r({x})"))
        if g.compose_map.get((xi, x)) != g.source_map[x]:
            bad.append(Violation("inverse-law", (x,), f"{x}⁻¹·{x} != d({x})"))

    return ValidationReport(tuple(bad))


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of the unit set into orbits, with a unit -> block index map."""

    blocks: tuple[tuple[str, ...], ...]
    index: Mapping[str, int]

    def same_orbit(self, u: str, v: str) -> bool:
        return self.index[u] == self.index[v]


def orbits(g: FiniteGroupoid) -> OrbitPartition:
    """Connected components of the unit set under u ~ d(x) for r(x) = u."""
    parent = {u: u for u in g.units}

    def find(u: str) -> str:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for x in g.elements:
        a, b = find(g.range_map[x]), find(g.source_map[x])
        if a != b:
            parent[a] = b
    groups: dict[str, list[str]] = {}
    for u in g.units:
        groups.setdefault(find(u), []).append(u)
    blocks = tuple(sorted((tuple(sorted(b)) for b in groups.values()), key=lambda b: b[0]))
    index = {u: i for i, block in enumerate(blocks) for u in block}
    return OrbitPartition(blocks, index)


class GroupoidHom:
    """Structure-preserving element map between two finite groupoids."""

    def __init__(self, domain: FiniteGroupoid, codomain: FiniteGroupoid, mapping: Mapping[str, str]):
        self.domain = domain
        self.codomain = codomain
        self.mapping = dict(mapping)

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupoidHom):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.mapping == other.mapping
        )

    def __repr__(self) -> str:
        return f"GroupoidHom({len(self.mapping)} elements mapped)"


def identity_hom(g: FiniteGroupoid) -> GroupoidHom:
    return GroupoidHom(g, g, {x: x for x in g.elements})


def compose_homs(second: GroupoidHom, first: GroupoidHom) -> GroupoidHom:
    if first.codomain != second.domain:
        raise MalformedInput("homomorphisms not composable: codomain/domain mismatch")
    return GroupoidHom(first.domain, second.codomain, {x: second.mapping[first.mapping[x]] for x in first.domain.elements})


def validate_hom(p: GroupoidHom) -> ValidationReport:
    """Check unit preservation, compatibility with r/d/inverse and products."""
    dom, cod = p.domain, p.codomain
    for x in dom.elements:
        if x not in p.mapping:
            raise MalformedInput(f"hom undefined at {x!r}")
    for x, y in p.mapping.items():
        if x not in dom.element_set:
            raise MalformedInput(f"hom keyed by unknown id {x!r}")
        if y not in cod.element_set:
            raise MalformedInput(f"hom sends {x!r} to unknown id {y!r}")

    bad: list[Violation] = []
    f = p.mapping
    for u in dom.units:
        if f[u] not in cod.unit_set:
            bad.append(Violation("hom-preserves-units", (u,), f"image {f[u]} is not a unit"))
    for x in dom.elements:
        if cod.range_map[f[x]] != f[dom.range_map[x]]:
            bad.append(Violation("hom-commutes-with-range", (x,), f"r(p({x})) != p(r({x}))"))
        if cod.source_map[f[x]] != f[dom.source_map[x]]:
            bad.append(Violation("hom-commutes-with-source", (x,), f"d(p({x})) != p(d({x}))"))
        if cod.inverse_map[f[x]] != f[dom.inverse_map[x]]:
            bad.append(Violation("hom-preserves-inverse", (x,), f"p({x})⁻¹ != p({x}⁻¹)"))
    for (x, y), z in sorted(dom.compose_map.items()):
        if dom.source_map[x] != dom.range_map[y]:
            continue
        image = cod.compose_map.get((f[x], f[y]))
        if image is None:
            bad.append(Violation("hom-preserves-composability", (x, y), f"images {f[x]}, {f[y]} are not composable"))
        elif image != f[z]:
            bad.append(Violation("hom-preserves-product", (x, y), f"p({x})p({y}) = {image} != p({x}{y}) = {f[z]}"))
    return ValidationReport(tuple(bad))


def orbit_map_through(p: GroupoidHom) -> dict[str, int]:
    """x -> orbit index of r(p(x)) in the codomain's orbit partition."""
    part = orbits(p.codomain)
    cod = p.codomain
    return {x: part.index[cod.range_map[p.mapping[x]]] for x in p.domain.elements}
