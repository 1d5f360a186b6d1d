"""Example families of groupoids and the canonical identifications of their
weak pullbacks: open-cover (Čech) groupoids, transformation groupoids of
group actions, cotrivial groupoids, pair groupoids, cyclic groups, disjoint
unions and direct products, the regular pullback, and an isomorphism verifier
driven by explicit maps (never by isomorphism search).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    EmptySpace,
    ImageMismatch,
    MalformedInput,
    NotEquivariant,
    PrecomputedConditionFailed,
)
from .groupoid import FiniteGroupoid, GroupoidHom, check_element_id, validate_hom
from .haar import HaarGroupoid, counting_haar_system
from .measures import counting, push_forward, same_measure_class
from .pullback import PullbackGroupoid, weak_pullback_groupoid


def _join(parts: Iterable[str], sep: str) -> str:
    parts = tuple(parts)
    for part in parts:
        check_element_id(part)
    return sep.join(parts)


def _decodable_join(parts: Iterable[str], sep: str) -> str:
    """Join for ids that are split back later: parts may not contain sep."""
    parts = tuple(parts)
    for part in parts:
        check_element_id(part)
        if sep in part:
            raise MalformedInput(f"name {part!r} may not contain {sep!r} in this construction")
    return sep.join(parts)


# ---------------------------------------------------------------------------
# elementary builders


def cotrivial_groupoid(space: Iterable[str]) -> FiniteGroupoid:
    """A bare set seen as a groupoid of units only."""
    pts = tuple(sorted(set(space)))
    if not pts:
        raise EmptySpace("cotrivial groupoid needs a nonempty space")
    ident = {x: x for x in pts}
    return FiniteGroupoid(pts, pts, ident, ident, ident, {(x, x): x for x in pts})


def trivial_group(unit: str = "e") -> FiniteGroupoid:
    return cotrivial_groupoid([unit])


def cyclic_group(n: int, prefix: str = "g") -> FiniteGroupoid:
    """Z_n as a one-unit groupoid with elements g0..g{n-1} and unit g0."""
    if n < 1:
        raise MalformedInput("cyclic group needs n >= 1")
    els = [f"{prefix}{i}" for i in range(n)]
    unit = els[0]
    const = {x: unit for x in els}
    return FiniteGroupoid(
        els,
        [unit],
        const,
        const,
        {els[i]: els[(-i) % n] for i in range(n)},
        {(els[i], els[j]): els[(i + j) % n] for i in range(n) for j in range(n)},
    )


def pair_groupoid(points: Iterable[str]) -> FiniteGroupoid:
    """Elements (a, b) written "a-b"; (a,b)(b,c) = (a,c), units on the diagonal."""
    pts = tuple(sorted(set(points)))
    if not pts:
        raise EmptySpace("pair groupoid needs a nonempty point set")
    eid = {(a, b): _join((a, b), "-") for a in pts for b in pts}
    if len(set(eid.values())) != len(eid):
        raise MalformedInput("point names collide under the a-b encoding")
    els = sorted(eid.values())
    units = [eid[(a, a)] for a in pts]
    range_map = {eid[(a, b)]: eid[(a, a)] for a in pts for b in pts}
    source_map = {eid[(a, b)]: eid[(b, b)] for a in pts for b in pts}
    inverse_map = {eid[(a, b)]: eid[(b, a)] for a in pts for b in pts}
    compose = {
        (eid[(a, b)], eid[(b, c)]): eid[(a, c)] for a in pts for b in pts for c in pts
    }
    return FiniteGroupoid(els, units, range_map, source_map, inverse_map, compose)


def disjoint_union(parts: Iterable[FiniteGroupoid], prefixes: Iterable[str]) -> tuple[FiniteGroupoid, list[dict[str, str]]]:
    """Disjoint union with prefixed element ids; returns the union and, per
    part, the map from old ids to new ids."""
    parts = tuple(parts)
    prefixes = tuple(prefixes)
    if len(parts) != len(prefixes) or len(set(prefixes)) != len(prefixes):
        raise MalformedInput("need one distinct prefix per part")
    elements: list[str] = []
    units: list[str] = []
    range_map: dict[str, str] = {}
    source_map: dict[str, str] = {}
    inverse_map: dict[str, str] = {}
    compose: dict[tuple[str, str], str] = {}
    renamings: list[dict[str, str]] = []
    for g, pre in zip(parts, prefixes):
        ren = {x: _join((pre, x), ".") for x in g.elements}
        renamings.append(ren)
        elements.extend(ren.values())
        units.extend(ren[u] for u in g.units)
        range_map.update({ren[x]: ren[g.r(x)] for x in g.elements})
        source_map.update({ren[x]: ren[g.d(x)] for x in g.elements})
        inverse_map.update({ren[x]: ren[g.inv(x)] for x in g.elements})
        compose.update({(ren[x], ren[y]): ren[z] for (x, y), z in g.compose_map.items()})
    return FiniteGroupoid(elements, units, range_map, source_map, inverse_map, compose), renamings


def direct_product(a: FiniteGroupoid, b: FiniteGroupoid) -> tuple[FiniteGroupoid, dict[tuple[str, str], str]]:
    """Componentwise product groupoid on pair ids "x|y"."""
    eid = {(x, y): _join((x, y), "|") for x in a.elements for y in b.elements}
    if len(set(eid.values())) != len(eid):
        raise MalformedInput("element ids collide under the x|y encoding")
    els = sorted(eid.values())
    units = [eid[(u, v)] for u in a.units for v in b.units]
    range_map = {eid[(x, y)]: eid[(a.r(x), b.r(y))] for (x, y) in eid}
    source_map = {eid[(x, y)]: eid[(a.d(x), b.d(y))] for (x, y) in eid}
    inverse_map = {eid[(x, y)]: eid[(a.inv(x), b.inv(y))] for (x, y) in eid}
    compose = {}
    for (x1, y1), z1 in a.compose_map.items():
        for (x2, y2), z2 in b.compose_map.items():
            compose[(eid[(x1, x2)], eid[(y1, y2)])] = eid[(z1, z2)]
    return FiniteGroupoid(els, units, range_map, source_map, inverse_map, compose), eid


def with_counting_haar(g: FiniteGroupoid) -> HaarGroupoid:
    """Default measured structure: counting fiber weights, unit weights one."""
    return HaarGroupoid(g, counting_haar_system(g), counting(g.units))


# ---------------------------------------------------------------------------
# open-cover groupoids


@dataclass(frozen=True)
class FiniteCover:
    """An indexed family of subsets covering a finite space."""

    space: tuple[str, ...]
    blocks: Mapping[str, frozenset[str]]

    @staticmethod
    def build(space: Iterable[str], blocks: Mapping[str, Iterable[str]]) -> "FiniteCover":
        pts = tuple(sorted(set(space)))
        blk = {check_element_id(i): frozenset(b) for i, b in blocks.items()}
        for i, b in blk.items():
            stray = b - set(pts)
            if stray:
                raise MalformedInput(f"cover block {i!r} contains unknown points {sorted(stray)}")
        covered = frozenset().union(*blk.values()) if blk else frozenset()
        if covered != frozenset(pts):
            missing = sorted(set(pts) - covered)
            raise MalformedInput(f"blocks do not cover the space; missing {missing}")
        return FiniteCover(pts, blk)

    @property
    def index_set(self) -> tuple[str, ...]:
        return tuple(sorted(self.blocks))


def cech_id(a: str, y: str, b: str) -> str:
    return _decodable_join((a, y, b), ":")


def cech_groupoid(cover: FiniteCover) -> FiniteGroupoid:
    """Elements (a, y, b) with y in the overlap of blocks a and b; the point
    is carried along, composition glues matching indices. Empty blocks simply
    contribute no elements."""
    triples = [
        (a, y, b)
        for a in cover.index_set
        for b in cover.index_set
        for y in sorted(cover.blocks[a] & cover.blocks[b])
    ]
    ids = {tr: cech_id(*tr) for tr in triples}
    if len(set(ids.values())) != len(ids):
        raise MalformedInput("cover names collide under the a:y:b encoding")
    els = sorted(ids.values())
    units = [ids[(a, y, a)] for (a, y, b) in triples if a == b]
    range_map = {ids[(a, y, b)]: ids[(a, y, a)] for (a, y, b) in triples}
    source_map = {ids[(a, y, b)]: ids[(b, y, b)] for (a, y, b) in triples}
    inverse_map = {ids[(a, y, b)]: ids[(b, y, a)] for (a, y, b) in triples}
    compose = {}
    for (a, y, b) in triples:
        for c in cover.index_set:
            if y in cover.blocks[c]:
                compose[(ids[(a, y, b)], ids[(b, y, c)])] = ids[(a, y, c)]
    return FiniteGroupoid(els, units, range_map, source_map, inverse_map, compose)


def cech_hom(f: Mapping[str, str], cover_dom: FiniteCover, cover_cod: FiniteCover) -> GroupoidHom:
    """(a, y, b) -> (a, f(y), b); requires f to send each block into the
    correspondingly indexed block of the codomain cover."""
    if cover_dom.index_set != cover_cod.index_set:
        raise ImageMismatch("covers are not matched by a common index set")
    for a in cover_dom.index_set:
        image = {f[y] for y in cover_dom.blocks[a]}
        if not image <= cover_cod.blocks[a]:
            raise ImageMismatch(f"image of block {a!r} leaves the target block")
    dom = cech_groupoid(cover_dom)
    cod = cech_groupoid(cover_cod)
    mapping = {}
    for x in dom.elements:
        a, y, b = x.split(":")
        mapping[x] = cech_id(a, f[y], b)
    return GroupoidHom(dom, cod, mapping)


@dataclass
class CechCospanData:
    """Matched covers over a common index set together with the two maps into
    the base space; the base cover is formed from the (equal) block images."""

    cover_left: FiniteCover
    cover_right: FiniteCover
    base_space: tuple[str, ...]
    map_left: dict[str, str]
    map_right: dict[str, str]

    def __post_init__(self):
        if self.cover_left.index_set != self.cover_right.index_set:
            raise ImageMismatch("covers must share one index set")
        blocks = {}
        for a in self.cover_left.index_set:
            li = frozenset(self.map_left[y] for y in self.cover_left.blocks[a])
            ri = frozenset(self.map_right[z] for z in self.cover_right.blocks[a])
            if li != ri:
                raise ImageMismatch(f"block {a!r}: images under the two maps differ")
            blocks[a] = li
        self.base_cover = FiniteCover.build(self.base_space, blocks)


def cech_cospan_groupoids(data: CechCospanData) -> tuple[FiniteGroupoid, FiniteGroupoid, FiniteGroupoid, GroupoidHom, GroupoidHom]:
    left = cech_groupoid(data.cover_left)
    right = cech_groupoid(data.cover_right)
    base = cech_groupoid(data.base_cover)
    hom_left = cech_hom(data.map_left, data.cover_left, data.base_cover)
    hom_right = cech_hom(data.map_right, data.cover_right, data.base_cover)
    assert hom_left.codomain == base and hom_right.codomain == base
    return left, base, right, GroupoidHom(left, base, hom_left.mapping), GroupoidHom(right, base, hom_right.mapping)


def product_cover(data: CechCospanData) -> FiniteCover:
    """Cover of the regular pullback space by pairwise block products."""
    pullback_pts = {
        _join((y, z), ","): (y, z)
        for y in data.cover_left.space
        for z in data.cover_right.space
        if data.map_left[y] == data.map_right[z]
    }
    blocks = {}
    for a in data.cover_left.index_set:
        for b in data.cover_right.index_set:
            blocks[_join((a, b), ",")] = {
                pt
                for pt, (y, z) in pullback_pts.items()
                if y in data.cover_left.blocks[a] and z in data.cover_right.blocks[b]
            }
    return FiniteCover.build(tuple(pullback_pts), blocks)


def canonical_iso_cech(data: CechCospanData) -> tuple[PullbackGroupoid, FiniteGroupoid, GroupoidHom]:
    """The identification of the weak pullback of a cover cospan with the
    open-cover groupoid of the product cover:
    ((a,y,b), (a,x,e), (e,z,f)) -> ((a,e), (y,z), (b,f)).

    Raises PrecomputedConditionFailed if some pullback triple does not have
    the forced canonical shape, which would signal an upstream bug."""
    left, base, right, hom_left, hom_right = cech_cospan_groupoids(data)
    alg = weak_pullback_groupoid(left, base, right, hom_left.mapping, hom_right.mapping)
    target = cech_groupoid(product_cover(data))
    mapping = {}
    for pid, (s, g, t) in alg.triples.items():
        a, y, b = s.split(":")
        ga, x, ge = g.split(":")
        e, z, f = t.split(":")
        if ga != a or ge != e or x != data.map_left[y] or x != data.map_right[z]:
            raise PrecomputedConditionFailed(
                f"pullback triple {pid!r} is not in canonical cover form"
            )
        mapping[pid] = cech_id(_join((a, e), ","), _join((y, z), ","), _join((b, f), ","))
    return alg, target, GroupoidHom(alg.groupoid, target, mapping)


# ---------------------------------------------------------------------------
# transformation groupoids


class GroupAction:
    """A right action of a one-unit groupoid (a group) on a finite set."""

    def __init__(self, group: FiniteGroupoid, space: Iterable[str], act: Mapping[tuple[str, str], str]):
        if len(group.units) != 1:
            raise MalformedInput("acting groupoid must have a single unit")
        self.group = group
        self.space = tuple(sorted(set(space)))
        self.act = dict(act)
        e = group.units[0]
        pts = frozenset(self.space)
        for y in self.space:
            for gm in group.elements:
                img = self.act.get((y, gm))
                if img is None or img not in pts:
                    raise MalformedInput(f"action undefined or leaves the space at ({y!r}, {gm!r})")
        for y in self.space:
            if self.act[(y, e)] != y:
                raise MalformedInput(f"unit must act trivially, fails at {y!r}")
            for g1 in group.elements:
                for g2 in group.elements:
                    if self.act[(self.act[(y, g1)], g2)] != self.act[(y, group.compose(g1, g2))]:
                        raise MalformedInput(f"action is not compatible with the product at ({y!r}, {g1!r}, {g2!r})")

    @property
    def unit(self) -> str:
        return self.group.units[0]


def trivial_action(group: FiniteGroupoid, space: Iterable[str]) -> GroupAction:
    space = tuple(space)
    return GroupAction(group, space, {(y, gm): y for y in space for gm in group.elements})


def transformation_id(y: str, gm: str) -> str:
    return _decodable_join((y, gm), ":")


def transformation_groupoid(action: GroupAction) -> FiniteGroupoid:
    """Elements (y, γ) with (y, γ)(yγ, γ') = (y, γγ'); units (y, e)."""
    group = action.group
    e = action.unit
    pairs = [(y, gm) for y in action.space for gm in group.elements]
    ids = {pr: transformation_id(*pr) for pr in pairs}
    if len(set(ids.values())) != len(ids):
        raise MalformedInput("action names collide under the y:g encoding")
    els = sorted(ids.values())
    units = [ids[(y, e)] for y in action.space]
    range_map = {ids[(y, gm)]: ids[(y, e)] for (y, gm) in pairs}
    source_map = {ids[(y, gm)]: ids[(action.act[(y, gm)], e)] for (y, gm) in pairs}
    inverse_map = {ids[(y, gm)]: ids[(action.act[(y, gm)], group.inv(gm))] for (y, gm) in pairs}
    compose = {}
    for (y, gm) in pairs:
        moved = action.act[(y, gm)]
        for gm2 in group.elements:
            compose[(ids[(y, gm)], ids[(moved, gm2)])] = ids[(y, group.compose(gm, gm2))]
    return FiniteGroupoid(els, units, range_map, source_map, inverse_map, compose)


@dataclass
class TransformationCospanData:
    """Two group actions and equivariantly-invariant maps into a base space."""

    action_left: GroupAction
    action_right: GroupAction
    base_space: tuple[str, ...]
    map_left: dict[str, str]
    map_right: dict[str, str]

    def __post_init__(self):
        base = frozenset(self.base_space)
        for name, action, f in (
            ("left", self.action_left, self.map_left),
            ("right", self.action_right, self.map_right),
        ):
            for y in action.space:
                if f.get(y) not in base:
                    raise MalformedInput(f"{name} map undefined or leaves the base at {y!r}")
                for gm in action.group.elements:
                    if f[action.act[(y, gm)]] != f[y]:
                        raise NotEquivariant(f"{name} map is not invariant under the action at ({y!r}, {gm!r})")


def transformation_cospan_groupoids(
    data: TransformationCospanData,
) -> tuple[FiniteGroupoid, FiniteGroupoid, FiniteGroupoid, GroupoidHom, GroupoidHom]:
    left = transformation_groupoid(data.action_left)
    right = transformation_groupoid(data.action_right)
    base = cotrivial_groupoid(data.base_space)
    map_left = {}
    for x in left.elements:
        y, _ = x.split(":")
        map_left[x] = data.map_left[y]
    map_right = {}
    for x in right.elements:
        z, _ = x.split(":")
        map_right[x] = data.map_right[z]
    return left, base, right, GroupoidHom(left, base, map_left), GroupoidHom(right, base, map_right)


def canonical_iso_transformation(data: TransformationCospanData) -> tuple[PullbackGroupoid, FiniteGroupoid, GroupoidHom]:
    """The identification of the weak pullback over a cotrivial base with the
    transformation groupoid of the product action on the pullback space:
    ((y,γ), x, (z,λ)) -> ((y,z), (γ,λ))."""
    left, base, right, hom_left, hom_right = transformation_cospan_groupoids(data)
    alg = weak_pullback_groupoid(left, base, right, hom_left.mapping, hom_right.mapping)
    product_group, gid = direct_product(data.action_left.group, data.action_right.group)
    pull_pts = {
        _join((y, z), ","): (y, z)
        for y in data.action_left.space
        for z in data.action_right.space
        if data.map_left[y] == data.map_right[z]
    }
    act = {}
    for pt, (y, z) in pull_pts.items():
        for g1 in data.action_left.group.elements:
            for g2 in data.action_right.group.elements:
                moved = (data.action_left.act[(y, g1)], data.action_right.act[(z, g2)])
                act[(pt, gid[(g1, g2)])] = _join(moved, ",")
    product_action = GroupAction(product_group, tuple(pull_pts), act)
    target = transformation_groupoid(product_action)
    mapping = {}
    for pid, (s, g, t) in alg.triples.items():
        y, g1 = s.split(":")
        z, g2 = t.split(":")
        if g != data.map_left[y] or g != data.map_right[z]:
            raise PrecomputedConditionFailed(f"pullback triple {pid!r} is not in canonical action form")
        mapping[pid] = transformation_id(_join((y, z), ","), gid[(g1, g2)])
    return alg, target, GroupoidHom(alg.groupoid, target, mapping)


# ---------------------------------------------------------------------------
# regular pullback and the isomorphism verifier


def regular_pullback(
    s_g: FiniteGroupoid, base: FiniteGroupoid, t_g: FiniteGroupoid, p: Mapping[str, str], q: Mapping[str, str]
) -> tuple[FiniteGroupoid, dict[str, tuple[str, str]]]:
    """{(s, t) : p(s) = q(t)} with componentwise structure."""
    pairs = [(s, t) for s in s_g.elements for t in t_g.elements if p[s] == q[t]]
    ids = {pr: _join(pr, "|") for pr in pairs}
    if len(set(ids.values())) != len(ids):
        raise MalformedInput("element ids collide under the s|t encoding")
    els = sorted(ids.values())
    units = [ids[(u, v)] for (u, v) in pairs if u in s_g.unit_set and v in t_g.unit_set]
    range_map = {ids[(s, t)]: ids[(s_g.r(s), t_g.r(t))] for (s, t) in pairs}
    source_map = {ids[(s, t)]: ids[(s_g.d(s), t_g.d(t))] for (s, t) in pairs}
    inverse_map = {ids[(s, t)]: ids[(s_g.inv(s), t_g.inv(t))] for (s, t) in pairs}
    compose = {}
    pair_set = set(pairs)
    for (s, t) in pairs:
        for (s2, t2) in pairs:
            if s_g.composable(s, s2) and t_g.composable(t, t2):
                target = (s_g.compose(s, s2), t_g.compose(t, t2))
                if target not in pair_set:
                    raise MalformedInput("regular pullback is not closed under composition")
                compose[(ids[(s, t)], ids[(s2, t2)])] = ids[target]
    g = FiniteGroupoid(els, units, range_map, source_map, inverse_map, compose)
    return g, {i: pr for pr, i in ids.items()}


def cotrivial_comparison_hom(alg: PullbackGroupoid, regular: FiniteGroupoid, components: dict[str, tuple[str, str]]) -> GroupoidHom:
    """(s, g, t) -> (s, t), the explicit comparison with the regular pullback;
    an isomorphism exactly when the base is cotrivial."""
    reverse = {pr: i for i, pr in components.items()}
    mapping = {}
    for pid, (s, _, t) in alg.triples.items():
        key = (s, t)
        if key not in reverse:
            raise MalformedInput(f"pullback triple {pid!r} has no counterpart in the regular pullback")
        mapping[pid] = reverse[key]
    return GroupoidHom(alg.groupoid, regular, mapping)


@dataclass(frozen=True)
class IsoVerdict:
    is_isomorphism: bool
    measure_class_both_ways: bool | None = None

    def __bool__(self) -> bool:
        return self.is_isomorphism


def is_isomorphism(f: GroupoidHom, dom: HaarGroupoid | None = None, cod: HaarGroupoid | None = None) -> IsoVerdict:
    """True iff f is a valid homomorphism and a bijection on elements. With
    measured arguments, additionally reports whether f preserves the induced
    measure class in both directions."""
    if not validate_hom(f).ok:
        return IsoVerdict(False)
    image = set(f.mapping.values())
    bij = len(image) == len(f.domain.elements) and image == set(f.codomain.elements)
    measures = None
    if bij and dom is not None and cod is not None:
        from .haar import induced_measure

        mu_dom = induced_measure(dom)
        mu_cod = induced_measure(cod)
        forward = same_measure_class(push_forward(f.mapping, mu_dom, cod.groupoid.elements), mu_cod)
        backward_map = {v: k for k, v in f.mapping.items()}
        backward = same_measure_class(push_forward(backward_map, mu_cod, dom.groupoid.elements), mu_dom)
        measures = forward and backward
    return IsoVerdict(bij, measures)
