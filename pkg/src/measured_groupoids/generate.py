"""Seeded random instances: Haar groupoids and valid cospans.

Generators are deterministic functions of (seed, bounds) and always emit
instances that pass every validator. Structures are mixed from disjoint
unions of pair groupoids, cyclic groups and transformation groupoids; leg
homomorphisms are drawn from a fixed menu of surjective patterns (identity,
fold of two copies, thickening by a pair groupoid, action and pair covers of
a group base) so that measure-class preservation holds by construction, and
are still re-validated with resampling as a safety net.

`bounds` is (max_units, max_elements) per groupoid. The defaults stay well
below the point where the pullback's cubic axiom sweep stops being cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import GenerationExhausted
from .families import (
    cotrivial_groupoid,
    cyclic_group,
    direct_product,
    disjoint_union,
    pair_groupoid,
    transformation_groupoid,
    trivial_group,
    GroupAction,
    trivial_action,
)
from .groupoid import FiniteGroupoid, GroupoidHom, orbits
from .haar import HaarGroupoid, haar_system_from_source_weights
from .measures import FiniteMeasure, MeasureSystem, ZERO
from .pullback import Cospan, validate_cospan

DEFAULT_BOUNDS = (4, 24)
_MAX_TRIES = 50


def _rng(seed, tag: str) -> random.Random:
    return random.Random(f"{seed}/{tag}")


def _weight(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 6), rng.randint(1, 6))


def _involution_action(rng: random.Random, group: FiniteGroupoid, points: list[str]) -> GroupAction:
    """A Z2 action by a random involution of the point set."""
    e, g = group.elements[0], group.elements[1]
    if group.units[0] != e:
        e, g = g, e
    shuffled = points[:]
    rng.shuffle(shuffled)
    partner = {}
    while len(shuffled) >= 2:
        a, b = shuffled.pop(), shuffled.pop()
        partner[a], partner[b] = b, a
    for y in shuffled:
        partner[y] = y
    act = {}
    for y in points:
        act[(y, e)] = y
        act[(y, g)] = partner[y]
    return GroupAction(group, points, act)


def _random_component(rng: random.Random, max_units: int, max_elements: int, tag: str) -> FiniteGroupoid:
    kinds = ["trivial"]
    if max_elements >= 2:
        kinds += ["cyclic", "cyclic"]
    if max_units >= 2 and max_elements >= 4:
        kinds += ["pair", "transformation"]
    kind = rng.choice(kinds)
    if kind == "cyclic":
        return cyclic_group(rng.randint(2, min(4, max_elements)))
    if kind == "pair":
        top = min(max_units, int(max_elements ** 0.5))
        n = rng.randint(2, max(2, top))
        return pair_groupoid([f"{tag}{i}" for i in range(n)])
    if kind == "transformation":
        m = rng.randint(2, min(max_units, max_elements // 2, 4))
        points = [f"{tag}{i}" for i in range(m)]
        group = cyclic_group(2)
        return transformation_groupoid(_involution_action(rng, group, points))
    return trivial_group()


def random_groupoid(seed, bounds=DEFAULT_BOUNDS) -> FiniteGroupoid:
    """A valid finite groupoid: a disjoint union of random components."""
    max_units, max_elements = bounds
    if max_units < 1 or max_elements < 1:
        raise GenerationExhausted("bounds must be at least (1, 1)")
    rng = _rng(seed, "structure")
    comps: list[FiniteGroupoid] = []
    units_left, els_left = max_units, max_elements
    for i in range(rng.randint(1, max(1, min(3, max_units)))):
        if units_left < 1 or els_left < 1:
            break
        comp = _random_component(rng, units_left, els_left, f"p{i}x")
        if len(comp.units) > units_left or len(comp.elements) > els_left:
            continue
        comps.append(comp)
        units_left -= len(comp.units)
        els_left -= len(comp.elements)
    if not comps:
        comps = [trivial_group()]
    if len(comps) == 1:
        return comps[0]
    g, _ = disjoint_union(comps, [f"c{i}" for i in range(len(comps))])
    return g


def attach_random_haar(rng: random.Random, g: FiniteGroupoid, null_orbits: bool = False) -> HaarGroupoid:
    """Random positive fiber weights plus a unit measure; with `null_orbits`,
    a proper nonempty union of orbits is given measure zero (null sets must be
    orbit-saturated or quasi-invariance would fail)."""
    c = {u: _weight(rng) for u in g.units}
    haar = haar_system_from_source_weights(g, c)
    part = orbits(g)
    nulled: set[int] = set()
    if null_orbits and len(part.blocks) >= 2:
        k = rng.randint(1, len(part.blocks) - 1)
        nulled = set(rng.sample(range(len(part.blocks)), k))
    mu0 = {u: (ZERO if part.index[u] in nulled else _weight(rng)) for u in g.units}
    return HaarGroupoid(g, haar, FiniteMeasure(g.units, mu0))


def random_haar_groupoid(seed, bounds=DEFAULT_BOUNDS, null_orbits: bool = False) -> HaarGroupoid:
    g = random_groupoid(seed, bounds)
    return attach_random_haar(_rng(seed, "haar"), g, null_orbits=null_orbits)


# ---------------------------------------------------------------------------
# cospan legs


def _leg_identity(rng, base: FiniteGroupoid):
    return base, {x: x for x in base.elements}


def _leg_fold(rng, base: FiniteGroupoid):
    doubled, renamings = disjoint_union([base, base], ["a", "b"])
    mapping = {}
    for ren in renamings:
        mapping.update({new: old for old, new in ren.items()})
    return doubled, mapping


def _leg_thicken(rng, base: FiniteGroupoid):
    pair = pair_groupoid(["i", "j"])
    product, eid = direct_product(base, pair)
    return product, {pid: x for (x, _), pid in eid.items()}


def _leg_action_cover(rng, base: FiniteGroupoid):
    # base must be a one-unit group; the leg is a transformation groupoid of a
    # base action and the hom projects onto the acting arrow
    m = rng.randint(2, 4)
    points = [f"y{i}" for i in range(m)]
    if len(base.elements) == 2:
        action = _involution_action(rng, base, points)
    else:
        action = trivial_action(base, points)
    leg = transformation_groupoid(action)
    mapping = {}
    for y in points:
        for gm in base.elements:
            mapping[f"{y}:{gm}"] = gm
    return leg, mapping


def _leg_pair_cover(rng, base: FiniteGroupoid):
    # base must be cyclic_group(n) with elements g0..g{n-1}; the leg is the
    # pair groupoid on n points with (i, j) -> g_{(i - j) mod n}
    n = len(base.elements)
    order = base.elements  # sorted g0..g{n-1}, n <= 4 keeps this lexicographic
    leg = pair_groupoid([f"q{i}" for i in range(n)])
    mapping = {}
    for i in range(n):
        for j in range(n):
            mapping[f"q{i}-q{j}"] = order[(i - j) % n]
    return leg, mapping


def _leg_inclusion(base: FiniteGroupoid, kept_units) -> tuple[FiniteGroupoid, dict[str, str]]:
    # full subgroupoid over an orbit-saturated unit subset, included as is;
    # measure-class preserving exactly when the dropped part is null
    keep = frozenset(kept_units)
    els = [x for x in base.elements if base.r(x) in keep and base.d(x) in keep]
    sub = FiniteGroupoid(
        els,
        [u for u in base.units if u in keep],
        {x: base.r(x) for x in els},
        {x: base.d(x) for x in els},
        {x: base.inv(x) for x in els},
        {(x, y): z for (x, y), z in base.compose_map.items() if x in els and y in els},
    )
    return sub, {x: x for x in els}


def _random_leg(rng, base: FiniteGroupoid, max_units: int, max_elements: int, base_is_group: bool, supp_units=None):
    patterns = [("identity", _leg_identity)]
    if 2 * len(base.units) <= max_units and 2 * len(base.elements) <= max_elements:
        patterns.append(("fold", _leg_fold))
    if 2 * len(base.units) <= max_units and 4 * len(base.elements) <= max_elements:
        patterns.append(("thicken", _leg_thicken))
    if base_is_group:
        if 2 * len(base.elements) <= max_elements:
            patterns.append(("action-cover", _leg_action_cover))
        n = len(base.elements)
        if n >= 2 and n <= max_units and n * n <= max_elements:
            patterns.append(("pair-cover", _leg_pair_cover))
    if supp_units is not None and len(supp_units) < len(base.units):
        patterns.append(("inclusion", lambda rng_, b: _leg_inclusion(b, supp_units)))
    _, build = rng.choice(patterns)
    return build(rng, base)


def _measured_leg(rng, leg: FiniteGroupoid, mapping, base_h: HaarGroupoid) -> tuple[HaarGroupoid, GroupoidHom]:
    c = {u: _weight(rng) for u in leg.units}
    haar = haar_system_from_source_weights(leg, c)
    base_supp = base_h.unit_measure.support
    mu0 = {}
    for u in leg.units:
        mu0[u] = _weight(rng) if mapping[u] in base_supp else ZERO
    h = HaarGroupoid(leg, haar, FiniteMeasure(leg.units, mu0))
    return h, GroupoidHom(leg, base_h.groupoid, dict(mapping))


def random_cospan(seed, bounds=DEFAULT_BOUNDS, with_null_base: bool = False) -> Cospan:
    """A valid cospan of Haar groupoids. With `with_null_base` the base unit
    measure vanishes on a union of orbits and the legs have nonempty fibers
    over the null part, which is what the disintegration-independence theorem
    needs to say anything."""
    max_units, max_elements = bounds
    for attempt in range(_MAX_TRIES):
        rng = _rng(seed, f"cospan{attempt}")
        base_is_group = rng.random() < 0.4 and not with_null_base
        if base_is_group:
            base_g = cyclic_group(rng.randint(2, min(4, max(2, max_elements // 3))))
        else:
            comp_units = max(1, min(2, max_units // 2))
            comp_elements = max(1, min(6, max_elements // 3))
            parts = [_random_component(rng, comp_units, comp_elements, f"b{i}x") for i in range(2)]
            base_g, _ = disjoint_union(parts, ["m0", "m1"])
        base_h = attach_random_haar(rng, base_g, null_orbits=with_null_base)
        if with_null_base and not base_h.unit_measure.is_zero() and len(base_h.unit_measure.support) == len(base_g.units):
            continue  # no orbit got nulled; resample
        if base_h.unit_measure.is_zero():
            continue
        # the left leg always has all of the base's units in range of its unit
        # map, so null-base cospans keep nonempty null fibers there; the right
        # leg may additionally be a plain inclusion of the positive part
        left_g, left_map = _random_leg(rng, base_g, max_units, max_elements, base_is_group)
        supp_units = sorted(base_h.unit_measure.support) if with_null_base else None
        right_g, right_map = _random_leg(rng, base_g, max_units, max_elements, base_is_group, supp_units=supp_units)
        left_h, left_hom = _measured_leg(rng, left_g, left_map, base_h)
        right_h, right_hom = _measured_leg(rng, right_g, right_map, base_h)
        c = Cospan(left_h, base_h, right_h, left_hom, right_hom)
        if validate_cospan(c).ok:
            return c
    raise GenerationExhausted(f"no valid cospan for seed {seed!r} within {_MAX_TRIES} attempts")


def random_cotrivial_cospan(seed, bounds=DEFAULT_BOUNDS) -> Cospan:
    """A valid cospan whose base is cotrivial (units only), for comparing the
    weak pullback against the regular pullback."""
    max_units, max_elements = bounds
    for attempt in range(_MAX_TRIES):
        rng = _rng(seed, f"cotrivial{attempt}")
        k = rng.randint(1, min(4, max_units))
        base_g = cotrivial_groupoid([f"x{i}" for i in range(k)])
        base_h = attach_random_haar(rng, base_g)

        def leg(tag: str):
            m = rng.randint(k, min(4, max_units))
            comps = []
            for i in range(m):
                comps.append(_random_component(rng, 1, max(1, max_elements // m), f"{tag}{i}q"))
            g, renamings = disjoint_union(comps, [f"{tag}{i}" for i in range(m)])
            targets = [f"x{i}" for i in range(k)] + [f"x{rng.randrange(k)}" for _ in range(m - k)]
            rng.shuffle(targets)
            mapping = {}
            for comp_index, ren in enumerate(renamings):
                for new_id in ren.values():
                    mapping[new_id] = targets[comp_index]
            return g, mapping

        left_g, left_map = leg("s")
        right_g, right_map = leg("t")
        left_h, left_hom = _measured_leg(rng, left_g, left_map, base_h)
        right_h, right_hom = _measured_leg(rng, right_g, right_map, base_h)
        c = Cospan(left_h, base_h, right_h, left_hom, right_hom)
        if validate_cospan(c).ok:
            return c
    raise GenerationExhausted(f"no valid cotrivial cospan for seed {seed!r} within {_MAX_TRIES} attempts")


def alternate_disintegration(gamma: MeasureSystem, nu: FiniteMeasure, scale=2) -> MeasureSystem:
    """Rescale a disintegration on every nu-null fiber. The result is again a
    disintegration of the same pair, and differs from the input exactly when
    some null fiber is nonempty."""
    family = {}
    for y in gamma.codomain:
        m = gamma.at(y)
        if nu(y) == 0 and not m.is_zero():
            family[y] = m.scaled(scale)
        else:
            family[y] = m
    return MeasureSystem(gamma.over, gamma.domain, gamma.codomain, family)
