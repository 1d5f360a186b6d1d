from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from measured_groupoids import (
    FiniteMeasure,
    HaarGroupoid,
    NotQuasiInvariant,
    cotrivial_groupoid,
    counting_haar_system,
    cyclic_group,
    disjoint_union,
    haar_system_from_source_weights,
    induced_measure,
    inverse_measure,
    is_haar,
    is_quasi_invariant,
    modular_function,
    pair_groupoid,
    random_haar_groupoid,
    range_class_check,
    trivial_group,
    validate_haar_groupoid,
    validate_haar_hom,
    with_counting_haar,
)
from measured_groupoids.groupoid import GroupoidHom, identity_hom
from measured_groupoids.haar import validate_haar_groupoid as _validate

F = Fraction


def pair_with_units(w1, w2) -> HaarGroupoid:
    g = pair_groupoid(["1", "2"])
    return HaarGroupoid(g, counting_haar_system(g), FiniteMeasure(g.units, {"1-1": w1, "2-2": w2}))


def test_induced_measure_trivial():
    h = with_counting_haar(trivial_group())
    assert induced_measure(h)("e") == 1


def test_induced_measure_pair_groupoid():
    h = pair_with_units(1, 2)
    mu = induced_measure(h)
    assert (mu("1-1"), mu("1-2"), mu("2-1"), mu("2-2")) == (1, 1, 2, 2)


def test_induced_measure_group_invariance_forces_constant():
    z2 = cyclic_group(2)
    haar = haar_system_from_source_weights(z2, {"g0": 3})
    h = HaarGroupoid(z2, haar, FiniteMeasure(z2.units, {"g0": 5}))
    mu = induced_measure(h)
    assert (mu("g0"), mu("g1")) == (15, 15)


def test_inverse_measure_symmetric_on_group():
    z2 = cyclic_group(2)
    mu = FiniteMeasure(z2.elements, {"g0": 2, "g1": 2})
    assert inverse_measure(mu, z2) == mu


def test_inverse_measure_pair_groupoid():
    h = pair_with_units(1, 2)
    mu_inv = inverse_measure(induced_measure(h), h.groupoid)
    assert mu_inv("1-2") == 2


def test_inverse_measure_on_units_only():
    c = cotrivial_groupoid(["x", "y"])
    mu = FiniteMeasure(c.elements, {"x": 3})
    assert inverse_measure(mu, c) == mu


def test_is_haar_counting_on_pair_groupoid():
    g = pair_groupoid(["1", "2"])
    assert is_haar(g, counting_haar_system(g)).ok


def test_is_haar_rejects_non_invariant_weights():
    z2 = cyclic_group(2)
    s = counting_haar_system(z2)
    lopsided = dict(s.family)
    lopsided["g0"] = FiniteMeasure(z2.elements, {"g0": 1, "g1": 2})
    from measured_groupoids.measures import MeasureSystem

    bad = MeasureSystem(s.over, s.domain, s.codomain, lopsided)
    report = is_haar(z2, bad)
    assert not report.ok
    assert any(v.rule == "left-invariance" and "g1" in v.witnesses for v in report.violations)


def test_is_haar_units_only_any_full_system():
    c = cotrivial_groupoid(["x", "y", "z"])
    s = haar_system_from_source_weights(c, {"x": F(1, 2), "y": 3, "z": 7})
    assert is_haar(c, s).ok


def test_quasi_invariance_strictly_positive():
    ok, witness = is_quasi_invariant(pair_with_units(1, 2))
    assert ok and witness is None


def test_quasi_invariance_fails_with_documented_witness():
    ok, witness = is_quasi_invariant(pair_with_units(1, 0))
    assert not ok
    assert witness == "1-2"
    mu = induced_measure(pair_with_units(1, 0))
    assert mu("1-2") == 1 and mu("2-1") == 0


def test_zero_unit_measure_rejected_upstream():
    g = pair_groupoid(["1", "2"])
    h = HaarGroupoid(g, counting_haar_system(g), FiniteMeasure(g.units))
    report = _validate(h)
    assert any(v.rule == "nonzero-unit-measure" for v in report.violations)


def test_modular_uniform_group_is_one():
    delta = modular_function(with_counting_haar(cyclic_group(2)))
    assert set(delta.values.values()) == {F(1)}


def test_modular_pair_groupoid_ratios():
    delta = modular_function(pair_with_units(1, 2))
    assert delta("1-2") == F(1, 2)
    assert delta("2-1") == F(2)


def test_modular_units_only_is_one():
    h = with_counting_haar(cotrivial_groupoid(["x", "y"]))
    assert set(modular_function(h).values.values()) == {F(1)}


def test_modular_requires_quasi_invariance():
    with pytest.raises(NotQuasiInvariant):
        modular_function(pair_with_units(1, 0))


def test_validate_haar_hom_identity():
    h = pair_with_units(1, 2)
    assert validate_haar_hom(identity_hom(h.groupoid), h, h).ok


def test_validate_haar_hom_collapse_pair_to_trivial():
    h = pair_with_units(1, 2)
    t = with_counting_haar(trivial_group())
    hom = GroupoidHom(h.groupoid, t.groupoid, {x: "e" for x in h.groupoid.elements})
    assert validate_haar_hom(hom, h, t).ok


def test_validate_haar_hom_vanishing_codomain_measure():
    # codomain: two disjoint trivial groups, measure only on the one we miss
    dom = with_counting_haar(trivial_group())
    cod_g, renamings = disjoint_union([trivial_group(), trivial_group()], ["a", "b"])
    cod = HaarGroupoid(
        cod_g, counting_haar_system(cod_g), FiniteMeasure(cod_g.units, {"b.e": 1})
    )
    hom = GroupoidHom(dom.groupoid, cod_g, {"e": "a.e"})
    report = validate_haar_hom(hom, dom, cod)
    assert not report.ok
    assert any(v.rule == "measure-class" for v in report.violations)


def test_range_class_check_examples():
    assert range_class_check(pair_with_units(1, 2))
    assert range_class_check(with_counting_haar(trivial_group()))


@given(st.integers(0, 300))
def test_random_haar_groupoids_validate(seed):
    h = random_haar_groupoid(seed)
    assert validate_haar_groupoid(h).ok
    assert range_class_check(h)


@given(st.integers(0, 200))
def test_left_invariance_corollary(seed):
    # lam^{r(x)}(x) = lam^{d(x)}(d(x)) for every element
    h = random_haar_groupoid(seed)
    g = h.groupoid
    for x in g.elements:
        assert h.haar.weight(g.r(x), x) == h.haar.weight(g.d(x), g.d(x))


@given(st.integers(0, 200))
def test_modular_laws_on_random_instances(seed):
    h = random_haar_groupoid(seed)
    g = h.groupoid
    delta = modular_function(h)
    support = delta.domain
    for x in support:
        assert delta(g.inv(x)) == 1 / delta(x)
    for u in g.units:
        if u in support:
            assert delta(u) == 1
    for (x, y), z in g.compose_map.items():
        if x in support and y in support and z in support:
            assert delta(z) == delta(x) * delta(y)


@given(st.integers(0, 200))
def test_useful_formula_on_singletons(seed):
    # sum_x f(x) Delta^{-1}(x) mu(x) = sum_x f(x^{-1}) mu(x), literal sums
    h = random_haar_groupoid(seed)
    g = h.groupoid
    mu = induced_measure(h)
    delta = modular_function(h)
    for x0 in g.elements:
        lhs = sum(((1 / delta(x)) * mu(x) for x in delta.domain if x == x0), F(0))
        rhs = sum((mu(x) for x in g.elements if g.inv(x) == x0), F(0))
        assert lhs == rhs


@given(st.integers(0, 150))
def test_unit_level_class_preservation_follows(seed):
    # element-level measure class implies the unit-level one on random homs
    h = random_haar_groupoid(seed)
    hom = identity_hom(h.groupoid)
    report = validate_haar_hom(hom, h, h)
    assert report.ok
