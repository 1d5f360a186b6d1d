"""Shared builders and literal-sum oracles used across the test modules.

The oracles deliberately brute-force the stated nested sums with no
concentration shortcuts, so they stay independent of the library's paths.
"""

from __future__ import annotations

from fractions import Fraction

from measured_groupoids import (
    Cospan,
    FiniteGroupoid,
    FiniteMeasure,
    cyclic_group,
    pair_groupoid,
    trivial_group,
    with_counting_haar,
)
from measured_groupoids.groupoid import GroupoidHom, identity_hom
from measured_groupoids.haar import HaarGroupoid, counting_haar_system

F = Fraction
ZERO = F(0)


def manual_pair_groupoid() -> FiniteGroupoid:
    """The pair groupoid on {1, 2} written out table by table."""
    compose = {}
    for i in "12":
        for j in "12":
            for k in "12":
                compose[(f"{i}-{j}", f"{j}-{k}")] = f"{i}-{k}"
    return FiniteGroupoid(
        ["1-1", "1-2", "2-1", "2-2"],
        ["1-1", "2-2"],
        {"1-1": "1-1", "1-2": "1-1", "2-1": "2-2", "2-2": "2-2"},
        {"1-1": "1-1", "1-2": "2-2", "2-1": "1-1", "2-2": "2-2"},
        {"1-1": "1-1", "1-2": "2-1", "2-1": "1-2", "2-2": "2-2"},
        compose,
    )


def z2_cospan() -> Cospan:
    z2 = cyclic_group(2)
    h = with_counting_haar(z2)
    return Cospan(h, h, h, identity_hom(z2), identity_hom(z2))


def pair_trivial_cospan(mu_left=(1, 2), mu_right=(1, 3)) -> Cospan:
    """S = T = pair groupoid on {1, 2} with the given unit weights, base the
    trivial group, both legs collapsing."""
    s = pair_groupoid(["1", "2"])
    t = pair_groupoid(["1", "2"])
    g = trivial_group()
    s_h = HaarGroupoid(s, counting_haar_system(s), FiniteMeasure(s.units, {"1-1": mu_left[0], "2-2": mu_left[1]}))
    t_h = HaarGroupoid(t, counting_haar_system(t), FiniteMeasure(t.units, {"1-1": mu_right[0], "2-2": mu_right[1]}))
    g_h = with_counting_haar(g)
    p = GroupoidHom(s, g, {x: "e" for x in s.elements})
    q = GroupoidHom(t, g, {x: "e" for x in t.elements})
    return Cospan(s_h, g_h, t_h, p, q)


def literal_triple_integral_sides(leg, base, leg_map, gamma, u, y0, sigma0):
    """Both sides of the integral-exchange identity for the indicator of
    (y0, sigma0), as fully nested sums over everything."""
    leg_g = leg.groupoid
    base_g = base.groupoid
    lam_leg = leg.haar
    lam_base = base.haar
    lhs = ZERO
    for s in leg_g.units:
        for sigma in leg_g.elements:
            for y in base_g.elements:
                if (y, sigma) != (y0, sigma0):
                    continue
                lhs += (
                    lam_base.weight(base_g.r(leg_map[sigma]), y)
                    * lam_leg.weight(s, sigma)
                    * gamma.weight(u, s)
                )
    rhs = ZERO
    for y in base_g.elements:
        for s in leg_g.units:
            for sigma in leg_g.elements:
                if (y, sigma) != (y0, sigma0):
                    continue
                rhs += (
                    lam_leg.weight(s, sigma)
                    * gamma.weight(base_g.r(y), s)
                    * lam_base.weight(u, y)
                )
    return lhs, rhs


def literal_expanding_rhs(w, target_triple):
    """The six-fold nested sum for the indicator of one pullback element,
    looping over every unit/arrow combination with no shortcuts."""
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
    total = ZERO
    for u in base.units:
        for y in base.elements:
            for s in s_g.units:
                for sigma in s_g.elements:
                    for t in t_g.units:
                        for tau in t_g.elements:
                            if (sigma, y, tau) != target_triple:
                                continue
                            total += (
                                lam_t.weight(t, tau)
                                * gamma_q.weight(base.d(y), t)
                                * lam_s.weight(s, sigma)
                                * gamma_p.weight(base.r(y), s)
                                * lam_g.weight(u, y)
                                * mu_g0(u)
                            )
    return total


def literal_eq3_sides(alpha, beta, z, x0):
    """Eq-style characterisation of system composition on the indicator of
    x0: direct evaluation vs the iterated double sum."""
    composed = None  # caller compares against library composition separately
    rhs = ZERO
    for y in beta.domain:
        inner = ZERO
        for x in alpha.domain:
            if x == x0:
                inner += alpha.weight(y, x)
        rhs += inner * beta.weight(z, y)
    return rhs
