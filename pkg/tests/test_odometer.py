"""Tests for group elements, coset dynamics, fixed points, and cocycles."""

import random

import pytest

from conftest import explicit_spec, geometric_spec
from odoinv.errors import LevelOutOfRange, TailRequired, WrongGroupKind
from odoinv.odometer import (
    GroupElement,
    chain_intersection,
    cocycle,
    coset_action,
    fixed_point_count_limit,
    fixed_points_extendable,
    is_topologically_free,
    truncated_points,
)


def dz(t, s=0):
    return GroupElement("dihedral", t, s)


# --- group element arithmetic ---------------------------------------------------

def test_dihedral_multiplication_table():
    assert dz(1, 0).mul(dz(1, 0)) == dz(2, 0)
    assert dz(0, 1).mul(dz(1, 0)) == dz(-1, 1)
    assert dz(1, 0).mul(dz(0, 1)) == dz(1, 1)
    assert dz(0, 1).mul(dz(0, 1)) == dz(0, 0)


def random_element(kind, rng):
    s = 0 if kind == "z" else rng.randint(0, 1)
    return GroupElement(kind, rng.randint(-40, 40), s)


def test_group_laws_randomized():
    rng = random.Random(5)
    for kind in ("z", "dihedral", "direct_product"):
        e = GroupElement.identity(kind)
        for _ in range(200):
            a, b, c = (random_element(kind, rng) for _ in range(3))
            assert a.mul(b).mul(c) == a.mul(b.mul(c))
            assert a.mul(a.inverse()) == e
            assert a.inverse().mul(a) == e
            assert a.mul(e) == a


def test_kind_mixing_rejected():
    with pytest.raises(WrongGroupKind):
        dz(1).mul(GroupElement("z", 1))


# --- coset actions ----------------------------------------------------------------

def test_coset_action_examples():
    spec = explicit_spec("dihedral", [6])
    assert coset_action(spec, 1, dz(1, 0), 5) == 0
    assert coset_action(spec, 1, dz(0, 1), 2) == 4
    zspec = explicit_spec("z", [4])
    assert coset_action(zspec, 1, GroupElement("z", 3), 1) == 0


def test_coset_action_is_an_action():
    rng = random.Random(11)
    for kind in ("z", "dihedral", "direct_product"):
        spec = geometric_spec(kind, 2, 3, depth=4)
        for _ in range(150):
            level = rng.randint(1, 4)
            n = spec.level_modulus(level)
            g, h = random_element(kind, rng), random_element(kind, rng)
            x = rng.randrange(n)
            assert coset_action(spec, level, g.mul(h), x) == \
                coset_action(spec, level, g, coset_action(spec, level, h, x))


def test_level_range_checked():
    spec = explicit_spec("dihedral", [2, 4])
    with pytest.raises(LevelOutOfRange):
        coset_action(spec, 3, dz(1), 0)


def test_minimality_each_level():
    # the orbit of coset 0 under (1,0) exhausts every finite level
    for kind in ("z", "dihedral", "direct_product"):
        spec = geometric_spec(kind, 2, 2, depth=5)
        one = spec.element(1, 0)
        for level in range(1, 6):
            n = spec.level_modulus(level)
            orbit, x = set(), 0
            for _ in range(n):
                orbit.add(x)
                x = coset_action(spec, level, one, x)
            assert orbit == set(range(n))


# --- truncated points ---------------------------------------------------------------

def test_truncated_points_counts():
    spec = explicit_spec("dihedral", [2, 4, 8])
    assert len(truncated_points(spec, 2)) == 4
    assert len(truncated_points(spec, 3)) == 8


def test_truncated_points_compatible():
    spec = explicit_spec("z", [2, 6, 12])
    for point in truncated_points(spec, 3):
        for i in range(2):
            n_i = spec.level_modulus(i + 1)
            assert point.coords[i + 1] % n_i == point.coords[i]


# --- fixed points --------------------------------------------------------------------

def brute_force_extendable(spec, g, depth, horizon):
    """Enumerate the full horizon level and filter; the independent oracle."""
    n_h = spec.level_modulus(horizon)
    fixed = []
    for x in range(n_h):
        if all(coset_action(spec, lvl, g, x % spec.level_modulus(lvl)) == x % spec.level_modulus(lvl)
               for lvl in range(1, horizon + 1)):
            fixed.append(x)
    n_d = spec.level_modulus(depth)
    return len({x % n_d for x in fixed})


def test_spurious_fixed_point_does_not_extend():
    spec = geometric_spec("dihedral", 2, 2, depth=6)
    # at depth 3 the flip fixes 0 and 4, but only 0 extends to depth 6
    assert fixed_points_extendable(spec, dz(0, 1), 3, 3) == 2
    assert fixed_points_extendable(spec, dz(0, 1), 3, 6) == 1
    assert brute_force_extendable(spec, dz(0, 1), 3, 6) == 1


def test_limit_counts_match_lemma_cases():
    odd = geometric_spec("dihedral", 3, 3, depth=6)
    assert fixed_point_count_limit(odd, dz(0, 1)) == 1
    assert fixed_point_count_limit(odd, dz(1, 1)) == 1
    even_io = geometric_spec("dihedral", 2, 2, depth=6)
    assert fixed_point_count_limit(even_io, dz(0, 1)) == 1
    assert fixed_point_count_limit(even_io, dz(1, 1)) == 0
    mixed = geometric_spec("dihedral", 6, 3, depth=6)
    assert fixed_point_count_limit(mixed, dz(0, 1)) == 2
    assert fixed_point_count_limit(mixed, dz(1, 1)) == 0


def test_extendable_monotone_in_horizon():
    for start, ratio in [(2, 2), (3, 3), (6, 3), (2, 6)]:
        spec = geometric_spec("dihedral", start, ratio, depth=7)
        for g in (dz(0, 1), dz(1, 1)):
            counts = [fixed_points_extendable(spec, g, 2, h) for h in range(2, 8)]
            assert all(a >= b for a, b in zip(counts, counts[1:]))
            # constant from one extra level on
            assert len(set(counts[1:])) == 1


def test_infinite_horizon_requires_tail():
    spec = explicit_spec("dihedral", [2, 4, 8])
    with pytest.raises(TailRequired):
        fixed_points_extendable(spec, dz(0, 1), 2, None)


def test_translations_have_no_limit_fixed_points():
    spec = geometric_spec("dihedral", 2, 2, depth=5)
    assert fixed_points_extendable(spec, dz(4, 0), 2, None) == 0
    assert fixed_points_extendable(spec, dz(4, 0), 2, 3) == 0
    assert fixed_points_extendable(spec, dz(32, 0), 2, 4) == 4  # 32 = n_4 fixes level 4


# --- chain intersection and topological freeness ----------------------------------------

def test_chain_intersection_closed_forms():
    di = chain_intersection(geometric_spec("dihedral", 2, 2))
    assert di.elements == (dz(0, 0), dz(0, 1))
    assert not di.truncated
    z = chain_intersection(geometric_spec("z", 2, 2))
    assert z.elements == (GroupElement("z", 0),)
    dp = chain_intersection(geometric_spec("direct_product", 2, 2))
    assert dp.elements == (GroupElement("direct_product", 0, 0),
                           GroupElement("direct_product", 0, 1))


def test_chain_intersection_truncated_flag():
    trunc = chain_intersection(explicit_spec("dihedral", [2, 4]))
    assert trunc.truncated
    assert trunc.elements is None


def test_topfree_dihedral():
    spec = geometric_spec("dihedral", 2, 2, depth=5)
    verdict = is_topologically_free(spec, search_depth=4)
    assert verdict.status == "free"
    for w in verdict.witnesses:
        n_j = spec.level_modulus(w.level)
        assert w.witness == dz(n_j, 0)
        assert w.conjugate == dz(2 * n_j, 1)


def test_topfree_z_vacuous():
    verdict = is_topologically_free(geometric_spec("z", 2, 2))
    assert verdict.status == "free"
    assert verdict.witnesses == ()


def test_topfree_direct_product():
    verdict = is_topologically_free(geometric_spec("direct_product", 2, 2))
    assert verdict.status == "not_free"
    assert verdict.counterexample.gamma == GroupElement("direct_product", 0, 1)
    assert verdict.counterexample.conjugate == verdict.counterexample.gamma


def test_topfree_inconclusive_without_tail():
    assert is_topologically_free(explicit_spec("dihedral", [2, 4])).status == "inconclusive"


# --- cocycles -------------------------------------------------------------------------

def test_cocycle_identity_element():
    spec = explicit_spec("dihedral", [4])
    c = cocycle(spec, 1, dz(0, 0))
    assert c.sigma == (0, 1, 2, 3)
    assert all(h.is_identity() for h in c.h)


def test_cocycle_examples_level_two():
    spec = explicit_spec("dihedral", [2])
    c = cocycle(spec, 1, dz(1, 0))
    assert c.sigma == (1, 0)
    assert c.h == (dz(0, 0), dz(2, 0))
    c2 = cocycle(spec, 1, dz(0, 1))
    assert c2.sigma == (0, 1)
    assert c2.h == (dz(0, 1), dz(-2, 1))


def test_cocycle_defining_identity_and_membership():
    rng = random.Random(21)
    for kind in ("z", "dihedral", "direct_product"):
        spec = geometric_spec(kind, 2, 3, depth=4)
        for _ in range(60):
            level = rng.randint(1, 4)
            g = random_element(kind, rng)
            c = cocycle(spec, level, g)
            assert c.verify(g)
            n = spec.level_modulus(level)
            assert all(h.t % n == 0 for h in c.h)


def test_cocycle_chain_rule():
    # sigma_{gg'} = sigma_g o sigma_{g'} and h_{gg'}[k] = h_g[sigma_{g'}(k)] h_{g'}[k]
    rng = random.Random(33)
    checked = 0
    for kind in ("z", "dihedral", "direct_product"):
        spec = geometric_spec(kind, 2, 2, depth=4)
        for _ in range(40):
            level = rng.randint(1, 4)
            g, gp = random_element(kind, rng), random_element(kind, rng)
            cg = cocycle(spec, level, g)
            cgp = cocycle(spec, level, gp)
            cprod = cocycle(spec, level, g.mul(gp))
            assert cprod.sigma == tuple(cg.sigma[cgp.sigma[k]] for k in range(len(cg.sigma)))
            for k in range(len(cg.sigma)):
                assert cprod.h[k] == cg.h[cgp.sigma[k]].mul(cgp.h[k])
            checked += 1
    assert checked >= 100
