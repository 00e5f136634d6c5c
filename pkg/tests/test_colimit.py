"""Tests for sequential colimits and supernatural numbers."""

import pytest

from odoinv.abelian import AbHom, FgAbelianGroup, IntMatrix, iso_equal
from odoinv.colimit import (
    INF,
    SupernaturalNumber,
    colimit_finite,
    colimit_rank1,
    supernatural_iso_equal,
)
from odoinv.errors import NotStabilized

KLEIN = FgAbelianGroup.from_invariants(0, (2, 2))
IDENT = IntMatrix.identity(2)
COLLAPSE = IntMatrix.from_rows([[1, 1], [0, 0]])  # (a, b) -> (a + b, 0) mod 2


def system(matrices):
    groups = [KLEIN] * (len(matrices) + 1)
    maps = [AbHom(KLEIN, KLEIN, m) for m in matrices]
    return groups, maps


# --- finite colimits ------------------------------------------------------------

def test_constant_identity_system():
    groups, maps = system([IDENT] * 6)
    res = colimit_finite(groups, maps, window=3)
    assert res.kind == "finite"
    assert iso_equal(res.group, KLEIN)
    assert res.stabilization_depth == 1


def test_collapse_system_gives_z2():
    groups, maps = system([COLLAPSE] * 8)
    res = colimit_finite(groups, maps, window=3)
    assert iso_equal(res.group, FgAbelianGroup.cyclic(2))
    assert res.stabilization_depth == 1


def brute_force_composite_image(matrices, start, stop):
    """Image of the mod-2 composite, counted by enumerating all inputs."""
    comp = matrices[start - 1]
    for k in range(start, stop - 1):
        comp = matrices[k].mul(comp)
    images = set()
    for a in range(2):
        for b in range(2):
            images.add(tuple(x % 2 for x in comp.apply((a, b))))
    return images


def test_alternating_system_gives_z2():
    matrices = [IDENT if i % 2 == 0 else COLLAPSE for i in range(10)]
    groups, maps = system(matrices)
    res = colimit_finite(groups, maps, window=3)
    assert iso_equal(res.group, FgAbelianGroup.cyclic(2))
    # brute force: composites from late levels have a 2-element image
    assert len(brute_force_composite_image(matrices, 4, 10)) == 2


def test_prefix_invariance():
    matrices = [COLLAPSE, IDENT, COLLAPSE] + [IDENT] * 6
    groups, maps = system(matrices)
    full = colimit_finite(groups, maps, window=3)
    for drop in (1, 2, 3):
        res = colimit_finite(groups[drop:], maps[drop:], window=3)
        assert iso_equal(res.group, full.group)


def test_not_stabilized_on_short_data():
    groups, maps = system([COLLAPSE])
    with pytest.raises(NotStabilized):
        colimit_finite(groups, maps, window=3)


def test_rejects_infinite_groups():
    z = FgAbelianGroup.free(1)
    with pytest.raises(ValueError):
        colimit_finite([z] * 4, [AbHom.identity(z)] * 3, window=2)


# --- rank-1 colimits ---------------------------------------------------------

def test_rank1_trivial():
    res = colimit_rank1([1, 1, 1])
    assert res.kind == "rank1"
    assert res.supernatural == SupernaturalNumber.one()


def test_rank1_geometric_ratio_2():
    res = colimit_rank1([2, 2, 2], tail="geometric", tail_ratio=2)
    assert res.supernatural.as_dict() == {2: INF}


def test_rank1_geometric_ratio_6():
    res = colimit_rank1([6], tail="geometric", tail_ratio=6)
    assert res.supernatural.as_dict() == {2: INF, 3: INF}


def test_rank1_explicit_is_finite():
    res = colimit_rank1([6, 3])
    assert res.supernatural.as_dict() == {2: 1, 3: 2}
    assert res.supernatural.is_finite()


def test_rank1_interleaving_property():
    a, b = 2, 3
    merged = colimit_rank1([a * b] * 3, tail="geometric", tail_ratio=a * b)
    interleaved = colimit_rank1([a, b] * 3, tail="geometric", tail_ratio=a * b)
    assert merged.supernatural == interleaved.supernatural


# --- supernatural numbers --------------------------------------------------------

def test_supernatural_render():
    s = SupernaturalNumber.from_mapping({2: INF, 3: 2})
    assert s.render() == "2^inf * 3^2"
    assert SupernaturalNumber.one().render() == "1"
    assert SupernaturalNumber.from_int(6).render() == "2 * 3"


def test_supernatural_iso_rules():
    two_inf = SupernaturalNumber.from_mapping({2: INF})
    assert supernatural_iso_equal(two_inf, SupernaturalNumber.from_mapping({2: INF, 3: 1}))
    assert not supernatural_iso_equal(two_inf, SupernaturalNumber.from_mapping({3: INF}))
    assert supernatural_iso_equal(SupernaturalNumber.one(), SupernaturalNumber.from_int(5))


def test_supernatural_times():
    a = SupernaturalNumber.from_int(12)
    b = SupernaturalNumber.from_mapping({2: INF, 5: 1})
    assert a.times(b).as_dict() == {2: INF, 3: 1, 5: 1}
    assert a.times(b).finite_part() == 15
