"""Tests for K-theory and the HK comparison."""

import pytest

from conftest import explicit_spec, geometric_spec
from odoinv.abelian import AbHom, FgAbelianGroup
from odoinv.colimit import INF
from odoinv.errors import TailRequired, WrongGroupKind
from odoinv.homology import flip_fixed_counts
from odoinv.ktheory import coinvariants_with_involution, hk_compare, k_theory_dihedral
from odoinv.odometer import GroupElement, fixed_points_extendable


# --- coinvariants oracle ----------------------------------------------------------

def test_coinvariants_examples():
    spec = explicit_spec("dihedral", [1, 4, 8], tail="explicit")
    for level in (1, 2, 3):
        group, action = coinvariants_with_involution(spec, level)
        assert group == FgAbelianGroup.free(1)
        assert action.equals(AbHom.identity(group))


def test_coinvariants_exhaustive_to_200():
    for n in range(1, 201):
        spec = explicit_spec("dihedral", [n], tail="explicit")
        group, action = coinvariants_with_involution(spec, 1)
        assert group == FgAbelianGroup.free(1)
        assert action.equals(AbHom.identity(group))


# --- K-theory closed form --------------------------------------------------------------

def test_k_theory_even_ratio():
    report = k_theory_dihedral(geometric_spec("dihedral", 2, 2, depth=8))
    assert report.k0_rank1.as_dict() == {2: INF}
    assert report.k0_free_rank == 1
    assert report.k1.is_trivial()
    assert report.fixed_counts == (1, 0)
    assert report.render_k0() == "Z[1/2] (+) Z^1"
    assert report.serialize() == {"K0": "Z[1/2] (+) Z^1", "K1": "0", "fixed_points": [1, 0]}


def test_k_theory_odd_ratio():
    report = k_theory_dihedral(geometric_spec("dihedral", 3, 3, depth=8))
    assert report.k0_rank1.as_dict() == {3: INF}
    assert report.k0_free_rank == 2
    assert report.fixed_counts == (1, 1)
    assert report.render_k0() == "Z[1/3] (+) Z^2"


def test_k_theory_mixed_chain():
    report = k_theory_dihedral(geometric_spec("dihedral", 6, 3, depth=8))
    assert report.k0_rank1.as_dict() == {2: 1, 3: INF}
    assert report.k0_free_rank == 2
    assert report.fixed_counts == (2, 0)
    assert report.render_k0() == "{m/n_i} over 2 * 3^inf (+) Z^2"


def test_k_theory_wrong_kind_and_tail():
    with pytest.raises(WrongGroupKind):
        k_theory_dihedral(geometric_spec("z", 2, 2))
    with pytest.raises(TailRequired):
        k_theory_dihedral(explicit_spec("dihedral", [2, 4]))


def test_fixed_counts_closed_form_vs_brute_force():
    flips = (GroupElement("dihedral", 0, 1), GroupElement("dihedral", 1, 1))
    for start, ratio in [(2, 2), (3, 3), (1, 5), (6, 3), (2, 6), (3, 5)]:
        spec = geometric_spec("dihedral", start, ratio, depth=6)
        closed = flip_fixed_counts(spec)
        brute = tuple(fixed_points_extendable(spec, g, 3, 6) for g in flips)
        assert closed == brute, (start, ratio)


# --- HK comparison -------------------------------------------------------------------

def test_hk_mismatch_even_ratio():
    verdict = hk_compare(geometric_spec("dihedral", 2, 2, depth=8))
    assert not verdict.k0_vs_even.match
    assert not verdict.k1_vs_odd.match
    assert verdict.k0_vs_even.k_group == "Z[1/2] (+) Z^1"
    assert verdict.k0_vs_even.h_group == "Z[1/2]"
    assert verdict.k1_vs_odd.k_group == "0"
    assert "Z_2" in verdict.k1_vs_odd.h_group


def test_hk_mismatch_odd_ratio():
    verdict = hk_compare(geometric_spec("dihedral", 3, 3, depth=8))
    assert not verdict.k0_vs_even.match
    assert not verdict.k1_vs_odd.match
    assert verdict.k0_vs_even.k_group == "Z[1/3] (+) Z^2"
    assert "Z_2^2" in verdict.k1_vs_odd.h_group


def test_hk_never_matches_on_the_odd_side():
    # K1 = 0 while H1 is nonzero for every dihedral spec in the matrix
    for start, ratio in [(2, 2), (3, 3), (5, 5), (6, 3), (2, 6), (4, 2)]:
        verdict = hk_compare(geometric_spec("dihedral", start, ratio, depth=7))
        assert not verdict.k1_vs_odd.match
        assert not verdict.k0_vs_even.match


def test_hk_requires_tail():
    with pytest.raises(TailRequired):
        hk_compare(explicit_spec("dihedral", [2]))


def test_hk_declines_z_kind():
    with pytest.raises(WrongGroupKind):
        hk_compare(geometric_spec("z", 2, 2))


def test_details_name_both_groups():
    verdict = hk_compare(geometric_spec("dihedral", 2, 2, depth=8))
    for side in (verdict.k0_vs_even, verdict.k1_vs_odd):
        assert side.k_group in side.detail
        assert side.h_group.split(" ")[0] in side.detail
