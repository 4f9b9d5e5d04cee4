"""Catalog entries and their independent BNS-membership oracles."""

from fractions import Fraction

import pytest

from fibcert.catalog import (
    ENTRY_NAMES,
    entries,
    get_entry,
    sigma_bs12,
    sigma_free,
    sigma_free_abelian,
    sigma_membership,
    sigma_raag,
)
from fibcert.characters import character_from_values
from fibcert.errors import ValidationError
from fibcert.presentation import parse_presentation
from fibcert.valuefield import DEFAULT_FIELD

SQRT2 = DEFAULT_FIELD.sqrt_basis(2)


def test_entry_names_and_lookup():
    assert set(entries()) == set(ENTRY_NAMES)
    for name in ENTRY_NAMES:
        entry = get_entry(name)
        assert entry.name == name
        pres = entry.presentation()
        assert pres.n_gens >= 1
    with pytest.raises(ValidationError, match="unknown catalog entry"):
        get_entry("Z4")


def test_presentations_are_cached():
    assert get_entry("Z").presentation() is get_entry("Z").presentation()


def test_known_invariants():
    assert get_entry("Z").known_betti1 == 0
    assert get_entry("Z2").known_betti1 == 0
    assert get_entry("Z3").known_betti1 == 0
    assert get_entry("F2").known_betti1 == 1
    assert get_entry("F2xZ").known_betti1 == 0
    assert get_entry("BS12").known_betti1 == 0
    # BS(1,2) is the designated non-equivalence witness.
    for name in ENTRY_NAMES:
        assert get_entry(name).equivalence_expected == (name != "BS12")


def test_abelianization_ranks():
    expected = {"Z": 1, "Z2": 2, "Z3": 3, "F2": 2, "F2xZ": 3, "BS12": 1}
    for name, rank in expected.items():
        assert get_entry(name).presentation().abelianization().rank == rank


def test_sigma_free_is_empty():
    pres = get_entry("F2").presentation()
    assert sigma_free(pres, character_from_values([1, 0])) is False
    assert sigma_free(pres, character_from_values([3, -2])) is False
    with pytest.raises(ValidationError):
        sigma_free(get_entry("Z").presentation(), character_from_values([1]))


def test_sigma_free_abelian_is_everything_nonzero():
    pres = get_entry("Z2").presentation()
    assert sigma_free_abelian(pres, character_from_values([1, -7]))
    assert not sigma_free_abelian(pres, character_from_values([0, 0]))


def test_sigma_raag_meier_vanwyk():
    # F2 x Z as the path graph a - z - b.
    pres = get_entry("F2xZ").presentation()
    # Living subgraph {z} dominates a and b: member.
    assert sigma_raag(pres, character_from_values([0, 1, 0]))
    # Living {a}: z is dominated but b has no living neighbour: not member.
    assert not sigma_raag(pres, character_from_values([1, 0, 0]))
    # Living {a, b}: disconnected in the induced subgraph: not member.
    assert not sigma_raag(pres, character_from_values([1, 0, 1]))
    # Living {a, z}: connected, dominates b: member.
    assert sigma_raag(pres, character_from_values([1, 1, 0]))
    # All living: connected and dominating: member.
    assert sigma_raag(pres, character_from_values([1, 1, 1]))
    # Zero character: nothing lives.
    assert not sigma_raag(pres, character_from_values([0, 0, 0]))
    with pytest.raises(ValidationError):
        sigma_raag(get_entry("BS12").presentation(), character_from_values([1]))


def test_sigma_raag_on_disconnected_free_case():
    # The edgeless graph on two vertices (F2): any proper living set
    # fails domination, the full living set fails connectivity.
    pres = get_entry("F2").presentation()
    assert not sigma_raag(pres, character_from_values([1, 0]))
    assert not sigma_raag(pres, character_from_values([1, 1]))


def test_sigma_bs12_half_line():
    pres = get_entry("BS12").presentation()
    assert sigma_bs12(pres, character_from_values([-1]))
    assert not sigma_bs12(pres, character_from_values([1]))
    assert not sigma_bs12(pres, character_from_values([0]))


def test_sigma_membership_dispatch():
    z2 = get_entry("Z2")
    pres = z2.presentation()
    assert sigma_membership(z2, pres, character_from_values([1, 2])) is True
    assert sigma_membership(z2, pres, character_from_values([0, 0])) is None
    # Irrational characters are answered by the graph oracles.
    assert sigma_membership(z2, pres, character_from_values([1, SQRT2])) is True
    f2 = get_entry("F2")
    assert (
        sigma_membership(f2, f2.presentation(), character_from_values([1, SQRT2]))
        is False
    )
    # The BS(1,2) oracle is stated for rational rays only.
    bs = get_entry("BS12")
    irr = character_from_values([SQRT2])
    assert sigma_membership(bs, bs.presentation(), irr) is None
    assert sigma_membership(bs, bs.presentation(), character_from_values([-2])) is True


def test_catalog_sources_parse_standalone():
    for name in ENTRY_NAMES:
        entry = get_entry(name)
        pres = parse_presentation(entry.source_text)
        assert pres.n_gens == entry.presentation().n_gens
