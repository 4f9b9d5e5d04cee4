"""Finite quotients, sections, and Schreier kernel presentations."""

import random

import pytest

from fibcert.errors import ValidationError
from fibcert.presentation import GroupPresentation, parse_presentation
from fibcert.quotients import (
    FiniteQuotient,
    max_quotient_order,
    subgroup_presentation,
)


def cyclic(n):
    return tuple(tuple((i + j) % n for j in range(n)) for i in range(n))


def z_pres():
    return parse_presentation("raag { t }")


def f2_pres():
    return parse_presentation("raag { a, b; }")


def z2_pres():
    return parse_presentation("raag { a, b; a-b }")


def test_table_validation_rejections():
    p = z_pres()
    with pytest.raises(ValidationError, match="empty"):
        FiniteQuotient(p, (), (0,))
    with pytest.raises(ValidationError, match="square"):
        FiniteQuotient(p, ((0, 1), (1,)), (1,))
    with pytest.raises(ValidationError, match="identity"):
        FiniteQuotient(p, ((1, 0), (0, 1)), (1,))
    bad = [list(row) for row in cyclic(4)]
    bad[1][1], bad[1][2] = bad[1][2], bad[1][1]
    with pytest.raises(ValidationError, match="permutation"):
        FiniteQuotient(p, bad, (1,))
    # A quasigroup with identity that is not associative: order 5 loop.
    loop = (
        (0, 1, 2, 3, 4),
        (1, 0, 3, 4, 2),
        (2, 4, 0, 1, 3),
        (3, 2, 4, 0, 1),
        (4, 3, 1, 2, 0),
    )
    with pytest.raises(ValidationError, match="associative"):
        FiniteQuotient(p, loop, (1,))


def test_image_validation():
    p = z_pres()
    with pytest.raises(ValidationError, match="image list"):
        FiniteQuotient(p, cyclic(3), (1, 2))
    with pytest.raises(ValidationError, match="image list"):
        FiniteQuotient(p, cyclic(3), (3,))
    # Relators must die: a-b commute in Z^2, so images in S3 that do not
    # commute are rejected.
    s3 = (
        (0, 1, 2, 3, 4, 5),
        (1, 0, 4, 5, 2, 3),
        (2, 5, 0, 4, 3, 1),
        (3, 4, 5, 0, 1, 2),
        (4, 3, 1, 2, 5, 0),
        (5, 2, 3, 1, 0, 4),
    )
    with pytest.raises(ValidationError, match="homomorphism"):
        FiniteQuotient(z2_pres(), s3, (1, 2))


def test_engineless_group_rejected():
    pres = GroupPresentation(("a",), (), None)
    with pytest.raises(ValidationError, match="engine"):
        FiniteQuotient(pres, cyclic(2), (1,))


def test_beta_and_inverse():
    p = z_pres()
    quot = FiniteQuotient(p, cyclic(4), (1,))
    assert quot.order == 4
    assert quot.beta((1, 1, 1, 1, 1)) == 1
    assert quot.beta((-1,)) == 3
    assert quot.beta(()) == 0
    assert [quot.inv(q) for q in range(4)] == [0, 3, 2, 1]
    assert quot.mul(3, 2) == 1


def test_default_section_is_shortlex_minimal():
    p = z_pres()
    quot = FiniteQuotient(p, cyclic(4), (1,))
    # Classes 1, 2, 3 get t, t^2, t^-1: the shortlex-first preimages.
    assert quot.section == ((), (1,), (1, 1), (-1,))


def test_default_section_needs_generating_images():
    p = z_pres()
    with pytest.raises(ValidationError, match="generate"):
        FiniteQuotient(p, cyclic(4), (2,))


def test_explicit_section_validation():
    p = z_pres()
    with pytest.raises(ValidationError, match="identity"):
        FiniteQuotient(p, cyclic(3), (1,), section={0: (1, 1, 1)})
    with pytest.raises(ValidationError, match="preimage"):
        FiniteQuotient(p, cyclic(4), (1,), section={1: (1,), 2: (1, 1), 3: (1,)})
    quot = FiniteQuotient(
        p, cyclic(3), (1,), section={1: (1, 1, 1, 1), 2: (-1,)}
    )
    assert quot.section == ((), (1, 1, 1, 1), (-1,))


def test_section_power_lands_in_kernel():
    p = z_pres()
    quot = FiniteQuotient(p, cyclic(3), (1,))
    for q in range(3):
        w = quot.section_power(q)
        assert quot.beta(w) == 0


def test_coset_decompose():
    p = z2_pres()
    quot = FiniteQuotient(p, cyclic(2), (1, 0))
    rng = random.Random(9)
    for _ in range(50):
        w = tuple(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 6)))
        h, q = quot.coset_decompose(w)
        assert quot.beta(h.word) == 0
        assert q == quot.beta(w)
        assert p.nf_word(h.word + quot.section[q]) == p.nf_word(w)


def test_quotient_order_bound(monkeypatch):
    monkeypatch.setenv("NOVIKOV_MAX_Q", "3")
    assert max_quotient_order() == 3
    with pytest.raises(ValidationError, match="bound"):
        FiniteQuotient(z_pres(), cyclic(4), (1,))
    monkeypatch.setenv("NOVIKOV_MAX_Q", "zebra")
    with pytest.raises(ValidationError, match="integer"):
        max_quotient_order()
    monkeypatch.setenv("NOVIKOV_MAX_Q", "0")
    with pytest.raises(ValidationError, match="positive"):
        max_quotient_order()
    monkeypatch.delenv("NOVIKOV_MAX_Q")
    assert max_quotient_order() == 64


def test_kernel_of_free_group_mod_two_is_rank_three():
    # Index-2 subgroups of F2 are free of rank 2*1 + 1 = 3 by
    # Nielsen-Schreier; the Schreier construction should find exactly
    # three generators and no relators.
    p = f2_pres()
    quot = FiniteQuotient(p, cyclic(2), (1, 0))
    sub = subgroup_presentation(p, quot)
    assert sub.presentation.n_gens == 3
    assert sub.presentation.relators == ()
    assert sub.abelianization().rank == 3


def test_kernel_of_z2_mod_two_is_z2():
    p = z2_pres()
    quot = FiniteQuotient(p, cyclic(2), (1, 0))
    sub = subgroup_presentation(p, quot)
    ab = sub.abelianization()
    assert ab.rank == 2
    assert ab.torsion == ()


def test_trivial_quotient_kernel_is_whole_group():
    p = f2_pres()
    quot = FiniteQuotient(p, cyclic(1), (0, 0))
    sub = subgroup_presentation(p, quot)
    assert sub.presentation is p
    assert sub.tau((1, 2)) == (1, 2)
    assert sub.include((1, 2)) == (1, 2)


def test_tau_include_roundtrip():
    p = f2_pres()
    quot = FiniteQuotient(p, cyclic(3), (1, 0))
    sub = subgroup_presentation(p, quot)
    rng = random.Random(17)
    checked = 0
    while checked < 60:
        w = tuple(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 8)))
        if quot.beta(w) != 0:
            assert not sub.contains(w)
            with pytest.raises(ValidationError, match="kernel"):
                sub.tau(w)
            continue
        h = sub.tau(w)
        assert sub.include(h) == p.nf_word(w)
        checked += 1


def test_include_tau_roundtrip_on_h_words():
    p = f2_pres()
    quot = FiniteQuotient(p, cyclic(2), (1, 1))
    sub = subgroup_presentation(p, quot)
    rng = random.Random(18)
    n = sub.presentation.n_gens
    for _ in range(60):
        h = tuple(
            rng.choice([1, -1]) * rng.randint(1, n)
            for _ in range(rng.randint(0, 5))
        )
        g = sub.include(h)
        assert sub.contains(g)
        # tau is a retraction: tau(include(h)) and h embed identically.
        assert sub.include(sub.tau(g)) == g


def test_subgroup_presentation_mismatch_rejected():
    p1 = f2_pres()
    p2 = f2_pres()
    quot = FiniteQuotient(p1, cyclic(2), (1, 0))
    with pytest.raises(ValidationError, match="different presentation"):
        subgroup_presentation(p2, quot)
