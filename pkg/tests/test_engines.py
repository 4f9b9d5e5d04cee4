"""Normal-form engines against brute-force oracles.

RaagEngine is checked against a breadth-first closure oracle (all words
reachable by adjacent commuting swaps and free cancellations, shortlex
minimum taken); the edgeless and complete-graph fast paths are compared
against the general insertion path on the same inputs.
"""

import random

import pytest

from fibcert.engines import RaagEngine, RewritingEngine
from fibcert.errors import EngineError, ParseError
from oracles import raag_nf_oracle


def random_word(rng, n_gens, max_len):
    return tuple(
        rng.choice([1, -1]) * rng.randint(1, n_gens)
        for _ in range(rng.randint(0, max_len))
    )


def general_path_nf(engine, word):
    """Force the greedy insertion path, bypassing the fast-path dispatch."""
    out = []
    for lt in word:
        engine._insert(out, lt)
    return tuple(out)


def test_edge_validation():
    with pytest.raises(EngineError):
        RaagEngine(2, [(0, 0)])
    with pytest.raises(EngineError):
        RaagEngine(2, [(0, 2)])
    with pytest.raises(EngineError):
        RaagEngine(2, [(-1, 0)])


def test_commutes():
    eng = RaagEngine(3, [(0, 1)])
    assert eng.commutes(1, 2)
    assert eng.commutes(-2, 1)
    assert not eng.commutes(1, 3)
    assert not eng.commutes(-3, 2)
    # Letters of one generator commute with each other by definition.
    assert eng.commutes(1, 1)
    assert eng.commutes(1, -1)


def test_free_group_normal_form_is_free_reduction():
    eng = RaagEngine(2, [])
    assert eng.normal_form((1, 2, -2, -1, 1)) == (1,)
    assert eng.normal_form(()) == ()
    assert eng.normal_form((1, -1)) == ()


def test_abelian_normal_form_sorts_by_generator():
    eng = RaagEngine(3, [(0, 1), (0, 2), (1, 2)])
    assert eng.normal_form((3, 1, -2, 1, 2, 3)) == (1, 1, 3, 3)
    assert eng.normal_form((2, -1, -2, 1)) == ()
    assert eng.normal_form((-2, -1)) == (-1, -2)


def test_partial_commutation_frozen_cases():
    # Path graph a-b, b-c: a and c do not commute.
    eng = RaagEngine(3, [(0, 1), (1, 2)])
    assert eng.normal_form((2, 1)) == (1, 2)
    assert eng.normal_form((3, 1)) == (3, 1)
    assert eng.normal_form((3, 2, -3)) == (2,)
    assert eng.normal_form((3, 1, -3)) == (3, 1, -3)


@pytest.mark.parametrize(
    "n_gens,edges",
    [
        (2, []),
        (2, [(0, 1)]),
        (3, [(0, 1)]),
        (3, [(0, 1), (1, 2)]),
        (3, [(0, 1), (0, 2), (1, 2)]),
    ],
)
def test_normal_form_matches_bfs_oracle(n_gens, edges):
    eng = RaagEngine(n_gens, edges)
    rng = random.Random(7 + n_gens + len(edges))
    for _ in range(60):
        w = random_word(rng, n_gens, 6)
        assert eng.normal_form(w) == raag_nf_oracle(w, n_gens, edges)


def test_fast_paths_match_general_path():
    rng = random.Random(19)
    for n_gens, edges in [(3, []), (3, [(0, 1), (0, 2), (1, 2)])]:
        eng = RaagEngine(n_gens, edges)
        assert eng._edgeless or eng._complete
        for _ in range(300):
            w = random_word(rng, n_gens, 14)
            assert eng.normal_form(w) == general_path_nf(eng, w)


def test_normal_form_idempotent_and_concat_consistent():
    eng = RaagEngine(3, [(0, 1), (1, 2)])
    rng = random.Random(23)
    for _ in range(150):
        u = random_word(rng, 3, 8)
        v = random_word(rng, 3, 8)
        nu = eng.normal_form(u)
        assert eng.normal_form(nu) == nu
        assert eng.normal_form(nu + eng.normal_form(v)) == eng.normal_form(u + v)


def test_rewriting_rejects_bad_rules():
    with pytest.raises(EngineError):
        RewritingEngine(2, [((), (1,))])
    # Not shortlex-decreasing: rhs is longer.
    with pytest.raises(EngineError):
        RewritingEngine(2, [((1,), (2, 2))])
    # Equal keys are also rejected.
    with pytest.raises(EngineError):
        RewritingEngine(2, [((1,), (1,))])
    # Letters outside the alphabet fail word validation.
    with pytest.raises(ParseError):
        RewritingEngine(1, [((2,), ())])


def test_rewriting_rejects_non_confluent_system():
    # b a -> a b and b a -> a alone cannot both hold.
    with pytest.raises(EngineError, match="confluent"):
        RewritingEngine(2, [((2, 1), (1, 2)), ((2, 1, 1), (1,))])


def test_rewriting_confluence_check_optional():
    eng = RewritingEngine(
        2, [((2, 1), (1, 2)), ((2, 1, 1), (1,))], check_confluence=False
    )
    assert eng.normal_form((2, 1)) == (1, 2)


def test_rewriting_free_reduction_built_in():
    eng = RewritingEngine(2, [])
    assert eng.normal_form((1, 2, -2, -1)) == ()
    assert eng.normal_form((1, -2, 2, 1)) == (1, 1)


def test_rewriting_abelianizes_two_generators():
    # b a -> a b on the free abelian group of rank 2.
    eng = RewritingEngine(2, [((2, 1), (1, 2)), ((2, -1), (-1, 2)), ((-2, 1), (1, -2)), ((-2, -1), (-1, -2))])
    rng = random.Random(31)
    abel = RaagEngine(2, [(0, 1)])
    for _ in range(120):
        w = random_word(rng, 2, 10)
        assert eng.normal_form(w) == abel.normal_form(w)


def test_rewriting_dihedral_relations():
    # <a, b | a b a b = 1> with the confluent orientation used in the
    # bundled examples: every word reduces to a^k or a^k b^-1... the
    # normal forms of the four group elements of the quotient by a^2.
    rules = [
        ((2, 1), (-1, -2)),
        ((-2, -1), (1, 2)),
        ((1, 2, 1), (-2,)),
        ((2, 1, 2), (-1,)),
        ((1, 2, 1, 2), ()),
    ]
    eng = RewritingEngine(2, rules)
    # The relator itself dies.
    assert eng.normal_form((1, 2, 1, 2)) == ()
    # b a b a is conjugate to the relator, hence trivial too.
    assert eng.normal_form((2, 1, 2, 1)) == ()
    # (a b)^-1 = a b modulo the relator.
    assert eng.normal_form((-2, -1)) == eng.normal_form((1, 2))


def test_rewriting_step_budget():
    eng = RewritingEngine(
        2, [((2, 1), (1, 2))], step_budget=3, check_confluence=False
    )
    with pytest.raises(EngineError, match="step budget"):
        eng.normal_form((2, 2, 2, 1, 1, 1))


def test_rewriting_leftmost_redex_prefers_free_reduction():
    rules = [
        ((2, 1), (1, 2)),
        ((2, -1), (-1, 2)),
        ((-2, 1), (1, -2)),
        ((-2, -1), (-1, -2)),
    ]
    eng = RewritingEngine(2, rules)
    assert eng.normal_form((2, -2, 2, 1)) == (1, 2)
