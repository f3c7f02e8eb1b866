import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import walk_signature
from polyreal.errors import ParseError
from polyreal.fixtures import load_term, nat_id, tier_corpus
from polyreal.generate import random_term, random_terms
from polyreal.syntax import parse, parse_bc, pretty_print
from polyreal.terms import SI, Add, Cond, Const0, Parity, Proj, SComp, Signature, derived_builders, size
from polyreal.tiers import check_tiers, signature_of


def test_parse_examples():
    assert parse("(add)") == Add()
    assert check_tiers(Add()).signature == (0, 2)
    assert isinstance(parse("(si 0 (proj 1 1 2) (proj 1 1 2))"), SI)
    assert parse("(proj 2 1 3)") == Proj(2, 1, 3)
    assert parse(" ; comment\n(comp (parity) () ((proj 0 1 1)))") == SComp(Parity(), (), (Proj(0, 1, 1),))


@pytest.mark.parametrize(
    "src, fragment",
    [
        ("(add", "unclosed"),
        ("(add))", "unbalanced"),
        ("(frob)", "unknown head"),
        ("(proj 1 1 3)", "outside"),
        ("(add 0)", "takes 0"),
        ("(si 0 0)", "takes 3"),
        ("0 1", "exactly one"),
        ("", "no term"),
        ("(proj a 1 1)", "integer"),
    ],
)
def test_parse_errors_carry_position(src, fragment):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert fragment in str(info.value).lower()
    assert info.value.line >= 1 and info.value.col >= 1


def test_sugar_expands_to_core():
    t = parse("(k 6)")
    assert "(k" not in pretty_print(t)
    assert signature_of(t) == (0, 0)
    assert signature_of(parse("(cond-d)")) == (0, 3)


def test_bc_dialect_separate():
    assert signature_of(parse_bc("(bcond)")) == (0, 3)
    with pytest.raises(ParseError):
        parse_bc("(parity)")
    with pytest.raises(ParseError):
        parse("(s0)")


def test_nat_id_accepted():
    rep = check_tiers(nat_id())
    assert rep.accepted and rep.signature == (1, 0) and rep.violations == []
    assert load_term("nat_id.w") == nat_id()


def test_bad_scomp_fixture_rejected():
    rep = check_tiers(load_term("bad_scomp.w"))
    assert not rep.accepted
    assert rep.violations == [("/normals[0]", "safe-into-normal")]


def test_basic_signatures():
    for t, sig in [(Add(), (0, 2)), (Cond(), (0, 3)), (Parity(), (0, 1)), (Const0(), (0, 0))]:
        rep = check_tiers(t)
        assert rep.accepted and rep.signature == sig


@pytest.mark.parametrize(
    "t, rule",
    [
        (SComp(Add(), (), (Proj(1, 0, 1),)), "comp-arity"),
        (SComp(Add(), (), (Proj(1, 0, 1), Proj(2, 0, 1))), "ambient-mismatch"),
        (SI(Const0(), Proj(1, 1, 2), Proj(2, 1, 3)), "si-step-shape"),
        (SI(Proj(0, 1, 1), Proj(1, 1, 2), Proj(1, 1, 2)), "si-step-shape"),
        (SComp(nat_id(), (Proj(0, 1, 1),), ()), "safe-into-normal"),
    ],
)
def test_rules(t, rule):
    rep = check_tiers(t)
    assert not rep.accepted
    assert rule in {r for _, r in rep.violations}


def test_unknown_node():
    class Alien:
        pass

    rep = check_tiers(SComp(Parity(), (), (Alien(),)))
    assert ("/safes[0]", "unknown-node") in rep.violations


def test_normal_into_safe_is_allowed():
    # the opposite direction of the asymmetry
    t = SComp(Parity(), (), (Proj(1, 0, 1),))
    assert signature_of(t) == (1, 0)


@pytest.mark.parametrize("name", ["pred_shift", "cond_discrete", "succ0", "succ1", "mul"])
def test_derived_builders_accepted(name):
    assert check_tiers(derived_builders(name)).accepted


@pytest.mark.parametrize("k", [0, 1, 2, 7, 64, 1000])
def test_int_const_small(k):
    t = derived_builders("int_const", k)
    assert signature_of(t) == (0, 0)
    assert size(t) <= 8 * (k.bit_length() + 1)


def test_tier_corpus_paths():
    cases = tier_corpus()
    assert len(cases) == 10
    assert len({c.depth for c in cases}) >= 6
    for c in cases:
        bad = check_tiers(c.bad)
        assert bad.violations == [(c.path, "safe-into-normal")], c.name
        assert check_tiers(c.good).accepted, c.name


def test_generator_meta_10k():
    rng = random.Random(99)
    sigs = [(1, 0), (1, 1), (2, 0), (1, 2), (2, 1), (0, 1), (0, 2)]
    for _ in range(10_000):
        sig = rng.choice(sigs)
        g = random_term(rng, sig)
        rep = check_tiers(g.term)
        assert rep.accepted, pretty_print(g.term)
        assert rep.signature == sig


@given(st.integers(0, 2**32))
def test_round_trip_generated(seed):
    for g in random_terms(seed, 5):
        t = g.term
        assert parse(pretty_print(t)) == t
        assert parse(pretty_print(t, indent=2)) == t


@given(st.integers(0, 2**32))
def test_independent_walker_agrees(seed):
    for g in random_terms(seed, 5):
        rep = check_tiers(g.term)
        assert walk_signature(g.term) == tuple(rep.signature)


def test_walker_agrees_on_every_accepted_node():
    from polyreal.terms import children

    def nodes(t, path="/"):
        yield path, t
        for label, c in children(t):
            yield from nodes(c, ("" if path == "/" else path) + "/" + label)

    for g in random_terms(5, 40):
        rep = check_tiers(g.term)
        for path, node in nodes(g.term):
            assert walk_signature(node) == tuple(rep.signatures[path])


def test_signature_of_raises_on_ill_tiered():
    with pytest.raises(ValueError):
        signature_of(load_term("bad_scomp.w"))
    assert Signature(2, 1).arity == 3
