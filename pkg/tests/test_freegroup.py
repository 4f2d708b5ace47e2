from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heegaard.freegroup import (
    ArityError,
    CyclicWord,
    DegenerateInput,
    MalformedWord,
    RankMismatch,
    WhiteheadAut,
    Word,
    apply_whitehead,
    contains,
    cyclic_reduce,
    fold,
    is_basis_tuple,
    is_primitive,
    primitivity_trace,
    reduce,
    whitehead_permutations,
    whitehead_type2,
)

from oracles import all_reduced_words, commutator_basis_oracle

W = Word.parse
C = CyclicWord.parse


def test_reduce_examples():
    assert str(W("abB")) == "a"
    assert str(W("")) == ""
    assert str(W("aBbA")) == ""


def test_reduce_rejects_out_of_range():
    with pytest.raises(MalformedWord):
        reduce([3], 2)
    with pytest.raises(MalformedWord):
        W("aeb")


def test_aliases_parse_to_abcd():
    assert W("xxy") == W("aab")
    assert str(W("xY")) == "aB"


def test_cyclic_reduce_examples():
    assert str(cyclic_reduce(W("abA"))) == "b"
    assert str(cyclic_reduce(W("Bab"))) == "a"
    assert C("ab") == C("ba") == C("BA")


def test_whitehead_examples():
    # x -> x, y -> x^-1 y
    t = WhiteheadAut("type2", 2, multiplier=1, affected=frozenset({1, -2}))
    assert t.images() == {1: (1,), 2: (-1, 2)}
    once = apply_whitehead(t, W("xxy"))
    assert str(once) == "ab"
    assert str(apply_whitehead(t, once)) == "b"
    assert apply_whitehead(t.inverse(), once) == W("aab")
    ident = WhiteheadAut("permutation", 2, mapping=(1, 2))
    assert apply_whitehead(ident, W("abAB")) == W("abAB")


def test_whitehead_rank_mismatch():
    t = whitehead_type2(3)[0]
    with pytest.raises(RankMismatch):
        apply_whitehead(t, W("ab"))


def test_type2_rejects_bad_set():
    with pytest.raises(MalformedWord):
        WhiteheadAut("type2", 2, multiplier=1, affected=frozenset({1, -1}))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=10), st.data())
def test_whitehead_inverse_roundtrip(raw, data):
    w = reduce(raw, 3)
    t = data.draw(st.sampled_from(whitehead_type2(3) + whitehead_permutations(3)))
    assert apply_whitehead(t.inverse(), apply_whitehead(t, w)) == w


def test_primitive_examples():
    assert is_primitive(C("a"))
    assert is_primitive(C("aab"))
    assert not is_primitive(C("aabb"))
    assert not is_primitive(C("abAB"))
    with pytest.raises(DegenerateInput):
        is_primitive(C(""))


def test_trace_ends_at_a_generator():
    ok, trace = primitivity_trace(C("aaabaab"))
    assert ok
    assert len(trace[-1].after) == 1


def test_basis_examples():
    assert is_basis_tuple([W("a"), W("b")], 2)
    assert not is_basis_tuple([W("a"), W("a")], 2)
    assert is_basis_tuple([W("aab"), W("ab")], 2)
    with pytest.raises(ArityError):
        is_basis_tuple([W("a")], 2)


def test_fold_examples():
    g = fold([W("a")])
    assert g.num_vertices == 1 and contains(g, W("aaa")) and not contains(g, W("b"))
    assert fold([W("ab")]).num_vertices == 2
    rose = fold([W("aab"), W("ab")])
    assert rose.num_vertices == 1 and contains(rose, W("b"))
    assert rose.is_folded()


def test_basis_agrees_with_commutator_oracle_len3():
    words = [w for w in all_reduced_words(2, 3) if w]
    for u, v in product(words, repeat=2):
        assert is_basis_tuple([Word(u), Word(v)], 2) == commutator_basis_oracle(u, v), (u, v)


words4 = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6).map(lambda r: reduce(r, 2))


@settings(max_examples=300, deadline=None)
@given(words4, words4, st.integers(0, 3), words4)
def test_basis_invariances(u, v, which, g):
    base = is_basis_tuple([u, v], 2)
    if which == 0:
        other = [u.inverse(), v]
    elif which == 1:
        other = [v, u]
    elif which == 2:
        other = [g * u * g.inverse(), v]
    else:
        other = [u, v.inverse()]
    if which != 2:
        assert is_basis_tuple(other, 2) == base
    else:
        # conjugating one entry alone can break a basis: (abaBA, b) is not one.
        # Simultaneous conjugation and conjugation by the other entry are safe.
        assert is_basis_tuple([g * u * g.inverse(), g * v * g.inverse()], 2) == base
        assert is_basis_tuple([v * u * v.inverse(), v], 2) == base


def test_single_entry_conjugation_can_break_a_basis():
    assert is_basis_tuple([W("a"), W("b")], 2)
    assert not is_basis_tuple([W("abaBA"), W("b")], 2)
    assert not commutator_basis_oracle(W("abaBA").letters, W("b").letters)


@settings(max_examples=200, deadline=None)
@given(st.lists(words4, min_size=1, max_size=3), st.randoms())
def test_fold_independent_of_order(ws, rnd):
    shuffled = list(ws)
    rnd.shuffle(shuffled)
    assert fold(ws, 2) == fold(shuffled, 2)


def test_primitive_iff_has_basis_partner():
    partners = [Word(w) for w in all_reduced_words(2, 4) if w]
    for u in partners:
        has = any(is_basis_tuple([u, v], 2) for v in partners)
        assert is_primitive(u) == has, u


def test_rank3_triple():
    assert is_basis_tuple([W("acb", 3), W("b", 3), W("a", 3)], 3)
    assert not is_basis_tuple([W("acb", 3), W("b", 3), W("aa", 3)], 3)
