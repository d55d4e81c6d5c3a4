import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from coxkl import INF, CoxeterGroup, build_heap, enumerate_fc, is_fully_commutative, n_value
from coxkl.errors import NotFullyCommutativeError, NotReducedError
from coxkl.heaps import commutation_class_size, open_intervals
from coxkl.suites import cycle_system, path_system
from oracles import brute_max_antichain, heap_order, is_fc_by_closure, is_reduced_by_closure

A3 = path_system([3, 3])
B3 = path_system([3, 4])


def _idx(sys_, word):
    return tuple(sys_.index(c) for c in word)


def test_fc_counts():
    # FC counts: A3 has the Catalan number 14, B3 has 24, H3 has 44
    assert len(enumerate_fc(A3, 20)) == 14
    assert len(enumerate_fc(B3, 20)) == 24
    assert len(enumerate_fc(path_system([3, 5]), 30)) == 44


def test_fc_enumeration_matches_closure():
    for sys_ in (A3, B3, path_system([3, 5])):
        W = CoxeterGroup(sys_)
        want = {el.word for el in W.enumerate() if is_fc_by_closure(sys_.matrix, el.word)}
        assert set(enumerate_fc(sys_, 30)) == want


def test_heap_order_matches_oracle():
    sys_ = cycle_system(5)
    word = "a b c d e a c".split()
    heap = build_heap(word, sys_)
    rel = heap_order(sys_.matrix, _idx(sys_, word))
    for i, j in itertools.product(range(heap.size), repeat=2):
        if i != j:
            assert heap.precedes(i, j) == ((i, j) in rel)
    assert all(heap.precedes(i, i) for i in range(heap.size))


def test_n_value_examples():
    assert n_value("a c", A3) == 2
    assert n_value("a b c", A3) == 1
    assert n_value("b a c b", A3) == 2
    n, anti = n_value("b a c b", A3, witness=True)
    heap = build_heap("b a c b", A3)
    assert len(anti) == n
    assert not any(heap.comparable(i, j) for i in anti for j in anti if i != j)


def test_fc_test_rejects_unreduced_words():
    with pytest.raises(NotReducedError):
        is_fully_commutative("a a", A3)


def test_n_value_rejects_non_fc():
    with pytest.raises(NotFullyCommutativeError):
        n_value("a b a", A3)


def test_heap_serializations():
    heap = build_heap("b a c b", A3)
    d = json.loads(heap.to_json())
    assert d == heap.to_dict()
    assert "\\begin{tikzpicture}" in heap.to_tikz()
    body = heap.to_ascii().splitlines()[:-1]  # last line labels the columns
    assert "".join(body).count("b") == 2
    assert build_heap("b c a b", A3).canonical_serialization() == heap.canonical_serialization()


def test_minimal_maximal_and_chain():
    heap = build_heap("a b c", A3)
    assert heap.is_chain()
    assert heap.minimal() == [0]
    assert heap.maximal() == [2]


def test_open_intervals():
    heap = build_heap("b a c b", A3)
    ((i, j, inner),) = open_intervals(heap, A3.index("b"))
    assert (i, j) == (0, 3)
    assert sorted(inner) == [1, 2]


def test_commutation_class_size():
    assert commutation_class_size("a c", A3) == 2
    assert commutation_class_size("b a c b", A3) == 2
    assert commutation_class_size("a b c", A3) == 1


def test_max_n_pruning():
    sys_ = cycle_system(4)
    full = [w for w in enumerate_fc(sys_, 8) if n_value(w, sys_) <= 2]
    assert sorted(enumerate_fc(sys_, 8, max_n=2)) == sorted(full)


@st.composite
def fc_word(draw):
    sys_ = draw(st.sampled_from([A3, B3, cycle_system(4), path_system([3, INF, 4])]))
    word = draw(st.lists(st.integers(0, sys_.rank - 1), max_size=9))
    return sys_, tuple(word)


@settings(max_examples=200, deadline=None)
@given(fc_word())
def test_fc_test_matches_braid_closure(case):
    sys_, word = case
    if not is_reduced_by_closure(sys_.matrix, word):
        return
    names = [sys_.generators[i] for i in word]
    assert is_fully_commutative(names, sys_) == is_fc_by_closure(sys_.matrix, word)


@settings(max_examples=150, deadline=None)
@given(fc_word())
def test_antichain_matches_brute_force(case):
    sys_, word = case
    if not is_fc_by_closure(sys_.matrix, word):
        return
    names = [sys_.generators[i] for i in word]
    assert n_value(names, sys_) == brute_max_antichain(sys_.matrix, word)


@settings(max_examples=100, deadline=None)
@given(fc_word(), st.randoms())
def test_heap_invariant_under_commutations(case, rnd):
    sys_, word = case
    if not is_fc_by_closure(sys_.matrix, word):
        return
    other = list(word)
    for _ in range(10):
        if len(other) < 2:
            break
        i = rnd.randrange(len(other) - 1)
        if sys_.matrix[other[i]][other[i + 1]] == 2:
            other[i], other[i + 1] = other[i + 1], other[i]
    g = sys_.generators
    a = build_heap([g[i] for i in word], sys_)
    b = build_heap([g[i] for i in other], sys_)
    assert a.canonical_serialization() == b.canonical_serialization()


@pytest.mark.parametrize("sys_", [A3, B3, path_system([3, 5])], ids=["A3", "B3", "H3"])
def test_fc_exhaustive_on_reduced_words(sys_):
    """Every reduced word of length <= 8: heap test agrees with the braid closure test."""
    W = CoxeterGroup(sys_)
    g = sys_.generators
    M = sys_.matrix
    layer = [()]
    for _ in range(8):
        nxt = []
        for w in layer:
            for s in range(sys_.rank):
                u = w + (s,)
                if W.is_reduced(u):
                    nxt.append(u)
        layer = nxt
        for u in layer:
            assert is_fully_commutative([g[i] for i in u], sys_) == is_fc_by_closure(M, u)
