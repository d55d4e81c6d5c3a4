import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from coxkl import INF, CoxeterSystem, classify_a1_finite, classify_a2_finite, find_forbidden_subgraph, parse_diagram
from coxkl.diagram import is_connected, is_finite_type, isomorphic, recognize_shape, weyl_type
from coxkl.errors import DiagramError
from coxkl.suites import GOLDEN_TABLE, complete_system, cycle_system, path_system


def test_parse_round_trip():
    s = CoxeterSystem("abc", [("a", "b", 3), ("b", "c", INF)])
    t = parse_diagram(s.to_json())
    assert t.generators == s.generators
    assert t.matrix == s.matrix
    assert json.loads(t.to_json())["edges"]


@pytest.mark.parametrize("bad", [
    '{"generators": ["a", "a"], "edges": []}',
    '{"generators": ["a", "b"], "edges": [["a", "b", 2]]}',
    '{"generators": ["a", "b"], "edges": [["a", "b", 1]]}',
    '{"generators": ["a", "b"], "edges": [["a", "c", 3]]}',
    '{"generators": ["a", "b"], "edges": [["a", "b", 3.5]]}',
    '{"generators": ["a"], "edges": [["a", "a", 3]]}',
    'not json',
])
def test_bad_diagrams_rejected(bad):
    with pytest.raises(DiagramError):
        parse_diagram(bad)


def test_inf_weight_text():
    s = parse_diagram('{"generators": ["a", "b"], "edges": [["a", "b", "inf"]]}')
    assert s.m("a", "b") == INF


@pytest.mark.parametrize("sys_, name", [
    (path_system([3, 3, 3]), "A4"),
    (path_system([4, 3]), "B3"),
    (path_system([3, 4]), "B3"),
    (path_system([4, 3, 3, 4]), "CTilde5"),
    (path_system([3, 4, 3]), "F4"),
    (path_system([3, 3, 5]), "H4"),
    (path_system([9]), "I2(9)"),
    (path_system([INF]), "I2(inf)"),
    (complete_system({("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 4}), "Complete3"),
    (cycle_system(4), "Other"),
])
def test_recognize_shape(sys_, name):
    assert recognize_shape(sys_).name == name


def test_e_shape_params():
    sys_ = CoxeterSystem("xabcdef", [("x", "a", 3), ("x", "b", 3), ("b", "c", 3), ("x", "d", 3),
                                     ("d", "e", 3), ("e", "f", 3)])
    tag = recognize_shape(sys_)
    assert (tag.kind, tag.q, tag.r) == ("E", 2, 3)


def test_weyl_type():
    assert weyl_type(path_system([3, 3])) == ("A3", "finite")
    assert weyl_type(path_system([5])) is None
    # affine types carry the usual affine index, one less than the vertex count
    assert weyl_type(path_system([4, 3, 3, 4])) == ("CTilde4", "affine")
    assert is_finite_type(path_system([3, 5]))
    assert not is_finite_type(cycle_system(3))


@pytest.mark.parametrize("name, sys_, want", GOLDEN_TABLE, ids=[g[0] for g in GOLDEN_TABLE])
def test_golden_classification(name, sys_, want):
    verdict, cert = classify_a2_finite(sys_)
    assert verdict is want
    if not want and is_connected(sys_):
        assert cert.forbidden is not None, "connected negatives carry a forbidden subgraph"


def test_forbidden_mapping_is_induced_subgraph():
    for _, sys_, want in GOLDEN_TABLE:
        match = find_forbidden_subgraph(sys_)
        if want:
            assert match is None
            continue
        if match is None:
            # reducible: an affine C component next to another nontrivial one
            assert not is_connected(sys_)
            continue
        assert set(match.mapping.values()) <= set(sys_.generators)
        assert len(set(match.mapping.values())) == len(match.mapping)


def test_classify_a1():
    assert classify_a1_finite(path_system([3, 4, 3]))
    assert not classify_a1_finite(path_system([4, 3, 4]))
    assert not classify_a1_finite(cycle_system(3))
    with pytest.raises(DiagramError):
        classify_a1_finite(CoxeterSystem("ab", []))


weights = st.sampled_from([3, 3, 3, 4, 5, 6, INF])


@st.composite
def small_diagrams(draw):
    n = draw(st.integers(1, 6))
    gens = [chr(ord("a") + i) for i in range(n)]
    edges = []
    for s, t in itertools.combinations(gens, 2):
        if draw(st.booleans()):
            edges.append((s, t, draw(weights)))
    return CoxeterSystem(gens, edges)


@settings(max_examples=80, deadline=None)
@given(small_diagrams(), st.randoms())
def test_classification_invariant_under_relabelling(sys_, rnd):
    gens = list(sys_.generators)
    perm = gens[:]
    rnd.shuffle(perm)
    ren = dict(zip(gens, perm))
    other = CoxeterSystem(perm, [(ren[a], ren[b], w) for a, b, w in sys_.edges()])
    assert isomorphic(sys_, other)
    assert classify_a2_finite(sys_)[0] == classify_a2_finite(other)[0]


@settings(max_examples=80, deadline=None)
@given(small_diagrams())
def test_connected_negative_verdict_has_witness(sys_):
    verdict, cert = classify_a2_finite(sys_)
    if is_connected(sys_):
        assert verdict == (cert.forbidden is None)
    elif cert.forbidden is None and not verdict:
        assert any(c["kind"] == "CTilde" for c in cert.components)
