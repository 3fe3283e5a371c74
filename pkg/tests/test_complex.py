from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from topinv.complex import SimplicialComplex, link, parse_facets, skeleton, wedge
from topinv.errors import EmptyComplexError, MalformedFacetError, NotAFaceError
from topinv.generators import (CP2_9_FACETS, boundary_simplex, builtin, ck_complex, cp2_9, cylinder,
                               full_simplex, random_complex, rp2_6, s2xs2)
from topinv.homology import homology
from topinv.rings import QQ

from oracles import all_faces


def test_parse_single_triangle():
    K = parse_facets("0 1 2\n")
    assert K.f_vector() == (3, 3, 1)


def test_parse_cp2_facet_list():
    text = "\n".join(" ".join(map(str, f)) for f in CP2_9_FACETS)
    assert parse_facets(text).f_vector() == (9, 36, 84, 90, 36)


def test_absorbed_face_sets_flag():
    K = parse_facets("0 1\n0 1 2")
    assert K == parse_facets("0 1 2")
    assert K.absorbed


def test_parse_errors():
    with pytest.raises(MalformedFacetError):
        parse_facets("0 1 1")
    with pytest.raises(EmptyComplexError):
        parse_facets("# nothing\n\n")


def test_string_labels_roundtrip():
    K = parse_facets("a b c\nb c d")
    assert K.facets == ((0, 1, 2), (1, 2, 3))
    assert parse_facets(K.to_text()) == K
    assert K.to_text().splitlines()[0] == "a b c"


def test_faces_order():
    assert boundary_simplex(2).faces(1) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert skeleton(boundary_simplex(1), 1).faces(1) == ((0, 1), (0, 2), (1, 2))
    tris = rp2_6().faces(2)
    assert len(tris) == 10 and tris[0] == (0, 1, 2)
    assert len(cp2_9().faces(2)) == 84
    assert rp2_6().faces(-1) == ((),)


def test_f_vectors():
    assert boundary_simplex(2).f_vector() == (4, 6, 4)
    assert rp2_6().f_vector() == (6, 15, 10)
    assert ck_complex(3).f_vector() == (13, 39, 27)
    assert ck_complex(2).f_vector() == (10, 27, 18)
    assert len(cp2_9().facets) == 36
    assert cylinder().euler_characteristic() == 0
    assert s2xs2().f_vector() == (16, 84, 216, 240, 96)


def test_links():
    L = link(boundary_simplex(2), (0,))
    assert L.facets == ((1, 2), (1, 3), (2, 3))
    L = link(rp2_6(), (4,))
    assert L.f_vector() == (5, 5)
    assert all(len(L.cofacets((v,))) == 2 for v in L.vertices)
    L = link(cp2_9(), (0,))
    assert len(L.facets) == 20
    assert homology(L, QQ).betti() == [1, 0, 0, 1]
    with pytest.raises(NotAFaceError):
        link(rp2_6(), (0, 1, 3))


def test_wedge_counts():
    W = wedge(full_simplex(2), 0, full_simplex(2), 0)
    assert W.f_vector() == (5, 6, 2)
    with pytest.raises(NotAFaceError):
        wedge(full_simplex(2), 7, full_simplex(2), 0)


def test_builtin_names():
    assert builtin("ck:4") == ck_complex(4)
    assert builtin("boundary_simplex:3").f_vector() == (5, 10, 10, 5)


@given(st.integers(0, 10_000))
def test_closure_against_oracle(seed):
    K = random_complex(seed)
    ref = all_faces(K.facets)
    for k in range(K.dim + 1):
        assert list(K.faces(k)) == ref[k]
        # every (k-1)-face of every k-face is present
        for t in K.faces(k):
            for s in combinations(t, len(t) - 1):
                if s:
                    assert s in K


@given(st.lists(st.lists(st.integers(0, 9), min_size=1, max_size=4, unique=True), min_size=1, max_size=8))
def test_facets_are_maximal_and_parse_roundtrip(rows):
    K = SimplicialComplex(rows)
    fs = [set(f) for f in K.facets]
    assert not any(a < b for a in fs for b in fs)
    P = parse_facets("\n".join(" ".join(map(str, r)) for r in rows))
    assert parse_facets(P.to_text()) == P
    assert {frozenset(P.label(v) for v in f) for f in P.facets} == {frozenset(map(str, f)) for f in K.facets}
    assert K.size == sum(len(f) for f in K.facets)
