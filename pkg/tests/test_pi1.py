import pytest
from hypothesis import given, settings, strategies as st

from topinv.complex import SimplicialComplex, skeleton
from topinv.errors import DisconnectedError
from topinv.generators import BUILTINS, boundary_simplex, builtin, cp2_9, random_complex, rp2_6
from topinv.homology import homology
from topinv.pi1 import GroupPresentation, abelianization, free_reduce, presentation, simplify, spanning_tree


def test_spanning_trees():
    assert len(spanning_tree(skeleton(boundary_simplex(1), 1))) == 2
    assert len(spanning_tree(rp2_6())) == 5
    assert len(spanning_tree(cp2_9())) == 8
    with pytest.raises(DisconnectedError):
        spanning_tree(SimplicialComplex([(0, 1), (2, 3)]))


def test_presentation_sizes():
    P = presentation(boundary_simplex(1))
    assert P.ngens == 1 and P.relators == [] and abelianization(P).format() == "Z"
    P = presentation(rp2_6())
    assert P.ngens == 10 and len(P.relators) == 10
    assert abelianization(P).format() == "Z/2"
    W = SimplicialComplex([(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    P = presentation(W)
    assert P.ngens == 2 and P.relators == []


def test_tree_edges_never_generators():
    K = cp2_9()
    P = presentation(K)
    assert not set(P.edges) & spanning_tree(K)
    assert P.ngens == 36 - 8
    assert abelianization(P).is_trivial


def test_simplify_examples():
    P = GroupPresentation(["a", "b"], [[1], [1, 2]])
    S = simplify(P)
    assert S.ngens == 0 and S.relators == []
    P = GroupPresentation(["a"], [[1, 1]])
    assert abelianization(P).format() == "Z/2"
    F = GroupPresentation(["a", "b"], [])
    assert simplify(F).generators == ["a", "b"]
    S = simplify(presentation(cp2_9()))
    assert S.ngens < 28 and abelianization(S).is_trivial


def test_free_reduce():
    assert free_reduce([1, 2, -2, -1, 3]) == [3]


@pytest.mark.parametrize("name", ["rp2_6", "cp2_9", "s2xs2", "ck:3", "ck:6", "cylinder", "k4",
                                  "boundary_simplex:2"])
def test_abelianization_is_h1(name):
    K = builtin(name)
    P = presentation(K)
    assert abelianization(P) == homology(K)[1]
    assert abelianization(simplify(P)) == homology(K)[1]


@given(st.integers(0, 10_000))
@settings(max_examples=50)
def test_random_abelianization(seed):
    K = random_complex(seed, connected=True)
    P = presentation(K)
    assert P.ngens == K.f_vector()[1] - K.f_vector()[0] + 1
    assert len(P.relators) <= (K.f_vector()[2] if K.dim >= 2 else 0)
    assert abelianization(P) == homology(K)[1]
    assert abelianization(simplify(P)) == abelianization(P)


def test_text_and_json():
    P = presentation(rp2_6(), simplify_result=True)
    assert P.to_text().startswith("< ")
    assert P.to_dict()["kind"] == "pi1"
