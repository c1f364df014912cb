import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from marked_shapes import box_ops as B
from marked_shapes import triangulation as T
from marked_shapes.box_ops import FaceNormalForm as F

P = T.parse_string


def s(x):
    return str(x)


def test_faces_of_worked_string():
    phi = P("123+−")
    assert [s(T.string_face(phi, k)) for k in range(4)] == ["−12+−", "112+−", "122+−", "12++−"]


def test_ascii_minus_accepted():
    assert P("12-2") == P("12−2")


def test_complete_substrings():
    assert T.complete_substrings(P("13323")) == [(1, 4, 5)]
    assert T.complete_substrings(P("14233")) == []
    assert T.is_marked_string(P("14233"))
    assert not T.is_marked_string(P("13323"))


@pytest.mark.parametrize(
    "text,expected",
    [("21213", {"+12−3"}), ("12−2", {"12−−", "1+−2"}), ("111", {"1−−", "+1−", "++1"})],
)
def test_linearizations(text, expected):
    assert {s(x) for x in T.linearizations(P(text))} == expected


def test_linear_simplex_of_composite_face():
    nf = F(6, ((5, 0), (2, 1), (1, 0)))
    assert s(T.linear_simplex(nf)) == "+−12+3"
    assert T.is_linear(T.linear_simplex(nf)) == nf
    assert T.is_linear(P("13323")) is None


def test_iota_and_small_actions():
    assert s(T.iota(4)) == "1234"
    assert s(T.string_degeneracy(P("12"), 0)) == "23"
    assert s(T.cube_act(B.connection(2, 1, 1), P("12"))) == "2"


def _chains(n, r):
    verts = list(itertools.product((0, 1), repeat=n))
    less = lambda a, b: a != b and all(x <= y for x, y in zip(a, b))  # noqa: E731
    return sum(1 for c in itertools.product(verts, repeat=r + 1) if all(less(c[k], c[k + 1]) for k in range(r)))


@pytest.mark.parametrize("n", range(0, 4))
def test_nondegenerate_simplices_are_strict_chains(n):
    for r in range(0, n + 1):
        assert len(T.cube_strings(n, r)) == _chains(n, r)
    assert len(T.cube_strings(n, n)) == factorial(n)


def test_triangulated_square():
    assert T.triangulated_cube(2).count_by_dim() == {0: 4, 1: 5, 2: 2}


@st.composite
def strings(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, n))
    pool = list(range(1, r + 1)) + ["+", "−"]
    entries = draw(st.lists(st.sampled_from(pool), min_size=n, max_size=n))
    return P("".join(map(str, entries)), r)


@given(strings())
def test_vertex_round_trip(phi):
    assert T.from_vertices(phi.vertices()) == phi


@given(strings(), st.data())
def test_simplicial_face_identity(phi, data):
    if phi.r < 2:
        return
    j = data.draw(st.integers(1, phi.r))
    i = data.draw(st.integers(0, j - 1))
    assert T.string_face(T.string_face(phi, j), i) == T.string_face(T.string_face(phi, i), j - 1)


@given(strings())
def test_faces_drop_one_vertex(phi):
    for k in range(phi.r + 1):
        f = T.string_face(phi, k)
        assert f.vertices() == phi.vertices()[:k] + phi.vertices()[k + 1:]


@given(strings())
def test_linearizations_are_linear_and_one_per_substring(phi):
    lins = T.linearizations(phi)
    assert len(set(lins)) <= len(T.complete_substrings(phi))
    for x in lins:
        assert T.is_linear(x) is not None
        assert len(T.complete_substrings(x)) == 1


@given(strings())
def test_marked_iff_no_complete_substring(phi):
    assert T.is_marked_string(phi) == (not T.complete_substrings(phi))


@given(strings(max_n=4), st.data())
def test_cube_action_is_functorial(phi, data):
    n = phi.n
    i, e = data.draw(st.integers(1, n + 1)), data.draw(st.integers(0, 1))
    j, d = data.draw(st.integers(1, n + 2)), data.draw(st.integers(0, 1))
    f, g = B.face(n + 1, i, e), B.face(n + 2, j, d)
    assert T.cube_act(B.compose(g, f), phi) == T.cube_act(g, T.cube_act(f, phi))


@given(strings(max_n=4), st.data())
def test_face_action_matches_elementary_face(phi, data):
    i, e = data.draw(st.integers(1, phi.n + 1)), data.draw(st.integers(0, 1))
    assert T.cubical_face_action(i, e, phi) == T.cube_act(B.face(phi.n + 1, i, e), phi)
