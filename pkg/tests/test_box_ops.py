from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from marked_shapes import box_ops as B
from marked_shapes.box_ops import FaceNormalForm as F


def test_composite_face_vertex_formula_and_normal_form():
    f = B.compose(B.face(3, 2, 1), B.face(2, 2, 0))
    assert f((0,)) == (0, 1, 0) and f((1,)) == (1, 1, 0)
    assert B.face_normal_form(f).factors == ((3, 0), (2, 1))


def test_normal_form_text_round_trip():
    nf = F.parse("d5,0.d2,1.d1,0@6")
    assert nf.factors == ((5, 0), (2, 1), (1, 0))
    assert str(nf) == "d5,0.d2,1.d1,0@6"
    assert B.face_normal_form(B.face_morphism(nf)) == nf


def test_involutions():
    assert B.involute(F(3, ((3, 0), (1, 1))), "co-op").factors == ((3, 1), (1, 0))
    assert B.involute(F(2, ((2, 0),)), "op").factors == ((1, 1),)


def test_face_after_connection_is_degenerate():
    # d_{1,0} followed by gamma_{1,1}: [1]^1 -> [1]^2 -> [1]^1
    g = B.compose(B.connection(2, 1, 1), B.face(2, 1, 0))
    epi, nf = B.ez_factor(g)
    assert nf.factors == ((1, 0),)
    assert epi.source_dim == 1 and epi.target_dim == 0


@pytest.mark.parametrize("n", range(0, 6))
def test_face_count(n):
    faces = B.all_faces(n)
    assert len(faces) == sum(comb(n, m) * 2 ** (n - m) for m in range(n + 1))
    assert len(set(faces)) == len(faces)


def test_bad_faces_rejected():
    with pytest.raises(B.NotAFace):
        B.face_normal_form(B.degeneracy(2, 1))


@st.composite
def faces(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    picks = draw(st.lists(st.tuples(st.integers(1, max(n, 1)), st.integers(0, 1)), max_size=n, unique_by=lambda t: t[0]))
    picks = [p for p in picks if p[0] <= n]
    return F(n, tuple(sorted(picks, reverse=True)))


@given(faces())
def test_normal_form_of_morphism_is_identity(nf):
    assert B.face_normal_form(B.face_morphism(nf)) == nf


@given(faces(), st.data())
def test_face_compose_agrees_with_morphism_composition(outer, data):
    inner = data.draw(faces(max_n=outer.dim).filter(lambda g: g.ambient == outer.dim) if outer.dim else st.just(F(0, ())))
    expected = B.face_normal_form(B.compose(B.face_morphism(outer), B.face_morphism(inner)))
    assert B.face_compose(outer, inner) == expected


@given(faces())
def test_involutions_are_involutive(nf):
    for which in ("op", "co", "co-op"):
        assert B.involute(B.involute(nf, which), which) == nf


@given(st.integers(1, 4), st.data())
def test_ez_factor_reconstructs(n, data):
    k = data.draw(st.integers(0, 3))
    gens = []
    dim = n + k
    f = B.identity(dim)
    for _ in range(k):
        i = data.draw(st.integers(1, f.target_dim))
        choice = data.draw(st.sampled_from(["sigma", "gamma"] if i < f.target_dim else ["sigma"]))
        g = B.degeneracy(f.target_dim, i) if choice == "sigma" else B.connection(f.target_dim, i, data.draw(st.integers(0, 1)))
        f = B.compose(g, f)
        gens.append(g)
    j = data.draw(st.integers(0, f.target_dim))
    if j:
        f = B.compose(B.face(f.target_dim + 1, j, data.draw(st.integers(0, 1))), f)
    epi, nf = B.ez_factor(f)
    assert B.compose(B.face_morphism(nf), epi) == f
    assert epi.source_dim == f.source_dim


def test_epis_are_surjective():
    for k in range(0, 4):
        for d in range(0, k + 1):
            for e in B.epis(k, d):
                assert set(e.vertex_table) == set(B.vertices(d))
