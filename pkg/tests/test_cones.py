import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from marked_shapes import box_ops as B
from marked_shapes import cones as C
from marked_shapes import simplicial as S
from marked_shapes import triangulation as T
from marked_shapes.box_ops import FaceNormalForm as F
from marked_shapes.complexes import find_isomorphism


def test_small_cone():
    X = C.cone_complex(0, 2)
    assert X.count_by_dim() == {0: 3, 1: 3, 2: 1}
    assert C.cone_face_degenerate(F(2, ((1, 0),)), 0, 2)
    assert not C.cone_face_degenerate(F(2, ((2, 1), (1, 0))), 0, 2)


@pytest.mark.parametrize("n", range(0, 5))
def test_cone_zero_and_one_coincide(n):
    if n == 0:
        return
    assert find_isomorphism(C.cone_complex(0, n), C.cone_complex(1, n - 1)) is not None


@pytest.mark.parametrize("n", range(0, 4))
def test_q_of_simplex_is_q_object(n):
    assert find_isomorphism(C.q_functor(S.make_standard("Delta", n)), C.q_object(n)) is not None


def test_q_of_marked_simplex_marks_the_top():
    QX = C.q_functor(S.make_standard("mDelta", 2))
    assert any(QX.dims[c] == 2 for c in QX.marked)


cones = st.integers(0, 3).flatmap(lambda m: st.integers(0, 4 - m).map(lambda n: (m, n)))


@given(cones, st.data())
def test_degenerate_faces_are_exactly_those_collapsed_by_canonicalization(mn, data):
    m, n = mn
    if m + n == 0:
        return
    nf = data.draw(st.sampled_from(B.all_faces(m + n)))
    f = B.face_morphism(nf)
    canon = C.cone_canonicalize(f, m, n)
    _, settled = B.ez_factor(canon)
    assert C.cone_face_degenerate(nf, m, n) == (settled.dim < nf.dim)


@given(cones, st.data())
def test_canonicalization_is_idempotent(mn, data):
    m, n = mn
    if m + n == 0:
        return
    nf = data.draw(st.sampled_from(B.all_faces(m + n)))
    once = C.cone_canonicalize(B.face_morphism(nf), m, n)
    assert C.cone_canonicalize(once, m, n) == once


def _monotone(q, r):
    return [t for t in itertools.product(range(r + 1), repeat=q + 1) if list(t) == sorted(t)]


monotone = st.integers(0, 5).flatmap(
    lambda n: st.integers(0, 5).flatmap(lambda r: st.sampled_from(_monotone(r, n)).map(lambda a: (n, a)))
)


@given(monotone)
def test_rho_after_zeta_is_identity(args):
    n, alpha = args
    assert tuple(C.rho(n, C.zeta(n, alpha))) == tuple(alpha)


@given(st.integers(0, 3), st.data())
def test_q_is_functorial_up_to_the_cone_quotient(r, data):
    q = data.draw(st.integers(0, 3))
    p = data.draw(st.integers(0, 3))
    alpha = data.draw(st.sampled_from(_monotone(q, r)))
    beta = data.draw(st.sampled_from(_monotone(p, q)))
    comp = tuple(alpha[b] for b in beta)
    lhs = C.cone_canonicalize(C.q_operator(comp, r), 0, r)
    rhs = C.cone_canonicalize(B.compose(C.q_operator(alpha, r), C.q_operator(beta, q)), 0, r)
    assert lhs == rhs


@given(st.integers(1, 4), st.data())
def test_same_in_tq_is_compatible_with_rho(n, data):
    r = data.draw(st.integers(1, n))
    strings = T.cube_strings(n, r)
    a, b = data.draw(st.sampled_from(strings)), data.draw(st.sampled_from(strings))
    if C.same_in_tq(a, b):
        assert C.rho(n, a) == C.rho(n, b)


def test_rho_map_is_a_valid_map():
    for n in range(1, 4):
        assert not C.rho_map(n).check()
        assert not C.rho_map(n, marked=True).check()


def test_order_one_theta_family_passes():
    X = C.cone_complex(1, 2)
    checked, skipped, fails = C.ThetaChecker(X, lambda m, n, x: C.base_theta(m, n, x, X)).check(1, 2)
    assert checked > 0 and skipped > 0 and fails == []
