import pytest
from hypothesis import given
from hypothesis import strategies as st

from marked_shapes import box_ops as B
from marked_shapes import cubical as K
from marked_shapes.box_ops import FaceNormalForm as F


def test_comical_rule_examples():
    assert K.is_marked_in_comical_cube(F(3, ()), 2, 0)
    assert not K.is_marked_in_comical_cube(F(3, ((2, 0),)), 2, 0)
    assert not K.is_marked_in_comical_cube(F(3, ((3, 0),)), 2, 0)
    assert not K.is_marked_in_comical_cube(F(3, ((1, 0),)), 2, 0)
    assert K.is_marked_in_comical_cube(F(3, ((1, 1),)), 2, 0)


def test_comical_interval_marks_its_top():
    # the rule leaves no clause that could unmark the top cell
    X = K.make_cube_object("comical", 1, 1, 0)
    assert set(X.marked) == {F(1, ())}


def test_comical_square_markings():
    X = K.make_cube_object("comical", 2, 1, 0)
    assert len(X.dims) == 9
    assert set(X.marked) == {F(2, ()), F(2, ((2, 1),))}


def test_rezk_pasting_shape():
    L = K.make_cube_object("Lxy", 1, 1)
    assert L.count_by_dim() == {0: 6, 1: 7, 2: 2}
    assert sum(1 for c in L.marked if L.dims[c] == 1) == 4
    Lp = K.make_cube_object("L'xy", 1, 1)
    assert set(Lp.marked) == {c for c, d in Lp.dims.items() if d >= 1}


def test_out_of_range():
    with pytest.raises(ValueError):
        K.make_cube_object("comical", 2, 3, 0)
    with pytest.raises(ValueError):
        K.make_cube_object("Gamma", 2, 1, 1)


def test_pushout_product_of_interval_open_box_with_boundary():
    pp, P, BY = K.pushout_product(K.open_box_inclusion(1, 1, 0), K.boundary_inclusion(1))
    assert pp.is_regular() and pp.is_mono()
    missing = set(BY.dims) - {t for _, t in pp.images.values()}
    assert len(missing) == 2 and any(BY.dims[c] == 2 for c in missing)


def test_lax_gray_tensor_marking_rule():
    I, mI = K.make_cube_object("cube", 1), K.make_cube_object("mcube", 1)
    T = K.lax_gray_tensor(I, mI)
    assert T.count_by_dim() == {0: 4, 1: 4, 2: 1}
    marked_dims = sorted(T.dims[c] for c in T.marked)
    assert marked_dims == [1, 1, 2]


@st.composite
def comical_faces(draw):
    n = draw(st.integers(1, 5))
    i = draw(st.integers(1, n))
    e = draw(st.integers(0, 1))
    nf = draw(st.sampled_from(B.all_faces(n)))
    return nf, i, e


@given(comical_faces())
def test_comical_markings_dual_under_co_op(args):
    nf, i, e = args
    assert K.is_marked_in_comical_cube(nf, i, e) == K.is_marked_in_comical_cube(B.involute(nf, "co-op"), i, 1 - e)


@given(comical_faces())
def test_comical_markings_mirror_under_co(args):
    nf, i, e = args
    n = nf.ambient
    assert K.is_marked_in_comical_cube(nf, i, e) == K.is_marked_in_comical_cube(B.involute(nf, "co"), n + 1 - i, e)


@given(comical_faces())
def test_op_is_co_after_co_op(args):
    nf, _, _ = args
    assert B.involute(nf, "op") == B.involute(B.involute(nf, "co-op"), "co")


@given(comical_faces())
def test_marked_comical_faces_never_touch_direction_i(args):
    nf, i, e = args
    if K.is_marked_in_comical_cube(nf, i, e):
        assert i not in nf.constants and nf.dim >= 1


@given(st.integers(1, 4), st.data())
def test_open_box_misses_top_and_one_face(n, data):
    i, e = data.draw(st.integers(1, n)), data.draw(st.integers(0, 1))
    A, Bx = K.make_cube_object("obox", n, i, e), K.make_cube_object("comical", n, i, e)
    assert set(Bx.dims) - set(A.dims) == {F(n, ()), F(n, ((i, e),))}
    assert not A.validate() and not Bx.validate()


@pytest.mark.parametrize("n,i", [(n, i) for n in range(1, 5) for i in range(1, n + 1)])
def test_co_op_swaps_comical_sign_on_objects(n, i):
    X = K.cubical_involution(K.make_cube_object("comical", n, i, 0), "co-op")
    Y = K.make_cube_object("comical", n, i, 1)
    assert X.relabel(lambda c: B.involute(c, "co-op")).same_as(Y)
