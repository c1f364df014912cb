import pytest
from hypothesis import given
from hypothesis import strategies as st

from marked_shapes import simplicial as S
from marked_shapes.complexes import Map, find_isomorphism, inclusion


def test_marked_interval():
    X = S.make_standard("mDelta", 1)
    assert X.count_by_dim() == {0: 2, 1: 1}
    assert set(X.marked) == {(0, 1)}


def test_admissible_simplex_marks_only_top_in_dimension_two():
    assert set(S.make_standard("adelta", 2, 1).marked) == {(0, 1, 2)}


def test_trivializing_L_gives_L_prime():
    L, Lp = S.make_standard("L"), S.make_standard("L'")
    assert S.trivialize(L, 0).marked == Lp.marked
    assert set(L.dims) == set(Lp.dims)


def test_delta3eq_markings_and_self_duality():
    eq = S.delta3eq()
    assert {(0, 2), (1, 3), (0, 1, 2, 3)} <= set(eq.marked)
    assert all(s in eq.marked for s, d in eq.dims.items() if d == 2)
    assert find_isomorphism(S.op_involution(eq), eq) is not None


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(n + 1)])
def test_op_swaps_admissible_index(n, k):
    X = S.op_involution(S.make_standard("adelta", n, k))
    assert find_isomorphism(X, S.make_standard("adelta", n, n - k)) is not None


def test_join_of_points_is_interval():
    J = S.join(S.make_standard("Delta", 0), S.make_standard("Delta", 0))
    assert find_isomorphism(J, S.make_standard("Delta", 1)) is not None


def test_reflection_marks_outer_faces():
    X = S.simplex_complex(2, [(0, 1, 2), (1, 2), (0, 1)])
    R = S.precomplicial_reflection(X)
    assert set(R.marked) == {(0, 1, 2), (0, 1), (1, 2), (0, 2)}
    assert S.is_precomplicial(R)


def test_lifting_oracle():
    horn = S.horn_inclusion(2, 1)
    to_point = S.terminal_map(S.complicial_set(2))
    assert S.rlp(horn, to_point)
    H = horn.source
    assert not S.rlp(horn, S.terminal_map(H))


def test_marking_extension_is_entire():
    for n in range(2, 5):
        for k in range(n + 1):
            f = S.marking_extension(n, k)
            assert f.is_entire()
            assert set(f.source.marked) <= set(f.target.marked)


def test_bad_parameters():
    with pytest.raises(ValueError):
        S.make_standard("adelta", 2, 3)
    with pytest.raises(ValueError):
        S.make_standard("nope", 1)


@given(st.integers(1, 5), st.data())
def test_horn_misses_exactly_two_cells(n, data):
    k = data.draw(st.integers(0, n))
    H, D = S.make_standard("horn", n, k), S.make_standard("adelta", n, k)
    assert set(D.dims) - set(H.dims) == {tuple(range(n + 1)), tuple(v for v in range(n + 1) if v != k)}
    assert inclusion(H, D).is_regular()


@given(st.integers(1, 5), st.data())
def test_admissible_simplex_is_k_complicial(n, data):
    k = data.draw(st.integers(0, n))
    D = S.make_standard("adelta", n, k)
    assert S.is_k_complicial(D, D.unit(tuple(range(n + 1))), k)


@given(st.integers(0, 3), st.integers(0, 3))
def test_join_cell_counts(a, b):
    J = S.join(S.make_standard("Delta", a), S.make_standard("Delta", b))
    assert len(J.dims) == (2 ** (a + 1)) * (2 ** (b + 1)) - 1
    assert find_isomorphism(J, S.make_standard("Delta", a + b + 1)) is not None if a + b <= 3 else True


@given(st.integers(1, 4), st.data())
def test_reflection_is_idempotent_and_growing(n, data):
    cells = [s for s in S.make_standard("Delta", n).dims if len(s) >= 2]
    marked = data.draw(st.lists(st.sampled_from(cells), unique=True, max_size=6))
    X = S.simplex_complex(n, marked)
    R = S.precomplicial_reflection(X)
    assert set(X.marked) <= set(R.marked)
    assert S.precomplicial_reflection(R).marked == R.marked
