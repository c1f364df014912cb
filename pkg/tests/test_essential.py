import pytest
from hypothesis import given
from hypothesis import strategies as st

from marked_shapes import essential as E
from marked_shapes import triangulation as T

P = T.parse_string


@pytest.mark.parametrize(
    "text,pre,p,q",
    [("12354", (1, 2, 3), 3, 5), ("12343", (1, 2), 2, 3), ("23111", (), 0, 2)],
)
def test_essential_data_examples(text, pre, p, q):
    d = E.essential_data(P(text))
    assert (tuple(d.preamble), d.P, d.Q, d.q) == (pre, p, p + 1, q)


def test_normalization_example():
    assert str(E.normalize(P("1232"))) == "1342"
    assert str(E.denormalize(P("1342"))) == "1232"


def test_omega_values_in_dimension_five():
    got = {j: (str(E.omega(5, 3, j)), str(E.Omega(5, 3, j))) for j in (3, 4, 5)}
    assert got[3] == ("12334", "12345")
    assert got[5] == ("12+34", "12534")
    assert got[4] == ("12434", "12435")


@pytest.mark.parametrize("n", range(1, 7))
def test_big_omega_on_diagonal_is_iota(n):
    for i in range(1, n + 1):
        assert E.Omega(n, i, i) == T.iota(n)


def test_errors():
    with pytest.raises(E.NotEssential):
        E.essential_data(P("12+"))
    with pytest.raises(E.WrongClass):
        E.normalize(P("1234"))
    with pytest.raises(ValueError):
        E.omega(3, 3, 2)


def test_disorder_example():
    assert E.is_i_disordered(P("23111"), 2)
    assert not E.is_i_disordered(P("12111"), 2)


@pytest.mark.parametrize("n", range(1, 5))
def test_xi_misses_omega_families(n):
    cube = T.triangulated_cube(n)
    for i in range(1, n + 1):
        X, dX, Xh = E.xi_complexes(n, i)
        assert len(cube) - len(X) == 2 * (n - i + 1)
        assert set(dX.dims) <= set(X.dims) <= set(cube.dims)


essential = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, n).flatmap(lambda m: st.sampled_from(E.essential_simplices(n, m)))
)


@given(essential)
def test_q_is_at_least_Q(phi):
    d = E.essential_data(phi)
    assert d.q >= d.Q


@given(essential)
def test_full_preamble_only_for_iota(phi):
    assert (E.essential_data(phi).P == phi.n) == (phi == T.iota(phi.n))


@given(essential)
def test_normalization_round_trip(phi):
    if phi.r >= phi.n or E.is_normal(phi):
        return
    psi = E.normalize(phi)
    assert E.is_normal(psi) and psi.r == phi.r + 1
    assert E.denormalize(psi) == phi
    assert T.string_face(psi, E.essential_data(psi).q - 1) == phi


@given(essential, essential)
def test_order_is_irreflexive_and_asymmetric(a, b):
    assert not E.simplex_order_less(a, a)
    if a.n == b.n and a.r == b.r:
        assert not (E.simplex_order_less(a, b) and E.simplex_order_less(b, a))
