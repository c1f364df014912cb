"""Essential simplices of the triangulated cube and the bookkeeping around them.

Strings are :class:`~marked_shapes.triangulation.SimplexString` values.
An essential simplex is non-degenerate and interior (no ``+``/``-``).

    >>> from marked_shapes.triangulation import parse_string
    >>> essential_data(parse_string("12354"))
    EssentialData(preamble=(1, 2, 3), P=3, Q=4, q=5)
    >>> str(normalize(parse_string("1232")))
    '1342'
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .complexes import Complex
from .cubical import cube_complex, is_marked_in_comical_cube
from .triangulation import (
    MINUS,
    PLUS,
    SimplexString,
    cube_strings,
    iota,
    string_face,
    triangulate,
)

__all__ = [
    "NotEssential",
    "WrongClass",
    "EssentialData",
    "is_essential",
    "essential_data",
    "is_normal",
    "essential_simplices",
    "normalize",
    "denormalize",
    "omega",
    "Omega",
    "simplex_order_less",
    "is_i_disordered",
    "xi_complexes",
]


class NotEssential(ValueError):
    pass


class WrongClass(ValueError):
    pass


@dataclass(frozen=True)
class EssentialData:
    preamble: tuple[int, ...]
    P: int
    Q: int
    q: int


def is_essential(phi: SimplexString) -> bool:
    return not phi.is_degenerate() and phi.is_interior()


def essential_data(phi: SimplexString) -> EssentialData:
    if not is_essential(phi):
        raise NotEssential(f"{phi} is not essential")
    e, n = phi.entries, phi.n
    P = 0
    for r in range(1, phi.r + 1):
        if all((e[j - 1] == r) == (j == r) for j in range(1, n + 1)):
            P = r
        else:
            break
    Q = P + 1
    q = e[Q - 1] if Q <= n else n + 1
    return EssentialData(tuple(range(1, P + 1)), P, Q, q)


def is_normal(phi: SimplexString) -> bool:
    """``phi`` is in ``K*``: its ``q`` value occurs exactly once."""
    return phi.entries.count(essential_data(phi).q) == 1


@lru_cache(maxsize=None)
def essential_simplices(n: int, m: int) -> tuple[SimplexString, ...]:
    """``K_m`` for the ``n``-cube."""
    return cube_strings(n, m, interior=True)


def normalize(phi: SimplexString) -> SimplexString:
    """``N(phi)`` for an abnormal essential ``m``-simplex with ``m < n``."""
    if phi.r >= phi.n:
        raise WrongClass(f"{phi} has dimension {phi.r}, normalization needs m < n = {phi.n}")
    if is_normal(phi):
        raise WrongClass(f"{phi} is normal")
    d = essential_data(phi)
    out = tuple(x + 1 if (pos == d.Q or x > d.q) else x for pos, x in enumerate(phi.entries, start=1))
    return SimplexString(out, phi.r + 1)


def denormalize(psi: SimplexString) -> SimplexString:
    """Inverse of :func:`normalize`: the face ``psi . d_{q(psi)-1}``."""
    if psi.r < 2 or not is_normal(psi):
        raise WrongClass(f"{psi} is not a normal essential simplex of dimension >= 2")
    return string_face(psi, essential_data(psi).q - 1)


def _check_range(n: int, i: int, j: int) -> None:
    if not 1 <= i <= j <= n:
        raise ValueError(f"need 1 <= i <= j <= n, got n={n}, i={i}, j={j}")


def omega(n: int, i: int, j: int) -> SimplexString:
    """The ``(n-1)``-simplex ``omega^{n,i,j}``."""
    _check_range(n, i, j)
    out = []
    for k in range(1, n + 1):
        if k < i:
            out.append(k)
        elif k == i:
            out.append(j if j <= n - 1 else PLUS)
        else:
            out.append(k - 1)
    return SimplexString(tuple(out), n - 1)


def Omega(n: int, i: int, j: int) -> SimplexString:
    """The ``n``-simplex ``Omega^{n,i,j}``."""
    _check_range(n, i, j)
    out = []
    for k in range(1, n + 1):
        if k < i:
            out.append(k)
        elif k == i:
            out.append(j)
        elif k < j + 1:
            out.append(k - 1)
        else:
            out.append(k)
    return SimplexString(tuple(out), n)


def _abnormal(phi: SimplexString) -> bool:
    return is_essential(phi) and not is_normal(phi)


def simplex_order_less(phi: SimplexString, psi: SimplexString) -> bool:
    """Strict order on non-degenerate simplices of one dimension."""
    if phi == psi or not _abnormal(psi):
        return False
    if not _abnormal(phi):
        return True
    a, b = essential_data(phi), essential_data(psi)
    return a.P < b.P or (a.P == b.P and a.q > b.q)


def is_i_disordered(phi: SimplexString, i: int) -> bool:
    if not 2 <= i <= phi.r:
        return False
    hits = [pos for pos, x in enumerate(phi.entries) if x == i]
    if len(hits) != 1:
        return False
    return all(x != i - 1 for x in phi.entries[: hits[0]])


def xi_excluded(n: int, i: int) -> set[SimplexString]:
    return {omega(n, i, j) for j in range(i, n + 1)} | {Omega(n, i, j) for j in range(i, n + 1)}


def xi_complexes(n: int, i: int, ambient: Complex | None = None) -> tuple[Complex, Complex, Complex]:
    """``(Xi^n_i, boundary Xi^n_i, Xi-hat^n_i)`` as regular subcomplexes.

    The first two sit in the minimally marked triangulated cube, the last
    in the triangulated ``(i,0)``-comical cube.
    """
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got n={n}, i={i}")
    T = ambient or triangulate(cube_complex(n))
    Tc = triangulate(cube_complex(n, lambda c: is_marked_in_comical_cube(c, i, 0)))
    skip = xi_excluded(n, i)
    keep = [c for c in T.dims if c not in skip]
    Xi = T.subcomplex(keep, f"Xi^{n}_{i}")
    if set(Xi.dims) & skip:
        raise AssertionError("Xi is not closed under faces")
    bd = T.subcomplex([c for c in keep if not c.is_interior()], f"dXi^{n}_{i}")
    hat = Tc.subcomplex(keep, f"Xihat^{n}_{i}")
    return Xi, bd, hat


def in_open_box(phi: SimplexString, i: int) -> bool:
    """Does ``phi`` lie in the triangulated ``(i,0)`` open box?"""
    return phi.entries[i - 1] == MINUS or any(x in (PLUS, MINUS) for k, x in enumerate(phi.entries, 1) if k != i)


def is_iota(phi: SimplexString) -> bool:
    return phi == iota(phi.n)
