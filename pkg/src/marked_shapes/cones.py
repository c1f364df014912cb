"""Cones, the cubification functor Q and its right adjoint.

A cube of the cone ``C^{m,n}`` is a cube of ``[1]^(m+n)`` up to the
relation that forgets everything after the first constant-0 coordinate
among the first ``n``. The canonical representative sets those trailing
coordinates to 0. Non-degenerate cells of a cone complex are named by
the canonical face that represents them.

    >>> C = cone_complex(0, 2)
    >>> C.count_by_dim()
    {0: 3, 1: 3, 2: 1}
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from . import box_ops as B
from .box_ops import BoxMorphism, FaceNormalForm
from .complexes import CUBICAL, SIMPLICIAL, Complex, Map, simplicial_surjections
from .cubical import cube_complex, is_marked_in_strong_comical_cube
from .triangulation import MINUS, PLUS, SimplexString, iota, string_act

__all__ = [
    "ConeCube",
    "cone_canonicalize",
    "cone_settle",
    "cone_face_degenerate",
    "cone_complex",
    "cone_quotient_map",
    "strong_cone",
    "cone_subobjects",
    "is_cone",
    "q_object",
    "q_operator",
    "q_functor",
    "q_map",
    "integral",
    "counit_subcomplex",
    "rho",
    "zeta",
    "rho_map",
    "same_in_tq",
    "homotopy_vertex",
    "homotopy_string",
    "homotopy_from_vertices",
    "ThetaChecker",
    "base_theta",
]


def _check_dims(f: BoxMorphism, m: int, n: int) -> None:
    if m < 0 or n < 0 or f.target_dim != m + n:
        raise ValueError(f"{f} does not target [1]^{m + n}")


def cone_canonicalize(f: BoxMorphism, m: int, n: int) -> BoxMorphism:
    """Canonical representative of ``f`` in ``C^{m,n}``."""
    _check_dims(f, m, n)
    consts = f.constant_coordinates()
    first = next((j for j in range(1, n + 1) if consts.get(j) == 0), None)
    if first is None:
        return f
    table = tuple(w[:first] + (0,) * (m + n - first) for w in f.vertex_table)
    return BoxMorphism(f.source_dim, f.target_dim, table, f.generator_word + ("canon",))


@dataclass(frozen=True)
class ConeCube:
    m: int
    n: int
    rep: BoxMorphism

    def __post_init__(self):
        if cone_canonicalize(self.rep, self.m, self.n) != self.rep:
            raise ValueError("representative is not canonical")

    @classmethod
    def of(cls, f: BoxMorphism, m: int, n: int) -> "ConeCube":
        return cls(m, n, cone_canonicalize(f, m, n))

    @property
    def dim(self) -> int:
        return self.rep.source_dim

    def settle(self) -> tuple[BoxMorphism, FaceNormalForm]:
        return B.ez_factor(self.rep)


def cone_settle(f: BoxMorphism, m: int, n: int) -> tuple[BoxMorphism, FaceNormalForm]:
    """``(epi, face)`` with ``face`` the non-degenerate cell of ``C^{m,n}`` under ``f``."""
    return B.ez_factor(cone_canonicalize(f, m, n))


def cone_face_degenerate(nf: FaceNormalForm, m: int, n: int) -> bool:
    """Rule form: some ``d_{i,0}`` with ``i <= n`` and a free coordinate after it."""
    if nf.ambient != m + n:
        raise ValueError(f"{nf} is not a face of [1]^{m + n}")
    c = nf.constants
    for i in range(1, n + 1):
        if c.get(i) == 0 and any(j not in c for j in range(i + 1, m + n + 1)):
            return True
    return False


def _is_canonical_face(nf: FaceNormalForm, m: int, n: int) -> bool:
    c = nf.constants
    first = next((j for j in range(1, n + 1) if c.get(j) == 0), None)
    return first is None or all(c.get(j) == 0 for j in range(first + 1, m + n + 1))


@lru_cache(maxsize=None)
def _cone_cells(m: int, n: int) -> tuple[FaceNormalForm, ...]:
    return tuple(nf for nf in B.all_faces(m + n) if _is_canonical_face(nf, m, n))


def cone_complex(m: int, n: int, marked_top: bool = False, marked: Callable | None = None, name: str = "") -> Complex:
    """``C^{m,n}``; ``marked_top`` gives the variant with the top cube marked."""
    if m < 0 or n < 0:
        raise ValueError("cone parameters must be non-negative")
    cells = _cone_cells(m, n)
    dims = {c: c.dim for c in cells}
    faces = {}
    for c in cells:
        f = B.face_morphism(c)
        faces[c] = {
            (k, e): cone_settle(B.compose(f, B.face(c.dim, k, e)), m, n) for k in range(1, c.dim + 1) for e in (0, 1)
        }
    mk = set()
    if marked_top and m + n >= 1:
        mk.add(FaceNormalForm(m + n))
    if marked is not None:
        mk |= {c for c in cells if marked(c)}
    return Complex(CUBICAL, dims, faces, frozenset(mk), name or f"C^{m},{n}")


def cone_quotient_map(m: int, n: int, source: Complex | None = None, target: Complex | None = None) -> Map:
    """The quotient ``[1]^(m+n) -> C^{m,n}`` on face-named complexes."""
    S = source or cube_complex(m + n)
    T = target or cone_complex(m, n)
    return Map(S, T, {c: cone_settle(B.face_morphism(c), m, n) for c in S.dims})


def _zero_after(total: int, i: int) -> BoxMorphism:
    return B._from_function(total - 1, total, lambda v: v[: i - 1] + (0,) * (total - i + 1), (f"z{i}",))


def is_cone(X: Complex, pair, m: int, n: int) -> bool:
    """Does the ``(m+n)``-cube ``pair`` of ``X`` factor through ``C^{m,n}``?"""
    d = m + n
    if X.algebra.source(pair[0]) != d:
        raise ValueError(f"cube has dimension {X.algebra.source(pair[0])}, expected {d}")
    for i in range(1, n + 1):
        if i == d:
            continue
        if X.act_on(B.face(d, i, 0), pair) != X.act_on(_zero_after(d, i), pair):
            return False
    return True


def strong_cone(m: int, n: int) -> Complex:
    """``C-bar^{m,n}``: images of the strongly ``(n+1,1)``-comical markings."""
    if m < 1:
        raise ValueError("strongly comical cones need m >= 1")
    marks = set()
    for nf in B.all_faces(m + n):
        if nf.dim >= 1 and is_marked_in_strong_comical_cube(nf, n + 1):
            epi, cell = cone_settle(B.face_morphism(nf), m, n)
            if epi.is_identity():
                marks.add(cell)
    return cone_complex(m, n, marked=lambda c: c in marks, name=f"Cbar^{m},{n}")


def cone_subobjects(m: int, n: int, literal: bool = False) -> tuple[Complex, Complex, Complex]:
    """``(B^{m,n}, C-bar^{m,n}, B-bar^{m,n})``.

    By default ``B^{m,n}`` is spanned by every codimension-one face except
    ``d_{n+1,1}``; ``literal=True`` uses the faces ``d_{1,1} .. d_{n+1,1}``
    together with all ``d_{i,0}``.
    """
    if m < 1 or n < 0:
        raise ValueError(f"B^{m},{n} needs m >= 1 and n >= 0")
    d = m + n
    if literal:
        keys = [(k, 1) for k in range(1, n + 2)] + [(k, 0) for k in range(1, d + 1)]
    else:
        keys = [(k, e) for k in range(1, d + 1) for e in (0, 1) if (k, e) != (n + 1, 1)]
    C = cone_complex(m, n)
    gens = [cone_settle(B.face(d, k, e), m, n)[1] for k, e in keys]
    Bmn = C.subcomplex(gens, f"B^{m},{n}")
    Cbar = strong_cone(m, n)
    Bbar = Cbar.subcomplex(gens, f"Bbar^{m},{n}")
    return Bmn, Cbar, Bbar


# ------------------------------------------------------------------ Q


def q_object(n: int, marked: bool = False) -> Complex:
    return cone_complex(0, n, marked_top=marked, name=f"Q{'~' if marked else ''}^{n}")


def _q_face(j: int, n: int) -> BoxMorphism:
    """``Q(d_j): Q^(n-1) -> Q^n``."""
    return B.face(n, j + 1, 1) if j < n else B.face(n, n, 0)


def _q_degeneracy(j: int, n: int) -> BoxMorphism:
    """``Q(s_j): Q^(n+1) -> Q^n``, merging by min below the last vertex."""
    return B.connection(n + 1, j + 1, 1) if j < n else B.degeneracy(n + 1, n + 1)


def _split_epi(s: tuple[int, ...]) -> list[int]:
    """Indices ``p`` with ``s = s_{p_1} ... s_{p_k}`` (rightmost applied first)."""
    out = []
    s = list(s)
    while len(s) > 1 and len(set(s)) < len(s):
        p = next(i for i in range(len(s) - 1) if s[i] == s[i + 1])
        out.append(p)
        del s[p + 1]
    return out


@lru_cache(maxsize=None)
def q_operator(alpha: tuple[int, ...], r: int) -> BoxMorphism:
    """Canonical cubical representative of ``Q(alpha)`` for ``alpha: [q] -> [r]``."""
    alpha = tuple(alpha)
    q = len(alpha) - 1
    if any(a > r or a < 0 for a in alpha) or any(x > y for x, y in zip(alpha, alpha[1:])):
        raise ValueError(f"{alpha} is not an operator into [{r}]")
    image = sorted(set(alpha))
    # degeneracy part: [q] -> [len(image)-1]
    s = tuple(image.index(a) for a in alpha)
    f = B.identity(q)
    cur = q
    for p in _split_epi(s):
        f = B.compose(_q_degeneracy(p, cur - 1), f)
        cur -= 1
    # face part: insert the missing vertices, smallest first
    missing = [v for v in range(r + 1) if v not in image]
    for j in missing:
        cur += 1
        f = B.compose(_q_face(j, cur), f)
    return cone_canonicalize(f, 0, r)


@lru_cache(maxsize=None)
def _q_cell_table(n: int) -> dict:
    """Canonical cells of ``Q^n`` against the simplicial faces they come from."""
    out = {}
    for k in range(n + 1):
        for sub in itertools.combinations(range(n + 1), k + 1):
            epi, nf = cone_settle(q_operator(sub, n), 0, n)
            if not epi.is_identity():
                raise AssertionError(f"Q of the face {sub} is degenerate")
            out[nf] = sub
    return out


def q_functor(X: Complex) -> Complex:
    """``Q X`` for a finite marked simplicial complex; cells keep their names."""
    if X.algebra is not SIMPLICIAL:
        raise ValueError("Q takes a simplicial complex")
    dims, faces = dict(X.dims), {}
    for x, n in X.dims.items():
        table = _q_cell_table(n)
        fs = {}
        for k in range(1, n + 1):
            for e in (0, 1):
                epi, nf = cone_settle(B.face(n, k, e), 0, n)
                s, y = X.act(table[nf], x)
                fs[(k, e)] = (B.compose(q_operator(s, max(s)), epi), y)
        faces[x] = fs
    return Complex(CUBICAL, dims, faces, X.marked, f"Q({X.name})")


def q_map(f: Map, source: Complex | None = None, target: Complex | None = None) -> Map:
    S = source or q_functor(f.source)
    T = target or q_functor(f.target)
    return Map(S, T, {x: (q_operator(s, max(s)), y) for x, (s, y) in f.images.items()})


# ------------------------------------------------------------- integral


def _simplicial_degeneracy(j: int, n: int) -> tuple[int, ...]:
    """``s_j: [n+1] -> [n]``."""
    return tuple(v if v <= j else v - 1 for v in range(n + 2))


def integral(X: Complex, max_dim: int | None = None) -> Complex:
    """The right adjoint of Q on a finite marked cubical complex.

    ``n``-simplices are the ``(0,n)``-cones of ``X``; a simplex is
    marked iff its cube is. Simplices are named by their cube: the cell
    itself when non-degenerate, else ``("cube", cell, epi)``.
    """
    top = X.max_dim if max_dim is None else max_dim
    cones: dict[int, list] = {}
    for n in range(top + 2):
        cones[n] = [p for p in _all_cubes(X, n) if is_cone(X, p, 0, n)]

    def name(pair):
        op, c = pair
        return c if op.is_identity() else ("cube", c, op)

    def deg_of(pair, n):
        for j in range(n):
            y = X.act_on(q_operator(tuple(v for v in range(n + 1) if v != j), n), pair)
            if X.act_on(q_operator(_simplicial_degeneracy(j, n - 1), n - 1), y) == pair:
                return j, y
        return None

    def ez(pair, n):
        ops = []
        while n > 0:
            hit = deg_of(pair, n)
            if hit is None:
                break
            j, pair = hit
            ops.append((j, n - 1))
            n -= 1
        s = tuple(range(n + 1))
        for j, k in reversed(ops):
            s = tuple(s[v] for v in _simplicial_degeneracy(j, k))
        return s, name(pair), n

    dims, faces, marked = {}, {}, set()
    for n, cs in cones.items():
        for p in cs:
            if n > 0 and deg_of(p, n) is not None:
                continue
            if n == top + 1:
                raise AssertionError("non-degenerate simplex above the cube dimension")
            c = name(p)
            dims[c] = n
            if X.is_marked(p) and n >= 1:
                marked.add(c)
            fs = {}
            if n >= 1:
                for k in range(n + 1):
                    y = X.act_on(q_operator(tuple(v for v in range(n + 1) if v != k), n), p)
                    s, t, _ = ez(y, n - 1)
                    fs[k] = (s, t)
            faces[c] = fs
    return Complex(SIMPLICIAL, dims, faces, frozenset(marked), f"int({X.name})")


def _all_cubes(X: Complex, n: int) -> list:
    out = []
    for c in X.cells():
        d = X.dims[c]
        if d <= n:
            for e in B.epis(n, d):
                out.append((e, c))
    return out


def counit_subcomplex(X: Complex) -> tuple[Complex, Map]:
    """``Q int X`` and the counit into ``X``."""
    QI = q_functor(integral(X))
    images = {}
    for c in QI.dims:
        if isinstance(c, tuple) and len(c) == 3 and c[0] == "cube":
            images[c] = (c[2], c[1])
        else:
            images[c] = X.unit(c)
    return QI, Map(QI, X, images)


# ------------------------------------------------------- rho, zeta, H


def rho(n: int, phi: SimplexString) -> tuple[int, ...]:
    """``rho^n(phi)`` as the value tuple of an operator ``[r] -> [n]``."""
    if phi.n != n:
        raise ValueError(f"string of length {phi.n} given for n={n}")
    out = []
    for p in range(phi.r + 1):
        best = 0
        for k in range(1, n + 1):
            if all(phi.entries[i] <= p for i in range(k)):
                best = k
        out.append(best)
    return tuple(out)


def zeta(n: int, alpha: Iterable[int]) -> SimplexString:
    """The simplex of ``T Q^n`` picked out by ``alpha: [r] -> [n]`` under ``zeta^n``."""
    return string_act(iota(n), tuple(alpha))


def same_in_tq(phi: SimplexString, chi: SimplexString) -> bool:
    """Do two strings represent the same simplex of ``T Q^n``?"""
    if phi.n != chi.n or phi.r != chi.r:
        return False
    for i in range(phi.n):
        if phi.entries[i] != chi.entries[i]:
            if not any(phi.entries[j] == PLUS and chi.entries[j] == PLUS for j in range(i)):
                return False
    return True


def rho_map(n: int, marked: bool = False, source: Complex | None = None, target: Complex | None = None) -> Map:
    """``rho^n: T Q^n -> Delta^n`` (marked variant for ``marked=True``)."""
    from .simplicial import make_standard
    from .triangulation import triangulate

    S = source or triangulate(q_object(n, marked))
    T = target or make_standard("mDelta" if marked else "Delta", n)
    images = {}
    for phi in S.dims:
        a = rho(n, phi)
        image = tuple(sorted(set(a)))
        images[phi] = (tuple(image.index(v) for v in a), image)
    return Map(S, T, images)


def homotopy_vertex(v: tuple[int, ...], t: int) -> tuple[int, ...]:
    if t == 1:
        return tuple(v)
    out, run = [], 1
    for x in v:
        run = min(run, x)
        out.append(run)
    return tuple(out)


def homotopy_string(phi: SimplexString) -> SimplexString:
    """``H`` on a simplex of ``(Delta^1)^n x Delta^1`` given as a string of length ``n+1``."""
    q = phi.entries[-1]
    out = []
    run = MINUS
    for x in phi.entries[:-1]:
        run = max(run, x)
        out.append(x if x >= q else min(run, q))
    return SimplexString(tuple(out), phi.r)


def homotopy_from_vertices(phi: SimplexString) -> SimplexString:
    from .triangulation import from_vertices

    chain = [homotopy_vertex(v[:-1], v[-1]) for v in phi.vertices()]
    if not chain[0]:
        return SimplexString((), phi.r)
    return from_vertices(chain)


# -------------------------------------------------------------- theta


@dataclass
class ThetaChecker:
    """Checks the coherence identities of a candidate family ``theta(m, n, x)``.

    ``theta`` maps an ``(m,n)``-cone ``x`` of ``X`` (a pair) to an
    ``(m+n+1)``-cube of ``X``; it is consulted only for ``m`` in
    ``orders``. Identities that would need ``theta`` at other orders are
    skipped and counted.
    """

    X: Complex
    theta: Callable
    orders: tuple[int, ...] = (1,)

    def cones(self, m: int, n: int) -> list:
        return [p for p in _all_cubes(self.X, m + n) if is_cone(self.X, p, m, n)]

    def check(self, m: int, n: int) -> tuple[int, int, list[str]]:
        """Return ``(checked, skipped, failures)`` over all ``(m,n)``-cones."""
        X, th = self.X, self.theta
        d = m + n
        checked = skipped = 0
        fails: list[str] = []

        def have(mm):
            return mm in self.orders

        def eq(label, lhs, rhs):
            nonlocal checked
            checked += 1
            if lhs != rhs:
                fails.append(f"{label}: {lhs!r} != {rhs!r}")

        Cbar = strong_cone(m, n + 1)
        for x in self.cones(m, n):
            t = th(m, n, x)
            checked += 1
            if not is_cone(X, t, m, n + 1):
                fails.append(f"theta({x!r}) is not an ({m},{n + 1})-cone")
            for c in Cbar.marked:
                checked += 1
                if not X.is_marked(X.act_on(B.face_morphism(c), t)):
                    fails.append(f"theta({x!r}) does not mark {c}")
            for i in range(1, n + 1):  # face (i,1) below the cone direction
                if have(m) and n >= 1:
                    eq(f"T1 i={i}", X.act_on(B.face(d + 1, i, 1), t), th(m, n - 1, X.act_on(B.face(d, i, 1), x)))
            eq("T2", X.act_on(B.face(d + 1, n + 1, 1), t), x)
            for i in range(n + 2, d + 2):
                if m >= 2:
                    if have(m - 1):
                        eq(f"T3 i={i}", X.act_on(B.face(d + 1, i, 0), t), th(m - 1, n, X.act_on(B.face(d, i - 1, 0), x)))
                    else:
                        skipped += 1
            for i in range(n + 2, d + 3):
                if have(m + 1):
                    eq(f"T4 i={i}", X.act_on(B.degeneracy(d + 2, i), t), th(m + 1, n, X.act_on(B.degeneracy(d + 1, i - 1), x)))
                else:
                    skipped += 1
            for i in range(1, n + 1):
                eq(f"T5 i={i}", X.act_on(B.connection(d + 2, i, 1), t), th(m, n + 1, X.act_on(B.connection(d + 1, i, 1), x)))
            for i in range(n + 2, d + 2):
                for e in (0, 1):
                    if have(m + 1):
                        eq(
                            f"T6 i={i} e={e}",
                            X.act_on(B.connection(d + 2, i, e), t),
                            th(m + 1, n, X.act_on(B.connection(d + 1, i - 1, e), x)),
                        )
                    else:
                        skipped += 1
            eq("T7", th(m, n + 1, t), X.act_on(B.connection(d + 2, n + 1, 1), t))
            if m - 1 >= 0 and is_cone(X, x, m - 1, n + 1):
                eq("T8", t, X.act_on(B.connection(d + 1, n + 1, 1), x))
        return checked, skipped, fails


def base_theta(m: int, n: int, x, X: Complex):
    """The forced order-one family ``theta^{1,n}(x) = x . gamma_{n+1,1}``."""
    if m != 1:
        raise ValueError("only the order-one family is forced")
    return X.act_on(B.connection(n + 2, n + 1, 1), x)
