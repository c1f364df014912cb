"""Finite marked simplicial sets.

Standard objects are built as subcomplexes of a simplex whose cells are
increasing vertex tuples. Products, joins and Gray tensors name their
cells by the pieces they come from.

    >>> X = make_standard("adelta", 2, 1)
    >>> sorted(c for c in X.marked)
    [(0, 1, 2)]
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .complexes import (
    SIMPLICIAL,
    BudgetExceeded,
    Complex,
    Map,
    enumerate_maps,
    inclusion,
    pushout,
    simplicial_surjections,
)

__all__ = [
    "simplex_complex",
    "make_standard",
    "complicial_set",
    "join",
    "product",
    "gray_tensor",
    "trivialize",
    "op_involution",
    "precomplicial_reflection",
    "is_k_complicial",
    "rlp",
    "pushout",
    "marking_extension",
]


def _faces_of_tuple(s: tuple) -> dict:
    d = len(s) - 1
    if d < 1:
        return {}
    return {i: (tuple(range(d)), s[:i] + s[i + 1 :]) for i in range(d + 1)}


def tuple_complex(cells: Iterable[tuple], marked: Iterable[tuple] = (), name: str = "") -> Complex:
    """Complex whose cells are increasing vertex tuples, closed under faces."""
    todo, seen = list(cells), set()
    while todo:
        s = tuple(todo.pop())
        if s in seen:
            continue
        seen.add(s)
        if len(s) > 1:
            todo.extend(s[:i] + s[i + 1 :] for i in range(len(s)))
    return Complex(
        SIMPLICIAL,
        {s: len(s) - 1 for s in seen},
        {s: _faces_of_tuple(s) for s in seen},
        frozenset(tuple(m) for m in marked),
        name,
    )


def simplex_complex(n: int, marked: Iterable[tuple] = (), name: str = "") -> Complex:
    return tuple_complex([tuple(range(n + 1))], marked, name or f"Delta^{n}")


def _subsets(n: int, min_dim: int = 0):
    for k in range(min_dim + 1, n + 2):
        yield from itertools.combinations(range(n + 1), k)


def _window(n: int, k: int) -> set[int]:
    return {k - 1, k, k + 1} & set(range(n + 1))


def _admissible(n: int, k: int) -> list[tuple]:
    w = _window(n, k)
    return [s for s in _subsets(n, 1) if w <= set(s)]


def make_standard(kind: str, *params: int) -> Complex:
    """The named standard marked simplicial set.

    ``kind`` is one of ``Delta, mDelta, adelta, horn, adelta', adelta'',
    Delta3eq, L, L'``.
    """
    if kind in ("Delta", "mDelta"):
        (n,) = params
        _check(n >= 0 and (kind == "Delta" or n >= 1), kind, params)
        top = [tuple(range(n + 1))] if kind == "mDelta" else []
        return simplex_complex(n, top, f"{kind} {n}")
    if kind in ("adelta", "horn", "adelta'", "adelta''"):
        n, k = params
        _check(n >= 1 and 0 <= k <= n, kind, params)
        marked = set(_admissible(n, k))
        if kind in ("adelta'", "adelta''"):
            for j in (k - 1, k + 1):
                if 0 <= j <= n and n >= 2:
                    marked.add(tuple(v for v in range(n + 1) if v != j))
        if kind == "adelta''":
            marked |= {s for s in _subsets(n, n - 1) if len(s) - 1 >= n - 1}
        X = simplex_complex(n, marked, f"{kind} {n} {k}")
        if kind == "horn":
            faces = [tuple(v for v in range(n + 1) if v != j) for j in range(n + 1) if j != k]
            X = X.subcomplex(faces, f"horn {n} {k}")
        return X
    if kind == "Delta3eq":
        _check(not params, kind, params)
        return delta3eq()
    if kind in ("L", "L'"):
        _check(not params, kind, params)
        eq = make_standard("Delta3eq")
        L = eq.subcomplex([(1, 2, 3), (0, 1, 2)], "L")
        if kind == "L'":
            L = L.trivialize(0)
            L.name = "L'"
        return L
    raise ValueError(f"unknown simplicial object {kind!r}")


def delta3eq(top_marked: bool = True) -> Complex:
    """``Delta^3`` with edges 02, 13 and every simplex of dimension >= 2 marked.

    ``top_marked=False`` leaves the 3-simplex unmarked, which is the
    reading where only the 2-simplices are listed.
    """
    marked = [s for s in _subsets(3, 2) if len(s) == 3] + [(0, 2), (1, 3)]
    if top_marked:
        marked.append((0, 1, 2, 3))
    return simplex_complex(3, marked, "Delta3eq")


def _check(ok: bool, kind: str, params) -> None:
    if not ok:
        raise ValueError(f"parameters {params} out of range for {kind}")


def marking_extension(n: int, k: int) -> Map:
    """The complicial marking extension ``Delta^n_k' -> tau_(n-2) Delta^n_k``."""
    src = make_standard("adelta'", n, k)
    tgt = trivialize(make_standard("adelta", n, k), n - 2)
    return Map(src, tgt, {c: src.unit(c) for c in src.dims})


def horn_inclusion(n: int, k: int) -> Map:
    return inclusion(make_standard("horn", n, k), make_standard("adelta", n, k))


# ------------------------------------------------------------ constructions


def trivialize(X: Complex, n: int) -> Complex:
    return X.trivialize(n)


def op_involution(X: Complex) -> Complex:
    """Reverse vertex order in every simplex; markings are unchanged."""
    faces = {}
    for c, d in X.dims.items():
        fs = {}
        for i in range(d + 1) if d >= 1 else []:
            s, t = X.faces[c][d - i]
            dt = X.dims[t]
            fs[i] = (tuple(dt - s[d - 1 - v] for v in range(d)), t)
        faces[c] = fs
    return Complex(SIMPLICIAL, dict(X.dims), faces, X.marked, X.name + "^op")


def _join_op(s, t, dx: int, dy: int):
    """Concatenate operators; ``None`` stands for the empty side."""
    left = list(s) if s is not None else []
    right = [dx + 1 + w for w in t] if t is not None else []
    return tuple(left + right)


def join(X: Complex, Y: Complex) -> Complex:
    """Simplicial join; a simplex is marked iff one of its components is."""

    def dim(c):
        x, y = c
        return (X.dims[x] if x is not None else -1) + (Y.dims[y] if y is not None else -1) + 1

    cells = [(x, None) for x in X.dims] + [(None, y) for y in Y.dims]
    cells += [(x, y) for x in X.dims for y in Y.dims]
    dims = {c: dim(c) for c in cells}
    faces = {}
    for c in cells:
        x, y = c
        dx = X.dims[x] if x is not None else -1
        dy = Y.dims[y] if y is not None else -1
        fs = {}
        for i in range(dims[c] + 1) if dims[c] >= 1 else []:
            if i <= dx:
                if dx == 0:
                    fs[i] = (tuple(range(dy + 1)), (None, y))
                else:
                    s, x2 = X.faces[x][i]
                    fs[i] = (_join_op(s, None if y is None else range(dy + 1), X.dims[x2], dy), (x2, y))
            else:
                j = i - dx - 1
                if dy == 0:
                    fs[i] = (tuple(range(dx + 1)), (x, None))
                else:
                    t, y2 = Y.faces[y][j]
                    left = None if x is None else range(dx + 1)
                    fs[i] = (_join_op(left, t, dx, Y.dims[y2]), (x, y2))
        faces[c] = fs
    marked = {c for c in cells if (c[0] in X.marked) or (c[1] in Y.marked)}
    return Complex(SIMPLICIAL, dims, faces, frozenset(marked), f"({X.name} * {Y.name})")


def _paths(dx: int, dy: int):
    """Monotone lattice paths (0,0) -> (dx,dy) with unit steps, as (s, t)."""

    def go(a, b, acc):
        if (a, b) == (dx, dy):
            yield acc
            return
        for da, db in ((1, 0), (0, 1), (1, 1)):
            if a + da <= dx and b + db <= dy:
                yield from go(a + da, b + db, acc + [(a + da, b + db)])

    for path in go(0, 0, [(0, 0)]):
        yield tuple(p[0] for p in path), tuple(p[1] for p in path)


def _dedupe(a, b):
    pts = list(zip(a, b))
    keep, epi = [], []
    for p in pts:
        if not keep or keep[-1] != p:
            keep.append(p)
        epi.append(len(keep) - 1)
    return tuple(epi), tuple(p[0] for p in keep), tuple(p[1] for p in keep)


def product(X: Complex, Y: Complex, marked_rule=None, name: str = "") -> Complex:
    """Cartesian product of the underlying simplicial sets.

    Cells are ``(x, y, s, t)`` with ``s, t`` jointly injective surjections.
    ``marked_rule(X, Y, cell)`` decides markings (default: none).
    """
    dims, faces = {}, {}
    for x in X.dims:
        for y in Y.dims:
            for s, t in _paths(X.dims[x], Y.dims[y]):
                dims[(x, y, s, t)] = len(s) - 1
    for c, k in dims.items():
        x, y, s, t = c
        fs = {}
        for j in range(k + 1) if k >= 1 else []:
            dj = tuple(v for v in range(k + 1) if v != j)
            a, x2 = X.act(tuple(s[v] for v in dj), x)
            b, y2 = Y.act(tuple(t[v] for v in dj), y)
            epi, a2, b2 = _dedupe(a, b)
            fs[j] = (epi, (x2, y2, a2, b2))
        faces[c] = fs
    P = Complex(SIMPLICIAL, dims, faces, frozenset(), name or f"({X.name} x {Y.name})")
    if marked_rule is not None:
        P = P.with_marked([c for c in dims if marked_rule(X, Y, c)])
    return P


def is_fully_cloven(X: Complex, Y: Complex, cell) -> bool:
    x, y, s, t = cell
    k = len(s) - 1
    if k < 1:
        return False
    for i in range(k + 1):
        front = X.act(s[: i + 1], x)
        back = Y.act(t[i:], y)
        if not (X.is_marked(front) and X.algebra.source(front[0]) >= 1) and not (
            Y.is_marked(back) and Y.algebra.source(back[0]) >= 1
        ):
            return False
    return True


def gray_tensor(X: Complex, Y: Complex) -> Complex:
    """Gray tensor: the product, marked where fully cloven."""
    return product(X, Y, is_fully_cloven, f"({X.name} (x) {Y.name})")


def point() -> Complex:
    return simplex_complex(0, name="point")


def empty() -> Complex:
    return Complex(SIMPLICIAL, {}, {}, frozenset(), "empty")


# ------------------------------------------------------------ complicial checks


def is_k_complicial(X: Complex, pair, k: int) -> bool:
    """Does the simplex ``pair`` (an ``(op, cell)`` pair) factor through ``Delta^m_k``?"""
    m = SIMPLICIAL.source(pair[0])
    if m == 0:
        return True
    return all(X.is_marked(X.act_on(face, pair)) for face in _admissible(m, k))


def _extension_applies(X: Complex, c, k: int) -> bool:
    n = X.dims[c]
    if not is_k_complicial(X, X.unit(c), k):
        return False
    for j in (k - 1, k + 1):
        if 0 <= j <= n:
            if not X.is_marked(X.faces[c][j]):
                return False
    return True


def precomplicial_reflection(X: Complex) -> Complex:
    """Least marking closed under the complicial marking extensions."""
    marked = set(X.marked)
    Y = X
    changed = True
    while changed:
        changed = False
        Y = X.with_marked(marked)
        for c in Y.cells():
            n = Y.dims[c]
            if n < 2:
                continue
            for k in range(n + 1):
                if not _extension_applies(Y, c, k):
                    continue
                new = {c} | {Y.faces[c][j][1] for j in range(n + 1) if not Y.is_degenerate(Y.faces[c][j])}
                if not new <= marked:
                    marked |= new
                    changed = True
                    Y = X.with_marked(marked)
    return X.with_marked(marked, (X.name + "^pre") if X.name else "")


def is_precomplicial(X: Complex) -> bool:
    return precomplicial_reflection(X).marked == X.marked


# --------------------------------------------------------------------- lifting


def rlp(i: Map, p: Map, budget: int = 100000) -> bool:
    """Exhaustive right lifting property of ``p`` against the mono ``i``."""
    if not i.is_mono():
        raise ValueError("rlp needs a monomorphism on the left")
    A, Bx, X, Y = i.source, i.target, p.source, p.target
    epis = simplicial_surjections
    steps = 0
    for u in enumerate_maps(A, X, epis, budget=budget):
        fixed_v = {i.images[a][1]: p(u.images[a]) for a in A.dims}
        for v in enumerate_maps(Bx, Y, epis, fixed=fixed_v, budget=budget):
            steps += 1
            if steps > budget:
                raise BudgetExceeded("too many lifting problems")
            fixed_l = {i.images[a][1]: u.images[a] for a in A.dims}
            lifts = enumerate_maps(
                Bx, X, epis, fixed=fixed_l, constraint=lambda b, pair, v=v: p(pair) == v.images[b], budget=budget
            )
            if next(iter(lifts), None) is None:
                return False
    return True


def terminal_map(X: Complex) -> Map:
    P = point()
    return Map(X, P, {c: (tuple([0] * (X.dims[c] + 1)), (0,)) for c in X.dims})


def complicial_set(n: int) -> Complex:
    """``Delta^n`` with every simplex marked: a small complicial set."""
    return simplex_complex(n, list(_subsets(n, 1)), f"tau Delta^{n}")
