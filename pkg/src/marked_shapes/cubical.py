"""Finite marked cubical sets.

Subcomplexes of a standard cube name their cells by face normal forms;
the Rezk pastings ``L_{x,y}`` use ``("X", face)`` / ``("Y", face)``.

    >>> from marked_shapes.box_ops import FaceNormalForm
    >>> is_marked_in_comical_cube(FaceNormalForm(3, ((3, 0),)), 2, 0)
    False
"""

from __future__ import annotations

from typing import Callable, Iterable

from . import box_ops as B
from .box_ops import FaceNormalForm
from .complexes import CUBICAL, Complex, Map, inclusion, pushout

__all__ = [
    "cube_complex",
    "make_cube_object",
    "is_marked_in_comical_cube",
    "is_marked_in_strong_comical_cube",
    "lax_gray_tensor",
    "tensor_map",
    "pushout_product",
    "cubical_involution",
    "rename_faces",
]


def _face_data(nf: FaceNormalForm) -> dict:
    d = nf.dim
    return {
        (k, e): (B.identity(d - 1), B.face_compose(nf, FaceNormalForm(d, ((k, e),))))
        for k in range(1, d + 1)
        for e in (0, 1)
    }


def cube_complex(n: int, marked: Callable[[FaceNormalForm], bool] | None = None, name: str = "") -> Complex:
    """``[1]^n`` with cells named by face normal forms."""
    cells = B.all_faces(n)
    dims = {c: c.dim for c in cells}
    faces = {c: _face_data(c) for c in cells}
    mk = frozenset(c for c in cells if c.dim >= 1 and marked is not None and marked(c))
    return Complex(CUBICAL, dims, faces, mk, name or f"cube {n}")


def is_marked_in_comical_cube(nf: FaceNormalForm, i: int, eps: int) -> bool:
    n = nf.ambient
    if not 1 <= i <= n:
        raise ValueError(f"comical index {i} out of range for dimension {n}")
    if nf.dim == 0:
        return False
    c = nf.constants
    if i in c:
        return False
    for j in range(i + 1, n + 1):
        if c.get(j) == eps and all(c.get(k) == 1 - eps for k in range(i + 1, j)):
            return False
    for j in range(1, i):
        if c.get(j) == eps and all(c.get(k) == 1 - eps for k in range(j + 1, i)):
            return False
    return True


def is_marked_in_strong_comical_cube(nf: FaceNormalForm, i: int) -> bool:
    """Markings of the strongly ``(i,1)``-comical cube."""
    if nf.dim == 0:
        return False
    c = nf.constants
    if i in c:
        return False
    return not (i > 1 and c.get(i - 1) == 1)


def _open_box_cells(n: int, i: int, eps: int) -> list[FaceNormalForm]:
    return [FaceNormalForm(n, ((k, e),)) for k in range(1, n + 1) for e in (0, 1) if (k, e) != (i, eps)]


def _check(ok: bool, kind: str, params) -> None:
    if not ok:
        raise ValueError(f"parameters {params} out of range for {kind}")


def make_cube_object(kind: str, *params: int) -> Complex:
    """Named standard marked cubical sets.

    ``cube n``, ``mcube n``, ``bdcube n``, ``obox n i e``, ``comical n i e``,
    ``comical' n i e``, ``comical'' n i e`` (the trivialized target of the
    marking extension), ``strong n i``, ``Gamma n i j``, ``Lxy x y``,
    ``L'xy x y``.
    """
    if kind in ("cube", "mcube", "bdcube"):
        (n,) = params
        _check(n >= 0 and (kind != "mcube" or n >= 1), kind, params)
        X = cube_complex(n, (lambda c: c.dim == n) if kind == "mcube" else None, f"{kind} {n}")
        if kind == "bdcube":
            X = X.subcomplex([c for c in X.dims if c.dim < n], f"bdcube {n}")
        return X
    if kind in ("comical", "obox", "comical'", "comical''"):
        n, i, e = params
        _check(n >= 1 and 1 <= i <= n and e in (0, 1), kind, params)
        X = cube_complex(n, lambda c: is_marked_in_comical_cube(c, i, e), f"{kind} {n} {i} {e}")
        if kind == "obox":
            return X.subcomplex(_open_box_cells(n, i, e), f"obox {n} {i} {e}")
        if kind == "comical'":
            return X.add_marked(_open_box_cells(n, i, e) if n >= 2 else [])
        if kind == "comical''":
            return X.trivialize(n - 2)
        return X
    if kind in ("strong", "Gamma"):
        if kind == "strong":
            n, i = params
            _check(n >= 1 and 1 <= i <= n, kind, params)
        else:
            n, i, j = params
            _check(n >= 1 and 1 <= i <= n and i + 1 <= j <= n + 1, kind, params)
        X = cube_complex(n, lambda c: is_marked_in_strong_comical_cube(c, i), f"strong {n} {i}")
        if kind == "Gamma":
            keep = [FaceNormalForm(n, ((k, 0),)) for k in range(1, n + 1)]
            keep += [FaceNormalForm(n, ((k, 1),)) for k in range(1, n + 1) if k <= i - 1 or j <= k <= n]
            return X.subcomplex(keep, f"Gamma {n} {i} {j}")
        return X
    if kind in ("Lxy", "L'xy"):
        x, y = params
        _check(x in (1, 2) and y in (1, 2), kind, params)
        L = rezk_pasting(x, y)
        if kind == "L'xy":
            L = L.trivialize(0)
            L.name = f"L'{x}{y}"
        return L
    raise ValueError(f"unknown cubical object {kind!r}")


def face_inclusion_map(nf: FaceNormalForm, src: Complex, tgt: Complex) -> Map:
    """The map of face-named cube complexes induced by post-composing with ``nf``."""
    return Map(src, tgt, {c: tgt.unit(B.face_compose(nf, c)) for c in src.dims})


def rezk_pasting(x: int, y: int) -> Complex:
    """``L_{x,y}``: squares ``X`` and ``Y`` glued along ``X d_{x,1} = Y d_{y,0}``."""
    edge = cube_complex(1)
    sq = cube_complex(2)
    f = face_inclusion_map(FaceNormalForm(2, ((x, 1),)), edge, sq)
    g = face_inclusion_map(FaceNormalForm(2, ((y, 0),)), edge, sq)
    D, h, k = pushout(f, g)
    names = {}
    for c in sq.dims:
        names[h.images[c][1]] = ("X", c)
    for c in sq.dims:
        names[k.images[c][1]] = ("Y", c)
    L = D.relabel(lambda c: names[c])
    top = FaceNormalForm(2)
    marked = [("X", top), ("Y", top)]
    marked += [names[h.images[FaceNormalForm(2, ((x, 0),))][1]], names[h.images[FaceNormalForm(2, ((3 - x, 1),))][1]]]
    marked += [names[k.images[FaceNormalForm(2, ((y, 1),))][1]], names[k.images[FaceNormalForm(2, ((3 - y, 0),))][1]]]
    return L.with_marked(marked, f"L{x}{y}")


# ----------------------------------------------------------------- tensors


def lax_gray_tensor(X: Complex, Y: Complex) -> Complex:
    """Geometric product; ``x (x) y`` is marked iff ``x`` or ``y`` is."""
    dims, faces = {}, {}
    for x, dx in X.dims.items():
        for y, dy in Y.dims.items():
            c = (x, y)
            dims[c] = dx + dy
            fs = {}
            for i in range(1, dx + dy + 1):
                for e in (0, 1):
                    if i <= dx:
                        op, x2 = X.faces[x][(i, e)]
                        fs[(i, e)] = (B.tensor(op, B.identity(dy)), (x2, y))
                    else:
                        op, y2 = Y.faces[y][(i - dx, e)]
                        fs[(i, e)] = (B.tensor(B.identity(dx), op), (x, y2))
            faces[c] = fs
    marked = {(x, y) for (x, y) in dims if x in X.marked or y in Y.marked}
    return Complex(CUBICAL, dims, faces, frozenset(marked), f"({X.name} (x) {Y.name})")


def tensor_map(f: Map, g: Map, src: Complex | None = None, tgt: Complex | None = None) -> Map:
    src = src or lax_gray_tensor(f.source, g.source)
    tgt = tgt or lax_gray_tensor(f.target, g.target)
    images = {}
    for (a, x) in src.dims:
        e1, b = f.images[a]
        e2, y = g.images[x]
        images[(a, x)] = (B.tensor(e1, e2), (b, y))
    return Map(src, tgt, images)


def pushout_product(f: Map, g: Map) -> tuple[Map, Complex, Complex]:
    """Leibniz tensor ``(A (x) Y) u_(A (x) X) (B (x) X) -> B (x) Y``."""
    if not (f.is_mono() and g.is_mono()):
        raise ValueError("pushout product needs monomorphisms")
    AX = lax_gray_tensor(f.source, g.source)
    AY = lax_gray_tensor(f.source, g.target)
    BX = lax_gray_tensor(f.target, g.source)
    BY = lax_gray_tensor(f.target, g.target)
    idA = inclusion(f.source, f.source)
    idX = inclusion(g.source, g.source)
    left = tensor_map(idA, g, AX, AY)
    right = tensor_map(f, idX, AX, BX)
    P, h, k = pushout(left, right)
    to_AY = tensor_map(f, inclusion(g.target, g.target), AY, BY)
    to_BX = tensor_map(inclusion(f.target, f.target), g, BX, BY)
    images = {}
    from_k = {k.images[c][1]: c for c in BX.dims}
    from_h = {h.images[c][1]: c for c in AY.dims if h.images[c][1] not in from_k}
    for p in P.dims:
        images[p] = to_BX.images[from_k[p]] if p in from_k else to_AY.images[from_h[p]]
    return Map(P, BY, images), P, BY


# ---------------------------------------------------------------- involutions


def _key_involution(key, n: int, which: str):
    i, e = key
    if which in ("co", "op"):
        i = n + 1 - i
    if which in ("co-op", "op"):
        e = 1 - e
    return (i, e)


def cubical_involution(X: Complex, which: str) -> Complex:
    """``X^co``, ``X^co-op`` or ``X^op``; cells keep their names."""
    faces = {}
    for c, d in X.dims.items():
        fs = {}
        for key in CUBICAL.face_keys(d):
            op, t = X.faces[c][_key_involution(key, d, which)]
            fs[key] = (B.involute_morphism(op, which), t)
        faces[c] = fs
    return Complex(CUBICAL, dict(X.dims), faces, X.marked, f"{X.name}^{which}")


def rename_faces(X: Complex, which: str) -> Complex:
    """Rename face-named cells ``d`` to ``involute(d, which)``."""

    def fn(c):
        if isinstance(c, FaceNormalForm):
            return B.involute(c, which)
        if isinstance(c, tuple) and len(c) == 2 and isinstance(c[1], FaceNormalForm):
            return (c[0], B.involute(c[1], which))
        return c

    return X.relabel(fn)


def marking_extension(n: int, i: int, e: int) -> Map:
    src = make_cube_object("comical'", n, i, e)
    tgt = make_cube_object("comical''", n, i, e)
    return Map(src, tgt, {c: src.unit(c) for c in src.dims})


def open_box_inclusion(n: int, i: int, e: int) -> Map:
    return inclusion(make_cube_object("obox", n, i, e), make_cube_object("comical", n, i, e))


def boundary_inclusion(n: int) -> Map:
    return inclusion(make_cube_object("bdcube", n), make_cube_object("cube", n))


def marker(n: int) -> Map:
    src = make_cube_object("cube", n)
    return Map(src, make_cube_object("mcube", n), {c: src.unit(c) for c in src.dims})


def rezk_map(x: int, y: int) -> Map:
    src = make_cube_object("Lxy", x, y)
    return Map(src, make_cube_object("L'xy", x, y), {c: src.unit(c) for c in src.dims})


def identity_on(X: Complex) -> Map:
    return inclusion(X, X)


def point() -> Complex:
    return cube_complex(0, name="point")


def split_faces_map(m: int, n: int, src: Complex, tgt: Complex) -> Map:
    """Identify faces of ``[1]^(m+n)`` with pairs of faces in ``[1]^m (x) [1]^n``."""
    return Map(src, tgt, {c: tgt.unit(B.face_split(c, m)) for c in src.dims})


def cells_named(X: Complex, names: Iterable) -> list:
    return [c for c in names if c in X.dims]
