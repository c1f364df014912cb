"""Finite marked presheaves over the simplex or box category.

A complex stores only its non-degenerate cells. Every cell carries, for
each elementary face, an Eilenberg-Zilber pair ``(epi, cell)`` meaning
"the face is ``cell`` pulled back along ``epi``". General simplices are
such pairs too; :meth:`Complex.act` normalizes operator actions.

The two operator algebras (:data:`SIMPLICIAL`, :data:`CUBICAL`) supply
composition, EZ factorization and the elementary faces; everything else
here (maps, subcomplexes, pushouts, pushout checks) is shared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Mapping

from . import box_ops as B

Cell = Hashable
Op = Any
Pair = tuple[Op, Cell]


class BudgetExceeded(RuntimeError):
    pass


# ------------------------------------------------------------ operator algebras


class SimplicialAlgebra:
    """Monotone maps ``[q] -> [p]`` as value tuples."""

    name = "simplicial"

    def identity(self, d: int) -> tuple[int, ...]:
        return tuple(range(d + 1))

    def source(self, op) -> int:
        return len(op) - 1

    def compose(self, g, f):
        return tuple(g[v] for v in f)

    def is_identity(self, op) -> bool:
        return op == tuple(range(len(op)))

    def ez(self, op):
        """``op = mono o epi``; the mono is returned as its value tuple."""
        image = tuple(sorted(set(op)))
        pos = {v: k for k, v in enumerate(image)}
        return tuple(pos[v] for v in op), image

    def face_keys(self, d: int) -> list[int]:
        return list(range(d + 1)) if d >= 1 else []

    def elementary(self, d: int, k: int):
        return tuple(v for v in range(d + 1) if v != k)

    def split(self, mono, d: int):
        """Write a proper mono into ``[d]`` as ``elementary(d, k) o rest``."""
        missing = [v for v in range(d + 1) if v not in mono]
        k = missing[-1]
        return k, tuple(v - (v > k) for v in mono)

    def mono_is_identity(self, mono, d: int) -> bool:
        return len(mono) == d + 1

    def mono_dim(self, mono) -> int:
        return len(mono) - 1


class CubicalAlgebra:
    """Box morphisms; monos are :class:`FaceNormalForm` values."""

    name = "cubical"

    def identity(self, d: int):
        return B.identity(d)

    def source(self, op) -> int:
        return op.source_dim

    def compose(self, g, f):
        return B.compose(g, f)

    def is_identity(self, op) -> bool:
        return op.is_identity()

    def ez(self, op):
        epi, nf = B.ez_factor(op)
        return epi, nf

    def face_keys(self, d: int) -> list[tuple[int, int]]:
        return [(i, e) for i in range(1, d + 1) for e in (0, 1)]

    def elementary(self, d: int, key):
        return B.face(d, *key)

    def split(self, mono: B.FaceNormalForm, d: int):
        return mono.factors[0], B.face_morphism(B.FaceNormalForm(d - 1, mono.factors[1:]))

    def mono_is_identity(self, mono, d: int) -> bool:
        return not mono.factors

    def mono_dim(self, mono) -> int:
        return mono.dim


SIMPLICIAL = SimplicialAlgebra()
CUBICAL = CubicalAlgebra()


def _sort_key(c) -> tuple:
    return (str(type(c)), repr(c))


# ------------------------------------------------------------------ complexes


@dataclass
class Complex:
    algebra: Any
    dims: dict
    faces: dict
    marked: frozenset = frozenset()
    name: str = ""
    _face_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.marked = frozenset(c for c in self.marked if self.dims.get(c, 0) >= 1)

    # -- basic queries
    def cells(self, dim: int | None = None) -> list:
        cs = [c for c, d in self.dims.items() if dim is None or d == dim]
        return sorted(cs, key=lambda c: (self.dims[c], _sort_key(c)))

    @property
    def max_dim(self) -> int:
        return max(self.dims.values(), default=-1)

    def __len__(self) -> int:
        return len(self.dims)

    def __contains__(self, c) -> bool:
        return c in self.dims

    def count_by_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.dims.values():
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def unit(self, c) -> Pair:
        return (self.algebra.identity(self.dims[c]), c)

    # -- operator actions
    def face_of(self, c, mono) -> Pair:
        """Normalized restriction of cell ``c`` along a mono."""
        A = self.algebra
        d = self.dims[c]
        if A.mono_is_identity(mono, d):
            return (A.identity(d), c)
        key = (c, mono)
        hit = self._face_cache.get(key)
        if hit is not None:
            return hit
        k, rest = A.split(mono, d)
        op, c1 = self.faces[c][k]
        out = self.act(A.compose(op, rest), c1)
        self._face_cache[key] = out
        return out

    def act(self, op, c) -> Pair:
        """Normalize ``c . op``."""
        A = self.algebra
        epi, mono = A.ez(op)
        e2, c2 = self.face_of(c, mono)
        return (A.compose(e2, epi), c2)

    def act_on(self, op, pair: Pair) -> Pair:
        p, c = pair
        return self.act(self.algebra.compose(p, op), c)

    def face(self, c, key) -> Pair:
        return self.faces[c][key]

    def is_degenerate(self, pair: Pair) -> bool:
        return not self.algebra.is_identity(pair[0])

    def is_marked(self, pair: Pair) -> bool:
        if self.is_degenerate(pair):
            return True
        return pair[1] in self.marked

    def boundary_cells(self, c) -> set:
        return {self.faces[c][k][1] for k in self.algebra.face_keys(self.dims[c])}

    def closure(self, cells: Iterable) -> set:
        out, todo = set(), list(cells)
        while todo:
            c = todo.pop()
            if c in out:
                continue
            out.add(c)
            todo.extend(self.boundary_cells(c))
        return out

    # -- derived complexes
    def with_marked(self, marked: Iterable, name: str | None = None) -> "Complex":
        return Complex(self.algebra, self.dims, self.faces, frozenset(marked), name or self.name)

    def add_marked(self, extra: Iterable, name: str | None = None) -> "Complex":
        return self.with_marked(self.marked | set(extra), name)

    def subcomplex(self, cells: Iterable, name: str = "") -> "Complex":
        keep = self.closure(cells)
        return Complex(
            self.algebra,
            {c: self.dims[c] for c in keep},
            {c: self.faces[c] for c in keep},
            frozenset(c for c in self.marked if c in keep),
            name,
        )

    def relabel(self, fn: Callable, name: str | None = None) -> "Complex":
        return Complex(
            self.algebra,
            {fn(c): d for c, d in self.dims.items()},
            {fn(c): {k: (op, fn(t)) for k, (op, t) in fs.items()} for c, fs in self.faces.items()},
            frozenset(fn(c) for c in self.marked),
            name or self.name,
        )

    def trivialize(self, n: int) -> "Complex":
        """Mark every cell of dimension above ``n`` (vertices stay unmarked)."""
        return self.add_marked([c for c, d in self.dims.items() if d > n and d >= 1])

    def validate(self) -> list[str]:
        """Check closure, face identities and the marking conventions."""
        A = self.algebra
        errs = []
        for c, d in self.dims.items():
            keys = A.face_keys(d)
            if set(self.faces.get(c, {})) != set(keys):
                errs.append(f"{c!r}: face keys {sorted(self.faces.get(c, {}))} != {keys}")
                continue
            for k in keys:
                op, t = self.faces[c][k]
                if t not in self.dims:
                    errs.append(f"{c!r}: face {k} targets missing cell {t!r}")
                elif A.source(op) != d - 1:
                    errs.append(f"{c!r}: face {k} has wrong dimension")
            if d < 2 or errs:
                continue
            for k1 in keys:
                for k2 in A.face_keys(d - 1):
                    mono = A.compose(A.elementary(d, k1), A.elementary(d - 1, k2))
                    direct = self.act(mono, c)
                    stepwise = self.act_on(A.elementary(d - 1, k2), self.faces[c][k1])
                    if direct != stepwise:
                        errs.append(f"{c!r}: face identity fails at {k1},{k2}")
        for c in self.marked:
            if self.dims[c] < 1:
                errs.append(f"marked 0-cell {c!r}")
        return errs

    def to_json(self) -> dict:
        ids = {c: k for k, c in enumerate(self.cells())}
        cells = []
        for c in self.cells():
            faces = []
            for key in self.algebra.face_keys(self.dims[c]):
                op, t = self.faces[c][key]
                faces.append([_key_json(key), ids[t], _op_json(op)])
            cells.append(
                {"id": ids[c], "name": _name(c), "dim": self.dims[c], "faces": faces, "marked": c in self.marked}
            )
        return {"kind": self.algebra.name, "dims": self.max_dim, "cells": cells}

    @classmethod
    def from_json(cls, data: Mapping) -> "Complex":
        A = SIMPLICIAL if data.get("kind", "simplicial") == "simplicial" else CUBICAL
        names = {cell["id"]: cell.get("name", cell["id"]) for cell in data["cells"]}
        dims, faces, marked = {}, {}, set()
        for cell in data["cells"]:
            c = names[cell["id"]]
            dims[c] = cell["dim"]
            fs = {}
            for entry in cell["faces"]:
                key, target = entry[0], names[entry[1]]
                tdim = next(x["dim"] for x in data["cells"] if x["id"] == entry[1])
                op = _op_from_json(A, entry[2] if len(entry) > 2 else None, cell["dim"] - 1, tdim)
                fs[tuple(key) if isinstance(key, list) else key] = (op, target)
            faces[c] = fs
            if cell["marked"]:
                marked.add(c)
        return cls(A, dims, faces, frozenset(marked))

    def same_as(self, other: "Complex") -> bool:
        return (
            self.algebra is other.algebra
            and self.dims == other.dims
            and self.faces == other.faces
            and self.marked == other.marked
        )


def _name(c) -> str:
    return c if isinstance(c, str) else str(c) if not isinstance(c, tuple) else repr(c)


def _key_json(key):
    return list(key) if isinstance(key, tuple) else key


def _op_json(op):
    if isinstance(op, tuple):
        return list(op)
    return [list(v) for v in op.vertex_table]


def _op_from_json(A, raw, src: int, tgt: int):
    if raw is None:
        return A.identity(src)
    if A is SIMPLICIAL:
        return tuple(raw)
    return B.BoxMorphism(src, tgt, tuple(tuple(v) for v in raw))


# ---------------------------------------------------------------------- maps


@dataclass
class Map:
    source: Complex
    target: Complex
    images: dict  # source cell -> normalized pair in target

    def __call__(self, pair: Pair) -> Pair:
        op, c = pair
        return self.target.act_on(op, self.images[c])

    def on_cell(self, c) -> Pair:
        return self.images[c]

    def check(self) -> list[str]:
        """Naturality and preservation of markings."""
        A = self.source.algebra
        errs = []
        for c, d in self.source.dims.items():
            img = self.images.get(c)
            if img is None:
                errs.append(f"no image for {c!r}")
                continue
            for k in A.face_keys(d):
                lhs = self.target.act_on(A.elementary(d, k), img)
                rhs = self(self.source.faces[c][k])
                if lhs != rhs:
                    errs.append(f"{c!r}: face {k} not preserved ({lhs!r} vs {rhs!r})")
            if c in self.source.marked and not self.target.is_marked(img):
                errs.append(f"{c!r}: marking not preserved")
        return errs

    def is_mono(self) -> bool:
        seen = set()
        for c in self.source.dims:
            op, t = self.images[c]
            if not self.source.algebra.is_identity(op) or t in seen:
                return False
            seen.add(t)
        return True

    def image_cells(self) -> set:
        return {t for _, t in self.images.values()}

    def is_regular(self) -> bool:
        return self.is_mono() and all(
            (c in self.source.marked) == (self.images[c][1] in self.target.marked) for c in self.source.dims
        )

    def is_entire(self) -> bool:
        return self.is_mono() and self.image_cells() == set(self.target.dims)

    def is_iso(self) -> bool:
        return self.is_entire() and self.is_regular()

    def then(self, other: "Map") -> "Map":
        return Map(self.source, other.target, {c: other(p) for c, p in self.images.items()})


def inclusion(sub: Complex, ambient: Complex) -> Map:
    return Map(sub, ambient, {c: sub.unit(c) for c in sub.dims})


def identity_map(X: Complex) -> Map:
    return inclusion(X, X)


def check_pushout(f: Map, g: Map, h: Map, k: Map) -> list[str]:
    """Is ``A -f-> B -h-> D`` / ``A -g-> C -k-> D`` a pushout with ``f`` mono?

    Cell-wise test: the square commutes, ``k`` is injective onto
    non-degenerate cells, ``h`` maps the cells of ``B`` outside ``f(A)``
    bijectively onto the cells of ``D`` outside ``k(C)``, and the marked
    cells of ``D`` are exactly the images of marked cells.
    """
    errs = []
    for m in (f, g, h, k):
        errs += [f"map: {e}" for e in m.check()]
    if not f.is_mono():
        errs.append("f is not a monomorphism")
    for a in f.source.dims:
        if h(f.images[a]) != k(g.images[a]):
            errs.append(f"square does not commute at {a!r}")
    if not k.is_mono():
        errs.append("k is not injective on non-degenerate cells")
    fimg = f.image_cells()
    kimg = k.image_cells()
    rest = [b for b in f.target.dims if b not in fimg]
    seen = set()
    for b in rest:
        op, t = h.images[b]
        if not f.target.algebra.is_identity(op):
            errs.append(f"{b!r} maps to a degenerate cell")
        elif t in kimg:
            errs.append(f"{b!r} lands in the image of C")
        elif t in seen:
            errs.append(f"{b!r} collides")
        seen.add(t)
    missing = set(h.target.dims) - kimg - seen
    if missing:
        errs.append(f"cells of D not hit: {sorted(map(repr, missing))[:5]}")
    want = {t for c in f.target.marked for op, t in [h.images[c]] if f.target.algebra.is_identity(op)}
    want |= {t for c in g.target.marked for op, t in [k.images[c]] if g.target.algebra.is_identity(op)}
    if want != set(h.target.marked):
        errs.append(
            f"markings differ: extra {sorted(map(repr, set(h.target.marked) - want))[:5]}, "
            f"missing {sorted(map(repr, want - set(h.target.marked)))[:5]}"
        )
    return errs


def pushout(f: Map, g: Map, name: str = "") -> tuple[Complex, Map, Map]:
    """Pushout of ``B <-f- A -g-> C`` with ``f`` a monomorphism.

    Cells of ``C`` keep their names; new cells coming from ``B`` keep
    theirs too unless that would clash, in which case both sides are
    tagged.
    """
    if not f.is_mono():
        raise ValueError("pushout requires the first leg to be a monomorphism")
    Bc, C = f.target, g.target
    A = Bc.algebra
    preimage = {f.images[a][1]: a for a in f.source.dims}
    new = [b for b in Bc.cells() if b not in preimage]
    clash = any(b in C.dims for b in new)
    tag_b = (lambda b: ("B", b)) if clash else (lambda b: b)
    tag_c = (lambda c: ("C", c)) if clash else (lambda c: c)

    dims = {tag_c(c): d for c, d in C.dims.items()}
    faces = {tag_c(c): {key: (op, tag_c(t)) for key, (op, t) in fs.items()} for c, fs in C.faces.items()}
    for b in new:
        dims[tag_b(b)] = Bc.dims[b]
    D = Complex(A, dims, faces, frozenset(), name)

    def along(pair: Pair) -> Pair:
        op, b = pair
        if b in preimage:
            img = g.images[preimage[b]]
            return D.act_on(op, (img[0], tag_c(img[1])))
        return (op, tag_b(b))

    for b in sorted(new, key=lambda b: Bc.dims[b]):
        faces[tag_b(b)] = {key: along(p) for key, p in Bc.faces[b].items()}
    marked = {tag_c(c) for c in C.marked}
    for b in Bc.marked:
        op, t = along(Bc.unit(b))
        if A.is_identity(op):
            marked.add(t)
    D = Complex(A, dims, faces, frozenset(marked), name)
    h = Map(Bc, D, {b: along(Bc.unit(b)) for b in Bc.dims})
    k = Map(C, D, {c: D.unit(tag_c(c)) for c in C.dims})
    return D, h, k


def union_of_subcomplexes(X: Complex, parts: Iterable[Complex]) -> Complex:
    cells = set()
    marked = set()
    for P in parts:
        cells |= set(P.dims)
        marked |= set(P.marked)
    return X.subcomplex(cells).with_marked(marked & cells)


def find_isomorphism(X: Complex, Y: Complex, budget: int = 200000) -> Map | None:
    """Backtracking search for an isomorphism ``X -> Y``."""
    if X.algebra is not Y.algebra or X.count_by_dim() != Y.count_by_dim():
        return None
    A = X.algebra
    order = X.cells()
    assign: dict = {}
    used: set = set()
    steps = [0]

    def ok(c, t) -> bool:
        if X.dims[c] != Y.dims[t] or (c in X.marked) != (t in Y.marked):
            return False
        for key in A.face_keys(X.dims[c]):
            op, s = X.faces[c][key]
            want = Y.act_on(op, assign[s])
            if Y.faces[t][key] != want:
                return False
        return True

    def go(idx: int) -> bool:
        steps[0] += 1
        if steps[0] > budget:
            raise BudgetExceeded("isomorphism search")
        if idx == len(order):
            return True
        c = order[idx]
        for t in Y.cells(X.dims[c]):
            if t in used or not ok(c, t):
                continue
            assign[c] = Y.unit(t)
            used.add(t)
            if go(idx + 1):
                return True
            del assign[c]
            used.discard(t)
        return False

    if go(0):
        return Map(X, Y, dict(assign))
    return None


def all_simplices(X: Complex, dim: int, epis: Callable[[int, int], Iterable]) -> list[Pair]:
    """Every ``dim``-dimensional element of ``X``, degenerate ones included."""
    out = []
    for c in X.cells():
        if X.dims[c] <= dim:
            for e in epis(dim, X.dims[c]):
                out.append((e, c))
    return out


def enumerate_maps(
    S: Complex,
    T: Complex,
    epis: Callable[[int, int], Iterable],
    fixed: Mapping | None = None,
    constraint: Callable[[Any, Pair], bool] | None = None,
    budget: int = 100000,
) -> Iterable[Map]:
    """All maps ``S -> T`` extending ``fixed``; deterministic order."""
    A = S.algebra
    fixed = dict(fixed or {})
    order = [c for c in S.cells() if c not in fixed]
    assign = dict(fixed)
    steps = [0]
    candidates: dict[int, list] = {}

    def cands(d):
        if d not in candidates:
            candidates[d] = all_simplices(T, d, epis)
        return candidates[d]

    def ok(c, pair) -> bool:
        if c in S.marked and not T.is_marked(pair):
            return False
        if constraint is not None and not constraint(c, pair):
            return False
        for key in A.face_keys(S.dims[c]):
            op, s = S.faces[c][key]
            if T.act_on(A.elementary(S.dims[c], key), pair) != T.act_on(op, assign[s]):
                return False
        return True

    def go(idx):
        steps[0] += 1
        if steps[0] > budget:
            raise BudgetExceeded(f"map enumeration beyond {budget} steps")
        if idx == len(order):
            yield Map(S, T, dict(assign))
            return
        c = order[idx]
        for pair in cands(S.dims[c]):
            if ok(c, pair):
                assign[c] = pair
                yield from go(idx + 1)
                del assign[c]

    yield from go(0)


def simplicial_surjections(k: int, d: int) -> list[tuple[int, ...]]:
    """Monotone surjections ``[k] -> [d]``."""
    out = []
    for cuts in itertools.combinations(range(1, k + 1), d):
        vals, v = [], 0
        for x in range(k + 1):
            if x in cuts:
                v += 1
            vals.append(v)
        out.append(tuple(vals))
    return out
