"""Morphisms of the box category with connections.

A morphism ``[1]^m -> [1]^n`` is stored as its vertex table: for each
vertex of ``[1]^m`` (a bit tuple, enumerated in ``itertools.product``
order) the image vertex of ``[1]^n``. Equality is equality of tables,
so two different generator words for the same map compare equal.

Face maps additionally have a normal form, the list of their constant
target coordinates sorted by decreasing index::

    >>> face_normal_form(compose(face(3, 2, 1), face(2, 2, 0))).factors
    ((3, 0), (2, 1))
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

Vertex = tuple[int, ...]


class NotAFace(ValueError):
    pass


@lru_cache(maxsize=None)
def vertices(n: int) -> tuple[Vertex, ...]:
    return tuple(itertools.product((0, 1), repeat=n))


@lru_cache(maxsize=None)
def _vertex_index(n: int) -> dict[Vertex, int]:
    return {v: k for k, v in enumerate(vertices(n))}


@dataclass(frozen=True)
class BoxMorphism:
    source_dim: int
    target_dim: int
    vertex_table: tuple[Vertex, ...]
    generator_word: tuple[str, ...] = field(default=(), compare=False, hash=False)

    def __call__(self, v: Sequence[int]) -> Vertex:
        return self.vertex_table[_vertex_index(self.source_dim)[tuple(v)]]

    def __repr__(self) -> str:
        word = ".".join(self.generator_word) or "?"
        return f"BoxMorphism({self.source_dim}->{self.target_dim}: {word})"

    def coordinate(self, j: int) -> tuple[int, ...]:
        """Values of target coordinate ``j`` (1-based) over all source vertices."""
        return tuple(w[j - 1] for w in self.vertex_table)

    def constant_coordinates(self) -> dict[int, int]:
        out = {}
        for j in range(1, self.target_dim + 1):
            col = set(self.coordinate(j))
            if len(col) == 1:
                out[j] = col.pop()
        return out

    def is_identity(self) -> bool:
        return self.source_dim == self.target_dim and self.vertex_table == vertices(self.source_dim)

    def is_monotone(self) -> bool:
        verts = vertices(self.source_dim)
        for a in verts:
            for b in verts:
                if all(x <= y for x, y in zip(a, b)):
                    if not all(x <= y for x, y in zip(self(a), self(b))):
                        return False
        return True

    def is_surjective(self) -> bool:
        return set(self.vertex_table) == set(vertices(self.target_dim))


def _from_function(m: int, n: int, fn, word: tuple[str, ...]) -> BoxMorphism:
    return BoxMorphism(m, n, tuple(tuple(fn(v)) for v in vertices(m)), word)


@lru_cache(maxsize=None)
def identity(n: int) -> BoxMorphism:
    return BoxMorphism(n, n, vertices(n), ())


@lru_cache(maxsize=None)
def face(n: int, i: int, eps: int) -> BoxMorphism:
    """The face ``[1]^(n-1) -> [1]^n`` inserting ``eps`` at coordinate ``i``."""
    if not 1 <= i <= n or eps not in (0, 1):
        raise ValueError(f"no face ({i},{eps}) of [1]^{n}")
    return _from_function(n - 1, n, lambda v: v[: i - 1] + (eps,) + v[i - 1 :], (f"d{i},{eps}",))


@lru_cache(maxsize=None)
def degeneracy(n: int, i: int) -> BoxMorphism:
    """``[1]^n -> [1]^(n-1)`` deleting coordinate ``i``."""
    if not 1 <= i <= n:
        raise ValueError(f"no degeneracy {i} on [1]^{n}")
    return _from_function(n, n - 1, lambda v: v[: i - 1] + v[i:], (f"s{i}",))


@lru_cache(maxsize=None)
def connection(n: int, i: int, eps: int) -> BoxMorphism:
    """``[1]^n -> [1]^(n-1)`` merging coordinates ``i, i+1`` by max (eps=0) or min (eps=1)."""
    if not 1 <= i <= n - 1 or eps not in (0, 1):
        raise ValueError(f"no connection ({i},{eps}) on [1]^{n}")
    op = max if eps == 0 else min
    return _from_function(
        n, n - 1, lambda v: v[: i - 1] + (op(v[i - 1], v[i]),) + v[i + 1 :], (f"g{i},{eps}",)
    )


def compose(g: BoxMorphism, f: BoxMorphism) -> BoxMorphism:
    """``g o f``: apply ``f`` first."""
    if f.target_dim != g.source_dim:
        raise ValueError(f"cannot compose {g} after {f}: dimension mismatch")
    idx = _vertex_index(g.source_dim)
    table = tuple(g.vertex_table[idx[w]] for w in f.vertex_table)
    return BoxMorphism(f.source_dim, g.target_dim, table, g.generator_word + f.generator_word)


def compose_all(maps: Iterable[BoxMorphism], dim: int) -> BoxMorphism:
    """Function-order composite of ``maps`` (leftmost applied last)."""
    maps = list(maps)
    if not maps:
        return identity(dim)
    out = maps[-1]
    for g in reversed(maps[:-1]):
        out = compose(g, out)
    return out


def constant_map(n: int, vertex: Sequence[int]) -> BoxMorphism:
    return BoxMorphism(0, n, (tuple(vertex),), ("const",))


def projection(m: int, keep: Sequence[int]) -> BoxMorphism:
    """``[1]^m -> [1]^k`` keeping the listed coordinates, in order."""
    return _from_function(m, len(keep), lambda v: tuple(v[j - 1] for j in keep), ("proj",))


# ---------------------------------------------------------------- faces


@dataclass(frozen=True, order=True)
class FaceNormalForm:
    ambient: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        idx = [i for i, _ in self.factors]
        if any(a <= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"factors not strictly decreasing: {self.factors}")
        if idx and (idx[-1] < 1 or idx[0] > self.ambient):
            raise ValueError(f"factor index out of range in {self.factors}@{self.ambient}")

    @property
    def dim(self) -> int:
        return self.ambient - len(self.factors)

    @property
    def constants(self) -> dict[int, int]:
        return dict(self.factors)

    def free_coordinates(self) -> tuple[int, ...]:
        c = self.constants
        return tuple(j for j in range(1, self.ambient + 1) if j not in c)

    def to_morphism(self) -> BoxMorphism:
        maps = [face(self.ambient - k, i, e) for k, (i, e) in enumerate(self.factors)]
        return compose_all(maps, self.ambient)

    def __str__(self) -> str:
        body = ".".join(f"d{i},{e}" for i, e in self.factors)
        return f"{body or 'id'}@{self.ambient}"

    @classmethod
    def parse(cls, text: str) -> "FaceNormalForm":
        body, _, amb = text.strip().partition("@")
        if not amb:
            raise ValueError(f"missing '@ambient' in {text!r}")
        factors = []
        if body not in ("", "id"):
            for part in body.split("."):
                if not part.startswith("d"):
                    raise ValueError(f"bad factor {part!r}")
                i, e = part[1:].split(",")
                factors.append((int(i), int(e)))
        return cls(int(amb), tuple(factors))

    @classmethod
    def from_constants(cls, ambient: int, constants: dict[int, int]) -> "FaceNormalForm":
        return cls(ambient, tuple(sorted(constants.items(), reverse=True)))


@lru_cache(maxsize=None)
def face_morphism(nf: FaceNormalForm) -> BoxMorphism:
    return nf.to_morphism()


def face_normal_form(f: BoxMorphism) -> FaceNormalForm:
    n, m = f.target_dim, f.source_dim
    consts = f.constant_coordinates()
    free = [j for j in range(1, n + 1) if j not in consts]
    if len(free) != m:
        raise NotAFace(f"{f} has {len(free)} free coordinates, expected {m}")
    for k, j in enumerate(free, start=1):
        if f.coordinate(j) != tuple(v[k - 1] for v in vertices(m)):
            raise NotAFace(f"{f}: coordinate {j} does not copy source coordinate {k}")
    return FaceNormalForm.from_constants(n, consts)


def all_faces(n: int, dim: int | None = None) -> list[FaceNormalForm]:
    """All faces of ``[1]^n`` (of the given dimension), by increasing dimension."""
    out = []
    dims = range(n + 1) if dim is None else [dim]
    for d in dims:
        for pos in itertools.combinations(range(1, n + 1), n - d):
            for signs in itertools.product((0, 1), repeat=n - d):
                out.append(FaceNormalForm.from_constants(n, dict(zip(pos, signs))))
    return out


def face_compose(outer: FaceNormalForm, inner: FaceNormalForm) -> FaceNormalForm:
    """Normal form of ``outer o inner``, by rewriting the concatenated word.

    Uses ``d_{j,e'} d_{i,e} = d_{i+1,e} d_{j,e'}`` for ``j <= i`` until the
    indices decrease.
    """
    if inner.ambient != outer.dim:
        raise ValueError(f"cannot compose {outer} after {inner}")
    word = list(outer.factors) + list(inner.factors)
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            (j, e1), (i, e2) = word[k], word[k + 1]
            if j <= i:
                word[k], word[k + 1] = (i + 1, e2), (j, e1)
                changed = True
    return FaceNormalForm(outer.ambient, tuple(word))


def ez_factor(f: BoxMorphism) -> tuple[BoxMorphism, FaceNormalForm]:
    """Split ``f`` as ``face o epi``; the face records the constant coordinates."""
    consts = f.constant_coordinates()
    nf = FaceNormalForm.from_constants(f.target_dim, consts)
    keep = nf.free_coordinates()
    table = tuple(tuple(w[j - 1] for j in keep) for w in f.vertex_table)
    epi = BoxMorphism(f.source_dim, len(keep), table, f.generator_word)
    return epi, nf


# ---------------------------------------------------------------- involutions

INVOLUTIONS = ("co", "op", "co-op")


def involute(nf: FaceNormalForm, which: str) -> FaceNormalForm:
    n = nf.ambient
    if which == "co":
        consts = {n + 1 - i: e for i, e in nf.factors}
    elif which == "co-op":
        consts = {i: 1 - e for i, e in nf.factors}
    elif which == "op":
        consts = {n + 1 - i: 1 - e for i, e in nf.factors}
    else:
        raise ValueError(f"unknown involution {which!r}")
    return FaceNormalForm.from_constants(n, consts)


def _vertex_involution(v: Vertex, which: str) -> Vertex:
    if which in ("co", "op"):
        v = v[::-1]
    if which in ("co-op", "op"):
        v = tuple(1 - x for x in v)
    return v


def involute_morphism(f: BoxMorphism, which: str) -> BoxMorphism:
    """Conjugate ``f`` by the vertex involution of source and target."""
    if which not in INVOLUTIONS:
        raise ValueError(f"unknown involution {which!r}")
    idx = _vertex_index(f.source_dim)
    table = tuple(
        _vertex_involution(f.vertex_table[idx[_vertex_involution(v, which)]], which)
        for v in vertices(f.source_dim)
    )
    return BoxMorphism(f.source_dim, f.target_dim, table, (which,) + f.generator_word)


def generators(n: int) -> list[BoxMorphism]:
    """Generating maps out of ``[1]^n``."""
    out = [face(n + 1, i, e) for i in range(1, n + 2) for e in (0, 1)]
    if n >= 1:
        out += [degeneracy(n, i) for i in range(1, n + 1)]
    if n >= 2:
        out += [connection(n, i, e) for i in range(1, n) for e in (0, 1)]
    return out


def tensor(f: BoxMorphism, g: BoxMorphism) -> BoxMorphism:
    """``f x g`` on concatenated coordinates."""
    m = f.source_dim
    return _from_function(
        m + g.source_dim, f.target_dim + g.target_dim, lambda v: f(v[:m]) + g(v[m:]), f.generator_word + g.generator_word
    )


def face_split(nf: FaceNormalForm, m: int) -> tuple[FaceNormalForm, FaceNormalForm]:
    """Split a face of ``[1]^(m+n)`` into its first-``m`` and last-``n`` coordinate parts."""
    c = nf.constants
    left = {j: e for j, e in c.items() if j <= m}
    right = {j - m: e for j, e in c.items() if j > m}
    return FaceNormalForm.from_constants(m, left), FaceNormalForm.from_constants(nf.ambient - m, right)


def face_join(left: FaceNormalForm, right: FaceNormalForm) -> FaceNormalForm:
    m = left.ambient
    c = dict(left.constants)
    c.update({j + m: e for j, e in right.constants.items()})
    return FaceNormalForm.from_constants(m + right.ambient, c)


def epis(k: int, d: int) -> list[BoxMorphism]:
    """All surjective box morphisms ``[1]^k -> [1]^d`` generated by degeneracies and connections."""
    return list(_epis(k, d))


@lru_cache(maxsize=None)
def _epis(k: int, d: int) -> tuple[BoxMorphism, ...]:
    if d > k:
        return ()
    if d == k:
        return (identity(k),)
    seen: dict[tuple, BoxMorphism] = {}
    for g in [degeneracy(k, i) for i in range(1, k + 1)] + [
        connection(k, i, e) for i in range(1, k) for e in (0, 1)
    ]:
        for rest in _epis(k - 1, d):
            h = compose(rest, g)
            seen.setdefault(h.vertex_table, h)
    return tuple(seen[t] for t in sorted(seen))
