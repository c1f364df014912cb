"""Simplices of triangulated cubes as strings, and triangulation of cubical complexes.

An ``r``-simplex of the triangulated ``n``-cube is a chain of ``r+1``
vertices of ``[1]^n``. It is recorded as a string of length ``n`` over
``{1..r, +inf, -inf}``: entry ``i`` is the first step at which
coordinate ``i`` becomes 1, ``+inf`` if it never does and ``-inf`` if it
already is 1 at the start.

    >>> phi = parse_string("123+-")
    >>> str(string_face(phi, 0)), str(string_face(phi, 2))
    ('−12+−', '122+−')
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import box_ops as B
from .box_ops import BoxMorphism, FaceNormalForm
from .complexes import SIMPLICIAL, Complex, Map

PLUS = math.inf
MINUS = -math.inf

__all__ = [
    "PLUS",
    "MINUS",
    "SimplexString",
    "parse_string",
    "iota",
    "string_act",
    "string_face",
    "string_degeneracy",
    "ez_string",
    "complete_substrings",
    "is_marked_string",
    "cubical_face_action",
    "cube_act",
    "linear_simplex",
    "is_linear",
    "linearizations",
    "cube_strings",
    "triangulate",
    "triangulate_map",
    "triangulated_cube",
]


@dataclass(frozen=True, order=False)
class SimplexString:
    entries: tuple
    r: int

    def __post_init__(self):
        for x in self.entries:
            if not (x in (PLUS, MINUS) or (isinstance(x, int) and 1 <= x <= self.r)):
                raise ValueError(f"bad entry {x!r} for a {self.r}-simplex")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int):
        """1-based entry access."""
        return self.entries[i - 1]

    def __str__(self) -> str:
        wide = self.r >= 10
        parts = ["+" if x == PLUS else "−" if x == MINUS else str(x) for x in self.entries]
        return (" " if wide else "").join(parts) or "()"

    def __repr__(self) -> str:
        return f"SimplexString({self}@{self.n}, r={self.r})"

    def __lt__(self, other: "SimplexString") -> bool:
        return (self.r, self.n, _sortable(self)) < (other.r, other.n, _sortable(other))

    def is_degenerate(self) -> bool:
        return not set(range(1, self.r + 1)) <= set(self.entries)

    def is_interior(self) -> bool:
        return PLUS not in self.entries and MINUS not in self.entries

    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(1 if x <= p else 0 for x in self.entries) for p in range(self.r + 1))

    def values(self) -> tuple:
        return self.entries


def _sortable(s: SimplexString) -> tuple:
    return tuple(-1 if x == MINUS else s.r + 1 if x == PLUS else x for x in s.entries)


def parse_string(text: str, r: int | None = None) -> SimplexString:
    """Parse ``"12+−3@5"``; the ambient dimension after ``@`` is checked.

    Entries are single characters unless separated by spaces.
    ``-`` and ``−`` both mean ``-inf``.
    """
    body, _, amb = text.strip().partition("@")
    tokens = body.split() if " " in body.strip() else list(body.strip())
    out = []
    for t in tokens:
        if t == "+":
            out.append(PLUS)
        elif t in ("-", "−"):
            out.append(MINUS)
        elif t.isdigit():
            out.append(int(t))
        else:
            raise ValueError(f"bad string entry {t!r} in {text!r}")
    if amb and int(amb) != len(out):
        raise ValueError(f"string {body!r} has length {len(out)}, expected {amb}")
    finite = [x for x in out if x not in (PLUS, MINUS)]
    return SimplexString(tuple(out), max(finite, default=0) if r is None else r)


def from_vertices(chain: Sequence[Sequence[int]]) -> SimplexString:
    """String of a monotone chain of vertices ``v_0 <= ... <= v_r``."""
    r = len(chain) - 1
    n = len(chain[0])
    out = []
    for i in range(n):
        col = [v[i] for v in chain]
        if col[0] == 1:
            out.append(MINUS)
        elif col[-1] == 0:
            out.append(PLUS)
        else:
            out.append(col.index(1))
    return SimplexString(tuple(out), r)


def iota(n: int) -> SimplexString:
    return SimplexString(tuple(range(1, n + 1)), n)


def string_act(phi: SimplexString, alpha: Sequence[int]) -> SimplexString:
    """``phi . alpha`` for a simplicial operator ``alpha: [q] -> [r]`` given by its values."""
    alpha = tuple(alpha)
    q = len(alpha) - 1
    if alpha and alpha[-1] > phi.r:
        raise ValueError(f"operator {alpha} does not land in [{phi.r}]")
    out = []
    for x in phi.entries:
        if x > alpha[q]:
            out.append(PLUS)
        elif x <= alpha[0]:
            out.append(MINUS)
        else:
            out.append(next(p for p in range(1, q + 1) if alpha[p - 1] < x <= alpha[p]))
    return SimplexString(tuple(out), q)


def string_face(phi: SimplexString, k: int) -> SimplexString:
    if not 0 <= k <= phi.r:
        raise ValueError(f"face {k} out of range for an {phi.r}-simplex")
    return string_act(phi, tuple(j for j in range(phi.r + 1) if j != k))


def string_degeneracy(phi: SimplexString, k: int) -> SimplexString:
    if not 0 <= k <= phi.r:
        raise ValueError(f"degeneracy {k} out of range for an {phi.r}-simplex")
    return string_act(phi, tuple(j if j <= k else j - 1 for j in range(phi.r + 2)))


def ez_string(phi: SimplexString) -> tuple[tuple[int, ...], SimplexString]:
    """``phi = base . epi`` with ``base`` non-degenerate."""
    present = sorted({x for x in phi.entries if x not in (PLUS, MINUS)})
    rank = {x: k + 1 for k, x in enumerate(present)}
    base = SimplexString(tuple(rank.get(x, x) for x in phi.entries), len(present))
    epi = tuple(sum(1 for x in present if x <= p) for p in range(phi.r + 1))
    return epi, base


def complete_substrings(phi: SimplexString) -> list[tuple[int, ...]]:
    """Increasing position tuples ``rho`` (1-based) with ``phi[rho[p-1]] == p``."""
    out = []

    def go(p: int, start: int, acc: tuple):
        if p > phi.r:
            out.append(acc)
            return
        for pos in range(start, phi.n + 1):
            if phi.entries[pos - 1] == p:
                go(p + 1, pos + 1, acc + (pos,))

    go(1, 1, ())
    return out


def is_marked_string(phi: SimplexString) -> bool:
    """Marked in the minimally marked triangulated cube."""
    if phi.r == 0:
        return False
    return not complete_substrings(phi)


def cubical_face_action(i: int, eps: int, phi: SimplexString) -> SimplexString:
    if not 1 <= i <= phi.n + 1 or eps not in (0, 1):
        raise ValueError(f"cubical face ({i},{eps}) out of range for length {phi.n}")
    e = list(phi.entries)
    e.insert(i - 1, PLUS if eps == 0 else MINUS)
    return SimplexString(tuple(e), phi.r)


def cube_act(f: BoxMorphism, phi: SimplexString) -> SimplexString:
    """Image of ``phi`` under the triangulation of a cubical operator."""
    if f.source_dim != phi.n:
        raise ValueError(f"operator from [1]^{f.source_dim} applied to a string of length {phi.n}")
    if f.target_dim == 0:
        return SimplexString((), phi.r)
    return from_vertices([f(v) for v in phi.vertices()])


def linear_simplex(nf: FaceNormalForm) -> SimplexString:
    phi = iota(nf.dim)
    for i, e in reversed(nf.factors):
        phi = cubical_face_action(i, e, phi)
    return phi


def is_linear(phi: SimplexString) -> FaceNormalForm | None:
    subs = complete_substrings(phi)
    if len(subs) != 1:
        return None
    used = set(subs[0])
    consts = {}
    for pos, x in enumerate(phi.entries, start=1):
        if pos in used:
            continue
        if x == PLUS:
            consts[pos] = 0
        elif x == MINUS:
            consts[pos] = 1
        else:
            return None
    return FaceNormalForm.from_constants(phi.n, consts)


def linearizations(phi: SimplexString) -> list[SimplexString]:
    out = []
    for rho in complete_substrings(phi):
        used = set(rho)
        e = []
        for pos, x in enumerate(phi.entries, start=1):
            if pos in used:
                e.append(x)
            elif x == PLUS or x == MINUS:
                e.append(x)
            else:
                e.append(PLUS if pos < rho[x - 1] else MINUS)
        out.append(SimplexString(tuple(e), phi.r))
    return out


@lru_cache(maxsize=None)
def _surjections(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    return tuple(s for s in itertools.product(range(1, r + 1), repeat=n) if len(set(s)) == r)


@lru_cache(maxsize=None)
def cube_strings(n: int, r: int | None = None, interior: bool = False) -> tuple[SimplexString, ...]:
    """Non-degenerate strings of the triangulated ``n``-cube, optionally of one dimension."""
    dims = range(n + 1) if r is None else [r]
    out = []
    for rr in dims:
        if rr > n:
            continue
        for k in range(rr, n + 1):
            if interior and k != n:
                continue
            for pos in itertools.combinations(range(n), k):
                rest = [j for j in range(n) if j not in pos]
                for vals in _surjections(k, rr):
                    for signs in itertools.product((PLUS, MINUS), repeat=len(rest)):
                        e = [None] * n
                        for j, v in zip(pos, vals):
                            e[j] = v
                        for j, s in zip(rest, signs):
                            e[j] = s
                        out.append(SimplexString(tuple(e), rr))
    return tuple(sorted(out))


# --------------------------------------------------------------- triangulation


def _interior_strings(m: int) -> list[SimplexString]:
    return list(cube_strings(m, interior=True))


def _settle(X: Complex, c, psi: SimplexString):
    """Normalize ``psi`` (a simplex of the cube of ``c``) to ``(epi, (cell, interior string))``."""
    while True:
        consts = {i: (0 if x == PLUS else 1) for i, x in enumerate(psi.entries, start=1) if x in (PLUS, MINUS)}
        if consts:
            nf = FaceNormalForm.from_constants(psi.n, consts)
            inner = SimplexString(tuple(x for x in psi.entries if x not in (PLUS, MINUS)), psi.r)
            op, c = X.face_of(c, nf)
            psi = cube_act(op, inner)
            continue
        epi, base = ez_string(psi)
        if base.n != X.dims[c]:
            raise AssertionError("string length does not match cell dimension")
        return epi, (c, base)


def _raw_triangulation(X: Complex) -> Complex:
    dims, faces, marked = {}, {}, set()
    for c, m in X.dims.items():
        for phi in _interior_strings(m):
            cell = (c, phi)
            dims[cell] = phi.r
            if phi.r >= 1 and (not complete_substrings(phi) or (c in X.marked and phi == iota(m))):
                marked.add(cell)
            fs = {}
            if phi.r >= 1:
                for k in range(phi.r + 1):
                    fs[k] = _settle(X, c, string_face(phi, k))
            faces[cell] = fs
    return Complex(SIMPLICIAL, dims, faces, frozenset(marked), f"T({X.name})")


def _cube_shaped(X: Complex) -> int | None:
    ambient = {c.ambient for c in X.dims if isinstance(c, FaceNormalForm)}
    if len(ambient) == 1 and all(isinstance(c, FaceNormalForm) for c in X.dims):
        return ambient.pop()
    return None


def _string_name(cell) -> SimplexString:
    nf, phi = cell
    return cube_act(B.face_morphism(nf), phi)


def triangulate(X: Complex) -> Complex:
    """``T X`` for a finite marked cubical complex.

    Cells are ``(cube cell, interior string)`` pairs; when ``X`` is a
    subcomplex of a standard cube the cells are renamed to strings over
    the ambient cube.
    """
    raw = _raw_triangulation(X)
    if _cube_shaped(X) is not None:
        return raw.relabel(_string_name, f"T({X.name})")
    return raw


def triangulate_map(f: Map, source: Complex | None = None, target: Complex | None = None) -> Map:
    S = source or triangulate(f.source)
    T = target or triangulate(f.target)
    rename_s = _string_name if _cube_shaped(f.source) is not None else (lambda c: c)
    rename_t = _string_name if _cube_shaped(f.target) is not None else (lambda c: c)
    images = {}
    for c, m in f.source.dims.items():
        op, c2 = f.images[c]
        for phi in _interior_strings(m):
            epi, (d, psi) = _settle(f.target, c2, cube_act(op, phi))
            images[rename_s((c, phi))] = (epi, rename_t((d, psi)))
    return Map(S, T, images)


def triangulated_cube(n: int, marked: Callable[[FaceNormalForm], bool] | None = None, top: bool = False) -> Complex:
    """``T`` of the ``n``-cube with cube markings given by ``marked``; ``top`` marks ``iota_n``."""
    from .cubical import cube_complex

    pred = marked
    if top:
        pred = lambda c: c.dim == n or (marked is not None and marked(c))
    return triangulate(cube_complex(n, pred))


def strings_of(X: Complex, dim: int | None = None) -> list[SimplexString]:
    return [c for c in X.cells(dim)]


def marked_table(phis: Iterable[SimplexString], X: Complex) -> list[tuple[str, bool]]:
    return [(str(p), p in X.marked) for p in phis]
