"""Replays for marked cubical sets: pushout products, strongly comical cubes, Rezk."""

from __future__ import annotations

from . import box_ops as B
from .box_ops import FaceNormalForm
from .complexes import Complex, Map, check_pushout, inclusion, pushout
from .cubical import (
    boundary_inclusion,
    make_cube_object,
    marker,
    marking_extension,
    open_box_inclusion,
    pushout_product,
    rezk_map,
)
from .report import Ctx
from .simplicial import delta3eq, join, make_standard, precomplicial_reflection

# --------------------------------------------------------- pushout products


def _via_split(m: int, src: Complex, pp: Map) -> Map:
    """Faces of ``[1]^(m+n)`` into the domain ``P`` of a pushout product."""
    inv = {t: p for p, (_, t) in pp.images.items()}
    P = pp.source
    return Map(src, P, {c: P.unit(inv[B.face_split(c, m)]) for c in src.dims})


def _split_into(m: int, src: Complex, tgt: Complex) -> Map:
    return Map(src, tgt, {c: tgt.unit(B.face_split(c, m)) for c in src.dims})


def _comical_square(ctx: Ctx, label, m: int, pp: Map, A: Complex, Bp: Complex, f: Map) -> None:
    g = _via_split(m, A, pp)
    h = _split_into(m, Bp, pp.target)
    ctx.expect_empty(check_pushout(f, g, h, pp), label)


def run_model_structure(n: int, ctx: Ctx) -> None:
    """Pushout-product cases 1-3 as pushouts; 4, 6, 8 as isomorphisms; total dimension <= n."""
    for m in range(1, n + 1):
        for k in range(0, n - m + 1):
            d = m + k
            for i in range(1, m + 1):
                for e in (0, 1):
                    pp, P, BY = pushout_product(open_box_inclusion(m, i, e), boundary_inclusion(k))
                    ctx.guard(len(BY), "tensor product")
                    A, Bp = make_cube_object("obox", d, i, e), make_cube_object("comical", d, i, e)
                    ctx.check(pp.is_regular(), {"case": 1, "not regular": (m, k, i, e)})
                    _comical_square(ctx, ("case 1", m, k, i, e), m, pp, A, Bp, inclusion(A, Bp))
                    if k >= 1:
                        pp, P, BY = pushout_product(open_box_inclusion(m, i, e), marker(k))
                        ctx.check(pp.is_entire(), {"case": 2, "not entire": (m, k, i, e)})
                        _comical_square(
                            ctx,
                            ("case 2", m, k, i, e),
                            m,
                            pp,
                            make_cube_object("comical'", d, i, e),
                            make_cube_object("comical''", d, i, e),
                            marking_extension(d, i, e),
                        )
                    if m >= 2:
                        pp, P, BY = pushout_product(marking_extension(m, i, e), boundary_inclusion(k))
                        ctx.check(pp.is_entire(), {"case": 3, "not entire": (m, k, i, e)})
                        _comical_square(
                            ctx,
                            ("case 3", m, k, i, e),
                            m,
                            pp,
                            make_cube_object("comical'", d, i, e),
                            make_cube_object("comical''", d, i, e),
                            marking_extension(d, i, e),
                        )
                        if k >= 1:
                            pp, _, _ = pushout_product(marking_extension(m, i, e), marker(k))
                            ctx.check(pp.is_iso(), {"case": 4, "not iso": (m, k, i, e)})
    # case 6: Rezk maps, optionally framed by a boundary inclusion, against markers
    for x in (1, 2):
        for y in (1, 2):
            for a in (0, 1):
                R = rezk_map(x, y)
                if a:
                    R, _, _ = pushout_product(boundary_inclusion(a), R)
                    ctx.check(R.is_entire(), {"case": 6, "framed Rezk map not entire": (x, y, a)})
                for k in range(1, n - 2 - a + 1):
                    pp, _, _ = pushout_product(R, marker(k))
                    ctx.check(pp.is_iso(), {"case": 6, "not iso": (x, y, a, k)})
    # case 8: marker against marker
    for j in range(1, n):
        for k in range(1, n - j + 1):
            pp, _, _ = pushout_product(marker(j), marker(k))
            ctx.check(pp.is_iso(), {"case": 8, "not iso": (j, k)})


# --------------------------------------------------------- strongly comical cubes


def _operator_map(op, S: Complex, T: Complex) -> Map:
    return Map(S, T, {c: B.ez_factor(B.compose(op, B.face_morphism(c))) for c in S.dims})


def _face_map(nf: FaceNormalForm, S: Complex, T: Complex) -> Map:
    return Map(S, T, {c: T.unit(B.face_compose(nf, c)) for c in S.dims})


def run_strong_degens(n: int, ctx: Ctx) -> None:
    """Degeneracy and connection clauses, ambient dimension <= n."""
    S = lambda d, i: make_cube_object("strong", d, i)  # noqa: E731
    for d in range(1, n):
        for i in range(1, d + 1):
            for j in range(i, d + 2):
                ctx.expect_empty(_operator_map(B.degeneracy(d + 1, j), S(d + 1, i), S(d, i)).check(), ("sigma", d, i, j))
            for j in range(1, i):
                ctx.expect_empty(
                    _operator_map(B.connection(d + 1, j, 1), S(d + 1, i + 1), S(d, i)).check(), ("gamma low", d, i, j)
                )
            for j in range(i, d + 1):
                for e in (0, 1):
                    ctx.expect_empty(
                        _operator_map(B.connection(d + 1, j, e), S(d + 1, i), S(d, i)).check(), ("gamma high", d, i, j, e)
                    )
            ctx.expect_empty(
                _operator_map(B.connection(d + 1, i, 1), S(d + 1, i + 1), make_cube_object("cube", d)).check(),
                ("gamma i", d, i),
            )


def run_strong_iso(n: int, ctx: Ctx) -> None:
    for d in range(2, n + 1):
        for i in range(1, d):
            for k in range(i + 1, d + 1):
                S, T = make_cube_object("strong", d - 1, i), make_cube_object("strong", d, i)
                mp = _face_map(FaceNormalForm(d, ((k, 1),)), S, T)
                ctx.check(not mp.check() and mp.is_regular(), {"face": (d, i, k)})


def run_strong_anodyne(n: int, ctx: Ctx) -> None:
    """The Gamma-steps and the final open-box pushout, ambient dimension <= n."""
    G = lambda d, i, j: make_cube_object("Gamma", d, i, j)  # noqa: E731
    S = lambda d, i: make_cube_object("strong", d, i)  # noqa: E731
    base = inclusion(G(1, 1, 2), S(1, 1))
    box = open_box_inclusion(1, 1, 1)
    ctx.check(
        set(base.source.dims) == set(box.source.dims) and base.target.marked == box.target.marked,
        "dimension one is the (1,1) open box filling",
    )
    for d in range(2, n + 1):
        for i in range(1, d + 1):
            for j in range(i + 2, d + 2):
                nf = FaceNormalForm(d, ((j - 1, 1),))
                A, Bp, C, D = G(d - 1, i, j - 1), S(d - 1, i), G(d, i, j), G(d, i, j - 1)
                ctx.expect_empty(
                    check_pushout(inclusion(A, Bp), _face_map(nf, A, C), _face_map(nf, Bp, D), inclusion(C, D)),
                    ("Gamma step", d, i, j),
                )
            A, Bp = make_cube_object("obox", d, i, 1), make_cube_object("comical", d, i, 1)
            C, D = G(d, i, i + 1), S(d, i)
            sq = check_pushout(
                inclusion(A, Bp),
                Map(A, C, {c: C.unit(c) for c in A.dims}),
                Map(Bp, D, {c: D.unit(c) for c in Bp.dims}),
                inclusion(C, D),
            )
            ctx.expect_empty(sq, ("final open box", d, i))


# --------------------------------------------------------- Rezk


def rezk_pushout() -> tuple[Complex, Complex]:
    """``L' u_L Delta^3_eq`` and its precomplicial reflection."""
    L, Lp, eq = make_standard("L"), make_standard("L'"), delta3eq()
    f = Map(L, Lp, {c: Lp.unit(c) for c in L.dims})
    D, _, _ = pushout(f, inclusion(L, eq), "L' u Delta3eq")
    return D, precomplicial_reflection(D)


def run_rezk_pushout(n: int, ctx: Ctx) -> None:
    D, R = rezk_pushout()
    cells = {c for c in D.dims}
    simplex = {tuple(s) for s in make_standard("Delta", 3).dims}
    ctx.check(cells == simplex, {"underlying": sorted(map(str, cells))})
    unmarked = {c for c, d in D.dims.items() if d >= 1 and c not in D.marked}
    ctx.check(unmarked == {(0, 3)}, {"unmarked": sorted(map(str, unmarked))})
    rest = {c for c, d in R.dims.items() if d >= 1 and c not in R.marked}
    ctx.check(not rest, {"reflection leaves unmarked": sorted(map(str, rest))})
    # joined with a simplex on the left
    for k in range(0, max(0, min(n, 4) - 3) + 1):
        Dk = make_standard("Delta", k)
        L, Lp, eq = (join(Dk, X) for X in (make_standard("L"), make_standard("L'"), delta3eq()))
        f = Map(L, Lp, {c: Lp.unit(c) for c in L.dims})
        P, _, _ = pushout(f, inclusion(L, eq))
        sharp = join(Dk, make_standard("Delta", 3).trivialize(0))
        ctx.check(set(P.dims) == set(sharp.dims), {"join underlying": k})
        R = precomplicial_reflection(P)
        ctx.check(set(sharp.marked) <= set(R.marked), {"join reflection": k, "missing": sorted(map(str, set(sharp.marked) - set(R.marked)))[:4]})
