"""Replays for cones, the cubification functor Q, rho/zeta and the homotopy H."""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache

from . import box_ops as B
from .box_ops import FaceNormalForm
from .complexes import Complex, Map, check_pushout, find_isomorphism, inclusion
from .cones import (
    ThetaChecker,
    base_theta,
    cone_complex,
    cone_face_degenerate,
    cone_quotient_map,
    cone_settle,
    cone_subobjects,
    counit_subcomplex,
    homotopy_from_vertices,
    homotopy_string,
    integral,
    is_cone,
    q_functor,
    q_map,
    q_object,
    q_operator,
    rho,
    rho_map,
    same_in_tq,
    strong_cone,
    zeta,
)
from .cubical import cube_complex, make_cube_object, marker, marking_extension, open_box_inclusion
from .report import Ctx
from .simplicial import horn_inclusion, make_standard, simplex_complex, trivialize
from .simplicial import marking_extension as simplicial_marking_extension
from .triangulation import MINUS, PLUS, SimplexString, complete_substrings, ez_string, triangulate, triangulate_map

# ------------------------------------------------------------ cone calculus


def run_cone_desc_faces(n: int, ctx: Ctx) -> None:
    """The degeneracy rule for faces against canonicalization, ``m+n <= n``."""
    for total in range(n + 1):
        for m in range(total + 1):
            k = total - m
            for nf in B.all_faces(total):
                epi, _ = cone_settle(B.face_morphism(nf), m, k)
                ctx.check(cone_face_degenerate(nf, m, k) == (not epi.is_identity()), {"m": m, "n": k, "face": str(nf)})


def run_qcone(n: int, ctx: Ctx) -> None:
    for k in range(1, n + 1):
        A, C = cone_complex(0, k), cone_complex(1, k - 1)
        ctx.check(A.same_as(C), {"same cells": k})
        ctx.check(find_isomorphism(A, C) is not None, {"isomorphism": k})


def _face_image_map(m: int, n: int, i: int, e: int, src: Complex, tgt: Complex) -> Map:
    d = B.face(m + n, i, e)
    return Map(src, tgt, {c: cone_settle(B.compose(d, B.face_morphism(c)), m, n) for c in src.dims})


def run_face_iso(n: int, ctx: Ctx) -> None:
    """Codimension-one faces of ``C^{m,n}`` are cones again, ``m+n <= n``."""
    literal_point = 0
    for total in range(1, n + 1):
        for m in range(total + 1):
            k = total - m
            C = cone_complex(m, k)
            for i in range(1, total + 1):
                for e in (0, 1):
                    if i <= k and e == 0:
                        # the cone-point collapse: the literal sign gives a vertex
                        _, cell = cone_settle(B.face(total, i, 0), m, k)
                        literal_point += cell.dim == 0
                        continue
                    src = cone_complex(m, k - 1) if i <= k else cone_complex(m - 1, k)
                    mp = _face_image_map(m, k, i, e, src, C)
                    gen = cone_settle(B.face(total, i, e), m, k)[1]
                    span = C.closure([gen])
                    ok = not mp.check() and mp.is_mono() and mp.image_cells() == span
                    ctx.check(ok, {"m": m, "n": k, "face": (i, e)})
    ctx.note(f"faces d_(i,0) with i <= n collapse to the cone point in {literal_point} cases; d_(i,1) carries C^(m,n-1)")


def run_cone_face_deg(n: int, ctx: Ctx) -> None:
    """Faces, degeneracies and connections of cones; universal cone plus cones of test complexes."""
    tests = []
    for total in range(n + 1):
        for m in range(total + 1):
            k = total - m
            C = cone_complex(m, k)
            tests.append((m, k, C, [C.unit(FaceNormalForm(total))]))
    for total in range(1, n + 1):
        X = make_cube_object("strong", total, max(1, total - 1))
        for m in range(total + 1):
            k = total - m
            cones = [p for c in X.cells() for p in _pairs(X, c, total) if is_cone(X, p, m, k)]
            tests.append((m, k, X, cones))
    for m, k, X, cones in tests:
        d = m + k
        for x in cones:
            act = lambda op, x=x, X=X: X.act_on(op, x)  # noqa: E731
            for i in range(1, k + 1):
                ctx.check(is_cone(X, act(B.face(d, i, 1)), m, k - 1), {"clause": 1, "m": m, "n": k, "i": i})
            for i in range(k + 1, d + 1):
                ctx.check(is_cone(X, act(B.face(d, i, 1)), m - 1, k), {"clause": 2, "m": m, "n": k, "i": i})
            if m >= 1:
                for i in range(1, d + 1):
                    ctx.check(is_cone(X, act(B.face(d, i, 0)), m - 1, k), {"clause": 3, "m": m, "n": k, "i": i})
            for i in range(k + 1, d + 2):
                ctx.check(is_cone(X, act(B.degeneracy(d + 1, i)), m + 1, k), {"clause": 4, "m": m, "n": k, "i": i})
            for i in range(1, k + 1):
                ctx.check(is_cone(X, act(B.connection(d + 1, i, 1)), m, k + 1), {"clause": 5, "m": m, "n": k, "i": i})
            for i in range(k + 1, d + 1):
                for e in (0, 1):
                    ctx.check(
                        is_cone(X, act(B.connection(d + 1, i, e)), m + 1, k), {"clause": 6, "m": m, "n": k, "i": i, "e": e}
                    )
            for j in range(1, k + 1):
                ctx.check(is_cone(X, x, m + j, k - j), {"shift": j, "m": m, "n": k})


def _pairs(X: Complex, c, total: int) -> list:
    return [(e, c) for e in B.epis(total, X.dims[c])]


def _connections_ok(b: tuple, eps: tuple) -> bool:
    return all(b[j] < b[j + 1] or (b[j] == b[j + 1] and eps[j] != eps[j + 1]) for j in range(len(b) - 1))


@lru_cache(maxsize=None)
def _standard_forms(k: int, d: int) -> dict:
    """Words ``z g_b1,e1 .. g_bq,eq s_a1 .. s_ap`` for epis ``[1]^k -> [1]^d``.

    Connections act first; their indices never decrease and a repeated
    index switches sign. Degeneracy indices strictly increase. Every epi
    has exactly one such word (checked exhaustively for ``k <= 4``).
    """
    out = defaultdict(list)
    L = k - d
    for q in range(L + 1):
        p = L - q
        for b in itertools.product(*[range(1, d + j) for j in range(1, q + 1)]):
            for eps in itertools.product((0, 1), repeat=q):
                if not _connections_ok(b, eps):
                    continue
                for a in itertools.combinations(range(1, k + 1), p):
                    if any(a[j] > d + q + j + 1 for j in range(p)):
                        continue
                    f = B.identity(d)
                    for j in range(q):
                        f = B.compose(f, B.connection(d + j + 1, b[j], eps[j]))
                    for j in range(p):
                        f = B.compose(f, B.degeneracy(d + q + j + 1, a[j]))
                    out[f.vertex_table].append((a, tuple(zip(b, eps))))
    return dict(out)


def run_sa1(n: int, ctx: Ctx) -> None:
    """Last operator in the standard form of a degenerate ``(m,n)``-cone, ``m >= 1``, ``m+n <= n``."""
    for total in range(1, n + 1):
        for d in range(total):
            forms = _standard_forms(total, d)
            for e in B.epis(total, d):
                ctx.check(len(forms.get(e.vertex_table, ())) == 1, {"epi": e.vertex_table, "forms": forms.get(e.vertex_table)})
        for m in range(1, total + 1):
            k = total - m
            spaces = [cube_complex(total), cone_complex(m, k), cone_complex(1, total - 1), make_cube_object("strong", total, 1)]
            for X in spaces:
                for c in X.cells():
                    dc = X.dims[c]
                    if dc >= total:
                        continue
                    for e in B.epis(total, dc):
                        if not is_cone(X, (e, c), m, k):
                            continue
                        (a, bs), = _standard_forms(total, dc)[e.vertex_table]
                        if a:
                            ctx.check(a[-1] >= k + 1, {"clause": "degeneracy", "m": m, "n": k, "a": a, "in": X.name})
                        elif bs[-1][1] == 0:
                            ctx.check(bs[-1][0] >= k + 1, {"clause": "connection", "m": m, "n": k, "b": bs, "in": X.name})


def run_b_c_anodyne(n: int, ctx: Ctx) -> None:
    """``Gamma -> strong`` pushes out to ``B-bar -> C-bar`` along the cone quotient, ``m >= 1``, ``m+n <= n``."""
    for m in range(1, n + 1):
        for k in range(0, n - m + 1):
            d = m + k
            G, S = make_cube_object("Gamma", d, k + 1, k + 2), make_cube_object("strong", d, k + 1)
            _, Cb, Bb = cone_subobjects(m, k)
            g = Map(G, Bb, {c: cone_settle(B.face_morphism(c), m, k) for c in G.dims})
            h = Map(S, Cb, {c: cone_settle(B.face_morphism(c), m, k) for c in S.dims})
            ctx.expect_empty(check_pushout(inclusion(G, S), g, h, inclusion(Bb, Cb)), ("b-c", m, k))


def run_theta(n: int, ctx: Ctx) -> None:
    """The forced order-one family satisfies the coherence identities on test complexes."""
    for k in range(0, n + 1):
        spaces = [
            cube_complex(k + 2),
            make_cube_object("strong", k + 2, k + 1),
            cone_complex(1, k + 1),
            strong_cone(1, k + 1),
            cone_complex(2, k),
        ]
        for X in spaces:
            th = ThetaChecker(X, lambda m, nn, x, X=X: base_theta(m, nn, x, X))
            checked, skipped, fails = th.check(1, k)
            ctx.check(not fails, {"space": X.name, "n": k, "failures": fails[:3]})
            ctx.cases += checked - 1


# ------------------------------------------------------------------ Q


def _top(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def _into(src: Complex, D: Complex, n: int, tgt: Complex | None = None) -> Map:
    """Faces of ``[1]^n`` to cubes of ``Q(Delta^n)``-shaped ``D``, optionally viewed in ``tgt``."""
    return Map(src, tgt or D, {c: D.act(B.face_morphism(c), _top(n)) for c in src.dims})


def _boundary(n: int) -> Complex:
    D = make_standard("Delta", n)
    return D.subcomplex([c for c, d in D.dims.items() if d < n], f"bdDelta {n}")


def run_q_mono(n: int, ctx: Ctx) -> None:
    """Q keeps boundary, face and marker maps monic."""
    for k in range(0, n + 1):
        D = make_standard("Delta", k)
        m = q_map(inclusion(_boundary(k), D))
        ctx.check(not m.check() and m.is_mono(), {"boundary": k})
        if k >= 1:
            mk = q_map(Map(D, make_standard("mDelta", k), {c: D.unit(c) for c in D.dims}))
            ctx.check(not mk.check() and mk.is_mono() and mk.is_entire(), {"marker": k})
            QD, QM = q_functor(D), q_functor(make_standard("mDelta", k))
            sq = check_pushout(marker(k), _into(cube_complex(k), QD, k), _into(make_cube_object("mcube", k), QM, k), mk)
            ctx.expect_empty(sq, ("marker square", k))
        for j in range(1, k + 1):
            for r in itertools.combinations(range(k + 1), j):
                face = simplex_complex(k).subcomplex([r])
                m = q_map(inclusion(face, D))
                ctx.check(not m.check() and m.is_mono(), {"face": r})


def _horn_square(n: int, k: int, box: Map, src: Complex, tgt: Complex, right: Map, D: Complex) -> list[str]:
    g = _into(box.source, D, n, src)
    h = _into(box.target, right.target, n)
    return check_pushout(box, g, h, right)


def _horn_box(n: int, k: int) -> tuple[int, int]:
    return (k + 1, 1) if k < n else (n, 0)


def run_q_horn(n: int, ctx: Ctx) -> None:
    for d in range(1, n + 1):
        for k in range(1, d + 1):
            i, e = _horn_box(d, k)
            right = q_map(horn_inclusion(d, k))
            errs = _horn_square(d, k, open_box_inclusion(d, i, e), right.source, right.target, right, right.target)
            ctx.expect_empty(errs, ("horn", d, k))
        # the k = 0 horn against the (1,1) box
        right = q_map(horn_inclusion(d, 0))
        errs = _horn_square(d, 0, open_box_inclusion(d, 1, 1), right.source, right.target, right, right.target)
        ctx.note(f"k=0, n={d}: (1,1) open box square {'holds' if not errs else 'fails: ' + errs[0]}")


def run_q_marking_extension(n: int, ctx: Ctx) -> None:
    for d in range(2, n + 1):
        for k in range(1, d + 1):
            i, e = _horn_box(d, k)
            right = q_map(simplicial_marking_extension(d, k))
            ext = marking_extension(d, i, e)
            g = _into(ext.source, right.source, d)
            h = _into(ext.target, right.target, d)
            ctx.expect_empty(check_pushout(ext, g, h, right), ("marking extension", d, k))


def run_q_triv(n: int, ctx: Ctx) -> None:
    for d in range(0, n + 1):
        for kind in ("Delta", "mDelta"):
            if kind == "mDelta" and d == 0:
                continue
            X = make_standard(kind, d)
            for k in range(-1, d + 1):
                ctx.check(q_functor(trivialize(X, k)).same_as(q_functor(X).trivialize(k)), {"object": X.name, "k": k})


def run_ql_pushout(n: int, ctx: Ctx) -> None:
    """QL -> QL' against the cubical Rezk map L_{1,2} -> L'_{1,2}."""
    from .cubical import rezk_map

    left = rezk_map(1, 2)
    right = q_map(Map(make_standard("L"), make_standard("L'"), {c: (tuple(range(len(c))), c) for c in make_standard("L").dims}))
    tops = {"X": (0, 1, 2), "Y": (1, 2, 3)}

    def via(src: Complex, tgt: Complex) -> Map:
        return Map(src, tgt, {c: tgt.act(B.face_morphism(c[1]), tops[c[0]]) for c in src.dims})

    ctx.expect_empty(check_pushout(left, via(left.source, right.source), via(left.target, right.target), right), "QL")


def run_q_unit_iso(n: int, ctx: Ctx) -> None:
    for d in range(0, n + 1):
        for kind in ("Delta", "mDelta"):
            if kind == "mDelta" and d == 0:
                continue
            X = make_standard(kind, d)
            I = integral(q_functor(X))
            unit = Map(X, I, {c: I.unit(c) for c in X.dims if c in I.dims}) if set(X.dims) <= set(I.dims) else None
            ok = unit is not None and not unit.check() and unit.is_iso()
            ctx.check(ok, {"object": X.name, "cells": len(I), "expected": len(X)})


def _cone_cells(X: Complex) -> set:
    return {c for c in X.dims if is_cone(X, X.unit(c), 0, X.dims[c])}


def run_q_counit_mono(n: int, ctx: Ctx) -> None:
    spaces = [cube_complex(2), cube_complex(3), q_object(3), cone_complex(1, 2), make_cube_object("mcube", 2)]
    if n >= 3:
        spaces.append(make_cube_object("comical", 3, 2, 0))
    for X in spaces:
        _, eps = counit_subcomplex(X)
        ctx.expect_empty(eps.check(), ("counit map", X.name))
        ctx.check(eps.is_mono() and eps.is_regular(), {"counit": X.name, "mono": eps.is_mono(), "regular": eps.is_regular()})
        ctx.check(eps.image_cells() == _cone_cells(X), {"cone cells": X.name})


# ------------------------------------------------------- rho, zeta, H


def _strings(n: int, r: int):
    alphabet = [MINUS] + list(range(1, r + 1)) + [PLUS]
    for e in itertools.product(alphabet, repeat=n):
        yield SimplexString(e, r)


def run_rho_zeta(n: int, ctx: Ctx) -> None:
    """``rho zeta = id``; ``rho`` is constant on quotient classes and preserves markings."""
    for k in range(0, n + 1):
        for r in range(0, k + 2):
            for a in itertools.combinations_with_replacement(range(k + 1), r + 1):
                ctx.check(rho(k, zeta(k, a)) == a, {"n": k, "alpha": a})
    for k in range(1, n + 1):
        Tc, TQ = triangulate(cube_complex(k)), triangulate(q_object(k))
        qm = triangulate_map(cone_quotient_map(0, k), Tc, TQ)
        for r in range(0, k + 1):
            classes = defaultdict(set)
            reps = defaultdict(list)
            for phi in _strings(k, r):
                key = qm(ez_string(phi))
                classes[key].add(rho(k, phi))
                reps[key].append(phi)
            for key, vals in classes.items():
                ctx.check(len(vals) == 1, {"n": k, "r": r, "class": str(key), "values": sorted(vals)})
            if k <= 4:
                for key, group in reps.items():
                    ctx.check(all(same_in_tq(group[0], p) for p in group), {"n": k, "r": r, "equivalence": str(key)})
        for marked in (False, True):
            ctx.expect_empty(rho_map(k, marked).check(), ("rho map", k, marked))


def run_h_claim(n: int, ctx: Ctx) -> None:
    """H sends marked simplices of the product with the marked interval to marked simplices."""
    vertex_mismatch = 0
    for k in range(1, n + 1):
        for r in range(1, k + 2):
            for phi in _strings(k + 1, r):
                h = homotopy_string(phi)
                vertex_mismatch += h != homotopy_from_vertices(phi)
                head = SimplexString(phi.entries[:k], r)
                if complete_substrings(head):
                    continue
                ctx.check(not complete_substrings(h), {"n": k, "simplex": str(phi), "image": str(h)})
    ctx.note(f"string formula and vertex formula for H disagree on {vertex_mismatch} simplices")
    if n >= 1:
        _h_descended(min(n, 3), ctx)


def _h_descended(n: int, ctx: Ctx) -> None:
    Tc, TQ = triangulate(cube_complex(n)), triangulate(q_object(n))
    qm = triangulate_map(cone_quotient_map(0, n), Tc, TQ)
    bad = total = 0
    for r in range(1, n + 2):
        for phi in _strings(n + 1, r):
            if complete_substrings(SimplexString(phi.entries[:n], r)):
                continue
            total += 1
            bad += not TQ.is_marked(qm(ez_string(homotopy_string(phi))))
    ctx.note(f"after passing to T Q^{n}: {bad} of {total} marked simplices still land unmarked")
