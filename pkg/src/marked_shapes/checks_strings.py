"""Replays of the string-level lemmas about triangulated cubes.

Every ``run_*`` function takes a size bound ``n`` and a :class:`Ctx`.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .box_ops import FaceNormalForm, all_faces
from .complexes import Complex
from .cubical import cube_complex, is_marked_in_comical_cube, make_cube_object
from .essential import (
    Omega,
    denormalize,
    essential_data,
    essential_simplices,
    in_open_box,
    is_essential,
    is_i_disordered,
    is_normal,
    normalize,
    omega,
    simplex_order_less,
    xi_complexes,
    xi_excluded,
)
from .report import Ctx
from .simplicial import _admissible, is_k_complicial, precomplicial_reflection
from .triangulation import (
    MINUS,
    PLUS,
    SimplexString,
    complete_substrings,
    cube_strings,
    cubical_face_action,
    ez_string,
    iota,
    is_linear,
    linear_simplex,
    linearizations,
    parse_string,
    string_act,
    string_face,
    triangulate,
)

# ------------------------------------------------------------------ helpers


def all_strings(n: int, r: int):
    """Every ``r``-simplex of the triangulated ``n``-cube, degenerate ones included."""
    alphabet = [MINUS, *range(1, r + 1), PLUS]
    for e in itertools.product(alphabet, repeat=n):
        yield SimplexString(e, r)


@lru_cache(maxsize=None)
def tri_cube(n: int, kind: str = "cube", i: int = 0, e: int = 0) -> Complex:
    """Cached triangulations; ``kind`` is a cubical descriptor name."""
    X = cube_complex(n) if kind == "cube" else make_cube_object(kind, n, i, e)
    return triangulate(X)


def _marked(T: Complex, phi: SimplexString) -> bool:
    return T.is_marked(ez_string(phi))


def _abnormal(n: int, m: int) -> list[SimplexString]:
    return [p for p in essential_simplices(n, m) if not is_normal(p)]


def _normal(n: int, m: int) -> list[SimplexString]:
    return [p for p in essential_simplices(n, m) if is_normal(p)]


def dagger(T: Complex, name: str = "") -> Complex:
    """Mark every non-degenerate simplex all of whose linearizations are marked."""
    marks = {
        phi
        for phi, d in T.dims.items()
        if d >= 1 and all(T.is_marked(T.unit(lam)) for lam in linearizations(phi))
    }
    return T.with_marked(marks | set(T.marked), name or f"{T.name}^dagger")


def _s(x) -> str:
    return str(x)


# --------------------------------------------------------- worked examples


def run_worked_examples(n: int, ctx: Ctx) -> None:
    P = parse_string
    phi = P("123+-")
    for k, want in [(0, "−12+−"), (1, "112+−"), (2, "122+−"), (3, "12++−")]:
        got = str(string_face(phi, k))
        ctx.check(got == want, {"face": k, "got": got, "want": want})

    ctx.check(complete_substrings(P("13323")) == [(1, 4, 5)], "complete substrings of 13323")
    ctx.check(complete_substrings(P("14233")) == [], "complete substrings of 14233")

    lin_examples = {
        "21213": {"+12−3"},
        "12−2": {"12−−", "1+−2"},
        "111": {"1−−", "+1−", "++1"},
        "12323": {"123−−", "12+−3", "1++23"},
    }
    for s, want in lin_examples.items():
        got = {str(x) for x in linearizations(P(s))}
        ctx.check(got == want, {"linearizations": s, "got": sorted(got), "want": sorted(want)})

    for nf_text, want in [("d2,0@3", "1+2"), ("d5,0.d2,1.d1,0@6", "+−12+3")]:
        got = str(linear_simplex(FaceNormalForm.parse(nf_text)))
        ctx.check(got == want, {"linear simplex": nf_text, "got": got, "want": want})
    ctx.check(all(linear_simplex(FaceNormalForm(k)) == iota(k) for k in range(1, 7)), "identity face is iota")

    for s, pre, Pv, Qv, qv in [("12354", (1, 2, 3), 3, 4, 5), ("12343", (1, 2), 2, 3, 3), ("23111", (), 0, 1, 2)]:
        d = essential_data(P(s))
        ctx.check((d.preamble, d.P, d.Q, d.q) == (pre, Pv, Qv, qv), {"essential data": s, "got": str(d)})

    ctx.check(str(normalize(P("1232"))) == "1342", "N(1232) = 1342")

    for j, w, W in [(3, "12334", "12345"), (4, "12434", "12435"), (5, "12+34", "12534")]:
        ctx.check(str(omega(5, 3, j)) == w, {"omega": (5, 3, j), "got": str(omega(5, 3, j))})
        ctx.check(str(Omega(5, 3, j)) == W, {"Omega": (5, 3, j), "got": str(Omega(5, 3, j))})
    for k in range(1, 7):
        for i in range(1, k + 1):
            ctx.check(Omega(k, i, i) == iota(k), {"Omega(i,i) is iota": (k, i)})
            ctx.check(omega(k, i, k) == linear_simplex(FaceNormalForm(k, ((i, 0),))), {"omega(i,n)": (k, i)})


# --------------------------------------------------------- face-preserve-order


def run_face_preserve_order(n: int, ctx: Ctx) -> None:
    for nn in range(1, n + 1):
        for r in range(0, nn + 1):
            faces = [d for l in range(r + 1) for d in itertools.combinations(range(r + 1), l + 1)]
            for phi in all_strings(nn, r):
                e = phi.entries
                pairs = [(a, b) for a in range(nn) for b in range(nn) if a != b and e[a] <= e[b]]
                for delta in faces:
                    psi = string_act(phi, delta).entries
                    bad = [(a + 1, b + 1) for a, b in pairs if not psi[a] <= psi[b]]
                    ctx.check(not bad, {"phi": str(phi), "face": delta, "positions": bad[:3]})


# --------------------------------------------------------- normalization


def run_n_bijection(n: int, ctx: Ctx) -> None:
    for nn in range(2, n + 1):
        for m in range(1, nn):
            Kp = _abnormal(nn, m)
            Ks = set(_normal(nn, m + 1))
            images = {}
            for phi in Kp:
                psi = normalize(phi)
                ctx.check(psi in Ks, {"N lands outside K*": str(phi), "n": nn})
                ctx.check(denormalize(psi) == phi, {"denormalize(N(phi)) != phi": str(phi), "n": nn})
                images.setdefault(psi, []).append(phi)
            ctx.check(all(len(v) == 1 for v in images.values()), {"N not injective": nn, "m": m})
            ctx.check(set(images) == Ks, {"N not onto K*": nn, "m": m, "missed": [str(x) for x in sorted(Ks - set(images))[:3]]})
            for psi in Ks:
                ctx.check(normalize(denormalize(psi)) == psi, {"N(denormalize(psi)) != psi": str(psi)})
    # K' in top dimension is iota alone
    for nn in range(1, n + 1):
        ctx.check(_abnormal(nn, nn) == [iota(nn)], {"top abnormal simplices": nn})


def run_simplex_order(n: int, ctx: Ctx) -> None:
    """Antisymmetry and transitivity of the order on non-degenerate m-simplices."""
    for nn in range(1, n + 1):
        for m in range(0, nn + 1):
            S = list(cube_strings(nn, m))
            succ = {a: {b for b in S if simplex_order_less(a, b)} for a in S}
            for a in S:
                ctx.check(a not in succ[a], {"irreflexive": str(a)})
                for b in succ[a]:
                    ctx.check(a not in succ[b], {"antisymmetry": (str(a), str(b))})
                    bad = succ[b] - succ[a]
                    ctx.check(not bad, {"transitivity": (str(a), str(b), [str(c) for c in list(bad)[:2]])})


def run_n_order(n: int, ctx: Ctx) -> None:
    for nn in range(2, n + 1):
        for m in range(1, nn):
            for phi in _abnormal(nn, m):
                psi, q = normalize(phi), essential_data(phi).q
                ctx.check(string_face(psi, q) == phi, {"N(phi) d_q != phi": str(phi)})
                for i in range(m + 2):
                    if i == q:
                        continue
                    face = string_face(psi, i)
                    ok = not face.is_degenerate() and simplex_order_less(face, phi)
                    ctx.check(ok, {"phi": str(phi), "face": i, "got": str(face)})


def run_n_linearization(n: int, ctx: Ctx) -> None:
    for nn in range(2, n + 1):
        for m in range(1, nn):
            for phi in _abnormal(nn, m):
                d = essential_data(phi)
                psi = normalize(phi)
                subs = complete_substrings(phi)
                lins = linearizations(phi)
                incl = {lam for rho, lam in zip(subs, lins) if d.Q in rho}
                excl = {lam for rho, lam in zip(subs, lins) if d.Q not in rho}
                got_minus = set(linearizations(string_face(psi, d.q - 1)))
                got_plus = set(linearizations(string_face(psi, d.q + 1)))
                ctx.check(got_minus == incl, {"clause": 1, "phi": str(phi)})
                ctx.check(got_plus == excl, {"clause": 2, "phi": str(phi)})
                for i in range(m + 2):
                    if abs(i - d.q) >= 2:
                        ctx.check(not linearizations(string_face(psi, i)), {"clause": 3, "phi": str(phi), "face": i})


def run_omega_face(n: int, ctx: Ctx) -> None:
    for nn in range(1, n + 1):
        for i in range(1, nn + 1):
            for j in range(i, nn + 1):
                W = Omega(nn, i, j)
                ctx.check(string_face(W, j) == omega(nn, i, j), {"Omega d_j": (nn, i, j)})
                if j >= i + 1:
                    ctx.check(string_face(W, j - 1) == omega(nn, i, j - 1), {"Omega d_(j-1)": (nn, i, j)})


def run_n_omega(n: int, ctx: Ctx) -> None:
    for nn in range(2, n + 1):
        for i in range(1, nn):
            for j in range(i, nn):
                w = omega(nn, i, j)
                ok = is_essential(w) and not is_normal(w) and normalize(w) == Omega(nn, i, j + 1)
                ctx.check(ok, {"N(omega)": (nn, i, j), "omega": str(w)})


def run_omega_linearization(n: int, ctx: Ctx) -> None:
    for nn in range(1, n + 1):
        for i in range(1, nn + 1):
            target = omega(nn, i, nn)
            family = {omega(nn, i, j) for j in range(i, nn + 1)}
            for phi in all_strings(nn, nn - 1):
                has = target in linearizations(phi)
                ctx.check(has == (phi in family), {"n": nn, "i": i, "phi": str(phi), "has": has})


# --------------------------------------------------------- disordered simplices


def _disordered(n: int):
    for nn in range(2, n + 1):
        for r in range(2, nn + 1):
            for phi in cube_strings(nn, r):
                for i in range(2, r + 1):
                    if is_i_disordered(phi, i):
                        yield nn, phi, i


def run_disordered_marked(n: int, ctx: Ctx) -> None:
    for nn, phi, i in _disordered(n):
        ctx.check(not complete_substrings(phi), {"phi": str(phi), "i": i})


def run_disordered_face(n: int, ctx: Ctx) -> None:
    for nn, phi, i in _disordered(n):
        for j in range(phi.r + 1):
            face = string_face(phi, j)
            if j >= i + 1:
                ctx.check(is_i_disordered(face, i), {"phi": str(phi), "i": i, "j": j})
            elif i >= 3 and j <= i - 3:
                ctx.check(is_i_disordered(face, i - 1), {"phi": str(phi), "i": i, "j": j})


def run_disordered_complicial(n: int, ctx: Ctx) -> None:
    for nn, phi, i in _disordered(n):
        T = tri_cube(nn)
        ctx.check(is_k_complicial(T, T.unit(phi), i - 1), {"phi": str(phi), "i": i})
    # normalizations are (q+1)-disordered
    for nn in range(2, n + 1):
        for m in range(1, nn):
            for phi in _abnormal(nn, m):
                q = essential_data(phi).q
                ctx.check(is_i_disordered(normalize(phi), q + 1), {"N(phi) not (q+1)-disordered": str(phi)})


# --------------------------------------------------------- linear simplices


def run_comical_triangulation_marking(n: int, ctx: Ctx) -> None:
    for nn in range(1, n + 1):
        for i in range(1, nn + 1):
            T0, T1 = tri_cube(nn, "comical", i, 0), tri_cube(nn, "comical", i, 1)
            for phi in cube_strings(nn):
                if phi.r == 0 or is_linear(phi) is None:
                    continue
                (rho,) = complete_substrings(phi)
                if i not in rho:
                    continue
                v = phi.entries[i - 1]
                lo = rho[v - 2] if v >= 2 else 0
                hi = rho[v] if v < phi.r else nn + 1
                gap = [phi.entries[k - 1] for k in range(lo + 1, hi) if k != i]
                if all(x == MINUS for x in gap):
                    ctx.check(T0.is_marked(T0.unit(phi)), {"eps": 0, "i": i, "phi": str(phi)})
                if all(x == PLUS for x in gap):
                    ctx.check(T1.is_marked(T1.unit(phi)), {"eps": 1, "i": i, "phi": str(phi)})


def run_linear_simplex_marked(n: int, ctx: Ctx) -> None:
    for nn in range(1, n + 1):
        for delta in all_faces(nn):
            if delta.dim == 0:
                continue
            lin = linear_simplex(delta)
            ctx.check(is_linear(lin) == delta, {"recover": str(delta), "got": str(is_linear(lin))})
            for i in range(1, nn + 1):
                for e in (0, 1):
                    T = tri_cube(nn, "comical", i, e)
                    want = is_marked_in_comical_cube(delta, i, e)
                    ctx.check(T.is_marked(T.unit(lin)) == want, {"delta": str(delta), "i": i, "e": e})


def run_cube_face_linearization(n: int, ctx: Ctx) -> None:
    for nn in range(2, n + 1):
        for phi in cube_strings(nn - 1):
            lins = linearizations(phi)
            for i in range(1, nn + 1):
                for e in (0, 1):
                    got = set(linearizations(cubical_face_action(i, e, phi)))
                    want = {cubical_face_action(i, e, lam) for lam in lins}
                    ctx.check(got == want, {"phi": str(phi), "face": (i, e)})


def run_box_marking(n: int, ctx: Ctx) -> None:
    """Closure under normalization and linearizations, and the marking consequence."""
    for nn in range(1, n + 1):
        for i in range(1, nn + 1):
            Tc = tri_cube(nn, "comical", i, 0)
            _, _, hat = xi_complexes(nn, i, tri_cube(nn))
            ctx.guard(len(Tc), "triangulated cube")
            for label, X in (("Tcube", Tc), ("Xihat", hat)):
                pre = precomplicial_reflection(X)
                for phi, d in X.dims.items():
                    lins = linearizations(phi)
                    ctx.check(all(lam in X.dims for lam in lins), {label: (nn, i), "phi": str(phi), "missing linearization": True})
                    if is_essential(phi) and d < nn and not is_normal(phi):
                        ctx.check(normalize(phi) in X.dims, {label: (nn, i), "phi": str(phi), "N missing": True})
                    if d >= 1 and all(X.is_marked(X.unit(lam)) for lam in lins if lam in X.dims):
                        ctx.check(phi in pre.marked, {label: (nn, i), "phi": str(phi), "not marked in reflection": True})


# --------------------------------------------------------- Omega-complicial


def run_omega_complicial(n: int, ctx: Ctx, use_dagger: bool = False) -> None:
    """``Omega^{i,j}`` against ``j``-complicial horns.

    Literally in the triangulated comical cube, or with ``use_dagger`` in
    its linearization-marked enlargement.
    """
    for nn in range(1, n + 1):
        for i in range(1, nn + 1):
            T = tri_cube(nn, "comical", i, 0)
            ctx.guard(len(T), "triangulated comical cube")
            if use_dagger:
                T = dagger(T)
            for j in range(i, nn + 1):
                W = Omega(nn, i, j)
                bad = [
                    str(ez_string(string_act(W, f))[1])
                    for f in _admissible(nn, j)
                    if not T.is_marked(T.act_on(f, T.unit(W)))
                ]
                ctx.check(not bad, {"n": nn, "i": i, "j": j, "Omega": str(W), "unmarked faces": bad[:4]})


# --------------------------------------------------------- Xi replays


def run_open_box_xi(n: int, ctx: Ctx) -> None:
    """The boundary pushout square and the K'/K* filling of Xi."""
    from .complexes import check_pushout, inclusion

    for nn in range(1, n + 1):
        T = tri_cube(nn)
        ctx.guard(len(T), "triangulated cube")
        for i in range(1, nn + 1):
            Xi, bd, _ = xi_complexes(nn, i, T)
            if nn == 1:
                ctx.check(set(Xi.dims) == {parse_string("-", 0)}, {"Xi^1_1": [str(c) for c in Xi.dims]})
                ctx.check(set(bd.dims) == set(Xi.dims), {"dXi^1_1": [str(c) for c in bd.dims]})
                continue
            # square: images of Xi^{n-1}_{n-1} under the (i,0) face
            Xs, bds, _ = xi_complexes(nn - 1, nn - 1, tri_cube(nn - 1))
            img_xi = {cubical_face_action(i, 0, c) for c in Xs.dims}
            img_bd = {cubical_face_action(i, 0, c) for c in bds.dims}
            box = {c for c in T.dims if in_open_box(c, i)}
            ctx.check(img_bd == img_xi & box, {"intersection": (nn, i)})
            ctx.check(set(bd.dims) == img_xi | box, {"union": (nn, i)})
            A, Bq = T.subcomplex(img_bd), T.subcomplex(img_xi)
            O = T.subcomplex(box)
            ctx.expect_empty(check_pushout(inclusion(A, Bq), inclusion(A, O), inclusion(Bq, bd), inclusion(O, bd)), ("pushout", nn, i))
            _replay_xi(nn, i, T, Xi, bd, ctx)


def _replay_xi(nn: int, i: int, T: Complex, Xi: Complex, bd: Complex, ctx: Ctx) -> None:
    skip = xi_excluded(nn, i)
    S = set(bd.dims)
    for m in range(1, nn):
        final = m == nn - 1
        Kp = [p for p in _abnormal(nn, m) if not (final and p in skip)]
        Ks = [p for p in _normal(nn, m + 1) if not (final and p in skip)]
        paired = Kp + [normalize(p) for p in Kp]
        ctx.check(
            len(set(paired)) == len(paired) and set(paired) == set(Kp) | set(Ks),
            {"inventory": (nn, i, m)},
        )
        order = sorted(Kp, key=lambda p: (essential_data(p).P, -essential_data(p).q, p))
        for phi in order:
            psi, q = normalize(phi), essential_data(phi).q
            others = [string_face(psi, j) for j in range(psi.r + 1) if j != q]
            present = all(ez_string(f)[1] in S for f in others)
            ctx.check(present, {"horn faces missing": str(psi), "n": nn, "i": i})
            ctx.check(is_k_complicial(T, T.unit(psi), q), {"not complicial": str(psi), "q": q})
            if _marked(T, phi):
                ctx.check(all(_marked(T, f) for f in others), {"faces unmarked": str(psi)})
            S |= {phi, psi}
    ctx.check(S == set(Xi.dims), {"final": (nn, i), "extra": [str(c) for c in sorted(S - set(Xi.dims))[:3]]})


def run_xi_cube(n: int, ctx: Ctx) -> None:
    """Filling Xi-hat to the whole (i,0)-comical triangulated cube via the Omega's."""
    for nn in range(1, n + 1):
        for i in range(1, nn + 1):
            Td = dagger(tri_cube(nn, "comical", i, 0))
            Xi, _, _ = xi_complexes(nn, i, tri_cube(nn))
            S = set(Xi.dims)
            top = iota(nn)
            for k in range(1, nn + 1):
                ctx.check(string_face(top, k) == omega(nn, k, k), {"iota d_k": (nn, k)})
            ctx.check(in_open_box(string_face(top, 0), i), {"iota d_0 in box": (nn, i)})
            for j in range(i, nn + 1):
                W = Omega(nn, i, j)
                if j > i:
                    ctx.check(string_face(W, j - 1) == omega(nn, i, j - 1), {"Omega d_(j-1)": (nn, i, j)})
                others = [string_face(W, k) for k in range(nn + 1) if k != j]
                ctx.check(all(ez_string(f)[1] in S for f in others), {"horn": (nn, i, j)})
                ctx.check(is_k_complicial(Td, Td.unit(W), j), {"complicial": (nn, i, j)})
                S |= {W, omega(nn, i, j)}
            ctx.check(S == set(Td.dims), {"all cells": (nn, i)})


def run_marking_extension_xi(n: int, ctx: Ctx) -> None:
    """Marking the omega's of the primed comical cube one at a time."""
    for nn in range(2, n + 1):
        for i in range(1, nn + 1):
            Tp = dagger(tri_cube(nn, "comical'", i, 0))
            fam = {omega(nn, i, j) for j in range(i, nn)}
            # top two dimensions: the only marks the target adds are on omega's
            unmarked = {p for p in Tp.dims if is_essential(p) and Tp.dims[p] >= nn - 1 and p not in Tp.marked}
            ctx.check(unmarked == fam, {"unmarked essentials": (nn, i), "got": sorted(map(str, unmarked))})
            low = sum(1 for p in Tp.dims if is_essential(p) and 1 <= Tp.dims[p] < nn - 1 and p not in Tp.marked)
            if low:
                ctx.note(f"n={nn} i={i}: {low} unmarked essential simplices below dimension n-1 (also unmarked in the target)")
            ctx.check(omega(nn, i, nn) not in Tp.marked, {"omega(i,n) marked": (nn, i)})
            M = set(Tp.marked)
            ok = lambda phi: phi.is_degenerate() or phi in M  # noqa: E731
            top = iota(nn)
            X = Tp.with_marked(M)
            ctx.check(is_k_complicial(X, X.unit(top), i), {"iota complicial": (nn, i)})
            lin = lambda *fs: linear_simplex(FaceNormalForm(nn, fs))  # noqa: E731
            if i == 1:
                ctx.check(string_face(top, 0) == lin((1, 1)), {"iota d_0": nn})
            else:
                f = string_face(top, i - 1)
                ctx.check(f == omega(nn, i - 1, i - 1), {"iota d_(i-1)": (nn, i)})
                ctx.check(set(linearizations(f)) == {lin((i, 1)), lin((i - 1, 0))}, {"lin d_(i-1)": (nn, i)})
            ctx.check(ok(string_face(top, i - 1)), {"d_(i-1) marked": (nn, i)})
            if i < nn:
                f = string_face(top, i + 1)
                ctx.check(f == omega(nn, i + 1, i + 1), {"iota d_(i+1)": (nn, i)})
                want = {lin((nn, 0))} if i + 1 == nn else {lin((i + 1, 0)), lin((i + 2, 1))}
                ctx.check(set(linearizations(f)) == want, {"lin d_(i+1)": (nn, i)})
                ctx.check(ok(f), {"d_(i+1) marked": (nn, i)})
            M |= {top, omega(nn, i, i)} | {ez_string(string_face(top, k))[1] for k in range(nn + 1)}
            for j in range(i + 1, nn + 1):
                W = Omega(nn, i, j)
                X = Tp.with_marked(M)
                ctx.check(is_k_complicial(X, X.unit(W), j), {"Omega complicial": (nn, i, j)})
                ctx.check(ok(string_face(W, j - 1)), {"d_(j-1) marked": (nn, i, j)})
                if j < nn:
                    f = string_face(W, j + 1)
                    ctx.check(not linearizations(f) and ok(f), {"d_(j+1)": (nn, i, j)})
                M |= {W} | {ez_string(string_face(W, k))[1] for k in range(nn + 1)}
            M = {c for c in M if not c.is_degenerate() and Tp.dims.get(c, 0) >= 1}
            tgt_dag = dagger(tri_cube(nn, "comical''", i, 0))
            ctx.check(M == set(tgt_dag.marked), {"final marking": (nn, i), "diff": sorted(map(str, M ^ set(tgt_dag.marked)))[:4]})
            top_two = {c for c, d in tgt_dag.dims.items() if d >= nn - 1}
            ctx.check(top_two <= set(tgt_dag.marked), {"top dimensions not all marked": (nn, i)})
            trivial = set(tri_cube(nn, "comical", i, 0).trivialize(nn - 2).marked)
            extra = set(tgt_dag.marked) - trivial
            if extra:
                ctx.note(
                    f"n={nn} i={i}: the dagger of the trivialized cube marks {len(extra)} low-dimensional simplices "
                    f"beyond the trivialized triangulation, e.g. {sorted(map(str, extra))[:3]}"
                )
