"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error,
3 a cell budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .box_ops import FaceNormalForm
from .complexes import CUBICAL, BudgetExceeded, Complex
from .cones import cone_complex, cone_subobjects, q_functor, q_object
from .cubical import make_cube_object
from .essential import xi_complexes
from .lemmas import REGISTRY, run_suite, verify
from .report import UnknownLemma
from .simplicial import make_standard
from .triangulation import complete_substrings, ez_string, parse_string, triangulate

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

DESCRIPTOR_HELP = (
    "Delta n | mDelta n | horn n k | adelta n k | adelta' n k | adelta'' n k | Delta3eq | L | L' | "
    "cube n | mcube n | bdcube n | obox n i e | comical n i e | comical' n i e | comical'' n i e | "
    "strong n i | Gamma n i j | Lxy x y | L'xy x y | cone m n | mcone m n | B m n | Cbar m n | Bbar m n | "
    "Q n | mQ n | Xi n i | T-comical-cube n i e"
)


class DescriptorError(ValueError):
    pass


def _cone_part(which: int) -> Callable[..., Complex]:
    return lambda m, n: cone_subobjects(m, n)[which]


_BUILDERS: dict[str, tuple[int, Callable[..., Complex]]] = {
    "Delta": (1, lambda n: make_standard("Delta", n)),
    "mDelta": (1, lambda n: make_standard("mDelta", n)),
    "horn": (2, lambda n, k: make_standard("horn", n, k)),
    "adelta": (2, lambda n, k: make_standard("adelta", n, k)),
    "adelta'": (2, lambda n, k: make_standard("adelta'", n, k)),
    "adelta''": (2, lambda n, k: make_standard("adelta''", n, k)),
    "Delta3eq": (0, lambda: make_standard("Delta3eq")),
    "L": (0, lambda: make_standard("L")),
    "L'": (0, lambda: make_standard("L'")),
    "cone": (2, lambda m, n: cone_complex(m, n)),
    "mcone": (2, lambda m, n: cone_complex(m, n, marked_top=True, name=f"mC^{m},{n}")),
    "B": (2, _cone_part(0)),
    "Cbar": (2, _cone_part(1)),
    "Bbar": (2, _cone_part(2)),
    "Q": (1, lambda n: q_object(n)),
    "mQ": (1, lambda n: q_object(n, True)),
    "Xi": (2, lambda n, i: xi_complexes(n, i)[0]),
    "T-comical-cube": (
        3,
        lambda n, i, e: triangulate(make_cube_object("comical", n, i, e)),
    ),
}
for _kind, _arity in [
    ("cube", 1), ("mcube", 1), ("bdcube", 1), ("obox", 3), ("comical", 3), ("comical'", 3),
    ("comical''", 3), ("strong", 2), ("Gamma", 3), ("Lxy", 2), ("L'xy", 2),
]:  # fmt: skip
    _BUILDERS[_kind] = (_arity, lambda *p, _k=_kind: make_cube_object(_k, *p))


def build_object(descriptor: str) -> Complex:
    """Parse an object descriptor such as ``"obox 3 2 0"`` and build it."""
    words = descriptor.split()
    if not words:
        raise DescriptorError("empty descriptor")
    kind, args = words[0], words[1:]
    if kind not in _BUILDERS:
        raise DescriptorError(f"unknown object {kind!r}; expected one of: {DESCRIPTOR_HELP}")
    arity, fn = _BUILDERS[kind]
    if len(args) != arity:
        raise DescriptorError(f"{kind} takes {arity} integer parameter(s), got {len(args)}")
    try:
        params = [int(a) for a in args]
    except ValueError:
        raise DescriptorError(f"parameters of {kind} must be integers: {args}") from None
    try:
        return fn(*params)
    except (ValueError, TypeError) as ex:
        raise DescriptorError(str(ex)) from None


def parse_cell(X: Complex, text: str):
    """Turn a cell name from the command line into a cube or simplex of ``X``.

    Strings like ``122@3`` name simplices of triangulated cubes, ``d2,1@3``
    names cube faces and ``0,2`` or ``02`` names simplices of a simplex.
    """
    sample = next(iter(X.dims), None)
    if X.algebra is CUBICAL:
        return X.unit(FaceNormalForm.parse(text))
    if sample is not None and type(sample).__name__ == "SimplexString":
        return ez_string(parse_string(text))
    body = text.replace(",", " ").split() if "," in text or " " in text else list(text)
    cell = tuple(int(v) for v in body)
    if list(cell) != sorted(set(cell)):
        raise ValueError(f"vertices of {text!r} must be strictly increasing")
    return X.unit(cell)


def _marked_reason(X: Complex, pair) -> str:
    op, c = pair
    if not X.algebra.is_identity(op):
        return "degenerate"
    if type(c).__name__ == "SimplexString":
        if c.r >= 1 and not complete_substrings(c):
            return "no complete substring"
        if c in X.marked:
            return "linear simplex of a marked face"
        return "has a complete substring"
    return "listed as marked" if c in X.marked else "not listed as marked"


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _complex_payload(X: Complex) -> dict:
    data = X.to_json()
    data["name"] = X.name
    data["counts"] = {str(k): v for k, v in X.count_by_dim().items()}
    return data


def _guard(args, X: Complex) -> None:
    if args.budget_cells is not None and len(X) > args.budget_cells:
        raise BudgetExceeded(f"{X.name} has {len(X)} cells, budget is {args.budget_cells}")


def cmd_build(args) -> int:
    X = build_object(args.descriptor)
    _guard(args, X)
    _emit(args, _complex_payload(X))
    return EXIT_OK


def cmd_tri(args) -> int:
    X = build_object(args.descriptor)
    if X.algebra is not CUBICAL:
        raise DescriptorError("tri needs a cubical object")
    if args.budget_cells is not None and 3 ** X.max_dim > args.budget_cells:
        raise BudgetExceeded(f"triangulating {X.name} would exceed {args.budget_cells} cells")
    T = triangulate(X)
    _guard(args, T)
    _emit(args, _complex_payload(T))
    return EXIT_OK


def cmd_cubify(args) -> int:
    X = build_object(args.descriptor)
    if X.algebra is CUBICAL:
        raise DescriptorError("cubify needs a simplicial object")
    QX = q_functor(X)
    _guard(args, QX)
    _emit(args, _complex_payload(QX))
    return EXIT_OK


def cmd_marked(args) -> int:
    X = build_object(args.descriptor)
    try:
        pair = parse_cell(X, args.cell)
        marked = X.is_marked(pair)
    except (KeyError, ValueError) as ex:
        raise DescriptorError(f"{args.cell!r} is not a cell of {X.name}: {ex}") from None
    reason = _marked_reason(X, pair)
    if args.json:
        _emit(args, {"object": args.descriptor, "cell": args.cell, "marked": marked, "reason": reason})
    else:
        _emit(args, f"{args.cell} in {args.descriptor}: {'marked' if marked else 'unmarked'} ({reason})")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify(args.lemma, args.n, args.budget_cells)
    if args.json:
        _emit(args, report.to_json())
    else:
        lines = [report.summary()]
        lines += [f"  note: {x}" for x in report.notes]
        lines += [f"  counterexample: {json.dumps(x, ensure_ascii=False)}" for x in report.failures[:10]]
        _emit(args, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_suite(args) -> int:
    reports = run_suite(args.profile, args.budget_cells)
    if args.json:
        _emit(args, [r.to_json() for r in reports])
    else:
        fails = [r for r in reports if not r.passed]
        lines = [r.summary() for r in reports]
        total = sum(r.millis for r in reports) / 1000
        lines.append(f"{len(reports) - len(fails)}/{len(reports)} passed in {total:.1f}s")
        if fails:
            lines.append("failing: " + ", ".join(r.lemma + (" (known)" if r.known_failure else "") for r in fails))
        _emit(args, "\n".join(lines))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_list(args) -> int:
    rows = [
        {"id": e.id, "criterion": e.criterion, "default_n": e.default_n, "known_failure": e.known_failure, "description": e.description}
        for e in REGISTRY.values()
    ]
    if args.json:
        _emit(args, rows)
    else:
        _emit(args, "\n".join(f"{r['id']:<32} n={r['default_n']}  {r['description']}" for r in rows))
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="FILE", help="write output to FILE")
    common.add_argument("--budget-cells", type=int, metavar="N", help="refuse to build complexes above N cells")

    p = argparse.ArgumentParser(prog="marked-shapes", description="Marked simplicial and cubical shapes.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, helptext in [
        ("build", cmd_build, "emit an object as JSON"),
        ("tri", cmd_tri, "triangulate a cubical object"),
        ("cubify", cmd_cubify, "apply Q to a simplicial object"),
    ]:
        s = sub.add_parser(name, parents=[common], help=helptext, epilog=f"descriptors: {DESCRIPTOR_HELP}")
        s.add_argument("descriptor")
        s.set_defaults(fn=fn)
    s = sub.add_parser("marked", parents=[common], help="is a cell marked?", epilog=f"descriptors: {DESCRIPTOR_HELP}")
    s.add_argument("descriptor")
    s.add_argument("cell", help="e.g. 122@3, d2,1@3 or 0,2")
    s.set_defaults(fn=cmd_marked)
    s = sub.add_parser("verify", parents=[common], help="replay one lemma")
    s.add_argument("lemma")
    s.add_argument("--n", type=int, help="size bound (default per lemma)")
    s.set_defaults(fn=cmd_verify)
    s = sub.add_parser("suite", parents=[common], help="replay every lemma")
    s.add_argument("--profile", choices=("quick", "full"), default="full")
    s.set_defaults(fn=cmd_suite)
    s = sub.add_parser("list", parents=[common], help="list lemma ids")
    s.set_defaults(fn=cmd_list)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if args.budget_cells is not None and args.budget_cells <= 0:
        parser.error("--budget-cells must be positive")
    if getattr(args, "n", None) is not None and args.n < 0:
        parser.error("--n must be non-negative")
    try:
        return args.fn(args)
    except UnknownLemma as ex:
        print(f"unknown lemma {ex.args[0]!r}; run 'marked-shapes list'", file=sys.stderr)
        return EXIT_USAGE
    except DescriptorError as ex:
        parser.print_usage(sys.stderr)
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as ex:
        print(f"budget exceeded: {ex}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
