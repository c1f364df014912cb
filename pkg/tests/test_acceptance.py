"""Acceptance replay: one PASS/FAIL line per criterion.

Run directly (``python tests/test_acceptance.py``) or through pytest, where
the lines are printed in the terminal summary. Two criteria fail for real:
the replays find counterexamples, recorded here as strict xfails so that a
silent change in either direction is noticed.
"""

from __future__ import annotations

import sys
import time

import pytest

from marked_shapes.lemmas import verify

# criterion -> (title, [(lemma id, n)], runtime limit in seconds, tolerance)
CRITERIA = {
    1: ("worked string examples", [("worked-examples", 5)], 1, "exact"),
    2: ("composite faces keep entry order, n<=4", [("face-preserve-order", 4)], 30, "zero failures"),
    3: ("normalization bijection, n<=5", [("N-bijection", 5)], 60, "zero failures"),
    4: (
        "order, linearization, omega and disorder lemmas",
        [
            ("simplex-order", 5),
            ("N-order", 5),
            ("N-linearization", 5),
            ("omega-face", 5),
            ("N-omega", 5),
            ("omega-linearization", 5),
            ("disordered-marked", 5),
            ("disordered-face", 5),
            ("disordered-complicial", 5),
            ("comical-triangulation-marking", 5),
            ("linear-simplex-marked", 5),
            ("cube-face-linearization", 5),
            ("Box-marking", 4),
        ],
        120,
        "zero failures",
    ),
    5: ("Omega(i,j) is j-complicial, n<=5", [("Omega-complicial", 5)], 60, "zero failures"),
    6: ("open box into Xi, n<=4", [("open-box-xi-anodyne", 4)], 60, "zero failures"),
    7: ("Xi into the comical cube, marking extensions, n<=4", [("xi-cube-anodyne", 4), ("marking-extension-anodyne", 4)], 60, "zero failures"),
    8: ("pushout-product case analysis, m+n<=5", [("comical-model-structure", 5)], 180, "zero failures"),
    9: (
        "cone calculus",
        [("cone-desc-faces", 5), ("Qcone", 4), ("FaceIso", 4), ("ConeFaceDeg", 4), ("sa1", 4)],
        120,
        "zero failures",
    ),
    10: (
        "Q on generators",
        [("Q-mono", 4), ("Q_horn", 4), ("Q_marking_extension", 4), ("Q_triv", 4), ("QL-pushout", 1)],
        120,
        "exact",
    ),
    11: ("unit and counit of Q, n<=3", [("Q-unit-iso", 3), ("Q-counit-mono", 3)], 60, "exact"),
    12: ("rho, zeta and the homotopy H", [("rho-zeta", 5), ("H-claim", 3)], 60, "exact"),
    13: (
        "strongly comical cubes, ambient dimension <=4",
        [
            ("strong-comical-degens", 4),
            ("strong-comical-iso", 4),
            ("strong-comical-anodyne", 4),
            ("b-c-anodyne", 4),
            ("theta-construction", 3),
        ],
        60,
        "zero failures",
    ),
    14: ("Rezk pushout leaves only 0->3 unmarked", [("Rezk-pushout-complicial", 4)], 10, "exact"),
}

# criteria whose replays find genuine counterexamples
KNOWN_FAILING = {5, 12}

RESULTS: list[str] = []


def run_criterion(k: int) -> tuple[bool, str, list]:
    title, jobs, limit, tol = CRITERIA[k]
    start = time.perf_counter()
    reports = [verify(lemma, n) for lemma, n in jobs]
    secs = time.perf_counter() - start
    cases = sum(r.cases for r in reports)
    bad = [r for r in reports if not r.passed]
    ok = not bad and secs < limit
    detail = ", ".join(f"{r.lemma}: {r.failure_count} failures" for r in bad) or f"{cases} cases"
    line = (
        f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}; tolerance {tol}; "
        f"{secs:.2f}s, limit {limit}s]"
    )
    return ok, line, reports


@pytest.mark.parametrize(
    "k",
    [
        pytest.param(k, marks=pytest.mark.xfail(strict=True, reason="replay finds counterexamples")) if k in KNOWN_FAILING else k
        for k in CRITERIA
    ],
)
def test_criterion(k):
    ok, line, reports = run_criterion(k)
    RESULTS.append(line)
    for r in reports:
        if not r.passed:
            RESULTS.append(f"              first counterexample ({r.lemma}): {r.failures[0]}")
    assert ok, line


def test_criterion_5_dagger_variant_holds():
    # the statement holds once simplices with all linearizations marked are marked
    r = verify("Omega-complicial-dagger", 5)
    RESULTS.append(f"criterion  5 (dagger marking): {'PASS' if r.passed else 'FAIL'}  [{r.cases} cases]")
    assert r.passed


def test_criterion_12_other_clauses_hold():
    r = verify("rho-zeta", 5)
    RESULTS.append(f"criterion 12 (rho/zeta only):  {'PASS' if r.passed else 'FAIL'}  [{r.cases} cases]")
    assert r.passed


def main() -> int:
    failed = 0
    for k in CRITERIA:
        ok, line, reports = run_criterion(k)
        print(line, flush=True)
        for r in reports:
            if not r.passed:
                print(f"              first counterexample ({r.lemma}): {r.failures[0]}")
        failed += not ok
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
