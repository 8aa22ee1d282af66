"""Acceptance criteria, one test per criterion, each printing a verdict line.

Criterion 5 compares the generated first-derivative vanishing row against a
published reference rendering of the same equation; the reference block is
internally inconsistent (see the analysis in the failure message), so that
single test documents the mismatch rather than papering over it.
"""

import itertools
import json
import os
import random
import time
from fractions import Fraction
from math import factorial

import mpmath
import pytest

from belyi.census import classify_monodromy, enumerate_classes, verify_fermat4
from belyi.cli import main
from belyi.curves import fixture
from belyi.equations import (
    build_system,
    compute_t,
    dump_system,
    enumerate_cases,
    expected_rr_dimension,
    parse_system,
)
from belyi.groebner import (
    NONEMPTY,
    buchberger,
    is_empty_variety,
    is_groebner_basis,
)
from belyi.bounds import khadjavi_bound
from belyi.mpoly import MultiPoly, grevlex_key
from belyi.passports import (
    enumerate_partitions,
    ramification_type,
    rh_genus,
    types_with_genus,
)
from belyi.perm import (
    Permutation,
    all_permutations,
    centralizer_order,
    compose,
    conjugate,
    cycle_type,
    is_transitive,
)


def report(number: int, description: str, ok: bool) -> None:
    verdict = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number:2d} [{verdict}] {description}")


def test_criterion_01_census_reproduction():
    t0 = time.monotonic()
    lam = ramification_type(7, (7,), (7,), (7,))
    classes = enumerate_classes(lam, workers=1)
    tags = {}
    noncyclic_auts = []
    for t in classes:
        tag = classify_monodromy(t)
        tags.setdefault((tag.kind, tag.order), 0)
        tags[(tag.kind, tag.order)] += 1
        if tag.kind != "cyclic":
            noncyclic_auts.append(centralizer_order([t.sigma0, t.sigma1]))
    elapsed = time.monotonic() - t0
    ok = (tags == {("cyclic", 7): 5, ("other", 168): 2, ("alternating", 2520): 23}
          and all(a == 1 for a in noncyclic_auts)
          and len(noncyclic_auts) == 25
          and elapsed <= 60.0)
    report(1, f"degree-7 census 5 cyclic + 2x168 + 23x2520, rigid noncyclic, "
              f"{elapsed:.2f}s <= 60s", ok)
    assert ok


def test_criterion_02_rh_filter():
    t0 = time.monotonic()
    types = types_with_genus(7, 3)
    elapsed = time.monotonic() - t0
    ok = (types == [ramification_type(7, (7,), (7,), (7,))]
          and elapsed <= 1.0)
    report(2, f"types_with_genus(7,3) unique, {elapsed:.3f}s <= 1s", ok)
    assert ok


def test_criterion_03_fermat_pipeline(capsys):
    code = main(["verify", "fermat4"])
    out = capsys.readouterr().out
    checks = [
        code == 0,
        "belyi degree of fermat4: 8" in out,
        "degree >= 7" in out,
        "5 cyclic + 25 noncyclic" in out,
        "96" in out,
        "degree-8" in out,
    ]
    report_ok = all(checks)
    with capsys.disabled():
        report(3, "verify fermat4 concludes 8 with full evidence chain",
               report_ok)
    assert report_ok
    data = verify_fermat4()
    assert data.belyi_degree == 8


def test_criterion_04_system_counts():
    curve, rr = fixture("fermat4")
    lam = ramification_type(7, (7,), (7,), (7,))
    general = enumerate_cases(curve, rr, lam)[0]
    system = build_system(curve, rr, lam, general)
    c = system.counts
    ok = (system.core_shape() == (33, 41)
          and system.total_shape() == (34, 42)
          and c["coefficient_vars"] == 8 + 7
          and c["coordinate_vars"] == 2 * 4
          and c["distinctness_vars"] == 10
          and c["vanishing_eqs"] == 8 * 3 + 3  # 7 rows x3 points + 3+3 at Y
          and c["membership_eqs"] == 4
          and c["distinctness_eqs"] == 10
          and c["gadget_vars"] == 1 and c["gadget_eqs"] == 1)
    report(4, "general quartic case: 33 vars/41 eqs core, 34/42 with gadget "
              "itemized", ok)
    assert ok


# Published reference rendering of the first-derivative row (coefficients of
# a2..a8 in the variables of the ramification point over 0).
_REFERENCE_J1_ROW = {
    2: {(6, 7): "3", (5, 7): "3", (4, 7): "3", (3, 7): "3",
        (2, 13): "3", (1, 13): "2", (0, 13): "1"},
    3: {(6, 6): "4", (5, 6): "4", (4, 6): "4", (3, 6): "4",
        (2, 12): "3", (1, 12): "2", (0, 12): "1"},
    4: {(6, 4): "6", (5, 8): "-11/2", (5, 4): "6", (4, 8): "-7", (4, 4): "6",
        (3, 8): "-17/2", (3, 4): "6", (2, 10): "3", (1, 10): "4", (0, 10): "2"},
    5: {(6, 3): "7", (5, 7): "-23/4", (5, 3): "7", (4, 7): "-15/2",
        (4, 3): "7", (3, 7): "-37/4", (3, 3): "7", (2, 9): "3", (1, 9): "4",
        (0, 9): "2"},
    6: {(6, 2): "8", (5, 6): "-6", (5, 2): "8", (4, 6): "-8", (4, 2): "8",
        (3, 6): "-10", (3, 2): "8", (2, 8): "3", (1, 8): "4", (0, 8): "2"},
    7: {(6, 5): "5", (6, 1): "-24", (5, 5): "11", (5, 1): "-24",
        (4, 9): "-19/2", (4, 5): "17", (4, 1): "-24", (3, 9): "-25/2",
        (3, 5): "23", (3, 1): "-24", (2, 7): "6", (1, 7): "4", (0, 7): "3"},
    8: {(6, 0): "10", (5, 8): "-143/16", (5, 4): "-13/2", (5, 0): "10",
        (4, 8): "-37/4", (4, 4): "-9", (4, 0): "10", (3, 8): "-143/16",
        (3, 4): "-23/2", (3, 0): "10", (2, 6): "3", (1, 6): "6", (0, 6): "3"},
}


def _my_j1_coefficients():
    """Coefficient polynomial of each a_v in the generated j=1 row, as
    bivariate polynomials in the ramification point's coordinates."""
    curve, rr = fixture("fermat4")
    lam = ramification_type(7, (7,), (7,), (7,))
    system = build_system(curve, rr, lam, enumerate_cases(curve, rr, lam)[0])
    row = system.equations[1]  # j=1 row for `a` at the first point
    idx = {n: i for i, n in enumerate(system.variables)}
    xi, yi = idx["x_P1"], idx["y_P1"]
    out = {}
    for e, c in row.terms.items():
        a_index = None
        for v in range(1, 9):
            if e[idx[f"a{v}"]]:
                a_index = v
                break
        assert a_index is not None
        key = (e[xi], e[yi])
        poly = out.setdefault(a_index, {})
        poly[key] = poly.get(key, Fraction(0)) + c
    return {v: MultiPoly(2, terms) for v, terms in out.items()}


def test_criterion_05_printed_equation_match():
    mine = _my_j1_coefficients()
    ref = {v: MultiPoly(2, {e: Fraction(s) for e, s in terms.items()})
           for v, terms in _REFERENCE_J1_ROW.items()}
    assert sorted(mine) == sorted(ref) == list(range(2, 9))

    # Normalize to the reference rendering: scale this row by the unique
    # factor matching the x^6-block of the a2 coefficient, by cross-
    # multiplying so no division is needed.
    def x6_part(p):
        terms = {e: c for e, c in p.terms.items() if e[0] == 6}
        assert terms, "a2 coefficient lost its x^6 block"
        return MultiPoly(2, terms)

    my_anchor = x6_part(mine[2])
    ref_anchor = x6_part(ref[2])
    mism = []
    for v in range(2, 9):
        if mine[v] * ref_anchor != ref[v] * my_anchor:
            mism.append(v)
    ok = not mism
    report(5, "generated j=1 row matches the reference rendering "
              "coefficient-for-coefficient", ok)
    if not ok:
        pytest.fail(
            "criterion 5 is unattainable as stated: the reference block is "
            "internally inconsistent. After anchoring the normalization on "
            "the a2 coefficient's x^6 block, coefficients of "
            f"a_v for v in {mism} disagree. Cross-ratios of the reference "
            "coefficients against the true derivatives differ pairwise even "
            "modulo the curve, so no uniform clearing reproduces the block "
            "(analysis in the decisions ledger). The generated row itself is "
            "validated by an independent numeric oracle in "
            "tests/test_equations.py::TestRowCorrectness.")


def test_criterion_06_t_and_dimension():
    ok = compute_t(7, 3, 1) == 10 and expected_rr_dimension(10, 1, 3) == 8
    report(6, "t = 10 and section dimension 8 for the quartic data", ok)
    assert ok


def test_criterion_07_khadjavi():
    b1 = khadjavi_bound(1, 1)
    b2 = khadjavi_bound(2, 1)
    with mpmath.workdps(60):
        direct = mpmath.log10(mpmath.mpf(8)) * 144
        agree = abs(b2.log10 - direct) < mpmath.mpf(10) ** -10
    ok = (b1.exact == 512 and b2.exact == Fraction(8) ** 144 and bool(agree))
    report(7, "bound(1,1) = 512 exactly; bound(2,1) = 8^144 with log10 "
              "agreement 1e-10", ok)
    assert ok


def test_criterion_08_end_to_end_desk_solve(tmp_path, capsys):
    t0 = time.monotonic()
    out_dir = str(tmp_path / "sys")
    code = main(["system", "emit", "--curve", "p1", "--degree", "2",
                 "--lambda", "2/1,1/2", "--case", "all", "--out", out_dir])
    assert code == 0
    capsys.readouterr()
    target = None
    for name in sorted(os.listdir(out_dir)):
        with open(os.path.join(out_dir, name)) as fh:
            if "k=3,l=1,mu=0,R1=D1" in fh.read():
                target = os.path.join(out_dir, name)
                break
    assert target
    code = main(["system", "solve", "--in", target])
    out = capsys.readouterr().out
    solved = code == 0 and "verdict: nonempty" in out

    # RH-failing type rejected before any equation work
    code = main(["system", "emit", "--curve", "p1", "--degree", "2",
                 "--lambda", "2/2/2", "--case", "general",
                 "--out", str(tmp_path / "rej")])
    out2 = capsys.readouterr().out
    rejected = (code == 0 and "rejected at the ramification filter" in out2
                and rh_genus(ramification_type(2, (2,), (2,), (2,))) is None)
    elapsed = time.monotonic() - t0
    ok = solved and rejected and elapsed <= 10.0
    with capsys.disabled():
        report(8, f"emit+solve nonempty and RH rejection, {elapsed:.2f}s <= 10s",
               ok)
    assert ok


def test_criterion_09_oracle_equivalence():
    t0 = time.monotonic()
    mismatches = []
    for d in range(1, 6):
        naive = _naive_counts(d)
        parts = enumerate_partitions(d)
        for lam0 in parts:
            for lam1 in parts:
                for lam_inf in parts:
                    key = (lam0.parts, lam1.parts, lam_inf.parts)
                    lam = ramification_type(d, *key)
                    got = len(enumerate_classes(lam, workers=1))
                    want = naive.get(key, 0)
                    if got != want:
                        mismatches.append((d, key, got, want))
    elapsed = time.monotonic() - t0
    ok = not mismatches and elapsed <= 120.0
    report(9, f"class counts match exhaustive-conjugacy oracle for all types, "
              f"d <= 5, {elapsed:.1f}s <= 120s", ok)
    assert ok, mismatches


def _naive_counts(d):
    buckets = {}
    for s0 in all_permutations(d):
        for s1 in all_permutations(d):
            if not is_transitive([s0, s1], d):
                continue
            sinf = compose(s0, s1).inverse()
            key = (cycle_type(s0).parts, cycle_type(s1).parts,
                   cycle_type(sinf).parts)
            buckets.setdefault(key, set()).add((s0.images, s1.images))
    group = list(all_permutations(d))
    counts = {}
    for key, pairs in buckets.items():
        seen = set()
        n = 0
        for pair in sorted(pairs):
            if pair in seen:
                continue
            n += 1
            a, b = Permutation(pair[0]), Permutation(pair[1])
            for g in group:
                seen.add((conjugate(a, g).images, conjugate(b, g).images))
        counts[key] = n
    return counts


def test_criterion_10_property_suites():
    rng = random.Random(20260810)

    # orbit-stabilizer identity on 100 random triples of degree <= 8
    orbit_ok = True
    for _ in range(100):
        d = rng.randint(2, 8)
        images0 = list(range(1, d + 1))
        images1 = list(range(1, d + 1))
        rng.shuffle(images0)
        rng.shuffle(images1)
        s0, s1 = Permutation(tuple(images0)), Permutation(tuple(images1))
        orbit = set()
        frontier = [(s0.images, s1.images)]
        orbit.add(frontier[0])
        gens = [Permutation(tuple([2, 1] + list(range(3, d + 1))))] if d >= 2 else []
        cyc = Permutation(tuple(list(range(2, d + 1)) + [1]))
        gens.append(cyc)
        while frontier:
            nxt = []
            for pa, pb in frontier:
                a, b = Permutation(pa), Permutation(pb)
                for g in gens:
                    key = (conjugate(a, g).images, conjugate(b, g).images)
                    if key not in orbit:
                        orbit.add(key)
                        nxt.append(key)
            frontier = nxt
        if len(orbit) * centralizer_order([s0, s1]) != factorial(d):
            orbit_ok = False
            break

    # S-pair reduction certificate on every completed basis here
    cert_ok = True
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    one = MultiPoly.constant(2, 1)
    for gens in ([x * x + y * y - one, x - y],
                 [x * y - one, x + y],
                 [x * x - y, y * y - one, x + y + one]):
        basis = buchberger(gens, grevlex_key)
        if not is_groebner_basis(basis, grevlex_key):
            cert_ok = False
    curve, rr = fixture("p1", degree=2)
    lam = ramification_type(2, (2,), (1, 1), (2,))
    case = next(c for c in enumerate_cases(curve, rr, lam)
                if c.k == 3 and c.l == 1 and c.pattern
                and c.pattern[0][0] == "R1")
    system = build_system(curve, rr, lam, case)
    basis = buchberger(list(system.equations), grevlex_key)
    if not is_groebner_basis(basis, grevlex_key):
        cert_ok = False

    # conjugation invariance of cycle types on 1000 random pairs
    conj_ok = True
    for _ in range(1000):
        d = rng.randint(1, 8)
        images0 = list(range(1, d + 1))
        images1 = list(range(1, d + 1))
        rng.shuffle(images0)
        rng.shuffle(images1)
        p, g = Permutation(tuple(images0)), Permutation(tuple(images1))
        if cycle_type(conjugate(p, g)) != cycle_type(p):
            conj_ok = False
            break

    ok = orbit_ok and cert_ok and conj_ok
    report(10, "orbit-stabilizer x100, Groebner certificates, conjugation "
               "invariance x1000", ok)
    assert ok
