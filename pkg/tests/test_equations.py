import itertools
import random
from fractions import Fraction

import mpmath
import pytest

from belyi.curves import RationalFunction, X, Y, ONE, fixture
from belyi.equations import (
    aux_points,
    build_system,
    ChartTransformRequired,
    compute_t,
    distinctness_constraints,
    dump_system,
    enumerate_cases,
    expected_rr_dimension,
    parse_system,
    substitute_assignment,
    vanishing_equations,
    _Ring,
)
from belyi.groebner import EMPTY, NONEMPTY, is_empty_variety
from belyi.mpoly import MultiPoly
from belyi.passports import ramification_type


class TestVanishingEquations:
    def test_line_chart_taylor(self):
        # a1 + a2 x + a3 x^2 vanishing to order 2 at (x_P, y_P) on the line
        curve, rr = fixture("p1", degree=2)
        ring = _Ring(["a1", "a2", "a3", "x_P", "y_P"])
        terms = [(ring.var(f"a{i+1}"), i) for i in range(3)]
        eqs = vanishing_equations(terms, rr.basis, curve, ring, "x_P", "y_P", 2)
        a1, a2, a3 = (ring.var(f"a{i}") for i in (1, 2, 3))
        xp, yp = ring.var("x_P"), ring.var("y_P")
        assert eqs[0] == a1 + a2 * xp + a3 * xp * xp
        assert eqs[1] == a2 + 2 * a3 * xp
        assert eqs[2] == yp  # membership on the line chart is trivial

    def test_order_one_single_evaluation(self):
        curve, rr = fixture("p1", degree=1)
        ring = _Ring(["a1", "a2", "x_P", "y_P"])
        terms = [(ring.var("a1"), 0), (ring.var("a2"), 1)]
        eqs = vanishing_equations(terms, rr.basis, curve, ring, "x_P", "y_P", 1,
                                  include_membership=False)
        assert len(eqs) == 1
        assert eqs[0] == ring.var("a1") + ring.var("a2") * ring.var("x_P")


class TestDistinctness:
    def _ring_and_coords(self):
        ring = _Ring(["x_P", "y_P", "x_Q", "y_Q", "z_PQ"])
        coords = {"P": (ring.var("x_P"), ring.var("y_P")),
                  "Q": (ring.var("x_Q"), ring.var("y_Q"))}
        return ring, coords

    def test_product_gadget(self):
        ring, coords = self._ring_and_coords()
        eqs = distinctness_constraints([("P", "Q")], [], ring, coords,
                                       {("P", "Q"): "z_PQ"})
        xp, yp, xq, yq, z = (ring.var(n) for n in
                             ("x_P", "y_P", "x_Q", "y_Q", "z_PQ"))
        one = ring.const(1)
        assert eqs == [((xp - xq) * z - one) * ((yp - yq) * z - one)]

    def test_identified_pair(self):
        ring, coords = self._ring_and_coords()
        eqs = distinctness_constraints([], [("P", "Q")], ring, coords, {})
        assert eqs == [ring.var("x_P") - ring.var("x_Q"),
                       ring.var("y_P") - ring.var("y_Q")]

    def test_contradictory_pattern(self):
        ring, coords = self._ring_and_coords()
        with pytest.raises(ValueError):
            distinctness_constraints([("P", "Q")], [("Q", "P")], ring, coords,
                                     {("P", "Q"): "z_PQ"})

    def test_five_points_ten_constraints(self):
        names = []
        labels = ["P", "Q", "R", "Y", "D"]
        for lbl in labels:
            names += [f"x_{lbl}", f"y_{lbl}"]
        pairs = list(itertools.combinations(labels, 2))
        z_names = {p: f"z_{p[0]}{p[1]}" for p in pairs}
        names += list(z_names.values())
        ring = _Ring(names)
        coords = {lbl: (ring.var(f"x_{lbl}"), ring.var(f"y_{lbl}"))
                  for lbl in labels}
        eqs = distinctness_constraints(pairs, [], ring, coords, z_names)
        assert len(eqs) == 10 and len(z_names) == 10


class TestEnumerateCases:
    def test_fermat_mu_range(self):
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (7,), (7,), (7,))
        cases = enumerate_cases(curve, rr, lam)
        mus_at_top = sorted({c.mu for c in cases if c.k == 8 and c.l == 8})
        assert mus_at_top == [(1, 1, 1), (2, 1), (3,)]

    def test_genus_mismatch_empty(self):
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (6, 1), (7,), (7,))  # no genus at all
        assert enumerate_cases(curve, rr, lam) == []
        lam0 = ramification_type(7, (7,), (2, 2, 2, 1), (3, 2, 1, 1))
        from belyi.passports import rh_genus
        assert rh_genus(lam0) == 0  # wrong genus for this curve
        assert enumerate_cases(curve, rr, lam0) == []

    def test_general_case_first(self):
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (7,), (7,), (7,))
        first = enumerate_cases(curve, rr, lam)[0]
        assert first.k == rr.dimension and first.l == rr.dimension
        assert first.pattern == ()
        assert first.mu == (3,)

    def test_p1_general_mu_empty(self):
        # m*d0 = d on the line, so no cancelling points arise
        curve, rr = fixture("p1", degree=2)
        lam = ramification_type(2, (2,), (1, 1), (2,))
        first = enumerate_cases(curve, rr, lam)[0]
        assert first.k == first.l == 3
        assert first.mu == ()


class TestBuildSystemCounts:
    def test_fermat_headline_counts(self):
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (7,), (7,), (7,))
        general = enumerate_cases(curve, rr, lam)[0]
        system = build_system(curve, rr, lam, general)
        assert system.core_shape() == (33, 41)
        assert system.total_shape() == (34, 42)
        c = system.counts
        # the published arithmetic: 8+7+2*4+10 variables, 8*3+7+10 equations
        assert c["coefficient_vars"] == 8 + 7
        assert c["coordinate_vars"] == 2 * 4
        assert c["distinctness_vars"] == 10
        assert c["vanishing_eqs"] + c["membership_eqs"] == 8 * 3 + 7
        assert c["distinctness_eqs"] == 10

    def test_counts_closed_form_random_cases(self):
        rng = random.Random(77)
        checked = 0
        pools = []
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (7,), (7,), (7,))
        pools.append((curve, rr, lam, enumerate_cases(curve, rr, lam)))
        curve2, rr2 = fixture("p1", degree=3)
        lam2 = ramification_type(3, (2, 1), (2, 1), (3,))
        pools.append((curve2, rr2, lam2, enumerate_cases(curve2, rr2, lam2)))
        while checked < 20:
            curve, rr, lam, cases = pools[checked % 2]
            case = rng.choice(cases)
            try:
                system = build_system(curve, rr, lam, case)
            except ChartTransformRequired:
                continue
            checked += 1
            pts = aux_points(lam, case.mu)
            assigned = dict(case.pattern)
            free = [p for p in pts if p.label not in assigned]
            n_affine_supp = sum(1 for sp in rr.base_divisor if not sp.at_infinity)
            pairs = (len(free) * (len(free) - 1)) // 2 + len(free) * n_affine_supp
            m = max(rr.tiers[case.k - 1], rr.tiers[case.l - 1])
            caps = 0
            for p in pts:
                if p.label not in assigned:
                    continue
                cap = m - p.order
                for which in p.exprs:
                    if which == "a":
                        used = range(case.k)
                    elif which == "b":
                        used = range(case.l)
                    else:
                        used = range(max(case.k, case.l))
                    caps += sum(1 for v in used if rr.tiers[v] > cap)
            want_vars = (case.k + case.l - 1 + 2 * len(free) + pairs, )
            want_eqs = (sum(p.order * len(p.exprs) for p in free)
                        + len(free) + caps + pairs)
            assert system.counts["variables_core"] == want_vars[0]
            assert system.counts["equations_core"] == want_eqs

    def test_every_equation_uses_declared_variables_only(self):
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (7,), (7,), (7,))
        system = build_system(curve, rr, lam, enumerate_cases(curve, rr, lam)[0])
        for eq in system.equations:
            assert eq.arity == len(system.variables)

    def test_vanishing_degree_totals(self):
        # imposed vanishing on `a` is d + sum(mu) = m*d0 across P and Y points
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (7,), (7,), (7,))
        for case in enumerate_cases(curve, rr, lam)[:6]:
            m = max(rr.tiers[case.k - 1], rr.tiers[case.l - 1])
            pts = aux_points(lam, case.mu)
            total_a = sum(p.order for p in pts if "a" in p.exprs)
            assert total_a == lam.degree + sum(case.mu) == m * rr.degree


class TestChartFlags:
    def test_affine_base_identification_flagged(self):
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (7,), (7,), (7,))
        cases = enumerate_cases(curve, rr, lam)
        flagged = [c for c in cases if c.pattern]
        assert flagged
        with pytest.raises(ChartTransformRequired):
            build_system(curve, rr, lam, flagged[0])

    def test_infinite_identification_built(self):
        curve, rr = fixture("p1", degree=2)
        lam = ramification_type(2, (2,), (1, 1), (2,))
        cases = enumerate_cases(curve, rr, lam)
        case = next(c for c in cases
                    if c.k == 3 and c.l == 1 and c.pattern
                    and c.pattern[0][0] == "R1")
        system = build_system(curve, rr, lam, case)
        # R1 lives at the infinite base point: no coordinates, no membership
        assert "x_R1" not in system.variables
        assert system.counts["tier_cap_eqs"] == 0

    def test_infinite_identification_with_impossible_stratum(self):
        # (k,l)=(3,3) forces b to have a full-order pole, so pinning R1 at the
        # base point contradicts itself; the emitted caps make the system empty
        curve, rr = fixture("p1", degree=2)
        lam = ramification_type(2, (2,), (1, 1), (2,))
        cases = enumerate_cases(curve, rr, lam)
        case = next(c for c in cases
                    if c.k == 3 and c.l == 3 and c.pattern
                    and c.pattern[0][0] == "R1")
        system = build_system(curve, rr, lam, case)
        assert system.counts["tier_cap_eqs"] >= 1
        verdict = is_empty_variety(list(system.equations))
        assert verdict.verdict == EMPTY


class TestWitnessSubstitution:
    def test_x_squared(self):
        # phi = x^2 solves the (k,l)=(3,1) stratum with R1 at infinity
        curve, rr = fixture("p1", degree=2)
        lam = ramification_type(2, (2,), (1, 1), (2,))
        case = next(c for c in enumerate_cases(curve, rr, lam)
                    if c.k == 3 and c.l == 1 and c.pattern
                    and c.pattern[0][0] == "R1")
        system = build_system(curve, rr, lam, case)
        assign = {
            "a1": Fraction(0), "a2": Fraction(0), "a3": Fraction(1),
            "x_P1": Fraction(0), "y_P1": Fraction(0),
            "x_Q1": Fraction(1), "y_Q1": Fraction(0),
            "x_Q2": Fraction(-1), "y_Q2": Fraction(0),
            "z_P1Q1": Fraction(-1), "z_P1Q2": Fraction(1),
            "z_Q1Q2": Fraction(1, 2), "w": Fraction(1),
        }
        assert all(r == 0 for r in substitute_assignment(system, assign))

    def test_cubic_witness(self):
        # phi = 3x^2 - 2x^3 for type (2,1 / 2,1 / 3): zeros at 0 (double) and
        # 3/2; phi - 1 = -(x-1)^2(2x+1); triple pole at infinity
        curve, rr = fixture("p1", degree=3)
        lam = ramification_type(3, (2, 1), (2, 1), (3,))
        case = next(c for c in enumerate_cases(curve, rr, lam)
                    if c.k == 4 and c.l == 1 and c.pattern
                    and c.pattern[0][0] == "R1")
        system = build_system(curve, rr, lam, case)
        assign = {
            "a1": Fraction(0), "a2": Fraction(0),
            "a3": Fraction(3), "a4": Fraction(-2),
            "x_P1": Fraction(0), "y_P1": Fraction(0),
            "x_P2": Fraction(3, 2), "y_P2": Fraction(0),
            "x_Q1": Fraction(1), "y_Q1": Fraction(0),
            "x_Q2": Fraction(-1, 2), "y_Q2": Fraction(0),
            "z_P1P2": Fraction(-2, 3), "z_P1Q1": Fraction(-1),
            "z_P1Q2": Fraction(2), "z_P2Q1": Fraction(2),
            "z_P2Q2": Fraction(1, 2), "z_Q1Q2": Fraction(2, 3),
            "w": Fraction(-1, 2),
        }
        assert all(r == 0 for r in substitute_assignment(system, assign))


class TestRowCorrectness:
    def test_first_derivative_row_numeric_oracle(self):
        """Coefficients solving the j=0,1 rows make the function vanish to
        second order along the curve, checked by numeric differentiation."""
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (7,), (7,), (7,))
        system = build_system(curve, rr, lam, enumerate_cases(curve, rr, lam)[0])
        row0, row1 = system.equations[0], system.equations[1]
        idx = {n: i for i, n in enumerate(system.variables)}

        with mpmath.workdps(60):
            x0 = mpmath.mpf(1) / 3
            y0 = (1 - x0 ** 4) ** mpmath.mpf("0.25")

            def eval_row(row, avals):
                total = mpmath.mpf(0)
                point = {idx["x_P1"]: x0, idx["y_P1"]: y0}
                for e, c in row.terms.items():
                    term = mpmath.mpf(c.numerator) / c.denominator
                    for vi, ei in enumerate(e):
                        if not ei:
                            continue
                        if vi in point:
                            term *= point[vi] ** ei
                        else:
                            name = system.variables[vi]
                            term *= avals[name] ** ei
                    total += term
                return total

            # solve the two rows for a1, a2 with the rest fixed
            fixed = {f"a{i}": mpmath.mpf(v) for i, v in
                     zip(range(3, 9), (2, -1, 3, 1, -2, 1))}
            import itertools as it
            # rows are linear in the a's: extract coefficients numerically
            def linear_coeffs(row):
                base = eval_row(row, {**fixed, "a1": mpmath.mpf(0),
                                      "a2": mpmath.mpf(0)})
                c1 = eval_row(row, {**fixed, "a1": mpmath.mpf(1),
                                    "a2": mpmath.mpf(0)}) - base
                c2 = eval_row(row, {**fixed, "a1": mpmath.mpf(0),
                                    "a2": mpmath.mpf(1)}) - base
                return c1, c2, base

            c11, c12, b1 = linear_coeffs(row0)
            c21, c22, b2 = linear_coeffs(row1)
            det = c11 * c22 - c12 * c21
            a1 = (-b1 * c22 + b2 * c12) / det
            a2 = (-c11 * b2 + c21 * b1) / det
            avals = {**fixed, "a1": a1, "a2": a2}

            def combo(x):
                y = (1 - x ** 4) ** mpmath.mpf("0.25")
                total = mpmath.mpf(0)
                for i, g in enumerate(rr.basis, start=1):
                    num = _eval2(g.num, x, y)
                    den = _eval2(g.den, x, y)
                    total += avals[f"a{i}"] * num / den
                return total

            # the combination vanishes to order >= 2 at x0 along the curve
            assert abs(combo(x0)) < mpmath.mpf("1e-45")
            assert abs(mpmath.diff(combo, x0)) < mpmath.mpf("1e-40")
            # sanity: a generic combination does not
            generic = {**avals, "a2": avals["a2"] + 1}

            def combo_bad(x):
                y = (1 - x ** 4) ** mpmath.mpf("0.25")
                return sum(generic[f"a{i}"] * _eval2(g.num, x, y) / _eval2(g.den, x, y)
                           for i, g in enumerate(rr.basis, start=1))

            assert abs(mpmath.diff(combo_bad, x0)) > mpmath.mpf("1e-8")


def _eval2(poly, x, y):
    total = mpmath.mpf(0)
    for (ex, ey), c in poly.terms.items():
        total += mpmath.mpf(c.numerator) / c.denominator * x ** ex * y ** ey
    return total


class TestExportFormat:
    def test_roundtrip(self):
        curve, rr = fixture("p1", degree=2)
        lam = ramification_type(2, (2,), (1, 1), (2,))
        system = build_system(curve, rr, lam, enumerate_cases(curve, rr, lam)[0])
        text = dump_system(system)
        names, polys = parse_system(text)
        assert names == list(system.variables)
        assert polys == list(system.equations)

    def test_bit_exact_across_rebuilds(self):
        curve, rr = fixture("fermat4")
        lam = ramification_type(7, (7,), (7,), (7,))
        case = enumerate_cases(curve, rr, lam)[0]
        a = dump_system(build_system(curve, rr, lam, case))
        b = dump_system(build_system(curve, rr, lam, case))
        assert a == b

    def test_zero_poly_roundtrip(self):
        from belyi.equations import _parse_poly
        assert _parse_poly("0", {}, 0).is_zero()
