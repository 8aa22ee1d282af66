"""Explicit polynomial systems whose solutions are the degree-d covers.

For a curve with supplied Riemann-Roch data and a ramification type, every
candidate cover is a ratio a/b of basis combinations, normalized by the
stratum (k, l): a uses the first k basis elements with a_k nonzero, b the
first l with the top coefficient set to 1.  A system imposes, per auxiliary
point, membership in the curve and vanishing of a, a - b, b (and both a and
b at the extra cancelling points) to prescribed orders, via derivatives
along the curve with all denominators cleared; distinctness of points is
enforced by inverse-witness product gadgets.

v1 works in one affine chart with x - x(Z) as the uniformizer at every
tracked point.  Cases that identify an auxiliary point with an affine base
point are enumerated but raise :class:`ChartTransformRequired` instead of
emitting wrong bookkeeping; identification with an infinite base point over
a reduced single-point divisor is handled exactly by linear tier caps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .curves import (
    ChartError,
    CurveModel,
    DivisorPoint,
    RRData,
    RationalFunction,
    compute_t,
    dx_chain,
    expected_rr_dimension,
)
from .mpoly import MultiPoly, grlex_key
from .passports import RamificationType, rh_genus, _partitions_desc


class ChartTransformRequired(Exception):
    """The case needs chart algebra beyond the fixed affine-x convention."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class SystemCase:
    """One stratum of the case decomposition.

    k, l: basis cut indices (1-based; a_k nonzero, b_l normalized to 1).
    mu: partition of m*d0 - d listing extra cancelling-point orders.
    pattern: identifications (aux point label, base-divisor support index).
    """

    k: int
    l: int
    mu: tuple[int, ...]
    pattern: tuple[tuple[str, int], ...] = ()
    chart: str = "affine-x"

    def label(self) -> str:
        mu = "+".join(str(p) for p in self.mu) if self.mu else "0"
        pat = ",".join(f"{a}=D{i + 1}" for a, i in self.pattern) or "general"
        return f"k={self.k},l={self.l},mu={mu},{pat}"


@dataclass(frozen=True)
class PolynomialSystem:
    """Named variables plus equations over them, with an itemized census."""

    variables: tuple[str, ...]
    equations: tuple[MultiPoly, ...]
    counts: dict
    case: SystemCase
    description: str = ""

    def __post_init__(self):
        for eq in self.equations:
            if eq.arity != len(self.variables):
                raise ValueError("equation mentions undeclared variables")

    def core_shape(self) -> tuple[int, int]:
        """(variables, equations) before the nonvanishing gadget."""
        return self.counts["variables_core"], self.counts["equations_core"]

    def total_shape(self) -> tuple[int, int]:
        return len(self.variables), len(self.equations)


@dataclass(frozen=True)
class AuxPoint:
    label: str              # P1, Q2, R1, Y1, ...
    exprs: tuple[str, ...]  # subset of ("a", "a-b", "b")
    order: int


def aux_points(lam: RamificationType, mu: tuple[int, ...]) -> list[AuxPoint]:
    pts: list[AuxPoint] = []
    for i, part in enumerate(lam.lambda0.parts, start=1):
        pts.append(AuxPoint(f"P{i}", ("a",), part))
    for i, part in enumerate(lam.lambda1.parts, start=1):
        pts.append(AuxPoint(f"Q{i}", ("a-b",), part))
    for i, part in enumerate(lam.lambda_inf.parts, start=1):
        pts.append(AuxPoint(f"R{i}", ("b",), part))
    for j, part in enumerate(mu, start=1):
        pts.append(AuxPoint(f"Y{j}", ("a", "b"), part))
    return pts


def enumerate_cases(curve: CurveModel, rr: RRData,
                    lam: RamificationType) -> list[SystemCase]:
    """All (k, l, mu, pattern) strata, general case first.

    Empty when the type's forced genus differs from the curve's: no cover
    exists then and the trivial output is the honest one.
    """
    if rh_genus(lam) != curve.genus:
        return []
    n = rr.dimension
    d = lam.degree
    d0 = rr.degree
    supp = len(rr.base_divisor)
    cases: list[SystemCase] = []
    for k in range(n, 0, -1):
        for l in range(n, 0, -1):
            m = max(rr.tiers[k - 1], rr.tiers[l - 1])
            excess = m * d0 - d
            if excess < 0:
                continue
            mus = [()] if excess == 0 else list(_partitions_desc(excess))
            for mu in mus:
                labels = [p.label for p in aux_points(lam, mu)]
                for pattern in _patterns(labels, supp):
                    cases.append(SystemCase(k, l, tuple(mu), pattern))
    return cases


def _patterns(labels: Sequence[str], supp_count: int):
    out: list[tuple[tuple[str, int], ...]] = [()]
    for size in range(1, min(len(labels), supp_count) + 1):
        for subset in itertools.combinations(range(len(labels)), size):
            for targets in itertools.permutations(range(supp_count), size):
                out.append(tuple((labels[i], t) for i, t in zip(subset, targets)))
    return out


# -- the builder --------------------------------------------------------------


class _Ring:
    """Bookkeeping for the system's named variable ring."""

    def __init__(self, names: list[str]):
        self.names = list(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.arity = len(self.names)

    def var(self, name: str) -> MultiPoly:
        return MultiPoly.variable(self.arity, self.index[name])

    def const(self, value) -> MultiPoly:
        return MultiPoly.constant(self.arity, value)

    def embed_bivariate(self, p: MultiPoly, x_name: str, y_name: str) -> MultiPoly:
        """Map a polynomial in (x, y) to one in (x_Z, y_Z)."""
        return p.substitute_poly({}, self.arity,
                                 reindex={0: self.index[x_name], 1: self.index[y_name]})


def _lcm_by_division(dens: list[MultiPoly]) -> MultiPoly:
    """lcm for denominators forming a divisibility chain; falls back to the
    product of incomparable factors (over-clearing, still a valid multiple)."""
    acc = dens[0]
    for den in dens[1:]:
        if acc.try_divide(den) is not None:
            continue
        if den.try_divide(acc) is not None:
            acc = den
        else:
            acc = acc * den
    return acc


def cleared_derivative_rows(basis: Sequence[RationalFunction], curve: CurveModel,
                            max_order: int) -> list[list[tuple[MultiPoly, MultiPoly]]]:
    """rows[j][v] = (numerator, denominator) of the j-th derivative of basis[v]
    along the curve, plus nothing else; clearing happens per equation later."""
    chains = [dx_chain(g, curve, max_order) for g in basis]
    rows = []
    for j in range(max_order + 1):
        rows.append([(chains[v][j].num, chains[v][j].den) for v in range(len(basis))])
    return rows


def vanishing_equations(coeff_terms: Sequence[tuple[MultiPoly, int]],
                        basis: Sequence[RationalFunction],
                        curve: CurveModel,
                        ring: _Ring,
                        x_name: str, y_name: str,
                        order: int,
                        rows: Optional[list[list[tuple[MultiPoly, MultiPoly]]]] = None,
                        include_membership: bool = True) -> list[MultiPoly]:
    """Vanishing of sum(coeff_v * g_v) to the given order at (x_Z, y_Z).

    Emits, for j = 0..order-1, the cleared equation
        sum_v coeff_v * (d/dx)^j g_v (x_Z, y_Z) = 0,
    where d/dx follows the curve via the implicit slope and each equation is
    multiplied through by the least common denominator of its derivative
    row; membership f(x_Z, y_Z) = 0 is appended once when requested.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if rows is None:
        rows = cleared_derivative_rows(basis, curve, order - 1)
    used = [v for _, v in coeff_terms]
    eqs: list[MultiPoly] = []
    for j in range(order):
        dens = [rows[j][v][1] for v in used]
        lcd = _lcm_by_division(dens)
        eq = ring.const(0)
        for coeff, v in coeff_terms:
            num, den = rows[j][v]
            if num.is_zero():
                continue
            q = lcd.try_divide(den)
            if q is None:
                raise ChartError("denominator does not divide the row lcd")
            cleared = ring.embed_bivariate(num * q, x_name, y_name)
            eq = eq + coeff * cleared
        eqs.append(eq)
    if include_membership:
        eqs.append(ring.embed_bivariate(curve.defining_polynomial, x_name, y_name))
    return eqs


def distinctness_constraints(pairs: Sequence[tuple[str, str]],
                             identified: Sequence[tuple[str, str]],
                             ring: _Ring,
                             coords: dict[str, tuple[MultiPoly, MultiPoly]],
                             z_names: dict[tuple[str, str], str]) -> list[MultiPoly]:
    """Inverse-witness distinctness for each required pair; coordinate
    equalities for identified pairs.

    For a pair (Z, W) required distinct, with witness variable z:
        ((x_Z - x_W) z - 1)((y_Z - y_W) z - 1) = 0
    forces x or y coordinates to differ.  Identified pairs contribute
    x_Z - x_W and y_Z - y_W instead.
    """
    ident_set = {tuple(sorted(p)) for p in identified}
    for p in pairs:
        if tuple(sorted(p)) in ident_set:
            raise ValueError(f"pair {p} both identified and required distinct")
    eqs = []
    for a, b in pairs:
        xa, ya = coords[a]
        xb, yb = coords[b]
        z = ring.var(z_names[(a, b)])
        one = ring.const(1)
        eqs.append(((xa - xb) * z - one) * ((ya - yb) * z - one))
    for a, b in identified:
        xa, ya = coords[a]
        xb, yb = coords[b]
        eqs.append(xa - xb)
        eqs.append(ya - yb)
    return eqs


def build_system(curve: CurveModel, rr: RRData, lam: RamificationType,
                 case: SystemCase) -> PolynomialSystem:
    """The full polynomial system of one case.

    Raises :class:`ChartTransformRequired` for identifications with affine
    base points (order bookkeeping needs another chart) and for divisors
    where the infinite-identification tier caps are not exact.
    """
    n = rr.dimension
    d = lam.degree
    d0 = rr.degree
    if not (1 <= case.k <= n and 1 <= case.l <= n):
        raise ValueError("k, l out of range")
    m = max(rr.tiers[case.k - 1], rr.tiers[case.l - 1])
    excess = m * d0 - d
    if excess < 0 or sum(case.mu) != excess:
        raise ValueError("mu does not partition m*d0 - d")
    points = aux_points(lam, case.mu)
    by_label = {p.label: p for p in points}
    assigned = dict(case.pattern)
    for label in assigned:
        if label not in by_label:
            raise ValueError(f"pattern names unknown point {label}")

    # Split assignments by the nature of the base point.
    infinite_assigned: dict[str, DivisorPoint] = {}
    for label, supp_idx in assigned.items():
        supp = rr.base_divisor[supp_idx]
        if not supp.at_infinity:
            raise ChartTransformRequired(
                f"{label} identified with affine base point {supp.label()}: "
                "vanishing orders against the base divisor need a chart transform")
        if len(rr.base_divisor) != 1 or supp.multiplicity != 1:
            raise ChartTransformRequired(
                "infinite identification needs a reduced single-point base divisor")
        if list(rr.tiers) != sorted(set(rr.tiers)):
            raise ChartTransformRequired(
                "infinite identification needs strictly increasing tiers")
        infinite_assigned[label] = supp

    free_points = [p for p in points if p.label not in infinite_assigned]

    # Variable layout: coefficients, coordinates, distinctness, gadget.
    names: list[str] = [f"a{i}" for i in range(1, case.k + 1)]
    names += [f"b{i}" for i in range(1, case.l)]
    coeff_count = len(names)
    for p in free_points:
        names += [f"x_{p.label}", f"y_{p.label}"]
    coord_count = 2 * len(free_points)

    affine_supp = [(i, sp) for i, sp in enumerate(rr.base_divisor) if not sp.at_infinity]
    free_labels = [p.label for p in free_points]
    supp_labels = [f"D{i + 1}" for i, _ in affine_supp]
    # Distinctness is only in question when a variable point is involved;
    # base points are pairwise distinct by the divisor data.
    pair_list = [(a, b) for a, b in itertools.combinations(free_labels, 2)]
    pair_list += [(a, b) for a in free_labels for b in supp_labels]
    z_names = {}
    for a, b in pair_list:
        z = f"z_{a}{b}"
        z_names[(a, b)] = z
        names.append(z)
    names.append("w")
    ring = _Ring(names)

    coords: dict[str, tuple[MultiPoly, MultiPoly]] = {}
    for p in free_points:
        coords[p.label] = (ring.var(f"x_{p.label}"), ring.var(f"y_{p.label}"))
    for idx, sp in affine_supp:
        coords[f"D{idx + 1}"] = (ring.const(sp.x), ring.const(sp.y))

    # Linear-form coefficients per expression, as ring polynomials.
    def expr_terms(which: str) -> list[tuple[MultiPoly, int]]:
        terms: list[tuple[MultiPoly, int]] = []
        if which == "a":
            for v in range(case.k):
                terms.append((ring.var(f"a{v + 1}"), v))
        elif which == "b":
            for v in range(case.l - 1):
                terms.append((ring.var(f"b{v + 1}"), v))
            terms.append((ring.const(1), case.l - 1))
        elif which == "a-b":
            for v in range(max(case.k, case.l)):
                c = ring.const(0)
                if v < case.k:
                    c = c + ring.var(f"a{v + 1}")
                if v < case.l - 1:
                    c = c - ring.var(f"b{v + 1}")
                if v == case.l - 1:
                    c = c - ring.const(1)
                if not c.is_zero():
                    terms.append((c, v))
        else:
            raise ValueError(which)
        return terms

    max_order = max((p.order for p in free_points), default=1)
    rows = cleared_derivative_rows(rr.basis, curve, max_order - 1)

    equations: list[MultiPoly] = []
    n_membership = 0
    n_vanishing = 0
    n_tier_caps = 0
    for p in points:
        if p.label in infinite_assigned:
            # div(expr) carries p.order at the infinite base point, so the
            # pole there is capped: coefficients above tier m - order vanish.
            cap = m - p.order
            for which in p.exprs:
                for coeff, v in expr_terms(which):
                    if rr.tiers[v] > cap:
                        equations.append(coeff)
                        n_tier_caps += 1
            continue
        for which in p.exprs:
            eqs = vanishing_equations(
                expr_terms(which), rr.basis, curve, ring,
                f"x_{p.label}", f"y_{p.label}", p.order,
                rows=rows, include_membership=False)
            equations.extend(eqs)
            n_vanishing += len(eqs)
        equations.append(ring.embed_bivariate(
            curve.defining_polynomial, f"x_{p.label}", f"y_{p.label}"))
        n_membership += 1

    dist_eqs = distinctness_constraints(pair_list, [], ring, coords, z_names)
    equations.extend(dist_eqs)

    core_vars = coeff_count + coord_count + len(pair_list)
    core_eqs = n_vanishing + n_membership + n_tier_caps + len(dist_eqs)

    # a_k nonvanishing gadget, itemized on top of the core counts.
    equations.append(ring.var("w") * ring.var(f"a{case.k}") - ring.const(1))

    counts = {
        "variables_core": core_vars,
        "equations_core": core_eqs,
        "variables_total": len(names),
        "equations_total": len(equations),
        "coefficient_vars": coeff_count,
        "coordinate_vars": coord_count,
        "distinctness_vars": len(pair_list),
        "gadget_vars": 1,
        "membership_eqs": n_membership,
        "vanishing_eqs": n_vanishing,
        "tier_cap_eqs": n_tier_caps,
        "distinctness_eqs": len(dist_eqs),
        "gadget_eqs": 1,
    }
    description = (f"curve={curve.name} lambda={lam} case[{case.label()}] "
                   f"m={m} excess={excess}")
    return PolynomialSystem(tuple(names), tuple(equations), counts, case, description)


# -- export format -------------------------------------------------------------


def dump_system(system: PolynomialSystem) -> str:
    """Text export: `var` header lines then one `poly:` line per equation.

    Terms are sorted by graded-lex on the declared variable order; rationals
    are in lowest terms; output is a pure function of the system.
    """
    lines = [f"# {system.description}"] if system.description else []
    counts = system.counts
    lines.append(f"# core {counts['variables_core']} variables, "
                 f"{counts['equations_core']} equations; "
                 f"gadget adds {counts['gadget_vars']}/{counts['gadget_eqs']}")
    for name in system.variables:
        lines.append(f"var {name}")
    names = list(system.variables)
    for eq in system.equations:
        lines.append("poly: " + eq.format(names, grlex_key))
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> tuple[list[str], list[MultiPoly]]:
    """Parse the export format back into names and equations."""
    names: list[str] = []
    polys: list[MultiPoly] = []
    body: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("var "):
            if body:
                raise ValueError("var line after poly lines")
            names.append(line[4:].strip())
        elif line.startswith("poly:"):
            body.append(line[5:].strip())
        else:
            raise ValueError(f"unrecognized line {line!r}")
    index = {n: i for i, n in enumerate(names)}
    arity = len(names)
    for payload in body:
        polys.append(_parse_poly(payload, index, arity))
    return names, polys


def _parse_poly(payload: str, index: dict[str, int], arity: int) -> MultiPoly:
    if payload == "0":
        return MultiPoly(arity)
    terms: dict[tuple[int, ...], Fraction] = {}
    chunks = []
    current = ""
    for ch in payload:
        if ch in "+-" and current:
            chunks.append(current)
            current = ch
        else:
            current += ch
    if current:
        chunks.append(current)
    for chunk in chunks:
        chunk = chunk.strip()
        sign = 1
        if chunk.startswith("+"):
            chunk = chunk[1:]
        elif chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:]
        factors = chunk.split("*")
        coeff = Fraction(sign)
        exps = [0] * arity
        for i, factor in enumerate(factors):
            factor = factor.strip()
            if i == 0 and (factor[0].isdigit() or "/" in factor):
                coeff *= Fraction(factor)
                continue
            if "^" in factor:
                base, _, e = factor.partition("^")
                exps[index[base]] += int(e)
            else:
                exps[index[factor]] += 1
        key = tuple(exps)
        acc = terms.get(key, Fraction(0)) + coeff
        if acc:
            terms[key] = acc
        else:
            terms.pop(key, None)
    return MultiPoly(arity, terms)


def substitute_assignment(system: PolynomialSystem,
                          assignment: dict[str, Fraction]) -> list[Fraction]:
    """Residuals of every equation at a full variable assignment."""
    values = {}
    for i, name in enumerate(system.variables):
        if name not in assignment:
            raise KeyError(f"assignment missing {name}")
        values[i] = Fraction(assignment[name])
    out = []
    for eq in system.equations:
        out.append(eq.evaluate(values).constant_value())
    return out
