"""Buchberger engine over the rationals and the variety-emptiness test.

Exact arithmetic throughout; no modular shortcuts.  Pair selection is the
normal strategy (least lcm total degree), ties broken by input index, so a
run is a pure function of the generators and the monomial order.  Limits
are first-class: exceeding them raises :class:`LimitExceeded` carrying
progress statistics, never a wrong answer.  Emptiness of the zero set over
the algebraic closure is decided by whether the reduced basis is {1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .mpoly import (
    ArityMismatch,
    MonomialOrder,
    MultiPoly,
    ORDERS,
    grevlex_key,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


@dataclass
class Limits:
    max_pairs: int = 20000
    max_basis: int = 2000
    max_degree: int = 80


@dataclass
class Stats:
    pairs_processed: int = 0
    pairs_skipped: int = 0
    reductions_to_zero: int = 0
    basis_size: int = 0
    max_degree_seen: int = 0

    def as_dict(self) -> dict:
        return {
            "pairs_processed": self.pairs_processed,
            "pairs_skipped": self.pairs_skipped,
            "reductions_to_zero": self.reductions_to_zero,
            "basis_size": self.basis_size,
            "max_degree_seen": self.max_degree_seen,
        }


class LimitExceeded(Exception):
    """Computation refused to continue; carries progress statistics."""

    def __init__(self, message: str, stats: Stats):
        super().__init__(message)
        self.stats = stats


def reduce_poly(p: MultiPoly, basis: Iterable[MultiPoly],
                order: MonomialOrder = grevlex_key) -> MultiPoly:
    """Normal form of p modulo basis: no remaining term is divisible by any
    basis leading term."""
    basis = [b for b in basis if not b.is_zero()]
    for b in basis:
        if b.arity != p.arity:
            raise ArityMismatch("basis arity differs from polynomial arity")
    if not basis:
        return p
    leads = [b.leading_term(order) for b in basis]
    remainder_terms: dict = {}
    work = dict(p.terms)
    while work:
        e = max(work, key=order)
        c = work[e]
        for (le, lc), b in zip(leads, basis):
            if monomial_divides(le, e):
                shift = monomial_div(e, le)
                scale = c / lc
                for be, bc in b.terms.items():
                    key = monomial_mul(be, shift)
                    acc = work.get(key, Fraction(0)) - bc * scale
                    if acc:
                        work[key] = acc
                    else:
                        work.pop(key, None)
                break
        else:
            remainder_terms[e] = c
            del work[e]
    return MultiPoly(p.arity, remainder_terms)


def _s_polynomial(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    fe, fc = f.leading_term(order)
    ge, gc = g.leading_term(order)
    lcm = monomial_lcm(fe, ge)
    mf = MultiPoly.monomial(f.arity, monomial_div(lcm, fe), Fraction(1) / fc)
    mg = MultiPoly.monomial(g.arity, monomial_div(lcm, ge), Fraction(1) / gc)
    return f * mf - g * mg


def interreduce(basis: list[MultiPoly], order: MonomialOrder = grevlex_key) -> list[MultiPoly]:
    """The reduced basis of a Groebner basis: minimal, monic, tails in
    normal form.  Only valid input is a basis that is already Groebner."""
    polys = [b for b in basis if not b.is_zero()]
    polys.sort(key=lambda b: order(b.leading_term(order)[0]))
    minimal: list[MultiPoly] = []
    for b in polys:
        e, _ = b.leading_term(order)
        if any(monomial_divides(m.leading_term(order)[0], e) for m in minimal):
            continue
        minimal.append(b)
    reduced = []
    for i, b in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = reduce_poly(b, others, order)
        _, lc = r.leading_term(order)
        reduced.append(r * (Fraction(1) / lc))
    reduced.sort(key=lambda b: order(b.leading_term(order)[0]), reverse=True)
    return reduced


def buchberger(gens: list[MultiPoly], order: MonomialOrder = grevlex_key,
               limits: Optional[Limits] = None,
               stats: Optional[Stats] = None) -> list[MultiPoly]:
    """A reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy: the pending pair with the least lcm total
    degree runs first, ties resolved by (i, j) input order.  The product
    criterion skips pairs with coprime leading terms.
    """
    if not gens:
        raise ValueError("need at least one generator")
    arity = gens[0].arity
    for g in gens:
        if g.arity != arity:
            raise ArityMismatch("mixed arities in generators")
    if limits is None:
        limits = Limits()
    if stats is None:
        stats = Stats()

    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    # Monic inputs keep coefficient growth readable.
    basis = [g * (Fraction(1) / g.leading_term(order)[1]) for g in basis]
    leads = [g.leading_term(order)[0] for g in basis]

    import heapq

    heap: list[tuple[int, tuple[int, int]]] = []
    for i in range(len(basis)):
        for j in range(i):
            lcm = monomial_lcm(leads[i], leads[j])
            heapq.heappush(heap, (sum(lcm), (i, j)))

    while heap:
        _, (i, j) = heapq.heappop(heap)
        le_i, le_j = leads[i], leads[j]
        if monomial_mul(le_i, le_j) == monomial_lcm(le_i, le_j):
            stats.pairs_skipped += 1
            continue
        stats.pairs_processed += 1
        if stats.pairs_processed > limits.max_pairs:
            stats.basis_size = len(basis)
            raise LimitExceeded(
                f"pair budget {limits.max_pairs} exhausted", stats)
        s = _s_polynomial(basis[i], basis[j], order)
        r = reduce_poly(s, basis, order)
        if r.is_zero():
            stats.reductions_to_zero += 1
            continue
        deg = r.total_degree()
        stats.max_degree_seen = max(stats.max_degree_seen, deg)
        if deg > limits.max_degree:
            stats.basis_size = len(basis)
            raise LimitExceeded(
                f"degree cap {limits.max_degree} exceeded ({deg})", stats)
        r = r * (Fraction(1) / r.leading_term(order)[1])
        basis.append(r)
        leads.append(r.leading_term(order)[0])
        if len(basis) > limits.max_basis:
            stats.basis_size = len(basis)
            raise LimitExceeded(
                f"basis cap {limits.max_basis} exceeded", stats)
        new_index = len(basis) - 1
        for k in range(new_index):
            lcm = monomial_lcm(leads[new_index], leads[k])
            heapq.heappush(heap, (sum(lcm), (new_index, k)))

    result = interreduce(basis, order)
    stats.basis_size = len(result)
    return result


def is_groebner_basis(basis: list[MultiPoly], order: MonomialOrder = grevlex_key) -> bool:
    """Certificate check, independent of construction: every S-polynomial of
    basis pairs reduces to zero."""
    for i in range(len(basis)):
        for j in range(i):
            s = _s_polynomial(basis[i], basis[j], order)
            if not reduce_poly(s, basis, order).is_zero():
                return False
    return True


EMPTY = "empty"
NONEMPTY = "nonempty"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class EmptinessVerdict:
    verdict: str
    basis: Optional[tuple[MultiPoly, ...]] = None
    stats: Optional[dict] = None

    def __str__(self):
        return self.verdict


def presimplify(equations: list[MultiPoly]) -> list[MultiPoly]:
    """Substitute away variables pinned by univariate-linear generators.

    A generator c*v + e (single variable, degree 1, optional constant) pins
    v = -e/c; evaluating the other generators there preserves the ideal as
    long as the pinning generator itself is kept, which it is.
    """
    eqs = list(equations)
    if not eqs:
        return eqs
    arity = eqs[0].arity
    changed = True
    pinned: dict[int, Fraction] = {}
    while changed:
        changed = False
        for eq in eqs:
            pin = _pin_of(eq)
            if pin is None:
                continue
            var_idx, value = pin
            if var_idx in pinned:
                continue
            pinned[var_idx] = value
            changed = True
        if changed:
            eqs = [
                eq if _is_pin(eq, pinned) else eq.evaluate(pinned)
                for eq in eqs
            ]
    return eqs


def _pin_of(eq: MultiPoly) -> Optional[tuple[int, Fraction]]:
    """(variable index, forced value) when eq is c*v + e, else None."""
    terms = eq.terms
    if not 1 <= len(terms) <= 2:
        return None
    var_terms = [(e, c) for e, c in terms.items() if sum(e) == 1]
    const_terms = [(e, c) for e, c in terms.items() if sum(e) == 0]
    if len(var_terms) != 1 or len(var_terms) + len(const_terms) != len(terms):
        return None
    exps, coeff = var_terms[0]
    const = const_terms[0][1] if const_terms else Fraction(0)
    return exps.index(1), -const / coeff


def _is_pin(eq: MultiPoly, pinned: dict) -> bool:
    pin = _pin_of(eq)
    return pin is not None and pin[0] in pinned


def is_empty_variety(equations: list[MultiPoly],
                     order: MonomialOrder = grevlex_key,
                     limits: Optional[Limits] = None) -> EmptinessVerdict:
    """Whether the zero set over the algebraic closure is empty.

    empty iff the reduced basis is {1}; nonempty when a basis was computed
    and is not {1}; unknown when the limits tripped.  (The generators have
    rational coefficients, and 1 lies in the extended ideal iff it lies in
    the ideal over the rationals, so computing over Q suffices.)
    """
    stats = Stats()
    try:
        basis = buchberger(presimplify(equations), order, limits, stats)
    except LimitExceeded as exc:
        return EmptinessVerdict(UNKNOWN, None, exc.stats.as_dict())
    if len(basis) == 1 and basis[0].is_constant():
        return EmptinessVerdict(EMPTY, tuple(basis), stats.as_dict())
    return EmptinessVerdict(NONEMPTY, tuple(basis), stats.as_dict())
