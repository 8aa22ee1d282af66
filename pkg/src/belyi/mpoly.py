"""Sparse multivariate polynomials over the rationals.

Terms are stored as a map from exponent vectors (tuples of nonnegative
ints, one slot per variable) to nonzero ``Fraction`` coefficients.  Zero
coefficients are never stored, so equality of term maps is equality of
polynomials.  Everything is immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping

Exponents = tuple[int, ...]
MonomialOrder = Callable[[Exponents], object]


class ArityMismatch(ValueError):
    """Operands live in polynomial rings with different variable counts."""


def lex_key(exps: Exponents):
    return exps


def grlex_key(exps: Exponents):
    return (sum(exps), exps)


def grevlex_key(exps: Exponents):
    return (sum(exps), tuple(-e for e in reversed(exps)))


ORDERS: dict[str, MonomialOrder] = {
    "lex": lex_key,
    "grlex": grlex_key,
    "grevlex": grevlex_key,
}


def monomial_divides(a: Exponents, b: Exponents) -> bool:
    """True iff x^a divides x^b."""
    return all(ea <= eb for ea, eb in zip(a, b))


def monomial_div(a: Exponents, b: Exponents) -> Exponents:
    return tuple(ea - eb for ea, eb in zip(a, b))


def monomial_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(ea + eb for ea, eb in zip(a, b))


def monomial_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(ea, eb) for ea, eb in zip(a, b))


class MultiPoly:
    """A sparse polynomial in ``arity`` variables with Fraction coefficients."""

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Exponents, Fraction] | None = None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.arity = arity
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != arity:
                    raise ArityMismatch(
                        f"exponent vector {exps} has length {len(exps)}, expected {arity}"
                    )
                c = Fraction(coeff)
                if c:
                    clean[exps] = c
        self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "MultiPoly":
        return cls(arity)

    @classmethod
    def constant(cls, arity: int, value) -> "MultiPoly":
        c = Fraction(value)
        if not c:
            return cls(arity)
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, arity: int, index: int) -> "MultiPoly":
        exps = [0] * arity
        exps[index] = 1
        return cls(arity, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, arity: int, exps: Iterable[int], coeff=1) -> "MultiPoly":
        return cls(arity, {tuple(exps): Fraction(coeff)})

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms[(0,) * self.arity]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(e[index] for e in self.terms)

    def leading_term(self, order: MonomialOrder = grevlex_key) -> tuple[Exponents, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=order)
        return exps, self.terms[exps]

    def sorted_terms(self, order: MonomialOrder = grevlex_key) -> list[tuple[Exponents, Fraction]]:
        return [(e, self.terms[e]) for e in sorted(self.terms, key=order, reverse=True)]

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.arity, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        res = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = res.get(exps, Fraction(0)) + coeff
            if acc:
                res[exps] = acc
            else:
                res.pop(exps, None)
        return MultiPoly._raw(self.arity, res)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.arity, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly(self.arity)
            return MultiPoly._raw(self.arity, {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        res: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_mul(e1, e2)
                acc = res.get(e, Fraction(0)) + c1 * c2
                if acc:
                    res[e] = acc
                else:
                    res.pop(e, None)
        return MultiPoly._raw(self.arity, res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.arity, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @classmethod
    def _raw(cls, arity: int, terms: dict[Exponents, Fraction]) -> "MultiPoly":
        p = object.__new__(cls)
        p.arity = arity
        p.terms = terms
        p._hash = None
        return p

    # -- structure --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.arity, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def partial(self, index: int) -> "MultiPoly":
        """Partial derivative with respect to variable ``index``."""
        res: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            new = list(exps)
            new[index] = e - 1
            res[tuple(new)] = coeff * e
        return MultiPoly._raw(self.arity, res)

    def evaluate(self, values: Mapping[int, Fraction]) -> "MultiPoly":
        """Substitute exact values for the given variable indices."""
        res: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            c = coeff
            new = list(exps)
            for idx, val in values.items():
                if exps[idx]:
                    c *= Fraction(val) ** exps[idx]
                    new[idx] = 0
            if not c:
                continue
            key = tuple(new)
            acc = res.get(key, Fraction(0)) + c
            if acc:
                res[key] = acc
            else:
                res.pop(key, None)
        return MultiPoly._raw(self.arity, res)

    def substitute_poly(self, mapping: Mapping[int, "MultiPoly"], target_arity: int,
                        reindex: Mapping[int, int] | None = None) -> "MultiPoly":
        """Map this polynomial into a (possibly larger) ring.

        Variables listed in ``mapping`` are replaced by the given target-ring
        polynomials; all others are renamed through ``reindex``.
        """
        result = MultiPoly(target_arity)
        for exps, coeff in self.terms.items():
            term = MultiPoly.constant(target_arity, coeff)
            for idx, e in enumerate(exps):
                if not e:
                    continue
                if idx in mapping:
                    term = term * (mapping[idx] ** e)
                else:
                    if reindex is None or idx not in reindex:
                        raise KeyError(f"no image for variable {idx}")
                    term = term * MultiPoly.variable(target_arity, reindex[idx]) ** e
            result = result + term
        return result

    def content(self) -> Fraction:
        """Positive rational c with self/c having integer coefficients of gcd 1."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_part(self) -> "MultiPoly":
        c = self.content()
        if c == 1:
            return self
        return self * (1 / c)

    def monomial_content(self) -> Exponents:
        """Componentwise minimum exponent vector over all terms."""
        if not self.terms:
            return (0,) * self.arity
        it = iter(self.terms)
        acc = list(next(it))
        for exps in it:
            for i, e in enumerate(exps):
                if e < acc[i]:
                    acc[i] = e
        return tuple(acc)

    def shift_down(self, exps: Exponents) -> "MultiPoly":
        """Divide by the monomial x^exps (must divide every term)."""
        res = {}
        for e, c in self.terms.items():
            if not monomial_divides(exps, e):
                raise ValueError("monomial does not divide polynomial")
            res[monomial_div(e, exps)] = c
        return MultiPoly._raw(self.arity, res)

    def try_divide(self, divisor: "MultiPoly", order: MonomialOrder = grevlex_key):
        """Exact division: return self/divisor if the remainder is zero, else None."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead_e, lead_c = divisor.leading_term(order)
        quo: dict[Exponents, Fraction] = {}
        rem = self
        while rem:
            e, c = rem.leading_term(order)
            if not monomial_divides(lead_e, e):
                return None
            q_e = monomial_div(e, lead_e)
            q_c = c / lead_c
            quo[q_e] = quo.get(q_e, Fraction(0)) + q_c
            rem = rem - divisor * MultiPoly.monomial(self.arity, q_e, q_c)
        return MultiPoly(self.arity, quo)

    # -- display ----------------------------------------------------------

    def format(self, names: list[str], order: MonomialOrder = grlex_key) -> str:
        """Deterministic text form: signed terms, descending monomial order."""
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms(order):
            sign = "+" if coeff > 0 else "-"
            mag = abs(coeff)
            if mag.denominator == 1:
                cs = str(mag.numerator)
            else:
                cs = f"{mag.numerator}/{mag.denominator}"
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if factors:
                body = cs + "*" + "*".join(factors) if cs != "1" else "*".join(factors)
            else:
                body = cs
            parts.append(sign + body)
        return "".join(parts)

    def __repr__(self):
        names = [f"x{i}" for i in range(self.arity)]
        return f"MultiPoly({self.format(names)})"
