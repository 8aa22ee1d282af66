"""Affine plane-curve models, exact implicit differentiation, and fixtures.

A curve is f(x, y) = 0 with rational coefficients.  Functions on the curve
are ratios of bivariate polynomials.  Differentiation along the curve uses
the implicit slope dy/dx = -f_x/f_y; iterated derivatives stay exact, with
denominators tracked as polynomials and reduced by content, monomial and
mutual-division cancellation.

Riemann-Roch data (a base divisor, a basis of the associated section
spaces, and each element's minimal tier) is supplied as input; the two
shipped fixtures are the line with its monomial bases and the quartic
x^4 + y^4 = 1 with its ten-tier basis over the base point (1, 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .mpoly import MultiPoly

# Bivariate ring: variable 0 is x, variable 1 is y.
X = MultiPoly.variable(2, 0)
Y = MultiPoly.variable(2, 1)
ONE = MultiPoly.constant(2, 1)


def bipoly(terms: dict[tuple[int, int], object]) -> MultiPoly:
    return MultiPoly(2, {e: Fraction(c) for e, c in terms.items()})


class ChartError(Exception):
    """The fixed affine chart / uniformizer convention fails here."""


@dataclass(frozen=True)
class RationalFunction:
    """num/den with both bivariate; reduced lightly on construction."""

    num: MultiPoly
    den: MultiPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    @staticmethod
    def of(num: MultiPoly, den: MultiPoly = ONE) -> "RationalFunction":
        return _reduced(num, den)

    @staticmethod
    def const(value) -> "RationalFunction":
        return RationalFunction(MultiPoly.constant(2, value), ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return _reduced(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return _reduced(self.num * other.den - other.num * self.den,
                        self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return _reduced(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero function")
        return _reduced(self.num * other.den, self.den * other.num)

    def evaluate(self, x: Fraction, y: Fraction) -> Fraction:
        num = self.num.evaluate({0: x, 1: y}).constant_value()
        den = self.den.evaluate({0: x, 1: y}).constant_value()
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return num / den

    def __str__(self):
        n = self.num.format(["x", "y"])
        if self.den == ONE:
            return n
        return f"({n})/({self.den.format(['x', 'y'])})"


def _reduced(num: MultiPoly, den: MultiPoly) -> RationalFunction:
    """Cancel integer content, common monomial factors, and exact divisors."""
    if num.is_zero():
        return RationalFunction(num, ONE)
    mon = tuple(min(a, b) for a, b in
                zip(num.monomial_content(), den.monomial_content()))
    if any(mon):
        num = num.shift_down(mon)
        den = den.shift_down(mon)
    c = num.content() / den.content()
    num = num.primitive_part() * c.numerator
    den = den.primitive_part() * c.denominator
    if den.is_constant():
        dv = den.constant_value()
        return RationalFunction(num * (1 / dv), ONE)
    quo = num.try_divide(den)
    if quo is not None:
        return RationalFunction(quo, ONE)
    quo = den.try_divide(num)
    if quo is not None:
        if quo.is_constant():
            return RationalFunction(ONE * (1 / quo.constant_value()), ONE)
        num, den = ONE, quo
    # Normalize sign: make the denominator's leading coefficient positive.
    _, lead = den.leading_term()
    if lead < 0:
        num = -num
        den = -den
    return RationalFunction(num, den)


@dataclass(frozen=True)
class CurveModel:
    """Affine plane model f(x, y) = 0 with caller-asserted genus."""

    defining_polynomial: MultiPoly
    genus: int
    name: str = "curve"

    def __post_init__(self):
        if self.defining_polynomial.is_constant():
            raise ValueError("defining polynomial must be nonconstant")

    @property
    def fx(self) -> MultiPoly:
        return self.defining_polynomial.partial(0)

    @property
    def fy(self) -> MultiPoly:
        return self.defining_polynomial.partial(1)

    @property
    def implicit_slope_pair(self) -> tuple[MultiPoly, MultiPoly]:
        """(-df/dx, df/dy) exactly as partials, unreduced."""
        return (-self.fx, self.fy)

    def contains(self, x: Fraction, y: Fraction) -> bool:
        return self.defining_polynomial.evaluate({0: x, 1: y}).is_zero()


def implicit_slope(curve: CurveModel) -> RationalFunction:
    """dy/dx = -f_x/f_y on the curve, as a reduced ratio.

    >>> implicit_slope(CurveModel(bipoly({(2, 0): 1, (0, 2): 1, (0, 0): -1}), 0))
    ... # doctest: +SKIP
    """
    fy = curve.fy
    if fy.is_zero():
        raise ChartError("df/dy vanishes identically; x-chart has no slope")
    return RationalFunction.of(-curve.fx, fy)


def derivation(curve: CurveModel, p: MultiPoly) -> MultiPoly:
    """The polynomial derivation D(p) = f_y p_x - f_x p_y.

    D(p)/f_y is the total x-derivative of p along the curve.
    """
    return curve.fy * p.partial(0) - curve.fx * p.partial(1)


def dx_chain(g: RationalFunction, curve: CurveModel, count: int) -> list[RationalFunction]:
    """[g, g', g'', ...] with ``count`` derivatives along the curve.

    Implicit differentiation in exact arithmetic: for g = N/W,
    g' = (D(N) W - N D(W)) / (f_y W^2) with D as in :func:`derivation`.
    """
    fy = curve.fy
    if fy.is_zero():
        raise ChartError("df/dy vanishes identically; cannot differentiate in x")
    chain = [g]
    current = g
    for _ in range(count):
        n, w = current.num, current.den
        num = derivation(curve, n) * w - n * derivation(curve, w)
        den = fy * w * w
        current = _reduced(num, den)
        chain.append(current)
    return chain


def dy_chain(g: RationalFunction, curve: CurveModel, count: int) -> list[RationalFunction]:
    """Like :func:`dx_chain` but with y as the running coordinate."""
    fx = curve.fx
    if fx.is_zero():
        raise ChartError("df/dx vanishes identically; cannot differentiate in y")
    chain = [g]
    current = g
    for _ in range(count):
        n, w = current.num, current.den
        dn = curve.fx * n.partial(1) - curve.fy * n.partial(0)
        dw = curve.fx * w.partial(1) - curve.fy * w.partial(0)
        num = dn * w - n * dw
        den = fx * w * w
        current = _reduced(num, den)
        chain.append(current)
    return chain


def _poly_order_at(p: MultiPoly, curve: CurveModel, x0: Fraction, y0: Fraction,
                   use_x: bool, cap: int) -> int:
    """Vanishing order of a polynomial at a smooth point along the curve."""
    g = RationalFunction.of(p)
    chain_fn = dx_chain if use_x else dy_chain
    current = g
    for j in range(cap + 1):
        val_num = current.num.evaluate({0: x0, 1: y0}).constant_value()
        val_den = current.den.evaluate({0: x0, 1: y0}).constant_value()
        if val_den == 0:
            raise ChartError("derivative denominator vanishes at the point")
        if val_num != 0:
            return j
        current = chain_fn(current, curve, 1)[1]
    raise ChartError(f"vanishing order exceeds cap {cap}")


def order_at_point(g: RationalFunction, curve: CurveModel,
                   x0: Fraction, y0: Fraction, cap: int = 64) -> int:
    """ord of g at a smooth affine point of the curve (poles negative)."""
    if not curve.contains(x0, y0):
        raise ValueError("point is not on the curve")
    fy0 = curve.fy.evaluate({0: x0, 1: y0}).constant_value()
    fx0 = curve.fx.evaluate({0: x0, 1: y0}).constant_value()
    if fy0 != 0:
        use_x = True
    elif fx0 != 0:
        use_x = False
    else:
        raise ChartError("singular point: both partials vanish")
    if g.num.is_zero():
        raise ValueError("order of the zero function is undefined")
    return (_poly_order_at(g.num, curve, x0, y0, use_x, cap)
            - _poly_order_at(g.den, curve, x0, y0, use_x, cap))


# -- Riemann-Roch input data -------------------------------------------------

INFINITE_POINT = "infinity"


@dataclass(frozen=True)
class DivisorPoint:
    """A base-divisor support point: affine coordinates or the infinite marker."""

    multiplicity: int
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None
    at_infinity: bool = False

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if self.at_infinity:
            if self.x is not None or self.y is not None:
                raise ValueError("infinite point carries no coordinates")
        elif self.x is None or self.y is None:
            raise ValueError("affine point needs both coordinates")

    def label(self) -> str:
        if self.at_infinity:
            return INFINITE_POINT
        return f"({self.x},{self.y})"


@dataclass(frozen=True)
class RRData:
    """Base divisor, section basis, and tiers, supplied by the caller.

    ``tiers[i]`` is the least m with basis[i] a section of the m-th power of
    the base line bundle; the list must be weakly increasing and start with
    the constant 1 at tier 0.
    """

    base_divisor: tuple[DivisorPoint, ...]
    basis: tuple[RationalFunction, ...]
    tiers: tuple[int, ...]

    def __post_init__(self):
        if not self.base_divisor:
            raise ValueError("base divisor must be nonempty")
        if len(self.basis) != len(self.tiers):
            raise ValueError("basis and tiers lengths differ")
        if list(self.tiers) != sorted(self.tiers):
            raise ValueError("tiers must be weakly increasing")
        if self.tiers[0] != 0 or not (self.basis[0].num.is_constant()
                                      and self.basis[0].den.is_constant()):
            raise ValueError("basis must start with the constant 1 at tier 0")

    @property
    def degree(self) -> int:
        return sum(p.multiplicity for p in self.base_divisor)

    @property
    def dimension(self) -> int:
        return len(self.basis)


# -- operations tied to the section spaces ----------------------------------


def compute_t(d: int, genus: int, d0: int) -> int:
    """Least tensor power t with t*d0 - d + 1 - genus >= 1: ceil((d+g)/d0)."""
    if d < 1 or d0 < 1 or genus < 0:
        raise ValueError("inputs must be positive (genus nonnegative)")
    return -((d + genus) // -d0)


def expected_rr_dimension(t: int, d0: int, genus: int) -> int:
    """dim of the t-th section space, t*d0 + 1 - genus, valid for t*d0 > 2g-2."""
    if t * d0 <= 2 * genus - 2:
        raise ValueError("dimension formula needs t*d0 > 2g - 2")
    return t * d0 + 1 - genus


# -- fixtures ----------------------------------------------------------------


def projective_line_curve() -> CurveModel:
    """The line as the plane model y = 0 (function field Q(x))."""
    return CurveModel(Y, 0, name="p1")


def projective_line_rr(t: int) -> RRData:
    """Monomial basis 1, x, ..., x^t for the t-th power of O(infinity)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    basis = tuple(RationalFunction.of(X ** k) for k in range(t + 1))
    tiers = tuple(range(t + 1))
    return RRData((DivisorPoint(1, at_infinity=True),), basis, tiers)


def fermat_quartic_curve() -> CurveModel:
    """x^4 + y^4 = 1, the degree-4 plane quartic chart, genus 3."""
    f = bipoly({(4, 0): 1, (0, 4): 1, (0, 0): -1})
    return CurveModel(f, 3, name="fermat4")


def _fermat_basis() -> tuple[RationalFunction, ...]:
    n = bipoly({(3, 0): 1, (2, 0): 1, (1, 0): 1, (0, 0): 1})  # x^3+x^2+x+1
    g1 = RationalFunction.of(ONE)
    g2 = RationalFunction.of(n, Y ** 3)
    g3 = RationalFunction.of(n, Y ** 4)
    g4_num = 4 * n - bipoly({(2, 4): 1, (1, 4): 2, (0, 4): 3})
    g4 = RationalFunction.of(g4_num, 4 * Y ** 6)
    g5 = RationalFunction.of(g4_num, 4 * Y ** 7)
    g6 = RationalFunction.of(g4_num, 4 * Y ** 8)
    g7_num = (16 * n
              - bipoly({(3, 4): 6, (2, 4): 10, (1, 4): 14, (0, 4): 18})
              + bipoly({(1, 8): 1, (0, 8): 3}))
    g7 = RationalFunction.of(g7_num, 6 * Y ** 9)
    g8_num = (32 * n
              - bipoly({(2, 4): 8, (1, 4): 16, (0, 4): 24})
              - bipoly({(2, 8): 3, (1, 8): 4, (0, 8): 3}))
    g8 = RationalFunction.of(g8_num, 32 * Y ** 10)
    return (g1, g2, g3, g4, g5, g6, g7, g8)


def fermat_quartic_rr() -> RRData:
    """The ten-tier section basis over the base point (1, 0).

    Pole orders at the base point are 0, 3, 4, 6, 7, 8, 9, 10, which are
    also the tiers since the base divisor is a single reduced point.
    """
    base = (DivisorPoint(1, x=Fraction(1), y=Fraction(0)),)
    return RRData(base, _fermat_basis(), (0, 3, 4, 6, 7, 8, 9, 10))


FIXTURES = {
    "fermat4": "the quartic x^4 + y^4 = 1 with its tier-10 basis",
    "p1": "the line with monomial bases (t chosen per degree)",
}


def fixture(name: str, degree: Optional[int] = None) -> tuple[CurveModel, RRData]:
    """Look up a shipped curve with its Riemann-Roch data."""
    if name == "fermat4":
        return fermat_quartic_curve(), fermat_quartic_rr()
    if name == "p1":
        if degree is None:
            raise ValueError("p1 fixture needs the target map degree")
        curve = projective_line_curve()
        t = compute_t(degree, 0, 1)
        return curve, projective_line_rr(t)
    raise ValueError(f"unknown fixture {name!r}; available: {sorted(FIXTURES)}")
