"""Heights of branch sets and the effective degree bound.

The exponential height of a rational p/q in lowest terms is max(|p|, |q|);
for an algebraic number given by its primitive minimal polynomial f of
degree n it equals M(f)^(1/n), with M the Mahler measure (leading
coefficient times the product of root magnitudes outside the unit circle).
That equivalence is the standard unfolding of the places-product formula
and is the computation path used here; roots are found numerically at
high working precision with an error bound carried alongside.

The degree bound for a set with Galois-orbit cardinality N and height H is
(4NH)^(9 N^3 2^(N-2) N!).  At N = 1 the exponent is the half-integer 9/2
and the formula is applied verbatim, returning an exact value only when
the power happens to be rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, isqrt
from typing import Optional, Sequence

import mpmath

WORKING_DPS = 60  # ~200 bits, comfortably above the 64-bit floor

EXACT_DIGIT_CAP = 10 ** 6


class PrecisionError(Exception):
    """Numeric root isolation failed to reach the requested accuracy."""


@dataclass(frozen=True)
class AlgebraicPoint:
    """A point of the projective line: rational, algebraic, or infinity.

    Exactly one representation is populated.  Algebraic points carry a
    primitive integer-coefficient minimal polynomial (content 1, positive
    leading coefficient, irreducibility asserted by the caller) as a tuple
    of coefficients from the constant term upward.
    """

    rational: Optional[Fraction] = None
    min_poly: Optional[tuple[int, ...]] = None
    at_infinity: bool = False

    def __post_init__(self):
        count = sum(1 for flag in (self.rational is not None,
                                   self.min_poly is not None,
                                   self.at_infinity) if flag)
        if count != 1:
            raise ValueError("exactly one representation must be set")
        if self.min_poly is not None:
            coeffs = self.min_poly
            if len(coeffs) < 2:
                raise ValueError("minimal polynomial must have degree >= 1")
            if coeffs[-1] <= 0:
                raise ValueError("leading coefficient must be positive")
            content = 0
            for c in coeffs:
                content = gcd(content, abs(c))
            if content != 1:
                raise ValueError("minimal polynomial must be primitive (content 1)")

    @property
    def orbit_size(self) -> int:
        """Points this contributes to the Galois orbit count."""
        if self.min_poly is not None:
            return len(self.min_poly) - 1
        return 1

    def __str__(self):
        if self.at_infinity:
            return "oo"
        if self.rational is not None:
            return str(self.rational)
        return "root of " + _poly_str(self.min_poly)


def rational_point(value) -> AlgebraicPoint:
    return AlgebraicPoint(rational=Fraction(value))


def algebraic_point(coeffs: Sequence[int]) -> AlgebraicPoint:
    return AlgebraicPoint(min_poly=tuple(int(c) for c in coeffs))


INFINITY = AlgebraicPoint(at_infinity=True)


def _poly_str(coeffs: tuple[int, ...]) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if i == 0:
            body = str(mag)
        elif i == 1:
            body = "x" if mag == 1 else f"{mag}*x"
        else:
            body = f"x^{i}" if mag == 1 else f"{mag}*x^{i}"
        parts.append(f"{sign}{body}" if not parts else f" {sign} {body}")
    return "".join(parts) if parts else "0"


@dataclass(frozen=True)
class HeightValue:
    """A height: exact rational when known, always with a working float."""

    exact: Optional[Fraction]
    approx: mpmath.mpf
    error: mpmath.mpf  # absolute error bound on approx

    def __float__(self):
        return float(self.approx)

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        return mpmath.nstr(self.approx, 20)


def _exact_height(value: Fraction) -> HeightValue:
    h = Fraction(max(abs(value.numerator), abs(value.denominator)))
    with mpmath.workdps(WORKING_DPS):
        return HeightValue(h, mpmath.mpf(h.numerator) / h.denominator, mpmath.mpf(0))


def height(pt: AlgebraicPoint) -> HeightValue:
    """Exponential height of a point; exactly 1 for infinity.

    >>> height(rational_point(Fraction(3, 2))).exact
    Fraction(3, 1)
    """
    if pt.at_infinity:
        return _exact_height(Fraction(1))
    if pt.rational is not None:
        return _exact_height(pt.rational)
    return _mahler_height(pt.min_poly)


def _mahler_height(coeffs: tuple[int, ...]) -> HeightValue:
    degree = len(coeffs) - 1
    with mpmath.workdps(WORKING_DPS):
        # mpmath wants coefficients from the leading term down.
        poly = [mpmath.mpf(c) for c in reversed(coeffs)]
        try:
            roots, err = mpmath.polyroots(poly, maxsteps=200, extraprec=200,
                                          error=True)
        except mpmath.libmp.NoConvergence as exc:
            raise PrecisionError(f"root finding did not converge: {exc}") from exc
        if err > mpmath.mpf(10) ** (-(WORKING_DPS - 10)):
            raise PrecisionError(f"root error bound too large: {err}")
        measure = mpmath.mpf(abs(coeffs[-1]))
        for r in roots:
            m = abs(r)
            if m > 1:
                measure *= m
        value = measure ** (mpmath.mpf(1) / degree)
        # max(1,|z|) is 1-Lipschitz in each root, so the error bound
        # propagates through the product essentially linearly.
        rel = err * len(roots) * 4 + mpmath.mpf(10) ** (-(WORKING_DPS - 6))
        return HeightValue(None, value, value * rel)


@dataclass(frozen=True)
class BranchSet:
    """A finite set of branch points with its orbit count and height."""

    points: tuple[AlgebraicPoint, ...]
    orbit_count: int
    height: HeightValue
    notes: tuple[str, ...] = ()


def branch_set(points: Sequence[AlgebraicPoint]) -> BranchSet:
    """Close up the listed points: each algebraic point contributes its full
    conjugate orbit (the degree of its minimal polynomial) to N.

    An infinity marker counts as one orbit point; this convention is
    recorded in the notes since other conventions are defensible.
    """
    pts = tuple(points)
    if not pts:
        raise ValueError("branch set must be nonempty")
    n = sum(p.orbit_size for p in pts)
    heights = [height(p) for p in pts]
    best = heights[0]
    for h in heights[1:]:
        if h.approx > best.approx:
            best = h
    notes = ()
    if any(p.at_infinity for p in pts):
        notes = ("infinity counted as one Galois-orbit point",)
    return BranchSet(pts, n, best, notes)


@dataclass(frozen=True)
class BoundValue:
    """Either an exact integer/rational bound or its base-10 logarithm."""

    exact: Optional[Fraction]
    log10: mpmath.mpf

    def digits(self) -> int:
        return int(mpmath.floor(self.log10)) + 1

    def __str__(self):
        if self.exact is not None:
            if self.exact.denominator == 1:
                return str(self.exact.numerator)
            return str(self.exact)
        return f"10^{mpmath.nstr(self.log10, 25)}"


def khadjavi_exponent(n: int) -> Fraction:
    """9 N^3 2^(N-2) N! as an exact rational (half-integral at N = 1)."""
    if n < 1:
        raise ValueError("N must be >= 1")
    return Fraction(9 * n ** 3 * factorial(n)) * Fraction(2) ** (n - 2)


def _int_nth_root(m: int, k: int) -> int:
    """floor(m^(1/k)) for m >= 0, exact integer arithmetic."""
    if k == 2:
        return isqrt(m)
    if m < 2:
        return m
    x = 1 << ((m.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + m // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _rational_root(value: Fraction, k: int) -> Optional[Fraction]:
    """Exact k-th root of a positive rational, if it exists."""
    num = _int_nth_root(value.numerator, k)
    if num ** k != value.numerator:
        return None
    den = _int_nth_root(value.denominator, k)
    if den ** k != value.denominator:
        return None
    return Fraction(num, den)


def khadjavi_bound(n: int, h) -> BoundValue:
    """(4 N H)^(9 N^3 2^(N-2) N!), exact when representable.

    ``h`` may be a HeightValue, Fraction, or int with h >= 1.  The exact
    branch is taken when the exponent is integral (or the base power has an
    exact rational root) and the result stays at or below 10^6 decimal
    digits; otherwise only log10 of the bound is returned.
    """
    if n < 1:
        raise ValueError("N must be >= 1")
    exponent = khadjavi_exponent(n)
    exact_h: Optional[Fraction] = None
    if isinstance(h, HeightValue):
        exact_h = h.exact
        approx_h = h.approx
    else:
        exact_h = Fraction(h)
        approx_h = None
    if exact_h is not None and exact_h < 1:
        raise ValueError("H must be >= 1")

    with mpmath.workdps(WORKING_DPS):
        if exact_h is not None:
            base_log10 = mpmath.log10(mpmath.mpf(4 * n) * mpmath.mpf(exact_h.numerator)
                                      / exact_h.denominator)
        else:
            base_log10 = mpmath.log10(mpmath.mpf(4 * n) * approx_h)
        log10_value = base_log10 * mpmath.mpf(exponent.numerator) / exponent.denominator

        if exact_h is not None:
            base = 4 * n * exact_h
            if log10_value <= EXACT_DIGIT_CAP:
                if exponent.denominator == 1:
                    return BoundValue(base ** exponent.numerator, log10_value)
                powered = base ** exponent.numerator
                root = _rational_root(powered, exponent.denominator)
                if root is not None:
                    return BoundValue(root, log10_value)
        return BoundValue(None, log10_value)


def belyi_upper_bound(deg_pi: int, branches: BranchSet) -> BoundValue:
    """Degree bound for a curve mapped to the line with the given branch set:
    khadjavi_bound(N, H) times the degree of the map."""
    if deg_pi < 1:
        raise ValueError("deg_pi must be >= 1")
    inner = khadjavi_bound(branches.orbit_count, branches.height)
    with mpmath.workdps(WORKING_DPS):
        log10_value = inner.log10 + mpmath.log10(deg_pi)
        if inner.exact is not None:
            total = inner.exact * deg_pi
            return BoundValue(total, log10_value)
        return BoundValue(None, log10_value)
