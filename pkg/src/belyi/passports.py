"""Partitions, ramification types, and the Riemann-Hurwitz filter.

A ramification type for degree d is a triple of partitions of d recording
the cycle structures over 0, 1 and infinity.  The genus forced by such a
type, when it exists, is read off from 2g - 2 = d - r0 - r1 - rinf; types
for which that fails admit no cover and are filtered out, which is a normal
outcome rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .perm import CycleType

PARTITION_DEGREE_GUARD = 40


class PartitionGuardError(Exception):
    """Partition enumeration refused above the desk-scale guard."""


@dataclass(frozen=True)
class RamificationType:
    """Three partitions of a common degree d."""

    degree: int
    lambda0: CycleType
    lambda1: CycleType
    lambda_inf: CycleType

    def __post_init__(self):
        for name, lam in (("lambda0", self.lambda0), ("lambda1", self.lambda1),
                          ("lambda_inf", self.lambda_inf)):
            if lam.size != self.degree:
                raise ValueError(f"{name} sums to {lam.size}, expected {self.degree}")

    @property
    def part_counts(self) -> tuple[int, int, int]:
        return len(self.lambda0), len(self.lambda1), len(self.lambda_inf)

    def triple(self) -> tuple[CycleType, CycleType, CycleType]:
        return self.lambda0, self.lambda1, self.lambda_inf

    def __str__(self) -> str:
        def fmt(lam: CycleType) -> str:
            return "[" + ",".join(str(p) for p in lam.parts) + "]"

        return f"{self.degree}: {fmt(self.lambda0)}{fmt(self.lambda1)}{fmt(self.lambda_inf)}"


def ramification_type(degree: int, parts0, parts1, parts_inf) -> RamificationType:
    return RamificationType(
        degree,
        CycleType(tuple(sorted(parts0, reverse=True))),
        CycleType(tuple(sorted(parts1, reverse=True))),
        CycleType(tuple(sorted(parts_inf, reverse=True))),
    )


def _partitions_desc(n: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, reverse-lexicographic."""
    if n == 0:
        yield ()
        return

    def rec(remaining: int, cap: int, prefix: list[int]):
        if remaining == 0:
            yield tuple(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, prefix)
            prefix.pop()

    yield from rec(n, n, [])


def enumerate_partitions(d: int) -> list[CycleType]:
    """All partitions of d in reverse-lexicographic order.

    >>> [p.parts for p in enumerate_partitions(4)]
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if d < 1:
        raise ValueError("d must be positive")
    if d > PARTITION_DEGREE_GUARD:
        raise PartitionGuardError(
            f"partition guard: {d} > {PARTITION_DEGREE_GUARD}"
        )
    return [CycleType(parts) for parts in _partitions_desc(d)]


def rh_genus(lam: RamificationType) -> Optional[int]:
    """Genus forced by Riemann-Hurwitz, or None when no cover can exist.

    Solves 2g - 2 = d - r0 - r1 - rinf; returns None when the right side is
    odd or below -2.
    """
    r0, r1, rinf = lam.part_counts
    rhs = lam.degree - r0 - r1 - rinf
    if rhs % 2 != 0 or rhs < -2:
        return None
    return (rhs + 2) // 2


def types_with_genus(d: int, genus: int) -> list[RamificationType]:
    """All ramification types of degree d whose forced genus equals ``genus``.

    Deterministic: each slot runs over partitions in reverse-lexicographic
    order, outer slot varying slowest.
    """
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    partitions = enumerate_partitions(d)
    # 2g - 2 = d - (r0 + r1 + rinf) pins the total number of parts.
    target_parts = d - (2 * genus - 2)
    by_any = [p for p in partitions]
    out = []
    for lam0 in by_any:
        for lam1 in by_any:
            r01 = len(lam0) + len(lam1)
            if r01 >= target_parts:
                continue
            need = target_parts - r01
            for lam_inf in by_any:
                if len(lam_inf) != need:
                    continue
                out.append(RamificationType(d, lam0, lam1, lam_inf))
    return out


def lower_bound_from_genus(genus: int) -> int:
    """Minimal possible degree of a three-point cover on a genus-g curve: 2g + 1."""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    return 2 * genus + 1


FAMILIES = ("fermat", "cyclic_superelliptic")


def family_upper_bound(family: str, param: int) -> int:
    """Catalogued upper bounds for two standard curve families.

    fermat(n): the degree-n Fermat plane curve carries a map of degree n^2
    to the line ramified over three points only.
    cyclic_superelliptic(d): for odd d, the curve y^2 - y = x^d has such a
    map of degree d (projection to y), which is sharp for its genus.
    """
    if param < 1:
        raise ValueError("family parameter must be positive")
    if family == "fermat":
        return param * param
    if family == "cyclic_superelliptic":
        if param % 2 == 0:
            raise ValueError("cyclic_superelliptic requires an odd parameter")
        return param
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def parse_lambda(text: str, degree: int) -> RamificationType:
    """Parse "7/7/7" or "2,1/2,1/3" into a ramification type of ``degree``."""
    chunks = text.strip().split("/")
    if len(chunks) != 3:
        raise ValueError(f"expected three '/'-separated partitions, got {text!r}")
    parts = []
    for chunk in chunks:
        try:
            entries = tuple(int(tok) for tok in chunk.replace("+", ",").split(",") if tok)
        except ValueError as exc:
            raise ValueError(f"bad partition {chunk!r} in {text!r}") from exc
        if not entries:
            raise ValueError(f"empty partition in {text!r}")
        parts.append(entries)
    return ramification_type(degree, *parts)
