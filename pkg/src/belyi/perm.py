"""Exact permutation arithmetic and small-degree group algorithms.

Points are labelled 1..d in all public I/O.  A permutation stores the image
of i at ``images[i-1]``.  Composition is right-to-left throughout the
package: ``compose(p, q)`` maps i to ``p(q(i))``.

Degree guards keep the group algorithms at desk scale: ``group_order``
refuses degrees above 16 and ``centralizer_order`` above 12, raising
:class:`DegreeGuardError` instead of running unbounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

GROUP_ORDER_DEGREE_GUARD = 16
CENTRALIZER_DEGREE_GUARD = 12


class DegreeGuardError(Exception):
    """Raised when an operation exceeds its desk-scale degree guard."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..d}; ``images[i-1]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        d = len(self.images)
        if sorted(self.images) != list(range(1, d + 1)):
            raise ValueError(f"not a permutation of 1..{d}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))

    def is_even(self) -> bool:
        return (self.degree + len(cycle_type(self).parts)) % 2 == 0

    def order(self) -> int:
        n = 1
        for part in cycle_type(self).parts:
            n = n * part // _gcd(n, part)
        return n

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles of length > 1, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


@dataclass(frozen=True)
class CycleType:
    """Weakly decreasing positive parts; attached to S_d they sum to d."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError("cycle type parts must be positive")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError("cycle type parts must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def identity(degree: int) -> Permutation:
    return Permutation(tuple(range(1, degree + 1)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation i -> p(q(i)); degrees must match."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(tuple(p.images[j - 1] for j in q.images))


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """g . p . g^{-1}: relabels p's points through g."""
    if p.degree != g.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {g.degree}")
    res = [0] * p.degree
    for i in range(1, p.degree + 1):
        res[g.images[i - 1] - 1] = g.images[p.images[i - 1] - 1]
    return Permutation(tuple(res))


def cycle_type(p: Permutation) -> CycleType:
    """Multiset of cycle lengths (fixed points included), weakly decreasing."""
    seen = [False] * p.degree
    lengths = []
    for start in range(1, p.degree + 1):
        if seen[start - 1]:
            continue
        n = 0
        j = start
        while not seen[j - 1]:
            seen[j - 1] = True
            n += 1
            j = p(j)
        lengths.append(n)
    return CycleType(tuple(sorted(lengths, reverse=True)))


def from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    images = list(range(1, degree + 1))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            if not (1 <= a <= degree):
                raise ValueError(f"point {a} outside 1..{degree}")
            images[a - 1] = b
    p = Permutation(tuple(images))
    return p


def format_cycles(p: Permutation) -> str:
    """Disjoint-cycle text, e.g. ``(1 2 3)(4 5)``; ``()`` for the identity."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x) for x in cyc) + ")" for cyc in cycles)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Inverse of :func:`format_cycles`; degree is carried explicitly."""
    text = text.strip()
    if text in ("", "()"):
        return identity(degree)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"malformed cycle text: {text!r}")
    cycles = []
    for chunk in text[1:-1].split(")("):
        points = [int(tok) for tok in chunk.replace(",", " ").split()]
        if len(points) != len(set(points)):
            raise ValueError(f"repeated point in cycle {chunk!r}")
        cycles.append(points)
    flat = [x for cyc in cycles for x in cyc]
    if len(flat) != len(set(flat)):
        raise ValueError("cycles are not disjoint")
    return from_cycles(degree, cycles)


def is_transitive(gens: list[Permutation], degree: int) -> bool:
    """Orbit of 1 under the generated group covers {1..degree}."""
    if degree <= 0:
        raise ValueError("degree must be positive")
    for g in gens:
        if g.degree != degree:
            raise ValueError("generator degree mismatch")
    if degree == 1:
        return True
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for point in frontier:
            for g in gens:
                img = g(point)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return len(seen) == degree


def orbits(gens: list[Permutation], degree: int) -> list[list[int]]:
    """Orbit partition of {1..degree} under the generated group, sorted."""
    seen = [False] * (degree + 1)
    out = []
    for start in range(1, degree + 1):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            nxt = []
            for point in frontier:
                for g in gens:
                    img = g(point)
                    if not seen[img]:
                        seen[img] = True
                        orbit.append(img)
                        nxt.append(img)
            frontier = nxt
        out.append(sorted(orbit))
    return out


# -- group order via a stabilizer chain ------------------------------------


def _orbit_transversal(point: int, gens: list[Permutation], degree: int) -> dict[int, Permutation]:
    transversal = {point: identity(degree)}
    frontier = [point]
    while frontier:
        nxt = []
        for pt in frontier:
            for g in gens:
                img = g(pt)
                if img not in transversal:
                    transversal[img] = compose(g, transversal[pt])
                    nxt.append(img)
        frontier = nxt
    return transversal


def _build_chain(strong: list[Permutation], degree: int):
    """Stabilizer chain from a flat strong-generator candidate set.

    Level i uses the subset of ``strong`` fixing the first i base points;
    each base point is the least point moved at its level.
    """
    base: list[int] = []
    transversals: list[dict[int, Permutation]] = []
    level_sets: list[list[Permutation]] = []
    current = [g for g in strong if not g.is_identity()]
    while current:
        moved = min(
            i for g in current for i in range(1, degree + 1) if g(i) != i
        )
        base.append(moved)
        level_sets.append(current)
        transversals.append(_orbit_transversal(moved, current, degree))
        current = [g for g in current if g(moved) == moved]
    return base, transversals, level_sets


def _sift(perm: Permutation, base, transversals, start: int) -> Permutation:
    for lvl in range(start, len(base)):
        rep = transversals[lvl].get(perm(base[lvl]))
        if rep is None:
            return perm
        perm = compose(rep.inverse(), perm)
    return perm


def group_order(gens: list[Permutation]) -> int:
    """Exact order of <gens> by a deterministic Schreier-Sims computation.

    Keeps a flat strong-generator set; repeatedly builds the stabilizer
    chain and adds any Schreier generator that fails to sift to the
    identity.  Terminates because every added residue enlarges a stabilizer
    in the chain.
    """
    if not gens:
        raise ValueError("need at least one generator")
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError("generator degree mismatch")
    if degree > GROUP_ORDER_DEGREE_GUARD:
        raise DegreeGuardError(
            f"group_order guard: degree {degree} > {GROUP_ORDER_DEGREE_GUARD}"
        )

    strong = [g for g in gens if not g.is_identity()]
    if not strong:
        return 1
    while True:
        base, transversals, level_sets = _build_chain(strong, degree)
        new_gen = None
        for lvl in range(len(base)):
            trans = transversals[lvl]
            for pt, rep in trans.items():
                for g in level_sets[lvl]:
                    schreier = compose(trans[g(pt)].inverse(), compose(g, rep))
                    if schreier.is_identity():
                        continue
                    residue = _sift(schreier, base, transversals, lvl + 1)
                    if not residue.is_identity():
                        new_gen = residue
                        break
                if new_gen is not None:
                    break
            if new_gen is not None:
                break
        if new_gen is None:
            order = 1
            for trans in transversals:
                order *= len(trans)
            return order
        strong.append(new_gen)


def group_elements(gens: list[Permutation], cap: int = 100000) -> list[Permutation]:
    """All elements of <gens> by closure; refuses past ``cap`` elements."""
    degree = gens[0].degree
    elements = {identity(degree)}
    frontier = [identity(degree)]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = compose(g, e)
                if h not in elements:
                    if len(elements) >= cap:
                        raise DegreeGuardError(f"group enumeration cap {cap} hit")
                    elements.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(elements, key=lambda p: p.images)


# -- centralizers -----------------------------------------------------------


def _equivariant_maps(src: list[int], dst: list[int], gens: list[Permutation]) -> int:
    """Count bijections h: src -> dst with h(g(x)) = g(h(x)) for all g.

    ``src`` must be a single orbit of <gens>; a candidate is determined by
    the image of its least point, then propagated.
    """
    anchor = src[0]
    dst_set = set(dst)
    count = 0
    for target in dst:
        mapping = {anchor: target}
        frontier = [anchor]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g in gens:
                    gx = g(x)
                    want = g(mapping[x])
                    have = mapping.get(gx)
                    if have is None:
                        mapping[gx] = want
                        nxt.append(gx)
                    elif have != want:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if not ok:
            continue
        values = list(mapping.values())
        if len(set(values)) == len(src) and set(values) <= dst_set:
            count += 1
    return count


def centralizer_order(gens: list[Permutation]) -> int:
    """Order of the simultaneous centralizer of ``gens`` in S_d.

    Works orbit by orbit: the centralizer permutes isomorphic orbits of the
    generated group, acting on each class as (per-orbit centralizer) wreath
    (symmetric group on the class).
    """
    if not gens:
        raise ValueError("need at least one generator")
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError("generator degree mismatch")
    if degree > CENTRALIZER_DEGREE_GUARD:
        raise DegreeGuardError(
            f"centralizer guard: degree {degree} > {CENTRALIZER_DEGREE_GUARD}"
        )

    orbit_list = orbits(gens, degree)
    unassigned = list(range(len(orbit_list)))
    order = 1
    while unassigned:
        rep_idx = unassigned.pop(0)
        rep = orbit_list[rep_idx]
        cls = [rep_idx]
        for other_idx in list(unassigned):
            other = orbit_list[other_idx]
            if len(other) != len(rep):
                continue
            if _equivariant_maps(rep, other, gens) > 0:
                cls.append(other_idx)
                unassigned.remove(other_idx)
        per_orbit = _equivariant_maps(rep, rep, gens)
        order *= per_orbit ** len(cls) * factorial(len(cls))
    return order


def all_permutations(degree: int):
    """All of S_degree in lexicographic order of image tuples."""
    for images in itertools.permutations(range(1, degree + 1)):
        yield Permutation(images)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
