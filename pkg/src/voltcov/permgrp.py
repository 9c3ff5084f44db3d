"""Finite permutation groups stored by explicit element enumeration.

Groups here are desk scale: everything is kept as a sorted tuple of
permutations, produced by breadth-first closure of a generating set.  A
configurable order cap turns runaway closures into an explicit error instead
of an out-of-memory surprise.

Conventions:

* permutations act on the right and compose left to right,
  ``i ^ (p*q) == (i ^ p) ^ q``;
* the conjugate of ``g`` by ``h`` is ``h^-1 * g * h``;
* cycle notation is printed and parsed with 1-based points, the identity
  prints as ``()``.
"""

from __future__ import annotations

import functools
import re
from typing import Iterable, Iterator, Sequence

from .errors import (
    DegreeMismatch,
    NotASubgroup,
    NotInAmbientGroup,
    OrderCapExceeded,
    SpecFormatError,
)

DEFAULT_ORDER_CAP = 100_000


@functools.total_ordering
class Perm:
    """A permutation of {0, ..., degree-1}, stored by its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):  # immutable; safe to hash and share
        raise AttributeError("Perm is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    def __getitem__(self, point: int) -> int:
        """Image of a point under this permutation."""
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        """Apply self first, then other."""
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        o = other.images
        return Perm(o[i] for i in self.images)

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def conj(self, h: "Perm") -> "Perm":
        """The conjugate h^-1 * self * h."""
        return h.inverse() * self * h

    def __pow__(self, n: int) -> "Perm":
        result = Perm.identity(self.degree)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, 0-based, each rotated to start at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return tuple(out)

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Iterable[int]]) -> "Perm":
        """Build from 0-based cycles; points absent from all cycles are fixed."""
        images = list(range(degree))
        touched = set()
        for cyc in cycles:
            cyc = list(cyc)
            for p in cyc:
                if not 0 <= p < degree:
                    raise ValueError(f"point {p} out of range for degree {degree}")
                if p in touched:
                    raise ValueError(f"point {p} repeated across cycles")
                touched.add(p)
            for i, p in enumerate(cyc):
                images[p] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Perm":
        """Parse 1-based cycle notation such as ``(1 2 3)(5 4 6)`` or ``()``."""
        text = text.strip()
        if text in ("()", "", "id"):
            return cls.identity(degree)
        if not re.fullmatch(r"(\([^()]*\))+", text):
            raise SpecFormatError(f"bad cycle string: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            points = [p for p in re.split(r"[,\s]+", body.strip()) if p]
            if not points:
                continue
            try:
                cyc = [int(p) - 1 for p in points]
            except ValueError:
                raise SpecFormatError(f"bad point in cycle string: {text!r}") from None
            cycles.append(cyc)
        try:
            return cls.from_cycles(degree, cycles)
        except ValueError as exc:
            raise SpecFormatError(f"bad cycle string {text!r}: {exc}") from None

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in cyc) + ")" for cyc in cycs)

    def __repr__(self) -> str:
        return f"Perm[{self}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)


class Group:
    """A finite permutation group with its full, sorted element list.

    Construct through :func:`generate`; the constructor trusts that
    ``elements`` is closed.  Immutable after construction, so instances can be
    shared freely across threads.
    """

    __slots__ = ("degree", "generators", "elements", "_eset", "_rep_cache")

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Iterable[Perm]):
        elements = tuple(sorted(elements))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_eset", frozenset(elements))
        object.__setattr__(self, "_rep_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Group is immutable")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def __contains__(self, p: Perm) -> bool:
        return p in self._eset

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Group)
            and self.degree == other.degree
            and self._eset == other._eset
        )

    def __hash__(self) -> int:
        return hash((self.degree, self._eset))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"Group(degree={self.degree}, order={self.order}, gens=[{gens}])"

    def is_subgroup_of(self, other: "Group") -> bool:
        return self.degree == other.degree and self._eset <= other._eset

    def is_trivial(self) -> bool:
        return self.order == 1

    def coset_rep(self, g: Perm) -> Perm:
        """Least element of the right coset (self)*g; canonical and cached."""
        cached = self._rep_cache.get(g)
        if cached is None:
            cached = min(h * g for h in self.elements)
            self._rep_cache[g] = cached
        return cached

    def index_in(self, other: "Group") -> int:
        if not self.is_subgroup_of(other):
            raise NotASubgroup(f"{self!r} is not a subgroup of {other!r}")
        return other.order // self.order

    def is_normal_in(self, other: "Group") -> bool:
        return all(conjugate(self, g) == self for g in other.generators)


class RightCoset:
    """A right coset H*g, identified by its canonical (least) representative."""

    __slots__ = ("subgroup", "representative")

    def __init__(self, subgroup: Group, element: Perm):
        object.__setattr__(self, "subgroup", subgroup)
        object.__setattr__(self, "representative", subgroup.coset_rep(element))

    def __setattr__(self, name, value):
        raise AttributeError("RightCoset is immutable")

    def __contains__(self, p: Perm) -> bool:
        return self.subgroup.coset_rep(p) == self.representative if p.degree == self.subgroup.degree else False

    def __iter__(self) -> Iterator[Perm]:
        return iter(sorted(h * self.representative for h in self.subgroup))

    def __len__(self) -> int:
        return self.subgroup.order

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RightCoset)
            and self.subgroup == other.subgroup
            and self.representative == other.representative
        )

    def __hash__(self) -> int:
        return hash((self.subgroup, self.representative))

    def __repr__(self) -> str:
        return f"RightCoset({self.representative})"


def generate(degree: int, gens: Sequence[Perm], *, cap: int = DEFAULT_ORDER_CAP) -> Group:
    """The group generated by ``gens``: breadth-first closure under products.

    Raises OrderCapExceeded once the element set grows past ``cap``, which
    signals that the instance is beyond desk scale.
    """
    gens = tuple(gens)
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator degree {g.degree}, expected {degree}")
    identity = Perm.identity(degree)
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = a * s
                if b not in elements:
                    elements.add(b)
                    nxt.append(b)
                    if len(elements) > cap:
                        raise OrderCapExceeded(f"closure exceeded cap of {cap} elements")
        frontier = nxt
    return Group(degree, gens, elements)


def _reduced_generators(degree: int, elements: Iterable[Perm]) -> tuple[Perm, ...]:
    """A short generating list for a known element set, found greedily."""
    elements = sorted(elements)
    have = {Perm.identity(degree)}
    gens: list[Perm] = []
    for p in elements:
        if p not in have:
            gens.append(p)
            have = set(generate(degree, gens).elements)
            if len(have) == len(elements):
                break
    return tuple(gens)


def from_elements(degree: int, elements: Iterable[Perm]) -> Group:
    """Wrap an already-closed element set as a Group with short generators."""
    elements = set(elements)
    return Group(degree, _reduced_generators(degree, elements), elements)


def right_cosets(subgroup: Group, group: Group) -> list[RightCoset]:
    """All right cosets of ``subgroup`` in ``group``, in representative order."""
    if not subgroup.is_subgroup_of(group):
        raise NotASubgroup("cosets require an actual subgroup")
    reps = sorted({subgroup.coset_rep(g) for g in group})
    return [RightCoset(subgroup, r) for r in reps]


def conjugate(subgroup: Group, g: Perm) -> Group:
    """The conjugate subgroup g^-1 * H * g."""
    if g.degree != subgroup.degree:
        raise DegreeMismatch(f"conjugator degree {g.degree}, expected {subgroup.degree}")
    ginv = g.inverse()
    return Group(
        subgroup.degree,
        tuple(ginv * h * g for h in subgroup.generators),
        (ginv * h * g for h in subgroup.elements),
    )


def intersection(a: Group, b: Group) -> Group:
    if a.degree != b.degree:
        raise DegreeMismatch("intersecting groups of different degrees")
    return from_elements(a.degree, a._eset & b._eset)


def core(subgroup: Group, group: Group) -> Group:
    """The largest normal subgroup of ``group`` inside ``subgroup``.

    Computed literally as the intersection of all conjugates of ``subgroup``.
    """
    if not subgroup.is_subgroup_of(group):
        raise NotASubgroup("core requires an actual subgroup")
    common = set(subgroup.elements)
    for g in group:
        gi = g.inverse()
        common &= {gi * h * g for h in subgroup.elements}
        if len(common) == 1:
            break
    return from_elements(group.degree, common)


def generated_by(group: Group, parts: Iterable[Perm | Group]) -> Group:
    """The subgroup of ``group`` generated by all the given parts.

    Parts may be single elements or whole subgroups; each must lie inside
    ``group``.
    """
    gens: list[Perm] = []
    for part in parts:
        if isinstance(part, Group):
            if not part.is_subgroup_of(group):
                raise NotInAmbientGroup(f"{part!r} not inside ambient group")
            gens.extend(part.generators)
        else:
            if part not in group:
                raise NotInAmbientGroup(f"{part} not inside ambient group")
            gens.append(part)
    return generate(group.degree, tuple(gens), cap=group.order)


def trivial_group(degree: int) -> Group:
    return Group(degree, (), (Perm.identity(degree),))
