"""Permutations, cycle decompositions, and exhaustive group enumeration.

Points are 0-based internally; all parsing/printing is 1-based cycle
notation.  The action convention is right action throughout: ``x`` acted
on by ``g`` is ``g.images[x]``, and ``compose(g, h)`` means "g then h".

Groups are enumerated by breadth-first closure over the generators.  The
element list is kept in a packed numpy array (one row per element) so
that order-a-million groups stay cheap to store and to take statistics
over; rows sort lexicographically, which fixes the canonical element
order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    CapExceeded,
    MalformedCycle,
    NotTransitive,
    PointOutOfRange,
    RepeatedPoint,
    WreathlabError,
)

#: Default ceiling on exhaustive enumeration.
DEFAULT_ENUM_CAP = 2_000_000


def _dtype_for(degree: int):
    # big-endian 2-byte ints keep bytewise sorting lexicographic
    return np.uint8 if degree <= 256 else np.dtype(">u2")


class Permutation:
    """A bijection of {0, ..., degree-1}, stored as its image tuple."""

    __slots__ = ("degree", "images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        n = len(images)
        if n == 0:
            raise WreathlabError("degree must be positive")
        if sorted(images) != list(range(n)):
            raise WreathlabError("images are not a bijection")
        self.degree = n
        self.images = images
        self._hash = hash(images)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @staticmethod
    def _trusted(images: Tuple[int, ...]) -> "Permutation":
        p = object.__new__(Permutation)
        p.degree = len(images)
        p.images = images
        p._hash = hash(images)
        return p

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for x, i in enumerate(self.images))

    def fixed_point_count(self) -> int:
        return sum(1 for x, y in enumerate(self.images) if x == y)

    def cycles(self) -> "CycleDecomposition":
        return cycle_decomposition(self)

    def sign(self) -> int:
        return -1 if (self.degree - self.cycles().cycle_count) % 2 else 1

    def cycle_string(self) -> str:
        """1-based cycle notation, trivial cycles omitted; identity is "()"."""
        parts = []
        for cyc in self.cycles().cycles:
            if len(cyc) > 1:
                parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
        return "".join(parts) or "()"

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"


def compose(g: Permutation, h: Permutation) -> Permutation:
    """Right-action composition: x -> (x g) h."""
    if g.degree != h.degree:
        raise WreathlabError(f"degree mismatch: {g.degree} vs {h.degree}")
    hi = h.images
    return Permutation._trusted(tuple(hi[y] for y in g.images))


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles (trivial ones included), each starting at its minimum.

    ``cycle_type[i]`` is the number of cycles of length i+1, so the type
    vector has one slot per possible length.
    """

    degree: int
    cycles: Tuple[Tuple[int, ...], ...]
    cycle_type: Tuple[int, ...]
    cycle_count: int


def cycle_decomposition(g: Permutation) -> CycleDecomposition:
    n = g.degree
    seen = [False] * n
    cycles = []
    mtype = [0] * n
    for start in range(n):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = g.images[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = g.images[x]
        cycles.append(tuple(cyc))
        mtype[len(cyc) - 1] += 1
    return CycleDecomposition(n, tuple(cycles), tuple(mtype), len(cycles))


def fixed_point_count(g: Permutation) -> int:
    return g.fixed_point_count()


def sign(g: Permutation) -> int:
    return g.sign()


_CYCLE_TOKEN = re.compile(r"\s*\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation like "(1 2 3)(4 5)"; "()" is the identity."""
    pos = 0
    text = text.strip()
    if not text:
        raise MalformedCycle("empty cycle string")
    images = list(range(degree))
    used = set()
    while pos < len(text):
        m = _CYCLE_TOKEN.match(text, pos)
        if not m:
            raise MalformedCycle(f"expected '(' at position {pos} in {text!r}")
        pos = m.end()
        body = m.group(1).strip()
        if not body:
            continue  # "()" contributes nothing
        try:
            points = [int(tok) for tok in re.split(r"[,\s]+", body)]
        except ValueError:
            raise MalformedCycle(f"non-integer point in cycle {m.group(0)!r}")
        for p in points:
            if not 1 <= p <= degree:
                raise PointOutOfRange(f"point {p} outside 1..{degree}")
            if p in used:
                raise RepeatedPoint(f"point {p} appears twice")
            used.add(p)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b - 1
    if pos != len(text):
        raise MalformedCycle(f"trailing garbage at position {pos} in {text!r}")
    return Permutation(images)


def _rows_to_bytes(rows: np.ndarray) -> List[bytes]:
    rb = rows.shape[1] * rows.dtype.itemsize
    blob = np.ascontiguousarray(rows).tobytes()
    return [blob[i * rb:(i + 1) * rb] for i in range(rows.shape[0])]


class PermGroup:
    """A permutation group given by generators, enumerable on demand.

    ``enumerate_elements`` performs the breadth-first closure; all
    statistics work off the packed element matrix it produces.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 cap: int = DEFAULT_ENUM_CAP, _packed: Optional[np.ndarray] = None):
        if degree < 1:
            raise WreathlabError("degree must be positive")
        for g in generators:
            if g.degree != degree:
                raise WreathlabError("generator degree mismatch")
        self.degree = degree
        self.generators = [g for g in generators if not g.is_identity()]
        self.cap = cap
        self._packed = _packed
        self._byteset: Optional[frozenset] = None

    def __repr__(self) -> str:
        ordinfo = f", order={self._packed.shape[0]}" if self._packed is not None else ""
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)}{ordinfo})"

    # -- enumeration ------------------------------------------------------

    def enumerate_elements(self, cap: Optional[int] = None) -> np.ndarray:
        """Materialize the full element list; rows in lexicographic order."""
        if self._packed is not None:
            return self._packed
        cap = self.cap if cap is None else cap
        if cap < 1:
            raise WreathlabError("cap must be >= 1")
        d = self.degree
        dt = _dtype_for(d)
        gens = [np.array(g.images, dtype=dt) for g in self.generators]
        ident = np.arange(d, dtype=dt)
        seen = {ident.tobytes()}
        frontier = ident.reshape(1, d)
        while frontier.shape[0]:
            new: List[bytes] = []
            for garr in gens:
                cand = garr[frontier.astype(np.intp)] if dt != np.uint8 else garr[frontier]
                for b in _rows_to_bytes(cand):
                    if b not in seen:
                        seen.add(b)
                        new.append(b)
            if len(seen) > cap:
                raise CapExceeded(
                    f"group closure exceeded cap {cap} (degree {d})")
            if not new:
                break
            frontier = np.frombuffer(b"".join(new), dtype=dt).reshape(len(new), d)
        packed = np.frombuffer(b"".join(sorted(seen)), dtype=dt).reshape(len(seen), d)
        self._packed = packed
        return packed

    @property
    def order(self) -> int:
        return self.enumerate_elements().shape[0]

    def elements(self) -> Iterator[Permutation]:
        """Iterate elements in canonical (lexicographic image) order."""
        for row in self.enumerate_elements():
            yield Permutation._trusted(tuple(int(x) for x in row))

    def element_bytes(self) -> frozenset:
        if self._byteset is None:
            self._byteset = frozenset(_rows_to_bytes(self.enumerate_elements()))
        return self._byteset

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        row = np.array(g.images, dtype=_dtype_for(self.degree))
        return row.tobytes() in self.element_bytes()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    # -- orbit machinery --------------------------------------------------

    def orbits(self) -> List[List[int]]:
        """Orbit partition of the points, from the generators alone."""
        parent = list(range(self.degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x, y in enumerate(g.images):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        buckets: dict = {}
        for x in range(self.degree):
            buckets.setdefault(find(x), []).append(x)
        return [buckets[r] for r in sorted(buckets)]

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def point_stabilizer(self, x: int) -> "PermGroup":
        """Subgroup of all elements fixing x, with its element list attached."""
        if not 0 <= x < self.degree:
            raise WreathlabError("point out of range")
        packed = self.enumerate_elements()
        mask = packed[:, x] == np.asarray(x, dtype=packed.dtype)
        sub = np.ascontiguousarray(packed[mask])
        gens = [Permutation._trusted(tuple(int(v) for v in row))
                for row in sub if tuple(int(v) for v in row) != tuple(range(self.degree))]
        return PermGroup(self.degree, gens, cap=self.cap, _packed=sub)

    def rank(self) -> int:
        """Number of orbits of a point stabilizer (transitive groups only)."""
        if not self.is_transitive():
            raise NotTransitive("rank is defined for transitive groups")
        stab = self.point_stabilizer(0)
        return _orbit_count_of_rows(stab.enumerate_elements(), self.degree)

    def sharp_transitivity_degree(self) -> int:
        """Largest t with |G| = n!/(n-t)! and transitivity on distinct t-tuples.

        Searches t <= n-1 so that the symmetric group reports n-1 (its
        simultaneous sharp n-transitivity is degenerate).  Returns 0 for
        intransitive groups.
        """
        n = self.degree
        order = self.order
        best = 0
        for t in range(1, max(n - 1, 1) + 1):
            tuples = factorial(n) // factorial(n - t)
            if tuples > order:
                break
            if tuples != order:
                continue
            if self._tuple_orbit_size(t) == tuples:
                best = t
        return best

    def _tuple_orbit_size(self, t: int) -> int:
        start = tuple(range(t))
        gens = [g.images for g in self.generators]
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for tup in frontier:
                for im in gens:
                    new = tuple(im[x] for x in tup)
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
            frontier = nxt
        return len(seen)


def _orbit_count_of_rows(rows: np.ndarray, degree: int) -> int:
    parent = list(range(degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        for x in range(degree):
            y = int(row[x])
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    return len({find(x) for x in range(degree)})


class Coset:
    """The right translate {c * representative : c in subgroup}.

    Elements are generated on the fly from the subgroup's packed matrix;
    nothing per-coset is stored.
    """

    def __init__(self, subgroup: PermGroup, representative: Permutation):
        if subgroup.degree != representative.degree:
            raise WreathlabError("coset representative degree mismatch")
        self.subgroup = subgroup
        self.representative = representative

    @property
    def degree(self) -> int:
        return self.subgroup.degree

    @property
    def size(self) -> int:
        return self.subgroup.order

    def enumerate_elements(self) -> np.ndarray:
        """Packed element matrix of the coset (rows: images of c * rep)."""
        sub = self.subgroup.enumerate_elements()
        rep = np.array(self.representative.images, dtype=sub.dtype)
        if sub.dtype == np.uint8:
            return rep[sub]
        return rep[sub.astype(np.intp)]

    def elements(self) -> Iterator[Permutation]:
        for row in self.enumerate_elements():
            yield Permutation._trusted(tuple(int(x) for x in row))
