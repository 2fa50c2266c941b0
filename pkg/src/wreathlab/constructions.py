"""Builders for named groups, product/wreath actions, and the expression language.

Point encodings are fixed: the imprimitive action on [m] x [n] uses
point = y*m + x, and the power action on [m]^[n] encodes a function w as
sum_y w(y) * m^y (coordinate y is the base-m digit y).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .errors import (
    DegreeOverflow,
    ExpressionError,
    NotPrime,
    WreathlabError,
)
from .exactmath import is_prime
from .permcore import Coset, DEFAULT_ENUM_CAP, Permutation, PermGroup, parse_cycles

#: Ceiling on the number of points of any constructed action.
DEGREE_CAP = 10_000


# -- named groups ---------------------------------------------------------

def trivial(n: int) -> PermGroup:
    return PermGroup(n, [])


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise WreathlabError("n must be >= 1")
    gens = []
    if n >= 2:
        gens.append(parse_cycles("(1 2)", n))
    if n >= 3:
        gens.append(Permutation(tuple(range(1, n)) + (0,)))
    return PermGroup(n, gens)


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise WreathlabError("n must be >= 1")
    gens = []
    if n >= 3:
        gens.append(parse_cycles("(1 2 3)", n))
    if n >= 4:
        # 3-cycles (1 2 3), (2 3 4), ..., (n-2 n-1 n) generate A_n
        for i in range(2, n - 1):
            gens.append(parse_cycles(f"({i} {i + 1} {i + 2})", n))
    return PermGroup(n, gens)


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise WreathlabError("n must be >= 1")
    if n == 1:
        return trivial(1)
    return PermGroup(n, [Permutation(tuple(range(1, n)) + (0,))])


def agl1(p: int) -> PermGroup:
    """AGL_1(p) = {x -> ax+b mod p}, sharply 2-transitive of order p(p-1)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime (prime-power fields are not implemented)")
    gens = [Permutation(tuple((x + 1) % p for x in range(p)))]
    if p > 2:
        g = _primitive_root(p)
        gens.append(Permutation(tuple((g * x) % p for x in range(p))))
    return PermGroup(p, gens)


def _primitive_root(p: int) -> int:
    phi = p - 1
    factors = set()
    m, q = phi, 2
    while q * q <= m:
        if m % q == 0:
            factors.add(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in factors):
            return g
    raise WreathlabError("no primitive root found")  # unreachable for prime p


# -- wreath elements and action images ------------------------------------

@dataclass(frozen=True)
class WreathElement:
    """An element (alpha, b) of A wr B: base map alpha plus top permutation b."""

    base: Tuple[Permutation, ...]
    top: Permutation

    def __post_init__(self):
        if len(self.base) != self.top.degree:
            raise WreathlabError("base length must equal top degree")

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        # (alpha, b)(beta, c) = (alpha * beta^(b^-1), b c) with beta^b(y) = beta(y b^-1)
        b = self.top
        newbase = tuple(self.base[y] * other.base[b(y)] for y in range(b.degree))
        return WreathElement(newbase, self.top * other.top)

    def image_imprimitive(self) -> Permutation:
        m = self.base[0].degree
        n = self.top.degree
        images = [0] * (m * n)
        for y in range(n):
            ay = self.base[y].images
            yb = self.top(y)
            for x in range(m):
                images[y * m + x] = yb * m + ay[x]
        return Permutation(images)

    def image_power(self) -> Permutation:
        m = self.base[0].degree
        n = self.top.degree
        deg = m ** n
        binv = self.top.inverse().images
        images = [0] * deg
        for point in range(deg):
            digits = []
            p = point
            for _ in range(n):
                digits.append(p % m)
                p //= m
            out = 0
            for y in reversed(range(n)):
                src = binv[y]
                out = out * m + self.base[src](digits[src])
            images[point] = out
        return Permutation(images)


def bi_product(base: Sequence[Permutation], b: Permutation, i: int) -> Permutation:
    """Ordered product of base entries along the i-th cycle of b.

    Cycles are indexed as in ``cycle_decomposition`` (each begins at its
    smallest point); the product runs alpha(y) alpha(yb) ... left to right.
    """
    cycles = b.cycles().cycles
    if not 0 <= i < len(cycles):
        raise WreathlabError(f"cycle index {i} out of range (b has {len(cycles)} cycles)")
    cyc = cycles[i]
    prod = Permutation.identity(base[0].degree)
    for y in cyc:
        prod = prod * base[y]
    return prod


# -- product and wreath groups --------------------------------------------

def direct_product_intransitive(groups: Sequence[PermGroup]) -> PermGroup:
    if not groups:
        raise WreathlabError("need at least one factor")
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for gen in g.generators:
            images = list(range(degree))
            for x, y in enumerate(gen.images):
                images[offset + x] = offset + y
            gens.append(Permutation(images))
        offset += g.degree
    return PermGroup(degree, gens)


def direct_product_product(groups: Sequence[PermGroup]) -> PermGroup:
    if not groups:
        raise WreathlabError("need at least one factor")
    degree = 1
    for g in groups:
        degree *= g.degree
        if degree > DEGREE_CAP:
            raise DegreeOverflow(f"product degree exceeds cap {DEGREE_CAP}")
    radices = [g.degree for g in groups]
    gens = []
    for i, g in enumerate(groups):
        lower = 1
        for r in radices[:i]:
            lower *= r
        for gen in g.generators:
            images = [0] * degree
            for point in range(degree):
                xi = (point // lower) % radices[i]
                images[point] = point + (gen(xi) - xi) * lower
            gens.append(Permutation(images))
    return PermGroup(degree, gens)


def _check_wreath_args(A: PermGroup, B: PermGroup) -> Tuple[int, int]:
    m, n = A.degree, B.degree
    if m < 2:
        raise WreathlabError("base degree must be >= 2")
    if n < 1:
        raise WreathlabError("top degree must be >= 1")
    return m, n


def _base_gen_element(gen: Permutation, coord: int, m: int, n: int) -> WreathElement:
    base = [Permutation.identity(m)] * n
    base[coord] = gen
    return WreathElement(tuple(base), Permutation.identity(n))


def _top_gen_element(gen: Permutation, m: int) -> WreathElement:
    return WreathElement(tuple([Permutation.identity(m)] * gen.degree), gen)


def wreath_imprimitive(A: PermGroup, B: PermGroup) -> PermGroup:
    """A wr_I B on [m] x [n]: (x, y) -> (x alpha(y), y b)."""
    m, n = _check_wreath_args(A, B)
    if m * n > DEGREE_CAP:
        raise DegreeOverflow(f"imprimitive degree {m * n} exceeds cap {DEGREE_CAP}")
    gens = [_base_gen_element(g, 0, m, n).image_imprimitive() for g in A.generators]
    gens += [_top_gen_element(g, m).image_imprimitive() for g in B.generators]
    if n > 1 and not B.is_transitive():
        # closure only reaches coordinates in the B-orbit of 0; seed them all
        gens = [_base_gen_element(g, c, m, n).image_imprimitive()
                for c in range(n) for g in A.generators]
        gens += [_top_gen_element(g, m).image_imprimitive() for g in B.generators]
    return PermGroup(m * n, gens)


def wreath_power(A: PermGroup, B: PermGroup) -> PermGroup:
    """A wr_P B on [m]^[n]: w -> (y -> w(y b^-1) alpha(y b^-1))."""
    m, n = _check_wreath_args(A, B)
    deg = m ** n
    if deg > DEGREE_CAP:
        raise DegreeOverflow(f"power degree {deg} exceeds cap {DEGREE_CAP}")
    coords = range(n) if (n > 1 and not B.is_transitive()) else [0] if n >= 1 else []
    gens = [_base_gen_element(g, c, m, n).image_power()
            for c in coords for g in A.generators]
    gens += [_top_gen_element(g, m).image_power() for g in B.generators]
    return PermGroup(deg, gens)


def even_base_wreath(m: int, B: PermGroup, action: str = "power") -> PermGroup:
    """Index-2 subgroup of S_m wr B whose base entries have even sign product.

    Contains A_m^[n]; projects onto B.  Generated by A_m in every
    coordinate, paired transpositions across adjacent coordinates, and the
    top generators.
    """
    if m < 2:
        raise WreathlabError("base degree must be >= 2")
    if action not in ("imprimitive", "power"):
        raise WreathlabError(f"unknown action {action!r}")
    n = B.degree
    Sm = symmetric(m)
    Am = alternating(m)
    elements: List[WreathElement] = []
    for c in range(n):
        for g in Am.generators:
            elements.append(_base_gen_element(g, c, m, n))
    swap = Sm.generators[0]  # the transposition (1 2)
    for c in range(n - 1):
        base = [Permutation.identity(m)] * n
        base[c] = swap
        base[c + 1] = swap
        elements.append(WreathElement(tuple(base), Permutation.identity(n)))
    for g in B.generators:
        elements.append(_top_gen_element(g, m))
    if action == "imprimitive":
        if m * n > DEGREE_CAP:
            raise DegreeOverflow(f"imprimitive degree {m * n} exceeds cap {DEGREE_CAP}")
        gens = [e.image_imprimitive() for e in elements]
        return PermGroup(m * n, gens)
    if m ** n > DEGREE_CAP:
        raise DegreeOverflow(f"power degree {m ** n} exceeds cap {DEGREE_CAP}")
    gens = [e.image_power() for e in elements]
    return PermGroup(m ** n, gens)


def base_coset(A: PermGroup, tau: Sequence[Permutation], b: Permutation,
               action: str = "power") -> Coset:
    """Coset of the base group A^[n] (in the chosen action) translated by (tau, b)."""
    if action not in ("imprimitive", "power"):
        raise WreathlabError(f"unknown action {action!r}")
    m = A.degree
    n = b.degree
    if len(tau) != n:
        raise WreathlabError("tau length must equal top degree")
    for t in tau:
        if t.degree != m:
            raise WreathlabError("tau entry degree mismatch")
    elements = [_base_gen_element(g, c, m, n) for c in range(n) for g in A.generators]
    rep = WreathElement(tuple(tau), b)
    if action == "imprimitive":
        gens = [e.image_imprimitive() for e in elements]
        group = PermGroup(m * n, gens)
        return Coset(group, rep.image_imprimitive())
    deg = m ** n
    if deg > DEGREE_CAP:
        raise DegreeOverflow(f"power degree {deg} exceeds cap {DEGREE_CAP}")
    gens = [e.image_power() for e in elements]
    group = PermGroup(deg, gens)
    return Coset(group, rep.image_power())


# -- expression language --------------------------------------------------
#
# expr  := atom | wrI(e, e) | wrP(e, e) | prodI(e, e, ...) | prodP(e, e, ...)
#        | evenWr(int, e [, action]) | coset(e, perm)
# atom  := S(int) | A(int) | C(int) | AGL1(int) | gens(int; perm, perm, ...)

@dataclass(frozen=True)
class AtomNode:
    kind: str  # "S" | "A" | "C" | "AGL1"
    n: int


@dataclass(frozen=True)
class GensNode:
    degree: int
    perms: Tuple[str, ...]


@dataclass(frozen=True)
class WreathNode:
    action: str  # "imprimitive" | "power"
    left: "GroupExpr"
    right: "GroupExpr"


@dataclass(frozen=True)
class ProductNode:
    action: str  # "intransitive" | "product"
    factors: Tuple["GroupExpr", ...]


@dataclass(frozen=True)
class EvenWrNode:
    m: int
    top: "GroupExpr"
    action: str


@dataclass(frozen=True)
class CosetNode:
    group: "GroupExpr"
    perm: str


GroupExpr = Union[AtomNode, GensNode, WreathNode, ProductNode, EvenWrNode, CosetNode]


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise ExpressionError(f"expected {ch!r}", where=f"position {self.pos}")
        self.pos += 1

    def name(self) -> str:
        self.skip_ws()
        m = re.match(r"[A-Za-z][A-Za-z0-9]*", self.text[self.pos:])
        if not m:
            raise ExpressionError("expected a name", where=f"position {self.pos}")
        self.pos += m.end()
        return m.group(0)

    def integer(self) -> int:
        self.skip_ws()
        m = re.match(r"\d+", self.text[self.pos:])
        if not m:
            raise ExpressionError("expected an integer", where=f"position {self.pos}")
        self.pos += m.end()
        return int(m.group(0))

    def perm_text(self) -> str:
        """Consume one or more balanced "(...)" groups of cycle notation."""
        self.skip_ws()
        start = self.pos
        count = 0
        while self.peek() == "(":
            m = re.match(r"\(([^()]*)\)", self.text[self.pos:])
            if not m:
                raise ExpressionError("unbalanced cycle", where=f"position {self.pos}")
            self.pos += m.end()
            count += 1
        if count == 0:
            raise ExpressionError("expected cycle notation", where=f"position {start}")
        return self.text[start:self.pos].strip()


def parse_group_expr(text: str) -> GroupExpr:
    sc = _Scanner(text)
    node = _parse_expr(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ExpressionError("trailing garbage", where=f"position {sc.pos}")
    return node


def _parse_expr(sc: _Scanner) -> GroupExpr:
    name = sc.name()
    if name in ("S", "A", "C", "AGL1"):
        sc.expect("(")
        n = sc.integer()
        sc.expect(")")
        return AtomNode(name, n)
    if name == "gens":
        sc.expect("(")
        degree = sc.integer()
        sc.expect(";")
        perms = [sc.perm_text()]
        while sc.peek() == ",":
            sc.expect(",")
            perms.append(sc.perm_text())
        sc.expect(")")
        return GensNode(degree, tuple(perms))
    if name in ("wrI", "wrP"):
        sc.expect("(")
        left = _parse_expr(sc)
        sc.expect(",")
        right = _parse_expr(sc)
        sc.expect(")")
        return WreathNode("imprimitive" if name == "wrI" else "power", left, right)
    if name in ("prodI", "prodP"):
        sc.expect("(")
        factors = [_parse_expr(sc)]
        while sc.peek() == ",":
            sc.expect(",")
            factors.append(_parse_expr(sc))
        sc.expect(")")
        if len(factors) < 2:
            raise ExpressionError(f"{name} needs at least two factors")
        return ProductNode("intransitive" if name == "prodI" else "product",
                           tuple(factors))
    if name == "evenWr":
        sc.expect("(")
        m = sc.integer()
        sc.expect(",")
        top = _parse_expr(sc)
        action = "power"
        if sc.peek() == ",":
            sc.expect(",")
            action = sc.name()
            if action not in ("imprimitive", "power"):
                raise ExpressionError(f"unknown action {action!r}")
        sc.expect(")")
        return EvenWrNode(m, top, action)
    if name == "coset":
        sc.expect("(")
        group = _parse_expr(sc)
        sc.expect(",")
        perm = sc.perm_text()
        sc.expect(")")
        return CosetNode(group, perm)
    raise ExpressionError(f"unknown constructor {name!r}")


def elaborate(expr: GroupExpr, path: str = "root") -> Union[PermGroup, Coset]:
    """Recursively build the group or coset an expression denotes."""
    try:
        return _elaborate(expr, path)
    except ExpressionError:
        raise
    except WreathlabError as exc:
        raise ExpressionError(str(exc), where=path) from exc


def _elaborate(expr: GroupExpr, path: str) -> Union[PermGroup, Coset]:
    if isinstance(expr, AtomNode):
        if expr.kind == "S":
            return symmetric(expr.n)
        if expr.kind == "A":
            return alternating(expr.n)
        if expr.kind == "C":
            return cyclic(expr.n)
        return agl1(expr.n)
    if isinstance(expr, GensNode):
        gens = [parse_cycles(p, expr.degree) for p in expr.perms]
        return PermGroup(expr.degree, gens)
    if isinstance(expr, WreathNode):
        left = _expect_group(elaborate(expr.left, path + ".left"), path)
        right = _expect_group(elaborate(expr.right, path + ".right"), path)
        if expr.action == "imprimitive":
            return wreath_imprimitive(left, right)
        return wreath_power(left, right)
    if isinstance(expr, ProductNode):
        factors = [_expect_group(elaborate(f, f"{path}.factor{i}"), path)
                   for i, f in enumerate(expr.factors)]
        if expr.action == "intransitive":
            return direct_product_intransitive(factors)
        return direct_product_product(factors)
    if isinstance(expr, EvenWrNode):
        top = _expect_group(elaborate(expr.top, path + ".top"), path)
        return even_base_wreath(expr.m, top, expr.action)
    if isinstance(expr, CosetNode):
        group = _expect_group(elaborate(expr.group, path + ".group"), path)
        rep = parse_cycles(expr.perm, group.degree)
        return Coset(group, rep)
    raise ExpressionError(f"unknown node {expr!r}", where=path)


def _expect_group(value: Union[PermGroup, Coset], path: str) -> PermGroup:
    if isinstance(value, Coset):
        raise ExpressionError("cosets cannot be nested inside constructions", where=path)
    return value
