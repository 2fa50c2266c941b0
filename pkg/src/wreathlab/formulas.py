"""Closed-form evaluators for fixed-point statistics of products and wreaths.

These operate on delta vectors, stir vectors, and generating polynomials,
never on explicit groups, so they evaluate without any enumeration; the
test suite checks each of them against the enumeration oracle.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import factorial
from typing import Dict, List, NamedTuple, Sequence, Tuple

from .errors import NotNormal
from .exactmath import (
    RationalPoly,
    d_seq,
    divisors,
    e_seq,
    euler_phi,
    poly_derivative,
    poly_eval,
    stirling_first_unsigned,
)
from .groupstats import CycleCountVector, fix_spectrum
from .permcore import Coset, PermGroup

DeltaVector = Sequence[Fraction]


class BoundsPair(NamedTuple):
    lower: Fraction
    upper: Fraction


def _delta0(deltas: DeltaVector) -> Fraction:
    return Fraction(deltas[0]) if deltas else Fraction(0)


def delta_poly(deltas: DeltaVector) -> RationalPoly:
    return RationalPoly(tuple(Fraction(d) for d in deltas))


def _stir_counts(stir) -> Tuple[Tuple[int, ...], int]:
    """Accept a CycleCountVector or a bare stir sequence indexed from 0."""
    if isinstance(stir, CycleCountVector):
        return stir.counts, stir.total
    counts = tuple(int(s) for s in stir)
    return counts, sum(counts)


# -- sharply transitive groups --------------------------------------------

def sharply_transitive_delta_k(n: int, t: int, k: int) -> Fraction:
    """delta_k of a sharply t-transitive subgroup of S_n."""
    if not (n >= 2 and 1 <= t <= n and 0 <= k <= n):
        raise ValueError("need n >= 2, 1 <= t <= n, 0 <= k <= n")
    if k == n:
        return Fraction(factorial(n - t), factorial(n))
    if k >= t:
        return Fraction(0)
    first = sum(Fraction((-1) ** j, factorial(j)) for j in range(t - k))
    second = sum(
        Fraction((-1) ** j, factorial(n - k - j) * factorial(j))
        for j in range(t - k, n - k + 1)
    )
    return first / factorial(k) + Fraction(factorial(n - t), factorial(k)) * second


def sharply_transitive_delta_recursive(n: int, t: int) -> Fraction:
    """Derangement proportion of a sharply t-transitive group, by recurrence.

    Each recursion step passes to the pointwise stabilizer of k points,
    which is sharply (t-k)-transitive of degree n-k; the base case t = 1
    is a regular group with proportion (n-1)/n.
    """
    if not 1 <= t <= n:
        raise ValueError("need 1 <= t <= n")
    if t == 1:
        return Fraction(n - 1, n)
    total = Fraction(factorial(n - t), n * factorial(n - 2))
    for k in range(2, t):
        total += Fraction(1, k * factorial(k - 2)) * \
            sharply_transitive_delta_recursive(n - k, t - k)
    return total


def symmetric_family_delta_k(n: int, k: int) -> Tuple[Fraction, Fraction, Fraction]:
    """(delta_k(S_n), delta_k(A_n), delta_k(S_n minus A_n))."""
    if not (n >= 1 and 0 <= k <= n):
        raise ValueError("need n >= 1, 0 <= k <= n")
    d = d_seq(n - k)
    e = e_seq(n - k)
    kf = factorial(k)
    return (d / kf, (d + e) / kf, (d - e) / kf)


# -- direct products ------------------------------------------------------

def intransitive_delta_k(deltas: Sequence[DeltaVector], k: int) -> Fraction:
    """Additive convolution over the factors (intransitive action)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    poly = RationalPoly((Fraction(1),))
    for vec in deltas:
        poly = poly * delta_poly(vec)
    return poly.coeff(k)


def _mult_convolution(vec: DeltaVector, l: int, k: int,
                      memo: Dict[Tuple[int, int], Fraction]) -> Fraction:
    """Sum over (j_1, ..., j_l) with product k >= 1 of prod delta_{j_r}."""
    if l == 0:
        return Fraction(1) if k == 1 else Fraction(0)
    key = (l, k)
    if key in memo:
        return memo[key]
    total = Fraction(0)
    for d in divisors(k):
        if d < len(vec) and vec[d] != 0:
            total += Fraction(vec[d]) * _mult_convolution(vec, l - 1, k // d, memo)
    memo[key] = total
    return total


def product_action_delta_k(deltas: Sequence[DeltaVector], k: int) -> Fraction:
    """Multiplicative convolution over distinct factors (product action)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        prod = Fraction(1)
        for vec in deltas:
            prod *= 1 - _delta0(vec)
        return 1 - prod
    return _mult_distinct(list(deltas), k)


def _mult_distinct(vecs: List[DeltaVector], k: int) -> Fraction:
    if not vecs:
        return Fraction(1) if k == 1 else Fraction(0)
    head, rest = vecs[0], vecs[1:]
    total = Fraction(0)
    for d in divisors(k):
        if d < len(head) and head[d] != 0:
            total += Fraction(head[d]) * _mult_distinct(rest, k // d)
    return total


# -- imprimitive wreath ----------------------------------------------------

def imprimitive_delta_k(deltaA: DeltaVector, deltaB: DeltaVector, k: int) -> Fraction:
    """delta_k(A wr_I B): sum over l of delta_l(B) times the l-fold additive
    convolution of A's delta vector at k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        dA = _delta0(deltaA)
        return sum((Fraction(db) * dA ** l for l, db in enumerate(deltaB)), Fraction(0))
    pa = delta_poly(deltaA)
    power = RationalPoly((Fraction(1),))
    total = Fraction(0)
    for l, db in enumerate(deltaB):
        if db != 0:
            total += Fraction(db) * power.coeff(k)
        power = _truncmul(power, pa, k)
    return total


def _truncmul(p: RationalPoly, q: RationalPoly, maxdeg: int) -> RationalPoly:
    out = [Fraction(0)] * (maxdeg + 1)
    for i, a in enumerate(p.coeffs):
        if a == 0 or i > maxdeg:
            continue
        for j, b in enumerate(q.coeffs):
            if i + j > maxdeg:
                break
            out[i + j] += a * b
    return RationalPoly(tuple(out))


def imprimitive_delta1(delta1A: Fraction, P_B: RationalPoly,
                       delta0A: Fraction) -> Fraction:
    """delta_1(A wr_I B) = delta_1(A) * P_B'(delta(A))."""
    return Fraction(delta1A) * poly_eval(poly_derivative(P_B), delta0A)


# -- power wreath ----------------------------------------------------------

def power_coset_delta_k(deltaA: DeltaVector, l: int, k: int) -> Fraction:
    """delta_k of the base-group coset A^[n] b where b has l cycles."""
    if l < 1:
        raise ValueError("l must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 1 - (1 - _delta0(deltaA)) ** l
    return _mult_convolution(deltaA, l, k, {})


def power_delta_k(deltaA: DeltaVector, stirB, k: int) -> Fraction:
    """delta_k(A wr_P B) from A's delta vector and B's stir vector."""
    counts, total = _stir_counts(stirB)
    if k < 0:
        raise ValueError("k must be >= 0")
    memo: Dict[Tuple[int, int], Fraction] = {}
    acc = Fraction(0)
    for l in range(1, len(counts)):
        if counts[l] == 0:
            continue
        if k == 0:
            inner = 1 - (1 - _delta0(deltaA)) ** l
        else:
            inner = _mult_convolution(deltaA, l, k, memo)
        acc += counts[l] * inner
    return acc / total


def power_delta1(delta1A: Fraction, C_B: RationalPoly) -> Fraction:
    """delta_1(A wr_P B) = C_B(delta_1(A))."""
    return poly_eval(C_B, delta1A)


def power_delta_cyclic(delta0A: Fraction, n: int) -> Fraction:
    """delta(A wr_P C_n) = 1 - (1/n) sum_{d|n} phi(d) (1 - delta(A))^(n/d)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    z = 1 - Fraction(delta0A)
    total = sum(euler_phi(d) * z ** (n // d) for d in divisors(n))
    return 1 - Fraction(total, n)


def power_delta_full_symmetric(delta0A: Fraction, n: int) -> Fraction:
    """delta(A wr_P S_n) = 1 - prod_{l=1}^{n} (1 - delta(A)/l)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    d = Fraction(delta0A)
    prod = Fraction(1)
    for l in range(1, n + 1):
        prod *= 1 - d / l
    return 1 - prod


def power_symmetric_lower_bound(delta0A: Fraction, n: int) -> float:
    """Float lower bound 1 - n^(-delta(A)) for delta(A wr_P S_n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 1.0 - float(n) ** (-float(Fraction(delta0A)))


# -- general bounds --------------------------------------------------------

def rank_bounds(r: int, n: int) -> BoundsPair:
    """((r-1)/n, 1 - 1/r) for a transitive group of rank r and degree n."""
    if r < 2 or n < 2:
        raise ValueError("need r >= 2 and n >= 2")
    return BoundsPair(Fraction(r - 1, n), 1 - Fraction(1, r))


def cycle_pgf_from_stir(stirB) -> RationalPoly:
    counts, total = _stir_counts(stirB)
    return RationalPoly(tuple(Fraction(c, total) for c in counts))


def sandwich_bounds(deltaL: Fraction, deltaU: Fraction, stirB) -> BoundsPair:
    """(1 - C_B(1 - deltaL), 1 - C_B(1 - deltaU)) for the normal-subgroup sandwich."""
    deltaL, deltaU = Fraction(deltaL), Fraction(deltaU)
    if not 0 <= deltaL <= deltaU <= 1:
        raise ValueError("need 0 <= deltaL <= deltaU <= 1")
    cb = cycle_pgf_from_stir(stirB)
    return BoundsPair(1 - poly_eval(cb, 1 - deltaL), 1 - poly_eval(cb, 1 - deltaU))


def coset_delta_extrema(A: PermGroup, C: PermGroup) -> Tuple[Fraction, Fraction]:
    """(min, max) of delta(Cg) over a transversal of the normal subgroup C in A."""
    if A.degree != C.degree:
        raise NotNormal("degree mismatch")
    for a in A.generators:
        ainv = a.inverse()
        for c in C.generators:
            if (ainv * c * a) not in C:
                raise NotNormal("subgroup is not normal in the ambient group")
    for c in C.generators:
        if c not in A:
            raise NotNormal("subgroup is not contained in the ambient group")
    lo, hi = None, None
    seen = set()
    for a in A.elements():
        key_rows = Coset(C, a).enumerate_elements()
        keys = key_rows.tobytes()
        rb = key_rows.shape[1] * key_rows.dtype.itemsize
        first = keys[:rb]
        if first in seen:
            continue
        seen.update(keys[i * rb:(i + 1) * rb] for i in range(key_rows.shape[0]))
        spec = fix_spectrum(Coset(C, a))
        d0 = spec.delta0
        lo = d0 if lo is None or d0 < lo else lo
        hi = d0 if hi is None or d0 > hi else hi
    return lo, hi


# -- limits ----------------------------------------------------------------

def imprimitive_full_symmetric_delta(delta0A: Fraction, n: int) -> Fraction:
    """Exact delta(A wr_I S_n) = sum_l delta(A)^l / l! * d_{n-l}."""
    d = Fraction(delta0A)
    return sum((d ** l / factorial(l)) * d_seq(n - l) for l in range(n + 1))


def limit_gap_imprimitive_symmetric(n: int, delta0A: Fraction) -> float:
    """|delta(A wr_I S_n) - e^(delta(A) - 1)| in 64-bit floating point."""
    exact = imprimitive_full_symmetric_delta(delta0A, n)
    return abs(float(exact) - math.exp(float(Fraction(delta0A)) - 1.0))


def stir_vector_symmetric(n: int) -> Tuple[int, ...]:
    """stir(S_n, .) as a 0-indexed tuple of length n + 1."""
    return (0,) + tuple(stirling_first_unsigned(n, l) for l in range(1, n + 1))


def stir_vector_cyclic(n: int) -> Tuple[int, ...]:
    """stir(C_n, .): phi(n/d) at each divisor d of n."""
    out = [0] * (n + 1)
    for d in divisors(n):
        out[d] = euler_phi(n // d)
    return tuple(out)
