"""Exact fixed-point spectra, cycle-count vectors, and cycle index polynomials.

All statistics are computed from the packed element matrix of a group or
coset.  Per-element cycle structure is extracted with a pointer-doubling
sweep (each point learns the minimum of its cycle in log2(degree) rounds),
which keeps order-a-million groups tractable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

import numpy as np

from .errors import WreathlabError
from .exactmath import RationalPoly
from .permcore import Coset, PermGroup

#: Spectra are dense in the degree; power actions inflate degree fast.
DEGREE_CAP = 10_000

_CHUNK = 1 << 15

GroupOrCoset = Union[PermGroup, Coset]


@dataclass(frozen=True)
class FixSpectrum:
    """counts[k] = number of elements with exactly k fixed points."""

    degree: int
    counts: Tuple[int, ...]
    total: int

    def __post_init__(self):
        if self.degree > DEGREE_CAP:
            raise WreathlabError(f"degree {self.degree} exceeds spectrum cap {DEGREE_CAP}")
        if sum(self.counts) != self.total:
            raise WreathlabError("spectrum counts do not sum to the total")

    def delta(self, k: int) -> Fraction:
        if 0 <= k <= self.degree:
            return Fraction(self.counts[k], self.total)
        return Fraction(0)

    @property
    def delta0(self) -> Fraction:
        return self.delta(0)

    def delta_vector(self) -> Tuple[Fraction, ...]:
        return tuple(self.delta(k) for k in range(self.degree + 1))


@dataclass(frozen=True)
class CycleCountVector:
    """counts[l] = number of elements with exactly l cycles (index 0 unused)."""

    degree: int
    counts: Tuple[int, ...]
    total: int

    def stir(self, l: int) -> int:
        if 1 <= l <= self.degree:
            return self.counts[l]
        return 0

    def stir_list(self) -> Tuple[int, ...]:
        return self.counts


@dataclass(frozen=True)
class CycleIndex:
    """Sparse exact cycle index: exponent vector (m_1..m_n) -> coefficient."""

    degree: int
    terms: Dict[Tuple[int, ...], Fraction]

    def specialize_fix(self) -> RationalPoly:
        """Z(G; x, 1, ..., 1): the fixed-point generating polynomial."""
        coeffs = [Fraction(0)] * (self.degree + 1)
        for mvec, c in self.terms.items():
            coeffs[mvec[0]] += c
        return RationalPoly(tuple(coeffs))

    def specialize_cycles(self) -> RationalPoly:
        """Z(G; x, x, ..., x): the cycle-count generating polynomial."""
        coeffs = [Fraction(0)] * (self.degree + 1)
        for mvec, c in self.terms.items():
            coeffs[sum(mvec)] += c
        return RationalPoly(tuple(coeffs))


def _packed(C: GroupOrCoset) -> np.ndarray:
    rows = C.enumerate_elements()
    if rows.shape[1] > DEGREE_CAP:
        raise WreathlabError(f"degree {rows.shape[1]} exceeds spectrum cap {DEGREE_CAP}")
    return rows


def _fix_counts(rows: np.ndarray) -> np.ndarray:
    d = rows.shape[1]
    idx = np.arange(d, dtype=rows.dtype)
    out = np.empty(rows.shape[0], dtype=np.int64)
    for s in range(0, rows.shape[0], _CHUNK):
        out[s:s + _CHUNK] = (rows[s:s + _CHUNK] == idx).sum(axis=1)
    return out


def _cycle_stats(rows: np.ndarray, want_hist: bool):
    """Per-row cycle counts and (optionally) aggregated cycle-type counts.

    Pointer doubling: after round j, ``mn[x]`` holds the minimum index on
    the forward path of length 2^j from x, so after ceil(log2 d) rounds it
    is the minimum of x's whole cycle.  Cycle count = number of positions
    that are their own cycle minimum.

    When ``want_hist`` is set, the second return value maps packed
    cycle-length histograms (bytes of an int16 vector indexed by length,
    slot 0 unused) to the number of elements with that cycle type.
    Aggregation happens chunk by chunk so memory stays bounded by the
    chunk size, not the group order.
    """
    n, d = rows.shape
    rounds = max(1, int(np.ceil(np.log2(max(d, 2)))))
    counts = np.empty(n, dtype=np.int64)
    agg: Optional[Dict[bytes, int]] = {} if want_hist else None
    base = np.arange(d, dtype=np.int32)
    for s in range(0, n, _CHUNK):
        chunk = rows[s:s + _CHUNK].astype(np.int32)
        r = chunk.shape[0]
        mn = np.broadcast_to(base, (r, d)).copy()
        p = chunk
        for _ in range(rounds):
            nxt = np.minimum(mn, np.take_along_axis(mn, p, axis=1))
            if np.array_equal(nxt, mn):
                break  # every path already covers its whole cycle
            mn = nxt
            p = np.take_along_axis(p, p, axis=1)
        is_min = mn == base
        counts[s:s + r] = is_min.sum(axis=1)
        if want_hist:
            # cycle size = multiplicity of the cycle's minimum label;
            # per-row bincounts done flat for speed
            rowoff = (np.arange(r, dtype=np.int64) * d)[:, None]
            sizes = np.bincount(
                (mn.astype(np.int64) + rowoff).ravel(),
                minlength=r * d).reshape(r, d)
            ri, xi = np.nonzero(is_min)
            hists = np.bincount(
                ri * (d + 1) + sizes[ri, xi],
                minlength=r * (d + 1)).reshape(r, d + 1).astype(np.int16)
            blob = hists.tobytes()
            rb = (d + 1) * 2
            for i in range(r):
                key = blob[i * rb:(i + 1) * rb]
                agg[key] = agg.get(key, 0) + 1
    return counts, agg


def fix_spectrum(C: GroupOrCoset) -> FixSpectrum:
    rows = _packed(C)
    d = rows.shape[1]
    fx = _fix_counts(rows)
    counts = np.bincount(fx, minlength=d + 1)
    return FixSpectrum(d, tuple(int(c) for c in counts), rows.shape[0])


def delta_k(C: GroupOrCoset, k: int) -> Fraction:
    return fix_spectrum(C).delta(k)


def delta_vector(C: GroupOrCoset) -> Tuple[Fraction, ...]:
    return fix_spectrum(C).delta_vector()


def cycle_count_vector(C: GroupOrCoset) -> CycleCountVector:
    rows = _packed(C)
    d = rows.shape[1]
    cyc, _ = _cycle_stats(rows, want_hist=False)
    counts = np.bincount(cyc, minlength=d + 1)
    return CycleCountVector(d, tuple(int(c) for c in counts), rows.shape[0])


def cycle_index(G: GroupOrCoset) -> CycleIndex:
    rows = _packed(G)
    d = rows.shape[1]
    _, agg = _cycle_stats(rows, want_hist=True)
    order = rows.shape[0]
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for key, c in agg.items():
        hist = np.frombuffer(key, dtype=np.int16)
        mvec = tuple(int(hist[i]) for i in range(1, d + 1))
        terms[mvec] = Fraction(c, order)
    return CycleIndex(d, terms)


def fix_pgf(G: GroupOrCoset) -> RationalPoly:
    """Generating polynomial sum_k delta_k x^k."""
    spec = fix_spectrum(G)
    return RationalPoly(tuple(Fraction(c, spec.total) for c in spec.counts))


def cycle_pgf(G: GroupOrCoset) -> RationalPoly:
    """Generating polynomial (1/|G|) sum_l stir(G, l) x^l."""
    ccv = cycle_count_vector(G)
    return RationalPoly(tuple(Fraction(c, ccv.total) for c in ccv.counts))


def parity_split(G: GroupOrCoset) -> Tuple[CycleCountVector, CycleCountVector]:
    """Cycle-count vectors of the even and odd elements, in that order.

    The sign of an element with c cycles on d points is (-1)^(d-c), so the
    split falls out of the cycle counts directly.
    """
    rows = _packed(G)
    d = rows.shape[1]
    cyc, _ = _cycle_stats(rows, want_hist=False)
    even_mask = (d - cyc) % 2 == 0
    even = np.bincount(cyc[even_mask], minlength=d + 1)
    odd = np.bincount(cyc[~even_mask], minlength=d + 1)
    return (
        CycleCountVector(d, tuple(int(c) for c in even), int(even_mask.sum())),
        CycleCountVector(d, tuple(int(c) for c in odd), int((~even_mask).sum())),
    )
