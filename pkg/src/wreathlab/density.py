"""Witness searches realizing density of derangement proportions.

Two parameterized families sweep the interval [delta(A), 1]: iterated
imprimitive wreaths with one-dimensional affine tops, and power-action
wreaths with regular cyclic tops over growing prime lists.  A third search
inverts the power-action map over a fixed catalog of classical groups.

Chain arithmetic runs on ``gmpy2.mpq`` (GMP-backed rationals); plain
``fractions.Fraction`` has a quadratic gcd that makes deep chains with
multi-megabit denominators orders of magnitude slower.  Results are
converted back to ``Fraction`` at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import gmpy2
from gmpy2 import mpq

from .errors import DegenerateDelta, EpsilonTooSmall, NotPrimePower
from .exactmath import (
    RationalPoly,
    d_seq,
    divisors,
    e_seq,
    euler_phi,
    is_prime,
    next_prime,
    poly_eval,
    prime_power_base,
)
from .groupstats import cycle_pgf
from .permcore import PermGroup

PARAM_CAP = 1_000_000

#: Abort a chain once its value needs this many bits; exact arithmetic past
#: this point is hopeless regardless of the rational backend.
BIT_BUDGET = 1 << 28

_PRIME_LIST_CAP = 64

#: Rationals bigger than this (total bits) are serialized as a decimal
#: approximation plus a size note instead of literal digits.
_JSON_DIGIT_BITS = 4096


def _rat_json(v: Fraction) -> Dict[str, object]:
    bits = v.numerator.bit_length() + v.denominator.bit_length()
    approx = f"{float(gmpy2.mpfr(mpq(v.numerator, v.denominator), 64)):.14e}"
    if bits <= _JSON_DIGIT_BITS:
        return {"num": v.numerator, "den": v.denominator, "decimal": approx}
    return {"bits": bits, "decimal": approx,
            "note": "exact rational too large to print"}


@dataclass(frozen=True)
class DensityWitness:
    family: str
    parameters: Dict[str, object]
    value: Fraction
    target: Fraction
    epsilon: Fraction

    def __post_init__(self):
        # mpq arithmetic: the value may have multi-megabit terms and
        # Fraction subtraction re-normalizes with a slow gcd
        gap = abs(mpq(self.value.numerator, self.value.denominator)
                  - mpq(self.target.numerator, self.target.denominator))
        if gap > mpq(self.epsilon.numerator, self.epsilon.denominator):
            raise ValueError("witness misses its target by more than epsilon")

    def to_json(self) -> Dict[str, object]:
        return {
            "family": self.family,
            "parameters": dict(self.parameters),
            "value": _rat_json(self.value),
            "target": _rat_json(self.target),
            "epsilon": _rat_json(self.epsilon),
        }


@dataclass(frozen=True)
class Infeasible:
    """Honest negative result: the catalog has no group close enough."""

    reason: str
    target: Fraction
    epsilon: Fraction
    nearest_name: Optional[str] = None
    nearest_value: Optional[Fraction] = None

    def to_json(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "infeasible": True,
            "reason": self.reason,
            "target": _rat_json(self.target),
            "epsilon": _rat_json(self.epsilon),
        }
        if self.nearest_name is not None:
            out["nearest"] = {
                "name": self.nearest_name,
                "value": _rat_json(self.nearest_value),
            }
        return out


def _bits(x) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _frac(x) -> Fraction:
    """mpq -> Fraction without re-running gcd (mpq is already canonical)."""
    f = Fraction.__new__(Fraction)
    f._numerator = int(x.numerator)
    f._denominator = int(x.denominator)
    return f


def agl1_fix_pgf(q: int) -> RationalPoly:
    """Fixed-point pgf of the one-dimensional affine group on q points:
    1/q + (q-2)/(q-1) x + 1/(q(q-1)) x^q."""
    if q < 3 or prime_power_base(q) is None:
        raise NotPrimePower(f"{q} is not a prime power >= 3")
    coeffs = [Fraction(0)] * (q + 1)
    coeffs[0] = Fraction(1, q)
    coeffs[1] = Fraction(q - 2, q - 1)
    coeffs[q] = Fraction(1, q * (q - 1))
    return RationalPoly(tuple(coeffs))


def _agl1_step(c, q: int):
    # P_C(c) with mpq arithmetic, avoiding a generic Horner over q+1 terms
    return mpq(1, q) + mpq(q - 2, q - 1) * c + c ** q / (q * (q - 1))


def imprimitive_chain(delta0A: Fraction, q: int, r: int) -> List[Fraction]:
    """[c_0, ..., c_r] with c_0 = delta(A) and c_i = P_C(c_{i-1})."""
    if q < 3 or prime_power_base(q) is None:
        raise NotPrimePower(f"{q} is not a prime power >= 3")
    if r < 0:
        raise ValueError("r must be >= 0")
    c = mpq(delta0A.numerator, delta0A.denominator)
    out = [Fraction(delta0A)]
    for _ in range(r):
        if _bits(c) * q > BIT_BUDGET:
            raise EpsilonTooSmall(
                "chain value exceeds the exact-arithmetic bit budget")
        c = _agl1_step(c, q)
        out.append(_frac(c))
    return out


def density_search_imprimitive(delta0A: Fraction, target: Fraction,
                               eps: Fraction) -> DensityWitness:
    """Least prime q > 1/eps, then walk the affine chain to the first value
    within eps of the target."""
    delta0A, target, eps = Fraction(delta0A), Fraction(target), Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not delta0A <= target <= 1:
        raise ValueError("need delta(A) <= target <= 1")
    q = max(2, int(1 / eps))
    q = q if is_prime(q) and q > 1 / eps else next_prime(q)
    if q < 3:
        q = 3
    if q > PARAM_CAP:
        raise EpsilonTooSmall(f"required prime q exceeds cap {PARAM_CAP}")
    beta = mpq(q - 2, q - 1)
    eq = mpq(eps.numerator, eps.denominator)
    r_max, reach, bpow = 0, mpq(0), mpq(1)
    while reach <= 1 - eq:
        r_max += 1
        if r_max > PARAM_CAP:
            raise EpsilonTooSmall(f"chain length exceeds cap {PARAM_CAP}")
        bpow *= beta
        reach = (1 - mpq(1, q)) * (1 - bpow)
    c = mpq(delta0A.numerator, delta0A.denominator)
    t = mpq(target.numerator, target.denominator)
    e = mpq(eps.numerator, eps.denominator)
    for i in range(r_max + 1):
        if abs(c - t) <= e:
            return DensityWitness(
                family="imprimitive-agl-chain",
                parameters={"q": q, "r": i},
                value=_frac(c),
                target=target,
                epsilon=eps,
            )
        if _bits(c) * q > BIT_BUDGET:
            raise EpsilonTooSmall(
                "chain value exceeds the exact-arithmetic bit budget")
        c = _agl1_step(c, q)
    raise EpsilonTooSmall("chain exhausted without reaching the target window")


def step_size(delta0A: Fraction, n: int, q: int) -> Fraction:
    """Exact increment D(n, q) of the cyclic power chain when the top order
    grows from n to n*q."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not is_prime(q):
        raise ValueError("q must be prime")
    if n % q == 0:
        raise ValueError("q must not divide n")
    z = 1 - Fraction(delta0A)
    total = Fraction(0)
    for d in divisors(n):
        zp = z ** (n // d)
        total += euler_phi(d) * zp * (1 - zp ** (q - 1))
    return total / (n * q)


def _cyclic_value(z, n: int):
    # delta(A wr_P C_n) = 1 - (1/n) sum_{d|n} phi(d) z^(n/d), mpq arithmetic
    total = mpq(0)
    for d in divisors(n):
        total += euler_phi(d) * z ** (n // d)
    return 1 - total / n


def density_search_power_regular(delta0A: Fraction, target: Fraction,
                                 eps: Fraction) -> DensityWitness:
    """Greedy increasing prime list p_1 < ... < p_r for the cyclic power
    chain: each prime is the smallest that keeps the chain at most
    target + eps, so the walk never overshoots the window."""
    delta0A, target, eps = Fraction(delta0A), Fraction(target), Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if delta0A in (0, 1) and target != delta0A:
        raise DegenerateDelta(
            f"chain from delta(A) = {delta0A} is constant; target unreachable")
    if not delta0A <= target <= 1:
        raise ValueError("need delta(A) <= target <= 1")
    z = 1 - mpq(delta0A.numerator, delta0A.denominator)
    t = mpq(target.numerator, target.denominator)
    e = mpq(eps.numerator, eps.denominator)
    if abs(mpq(delta0A.numerator, delta0A.denominator) - t) <= e and delta0A in (0, 1):
        # degenerate start that already satisfies the contract
        return DensityWitness(
            family="cyclic-power-chain", parameters={"primes": []},
            value=delta0A, target=target, epsilon=eps)
    primes: List[int] = []
    n = 1
    value = None
    p = 1
    while True:
        p = next_prime(p)
        if p > PARAM_CAP:
            raise EpsilonTooSmall(f"prime schedule exceeds cap {PARAM_CAP}")
        if n % p == 0:
            continue
        if _bits(z) * n * p > BIT_BUDGET:
            raise EpsilonTooSmall(
                "chain value exceeds the exact-arithmetic bit budget")
        cand = _cyclic_value(z, n * p)
        if cand > t + e:
            continue
        primes.append(p)
        n *= p
        value = cand
        if abs(value - t) <= e:
            return DensityWitness(
                family="cyclic-power-chain",
                parameters={"primes": list(primes)},
                value=_frac(value),
                target=target,
                epsilon=eps,
            )
        if len(primes) >= _PRIME_LIST_CAP:
            raise EpsilonTooSmall("prime list length cap exhausted")


def invert_power_map(C_B: RationalPoly, target: Fraction,
                     tol: Fraction) -> Fraction:
    """Bisection preimage of the map f(x) = 1 - C_B(1 - x) on [0, 1]."""
    target, tol = Fraction(target), Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not 0 <= target <= 1:
        raise ValueError("target must lie in [0, 1]")

    def f(x: Fraction) -> Fraction:
        return 1 - poly_eval(C_B, 1 - x)

    lo, hi = Fraction(0), Fraction(1)
    for x in (lo, hi):
        if abs(f(x) - target) <= tol:
            return x
    for _ in range(10_000):
        mid = (lo + hi) / 2
        fm = f(mid)
        if abs(fm - target) <= tol:
            return mid
        if fm < target:
            lo = mid
        else:
            hi = mid
    raise EpsilonTooSmall("bisection failed to converge within the tolerance")


def default_catalog() -> List[Tuple[str, Fraction]]:
    """(name, exact derangement proportion) for the stock families:
    symmetric and alternating groups to degree 16, cyclic and affine
    groups for primes to 97."""
    entries: List[Tuple[str, Fraction]] = []
    for m in range(2, 17):
        entries.append((f"S({m})", d_seq(m)))
        entries.append((f"A({m})", d_seq(m) + e_seq(m)))
    p = 1
    while True:
        p = next_prime(p)
        if p > 97:
            break
        entries.append((f"C({p})", Fraction(p - 1, p)))
        if p >= 3:
            entries.append((f"AGL1({p})", Fraction(1, p)))
    return entries


def density_search_power_primitive(
    B: PermGroup,
    target: Fraction,
    eps: Fraction,
    catalog: Optional[Sequence[Tuple[str, Fraction]]] = None,
) -> Union[DensityWitness, Infeasible]:
    """Invert the power-action map for a fixed top group B and look up the
    catalog group whose derangement proportion is nearest the preimage.

    The catalog is finite, so this realizes only the targets it can reach;
    anything else is reported as Infeasible rather than approximated with a
    fabricated group.
    """
    target, eps = Fraction(target), Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not 0 <= target <= 1:
        raise ValueError("target must lie in [0, 1]")
    if catalog is None:
        catalog = default_catalog()
    cb = cycle_pgf(B)
    xstar = invert_power_map(cb, target, tol=eps / 4)
    name, delta = min(
        catalog, key=lambda entry: (abs(entry[1] - xstar), entry[0]))
    value = 1 - poly_eval(cb, 1 - delta)
    if abs(value - target) <= eps:
        return DensityWitness(
            family="inverted-power-map",
            parameters={"base": name, "base_delta": {
                "num": delta.numerator, "den": delta.denominator}},
            value=value,
            target=target,
            epsilon=eps,
        )
    return Infeasible(
        reason="no catalog group has a derangement proportion in the "
               "required preimage window; the catalog covers only classical "
               "families",
        target=target,
        epsilon=eps,
        nearest_name=name,
        nearest_value=value,
    )
