"""Exact rational sequences and polynomial machinery.

Everything here is pure and exact: values are ``fractions.Fraction`` or
arbitrary-precision integers.  Floating point never enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence, Union

RationalLike = Union[Fraction, int]

#: Stirling table limit; far beyond any desk-scale group degree.
STIRLING_MAX_N = 512


def d_seq(n: int) -> Fraction:
    """Partial sum 1 - 1/1! + 1/2! - ... +- 1/n!, the degree-n derangement proportion."""
    if n < 0:
        raise ValueError("n must be >= 0")
    total = Fraction(0)
    for k in range(n + 1):
        total += Fraction((-1) ** k, factorial(k))
    return total


def e_seq(n: int) -> Fraction:
    """Correction term pairing with d_seq: 1 for n = 0, else (-1)^(n-1) (n-1)/n!."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    return Fraction((-1) ** (n - 1) * (n - 1), factorial(n))


def euler_phi(n: int) -> int:
    """Euler's totient, by factoring n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple:
    # row[l] = number of permutations of [n] with l cycles, l = 0..n
    if n == 1:
        return (0, 1)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for l in range(1, n + 1):
        row[l] = (prev[l - 1] if l - 1 <= n - 1 else 0) + (n - 1) * (prev[l] if l <= n - 1 else 0)
    return tuple(row)


def stirling_first_unsigned(n: int, l: int) -> int:
    """Unsigned Stirling number of the first kind: permutations of [n] with l cycles."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > STIRLING_MAX_N:
        raise ValueError(f"stirling table capped at n = {STIRLING_MAX_N}")
    if l < 1 or l > n:
        return 0
    return _stirling_row(n)[l]


@dataclass(frozen=True)
class RationalPoly:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of x^i; trailing zeros are trimmed so
    that equal polynomials compare equal.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def zero() -> "RationalPoly":
        return RationalPoly(())

    @staticmethod
    def constant(c: RationalLike) -> "RationalPoly":
        return RationalPoly((Fraction(c),))

    @staticmethod
    def x() -> "RationalPoly":
        return RationalPoly((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, x)

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(tuple(self.coeff(i) - other.coeff(i) for i in range(n)))

    def __mul__(self, other) -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            return RationalPoly(tuple(c * other for c in self.coeffs))
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RationalPoly":
        if n < 0:
            raise ValueError("negative power")
        result = RationalPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def poly_eval(p: RationalPoly, x: RationalLike) -> Fraction:
    """Exact Horner evaluation."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(p: RationalPoly) -> RationalPoly:
    """Formal derivative."""
    return RationalPoly(tuple(i * c for i, c in enumerate(p.coeffs) if i >= 1))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % p == 0:
            return False
        p += 2
    return True


def prime_power_base(q: int):
    """Return p if q = p^k for a prime p and k >= 1, else None."""
    if q < 2:
        return None
    m = q
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return p if m == 1 else None
        p += 1 if p == 2 else 2
    return m  # q itself is prime


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


def divisors(n: int) -> list:
    """Sorted list of positive divisors."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
