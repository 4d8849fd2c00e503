"""Core p-adic arithmetic over the rationals.

A rational number x != 0 factors uniquely as p**v * (a/b) with p dividing
neither a nor b; v is the valuation and |x|_p = p**-v the norm.  Everything
here works on exact ``fractions.Fraction`` values.  Norm magnitudes are only
converted to floats at the caller's request; all control flow inside the
package is driven by integer valuations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError

#: Extended-integer infinity used for valuation(0).
INF = math.inf
#: Extended-integer negative infinity used for norm_exponent(0).
NEG_INF = -math.inf


def _is_prime(p: int) -> bool:
    # deterministic trial division; the primes used in practice are tiny
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeContext:
    """Fixes the prime p for every operation downstream."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ConfigError(f"p must be a prime integer, got {self.p!r}")

    def scalar(self, value) -> "PAdicScalar":
        return PAdicScalar(self, Fraction(value))


@dataclass(frozen=True)
class PAdicScalar:
    """A rational number together with its prime context.

    ``Fraction`` keeps the value in lowest terms automatically, which the
    valuation fast paths below rely on.
    """

    ctx: PrimeContext
    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    def valuation(self):
        return valuation(self)

    def norm(self) -> float:
        return padic_norm(self)

    def digits(self, count: int):
        return canonical_digits(self, count)

    def fractional_part(self) -> Fraction:
        return fractional_part(self)

    def character(self):
        return character(self)


@dataclass(frozen=True)
class CharacterPhase:
    """Exact phase q of a character value exp(2*pi*i*q).

    The phase sits in [0, 1) and its denominator is a power of p, because it
    arises as the fractional part of a p-adic rational.
    """

    p: int
    phase: Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.phase < 1):
            raise ConfigError(f"phase must lie in [0,1), got {self.phase}")
        den = self.phase.denominator
        while den % self.p == 0:
            den //= self.p
        if den != 1:
            raise ConfigError(
                f"phase denominator must be a power of {self.p}, got {self.phase}"
            )

    def to_complex(self) -> complex:
        return phase_to_complex(self.phase)


def phase_to_complex(phase: Fraction) -> complex:
    """exp(2*pi*i*phase) with a couple of exact special cases."""
    if phase == 0:
        return complex(1.0, 0.0)
    if 2 * phase == 1:
        return complex(-1.0, 0.0)
    return cmath.exp(2j * math.pi * float(phase))


def _coerce(x, ctx: PrimeContext | None = None) -> tuple[Fraction, int]:
    """Accept PAdicScalar, Fraction, int, or str; return (value, p)."""
    if isinstance(x, PAdicScalar):
        return x.value, x.ctx.p
    if ctx is None:
        raise TypeError("a PrimeContext is required when x is a bare rational")
    return Fraction(x), ctx.p


def rational_valuation(q: Fraction, p: int):
    """Valuation of a bare Fraction; INF for zero."""
    if q == 0:
        return INF
    v = 0
    num = q.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = q.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def valuation(x, ctx: PrimeContext | None = None):
    """Exponent of p in x: valuation(p**k * a/b) = k.  valuation(0) = +inf."""
    q, p = _coerce(x, ctx)
    return rational_valuation(q, p)


def norm_exact(x, ctx: PrimeContext | None = None) -> Fraction:
    """|x|_p as an exact power of p (Fraction); 0 for x = 0."""
    q, p = _coerce(x, ctx)
    v = rational_valuation(q, p)
    if v == INF:
        return Fraction(0)
    return Fraction(p) ** (-v)


def norm_exponent(x, ctx: PrimeContext | None = None):
    """e with |x|_p = p**e, i.e. -valuation(x); -inf for x = 0."""
    v = valuation(x, ctx)
    return NEG_INF if v == INF else -v


def padic_norm(x, ctx: PrimeContext | None = None) -> float:
    """|x|_p as a float.

    Raises OverflowError when p**|v| exceeds the float range; callers that
    need exactness should use norm_exact or norm_exponent instead.
    """
    q, p = _coerce(x, ctx)
    v = rational_valuation(q, p)
    if v == INF:
        return 0.0
    return float(p) ** (-v)


def canonical_digits(x, count: int, ctx: PrimeContext | None = None):
    """First ``count`` digits of the canonical expansion of x != 0.

    Writes x = p**v * (x0 + x1*p + x2*p**2 + ...) with x0 != 0 and digits in
    [0, p).  Returns (v, [x0, ..., x_{count-1}]).

    Examples:
        canonical_digits(p=5, x=1/2, count=3) -> (0, [3, 2, 2])
    """
    q, p = _coerce(x, ctx)
    if q == 0:
        raise ConfigError("the zero scalar has no canonical digit expansion")
    if count < 1:
        raise ConfigError(f"count must be positive, got {count}")
    v = rational_valuation(q, p)
    unit = q / Fraction(p) ** v  # p divides neither side of this fraction
    modulus = p**count
    residue = unit.numerator * pow(unit.denominator, -1, modulus) % modulus
    digits = []
    for _ in range(count):
        residue, d = divmod(residue, p)
        digits.append(d)
    return v, digits


def rational_fractional_part(q: Fraction, p: int) -> Fraction:
    """Fractional part of a bare Fraction (see fractional_part)."""
    if q == 0:
        return Fraction(0)
    den = q.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    if k == 0:
        return Fraction(0)
    pk = p**k
    # q = a / (p**k * den) with gcd(a, p*den) = 1
    a = q.numerator
    if den == 1:
        residue = a % pk
    else:
        residue = a * pow(den, -1, pk) % pk
    return Fraction(residue, pk)


def fractional_part(x, ctx: PrimeContext | None = None) -> Fraction:
    """{x}_p: the sum of the terms of the canonical expansion with negative
    exponent, a rational in [0, 1) with denominator p**max(0, -valuation).

    x - {x}_p always has nonnegative valuation, and {x+y}_p differs from
    {x}_p + {y}_p by an integer.
    """
    q, p = _coerce(x, ctx)
    return rational_fractional_part(q, p)


def character(x, ctx: PrimeContext | None = None):
    """Additive character value chi_p(x) = exp(2*pi*i*{x}_p).

    Returns (complex value, CharacterPhase).  The phase is exact; use it
    whenever downstream arithmetic wants to stay rational.
    """
    q, p = _coerce(x, ctx)
    phase = rational_fractional_part(q, p)
    return phase_to_complex(phase), CharacterPhase(p, phase)
