"""Coset lattices, Haar volumes, and character integrals on Q_p^n.

Haar measure is normalized so the unit ball has volume 1.  Balls B_gamma
(|x|_p <= p**gamma) and spheres S_gamma (|x|_p = p**gamma) are centered at
the origin and use the max norm across coordinates.

A coset grid with support exponent M and resolution exponent ell covers
B_M^n by cosets of B_{-ell}^n.  Its representatives are the points whose
canonical digits vanish outside positions -M..ell-1; they are enumerated in
lexicographic digit order, coordinate by coordinate, so every run of the
package lists them identically.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConfigError, GridCapError
from .padic import NEG_INF, PAdicScalar, PrimeContext, rational_valuation

DEFAULT_GRID_CAP = 10**6
GRID_CAP_ENV = "PADICWAVE_GRID_CAP"


def grid_cap() -> int:
    raw = os.environ.get(GRID_CAP_ENV)
    if raw is None:
        return DEFAULT_GRID_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{GRID_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ConfigError(f"{GRID_CAP_ENV} must be positive, got {cap}")
    return cap


def as_fraction_vector(x, n: int) -> tuple[Fraction, ...]:
    """Normalize a point of Q_p^n to a tuple of Fractions."""
    if isinstance(x, PAdicScalar):
        x = x.value
    if isinstance(x, (int, Fraction, str)):
        if n != 1:
            raise ConfigError(f"expected an {n}-vector, got a scalar")
        return (Fraction(x),)
    coords = tuple(
        c.value if isinstance(c, PAdicScalar) else Fraction(c) for c in x
    )
    if len(coords) != n:
        raise ConfigError(f"expected an {n}-vector, got {len(coords)} coordinates")
    return coords


def vector_norm_exponent(vec: tuple[Fraction, ...], p: int):
    """e with max_j |x_j|_p = p**e; -inf for the zero vector."""
    best = NEG_INF
    for q in vec:
        v = rational_valuation(q, p)
        if -v > best:  # v = +inf for a zero coordinate never wins
            best = -v
    return best


@dataclass(frozen=True)
class BallSpec:
    """B_gamma^n = {x : |x|_p <= p**gamma}."""

    ctx: PrimeContext
    n: int
    radius_exp: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ConfigError(f"dimension must be >= 1, got {self.n}")


@dataclass(frozen=True)
class SphereSpec:
    """S_gamma^n = {x : |x|_p = p**gamma}."""

    ctx: PrimeContext
    n: int
    radius_exp: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ConfigError(f"dimension must be >= 1, got {self.n}")


@dataclass(frozen=True)
class CosetGrid:
    """Representatives of B_M^n modulo B_{-ell}^n, in enumeration order."""

    ctx: PrimeContext
    n: int
    support_exp: int
    resolution_exp: int
    representatives: tuple[tuple[Fraction, ...], ...]

    @property
    def coset_volume(self) -> Fraction:
        return Fraction(self.ctx.p) ** (-self.n * self.resolution_exp)

    def __len__(self) -> int:
        return len(self.representatives)


def ball_volume(ball: BallSpec) -> Fraction:
    return Fraction(ball.ctx.p) ** (ball.n * ball.radius_exp)


def sphere_volume(sphere: SphereSpec) -> Fraction:
    p, n = sphere.ctx.p, sphere.n
    return (1 - Fraction(p) ** (-n)) * Fraction(p) ** (n * sphere.radius_exp)


def ball_character_integral(ball: BallSpec, xi) -> Fraction:
    """Integral of chi_p(xi . x) over the ball, exactly.

    Nonzero (= the ball volume) precisely when the character is trivial on
    the ball, i.e. |xi|_p <= p**-gamma.
    """
    vec = as_fraction_vector(xi, ball.n)
    e = vector_norm_exponent(vec, ball.ctx.p)
    if e <= -ball.radius_exp:
        return ball_volume(ball)
    return Fraction(0)


def sphere_character_integral(sphere: SphereSpec, xi) -> Fraction:
    """Integral of chi_p(xi . x) over the sphere, exactly.

    Equals the sphere volume while the character is trivial on B_gamma,
    a single negative value one shell further out, and 0 beyond.
    """
    vec = as_fraction_vector(xi, sphere.n)
    p, n, gamma = sphere.ctx.p, sphere.n, sphere.radius_exp
    e = vector_norm_exponent(vec, p)
    if e <= -gamma:
        return sphere_volume(sphere)
    if e == -gamma + 1:
        return -(Fraction(p) ** (n * (gamma - 1)))
    return Fraction(0)


def grid_cardinality(ctx: PrimeContext, support_exp: int, resolution_exp: int, n: int) -> int:
    width = support_exp + resolution_exp
    if width < 0:
        raise ConfigError(
            f"support exponent {support_exp} below resolution exponent "
            f"{-resolution_exp}: empty digit window"
        )
    return ctx.p ** (n * width)


def enumerate_cosets(
    ctx: PrimeContext, support_exp: int, resolution_exp: int, n: int = 1
) -> CosetGrid:
    """Build the coset grid for (support_exp, resolution_exp) in n dimensions.

    Raises GridCapError when p**(n*(M+ell)) exceeds the cap (default 10**6,
    override via the PADICWAVE_GRID_CAP environment variable).
    """
    count = grid_cardinality(ctx, support_exp, resolution_exp, n)
    cap = grid_cap()
    if count > cap:
        raise GridCapError(
            f"coset grid would hold {count} points, above the cap of {cap}"
        )
    return _build_grid(ctx, support_exp, resolution_exp, n)


@lru_cache(maxsize=128)
def _build_grid(
    ctx: PrimeContext, support_exp: int, resolution_exp: int, n: int
) -> CosetGrid:
    p = ctx.p
    width = support_exp + resolution_exp
    if width == 0:
        one_d = (Fraction(0),)
    else:
        # digit tuple (d_{-M}, ..., d_{ell-1}); digit i sits at exponent
        # -M + i, and itertools.product yields the tuples lexicographically
        scale = Fraction(p) ** (-support_exp)
        one_d = tuple(
            sum(d * p**i for i, d in enumerate(digits)) * scale
            for digits in itertools.product(range(p), repeat=width)
        )
    reps = tuple(itertools.product(one_d, repeat=n))
    return CosetGrid(ctx, n, support_exp, resolution_exp, reps)


def coset_representative(
    ctx: PrimeContext, support_exp: int, resolution_exp: int, x
) -> Fraction | None:
    """Grid representative of the coset of a scalar x, or None outside B_M."""
    q = x.value if isinstance(x, PAdicScalar) else Fraction(x)
    p = ctx.p
    v = rational_valuation(q, p)
    if v < -support_exp:  # false for v = +inf (the zero scalar)
        return None
    width = support_exp + resolution_exp
    if width <= 0:
        return Fraction(0)
    scaled = q * Fraction(p) ** support_exp  # valuation now >= 0
    modulus = p**width
    den = scaled.denominator
    if den == 1:
        t = scaled.numerator % modulus
    else:
        t = scaled.numerator * pow(den, -1, modulus) % modulus
    return t * Fraction(p) ** (-support_exp)


def vector_representative(
    ctx: PrimeContext, support_exp: int, resolution_exp: int, vec: tuple[Fraction, ...]
) -> tuple[Fraction, ...] | None:
    out = []
    for q in vec:
        r = coset_representative(ctx, support_exp, resolution_exp, q)
        if r is None:
            return None
        out.append(r)
    return tuple(out)


def sphere_representatives(
    ctx: PrimeContext, radius_exp: int, resolution_exp: int, n: int = 1
) -> tuple[tuple[Fraction, ...], ...]:
    """Representatives of S_gamma^n modulo B_{-ell}^n."""
    grid = enumerate_cosets(ctx, radius_exp, resolution_exp, n)
    return tuple(
        rep
        for rep in grid.representatives
        if vector_norm_exponent(rep, ctx.p) == radius_exp
    )
