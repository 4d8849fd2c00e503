"""Test functions on Q_p^n as finite coset tables, plus radial profiles.

A CosetFunction is supported in the ball B_M^n and constant on cosets of
B_{-ell}^n, so a finite table of one value per coset describes it totally.
Values may be exact (int, Fraction, PhaseSum) or floating (float, complex);
exact values stay exact through every operation here.

A RadialShellFunction describes a radial function by one value per norm
shell: zero above p**shell_hi, explicit values on the listed shells, and a
single core value on the ball below the lowest shell (origin included).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, NonRadialError
from .lattice import (
    CosetGrid,
    as_fraction_vector,
    enumerate_cosets,
    vector_norm_exponent,
    vector_representative,
)
from .padic import INF, NEG_INF, PrimeContext, rational_valuation
from .phases import (
    PhaseSum,
    is_exact_value,
    reduce_value,
    value_add,
    value_scale,
    value_to_complex,
    values_equal,
)

RADIAL_FLOAT_TOL = 1e-12


def _normalize_value(v):
    if isinstance(v, bool):
        raise ConfigError("boolean table values are ambiguous; use 0 or 1")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, (Fraction, float, complex, PhaseSum)):
        return v
    raise ConfigError(f"unsupported table value {v!r}")


class CosetFunction:
    """Finite coset table over a grid; treat instances as immutable."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: CosetGrid, values: dict):
        self.grid = grid
        table = {}
        for rep in grid.representatives:
            table[rep] = _normalize_value(values.get(rep, Fraction(0)))
        extra = set(values) - set(table)
        if extra:
            raise ConfigError(f"values given off the grid: {sorted(extra)[:3]}")
        self.values = table

    # -- construction -----------------------------------------------------

    @classmethod
    def from_values(
        cls,
        ctx: PrimeContext,
        n: int,
        support_exp: int,
        resolution_exp: int,
        values,
    ) -> "CosetFunction":
        """Build from a mapping rep -> value or a sequence in grid order."""
        grid = enumerate_cosets(ctx, support_exp, resolution_exp, n)
        if not isinstance(values, dict):
            seq = list(values)
            if len(seq) != len(grid):
                raise ConfigError(
                    f"expected {len(grid)} values in grid order, got {len(seq)}"
                )
            values = dict(zip(grid.representatives, seq))
        else:
            values = {
                tuple(Fraction(c) for c in rep): v for rep, v in values.items()
            }
        return cls(grid, values)

    @classmethod
    def zeros(
        cls, ctx: PrimeContext, n: int, support_exp: int, resolution_exp: int
    ) -> "CosetFunction":
        grid = enumerate_cosets(ctx, support_exp, resolution_exp, n)
        return cls(grid, {})

    # -- basic queries -----------------------------------------------------

    @property
    def ctx(self) -> PrimeContext:
        return self.grid.ctx

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def support_exp(self) -> int:
        return self.grid.support_exp

    @property
    def resolution_exp(self) -> int:
        return self.grid.resolution_exp

    def items(self):
        """(representative, value) pairs in deterministic grid order."""
        for rep in self.grid.representatives:
            yield rep, self.values[rep]

    def is_exact(self) -> bool:
        return all(is_exact_value(v) for v in self.values.values())

    def __repr__(self) -> str:
        return (
            f"CosetFunction(p={self.ctx.p}, n={self.n}, "
            f"support_exp={self.support_exp}, resolution_exp={self.resolution_exp}, "
            f"{len(self.grid)} cosets)"
        )


def evaluate(f: CosetFunction, x):
    """Value of f at a point of Q_p^n (0 outside the support ball)."""
    vec = as_fraction_vector(x, f.n)
    rep = vector_representative(f.ctx, f.support_exp, f.resolution_exp, vec)
    if rep is None:
        return Fraction(0)
    return f.values[rep]


def integrate(f: CosetFunction):
    """Haar integral of f: the table sum times the coset volume.

    Exact (Fraction) whenever every value is exact and the character parts
    cancel; complex otherwise.
    """
    vol = f.grid.coset_volume
    if f.is_exact():
        acc = Fraction(0)
        for v in f.values.values():
            acc = value_add(acc, v)
        return reduce_value(value_scale(acc, vol))
    return sum(value_to_complex(v) for v in f.values.values()) * float(vol)


def l1_norm(f: CosetFunction):
    """Integral of |f|; a Fraction for rational tables, float otherwise."""
    vol = f.grid.coset_volume
    vals = list(f.values.values())
    if all(isinstance(v, Fraction) for v in vals):
        return sum(abs(v) for v in vals) * vol
    return sum(abs(value_to_complex(v)) for v in vals) * float(vol)


def is_in_Psi(f: CosetFunction, tol: float = 0.0) -> bool:
    """Vanishing at the origin: the value on the coset containing 0."""
    zero_rep = (Fraction(0),) * f.n
    v = reduce_value(f.values[zero_rep])
    if isinstance(v, Fraction):
        return v == 0 if tol == 0 else abs(v) <= tol
    return abs(value_to_complex(v)) <= tol


def is_in_Phi(f: CosetFunction, tol: float = 1e-10) -> bool:
    """Vanishing mean: |integral of f| within tol (exact when tol = 0)."""
    s = integrate(f)
    if isinstance(s, Fraction):
        return s == 0 if tol == 0 else abs(s) <= tol
    if isinstance(s, PhaseSum):
        return abs(s.to_complex()) <= tol
    return abs(s) <= tol


# -- pointwise algebra ------------------------------------------------------


def regrid(
    f: CosetFunction, support_exp: int, resolution_exp: int
) -> CosetFunction:
    """Re-express f on a finer or wider grid; values are carried exactly."""
    if support_exp < f.support_exp or resolution_exp < f.resolution_exp:
        raise ConfigError("regrid can only widen support or refine resolution")
    if (support_exp, resolution_exp) == (f.support_exp, f.resolution_exp):
        return f
    grid = enumerate_cosets(f.ctx, support_exp, resolution_exp, f.n)
    values = {rep: evaluate(f, rep) for rep in grid.representatives}
    return CosetFunction(grid, values)


def _common_grid(f: CosetFunction, g: CosetFunction):
    if f.ctx != g.ctx or f.n != g.n:
        raise ConfigError("operands live on different spaces")
    M = max(f.support_exp, g.support_exp)
    ell = max(f.resolution_exp, g.resolution_exp)
    return regrid(f, M, ell), regrid(g, M, ell)


def add(f: CosetFunction, g: CosetFunction) -> CosetFunction:
    a, b = _common_grid(f, g)
    return CosetFunction(
        a.grid, {rep: value_add(v, b.values[rep]) for rep, v in a.items()}
    )


def scale(f: CosetFunction, c) -> CosetFunction:
    if isinstance(c, int):
        c = Fraction(c)
    return CosetFunction(f.grid, {rep: value_scale(v, c) for rep, v in f.items()})


def subtract(f: CosetFunction, g: CosetFunction) -> CosetFunction:
    return add(f, scale(g, Fraction(-1)))


def translate(f: CosetFunction, a) -> CosetFunction:
    """The shifted function x -> f(x - a)."""
    vec = as_fraction_vector(a, f.n)
    e = vector_norm_exponent(vec, f.ctx.p)
    M = f.support_exp if e == NEG_INF else max(f.support_exp, int(e))
    grid = enumerate_cosets(f.ctx, M, f.resolution_exp, f.n)
    values = {
        rep: evaluate(f, tuple(r - s for r, s in zip(rep, vec)))
        for rep in grid.representatives
    }
    return CosetFunction(grid, values)


def max_abs_diff(f: CosetFunction, g: CosetFunction) -> float:
    a, b = _common_grid(f, g)
    worst = 0.0
    for rep, v in a.items():
        d = abs(value_to_complex(v) - value_to_complex(b.values[rep]))
        if d > worst:
            worst = d
    return worst


def equal_exact(f: CosetFunction, g: CosetFunction) -> bool:
    """Exact pointwise equality (requires exact tables)."""
    a, b = _common_grid(f, g)
    return all(values_equal(v, b.values[rep]) for rep, v in a.items())


# -- radial functions --------------------------------------------------------


@dataclass(frozen=True)
class RadialShellFunction:
    """Radial function: core value below, one value per shell, zero above.

    shells[i] is the value on the sphere of radius p**(shell_lo + i); the
    core value holds on all of B_{shell_lo - 1} including the origin, and
    the function vanishes on every sphere above p**shell_hi.
    """

    ctx: PrimeContext
    core_value: object
    shells: tuple
    shell_lo: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "core_value", _normalize_value(self.core_value))
        object.__setattr__(
            self, "shells", tuple(_normalize_value(v) for v in self.shells)
        )

    @property
    def shell_hi(self) -> int:
        return self.shell_lo + len(self.shells) - 1

    def value_at_exponent(self, gamma):
        """Value on the sphere |x| = p**gamma (gamma may be -inf)."""
        if gamma < self.shell_lo:  # covers gamma = -inf, the origin
            return self.core_value
        if gamma > self.shell_hi:
            return Fraction(0)
        return self.shells[int(gamma) - self.shell_lo]

    def evaluate(self, x):
        q = x if isinstance(x, Fraction) else Fraction(x)
        v = rational_valuation(q, self.ctx.p)
        return self.value_at_exponent(NEG_INF if v == INF else -v)

    def scaled(self, c) -> "RadialShellFunction":
        return RadialShellFunction(
            self.ctx,
            value_scale(self.core_value, c),
            tuple(value_scale(v, c) for v in self.shells),
            self.shell_lo,
        )

    def normalize(self) -> "RadialShellFunction":
        """Trim zero top shells; absorb bottom shells equal to the core."""
        shells = list(self.shells)
        lo = self.shell_lo
        while shells and values_equal(shells[-1], Fraction(0)):
            shells.pop()
        while shells and values_equal(shells[0], self.core_value):
            shells.pop(0)
            lo += 1
        return RadialShellFunction(self.ctx, self.core_value, tuple(shells), lo)

    def integrate(self, n: int = 1):
        """Haar integral over Q_p^n (the shell sum plus the core ball)."""
        p = Fraction(self.ctx.p)
        acc = value_scale(self.core_value, p ** (n * (self.shell_lo - 1)))
        sphere_factor = 1 - p**-n
        for i, v in enumerate(self.shells):
            acc = value_add(
                acc, value_scale(v, sphere_factor * p ** (n * (self.shell_lo + i)))
            )
        return reduce_value(acc)

    def l1_norm(self, n: int = 1):
        p = Fraction(self.ctx.p)
        exact = isinstance(self.core_value, Fraction) and all(
            isinstance(v, Fraction) for v in self.shells
        )
        core_w = p ** (n * (self.shell_lo - 1))
        sphere_factor = 1 - p**-n
        if exact:
            acc = abs(self.core_value) * core_w
            for i, v in enumerate(self.shells):
                acc += abs(v) * sphere_factor * p ** (n * (self.shell_lo + i))
            return acc
        acc = abs(value_to_complex(self.core_value)) * float(core_w)
        for i, v in enumerate(self.shells):
            acc += abs(value_to_complex(v)) * float(
                sphere_factor * p ** (n * (self.shell_lo + i))
            )
        return acc


def radial_profile(f: CosetFunction, tol: float | None = None) -> RadialShellFunction:
    """Collapse a radial table to shell values.

    Raises NonRadialError, naming two witnesses, if any norm shell carries
    two distinct values.  Exact values must match exactly; float values may
    differ by tol (default 1e-12 scaled by the largest magnitude).
    """
    float_tol = tol
    if float_tol is None and not f.is_exact():
        scale_ = max(1.0, max(abs(value_to_complex(w)) for w in f.values.values()))
        float_tol = RADIAL_FLOAT_TOL * scale_
    by_shell: dict = {}
    witness: dict = {}
    for rep, v in f.items():
        key = vector_norm_exponent(rep, f.ctx.p)  # int, or -inf at the origin
        if key not in by_shell:
            by_shell[key] = v
            witness[key] = rep
            continue
        u = by_shell[key]
        if is_exact_value(u) and is_exact_value(v):
            same = values_equal(u, v)
        else:
            same = abs(value_to_complex(u) - value_to_complex(v)) <= float_tol
        if not same:
            raise NonRadialError(
                f"values differ on the sphere |x| = p**{key}: "
                f"f({witness[key]}) = {u!r} but f({rep}) = {v!r}"
            )
    lo = -f.resolution_exp + 1
    hi = f.support_exp
    core = by_shell.get(NEG_INF, Fraction(0))
    shells = tuple(by_shell[g] for g in range(lo, hi + 1))
    return RadialShellFunction(f.ctx, core, shells, lo)


def embed_radial(
    r: RadialShellFunction, support_exp: int, resolution_exp: int, n: int = 1
) -> CosetFunction:
    """Tabulate a radial function on a coset grid.

    The grid must be wide enough (no nonzero shell above p**support_exp)
    and fine enough (constant on B_{-resolution_exp}, i.e. every shell at
    or below -resolution_exp already equals the core value).
    """
    for g in range(support_exp + 1, r.shell_hi + 1):
        if not values_equal(r.value_at_exponent(g), Fraction(0)):
            raise ConfigError(
                f"radial function is nonzero on |x| = p**{g}, outside "
                f"the requested support exponent {support_exp}"
            )
    for g in range(r.shell_lo, min(-resolution_exp, r.shell_hi) + 1):
        if not values_equal(r.value_at_exponent(g), r.core_value):
            raise ConfigError(
                f"radial function varies on |x| = p**{g}, below the "
                f"requested resolution exponent {resolution_exp}"
            )
    grid = enumerate_cosets(r.ctx, support_exp, resolution_exp, n)
    values = {}
    for rep in grid.representatives:
        e = vector_norm_exponent(rep, r.ctx.p)
        values[rep] = r.value_at_exponent(e)
    return CosetFunction(grid, values)


# -- ready-made tables -------------------------------------------------------


def ball_indicator(
    ctx: PrimeContext,
    n: int,
    radius_exp: int,
    support_exp: int | None = None,
    resolution_exp: int | None = None,
) -> CosetFunction:
    M = radius_exp if support_exp is None else support_exp
    ell = -radius_exp if resolution_exp is None else resolution_exp
    r = RadialShellFunction(ctx, Fraction(1), (), radius_exp + 1)
    return embed_radial(r, M, ell, n)


def sphere_indicator(
    ctx: PrimeContext,
    n: int,
    radius_exp: int,
    support_exp: int | None = None,
    resolution_exp: int | None = None,
) -> CosetFunction:
    M = radius_exp if support_exp is None else support_exp
    ell = -radius_exp + 1 if resolution_exp is None else resolution_exp
    r = RadialShellFunction(ctx, Fraction(0), (Fraction(1),), radius_exp)
    return embed_radial(r, M, ell, n)


# -- serialization -----------------------------------------------------------


def _coordinate_digits(q: Fraction, p: int, support_exp: int, width: int) -> list[int]:
    t = int(q * p**support_exp)
    digits = []
    for _ in range(width):
        t, d = divmod(t, p)
        digits.append(d)
    return digits


def _value_to_json(v):
    v = reduce_value(v)
    if isinstance(v, Fraction):
        return {"re": str(v), "im": "0"}
    c = value_to_complex(v)
    return {"re": c.real, "im": c.imag}


def _value_from_json(entry):
    re, im = entry["re"], entry["im"]
    if isinstance(re, str):
        re_f, im_f = Fraction(re), Fraction(im)
        if im_f == 0:
            return re_f
        return complex(float(re_f), float(im_f))
    if im == 0:
        return float(re)
    return complex(re, im)


def to_json_dict(f: CosetFunction) -> dict:
    width = f.support_exp + f.resolution_exp
    p = f.ctx.p
    entries = []
    for rep, v in f.items():
        entry = _value_to_json(v)
        entry["digits"] = [
            _coordinate_digits(q, p, f.support_exp, width) for q in rep
        ]
        entries.append(entry)
    return {
        "p": p,
        "n": f.n,
        "M": f.support_exp,
        "ell": f.resolution_exp,
        "values": entries,
    }


def from_json_dict(doc: dict) -> CosetFunction:
    try:
        ctx = PrimeContext(doc["p"])
        n, M, ell = doc["n"], doc["M"], doc["ell"]
        entries = doc["values"]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed coset table document: {exc}") from exc
    grid = enumerate_cosets(ctx, M, ell, n)
    if len(entries) != len(grid):
        raise ConfigError(
            f"table holds {len(entries)} values but the grid has {len(grid)}"
        )
    p = ctx.p
    known = set(grid.representatives)
    values = {}
    for entry in entries:
        rep = tuple(
            Fraction(sum(d * p**i for i, d in enumerate(digs)), p**M)
            for digs in entry["digits"]
        )
        if rep not in known:
            raise ConfigError(f"digits {entry['digits']} name no grid coset")
        values[rep] = _value_from_json(entry)
    return CosetFunction(grid, values)


def save_coset_function(f: CosetFunction, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(f), fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_coset_function(path) -> CosetFunction:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))
