"""Evolution of zero-mean data under the fractional pseudo-differential flow.

The time variable t ranges over Q_p and only |t|_p matters; a time slice is
labeled by the integer L with |t| = p**L, or by ``T_ZERO`` (minus infinity)
for t = 0.  The frequency side is diagonal: a mode on the sphere |xi| = p**N
is carried by the multiplier

    b(L, N) = 1            if L <= -K*N,
            = -1/(p - 1)   if L == -K*N + 1,
            = 0            if L >= -K*N + 2,

where K = beta/alpha is the integer coupling between the temporal and
spatial operator orders (non-integer ratios admit only the zero solution,
and construction refuses them).  Physical-side propagation convolves the
data against an explicit radial kernel; both routes are implemented and
must agree, which is the backbone of the verification suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, LizorkinError, SpectralCompatibilityError
from .fourier import forward, inverse
from .functions import (
    CosetFunction,
    RadialShellFunction,
    evaluate,
    integrate,
    is_in_Phi,
    l1_norm,
    regrid,
)
from .lattice import SphereSpec, sphere_volume, vector_norm_exponent
from .padic import NEG_INF, PrimeContext
from .phases import (
    is_exact_value,
    reduce_value,
    value_add,
    value_scale,
    value_to_complex,
    values_equal,
)

T_ZERO = NEG_INF  # time label for t = 0: |t| = 0, every mode multiplier is 1

PHI_TOL = 1e-10


def _ceil_div(a: int, b: int) -> int:
    """ceil(a / b) for positive b, in exact integer arithmetic."""
    return -((-a) // b)


@dataclass(frozen=True)
class PropagationMultiplier:
    """The diagonal symbol b(|t|, |xi|) for one coupling constant K."""

    ctx: PrimeContext
    K: int

    def __post_init__(self) -> None:
        if not isinstance(self.K, int) or self.K < 1:
            raise ConfigError(f"the coupling K must be a positive integer, got {self.K}")

    def value(self, L, N) -> Fraction:
        """b at |t| = p**L, |xi| = p**N.  L or N may be minus infinity."""
        if N == NEG_INF or L == NEG_INF:
            return Fraction(1)  # zero frequency, or t = 0
        threshold = -self.K * int(N)
        L = int(L)
        if L <= threshold:
            return Fraction(1)
        if L == threshold + 1:
            return Fraction(-1, self.ctx.p - 1)
        return Fraction(0)


def multiplier_value(K: int, L, N, ctx: PrimeContext) -> Fraction:
    return PropagationMultiplier(ctx, K).value(L, N)


def eigenfunction(
    N: int, C, K: int, ctx: PrimeContext, n: int = 1
) -> RadialShellFunction:
    """Radial eigenfunction of the spatial operator with eigenvalue p**(K*alpha*N).

    Built as the inverse transform of C times the indicator of the sphere
    |xi| = p**(K*N): constant C*(1 - p**-n)*p**(K*N*n) on the ball of radius
    p**(-K*N), one negative shell just above it, zero beyond.
    """
    if not isinstance(K, int) or K < 1:
        raise ConfigError(f"the coupling K must be a positive integer, got {K}")
    C = Fraction(C) if isinstance(C, int) else C
    p = ctx.p
    core = value_scale(C, (1 - Fraction(p) ** (-n)) * Fraction(p) ** (K * N * n))
    shell = value_scale(C, -(Fraction(p) ** ((K * N - 1) * n)))
    return RadialShellFunction(
        ctx=ctx, core_value=core, shells=(shell,), shell_lo=-K * N + 1
    )


def eigenvalue_exponent(K: int, N: int) -> int:
    """The eigenvalue is p**(alpha * this); kept as an exponent multiplier."""
    return K * N


# ---------------------------------------------------------------------------
# the propagation kernel


def kernel_closed_form(K: int, n: int, L: int, M: int, ctx: PrimeContext,
                       bracket: str = "ceil") -> Fraction:
    """Value of the time-L kernel on the sphere |x| = p**M.

    Piecewise in (L, M); the deep-time branch uses ceil(L/K), and the
    correction term appears only when K divides L - 1.  ``bracket`` exists
    solely so the self-test harness can inject the plausible-but-wrong
    floor variant; leave it at the default.
    """
    if bracket not in ("ceil", "floor"):
        raise ConfigError(f"unknown bracket mode {bracket!r}")
    p = ctx.p
    if L <= K * (M - 1):
        return Fraction(0)
    if L == K * (M - 1) + 1:
        return Fraction(p, p - 1) * Fraction(p) ** (-n * M)
    if L <= K * M:
        return Fraction(p) ** (-n * M)
    if L == K * M + 1:
        return Fraction(p) ** (-n * M) * (Fraction(p) ** (1 - n) - 1) / (p - 1)
    # L >= K*M + 2: below the moving front the value no longer depends on M
    if bracket == "ceil":
        lead = Fraction(p) ** (-n * _ceil_div(L, K))
    else:
        lead = Fraction(p) ** (-n * (L // K))
    if (L - 1) % K == 0:
        lead -= (1 - Fraction(p) ** (-n)) * Fraction(1, p - 1) * Fraction(p) ** (
            -n * ((L - 1) // K)
        )
    return lead


def kernel_oracle(K: int, n: int, L: int, M: int, ctx: PrimeContext) -> Fraction:
    """The same kernel value summed directly from the multiplier.

    Expanding the inverse transform over frequency spheres N and using the
    exact sphere-character integrals at |x| = p**M gives

        (1-p**-n) p**(-Mn) sum_{j>=0} b(L, -M-j) p**(-jn) - p**(-Mn) b(L, -M+1).

    b(L, -M-j) equals 1 for every j past a computable index, so the series
    splits into a short head plus an exact geometric tail.  Slow but fully
    independent of the closed form above.
    """
    p = ctx.p
    b = PropagationMultiplier(ctx, K)
    # b(L, -M-j) = 1 iff L <= K*(M+j), i.e. for all j >= ceil((L - K*M)/K)
    j1 = max(0, _ceil_div(L - K * M, K))
    head = Fraction(0)
    for j in range(j1):
        head += b.value(L, -M - j) * Fraction(p) ** (-j * n)
    tail = Fraction(p) ** (-j1 * n) / (1 - Fraction(p) ** (-n))
    result = (1 - Fraction(p) ** (-n)) * Fraction(p) ** (-M * n) * (head + tail)
    result -= Fraction(p) ** (-M * n) * b.value(L, -M + 1)
    return result


def kernel_at_origin_limit(K: int, n: int, L: int, ctx: PrimeContext) -> Fraction:
    """The constant kernel value on all spheres deep inside the front.

    For M <= floor((L-2)/K) the closed form is independent of M; this is
    that shared value.
    """
    p = ctx.p
    lead = Fraction(p) ** (-n * _ceil_div(L, K))
    if (L - 1) % K == 0:
        lead -= (1 - Fraction(p) ** (-n)) * Fraction(1, p - 1) * Fraction(p) ** (
            -n * ((L - 1) // K)
        )
    return lead


def kernel_ball_integral(
    K: int, n: int, L: int, radius_exp: int, ctx: PrimeContext
) -> Fraction:
    """Integral of the kernel over the ball |x| <= p**radius_exp.

    Needed for the convolution path: the coset containing y = x must
    contribute the kernel's true mass over that coset, not a sampled value
    (the kernel is unbounded near 0 for L < 0 and sampling at the
    representative is simply wrong there).  Spheres deep inside the front
    carry the constant ``kernel_at_origin_limit`` value, so their infinite
    sum collapses to that constant times a ball volume.
    """
    p = ctx.p
    m_const = (L - 2) // K  # kernel constant on spheres with M <= this
    r = radius_exp
    total = Fraction(0)
    deep = min(r, m_const)
    k_inf = kernel_at_origin_limit(K, n, L, ctx)
    total += k_inf * Fraction(p) ** (n * deep)  # ball of radius p**deep, exactly
    for m in range(deep + 1, r + 1):
        vol = sphere_volume(SphereSpec(ctx=ctx, n=n, radius_exp=m))
        total += kernel_closed_form(K, n, L, m, ctx) * vol
    return total


# ---------------------------------------------------------------------------
# the Cauchy problem


@dataclass(frozen=True)
class WaveProblem:
    """Zero-mean initial data plus the operator orders driving its evolution."""

    ctx: PrimeContext
    n: int
    alpha: object
    K: int
    u0: CosetFunction

    def __post_init__(self) -> None:
        if not isinstance(self.K, int) or self.K < 1:
            raise ConfigError(
                f"the coupling K must be a positive integer, got {self.K}"
            )
        if not float(self.alpha) > 0:
            raise ConfigError(f"the temporal order must be positive, got {self.alpha}")
        if self.u0.ctx != self.ctx or self.u0.n != self.n:
            raise ConfigError("initial data lives on a different space")
        if not is_in_Phi(self.u0, PHI_TOL):
            raise LizorkinError(
                "initial data must have zero mean: integral = "
                f"{value_to_complex(integrate(self.u0)):.3e}"
            )

    @property
    def beta(self):
        return self.K * self.alpha

    @classmethod
    def from_alpha_beta(cls, ctx, n, alpha, beta, u0) -> "WaveProblem":
        """Construct from raw operator orders, refusing incompatible pairs.

        The separated modes force the ratio beta/alpha to be a positive
        integer; anything else admits only the zero solution, so we refuse
        loudly instead of computing garbage.
        """
        ratio = float(beta) / float(alpha)
        K = round(ratio)
        if K < 1 or abs(ratio - K) > 1e-9 * max(1.0, abs(ratio)):
            raise SpectralCompatibilityError(
                f"beta/alpha = {ratio:.6g} is not a positive integer; the "
                "separated modes then all collapse and the problem admits "
                "only the zero solution. Choose beta = K*alpha."
            )
        return cls(ctx=ctx, n=n, alpha=alpha, K=K, u0=u0)

    def multiplier(self) -> PropagationMultiplier:
        return PropagationMultiplier(self.ctx, self.K)


@dataclass(frozen=True)
class SolutionSlice:
    """The spatial field at one time magnitude."""

    L: object  # int, or T_ZERO
    field: CosetFunction


def spectral_data(prob: WaveProblem) -> CosetFunction:
    """Fourier transform of the initial data (compute once, reuse per slice)."""
    return forward(prob.u0)


def solve_spectral(
    prob: WaveProblem, L, u0_hat: CosetFunction | None = None
) -> SolutionSlice:
    """Slice at |t| = p**L by damping each frequency sphere and inverting."""
    if u0_hat is None:
        u0_hat = spectral_data(prob)
    b = prob.multiplier()
    values = {}
    for rep, v in u0_hat.items():
        N = vector_norm_exponent(rep, prob.ctx.p)
        values[rep] = value_scale(v, b.value(L, N))
    return SolutionSlice(L=L, field=inverse(CosetFunction(u0_hat.grid, values)))


def solve_convolution(prob: WaveProblem, L) -> SolutionSlice:
    """Slice at |t| = p**L by convolving the data with the radial kernel.

    Off-diagonal cosets sample the kernel at the representative difference,
    which is exact because the kernel is radial and a coset never straddles
    two spheres.  The diagonal coset (y in the same coset as x) instead
    integrates the kernel over a ball at the grid resolution.
    """
    if L == T_ZERO:
        return SolutionSlice(L=L, field=CosetFunction(prob.u0.grid, dict(prob.u0.items())))
    L = int(L)
    f = prob.u0
    K, n, ctx = prob.K, prob.n, prob.ctx
    ell = f.resolution_exp
    coset_vol = Fraction(ctx.p) ** (-n * ell)
    diag_mass = kernel_ball_integral(K, n, L, -ell, ctx)

    kernel_cache: dict[int, Fraction] = {}

    def k_at(e: int) -> Fraction:
        if e not in kernel_cache:
            kernel_cache[e] = kernel_closed_form(K, n, L, e, ctx)
        return kernel_cache[e]

    reps = f.grid.representatives
    values = {}
    for x in reps:
        acc = value_scale(f.values[x], diag_mass)
        for y in reps:
            if y == x:
                continue
            e = vector_norm_exponent(
                tuple(a - b for a, b in zip(x, y)), ctx.p
            )
            w = k_at(int(e)) * coset_vol
            if w:
                acc = value_add(acc, value_scale(f.values[y], w))
        values[x] = reduce_value(acc)
    return SolutionSlice(L=L, field=CosetFunction(f.grid, values))


def auto_time_sweep(prob: WaveProblem, u0_hat: CosetFunction | None = None) -> range:
    """Every time label where a slice can differ from its neighbors.

    The multiplier changes behavior only at L = -K*N + 1 and -K*N + 2 for
    frequency spheres N actually present in the data, so sweeping
    [-K*N_max - 1, -K*N_min + 2] (one step of slack below) captures every
    transition plus one fully-propagated and one fully-frozen slice.
    """
    if u0_hat is None:
        u0_hat = spectral_data(prob)
    exps = []
    scale = 0.0
    for rep, v in u0_hat.items():
        scale = max(scale, abs(value_to_complex(v)))
    tol = 1e-12 * max(1.0, scale)
    for rep, v in u0_hat.items():
        if is_exact_value(v):
            nonzero = not values_equal(v, Fraction(0))
        else:
            nonzero = abs(value_to_complex(v)) > tol
        if nonzero:
            e = vector_norm_exponent(rep, prob.ctx.p)
            if e != NEG_INF:
                exps.append(int(e))
    if not exps:
        return range(-prob.K - 1, prob.K + 3)
    lo = -prob.K * max(exps) - 1
    hi = -prob.K * min(exps) + 2
    return range(lo, hi + 1)


@dataclass(frozen=True)
class DependenceReport:
    """Outcome of the finite-speed-of-support check for one data ball."""

    N: int
    data_confined: bool
    swept: tuple
    max_leak: float
    passed: bool


def dependence_check(
    prob: WaveProblem, N: int, pad: int = 2, tol: float = 1e-12
) -> DependenceReport:
    """Verify slices of data supported in |x| <= p**N stay in that ball.

    Zero-mean data makes the kernel tail outside the data ball integrate to
    zero, so every slice is again supported in the ball; we widen the grid
    by ``pad`` so there is room outside to observe a leak if one existed.
    """
    p = prob.ctx.p
    confined = True
    worst_outside = 0.0
    for rep, v in prob.u0.items():
        e = vector_norm_exponent(rep, p)
        if e != NEG_INF and e > N:
            mag = abs(value_to_complex(v))
            worst_outside = max(worst_outside, mag)
            if mag > tol:
                confined = False
    wide = regrid(prob.u0, prob.u0.support_exp + pad, prob.u0.resolution_exp)
    wide_prob = WaveProblem(ctx=prob.ctx, n=prob.n, alpha=prob.alpha, K=prob.K, u0=wide)
    u0_hat = spectral_data(wide_prob)
    sweep = auto_time_sweep(wide_prob, u0_hat)
    L_top = prob.K * (N - 1)
    labels = sorted(set(lab for lab in sweep if lab <= L_top) | {L_top, L_top - 1})
    max_leak = 0.0
    for L in labels:
        sl = solve_spectral(wide_prob, L, u0_hat)
        for rep, v in sl.field.items():
            e = vector_norm_exponent(rep, p)
            if e != NEG_INF and e > N:
                max_leak = max(max_leak, abs(value_to_complex(v)))
    return DependenceReport(
        N=N,
        data_confined=confined,
        swept=tuple(labels),
        max_leak=max_leak,
        passed=confined and max_leak <= tol,
    )


@dataclass(frozen=True)
class StabilityReport:
    """L1 growth of one slice against the universal bound."""

    L: object
    ratio: float
    bound: float
    passed: bool


def l1_bound_check(prob: WaveProblem, L, slice_: SolutionSlice | None = None) -> StabilityReport:
    """Check ||u(t)||_1 <= p**(2*n*gamma) * ||u0||_1 with gamma = max(1, ceil(2/K)).

    The kernel's L1 mass on any slice is bounded by a constant depending
    only on (p, n, K); this is the crude but universal version of that
    bound, and every slice must respect it.
    """
    if slice_ is None:
        slice_ = solve_spectral(prob, L)
    gamma = max(1, _ceil_div(2, prob.K))
    bound = float(prob.ctx.p) ** (2 * prob.n * gamma)
    base = l1_norm(prob.u0)
    grown = l1_norm(slice_.field)
    base_f, grown_f = float(base), float(grown)
    if base_f == 0.0:
        ratio = 0.0 if grown_f == 0.0 else math.inf
    else:
        ratio = grown_f / base_f
    return StabilityReport(L=L, ratio=ratio, bound=bound, passed=ratio <= bound * (1 + 1e-12))


@dataclass(frozen=True)
class UniquenessReport:
    swept: tuple
    max_abs: float
    passed: bool


def uniqueness_smoke(prob: WaveProblem, labels=None) -> UniquenessReport:
    """Zero data must evolve to zero along both routes at every time."""
    if float(l1_norm(prob.u0)) != 0.0:
        raise ConfigError("uniqueness smoke test needs identically zero data")
    if labels is None:
        labels = list(auto_time_sweep(prob)) or [-1, 0, 1]
    worst = 0.0
    for L in labels:
        for sl in (solve_spectral(prob, L), solve_convolution(prob, L)):
            for _, v in sl.field.items():
                worst = max(worst, abs(value_to_complex(v)))
    return UniquenessReport(swept=tuple(labels), max_abs=worst, passed=worst <= 1e-12)


def time_profile(prob: WaveProblem, x, phi_tol: float = PHI_TOL) -> RadialShellFunction:
    """u(t, x) as a radial function of t, for fixed x.

    Below the sweep window every multiplier equals 1, so the profile's core
    is u0(x); above it every mode present in the data is dead.  The result
    is checked to have zero mean in t (with the 1-dimensional measure),
    which is the time-side Lizorkin property the duality argument needs.
    """
    u0_hat = spectral_data(prob)
    sweep = auto_time_sweep(prob, u0_hat)
    core = evaluate(prob.u0, x)
    shells = []
    for L in sweep:
        sl = solve_spectral(prob, L, u0_hat)
        shells.append(evaluate(sl.field, x))
    profile = RadialShellFunction(
        ctx=prob.ctx, core_value=core, shells=tuple(shells), shell_lo=sweep.start
    ).normalize()
    total = profile.integrate(1)
    if is_exact_value(total):
        bad = not values_equal(total, Fraction(0))
    else:
        scale = max(1.0, float(profile.l1_norm(1)))
        bad = abs(value_to_complex(total)) > phi_tol * scale
    if bad:
        raise LizorkinError(
            f"time profile at x = {x} fails the zero-mean check: integral = "
            f"{value_to_complex(total):.3e}"
        )
    return profile
