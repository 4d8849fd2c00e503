"""One-shot verification suite.

Each check function exercises one advertised guarantee of the package at
desk scale and returns a CheckResult; ``run_all`` runs the lot in a fixed
order with a fixed seed so the suite is deterministic.  The checks lean on
independent computations (direct coset sums, the multiplier-series kernel
oracle, two operator forms, two solver routes) rather than re-evaluating
the code under test, so a passing run means the closed forms agree with
brute force everywhere sampled.

``run_all(bracket="floor")`` exists for mutation testing: it threads the
deliberately wrong bracket variant into the kernel closed form and must
make the kernel check fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import SpectralCompatibilityError
from .fourier import forward, inverse
from .functions import (
    CosetFunction,
    embed_radial,
    equal_exact,
    is_in_Phi,
    is_in_Psi,
    max_abs_diff,
)
from .lattice import (
    BallSpec,
    SphereSpec,
    ball_character_integral,
    enumerate_cosets,
    sphere_character_integral,
    vector_norm_exponent,
)
from .padic import NEG_INF, PrimeContext, rational_fractional_part
from .phases import PhaseSum, value_scale, value_to_complex, values_equal
from .solver import (
    T_ZERO,
    WaveProblem,
    auto_time_sweep,
    dependence_check,
    eigenfunction,
    kernel_closed_form,
    kernel_oracle,
    l1_bound_check,
    solve_convolution,
    solve_spectral,
    spectral_data,
    time_profile,
    uniqueness_smoke,
)
from .vladimirov import OperatorParams, apply_hypersingular_field, apply_spectral

DEFAULT_SEED = 20260819


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


# ---------------------------------------------------------------------------
# brute-force helpers, deliberately naive


def _ball_sum_1d(ctx: PrimeContext, gamma: int, xi: Fraction):
    """Direct coset sum of chi(xi*x) over the 1-dim ball |x| <= p**gamma.

    Resolution is chosen fine enough that the character is constant on each
    coset; the sum is then exact by construction.  Returns a Fraction (the
    closed forms are rational, so a sum that fails to reduce is a failure).
    """
    e = vector_norm_exponent((xi,), ctx.p)
    ell = max(-gamma, 0 if e == NEG_INF else int(e))
    grid = enumerate_cosets(ctx, gamma, ell, 1)
    acc: dict[Fraction, Fraction] = {}
    for (rep,) in grid.representatives:
        ph = rational_fractional_part(xi * rep, ctx.p)
        acc[ph] = acc.get(ph, Fraction(0)) + 1
    total = PhaseSum(ctx.p, acc).as_rational()
    if total is None:
        return None
    return total * grid.coset_volume


def _ball_sum(ctx: PrimeContext, n: int, gamma: int, xi_vec) -> Fraction | None:
    """n-dim direct sum, organized coordinate by coordinate.

    The character of a dot product splits as a product of one-dimensional
    characters, so the coset sum over the product grid factors exactly into
    the per-coordinate sums.  Each factor is still a brute-force sum.
    """
    total = Fraction(1)
    for c in xi_vec:
        part = _ball_sum_1d(ctx, gamma, c)
        if part is None:
            return None
        total *= part
    return total


def _ball_sum_direct(ctx: PrimeContext, n: int, gamma: int, xi_vec):
    """Fully naive n-dim sum (no factorization); small cases only."""
    e = vector_norm_exponent(tuple(xi_vec), ctx.p)
    ell = max(-gamma, 0 if e == NEG_INF else int(e))
    grid = enumerate_cosets(ctx, gamma, ell, n)
    acc: dict[Fraction, Fraction] = {}
    for rep in grid.representatives:
        ph = Fraction(0)
        for c, r in zip(xi_vec, rep):
            ph = (ph + rational_fractional_part(c * r, ctx.p)) % 1
        acc[ph] = acc.get(ph, Fraction(0)) + 1
    total = PhaseSum(ctx.p, acc).as_rational()
    if total is None:
        return None
    return total * grid.coset_volume


def _random_table(rng: random.Random, ctx, n, M, ell, exact: bool) -> CosetFunction:
    grid = enumerate_cosets(ctx, M, ell, n)
    values = {}
    for rep in grid.representatives:
        if exact:
            values[rep] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        else:
            values[rep] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return CosetFunction(grid, values)


def _zero_mean(f: CosetFunction) -> CosetFunction:
    """Project a rational table onto the zero-mean class, exactly."""
    total = sum(f.values.values(), Fraction(0))
    shift = total / len(f.grid)
    return CosetFunction(f.grid, {rep: v - shift for rep, v in f.items()})


def _eigen_table(ctx, n, N, C, K, widen: int = 0) -> CosetFunction:
    """The canonical eigen datum as a table, optionally on a widened grid."""
    r = eigenfunction(N, C, K, ctx, n)
    M = -K * N + 1 + widen
    ell = K * N + widen
    return embed_radial(r, M, ell, n)


# ---------------------------------------------------------------------------
# the eleven checks


def check_integration_formulas() -> CheckResult:
    """Ball and sphere character integrals vs direct coset sums, exactly."""
    cases = 0
    for p in (2, 3, 5):
        ctx = PrimeContext(p)
        units = (Fraction(1), Fraction(p + 1))
        for gamma in range(-3, 4):
            for e in range(-4, 5):
                for u in units:
                    xi = u * Fraction(p) ** (-e)
                    for n in (1, 2):
                        vec = (xi,) + (Fraction(0),) * (n - 1)
                        want_ball = ball_character_integral(
                            BallSpec(ctx=ctx, n=n, radius_exp=gamma), vec
                        )
                        got_ball = _ball_sum(ctx, n, gamma, vec)
                        if got_ball != want_ball:
                            return CheckResult(
                                "integration-formulas",
                                False,
                                f"ball mismatch at p={p} n={n} gamma={gamma} "
                                f"xi={xi}: closed {want_ball}, brute {got_ball}",
                            )
                        want_sph = sphere_character_integral(
                            SphereSpec(ctx=ctx, n=n, radius_exp=gamma), vec
                        )
                        got_sph = got_ball - _ball_sum(ctx, n, gamma - 1, vec)
                        if got_sph != want_sph:
                            return CheckResult(
                                "integration-formulas",
                                False,
                                f"sphere mismatch at p={p} n={n} gamma={gamma} "
                                f"xi={xi}: closed {want_sph}, brute {got_sph}",
                            )
                        cases += 2
    # validate the coordinate factorization itself on genuinely 2-dim sums
    for p in (2, 3):
        ctx = PrimeContext(p)
        for gamma in (-1, 0, 1):
            for exps in ((1, 0), (2, 1), (0, -1)):
                vec = tuple(Fraction(p) ** (-e) for e in exps)
                direct = _ball_sum_direct(ctx, 2, gamma, vec)
                split = _ball_sum(ctx, 2, gamma, vec)
                if direct != split:
                    return CheckResult(
                        "integration-formulas",
                        False,
                        f"factorized sum disagrees with direct 2-dim sum at "
                        f"p={p} gamma={gamma} exps={exps}",
                    )
                cases += 1
    return CheckResult(
        "integration-formulas", True, f"{cases} exact rational identities"
    )


def check_fourier_round_trip(seed: int = DEFAULT_SEED, tol: float = 1e-10) -> CheckResult:
    """inverse(forward(f)) = f on random tables; zero-mean/zero-at-origin flags."""
    rng = random.Random(seed)
    shapes = [
        (2, 1, 0, 2), (2, 1, 1, 1), (2, 2, 1, 1), (3, 1, 0, 1),
        (3, 1, 1, 1), (3, 2, 0, 1), (5, 1, 0, 1), (5, 1, 1, 0),
    ]
    worst = 0.0
    count = 0
    exact_failures = 0
    for i in range(104):
        p, n, M, ell = shapes[i % len(shapes)]
        ctx = PrimeContext(p)
        exact = i % 2 == 0
        f = _random_table(rng, ctx, n, M, ell, exact)
        g = inverse(forward(f))
        if exact and not equal_exact(f, g):
            exact_failures += 1
        worst = max(worst, max_abs_diff(f, g))
        count += 1
    if exact_failures or worst > tol:
        return CheckResult(
            "fourier-round-trip",
            False,
            f"max error {worst:.3e} over {count} tables, "
            f"{exact_failures} exact-path failures",
        )
    # mapping flags: zero mean <-> transform vanishing at the origin
    flag_fail = []
    for p, n in ((2, 1), (3, 2)):
        ctx = PrimeContext(p)
        f = _zero_mean(_random_table(random.Random(seed + p + n), ctx, n, 1, 1, True))
        if not (is_in_Phi(f, 0.0) and is_in_Psi(forward(f), 0.0)):
            flag_fail.append(f"zero-mean table p={p} n={n}")
        grid = enumerate_cosets(ctx, 1, 1, n)
        one = CosetFunction(grid, {rep: Fraction(1) for rep in grid.representatives})
        if is_in_Phi(one, 0.0) or is_in_Psi(forward(one), 0.0):
            flag_fail.append(f"constant table p={p} n={n}")
    if flag_fail:
        return CheckResult(
            "fourier-round-trip", False, "flag errors: " + "; ".join(flag_fail)
        )
    return CheckResult(
        "fourier-round-trip",
        True,
        f"{count} round trips, max error {worst:.3e}, mapping flags correct",
    )


def check_eigenrelation(tol: float = 1e-10) -> CheckResult:
    """Both operator forms reproduce the eigenvalue on the canonical family."""
    worst = 0.0
    combos = 0
    for p in (2, 3, 5):
        ctx = PrimeContext(p)
        for K in (1, 2, 3):
            for N in range(-2, 3):
                f = _eigen_table(ctx, 1, N, Fraction(1), K)
                for alpha in (Fraction(1, 2), 1, 2):
                    params = OperatorParams(ctx=ctx, n=1, alpha=alpha)
                    lam = params.power_of_p(K * N)
                    spect = apply_spectral(params, f)
                    hyper = apply_hypersingular_field(params, f)
                    for got in (spect, hyper):
                        for rep, v in got.items():
                            ref_c = value_to_complex(value_scale(f.values[rep], lam))
                            err = abs(value_to_complex(v) - ref_c)
                            worst = max(worst, err / max(abs(ref_c), 1e-30))
                    combos += 1
    passed = worst <= tol
    return CheckResult(
        "eigenrelation",
        passed,
        f"{combos} (p,K,N,alpha) combos, worst shell-wise relative error {worst:.3e}",
    )


def check_operator_duality(seed: int = DEFAULT_SEED, tol: float = 1e-9) -> CheckResult:
    """Spectral and hypersingular forms agree on random zero-mean tables."""
    rng = random.Random(seed + 1)
    shapes = [(2, 1, 1, 1), (2, 2, 1, 1), (3, 1, 1, 1), (3, 1, 0, 2), (5, 1, 1, 1)]
    alphas = (1, 2, Fraction(1, 2), 1.5)
    worst = 0.0
    count = 0
    for i in range(52):
        p, n, M, ell = shapes[i % len(shapes)]
        ctx = PrimeContext(p)
        f = _zero_mean(_random_table(rng, ctx, n, M, ell, True))
        alpha = alphas[i % len(alphas)]
        params = OperatorParams(ctx=ctx, n=n, alpha=alpha)
        spect = apply_spectral(params, f)
        hyper = apply_hypersingular_field(params, f)
        worst = max(worst, max_abs_diff(spect, hyper))
        count += 1
    passed = worst <= tol
    return CheckResult(
        "operator-duality",
        passed,
        f"{count} random zero-mean inputs, max pointwise gap {worst:.3e}",
    )


def check_kernel_identity(bracket: str = "ceil") -> CheckResult:
    """Closed-form kernel vs the multiplier-series oracle, exact rationals."""
    checked = 0
    case_1a = case_1b = 0
    for p in (2, 3):
        ctx = PrimeContext(p)
        for n in (1, 2):
            for K in (1, 2, 3):
                for L in range(-6, 7):
                    for M in range(-6, 7):
                        got = kernel_closed_form(K, n, L, M, ctx, bracket=bracket)
                        want = kernel_oracle(K, n, L, M, ctx)
                        if got != want:
                            return CheckResult(
                                "kernel-identity",
                                False,
                                f"kernel-oracle mismatch at p={p} n={n} K={K} "
                                f"L={L} M={M}: closed {got}, oracle {want}",
                            )
                        if L <= K * (M - 1):
                            case_1a += 1
                            if want != 0:
                                return CheckResult(
                                    "kernel-identity",
                                    False,
                                    f"case-1a row not zero at p={p} n={n} K={K} L={L} M={M}",
                                )
                        elif L == K * (M - 1) + 1:
                            case_1b += 1
                            expect = Fraction(p, p - 1) * Fraction(p) ** (-n * M)
                            if want != expect:
                                return CheckResult(
                                    "kernel-identity",
                                    False,
                                    f"case-1b row wrong at p={p} n={n} K={K} L={L} M={M}",
                                )
                        checked += 1
    return CheckResult(
        "kernel-identity",
        True,
        f"{checked} exact identities ({case_1a} case-1a zeros, {case_1b} case-1b rows)",
    )


def _duality_problems(seed: int = DEFAULT_SEED):
    rng = random.Random(seed + 2)
    out = []
    ctx2, ctx3 = PrimeContext(2), PrimeContext(3)
    out.append(
        WaveProblem(ctx=ctx2, n=1, alpha=1, K=1, u0=_eigen_table(ctx2, 1, 1, Fraction(1), 1, widen=1))
    )
    out.append(
        WaveProblem(ctx=ctx3, n=1, alpha=Fraction(1, 2), K=2, u0=_eigen_table(ctx3, 1, 0, Fraction(2), 2, widen=1))
    )
    out.append(
        WaveProblem(ctx=ctx2, n=2, alpha=1, K=2, u0=_zero_mean(_random_table(rng, ctx2, 2, 1, 1, True)))
    )
    out.append(
        WaveProblem(ctx=ctx3, n=1, alpha=2, K=3, u0=_zero_mean(_random_table(rng, ctx3, 1, 1, 1, True)))
    )
    return out


def check_solver_duality(seed: int = DEFAULT_SEED, tol: float = 1e-9) -> CheckResult:
    """Spectral and convolution slices agree; t = 0 returns the data exactly."""
    worst = 0.0
    slices = 0
    for prob in _duality_problems(seed):
        u0_hat = spectral_data(prob)
        zero_slice = solve_convolution(prob, T_ZERO)
        spectral_zero = solve_spectral(prob, T_ZERO, u0_hat)
        if not (
            equal_exact(zero_slice.field, prob.u0)
            and equal_exact(spectral_zero.field, prob.u0)
        ):
            return CheckResult(
                "solver-duality", False, "t = 0 slice differs from the data"
            )
        for L in auto_time_sweep(prob, u0_hat):
            a = solve_spectral(prob, L, u0_hat)
            b = solve_convolution(prob, L)
            worst = max(worst, max_abs_diff(a.field, b.field))
            slices += 1
    passed = worst <= tol
    return CheckResult(
        "solver-duality",
        passed,
        f"{slices} slices on both routes, max gap {worst:.3e}; t=0 exact",
    )


def check_time_pde(tol: float = 1e-10) -> CheckResult:
    """The time profile of a single-sphere mode is an eigenfunction in t.

    With spectral data on the sphere |xi| = p**N, the temporal operator of
    order alpha acting on t -> u(t, x) must multiply it by p**(K*alpha*N).
    """
    worst = 0.0
    combos = 0
    for p, K, N, alpha in (
        (2, 1, 1, 1),
        (2, 2, 1, Fraction(1, 2)),
        (3, 1, 0, 2),
        (3, 2, -1, 1),
        (5, 1, 1, Fraction(1, 2)),
    ):
        ctx = PrimeContext(p)
        u0 = _eigen_table(ctx, 1, N, Fraction(1), 1)  # transform = sphere-N indicator
        prob = WaveProblem(ctx=ctx, n=1, alpha=alpha, K=K, u0=u0)
        x = next(
            rep for rep, v in u0.items() if not values_equal(v, Fraction(0))
        )
        profile = time_profile(prob, x)
        lo, hi = profile.shell_lo, profile.shell_hi
        table = embed_radial(profile, hi, 1 - lo, 1)
        params = OperatorParams(ctx=ctx, n=1, alpha=alpha)
        applied = apply_spectral(params, table)
        lam = params.power_of_p(K * N)
        lam_c = complex(float(lam), 0.0) if isinstance(lam, Fraction) else complex(lam)
        scale_ref = max(
            (abs(value_to_complex(v)) for _, v in table.items()), default=1.0
        )
        for rep, v in applied.items():
            ref = value_to_complex(table.values[rep]) * lam_c
            err = abs(value_to_complex(v) - ref)
            worst = max(worst, err / max(abs(lam_c) * scale_ref, 1e-30))
        combos += 1
    passed = worst <= tol
    return CheckResult(
        "time-pde",
        passed,
        f"{combos} single-sphere modes, worst relative defect {worst:.3e}",
    )


def check_finite_dependence(tol: float = 1e-12) -> CheckResult:
    """Data in a ball stays in the ball for every early-enough slice."""
    worst = 0.0
    combos = 0
    for p in (2, 3):
        ctx = PrimeContext(p)
        for K in (1, 2):
            for N in (0, 1, 2):
                grid = enumerate_cosets(ctx, N, 1 - N, 1)
                values = {}
                for rep in grid.representatives:
                    e = vector_norm_exponent(rep, p)
                    inner = e == NEG_INF or e <= N - 1
                    values[rep] = Fraction(1) if inner else Fraction(0)
                f = CosetFunction(grid, values)
                f = _zero_mean(f)
                prob = WaveProblem(ctx=ctx, n=1, alpha=1, K=K, u0=f)
                report = dependence_check(prob, N, tol=tol)
                worst = max(worst, report.max_leak)
                if not report.passed:
                    return CheckResult(
                        "finite-dependence",
                        False,
                        f"leak {report.max_leak:.3e} outside the ball at "
                        f"p={p} K={K} N={N} (swept {report.swept})",
                    )
                combos += 1
    return CheckResult(
        "finite-dependence",
        True,
        f"{combos} (p,K,N) combos confined, max leak {worst:.3e}",
    )


def check_l1_bound(seed: int = DEFAULT_SEED) -> CheckResult:
    """Every swept slice respects the universal L1 growth bound."""
    worst_ratio = 0.0
    slices = 0
    for prob in _duality_problems(seed):
        u0_hat = spectral_data(prob)
        for L in auto_time_sweep(prob, u0_hat):
            rep = l1_bound_check(prob, L, solve_spectral(prob, L, u0_hat))
            worst_ratio = max(worst_ratio, rep.ratio)
            if not rep.passed:
                return CheckResult(
                    "l1-bound",
                    False,
                    f"ratio {rep.ratio:.6g} exceeds bound {rep.bound:.6g} at L={L}",
                )
            slices += 1
    return CheckResult(
        "l1-bound", True, f"{slices} slices, observed max ratio {worst_ratio:.6g}"
    )


def check_uniqueness() -> CheckResult:
    """Zero data stays zero along both solver routes."""
    for p, n in ((2, 1), (3, 1), (2, 2)):
        ctx = PrimeContext(p)
        grid = enumerate_cosets(ctx, 1, 1, n)
        zero = CosetFunction(grid, {rep: Fraction(0) for rep in grid.representatives})
        prob = WaveProblem(ctx=ctx, n=n, alpha=1, K=1, u0=zero)
        report = uniqueness_smoke(prob, labels=[-3, -1, 0, 1, 2])
        if not report.passed:
            return CheckResult(
                "uniqueness", False, f"zero data grew to {report.max_abs:.3e}"
            )
    return CheckResult("uniqueness", True, "zero data stays exactly zero on both routes")


def check_refusal() -> CheckResult:
    """Incompatible operator orders are rejected with the right diagnostic."""
    ctx = PrimeContext(3)
    u0 = _eigen_table(ctx, 1, 0, Fraction(1), 1)
    try:
        WaveProblem.from_alpha_beta(ctx, 1, 1.0, 1.5, u0)
    except SpectralCompatibilityError as exc:
        msg = str(exc)
        if "zero" in msg and "1.5" in msg:
            ok = WaveProblem.from_alpha_beta(ctx, 1, 0.5, 1.5, u0)
            if ok.K == 3:
                return CheckResult(
                    "refusal-path", True, "non-integer ratio refused, integer ratio accepted"
                )
            return CheckResult("refusal-path", False, "integer ratio mis-parsed")
        return CheckResult(
            "refusal-path", False, f"diagnostic does not explain the refusal: {msg!r}"
        )
    return CheckResult("refusal-path", False, "beta/alpha = 1.5 was not refused")


def run_all(
    bracket: str = "ceil",
    seed: int = DEFAULT_SEED,
    tol_duality: float = 1e-9,
    tol_eigen: float = 1e-10,
    tol_dependence: float = 1e-12,
) -> list[CheckResult]:
    return [
        check_integration_formulas(),
        check_fourier_round_trip(seed, tol=tol_eigen),
        check_eigenrelation(tol=tol_eigen),
        check_operator_duality(seed, tol=tol_duality),
        check_kernel_identity(bracket),
        check_solver_duality(seed, tol=tol_duality),
        check_time_pde(tol=tol_eigen),
        check_finite_dependence(tol=tol_dependence),
        check_l1_bound(seed),
        check_uniqueness(),
        check_refusal(),
    ]
