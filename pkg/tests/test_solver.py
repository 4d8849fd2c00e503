from fractions import Fraction

import pytest

from padicwave.errors import (
    ConfigError,
    LizorkinError,
    SpectralCompatibilityError,
)
from padicwave.fourier import forward
from padicwave.functions import (
    CosetFunction,
    ball_indicator,
    embed_radial,
    equal_exact,
    scale,
    sphere_indicator,
    translate,
)
from padicwave.lattice import SphereSpec, enumerate_cosets, sphere_volume
from padicwave.padic import NEG_INF, PrimeContext
from padicwave.solver import (
    T_ZERO,
    WaveProblem,
    auto_time_sweep,
    dependence_check,
    eigenfunction,
    eigenvalue_exponent,
    kernel_at_origin_limit,
    kernel_ball_integral,
    kernel_closed_form,
    kernel_oracle,
    l1_bound_check,
    multiplier_value,
    solve_convolution,
    solve_spectral,
    time_profile,
    uniqueness_smoke,
)


def eigen_data(ctx, N, C, K):
    r = eigenfunction(N, C, K, ctx)
    return embed_radial(r, -K * N + 1, K * N, 1)


# -- propagation multiplier ---------------------------------------------------


def test_multiplier_frozen_values():
    ctx2, ctx3 = PrimeContext(2), PrimeContext(3)
    assert multiplier_value(1, 0, 0, ctx2) == 1
    assert multiplier_value(1, 1, 0, ctx3) == Fraction(-1, 2)
    assert multiplier_value(2, -2, 1, ctx2) == 1
    assert multiplier_value(1, 2, 0, ctx2) == 0
    assert multiplier_value(3, -5, 2, ctx2) == Fraction(-1, 1)  # L = -KN+1, p = 2


def test_multiplier_time_zero_and_origin_mode():
    ctx = PrimeContext(5)
    assert multiplier_value(2, T_ZERO, 7, ctx) == 1
    assert multiplier_value(2, 3, NEG_INF, ctx) == 1


# -- eigenfunctions -----------------------------------------------------------


def test_eigenfunction_table_p2():
    ctx = PrimeContext(2)
    r = eigenfunction(0, Fraction(1), 1, ctx)
    assert r.value_at_exponent(NEG_INF) == Fraction(1, 2)
    assert r.value_at_exponent(0) == Fraction(1, 2)
    assert r.value_at_exponent(1) == Fraction(-1, 2)
    assert r.value_at_exponent(2) == 0
    assert r.integrate(1) == 0


def test_eigenfunction_table_p3_scaled_mode():
    ctx = PrimeContext(3)
    r = eigenfunction(1, Fraction(1), 2, ctx)
    assert r.value_at_exponent(-2) == Fraction(6)  # core: |x| <= 1/9
    assert r.value_at_exponent(-1) == Fraction(-3)
    assert r.value_at_exponent(0) == 0
    assert r.integrate(1) == 0


def test_eigenfunction_transform_is_one_frequency_sphere():
    for p, K, N, C in ((2, 1, 0, Fraction(1)), (3, 2, 1, Fraction(5, 3))):
        ctx = PrimeContext(p)
        u = eigen_data(ctx, N, C, K)
        want = scale(sphere_indicator(ctx, 1, K * N), C)
        assert equal_exact(forward(u), want)


def test_eigenvalue_exponent_is_bilinear():
    assert eigenvalue_exponent(2, 3) == 6
    assert eigenvalue_exponent(1, -2) == -2


# -- the propagation kernel ---------------------------------------------------


def test_kernel_spot_values_p5():
    # front boundary at K=3: one shell carries 5/4, the next is flat zero
    ctx = PrimeContext(5)
    assert kernel_closed_form(3, 1, -2, 0, ctx) == Fraction(5, 4)
    assert kernel_closed_form(3, 1, -3, 0, ctx) == Fraction(0)
    assert kernel_oracle(3, 1, -2, 0, ctx) == Fraction(5, 4)
    assert kernel_oracle(3, 1, -3, 0, ctx) == Fraction(0)


def test_kernel_closed_form_matches_oracle():
    for p in (2, 3):
        ctx = PrimeContext(p)
        for n in (1, 2):
            for K in (1, 2):
                for L in range(-4, 5):
                    for M in range(-4, 5):
                        assert kernel_closed_form(K, n, L, M, ctx) == kernel_oracle(
                            K, n, L, M, ctx
                        ), (p, n, K, L, M)


def test_floor_bracket_variant_is_wrong():
    # the plausible alternative bracket disagrees with the direct sum
    ctx = PrimeContext(2)
    good = kernel_closed_form(2, 1, 3, 0, ctx)
    bad = kernel_closed_form(2, 1, 3, 0, ctx, bracket="floor")
    assert good == kernel_oracle(2, 1, 3, 0, ctx)
    assert bad != good
    with pytest.raises(ConfigError):
        kernel_closed_form(1, 1, 0, 0, ctx, bracket="round")


def test_kernel_constant_deep_inside_the_front():
    ctx = PrimeContext(3)
    for K, L in ((1, 2), (2, 5), (3, 4)):
        k_inf = kernel_at_origin_limit(K, 1, L, ctx)
        m_const = (L - 2) // K
        for M in range(m_const - 3, m_const + 1):
            assert kernel_closed_form(K, 1, L, M, ctx) == k_inf


def test_kernel_ball_integral_telescopes():
    ctx = PrimeContext(2)
    for K, n, L in ((1, 1, 2), (2, 1, -3), (2, 2, 1), (3, 1, 0)):
        for r in range(-3, 4):
            step = kernel_ball_integral(K, n, L, r, ctx) - kernel_ball_integral(
                K, n, L, r - 1, ctx
            )
            vol = sphere_volume(SphereSpec(ctx=ctx, n=n, radius_exp=r))
            assert step == kernel_closed_form(K, n, L, r, ctx) * vol, (K, n, L, r)


def test_kernel_ball_integral_deep_ball_is_constant_mass():
    ctx = PrimeContext(3)
    K, n, L = 2, 1, 6
    m_const = (L - 2) // K
    k_inf = kernel_at_origin_limit(K, n, L, ctx)
    for r in range(m_const - 2, m_const + 1):
        assert kernel_ball_integral(K, n, L, r, ctx) == k_inf * Fraction(3) ** (n * r)


# -- the Cauchy problem -------------------------------------------------------


def test_time_zero_returns_the_data_exactly():
    ctx = PrimeContext(3)
    u0 = eigen_data(ctx, 1, Fraction(2, 7), 2)
    prob = WaveProblem(ctx=ctx, n=1, alpha=1, K=2, u0=u0)
    for sl in (solve_spectral(prob, T_ZERO), solve_convolution(prob, T_ZERO)):
        assert equal_exact(sl.field, u0)


def test_slices_of_one_mode_scale_by_the_multiplier():
    ctx = PrimeContext(2)
    N, C, K = 1, Fraction(3), 2
    u0 = eigen_data(ctx, N, C, K)
    prob = WaveProblem(ctx=ctx, n=1, alpha=1, K=K, u0=u0)
    for L in auto_time_sweep(prob):
        b = multiplier_value(K, L, K * N, ctx)  # frequency sphere exponent K*N
        want = scale(u0, b)
        assert equal_exact(solve_spectral(prob, L).field, want)
        assert equal_exact(solve_convolution(prob, L).field, want)


def test_both_solution_routes_agree_on_mixed_data():
    ctx = PrimeContext(2)
    a = eigen_data(ctx, 0, Fraction(1), 1)
    b = eigen_data(ctx, 1, Fraction(1, 2), 1)
    from padicwave.functions import add

    u0 = add(a, b)
    prob = WaveProblem(ctx=ctx, n=1, alpha=2, K=1, u0=u0)
    for L in auto_time_sweep(prob):
        s1 = solve_spectral(prob, L).field
        s2 = solve_convolution(prob, L).field
        assert equal_exact(s1, s2), L


def test_auto_time_sweep_window():
    ctx = PrimeContext(2)
    u0 = eigen_data(ctx, 1, Fraction(1), 2)  # single frequency sphere at exp 2
    prob = WaveProblem(ctx=ctx, n=1, alpha=1, K=2, u0=u0)
    assert auto_time_sweep(prob) == range(-5, -1)


def test_auto_time_sweep_empty_spectrum_fallback():
    ctx = PrimeContext(2)
    grid = enumerate_cosets(ctx, 1, 1, 1)
    zero = CosetFunction(grid, {rep: Fraction(0) for rep in grid.representatives})
    prob = WaveProblem(ctx=ctx, n=1, alpha=1, K=2, u0=zero)
    assert auto_time_sweep(prob) == range(-3, 5)


def test_dependence_stays_in_the_data_ball():
    ctx = PrimeContext(2)
    base = eigen_data(ctx, 0, Fraction(1), 2)  # supported in |x| <= 2
    u0 = translate(base, Fraction(4))  # move to a coset inside |x| <= 4
    prob = WaveProblem(ctx=ctx, n=1, alpha=1, K=2, u0=u0)
    report = dependence_check(prob, 2)
    assert report.data_confined
    assert report.max_leak == 0.0
    assert report.passed
    assert 2 in report.swept  # the boundary label L = K*(N-1)


def test_l1_bound_holds_and_time_zero_is_isometric():
    ctx = PrimeContext(3)
    u0 = eigen_data(ctx, 1, Fraction(1), 1)
    prob = WaveProblem(ctx=ctx, n=1, alpha=1, K=1, u0=u0)
    zero_report = l1_bound_check(prob, T_ZERO)
    assert zero_report.ratio == pytest.approx(1.0)
    for L in auto_time_sweep(prob):
        r = l1_bound_check(prob, L)
        assert r.passed, (L, r.ratio, r.bound)


def test_uniqueness_zero_data_stays_zero():
    ctx = PrimeContext(2)
    grid = enumerate_cosets(ctx, 1, 1, 1)
    zero = CosetFunction(grid, {rep: Fraction(0) for rep in grid.representatives})
    prob = WaveProblem(ctx=ctx, n=1, alpha=1, K=1, u0=zero)
    report = uniqueness_smoke(prob)
    assert report.passed and report.max_abs == 0.0
    nonzero = eigen_data(ctx, 0, Fraction(1), 1)
    bad = WaveProblem(ctx=ctx, n=1, alpha=1, K=1, u0=nonzero)
    with pytest.raises(ConfigError):
        uniqueness_smoke(bad)


def test_incompatible_orders_are_refused_loudly():
    ctx = PrimeContext(2)
    u0 = eigen_data(ctx, 0, Fraction(1), 1)
    with pytest.raises(SpectralCompatibilityError, match="zero solution"):
        WaveProblem.from_alpha_beta(ctx, 1, 1, 1.5, u0)
    prob = WaveProblem.from_alpha_beta(ctx, 1, 0.5, 1.5, u0)
    assert prob.K == 3
    assert prob.beta == pytest.approx(1.5)


def test_time_profile_tracks_the_multiplier():
    ctx = PrimeContext(2)
    N, K = 1, 2
    u0 = eigen_data(ctx, N, Fraction(1), K)
    prob = WaveProblem(ctx=ctx, n=1, alpha=1, K=K, u0=u0)
    x = (Fraction(0),)
    profile = time_profile(prob, x)
    ux = u0.values[(Fraction(0),)]
    assert profile.value_at_exponent(NEG_INF) == ux
    for L in range(-6, 3):
        want = multiplier_value(K, L, K * N, ctx) * ux
        assert profile.value_at_exponent(L) == want, L
    assert profile.integrate(1) == 0


def test_wave_problem_validation():
    ctx = PrimeContext(2)
    u0 = eigen_data(ctx, 0, Fraction(1), 1)
    with pytest.raises(ConfigError):
        WaveProblem(ctx=ctx, n=1, alpha=1, K=0, u0=u0)
    with pytest.raises(ConfigError):
        WaveProblem(ctx=PrimeContext(3), n=1, alpha=1, K=1, u0=u0)
    with pytest.raises(LizorkinError):
        WaveProblem(ctx=ctx, n=1, alpha=1, K=1, u0=ball_indicator(ctx, 1, 0))
