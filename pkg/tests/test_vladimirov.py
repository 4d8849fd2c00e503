import random
from fractions import Fraction

import pytest

from padicwave.errors import ConfigError, LizorkinError
from padicwave.fourier import forward, inverse
from padicwave.functions import (
    CosetFunction,
    ball_indicator,
    embed_radial,
    equal_exact,
    integrate,
    max_abs_diff,
    subtract,
    translate,
)
from padicwave.lattice import enumerate_cosets, vector_norm_exponent
from padicwave.padic import PrimeContext
from padicwave.phases import value_scale
from padicwave.solver import eigenfunction
from padicwave.vladimirov import (
    OperatorParams,
    apply_hypersingular,
    apply_hypersingular_field,
    apply_spectral,
)


def test_integral_alpha_keeps_tables_rational():
    params = OperatorParams(PrimeContext(3), 1, 2)
    assert params.power_of_p(2) == Fraction(81)  # p**(2*alpha)
    assert params.power_of_p(-2) == Fraction(1, 81)
    assert isinstance(params.prefactor(), Fraction)


def test_fractional_alpha_degrades_to_float():
    params = OperatorParams(PrimeContext(3), 1, 0.5)
    assert isinstance(params.power_of_p(2), float)
    assert params.power_of_p(2) == pytest.approx(3.0)


def test_eigenfunction_is_scaled_by_power_of_p():
    # core-plus-shell data with transform on one sphere: exact eigenvalue p^(K*alpha*N)
    for p, K, N, alpha in ((2, 1, 0, 1), (3, 2, 1, 2), (2, 2, -1, 3)):
        ctx = PrimeContext(p)
        params = OperatorParams(ctx, 1, alpha)
        u = embed_radial(eigenfunction(N, Fraction(1), K, ctx), -K * N + 1, K * N, 1)
        got = apply_spectral(params, u)
        lam = Fraction(p) ** (K * alpha * N)
        want = CosetFunction(got.grid, {rep: lam * u.values[rep] for rep in u.values})
        assert equal_exact(got, want)


def test_hypersingular_agrees_with_spectral_on_eigenfunctions():
    ctx = PrimeContext(3)
    params = OperatorParams(ctx, 1, 2)
    u = embed_radial(eigenfunction(1, Fraction(1), 2, ctx), -1, 2, 1)
    spec = apply_spectral(params, u)
    for rep in u.values:
        direct = apply_hypersingular(params, u, rep)
        assert direct == spec.values[rep]


def test_unit_ball_indicator_pointwise_closed_form():
    # outside the ball (|x| = p**gamma, gamma >= 1) a negative power tail
    p = 2
    ctx = PrimeContext(p)
    for alpha in (1, 2):
        params = OperatorParams(ctx, 1, alpha)
        f = ball_indicator(ctx, 1, 0, 3, 3)
        pref = Fraction(1 - p**alpha) / (1 - Fraction(p) ** (-alpha - 1))
        for gamma in (1, 2, 3):
            x = (Fraction(1, p**gamma),)
            want = pref * Fraction(p) ** (-gamma * (alpha + 1))
            assert apply_hypersingular(params, f, x) == want


def test_unit_ball_frozen_values_alpha_one():
    ctx = PrimeContext(2)
    params = OperatorParams(ctx, 1, 1)
    f = ball_indicator(ctx, 1, 0, 3, 3)
    assert apply_hypersingular(params, f, (Fraction(1, 2),)) == Fraction(-1, 3)
    assert apply_hypersingular(params, f, (Fraction(1, 4),)) == Fraction(-1, 12)
    assert apply_hypersingular(params, f, (Fraction(1, 8),)) == Fraction(-1, 48)


def test_unit_ball_fractional_alpha_close_to_closed_form():
    p = 2
    ctx = PrimeContext(p)
    alpha = 0.5
    params = OperatorParams(ctx, 1, alpha)
    f = ball_indicator(ctx, 1, 0, 4, 4)
    pref = (1 - p**alpha) / (1 - p ** (-alpha - 1))
    for gamma in (1, 2):
        x = (Fraction(1, p**gamma),)
        want = pref * p ** (-gamma * (alpha + 1))
        assert apply_hypersingular(params, f, x) == pytest.approx(want, abs=1e-12)


def test_constant_background_kills_the_operator():
    # constants sit in the kernel once the table is read as a restriction
    ctx = PrimeContext(3)
    params = OperatorParams(ctx, 1, 2)
    grid = enumerate_cosets(ctx, 1, 1, 1)
    c = Fraction(7, 2)
    f = CosetFunction(grid, {rep: c for rep in grid.representatives})
    out = apply_hypersingular_field(params, f, background=c)
    assert all(v == 0 for v in out.values.values())


def test_field_application_matches_transform_side():
    ctx = PrimeContext(2)
    params = OperatorParams(ctx, 1, 1)
    rng = random.Random(5)
    grid = enumerate_cosets(ctx, 1, 1, 1)
    f = CosetFunction(
        grid, {rep: Fraction(rng.randint(-4, 4)) for rep in grid.representatives}
    )
    f = subtract(f, translate(f, Fraction(1, 2)))  # zero mean, keeps it admissible
    by_field = apply_hypersingular_field(params, f, support_exp=1)
    by_spec = apply_spectral(params, f)
    assert max_abs_diff(by_field, by_spec) == 0


def test_duality_against_brute_multiplier():
    # transform of D f equals |xi|^alpha times transform of f
    ctx = PrimeContext(3)
    params = OperatorParams(ctx, 2, 2)
    rng = random.Random(11)
    grid = enumerate_cosets(ctx, 1, 1, 2)
    f = CosetFunction(
        grid, {rep: Fraction(rng.randint(-3, 3)) for rep in grid.representatives}
    )
    f = subtract(f, translate(f, (Fraction(1, 3), Fraction(0))))
    lhs = forward(apply_spectral(params, f))
    fhat = forward(f)
    rhs_values = {}
    for rep, v in fhat.values.items():
        e = vector_norm_exponent(rep, ctx.p)
        rhs_values[rep] = (
            Fraction(0) if not any(rep) else value_scale(v, params.power_of_p(e))
        )
    rhs = CosetFunction(fhat.grid, rhs_values)
    # phase sums built along two different routes: equal as numbers only
    assert max_abs_diff(lhs, rhs) <= 1e-12


def test_rejects_tables_outside_the_admissible_class():
    ctx = PrimeContext(2)
    params = OperatorParams(ctx, 1, 1)
    f = ball_indicator(ctx, 1, 0)
    assert integrate(f) != 0
    with pytest.raises(LizorkinError):
        apply_spectral(params, f)


def test_dimension_mismatch_is_a_config_error():
    ctx = PrimeContext(2)
    params = OperatorParams(ctx, 2, 1)
    f = ball_indicator(ctx, 1, 0)
    with pytest.raises(ConfigError):
        apply_spectral(params, f)


def test_field_application_refuses_to_shrink_support():
    ctx = PrimeContext(2)
    params = OperatorParams(ctx, 1, 1)
    f = ball_indicator(ctx, 1, 0, 2, 2)
    with pytest.raises(ConfigError):
        apply_hypersingular_field(params, f, support_exp=1)
