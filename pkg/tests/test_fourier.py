import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padicwave.errors import ConfigError
from padicwave.fourier import forward, inverse, radial_inverse
from padicwave.functions import (
    CosetFunction,
    ball_indicator,
    embed_radial,
    equal_exact,
    is_in_Phi,
    is_in_Psi,
    max_abs_diff,
    radial_profile,
    scale,
    sphere_indicator,
    subtract,
    translate,
)
from padicwave.lattice import enumerate_cosets
from padicwave.padic import PrimeContext
from padicwave.solver import eigenfunction


def test_unit_ball_indicator_is_a_fixed_point():
    for p in (2, 3, 5):
        ctx = PrimeContext(p)
        f = ball_indicator(ctx, 1, 0)
        assert equal_exact(forward(f), f)
        assert equal_exact(inverse(forward(f)), f)


def test_wider_ball_transforms_to_scaled_smaller_ball():
    for p in (2, 3):
        ctx = PrimeContext(3) if p == 3 else PrimeContext(2)
        f = ball_indicator(ctx, 1, 1)
        g = forward(f)
        want = scale(ball_indicator(ctx, 1, -1, 1, 1), Fraction(p))
        assert equal_exact(g, want)


def test_transform_swaps_support_and_resolution():
    ctx = PrimeContext(2)
    grid = enumerate_cosets(ctx, 2, 1, 1)
    f = CosetFunction(grid, {rep: Fraction(1) for rep in grid.representatives})
    g = forward(f)
    assert g.support_exp == 1 and g.resolution_exp == 2


def test_zero_mean_maps_to_zero_at_origin():
    ctx = PrimeContext(3)
    rng = random.Random(2)
    grid = enumerate_cosets(ctx, 1, 1, 1)
    f = CosetFunction(
        grid, {rep: Fraction(rng.randint(-5, 5)) for rep in grid.representatives}
    )
    g = subtract(f, translate(f, Fraction(1, 3)))
    assert is_in_Phi(g, 0.0)
    assert is_in_Psi(forward(g), 0.0)


@given(st.integers(min_value=0, max_value=10_000), st.sampled_from([2, 3, 5]))
def test_round_trip_is_exact_on_rational_tables(seed, p):
    ctx = PrimeContext(p)
    rng = random.Random(seed)
    grid = enumerate_cosets(ctx, 1, 1, 1)
    f = CosetFunction(
        grid,
        {
            rep: Fraction(rng.randint(-9, 9), rng.randint(1, 7))
            for rep in grid.representatives
        },
    )
    assert equal_exact(inverse(forward(f)), f)
    assert equal_exact(forward(inverse(f)), f)


def test_round_trip_in_two_dimensions():
    ctx = PrimeContext(2)
    rng = random.Random(1)
    grid = enumerate_cosets(ctx, 1, 1, 2)
    f = CosetFunction(
        grid, {rep: Fraction(rng.randint(-4, 4)) for rep in grid.representatives}
    )
    assert equal_exact(inverse(forward(f)), f)


def test_float_tables_round_trip_within_tolerance():
    ctx = PrimeContext(3)
    rng = random.Random(8)
    grid = enumerate_cosets(ctx, 1, 1, 1)
    f = CosetFunction(
        grid,
        {
            rep: complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            for rep in grid.representatives
        },
    )
    assert max_abs_diff(inverse(forward(f)), f) <= 1e-10


def test_sphere_spectrum_inverts_to_the_canonical_eigenfunction():
    # transform-side sphere indicator comes back as core + single shell
    for p, K, N in ((2, 1, 0), (3, 2, 1), (2, 2, -1)):
        ctx = PrimeContext(p)
        spec = sphere_indicator(ctx, 1, K * N)
        got = inverse(spec)
        want = embed_radial(
            eigenfunction(N, Fraction(1), K, ctx), -K * N + 1, K * N, 1
        )
        a, b = got, want
        if got.support_exp != want.support_exp or got.resolution_exp != want.resolution_exp:
            from padicwave.functions import regrid

            M = max(got.support_exp, want.support_exp)
            ell = max(got.resolution_exp, want.resolution_exp)
            a, b = regrid(got, M, ell), regrid(want, M, ell)
        assert equal_exact(a, b)


def test_radial_inverse_matches_the_grid_transform():
    # radial closed form against the full 2-dim table transform
    ctx = PrimeContext(3)
    f = sphere_indicator(ctx, 2, 1, 1, 1)
    by_grid = radial_profile(inverse(f))
    by_formula = radial_inverse(radial_profile(f), 2)
    for gamma in range(-3, 4):
        assert by_grid.value_at_exponent(gamma) == by_formula.value_at_exponent(gamma)


def test_radial_inverse_unit_ball_fixed_point():
    ctx = PrimeContext(5)
    r = radial_profile(ball_indicator(ctx, 1, 0))
    out = radial_inverse(r, 1)
    assert out.value_at_exponent(0) == 1
    assert out.value_at_exponent(1) == 0
    assert out.value_at_exponent(-2) == 1


def test_transform_requires_matching_space():
    ctx = PrimeContext(2)
    f = ball_indicator(ctx, 1, 0)
    with pytest.raises(ConfigError):
        subtract(f, ball_indicator(PrimeContext(3), 1, 0))
