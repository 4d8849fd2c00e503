"""Exact p-adic Fourier analysis and fractional evolution on coset grids.

The package works over Q_p^n with rational arithmetic wherever the math
permits: characters take values in roots of unity tracked symbolically,
so transforms, operator applications, and solver slices of rational data
round-trip bit for bit.  Floating point enters only when the data or the
operator order forces it.
"""

from .errors import (
    ConfigError,
    GridCapError,
    LizorkinError,
    NonRadialError,
    PadicWaveError,
    SpectralCompatibilityError,
)
from .fourier import forward, inverse, radial_inverse
from .functions import (
    CosetFunction,
    RadialShellFunction,
    add,
    ball_indicator,
    embed_radial,
    equal_exact,
    evaluate,
    integrate,
    is_in_Phi,
    is_in_Psi,
    l1_norm,
    load_coset_function,
    max_abs_diff,
    radial_profile,
    regrid,
    save_coset_function,
    scale,
    sphere_indicator,
    subtract,
    translate,
)
from .lattice import (
    BallSpec,
    CosetGrid,
    SphereSpec,
    ball_character_integral,
    ball_volume,
    enumerate_cosets,
    sphere_character_integral,
    sphere_representatives,
    sphere_volume,
)
from .padic import (
    CharacterPhase,
    PAdicScalar,
    PrimeContext,
    canonical_digits,
    character,
    fractional_part,
    norm_exact,
    norm_exponent,
    padic_norm,
    valuation,
)
from .phases import PhaseSum
from .solver import (
    PropagationMultiplier,
    SolutionSlice,
    T_ZERO,
    WaveProblem,
    auto_time_sweep,
    dependence_check,
    eigenfunction,
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
from .vladimirov import (
    OperatorParams,
    apply_hypersingular,
    apply_hypersingular_field,
    apply_spectral,
)

__version__ = "0.1.0"

__all__ = [
    "BallSpec",
    "CharacterPhase",
    "ConfigError",
    "CosetFunction",
    "CosetGrid",
    "GridCapError",
    "LizorkinError",
    "NonRadialError",
    "OperatorParams",
    "PAdicScalar",
    "PadicWaveError",
    "PhaseSum",
    "PrimeContext",
    "PropagationMultiplier",
    "RadialShellFunction",
    "SolutionSlice",
    "SpectralCompatibilityError",
    "SphereSpec",
    "T_ZERO",
    "WaveProblem",
    "add",
    "apply_hypersingular",
    "apply_hypersingular_field",
    "apply_spectral",
    "auto_time_sweep",
    "ball_character_integral",
    "ball_indicator",
    "ball_volume",
    "canonical_digits",
    "character",
    "dependence_check",
    "eigenfunction",
    "embed_radial",
    "enumerate_cosets",
    "equal_exact",
    "evaluate",
    "forward",
    "fractional_part",
    "integrate",
    "inverse",
    "is_in_Phi",
    "is_in_Psi",
    "kernel_ball_integral",
    "kernel_closed_form",
    "kernel_oracle",
    "l1_bound_check",
    "l1_norm",
    "load_coset_function",
    "max_abs_diff",
    "multiplier_value",
    "norm_exact",
    "norm_exponent",
    "padic_norm",
    "radial_inverse",
    "radial_profile",
    "regrid",
    "save_coset_function",
    "scale",
    "solve_convolution",
    "solve_spectral",
    "sphere_character_integral",
    "sphere_indicator",
    "sphere_representatives",
    "sphere_volume",
    "subtract",
    "time_profile",
    "translate",
    "uniqueness_smoke",
    "valuation",
]
