"""Exact Wigner distributions of isotropic-oscillator spectral projections,
their Weyl sums over spectral windows, and the asymptotic laws they obey."""

from .oscillator import (
    EnergyLevel,
    OscillatorConfig,
    PhasePoint,
    ScaledOffset,
    eigenspace_dim,
    energy_level,
    level_index,
    mehler_kernel,
    propagator_wigner,
    snap_hbar,
    wigner_eigenspace,
    wigner_eigenspace_radial,
)
from .scaled_numerics import (
    LaguerreParams,
    ScaledReal,
    airy_ai,
    airy_tail,
    log_binomial,
    weighted_laguerre,
)
from .weyl_sums import (
    EmpiricalMeasureSlice,
    FejerWeight,
    GaussianWeight,
    SharpAiry,
    SharpBulk,
    SingleLevel,
    Smoothed,
    TabulatedWeight,
    abel_total,
    empirical_partial,
    envelope_growth_exponent,
    sum_sharp_airy,
    sum_sharp_bulk,
    sum_smoothed,
    weyl_sum,
    wigner_levels,
)
from .asymptotic_laws import (
    airy_individual,
    bulk_cosine,
    bulk_interface,
    bulk_leading,
    exterior_bound,
    hbar_localized_sum,
    rate_exponent,
    sharp_airy_interface,
    smoothed_airy_interface,
    smoothed_bulk_leading,
)
from .oracles import (
    ContourSpec,
    dirichlet_weyl_oracle,
    fourier_coefficient_wigner,
    radial_phase_space_integral,
    stationary_phase_leading,
)

__version__ = "0.1.0"
