//! The x-y duality formula for `omega_{g,1}` and the free energy of curves
//! with unramified `y`.

pub mod exponent;
pub mod formulas;

pub use exponent::{
    build_exponent, duality_coefficients, exponential, require_trivial_dual, DenominatorKind,
    DualExponent, DualityCoefficients, Regime,
};
pub use formulas::{
    dy_dx_iterate, free_energy_duality, free_energy_duality_at, free_energy_integrand,
    invariantized_free_energy, omega_g1_density, omega_g1_duality, residue_points,
    DualityFreeEnergy, InvariantizedFreeEnergy, PointContribution,
};
