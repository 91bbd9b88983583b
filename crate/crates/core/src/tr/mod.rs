//! Topological recursion with the logarithmic correction, and the dilaton
//! free energy.

pub mod engine;
pub mod free_energy;
pub mod logtr;
pub mod multidiff;

pub use engine::{
    check_guard, tr_omega, tr_omega_with, tr_support, KernelOrientation, TrOptions, TrSupport,
};
pub use free_energy::{
    dilaton_free_energy, dilaton_with_shift, lemma31_check, linear_loop_check, ComputationPath,
    FreeEnergyValue, Lemma31Report,
};
pub use logtr::{dx_power, logtr_correction};
pub use multidiff::{bergman_density, MultiDifferential, Pole};
