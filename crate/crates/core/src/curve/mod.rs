//! Spectral curves, their ramification data and residue points.

pub mod classify;
pub mod config;
pub mod deck;
pub mod function;
pub mod spectral;

pub use classify::{
    form_has_pole,
    classify_residue_points, integrate_rational, primitive_phi, LogPoint, PhiSide, ResiduePointSet,
};
pub use config::{parse_curve, parse_curve_json, parse_curve_toml, CurveConfig};
pub use deck::{deck_transformation, DeckSeries};
pub use function::{CurveFunction, CurveKind, LogAtom};
pub use spectral::{DualKind, Ramification, Side, SpectralCurve};
