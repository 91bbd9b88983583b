//! Correction to `omega_{g,1}` at log-vital points of `y`.
//!
//! At a log-vital point `a` with `dy ~ dz/(alpha (z - a))` the term is
//! `Res_{q -> a} (1/(z - q) - 1/(z - a)) dz F(q) dq` where
//! `F dq = [hbar^{2g}] (1/(alpha S(alpha hbar d_x))) log(q - a) dx`
//! `= r_g alpha^{2g-1} (d_x^{2g} log(q - a)) dx` and `1/S(t) = sum r_l t^{2l}`.
//! Expanding in `t = q - a` leaves the principal part of `F` at `a` without
//! its residue term.

use num_traits::Zero;

use super::engine::tr_support;
use super::multidiff::MultiDifferential;
use crate::algebra::{
    rational::pow_i, s_function_series, Point, Rational, RationalFunction, SKind,
};
use crate::curve::SpectralCurve;
use crate::error::{Error, Result};

/// `(1/x') d/dz` applied `k` times to `f`.
pub fn dx_power(f: &RationalFunction, dx: &RationalFunction, k: usize) -> Result<RationalFunction> {
    let mut h = f.clone();
    for _ in 0..k {
        h = h.derivative().div(dx)?;
    }
    Ok(h)
}

/// The rational integrand `F(q)` at one log-vital point.
pub fn correction_integrand(
    curve: &SpectralCurve,
    a: &Rational,
    alpha: &Rational,
    g: usize,
) -> Result<RationalFunction> {
    let dx = curve.x.differential();
    let r = s_function_series(SKind::InverseS, 2 * g)[2 * g].clone();
    // d_x log(q - a) = 1/((q - a) x')
    let first = RationalFunction::pole(Rational::from_integer(1.into()), a, 1).div(&dx)?;
    let d = dx_power(&first, &dx, 2 * g - 1)?;
    Ok((&d * &dx).scale(&(r * pow_i(alpha, 2 * g as i64 - 1))))
}

pub fn logtr_correction(curve: &SpectralCurve, g: usize) -> Result<MultiDifferential> {
    if g == 0 {
        return Err(Error::Precondition("correction needs g >= 1".into()));
    }
    let support = tr_support(curve)?;
    let mut w = MultiDifferential::zero(g, 1);
    for (a, alpha) in &support.log_vital {
        let f = correction_integrand(curve, a, alpha, g)?;
        let s = f.expand(&Point::Finite(a.clone()), 0);
        for j in 2..=(-s.valuation()).max(0) {
            let c = s.coeff(-j).unwrap_or_else(Rational::zero);
            w.add_term(vec![(a.clone(), j as u32)], &c);
        }
    }
    Ok(w)
}
