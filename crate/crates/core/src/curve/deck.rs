//! Local deck involution at a simple ramification point of `x`.
//!
//! With `X(t) = x(p + t) - x(p) = t^2 h(t)` put `W(t) = t sqrt(h(t)/h(0))`,
//! so that `X = h(0) W^2`. Then `sigma(t) = W^{-1}(-W(t))`, with the
//! compositional inverse of `W` found by Newton iteration.

use num_traits::{One, Zero};

use super::spectral::SpectralCurve;
use crate::algebra::{format_rational, int, Laurent, Point, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckSeries {
    pub center: Rational,
    /// `sigma(t) = -t + O(t^2)`, known below `t^(order + 1)`.
    pub series: Laurent,
}

/// `x(p + t) - x(p)` to precision `prec`.
pub fn local_x(curve: &SpectralCurve, p: &Rational, prec: i64) -> Result<Laurent> {
    let (_, s) = curve.x.local_expansion(&Point::Finite(p.clone()), prec)?;
    Ok(s)
}

/// Square root of a power series with constant term 1.
fn sqrt_unit(u: &Laurent) -> Result<Laurent> {
    if u.valuation() != 0 || u.coeff(0) != Some(Rational::one()) {
        return Err(Error::Precondition("square root needs constant term 1".into()));
    }
    let n = u.precision();
    let mut s: Vec<Rational> = vec![Rational::one()];
    for k in 1..n {
        let mut acc = u.coeff(k).unwrap_or_else(Rational::zero);
        for i in 1..k {
            acc -= &s[i as usize] * &s[(k - i) as usize];
        }
        s.push(acc / int(2));
    }
    Ok(Laurent::from_coeffs(s, n))
}

/// Compositional inverse of `w = t + O(t^2)` modulo `t^n`.
fn revert(w: &Laurent, n: i64) -> Result<Laurent> {
    let w = w.known_part();
    let dw = w.derivative();
    let t = Laurent::t();
    let mut v = t.clone();
    let mut k = 2;
    while k < n {
        k = (2 * k).min(n);
        let vk = v.known_part().truncate(k);
        let e = &w.truncate(k).compose(&vk)? - &t;
        let d = dw.truncate(k).compose(&vk)?;
        v = (&vk - &e.div(&d)?).truncate(k);
    }
    Ok(v.truncate(n))
}

/// Deck series at `p` known below `t^(order + 1)`.
pub fn deck_transformation(curve: &SpectralCurve, p: &Rational, order: i64) -> Result<DeckSeries> {
    if order < 2 {
        return Err(Error::Precondition("deck order must be at least 2".into()));
    }
    let n = order + 1;
    let x = local_x(curve, p, n + 2)?;
    let h = x.shift(-2);
    let h0 = match h.coeff(0) {
        Some(c) if !c.is_zero() && h.valuation() == 0 => c,
        _ => {
            return Err(Error::NonSimpleRamification {
                point: format_rational(p),
            })
        }
    };
    let w = sqrt_unit(&h.scale(&h0.recip()))?.shift(1).truncate(n);
    let v = revert(&w, n)?;
    let sigma = v.known_part().compose(&w.scale(&-Rational::one()))?.truncate(n);
    let deck = DeckSeries {
        center: p.clone(),
        series: sigma,
    };
    verify_deck(&x, &deck, order)?;
    Ok(deck)
}

fn vanishes_below(s: &Laurent, n: i64) -> bool {
    s.precision() >= n && (s.is_zero() || s.valuation() >= n)
}

/// Checks `X(sigma(t)) = X(t)` and `sigma(sigma(t)) = t` below `t^(order + 1)`.
pub fn verify_deck(x: &Laurent, deck: &DeckSeries, order: i64) -> Result<()> {
    let n = order + 1;
    let s = deck.series.known_part().truncate(n);
    let lhs = x.compose(&s)?;
    let ok_x = vanishes_below(&(&lhs - x).truncate(n), n);
    let ss = s.compose(&s)?;
    let ok_inv = vanishes_below(&(&ss - &Laurent::t()).truncate(n), n);
    if ok_x && ok_inv {
        Ok(())
    } else {
        Err(Error::DeckNotConverged {
            point: format_rational(&deck.center),
            order: order as usize,
        })
    }
}
