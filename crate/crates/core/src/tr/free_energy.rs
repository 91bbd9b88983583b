//! Free energies from the dilaton pairing, and identities of the
//! correlators used as runtime checks.

use std::fmt;

use num_traits::Zero;

use super::engine::{tr_omega_with, tr_support, TrOptions};
use super::multidiff::MultiDifferential;
use crate::algebra::{int, Laurent, LogValue, Point, Rational};
use crate::curve::{deck_transformation, SpectralCurve};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComputationPath {
    Tr,
    Duality,
    ClosedForm,
}

impl fmt::Display for ComputationPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComputationPath::Tr => "tr",
            ComputationPath::Duality => "duality",
            ComputationPath::ClosedForm => "closed-form",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEnergyValue {
    pub g: usize,
    pub value: Rational,
    pub path: ComputationPath,
}

/// `Res_t f(t) omega(t) dt` summed over the terms of `omega` at `p`:
/// each `c dt / t^k` picks `c [t^{k-1}] f`.
fn pair_at(f: &Laurent, w: &MultiDifferential, p: &Rational) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (key, c) in &w.terms {
        let (q, k) = &key[0];
        if q != p {
            continue;
        }
        let v = f.coeff(*k as i64 - 1).ok_or_else(|| {
            Error::TruncationExhausted(format!("local primitive at z = {p} too short"))
        })?;
        acc += c * v;
    }
    Ok(acc)
}

fn require_residue_free(w: &MultiDifferential) -> Result<()> {
    if w.is_residue_free() {
        Ok(())
    } else {
        Err(Error::ResidueFreeness(format!(
            "omega_({},{}) has simple poles",
            w.g, w.n
        )))
    }
}

fn prec_for(w: &MultiDifferential, p: &Rational) -> i64 {
    w.max_order_at(p) as i64 + 2
}

/// `(1/(2-2g)) sum_{p in Ram(x)} Res_p Phi omega_{g,1}` plus `shift` added
/// to `Phi`; the shift drops out by residue-freeness.
pub fn dilaton_with_shift(
    curve: &SpectralCurve,
    g: usize,
    shift: &Rational,
    opts: &TrOptions,
) -> Result<FreeEnergyValue> {
    if g < 2 {
        return Err(Error::Precondition("free energy needs g >= 2".into()));
    }
    let support = tr_support(curve)?;
    let w = tr_omega_with(curve, g, 1, opts)?;
    require_residue_free(&w)?;
    let mut total = LogValue::zero();
    for p in &support.ram {
        let pt = Point::Finite(p.clone());
        let prec = prec_for(&w, p);
        let (cy, ys) = curve.y.local_expansion(&pt, prec)?;
        let (_, xs) = curve.x.local_expansion(&pt, prec + 1)?;
        // Phi = shift + y(p) X(t) + int Y X' dt
        let phi_y = (&ys * &xs.derivative()).integrate()?;
        let phi_shift = Laurent::monomial(shift.clone(), 0);
        let rational = pair_at(&(&phi_y + &phi_shift), &w, p)?;
        let with_x = pair_at(&xs, &w, p)?;
        total = total.add(&cy.scale(&with_x)).add_rational(&rational);
    }
    if !total.is_rational() {
        return Err(Error::Precondition(format!(
            "free energy is not rational: {total}"
        )));
    }
    Ok(FreeEnergyValue {
        g,
        value: total.rational_part() / int(2 - 2 * g as i64),
        path: ComputationPath::Tr,
    })
}

pub fn dilaton_free_energy(curve: &SpectralCurve, g: usize) -> Result<FreeEnergyValue> {
    dilaton_with_shift(curve, g, &Rational::zero(), &TrOptions::default())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma31Report {
    pub g: usize,
    pub lhs: LogValue,
    pub rhs: LogValue,
    pub holds: bool,
    /// `-1/2 sum_p Res_p (x/dx) (sum_{g1+g2=g, gi>0} omega_{g1,1} omega_{g2,1}
    /// + omega_{g-1,2}(z,z))`, equal to `lhs` by the loop equations alone.
    pub loop_form: LogValue,
}

/// `sum_p Res_p x y omega_{g,1}` against
/// `1/2 sum_a Res_a (x/dx) sum_{g1+g2=g, gi>0} omega_{g1,1} omega_{g2,1}`.
pub fn lemma31_check(curve: &SpectralCurve, g: usize) -> Result<Lemma31Report> {
    let opts = TrOptions::default();
    let support = tr_support(curve)?;
    let w = tr_omega_with(curve, g, 1, &opts)?;
    require_residue_free(&w)?;
    let mut lhs = LogValue::zero();
    for p in &support.ram {
        let pt = Point::Finite(p.clone());
        let prec = prec_for(&w, p);
        let (cx, xs) = curve.x.local_expansion(&pt, prec)?;
        let (cy, ys) = curve.y.local_expansion(&pt, prec)?;
        // (cx + X)(cy + Y): the constant drops by residue-freeness
        lhs = lhs
            .add(&cx.scale(&pair_at(&ys, &w, p)?))
            .add(&cy.scale(&pair_at(&xs, &w, p)?))
            .add_rational(&pair_at(&(&xs * &ys), &w, p)?);
    }
    let mut rhs = LogValue::zero();
    if !support.log_vital.is_empty() {
        let mut prod = crate::algebra::RationalFunction::zero();
        for g1 in 1..g {
            let a = tr_omega_with(curve, g1, 1, &opts)?.to_rational_function()?;
            let b = tr_omega_with(curve, g - g1, 1, &opts)?.to_rational_function()?;
            prod = &prod + &(&a * &b);
        }
        let cofactor = prod.div(&curve.x.differential())?;
        for (a, _) in &support.log_vital {
            let r = curve.x.residue_with(&cofactor, &Point::Finite(a.clone()))?;
            rhs = rhs.add(&r.scale(&crate::algebra::rat(1, 2)));
        }
    }
    let loop_form = lemma31_loop_form(curve, g, &support.ram, &opts)?;
    Ok(Lemma31Report {
        g,
        holds: lhs == rhs,
        lhs,
        rhs,
        loop_form,
    })
}

fn lemma31_loop_form(
    curve: &SpectralCurve,
    g: usize,
    ram: &[Rational],
    opts: &TrOptions,
) -> Result<LogValue> {
    let mut quad = tr_omega_with(curve, g - 1, 2, opts)?.diagonal()?;
    for g1 in 1..g {
        let a = tr_omega_with(curve, g1, 1, opts)?.to_rational_function()?;
        let b = tr_omega_with(curve, g - g1, 1, opts)?.to_rational_function()?;
        quad = &quad + &(&a * &b);
    }
    let mut acc = LogValue::zero();
    for p in ram {
        let pt = Point::Finite(p.clone());
        let v = quad.valuation_at(&pt);
        // quad has a pole of order -v, 1/X' one of order 1
        let prec = (-v).max(0) + 2;
        let (cx, xs) = curve.x.local_expansion(&pt, prec + 1)?;
        let w = quad.expand(&pt, prec);
        let over = w.div(&xs.derivative())?;
        let with_c = over.residue()?;
        let with_x = (&xs * &over).residue()?;
        acc = acc.add(&cx.scale(&with_c)).add_rational(&with_x);
    }
    Ok(acc.scale(&crate::algebra::rat(-1, 2)))
}

/// `omega(z) + omega(s(z))` at each ramification point vanishes to order
/// `(z - p)^1 dz`; checked with the deck series to `order`.
pub fn linear_loop_check(curve: &SpectralCurve, g: usize, n: usize) -> Result<bool> {
    if n != 1 {
        return Err(Error::Precondition("linear loop check is implemented for n = 1".into()));
    }
    let support = tr_support(curve)?;
    let w = tr_omega_with(curve, g, 1, &TrOptions::default())?;
    for p in &support.ram {
        let order = prec_for(&w, p) + 4;
        let deck = deck_transformation(curve, p, order)?;
        let s = deck.series.truncate(order);
        let f = w.local_series(p, order)?;
        let at_s = f_at_sigma(&w, p, &s)?;
        let sum = (&f + &at_s).truncate(2);
        if sum.precision() < 1 {
            return Err(Error::TruncationExhausted("loop check".into()));
        }
        if !(sum.is_zero() || sum.valuation() >= 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `omega(s(t)) s'(t)` as a series, term by term.
fn f_at_sigma(w: &MultiDifferential, p: &Rational, s: &Laurent) -> Result<Laurent> {
    let prec = s.precision();
    let ds = s.derivative();
    let mut acc = Laurent::big_o(prec - 1 - w.max_order_at(p) as i64 - 1);
    for (key, c) in &w.terms {
        let (q, k) = &key[0];
        let d = p - q;
        // (d + s)^{-k}
        let base = if d.is_zero() {
            s.pow(-(*k as i64))?
        } else {
            let inner = (&Laurent::monomial(d.clone(), 0) + s).truncate(prec);
            inner.pow(-(*k as i64))?
        };
        acc = &acc + &(&base * &ds).scale(c);
    }
    Ok(acc)
}
