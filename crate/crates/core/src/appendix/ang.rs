//! The coefficients `a_{n,g}` built from an even series `A`, the identity
//! they encode, and the sign of their factorial-weighted sum.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::{factorial_q, pow_i, ser_rational, ser_rational_map};
use crate::algebra::special::bernoulli_table;
use crate::algebra::{int, Laurent, Rational, RationalFunction, SeriesUH};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AngTable {
    pub g: usize,
    /// `n -> a_{n,g}` for `0 <= n < g`.
    #[serde(serialize_with = "ser_rational_map")]
    pub values: BTreeMap<usize, Rational>,
}

/// Coefficients of `(t/2) / tanh(t/2) = sum_k B_{2k} t^{2k} / (2k)!` up to
/// `t^max_deg`.
pub fn half_coth_series(max_deg: usize) -> Vec<Rational> {
    let b = bernoulli_table(max_deg);
    (0..=max_deg)
        .map(|k| {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                &b[k] / factorial_q(k as u64)
            }
        })
        .collect()
}

fn check_even_series(a: &[Rational], g: usize) -> Result<()> {
    if a.first().map(|c| c.is_one()) != Some(true) {
        return Err(Error::Precondition("A must have constant term 1".into()));
    }
    if a.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return Err(Error::Precondition("A must be even".into()));
    }
    if a.len() <= 2 * g {
        return Err(Error::TruncationExhausted(format!(
            "A known to t^{}, need t^{}",
            a.len() - 1,
            2 * g
        )));
    }
    Ok(())
}

/// `a_{n,g} = sum_{i=0}^{n} [t^{2g}] A^{2g+i+1} / ((2g+i+1) i!) (-1)^{n-i} / (n-i)!`
pub fn compute_ang(g: usize, a: &[Rational]) -> Result<AngTable> {
    check_even_series(a, g)?;
    let prec = 2 * g as i64 + 1;
    let series = Laurent::from_coeffs(a[..=2 * g].to_vec(), prec);
    let mut powers = BTreeMap::new();
    for i in 0..g {
        let k = 2 * g + i + 1;
        let c = series.pow(k as i64)?.coeff(2 * g as i64).expect("within precision");
        powers.insert(i, c / int(k as i64));
    }
    let mut values = BTreeMap::new();
    for n in 0..g {
        let mut s = Rational::zero();
        for i in 0..=n {
            let sign = if (n - i) % 2 == 0 { int(1) } else { int(-1) };
            s += &powers[&i] * sign / (factorial_q(i as u64) * factorial_q((n - i) as u64));
        }
        values.insert(n, s);
    }
    Ok(AngTable { g, values })
}

/// Checks `((1 + u h/2z)/(1 - u h/2z))^{1/h} e^{-u/z}` against
/// `sum_g h^{2g} (u/z)^{2g+1} sum_n (u/z)^n a_{n,g}` with
/// `A = (t/2)/tanh(t/2)`, through `h^{2 g_max}`, at the sample `z`.
/// Returns the first mismatching `(u, h)` degree, if any.
pub fn reconstruction_mismatch(g_max: usize, z: &Rational) -> Result<Option<(usize, usize)>> {
    if z.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let max_u = 3 * g_max;
    let max_h = 2 * g_max;
    // (1/h) log((1+s)/(1-s)) - u/z with s = u h / 2z
    //   = sum_{k>=1} h^{2k} (u/z)^{2k+1} / (4^k (2k+1))
    let mut e = SeriesUH::zero(max_u, max_h);
    for k in 1..=g_max {
        let c = Rational::one() / (pow_i(&int(4), k as i64) * int(2 * k as i64 + 1));
        let w = pow_i(z, -(2 * k as i64 + 1));
        e.add_term(2 * k + 1, 2 * k, &RationalFunction::constant(c * w));
    }
    let lhs = e.exp()?;
    let a = half_coth_series(2 * g_max);
    for j in 0..=max_h {
        let table = if j >= 2 && j % 2 == 0 {
            Some(compute_ang(j / 2, &a)?)
        } else {
            None
        };
        for i in 0..=max_u {
            let got = lhs.extract(i, j)?;
            let expected = match (&table, j) {
                (_, 0) if i == 0 => Rational::one(),
                (Some(t), _) => {
                    let g = j / 2;
                    match i.checked_sub(2 * g + 1) {
                        Some(n) if n < g => &t.values[&n] * pow_i(z, -(i as i64)),
                        _ => Rational::zero(),
                    }
                }
                _ => Rational::zero(),
            };
            if got != RationalFunction::constant(expected) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMatch {
    MinusBg,
    PlusBg,
    Both,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaA1Report {
    pub g: usize,
    /// `sum_{n<g} (-1)^{2g+n-1} (2g+n-1)! a_{n,g}`
    #[serde(serialize_with = "ser_rational")]
    pub lhs_sum: Rational,
    /// `-b_g (2g-1)!`
    #[serde(serialize_with = "ser_rational")]
    pub minus_candidate: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub plus_candidate: Rational,
    #[serde(rename = "match")]
    pub matched: SignMatch,
}

/// Evaluates the factorial-weighted sum for `g = 1 ..= g_max` and compares
/// it with `-+ b_g (2g-1)!`, `b_g = [t^{2g}] A`.
pub fn lemma_a1_check_with(g_max: usize, a: &[Rational]) -> Result<Vec<LemmaA1Report>> {
    if g_max == 0 {
        return Err(Error::Precondition("gMax must be at least 1".into()));
    }
    let mut out = Vec::new();
    for g in 1..=g_max {
        let t = compute_ang(g, a)?;
        let mut lhs = Rational::zero();
        for (n, v) in &t.values {
            let sign = if (2 * g + n - 1) % 2 == 0 { int(1) } else { int(-1) };
            lhs += sign * factorial_q((2 * g + n - 1) as u64) * v;
        }
        let plus = &a[2 * g] * factorial_q(2 * g as u64 - 1);
        let minus = -&plus;
        let matched = match (lhs == minus, lhs == plus) {
            (true, true) => SignMatch::Both,
            (true, false) => SignMatch::MinusBg,
            (false, true) => SignMatch::PlusBg,
            (false, false) => SignMatch::Neither,
        };
        out.push(LemmaA1Report {
            g,
            lhs_sum: lhs,
            minus_candidate: minus,
            plus_candidate: plus,
            matched,
        });
    }
    Ok(out)
}

/// [`lemma_a1_check_with`] for `A = (t/2)/tanh(t/2)`, where
/// `b_g = B_{2g}/(2g)!`.
pub fn lemma_a1_check(g_max: usize) -> Result<Vec<LemmaA1Report>> {
    lemma_a1_check_with(g_max, &half_coth_series(2 * g_max))
}
