//! Bernoulli numbers and the even series `S(t) = (e^{t/2} - e^{-t/2}) / t`.

use num_traits::{One, Zero};

use super::laurent::Laurent;
use super::rational::{binomial, factorial_q, int, Rational};
use crate::error::{Error, Result};

/// Bernoulli numbers `B_0 ..= B_n` with `B_1 = -1/2`.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += binomial(m as i64 + 1, k as u64) * bk;
        }
        b.push(-s / int(m as i64 + 1));
    }
    b
}

pub fn bernoulli(n: usize) -> Result<Rational> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "Bernoulli index must be even and at least 2, got {n}"
        )));
    }
    Ok(bernoulli_table(n).pop().unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SKind {
    S,
    InverseS,
    Power(i64),
}

/// Coefficients of `t^0 ..= t^max_deg` of `S`, `1/S` or `S^e`.
pub fn s_function_series(kind: SKind, max_deg: usize) -> Vec<Rational> {
    let prec = max_deg as i64 + 1;
    let s = s_laurent(prec);
    let series = match kind {
        SKind::S => s,
        SKind::InverseS => s.inv().expect("unit"),
        SKind::Power(e) => s.pow(e).expect("unit"),
    };
    (0..prec).map(|k| series.coeff(k).unwrap()).collect()
}

fn s_laurent(prec: i64) -> Laurent {
    let coeffs = (0..prec.max(1))
        .map(|k| {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                // t^{2j} / (4^j (2j+1)!)
                let j = k / 2;
                let four = num_traits::pow(int(4), j as usize);
                Rational::one() / (four * factorial_q(k as u64 + 1))
            }
        })
        .collect();
    Laurent::from_coeffs(coeffs, prec.max(1))
}
