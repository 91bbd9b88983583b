//! Truncated Laurent series in one local coordinate `t` with tracked
//! precision.
//!
//! A series `f = sum_{k < prec} c_k t^k + O(t^prec)` stores its first
//! nonzero exponent `val` and the known coefficients. Products and
//! quotients propagate precision the usual way, so a residue extracted
//! from a long computation is either exact or reported as unknown.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// Precision marker for series that are exact (finite Laurent polynomials).
pub const EXACT: i64 = i64::MAX / 4;

fn padd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        a + b
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    val: i64,
    coeffs: Vec<Rational>,
    prec: i64,
}

impl Laurent {
    fn normalized(mut val: i64, mut coeffs: Vec<Rational>, prec: i64) -> Self {
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        val += lead as i64;
        if prec < EXACT {
            let keep = (prec - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            val = prec.min(val.max(0));
        }
        Laurent { val, coeffs, prec }
    }

    pub fn new(val: i64, coeffs: Vec<Rational>, prec: i64) -> Self {
        Self::normalized(val, coeffs, prec)
    }

    pub fn exact_zero() -> Self {
        Laurent {
            val: 0,
            coeffs: Vec::new(),
            prec: EXACT,
        }
    }

    /// `O(t^prec)`
    pub fn big_o(prec: i64) -> Self {
        Laurent {
            val: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        Self::normalized(k, vec![c], EXACT)
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// The local coordinate itself.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::normalized(0, p.coeffs().to_vec(), EXACT)
    }

    /// Coefficient list starting at t^0 with the given precision.
    pub fn from_coeffs(coeffs: Vec<Rational>, prec: i64) -> Self {
        Self::normalized(0, coeffs, prec)
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// No known nonzero coefficient.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Known coefficients in order, beginning at `valuation()`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, or `None` when it lies beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k >= self.prec {
            return None;
        }
        if k < self.val {
            return Some(Rational::zero());
        }
        Some(
            self.coeffs
                .get((k - self.val) as usize)
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    pub fn residue(&self) -> Result<Rational> {
        self.coeff(-1).ok_or_else(|| {
            Error::TruncationExhausted(format!(
                "residue needs the t^-1 coefficient, series known only below t^{}",
                self.prec
            ))
        })
    }

    pub fn truncate(&self, prec: i64) -> Self {
        Self::normalized(self.val, self.coeffs.clone(), prec.min(self.prec))
    }

    /// The known coefficients read as an exact Laurent polynomial.
    pub fn known_part(&self) -> Self {
        Self::normalized(self.val, self.coeffs.clone(), EXACT)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::normalized(0, Vec::new(), self.prec.min(EXACT));
        }
        Laurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            prec: self.prec,
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: padd(self.prec, k),
        }
    }

    fn rel_prec(&self) -> i64 {
        if self.prec >= EXACT {
            EXACT
        } else {
            self.prec - self.val
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::TruncationExhausted(
                "inverse of a series with no known nonzero coefficient".into(),
            ));
        }
        if self.coeffs.len() == 1 && self.is_exact() {
            return Ok(Self::monomial(self.coeffs[0].recip(), -self.val));
        }
        let rel = self.rel_prec();
        if rel >= EXACT {
            return Err(Error::Precondition(
                "inverse of an exact multi-term series needs a truncation".into(),
            ));
        }
        let n = rel as usize;
        let a = &self.coeffs;
        let inv0 = a[0].recip();
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k.min(a.len() - 1) {
                s += &a[j] * &b[k - j];
            }
            b.push(-s * &inv0);
        }
        Ok(Self::normalized(-self.val, b, -self.val + rel))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Laurent::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * int(self.val + i as i64))
            .collect();
        Self::normalized(self.val - 1, coeffs, padd(self.prec, -1))
    }

    /// Termwise antiderivative with zero constant term; fails on a `1/t` term.
    pub fn integrate(&self) -> Result<Self> {
        if !self.coeff(-1).map(|c| c.is_zero()).unwrap_or(true) {
            return Err(Error::Precondition(
                "integrating a series with a 1/t term".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = self.val + i as i64;
                if k == -1 {
                    Rational::zero()
                } else {
                    c / int(k + 1)
                }
            })
            .collect();
        Ok(Self::normalized(self.val + 1, coeffs, padd(self.prec, 1)))
    }

    /// `self(inner(t))` for a power series `self` (valuation >= 0) and an
    /// `inner` series with positive valuation.
    pub fn compose(&self, inner: &Laurent) -> Result<Self> {
        if self.val < 0 {
            return Err(Error::Precondition(
                "composition of a series with a pole".into(),
            ));
        }
        if inner.is_zero() || inner.val < 1 {
            return Err(Error::Precondition(
                "inner series of a composition must have positive valuation".into(),
            ));
        }
        let vin = inner.val;
        let cap = if self.prec >= EXACT {
            EXACT
        } else {
            self.prec.saturating_mul(vin)
        };
        let inner = if cap < EXACT { inner.truncate(cap) } else { inner.clone() };
        let mut acc = Laurent::big_o(cap);
        if cap >= EXACT {
            acc = Laurent::exact_zero();
        }
        let mut power = Laurent::one();
        let top = self.val + self.coeffs.len() as i64;
        for k in 0..top {
            if k * vin >= cap {
                break;
            }
            if k >= self.val {
                let c = &self.coeffs[(k - self.val) as usize];
                if !c.is_zero() {
                    acc = &acc + &power.scale(c);
                }
            }
            power = &power * &inner;
            if cap < EXACT {
                power = power.truncate(cap);
            }
        }
        Ok(acc)
    }

    /// `log(1 + s)` for a series `s` with positive valuation.
    pub fn log1p(s: &Laurent) -> Result<Self> {
        let rel = s.prec.min(EXACT);
        let n = if rel >= EXACT {
            return Err(Error::Precondition(
                "log1p of an exact series needs a truncation".into(),
            ));
        } else {
            rel.max(0)
        };
        let mut coeffs = vec![Rational::zero()];
        for k in 1..=n {
            let sign = if k % 2 == 1 { int(1) } else { int(-1) };
            coeffs.push(sign / int(k));
        }
        Laurent::from_coeffs(coeffs, n + 1).compose(s)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() && rhs.is_zero() {
            return Laurent::normalized(0, Vec::new(), prec);
        }
        let lo = match (self.is_zero(), rhs.is_zero()) {
            (true, _) => rhs.val,
            (_, true) => self.val,
            _ => self.val.min(rhs.val),
        }
        .min(prec);
        let hi = (self.val + self.coeffs.len() as i64)
            .max(rhs.val + rhs.coeffs.len() as i64)
            .min(prec);
        let mut v = vec![Rational::zero(); (hi - lo).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            if k < hi {
                v[(k - lo) as usize] += c;
            }
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let k = rhs.val + i as i64;
            if k < hi {
                v[(k - lo) as usize] += c;
            }
        }
        Laurent::normalized(lo, v, prec)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        // effective valuations for precision bookkeeping
        let va = if self.is_zero() { self.prec } else { self.val };
        let vb = if rhs.is_zero() { rhs.prec } else { rhs.val };
        let prec = padd(va, rhs.prec).min(padd(vb, self.prec));
        if self.is_zero() || rhs.is_zero() {
            return Laurent::normalized(prec.min(EXACT), Vec::new(), prec);
        }
        let val = self.val + rhs.val;
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1) as i64;
        let len = if prec < EXACT { len.min(prec - val).max(0) } else { len } as usize;
        let mut v = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                v[i + j] += a * b;
            }
        }
        Laurent::normalized(val, v, prec)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*t^{}", format_rational(c), self.val + i as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        if self.prec < EXACT {
            write!(f, " + O(t^{})", self.prec)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn series(v: &[i64], prec: i64) -> Laurent {
        Laurent::from_coeffs(v.iter().map(|&c| int(c)).collect(), prec)
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let s = series(&[1, -1], 5).inv().unwrap();
        assert_eq!(s, series(&[1, 1, 1, 1, 1], 5));
    }

    #[test]
    fn precision_propagates_through_products() {
        let a = series(&[1, 1], 4).shift(-2); // t^-2 + t^-1 + O(t^2)
        let b = series(&[2, 3, 4], 3); // O(t^3)
        let c = &a * &b;
        assert_eq!(c.valuation(), -2);
        assert_eq!(c.precision(), 1);
        assert_eq!(c.coeff(-1), Some(int(5)));
        assert_eq!(c.coeff(1), None);
        assert!(c.residue().is_ok());
        assert!(Laurent::big_o(0).shift(-1).residue().is_err());
    }

    #[test]
    fn composition_matches_direct_expansion() {
        // exp-free check: (1 + u)^2 with u = t + t^2
        let outer = series(&[1, 2, 1], EXACT);
        let inner = series(&[0, 1, 1], EXACT);
        let c = outer.compose(&inner).unwrap();
        // 1 + 2t + 2t^2 + t^2 + 2t^3 + t^4 = 1 + 2t + 3t^2 + 2t^3 + t^4
        assert_eq!(c, series(&[1, 2, 3, 2, 1], EXACT));
    }

    #[test]
    fn log1p_coefficients() {
        let l = Laurent::log1p(&series(&[0, 1], 6)).unwrap();
        assert_eq!(l.coeff(1), Some(int(1)));
        assert_eq!(l.coeff(2), Some(rat(-1, 2)));
        assert_eq!(l.coeff(5), Some(rat(1, 5)));
        assert_eq!(l.coeff(6), None);
    }

    #[test]
    fn integrate_and_differentiate() {
        let s = series(&[1, 2, 3], 3);
        assert_eq!(s.integrate().unwrap().derivative(), s);
        assert!(Laurent::monomial(int(1), -1).integrate().is_err());
    }
}
