//! Exact values of the form `q_0 + sum_p q_p log(p)` where `p` runs over
//! primes and the symbol `log(-1)` (principal branch, `i*pi`).
//!
//! Logarithms of rational numbers factor uniquely over this basis, so two
//! such values are equal iff their coefficient maps are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{factor_integer, format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogValue {
    rational: Rational,
    /// key `-1` stands for `log(-1)`, other keys are primes
    logs: BTreeMap<BigInt, Rational>,
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue {
            rational: Rational::zero(),
            logs: BTreeMap::new(),
        }
    }

    pub fn rational(r: Rational) -> Self {
        LogValue {
            rational: r,
            logs: BTreeMap::new(),
        }
    }

    /// `c * log(arg)` on the principal branch.
    pub fn log_of(arg: &Rational, c: &Rational) -> Result<Self> {
        if arg.is_zero() {
            return Err(Error::Precondition("logarithm of zero".into()));
        }
        let mut v = LogValue::zero();
        if c.is_zero() {
            return Ok(v);
        }
        if arg.is_negative() {
            v.add_log(BigInt::from(-1), c.clone());
        }
        for (p, e) in factor_integer(arg.numer())? {
            v.add_log(p, c * Rational::from_integer(BigInt::from(e)));
        }
        for (p, e) in factor_integer(arg.denom())? {
            v.add_log(p, -c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(v)
    }

    fn add_log(&mut self, key: BigInt, c: Rational) {
        let e = self.logs.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.logs.remove(&key);
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn is_rational(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.logs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut v = self.clone();
        v.rational += &other.rational;
        for (k, c) in &other.logs {
            v.add_log(k.clone(), c.clone());
        }
        v
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        let mut v = self.clone();
        v.rational += r;
        v
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LogValue::zero();
        }
        LogValue {
            rational: &self.rational * c,
            logs: self.logs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.rational.is_zero() || self.logs.is_empty() {
            parts.push(format_rational(&self.rational));
        }
        for (k, c) in &self.logs {
            let coeff = if c.is_one() {
                String::new()
            } else {
                format!("{}*", format_rational(c))
            };
            parts.push(format!("{coeff}log({k})"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
