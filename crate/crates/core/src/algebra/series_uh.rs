//! Truncated bivariate power series in `(u, hbar)` with rational-function
//! coefficients.

use std::collections::BTreeMap;

use num_traits::One;

use super::ratfunc::RationalFunction;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesUH {
    max_u: usize,
    max_hbar: usize,
    coeff: BTreeMap<(usize, usize), RationalFunction>,
}

impl SeriesUH {
    pub fn zero(max_u: usize, max_hbar: usize) -> Self {
        SeriesUH {
            max_u,
            max_hbar,
            coeff: BTreeMap::new(),
        }
    }

    pub fn one(max_u: usize, max_hbar: usize) -> Self {
        let mut s = Self::zero(max_u, max_hbar);
        s.add_term(0, 0, &RationalFunction::one());
        s
    }

    pub fn max_u(&self) -> usize {
        self.max_u
    }

    pub fn max_hbar(&self) -> usize {
        self.max_hbar
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_empty()
    }

    /// Nonzero terms in degree order.
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &RationalFunction)> {
        self.coeff.iter()
    }

    /// Adds `f u^i hbar^j`, silently dropping terms beyond the bounds.
    pub fn add_term(&mut self, i: usize, j: usize, f: &RationalFunction) {
        if i > self.max_u || j > self.max_hbar || f.is_zero() {
            return;
        }
        let sum = match self.coeff.get(&(i, j)) {
            Some(old) => old + f,
            None => f.clone(),
        };
        if sum.is_zero() {
            self.coeff.remove(&(i, j));
        } else {
            self.coeff.insert((i, j), sum);
        }
    }

    pub fn extract(&self, i: usize, j: usize) -> Result<RationalFunction> {
        if i > self.max_u || j > self.max_hbar {
            return Err(Error::OutOfBounds {
                u: i,
                hbar: j,
                max_u: self.max_u,
                max_hbar: self.max_hbar,
            });
        }
        Ok(self.coeff.get(&(i, j)).cloned().unwrap_or_else(RationalFunction::zero))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (&(i, j), f) in &other.coeff {
            s.add_term(i, j, f);
        }
        s
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut s = Self::zero(self.max_u, self.max_hbar);
        for (&(i, j), f) in &self.coeff {
            s.add_term(i, j, &f.scale(c));
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let max_u = self.max_u.min(other.max_u);
        let max_hbar = self.max_hbar.min(other.max_hbar);
        let mut s = Self::zero(max_u, max_hbar);
        for (&(i1, j1), f1) in &self.coeff {
            for (&(i2, j2), f2) in &other.coeff {
                if i1 + i2 <= max_u && j1 + j2 <= max_hbar {
                    s.add_term(i1 + i2, j1 + j2, &(f1 * f2));
                }
            }
        }
        s
    }

    fn by_total_degree(&self) -> Vec<Vec<((usize, usize), &RationalFunction)>> {
        let top = self.max_u + self.max_hbar;
        let mut parts = vec![Vec::new(); top + 1];
        for (&(i, j), f) in &self.coeff {
            parts[i + j].push(((i, j), f));
        }
        parts
    }

    /// `exp(self)` for a series without constant term.
    ///
    /// Uses the Euler-operator recurrence `d F_d = sum_l l E_l F_{d-l}` on
    /// total degree, equivalent to the finite sum `sum_k self^k / k!`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeff.contains_key(&(0, 0)) {
            return Err(Error::Precondition(
                "exponential of a series with a constant term".into(),
            ));
        }
        let top = self.max_u + self.max_hbar;
        let e = self.by_total_degree();
        let mut f: Vec<SeriesUH> = Vec::with_capacity(top + 1);
        f.push(Self::one(self.max_u, self.max_hbar));
        for d in 1..=top {
            let mut acc = Self::zero(self.max_u, self.max_hbar);
            for l in 1..=d {
                if e[l].is_empty() || f[d - l].is_zero() {
                    continue;
                }
                for &((i1, j1), e1) in &e[l] {
                    let w = e1.scale(&int(l as i64));
                    for (&(i2, j2), f2) in &f[d - l].coeff {
                        if i1 + i2 <= self.max_u && j1 + j2 <= self.max_hbar {
                            acc.add_term(i1 + i2, j1 + j2, &(&w * f2));
                        }
                    }
                }
            }
            f.push(acc.scale(&(Rational::one() / int(d as i64))));
        }
        let mut out = Self::zero(self.max_u, self.max_hbar);
        for part in f {
            for (&(i, j), g) in &part.coeff {
                out.add_term(i, j, g);
            }
        }
        Ok(out)
    }

    /// `1 / self` for a series whose constant term is exactly one.
    pub fn reciprocal(&self) -> Result<Self> {
        match self.coeff.get(&(0, 0)) {
            Some(c) if *c == RationalFunction::one() => {}
            _ => {
                return Err(Error::Precondition(
                    "reciprocal needs constant term 1".into(),
                ))
            }
        }
        // 1/(1 + h) = sum (-h)^k, terminating by degree
        let mut h = self.clone();
        h.coeff.remove(&(0, 0));
        let neg = h.scale(&-Rational::one());
        let mut out = Self::one(self.max_u, self.max_hbar);
        let mut power = Self::one(self.max_u, self.max_hbar);
        loop {
            power = power.mul(&neg);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    /// Naive `sum_k self^k / k!`; kept as an independent check of `exp`.
    pub fn exp_naive(&self) -> Result<Self> {
        if self.coeff.contains_key(&(0, 0)) {
            return Err(Error::Precondition(
                "exponential of a series with a constant term".into(),
            ));
        }
        let mut out = Self::one(self.max_u, self.max_hbar);
        let mut power = Self::one(self.max_u, self.max_hbar);
        let mut k = 0i64;
        loop {
            k += 1;
            power = power.mul(self).scale(&(Rational::one() / int(k)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }
}
