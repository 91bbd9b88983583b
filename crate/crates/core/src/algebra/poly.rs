//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{divisors, format_rational, Rational};
use crate::error::{Error, Result};

/// Coefficients in ascending order; the last stored coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The monic linear factor `z - a`.
    pub fn linear(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading().recip();
        self.scale(&lc)
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Coefficients of `p(a + t)` as a polynomial in `t`.
    pub fn taylor_shift(&self, a: &Rational) -> Self {
        // Horner in the shifted variable
        let mut acc = Poly::zero();
        let lin = Poly::new(vec![a.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Coefficients reversed with respect to degree `n`: `z^n p(1/z)`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[n - k] = c.clone();
        }
        Self::new(v)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc = d.leading().recip();
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lc;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact division; the caller guarantees divisibility.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.monic();
        let mut b = b.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Multiplicity of the root `a`.
    pub fn root_multiplicity(&self, a: &Rational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let shifted = self.taylor_shift(a);
        shifted.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Integer polynomial proportional to `self` with content one.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Factor into rational linear factors as far as possible.
    ///
    /// Returns the distinct rational roots with multiplicities, sorted
    /// ascending, together with the remaining cofactor (a constant when
    /// the polynomial splits over the rationals).
    pub fn rational_roots(&self) -> Result<(Vec<(Rational, usize)>, Poly)> {
        if self.is_zero() {
            return Err(Error::Precondition("roots of the zero polynomial".into()));
        }
        let mut rest = self.clone();
        let mut roots = Vec::new();
        let zero_mult = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
            rest = Poly::new(rest.coeffs[zero_mult..].to_vec());
        }
        if rest.degree().unwrap_or(0) > 0 {
            let ints = rest.primitive_integer();
            let a0 = ints[0].clone();
            let an = ints.last().unwrap().clone();
            let ps = divisors(&a0)?;
            let qs = divisors(&an)?;
            let mut candidates: Vec<Rational> = Vec::new();
            for p in &ps {
                for q in &qs {
                    let r = Rational::new(p.clone(), q.clone());
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
                let mut m = 0;
                while rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
                    rest = rest.exact_div(&Poly::linear(&r));
                    m += 1;
                }
                if m > 0 {
                    roots.push((r, m));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok((roots, rest))
    }

    /// Distinct roots, failing when an irrational factor remains.
    pub fn split_roots(&self) -> Result<Vec<(Rational, usize)>> {
        let (roots, rest) = self.rational_roots()?;
        if rest.degree().unwrap_or(0) > 0 {
            return Err(Error::IrrationalPole {
                factor: rest.monic().to_string(),
            });
        }
        Ok(roots)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_c = k == 0 || !abs.is_one();
            if show_c {
                let s = format_rational(&abs);
                if abs.denom().is_one() || k == 0 {
                    write!(f, "{s}")?;
                } else {
                    write!(f, "({s})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "{}z", if show_c { "*" } else { "" })?,
                _ => write!(f, "{}z^{k}", if show_c { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn p(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        // (z^2 - 1) = (z - 1)(z + 1)
        let a = p(&[-1, 0, 1]);
        let (q, r) = a.div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let g = Poly::gcd(&p(&[-1, 0, 1]), &p(&[2, 2]));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn shift_and_reverse() {
        // (z)^2 at z = 1 + t is 1 + 2t + t^2
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&int(1)), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 2]).reversed(3), p(&[0, 0, 2, 1]));
    }

    #[test]
    fn rational_root_search() {
        // 6z^3 - 5z^2 - 2z + 1 = (z - 1)(3z - 1)(2z + 1)
        let (roots, rest) = p(&[1, -2, -5, 6]).rational_roots().unwrap();
        let r: Vec<Rational> = roots.iter().map(|(r, _)| r.clone()).collect();
        assert_eq!(r, vec![rat(-1, 2), rat(1, 3), int(1)]);
        assert!(rest.is_constant());
        // z^2 (z^2 + 1)
        let (roots, rest) = p(&[0, 0, 1, 0, 1]).rational_roots().unwrap();
        assert_eq!(roots, vec![(int(0), 2)]);
        assert_eq!(rest, p(&[1, 0, 1]));
        assert!(matches!(
            p(&[1, 0, 1]).split_roots(),
            Err(Error::IrrationalPole { .. })
        ));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "z^2 - 1");
        assert_eq!(Poly::new(vec![rat(1, 2), int(-3)]).to_string(), "-3*z + 1/2");
    }
}
