//! Univariate rational functions over the rationals in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::Laurent;
use super::poly::Poly;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// A point of the Riemann sphere with rational coordinate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Finite(Rational),
    Infinity,
}

impl Point {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Point::Finite(a) => Some(a),
            Point::Infinity => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(a) => write!(f, "{}", format_rational(a)),
            Point::Infinity => write!(f, "infinity"),
        }
    }
}

/// A Laurent expansion together with the point it is centred at. At
/// infinity the local coordinate is `1/z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExpansion {
    pub point: Point,
    pub series: Laurent,
}

/// `f = polynomial_part + sum coefficient / (z - pole)^order`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub polynomial_part: Poly,
    pub terms: Vec<(Rational, u32, Rational)>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading().recip();
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    /// `c / (z - a)^k`
    pub fn pole(c: Rational, a: &Rational, k: u32) -> Self {
        Self::new(Poly::constant(c), Poly::linear(a).pow(k as usize)).expect("nonzero")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, z: &Rational) -> Result<Rational> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(z) / d)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).expect("nonzero")
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs() as usize;
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// `self(z + a)` as a function of `z`.
    pub fn translate(&self, a: &Rational) -> Self {
        Self::new(self.num.taylor_shift(a), self.den.taylor_shift(a)).expect("nonzero")
    }

    /// Order of vanishing at a point; negative for poles. The zero function
    /// reports `i64::MAX`.
    pub fn valuation_at(&self, point: &Point) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        match point {
            Point::Finite(a) => {
                self.num.root_multiplicity(a) as i64 - self.den.root_multiplicity(a) as i64
            }
            Point::Infinity => {
                self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64
            }
        }
    }

    /// Local expansion with precision `prec`: coefficients of `t^k` are
    /// known for every `k < prec`.
    pub fn expand(&self, point: &Point, prec: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::big_o(prec);
        }
        let (n, d, shift) = match point {
            Point::Finite(a) => (self.num.taylor_shift(a), self.den.taylor_shift(a), 0i64),
            Point::Infinity => {
                let dn = self.num.degree().unwrap();
                let dd = self.den.degree().unwrap();
                (self.num.reversed(dn), self.den.reversed(dd), dd as i64 - dn as i64)
            }
        };
        let dv = d.coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
        let nv = n.coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
        let val = nv - dv + shift;
        if val >= prec {
            return Laurent::big_o(prec);
        }
        let d = Laurent::from_poly(&d).shift(-dv);
        let n = Laurent::from_poly(&n).shift(shift - dv);
        // relative precision of the quotient
        let rel = prec - val;
        let d = d.truncate(rel);
        let q = &n * &d.inv().expect("nonzero denominator");
        q.truncate(prec)
    }

    /// Expansion through the coefficient of `t^order`.
    pub fn expand_at(&self, point: &Point, order: i64) -> LaurentExpansion {
        LaurentExpansion {
            point: point.clone(),
            series: self.expand(point, order + 1),
        }
    }

    /// `Res_{point} f(z) dz`; at infinity the orientation makes the sum of
    /// all residues vanish.
    pub fn residue_at(&self, point: &Point) -> Rational {
        match point {
            Point::Finite(_) => self
                .expand(point, 0)
                .coeff(-1)
                .expect("precision covers t^-1"),
            Point::Infinity => -self
                .expand(point, 2)
                .coeff(1)
                .expect("precision covers t^1"),
        }
    }

    /// Finite poles with their orders, sorted by location.
    pub fn poles(&self) -> Result<Vec<(Rational, usize)>> {
        self.den.split_roots()
    }

    /// Finite poles, infinity included when the degree is positive.
    pub fn poles_with_infinity(&self) -> Result<Vec<Point>> {
        let mut v: Vec<Point> = self.poles()?.into_iter().map(|(a, _)| Point::Finite(a)).collect();
        if self.valuation_at(&Point::Infinity) < 0 {
            v.push(Point::Infinity);
        }
        Ok(v)
    }

    pub fn partial_fractions(&self) -> Result<PartialFractions> {
        let roots = self.den.split_roots()?;
        let (q, _) = self.num.div_rem(&self.den)?;
        let mut terms = Vec::new();
        for (a, m) in roots {
            let s = self.expand(&Point::Finite(a.clone()), 0);
            for k in (1..=m as i64).rev() {
                let c = s.coeff(-k).expect("within precision");
                if !c.is_zero() {
                    terms.push((a.clone(), k as u32, c));
                }
            }
        }
        Ok(PartialFractions {
            polynomial_part: q,
            terms,
        })
    }
}

impl PartialFractions {
    pub fn to_function(&self) -> RationalFunction {
        let mut acc = RationalFunction::from_poly(self.polynomial_part.clone());
        for (a, k, c) in &self.terms {
            acc = &acc + &RationalFunction::pole(c.clone(), a, *k);
        }
        acc
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let a = self.den.exact_div(&g);
        let b = rhs.den.exact_div(&g);
        RationalFunction::new(&(&self.num * &b) + &(&rhs.num * &a), &a * &rhs.den)
            .expect("nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            let c = self.den.leading().recip() * rhs.den.leading().recip();
            return RationalFunction::from_poly((&self.num * &rhs.num).scale(&c));
        }
        // cross-cancel before multiplying
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RationalFunction::new(n, d).expect("nonzero")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn poly(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&c| int(c)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let inv_z = rf(&[1], &[0, 1]);
        assert_eq!(&inv_z + &inv_z, rf(&[2], &[0, 1]));
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        // z + 1/z differentiates to 1 - 1/z^2
        assert_eq!(rf(&[1, 0, 1], &[0, 1]).derivative(), rf(&[-1, 0, 1], &[0, 0, 1]));
        assert_eq!(
            inv_z.div(&RationalFunction::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn expansions() {
        let f = rf(&[1], &[-1, 1]);
        let e = f.expand_at(&Point::Finite(int(0)), 2).series;
        assert_eq!(e, Laurent::from_coeffs(vec![int(-1), int(-1), int(-1)], 3));
        let g = rf(&[1, 0, 1], &[0, 1]);
        let e = g.expand_at(&Point::Infinity, 1).series;
        assert_eq!(e.valuation(), -1);
        assert_eq!(e.coeff(-1), Some(int(1)));
        assert_eq!(e.coeff(0), Some(int(0)));
        assert_eq!(e.coeff(1), Some(int(1)));
        let h = rf(&[1], &[0, 0, 1]);
        assert_eq!(h.expand(&Point::Finite(int(0)), 3).valuation(), -2);
    }

    #[test]
    fn residues() {
        let z0 = Point::Finite(int(0));
        assert_eq!(rf(&[1], &[0, 1]).residue_at(&z0), int(1));
        assert_eq!(rf(&[0, 1], &[-1, 0, 1]).residue_at(&Point::Finite(int(1))), rat(1, 2));
        assert_eq!(rf(&[1], &[0, 0, 1]).residue_at(&z0), int(0));
        // 1/z has residue -1 at infinity
        assert_eq!(rf(&[1], &[0, 1]).residue_at(&Point::Infinity), int(-1));
    }

    #[test]
    fn partial_fraction_decomposition() {
        let pf = rf(&[1], &[-1, 0, 1]).partial_fractions().unwrap();
        assert_eq!(pf.terms, vec![(int(-1), 1, rat(-1, 2)), (int(1), 1, rat(1, 2))]);
        let pf = rf(&[0, 1], &[1]).partial_fractions().unwrap();
        assert_eq!(pf.polynomial_part, poly(&[0, 1]));
        assert!(pf.terms.is_empty());
        assert!(matches!(
            rf(&[1], &[1, 0, 1]).partial_fractions(),
            Err(Error::IrrationalPole { .. })
        ));
        let f = rf(&[3, 0, 0, 0, 1], &[0, 0, 4, -4, 1]);
        assert_eq!(f.partial_fractions().unwrap().to_function(), f);
    }
}
