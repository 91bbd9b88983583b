//! Symmetric multidifferentials in the pole basis
//! `prod_j dz_j / (z_j - p_j)^{k_j}`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{format_rational, Laurent, Point, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Basis element `dz / (z - point)^order`.
pub type Pole = (Rational, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDifferential {
    pub g: usize,
    pub n: usize,
    pub terms: BTreeMap<Vec<Pole>, Rational>,
}

#[derive(Serialize)]
struct TermRecord {
    points: Vec<String>,
    orders: Vec<u32>,
    coeff: String,
}

impl MultiDifferential {
    pub fn zero(g: usize, n: usize) -> Self {
        MultiDifferential {
            g,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, key: Vec<Pole>, c: &Rational) {
        debug_assert_eq!(key.len(), self.n);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&mut self, other: &MultiDifferential) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct basis points in any slot.
    pub fn points(&self) -> BTreeSet<Rational> {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|(p, _)| p.clone()))
            .collect()
    }

    /// Highest pole order at `p` in any slot.
    pub fn max_order_at(&self, p: &Rational) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.iter())
            .filter(|(q, _)| q == p)
            .map(|(_, k)| *k)
            .max()
            .unwrap_or(0)
    }

    /// Invariance under every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        if self.n < 2 {
            return true;
        }
        // adjacent transpositions generate the symmetric group
        (0..self.n - 1).all(|i| {
            self.terms.iter().all(|(k, c)| {
                let mut s = k.clone();
                s.swap(i, i + 1);
                self.terms.get(&s) == Some(c)
            })
        })
    }

    /// No `1/(z_j - p)` terms, i.e. zero residue in every variable.
    pub fn is_residue_free(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|(_, o)| *o >= 2))
    }

    /// Density at a point away from the poles.
    pub fn eval(&self, zs: &[Rational]) -> Result<Rational> {
        if zs.len() != self.n {
            return Err(Error::Precondition(format!(
                "expected {} arguments, got {}",
                self.n,
                zs.len()
            )));
        }
        let mut acc = Rational::zero();
        for (key, c) in &self.terms {
            let mut v = c.clone();
            for ((p, k), z) in key.iter().zip(zs) {
                let d = z - p;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                v *= crate::algebra::rational::pow_i(&d, -(*k as i64));
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Single-variable differential as a rational function of `z`.
    pub fn to_rational_function(&self) -> Result<RationalFunction> {
        if self.n != 1 {
            return Err(Error::Precondition("not a one-variable differential".into()));
        }
        let mut f = RationalFunction::zero();
        for (key, c) in &self.terms {
            let (p, k) = &key[0];
            f = &f + &RationalFunction::pole(c.clone(), p, *k);
        }
        Ok(f)
    }

    /// Restriction of a two-variable differential to the diagonal
    /// `z_1 = z_2 = z`.
    pub fn diagonal(&self) -> Result<RationalFunction> {
        if self.n != 2 {
            return Err(Error::Precondition("diagonal needs two variables".into()));
        }
        let mut f = RationalFunction::zero();
        for (key, c) in &self.terms {
            let a = RationalFunction::pole(c.clone(), &key[0].0, key[0].1);
            let b = RationalFunction::pole(Rational::one(), &key[1].0, key[1].1);
            f = &f + &(&a * &b);
        }
        Ok(f)
    }

    /// One-variable differential from the principal parts of `f`; fails if
    /// `f dz` has a polynomial part.
    pub fn from_rational_function(g: usize, f: &RationalFunction) -> Result<Self> {
        let pf = f.partial_fractions()?;
        if !pf.polynomial_part.is_zero() {
            return Err(Error::Precondition(format!(
                "differential has a pole at infinity: polynomial part {}",
                pf.polynomial_part
            )));
        }
        let mut w = MultiDifferential::zero(g, 1);
        for (p, k, c) in pf.terms {
            w.add_term(vec![(p, k)], &c);
        }
        Ok(w)
    }

    /// Local series of a one-variable differential in `t = z - p` (the
    /// factor `dt` implicit), to precision `prec`.
    pub fn local_series(&self, p: &Rational, prec: i64) -> Result<Laurent> {
        let f = self.to_rational_function()?;
        Ok(f.expand(&Point::Finite(p.clone()), prec))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut w = MultiDifferential::zero(self.g, self.n);
        if c.is_zero() {
            return w;
        }
        for (k, v) in &self.terms {
            w.terms.insert(k.clone(), v * c);
        }
        w
    }

    /// JSON list of `{points, orders, coeff}` in key order.
    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(k, c)| TermRecord {
                points: k.iter().map(|(p, _)| format_rational(p)).collect(),
                orders: k.iter().map(|(_, o)| *o).collect(),
                coeff: format_rational(c),
            })
            .collect();
        serde_json::to_value(records).expect("serializable")
    }
}

/// `dz1 dz2 / (z1 - z2)^2` at two points.
pub fn bergman_density(z1: &Rational, z2: &Rational) -> Result<Rational> {
    let d = z1 - z2;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::one() / (&d * &d))
}
