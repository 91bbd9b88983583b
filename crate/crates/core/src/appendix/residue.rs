//! Pole-order reduction and the residue formula for
//! `x(y) = const - sum_b log(Q_b - y)`.

use serde::Serialize;

use crate::algebra::rational::{factorial_q, ser_rational};
use crate::algebra::{Point, Poly, Rational, RationalFunction};
use crate::error::{Error, Result};

/// `x'(y) = sum_b 1 / (Q_b - y)`, as a function of `y`.
pub fn log_x_derivative(q: &[Rational]) -> Result<RationalFunction> {
    let mut d = RationalFunction::zero();
    for qb in q {
        // 1/(Q_b - y) = -1/(y - Q_b)
        d = &d + &RationalFunction::pole(-Rational::from_integer(1.into()), qb, 1);
    }
    if d.is_zero() {
        return Err(Error::Precondition("x is constant".into()));
    }
    Ok(d)
}

/// `d/dx = (1/x'(y)) d/dy`
fn d_dx(h: &RationalFunction, xp: &RationalFunction) -> Result<RationalFunction> {
    h.derivative().div(xp)
}

fn check_points(q: &[Rational], a_index: usize) -> Result<Rational> {
    for i in 0..q.len() {
        for j in 0..i {
            if q[i] == q[j] {
                return Err(Error::Precondition("Q points must be distinct".into()));
            }
        }
    }
    q.get(a_index).cloned().ok_or_else(|| {
        Error::Precondition(format!("index {a_index} outside Q of length {}", q.len()))
    })
}

fn check_regular(f: &RationalFunction, at: &Rational, what: &str) -> Result<()> {
    if f.valuation_at(&Point::Finite(at.clone())) < 0 {
        return Err(Error::Precondition(format!("{what} has a pole at Q_a")));
    }
    Ok(())
}

/// `-(valuation)` at `p`; `None` for the zero function.
fn pole_order(f: &RationalFunction, p: &Rational) -> Option<i64> {
    if f.is_zero() {
        None
    } else {
        Some(-f.valuation_at(&Point::Finite(p.clone())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeShift {
    pub n_a: usize,
    /// Negated valuation at `Q_a`; a value `<= 0` means regular.
    pub pole_order_before: i64,
    /// `None` when the result vanishes identically.
    pub pole_order_after: Option<i64>,
    pub bound: i64,
    pub holds: bool,
}

/// Applies `d/dx - (n_a - 1)` to `f / (Q_a - y)^{n_a - 1}` and compares
/// pole orders at `Q_a`.
pub fn degree_shift_check(
    q: &[Rational],
    a_index: usize,
    n_a: usize,
    f: &RationalFunction,
) -> Result<DegreeShift> {
    let qa = check_points(q, a_index)?;
    if n_a < 2 {
        return Err(Error::Precondition("n_a must be at least 2".into()));
    }
    check_regular(f, &qa, "f")?;
    let xp = log_x_derivative(q)?;
    let base = Poly::new(vec![qa.clone(), -Rational::from_integer(1.into())]);
    let h = f.div(&RationalFunction::from_poly(base.pow(n_a - 1)))?;
    let out = &d_dx(&h, &xp)? - &h.scale(&Rational::from_integer((n_a as i64 - 1).into()));
    let before = pole_order(&h, &qa).unwrap_or(i64::MIN);
    let after = pole_order(&out, &qa);
    let bound = n_a as i64 - 2;
    Ok(DegreeShift {
        n_a,
        pole_order_before: before,
        pole_order_after: after,
        bound,
        holds: after.map_or(true, |o| o <= bound),
    })
}

/// `(d/dx + (n-1)) ... (d/dx + 1) g`
pub fn operator_product(q: &[Rational], n: usize, g: &RationalFunction) -> Result<RationalFunction> {
    let xp = log_x_derivative(q)?;
    let mut h = g.clone();
    for k in 1..n {
        h = &d_dx(&h, &xp)? + &h.scale(&Rational::from_integer((k as i64).into()));
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueMatch {
    Paper,
    Factorial,
    Both,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueLemma {
    pub n_a: usize,
    /// `g(Q_a) f^{(n_a-1)}(Q_a)`
    #[serde(serialize_with = "ser_rational")]
    pub paper_form: Rational,
    /// `paper_form / (n_a-1)!`
    #[serde(serialize_with = "ser_rational")]
    pub factorial_form: Rational,
    /// The residue from the Laurent expansion.
    #[serde(serialize_with = "ser_rational")]
    pub brute_force: Rational,
    #[serde(rename = "match")]
    pub matched: ResidueMatch,
    /// Value of the operator product at `Q_a`.
    #[serde(serialize_with = "ser_rational")]
    pub operator_constant: Rational,
    /// Whether the operator product minus its value at `Q_a` vanishes to
    /// order `n_a` there.
    pub operator_tail_vanishes: bool,
}

/// `Res_{y=Q_a} f/(y-Q_a)^{n_a} (d/dx + n_a - 1)...(d/dx + 1) g` against
/// both candidate closed forms.
pub fn residue_lemma_oracle(
    q: &[Rational],
    a_index: usize,
    n_a: usize,
    f: &RationalFunction,
    g: &RationalFunction,
) -> Result<ResidueLemma> {
    let qa = check_points(q, a_index)?;
    if n_a == 0 {
        return Err(Error::Precondition("n_a must be at least 1".into()));
    }
    check_regular(f, &qa, "f")?;
    check_regular(g, &qa, "g")?;
    let prod = operator_product(q, n_a, g)?;
    let integrand = &(f * &prod) * &RationalFunction::pole(Rational::from_integer(1.into()), &qa, n_a as u32);
    let brute = integrand.residue_at(&Point::Finite(qa.clone()));
    let mut fd = f.clone();
    for _ in 1..n_a {
        fd = fd.derivative();
    }
    let paper = g.eval(&qa)? * fd.eval(&qa)?;
    let fact = &paper / factorial_q(n_a as u64 - 1);
    let matched = match (brute == paper, brute == fact) {
        (true, true) => ResidueMatch::Both,
        (true, false) => ResidueMatch::Paper,
        (false, true) => ResidueMatch::Factorial,
        (false, false) => ResidueMatch::Neither,
    };
    let constant = prod.eval(&qa)?;
    let tail = &prod - &RationalFunction::constant(constant.clone());
    let tail_ok = tail.is_zero() || tail.valuation_at(&Point::Finite(qa.clone())) >= n_a as i64;
    Ok(ResidueLemma {
        n_a,
        paper_form: paper,
        factorial_form: fact,
        brute_force: brute,
        matched,
        operator_constant: constant,
        operator_tail_vanishes: tail_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn poly(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::new(c.iter().map(|&v| int(v)).collect()))
    }

    #[test]
    fn degree_shift_examples() {
        let q = [int(0), int(1)];
        let r = degree_shift_check(&q, 0, 3, &poly(&[1])).unwrap();
        assert_eq!(r.pole_order_before, 2);
        assert!(r.pole_order_after.unwrap() <= 1);
        assert!(r.holds);
        let r = degree_shift_check(&q, 1, 2, &poly(&[3, 1, 4])).unwrap();
        assert!(r.pole_order_after.map_or(true, |o| o <= 0));
        // f(0) = 0: the pole is already one order lower and the operator,
        // tuned to order n_a - 1, leaves it in place
        let r = degree_shift_check(&q, 0, 4, &poly(&[0, 1])).unwrap();
        assert_eq!(r.pole_order_before, 2);
        assert_eq!(r.pole_order_after, Some(2));
        assert!(r.holds);
    }

    #[test]
    fn base_case_has_no_operator() {
        let q = [int(0), int(2)];
        let r = residue_lemma_oracle(&q, 0, 1, &poly(&[5, 1]), &poly(&[2, 1])).unwrap();
        assert_eq!(r.brute_force, int(10));
        assert_eq!(r.matched, ResidueMatch::Both);
    }

    #[test]
    fn order_three_example() {
        let q = [int(0), int(2)];
        let r = residue_lemma_oracle(&q, 0, 3, &poly(&[0, 0, 1]), &poly(&[1])).unwrap();
        assert_eq!(r.paper_form, int(2));
        assert_eq!(r.factorial_form, int(1));
        assert_eq!(r.brute_force, int(2));
        assert_eq!(r.matched, ResidueMatch::Paper);
        // (d/dx + 2)(d/dx + 1) 1 = 2
        assert_eq!(r.operator_constant, int(2));
    }

    #[test]
    fn operator_constant_is_factorial() {
        let q = [rat(1, 2), int(-1), int(3)];
        let g = RationalFunction::new(Poly::new(vec![int(1), int(2)]), Poly::new(vec![int(5), int(1)]))
            .unwrap();
        for n in 1..=5usize {
            let r = residue_lemma_oracle(&q, 0, n, &poly(&[1, 1, 1, 1, 1]), &g).unwrap();
            let gq = g.eval(&rat(1, 2)).unwrap();
            assert_eq!(r.operator_constant, gq * factorial_q(n as u64 - 1));
            assert!(r.operator_tail_vanishes);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let q = [int(0), int(0)];
        assert!(degree_shift_check(&q, 0, 2, &poly(&[1])).is_err());
        let q = [int(0), int(1)];
        assert!(degree_shift_check(&q, 2, 2, &poly(&[1])).is_err());
        let f = RationalFunction::pole(int(1), &int(0), 1);
        assert!(residue_lemma_oracle(&q, 0, 2, &f, &poly(&[1])).is_err());
    }
}
