//! Residue points of a spectral curve and primitives of `y dx`, `x dy`.

use num_traits::Zero;

use super::function::CurveFunction;
use super::spectral::{Side, SpectralCurve};
use crate::algebra::{LogValue, Point, Poly, Rational, RationalFunction};
use crate::error::{Error, Result};

/// A log point of one function with the residue of its differential there
/// (the inverse of `alpha`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogPoint {
    pub point: Point,
    pub residue: Rational,
}

impl LogPoint {
    pub fn alpha(&self) -> Rational {
        self.residue.recip()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePointSet {
    /// `p_i`
    pub ram_x: Vec<Rational>,
    pub ram_x_irrational: Option<Poly>,
    /// `p_i^vee`
    pub ram_y: Vec<Rational>,
    pub ram_y_irrational: Option<Poly>,
    /// `a_i`: log points of `y` where `dx` has no pole
    pub log_y: Vec<LogPoint>,
    /// `a_i^vee`: log points of `x` where `dy` has no pole
    pub log_x: Vec<LogPoint>,
    /// `b_i` with `Res y dx`
    pub poles_primal: Vec<(Point, Rational)>,
    /// `b_i^vee` with `Res x dy`
    pub poles_dual: Vec<(Point, LogValue)>,
}

impl ResiduePointSet {
    /// Union of `b_i` and `b_i^vee`.
    pub fn b_points(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self
            .poles_primal
            .iter()
            .map(|(p, _)| p.clone())
            .chain(self.poles_dual.iter().map(|(p, _)| p.clone()))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Whether the 1-form `f dz` has a pole at `p`.
pub fn form_has_pole(f: &RationalFunction, p: &Point) -> bool {
    match p {
        Point::Finite(_) => f.valuation_at(p) < 0,
        Point::Infinity => f.valuation_at(p) < 2,
    }
}

fn log_points(f: &CurveFunction, partner_differential: &RationalFunction) -> Vec<LogPoint> {
    let mut out: Vec<LogPoint> = f
        .atoms()
        .into_iter()
        .map(|at| LogPoint {
            point: Point::Finite(at.branch_point),
            residue: at.coefficient,
        })
        .collect();
    let r = f.log_coefficient_at_infinity();
    if !r.is_zero() {
        out.push(LogPoint {
            point: Point::Infinity,
            residue: r,
        });
    }
    out.retain(|lp| !form_has_pole(partner_differential, &lp.point));
    out
}

/// Singular, non-logarithmic points of `f`.
fn plain_singular_points(f: &CurveFunction) -> Result<Vec<Point>> {
    Ok(f.rational_poles()?
        .into_iter()
        .filter(|p| !f.is_log_point(p))
        .collect())
}

pub fn classify_residue_points(curve: &SpectralCurve) -> Result<ResiduePointSet> {
    let rx = curve.ramification(Side::X)?;
    let ry = curve.ramification(Side::Y)?;
    let dx = curve.x.differential();
    let dy = curve.y.differential();
    let mut poles_primal = Vec::new();
    for p in plain_singular_points(&curve.y)? {
        let r = curve.y.residue_with(&dx, &p)?;
        if !r.is_zero() {
            let r = if r.is_rational() {
                r.rational_part().clone()
            } else {
                return Err(Error::Precondition(format!(
                    "transcendental residue of y dx at {p}"
                )));
            };
            poles_primal.push((p, r));
        }
    }
    let mut poles_dual = Vec::new();
    for p in plain_singular_points(&curve.x)? {
        let r = curve.x.residue_with(&dy, &p)?;
        if !r.is_zero() {
            poles_dual.push((p, r));
        }
    }
    Ok(ResiduePointSet {
        ram_x: rx.points,
        ram_x_irrational: rx.irrational_factor,
        ram_y: ry.points,
        ram_y_irrational: ry.irrational_factor,
        log_y: log_points(&curve.y, &dx),
        log_x: log_points(&curve.x, &dy),
        poles_primal,
        poles_dual,
    })
}

/// Antiderivative of a rational function as rational part plus log atoms,
/// with zero constant term in the polynomial part.
pub fn integrate_rational(f: &RationalFunction) -> Result<CurveFunction> {
    let pf = f.partial_fractions()?;
    let poly = pf.polynomial_part;
    let mut coeffs = vec![Rational::zero()];
    for (k, c) in poly.coeffs().iter().enumerate() {
        coeffs.push(c / Rational::from_integer((k as i64 + 1).into()));
    }
    let mut rational = RationalFunction::from_poly(Poly::new(coeffs));
    let mut atoms = Vec::new();
    for (a, k, c) in pf.terms {
        if k == 1 {
            atoms.push((a, c));
        } else {
            // c/(z-a)^k -> -c/((k-1)(z-a)^(k-1))
            let q = -c / Rational::from_integer((k as i64 - 1).into());
            rational = &rational + &RationalFunction::pole(q, &a, k - 1);
        }
    }
    Ok(CurveFunction::with_logs(rational, atoms))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiSide {
    Primal,
    Dual,
}

/// `int y dx` (primal) or `int x dy` (dual); the integrand must be rational.
pub fn primitive_phi(curve: &SpectralCurve, side: PhiSide) -> Result<CurveFunction> {
    let (f, g) = match side {
        PhiSide::Primal => (&curve.y, &curve.x),
        PhiSide::Dual => (&curve.x, &curve.y),
    };
    if f.has_logs() {
        return Err(Error::Precondition(
            "primitive needs a rational integrand".into(),
        ));
    }
    integrate_rational(&(&f.rational * &g.differential()))
}
