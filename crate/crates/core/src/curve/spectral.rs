//! The genus-zero spectral curve `(P^1, x, y, dz1 dz2 / (z1 - z2)^2)`.

use std::fmt;

use num_traits::Zero;

use super::function::{CurveFunction, CurveKind};
use crate::algebra::{format_rational, Point, Poly, Rational, RationalFunction};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralCurve {
    pub x: CurveFunction,
    pub y: CurveFunction,
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Zeros of `df` in the finite plane where the partner function is regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ramification {
    pub points: Vec<Rational>,
    /// Monic factor of the numerator of `df` without rational roots, if any.
    pub irrational_factor: Option<Poly>,
}

impl SpectralCurve {
    /// Validates the datum: both functions nonconstant, rational parts with
    /// rational poles, simple ramification of `x` and `y`.
    pub fn new(x: CurveFunction, y: CurveFunction, label: impl Into<String>) -> Result<Self> {
        let curve = SpectralCurve {
            x,
            y,
            label: label.into(),
        };
        if curve.x.is_constant() {
            return Err(Error::Precondition("x is constant".into()));
        }
        if curve.y.is_constant() {
            return Err(Error::Precondition("y is constant".into()));
        }
        curve.x.rational.poles()?;
        curve.y.rational.poles()?;
        curve.ramification(Side::X)?;
        curve.ramification(Side::Y)?;
        Ok(curve)
    }

    pub fn function(&self, side: Side) -> &CurveFunction {
        match side {
            Side::X => &self.x,
            Side::Y => &self.y,
        }
    }

    /// The curve with the roles of `x` and `y` exchanged.
    pub fn swapped(&self) -> Self {
        SpectralCurve {
            x: self.y.clone(),
            y: self.x.clone(),
            label: format!("{} (swapped)", self.label),
        }
    }

    /// `x -> x + f y`
    pub fn framed(&self, f: i64) -> Result<Self> {
        let x = self.x.add(&self.y.scale(&Rational::from_integer(f.into())))?;
        SpectralCurve::new(x, self.y.clone(), self.label.clone())
    }

    /// `y -> lambda y`
    pub fn scaled_y(&self, lambda: &Rational) -> Result<Self> {
        SpectralCurve::new(self.x.clone(), self.y.scale(lambda), self.label.clone())
    }

    /// Canonical text identifying the curve up to its label.
    pub fn fingerprint(&self) -> String {
        format!("x={};y={}", self.x, self.y)
    }

    /// Simple zeros of `d(side)` at finite points where the other function
    /// is regular. Infinity is examined separately.
    pub fn ramification(&self, side: Side) -> Result<Ramification> {
        let (f, other) = match side {
            Side::X => (&self.x, &self.y),
            Side::Y => (&self.y, &self.x),
        };
        let df = f.differential();
        let (roots, rest) = df.num().rational_roots()?;
        let mut points = Vec::new();
        for (a, m) in roots {
            let p = Point::Finite(a.clone());
            if other.is_singular_at(&p) {
                continue;
            }
            if m > 1 {
                return Err(Error::NonSimpleRamification {
                    point: format_rational(&a),
                });
            }
            points.push(a);
        }
        let irrational_factor = if rest.degree().unwrap_or(0) > 0 {
            let g = Poly::gcd(&rest, &rest.derivative());
            if !g.is_constant() {
                return Err(Error::NonSimpleRamification {
                    point: format!("a root of {}", rest.monic()),
                });
            }
            Some(rest.monic())
        } else {
            None
        };
        // at infinity d f = -f'(1/t) dt / t^2
        let v = df.valuation_at(&Point::Infinity) - 2;
        if v >= 1 && !other.is_singular_at(&Point::Infinity) {
            if v > 1 {
                return Err(Error::NonSimpleRamification {
                    point: "infinity".into(),
                });
            }
            return Err(Error::Precondition(
                "ramification at infinity; move it to a finite point by a Moebius change of coordinate"
                    .into(),
            ));
        }
        Ok(Ramification {
            points,
            irrational_factor,
        })
    }

    /// Ramification points of `side`, failing with `IrrationalPole` when some
    /// of them are not rational.
    pub fn ramification_points(&self, side: Side) -> Result<Vec<Rational>> {
        let r = self.ramification(side)?;
        match r.irrational_factor {
            Some(f) => Err(Error::IrrationalPole {
                factor: f.to_string(),
            }),
            None => Ok(r.points),
        }
    }

    /// Whether `y` is unramified and of the form `z` or `log z` up to an
    /// additive constant, i.e. the dual side is trivial.
    pub fn dual_kind(&self) -> Option<DualKind> {
        match self.y.kind {
            CurveKind::LogOfZ => Some(DualKind::LogZ),
            CurveKind::Plain => {
                if !self.y.logs.is_empty() {
                    return None;
                }
                let d = self.y.differential();
                if d == RationalFunction::one() {
                    Some(DualKind::Z)
                } else if d == RationalFunction::pole(Rational::from_integer(1.into()), &Rational::zero(), 1)
                {
                    Some(DualKind::LogZ)
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualKind {
    Z,
    LogZ,
}

impl fmt::Display for SpectralCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: x = {}, y = {}", self.label, self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(
            Poly::new(n.iter().map(|&c| int(c)).collect()),
            Poly::new(d.iter().map(|&c| int(c)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn harer_zagier_ramification() {
        let c = SpectralCurve::new(
            CurveFunction::rational(rf(&[1, 0, 1], &[0, 1])),
            CurveFunction::z(),
            "hz",
        )
        .unwrap();
        assert_eq!(c.ramification_points(Side::X).unwrap(), vec![int(-1), int(1)]);
        assert!(c.ramification_points(Side::Y).unwrap().is_empty());
        assert_eq!(c.dual_kind(), Some(DualKind::Z));
    }

    #[test]
    fn cubic_is_not_simple() {
        let r = SpectralCurve::new(
            CurveFunction::rational(rf(&[0, 0, 0, 1], &[1])),
            CurveFunction::z(),
            "cubic",
        );
        assert!(matches!(r, Err(Error::NonSimpleRamification { .. })));
    }

    #[test]
    fn irrational_ramification_is_reported() {
        // x = z^3/3 - 2z: x' = z^2 - 2
        let x = CurveFunction::rational(
            &RationalFunction::from_poly(Poly::monomial(crate::algebra::rat(1, 3), 3))
                - &RationalFunction::from_poly(Poly::monomial(int(2), 1)),
        );
        let c = SpectralCurve::new(x, CurveFunction::z(), "r-spin").unwrap();
        assert!(matches!(
            c.ramification_points(Side::X),
            Err(Error::IrrationalPole { .. })
        ));
    }
}
