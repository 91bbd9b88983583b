//! Functions on the sphere of the form `R(z) + sum c_i log(z - a_i)`, or
//! exactly `log z`.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{
    format_rational, Laurent, LogValue, Point, Poly, Rational, RationalFunction,
};
use crate::error::{Error, Result};

/// `coefficient * log(z - branch_point)`; the differential of the atom has
/// residue `coefficient` at the branch point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogAtom {
    pub branch_point: Rational,
    pub coefficient: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Plain,
    LogOfZ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFunction {
    pub rational: RationalFunction,
    pub logs: Vec<LogAtom>,
    pub kind: CurveKind,
    /// Inert additive constants `c * log(arg)`. They never influence a
    /// differential, a residue of a 1-form or a ramification datum.
    pub log_constants: Vec<(Rational, Rational)>,
}

impl CurveFunction {
    pub fn rational(f: RationalFunction) -> Self {
        CurveFunction {
            rational: f,
            logs: Vec::new(),
            kind: CurveKind::Plain,
            log_constants: Vec::new(),
        }
    }

    pub fn z() -> Self {
        Self::rational(RationalFunction::z())
    }

    pub fn log_z() -> Self {
        CurveFunction {
            rational: RationalFunction::zero(),
            logs: Vec::new(),
            kind: CurveKind::LogOfZ,
            log_constants: Vec::new(),
        }
    }

    /// Builds `rational + sum c log(z - a)`, merging atoms at equal points.
    pub fn with_logs(rational: RationalFunction, atoms: Vec<(Rational, Rational)>) -> Self {
        let mut f = Self::rational(rational);
        for (a, c) in atoms {
            f.push_atom(a, c);
        }
        f
    }

    fn push_atom(&mut self, a: Rational, c: Rational) {
        if let Some(at) = self.logs.iter_mut().find(|at| at.branch_point == a) {
            at.coefficient += c;
        } else {
            self.logs.push(LogAtom {
                branch_point: a,
                coefficient: c,
            });
        }
        self.logs.retain(|at| !at.coefficient.is_zero());
        self.logs.sort_by(|p, q| p.branch_point.cmp(&q.branch_point));
    }

    /// Log atoms including the one hidden in `log z`.
    pub fn atoms(&self) -> Vec<LogAtom> {
        match self.kind {
            CurveKind::LogOfZ => vec![LogAtom {
                branch_point: Rational::zero(),
                coefficient: Rational::one(),
            }],
            CurveKind::Plain => self.logs.clone(),
        }
    }

    pub fn has_logs(&self) -> bool {
        self.kind == CurveKind::LogOfZ || !self.logs.is_empty()
    }

    /// Residue of `df` at infinity (sum of all finite residues, negated).
    pub fn log_coefficient_at_infinity(&self) -> Rational {
        -self
            .atoms()
            .iter()
            .fold(Rational::zero(), |acc, a| acc + &a.coefficient)
    }

    pub fn is_log_point(&self, p: &Point) -> bool {
        match p {
            Point::Finite(a) => self.atoms().iter().any(|at| &at.branch_point == a),
            Point::Infinity => !self.log_coefficient_at_infinity().is_zero(),
        }
    }

    /// `df/dz`
    pub fn differential(&self) -> RationalFunction {
        let mut d = self.rational.derivative();
        for at in self.atoms() {
            d = &d + &RationalFunction::pole(at.coefficient.clone(), &at.branch_point, 1);
        }
        d
    }

    pub fn is_constant(&self) -> bool {
        self.differential().is_zero()
    }

    /// Finite poles of the rational part and infinity when it has one.
    pub fn rational_poles(&self) -> Result<Vec<Point>> {
        self.rational.poles_with_infinity()
    }

    /// Singular at `p`: a pole of the rational part or a log point.
    pub fn is_singular_at(&self, p: &Point) -> bool {
        self.is_log_point(p) || self.rational.valuation_at(p) < 0
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.kind == CurveKind::LogOfZ || other.kind == CurveKind::LogOfZ {
            // log z is an atom at zero once mixed with anything else
            let mut f = self.as_plain();
            let g = other.as_plain();
            f.rational = &f.rational + &g.rational;
            for at in g.logs {
                f.push_atom(at.branch_point, at.coefficient);
            }
            f.log_constants.extend(g.log_constants);
            return Ok(f);
        }
        let mut f = self.clone();
        f.rational = &f.rational + &other.rational;
        for at in &other.logs {
            f.push_atom(at.branch_point.clone(), at.coefficient.clone());
        }
        f.log_constants.extend(other.log_constants.iter().cloned());
        Ok(f)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_one() {
            return self.clone();
        }
        if c.is_zero() {
            return Self::rational(RationalFunction::zero());
        }
        let f = self.as_plain();
        CurveFunction {
            rational: f.rational.scale(c),
            logs: f
                .logs
                .iter()
                .map(|at| LogAtom {
                    branch_point: at.branch_point.clone(),
                    coefficient: &at.coefficient * c,
                })
                .collect(),
            kind: CurveKind::Plain,
            log_constants: f.log_constants.iter().map(|(k, a)| (k * c, a.clone())).collect(),
        }
    }

    fn as_plain(&self) -> Self {
        match self.kind {
            CurveKind::Plain => self.clone(),
            CurveKind::LogOfZ => CurveFunction {
                rational: RationalFunction::zero(),
                logs: self.atoms(),
                kind: CurveKind::Plain,
                log_constants: self.log_constants.clone(),
            },
        }
    }

    /// Value of the inert constants.
    pub fn constant_value(&self) -> Result<LogValue> {
        let mut v = LogValue::zero();
        for (c, a) in &self.log_constants {
            v = v.add(&LogValue::log_of(a, c)?);
        }
        Ok(v)
    }

    /// Local expansion `f(p + t) = c + F(t)` (or in `t = 1/z` at infinity)
    /// at a point that is not a log point. `F` has zero constant term and
    /// precision `prec`; logarithms use the principal branch.
    pub fn local_expansion(&self, p: &Point, prec: i64) -> Result<(LogValue, Laurent)> {
        if self.is_log_point(p) {
            return Err(Error::Precondition(format!(
                "local expansion requested at log point z = {p}"
            )));
        }
        let r = self.rational.expand(p, prec);
        let c0 = r.coeff(0).unwrap_or_else(Rational::zero);
        let mut series = &r - &Laurent::monomial(c0.clone(), 0);
        let mut constant = self.constant_value()?.add_rational(&c0);
        for at in self.atoms() {
            let (shift, lin) = match p {
                // log(z - a) = log(p - a) + log(1 + t/(p - a))
                Point::Finite(b) => {
                    let d = b - &at.branch_point;
                    (Some(d.clone()), Laurent::monomial(d.recip(), 1))
                }
                // log(z - a) = -log t + log(1 - a t); the -log t parts cancel
                Point::Infinity => (None, Laurent::monomial(-at.branch_point.clone(), 1)),
            };
            if let Some(d) = shift {
                constant = constant.add(&LogValue::log_of(&d, &at.coefficient)?);
            }
            if !lin.is_zero() {
                let l = Laurent::log1p(&lin.truncate(prec))?;
                series = &series + &l.scale(&at.coefficient);
            }
        }
        Ok((constant, series.truncate(prec)))
    }

    /// `Res_p f(z) g(z) dz` for rational `g` at a non-log point of `f`.
    pub fn residue_with(&self, g: &RationalFunction, p: &Point) -> Result<LogValue> {
        if g.is_zero() {
            return Ok(LogValue::zero());
        }
        // dz = -dt/t^2 at infinity
        let shift = if matches!(p, Point::Infinity) { 2 } else { 0 };
        let v_form = g.valuation_at(p) - shift;
        let v_f = if self.rational.is_zero() {
            1
        } else {
            self.rational.valuation_at(p).min(1)
        };
        // t^-1 of F * form needs F below t^{-v_form} and form below t^{-v_f}
        let (c, fser) = self.local_expansion(p, (1 - v_form).max(1))?;
        let gser = g.expand(p, (1 - v_f).max(1) + shift);
        let form = match p {
            Point::Finite(_) => gser,
            Point::Infinity => gser.shift(-2).scale(&-Rational::one()),
        };
        let r0 = form.residue()?;
        let r1 = (&fser * &form).residue()?;
        Ok(c.scale(&r0).add_rational(&r1))
    }

    /// Exact value at a regular point.
    pub fn eval(&self, z: &Rational) -> Result<LogValue> {
        if self.is_singular_at(&Point::Finite(z.clone())) {
            return Err(Error::Precondition(format!(
                "evaluation at singular point z = {}",
                format_rational(z)
            )));
        }
        let mut v = self.constant_value()?.add_rational(&self.rational.eval(z)?);
        for at in self.atoms() {
            v = v.add(&LogValue::log_of(&(z - &at.branch_point), &at.coefficient)?);
        }
        Ok(v)
    }

    /// The rational part as a polynomial if it is one.
    pub fn polynomial(&self) -> Option<Poly> {
        if self.rational.is_polynomial() {
            Some(self.rational.num().scale(&self.rational.den().leading().recip()))
        } else {
            None
        }
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind == CurveKind::LogOfZ {
            return write!(f, "log(z)");
        }
        let mut parts = Vec::new();
        if !self.rational.is_zero() || self.logs.is_empty() {
            parts.push(self.rational.to_string());
        }
        for at in &self.logs {
            parts.push(format!(
                "{}*log(z - {})",
                format_rational(&at.coefficient),
                format_rational(&at.branch_point)
            ));
        }
        for (c, a) in &self.log_constants {
            parts.push(format!("{}*log({})", format_rational(c), format_rational(a)));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn x_hz() -> CurveFunction {
        CurveFunction::rational(
            RationalFunction::new(
                Poly::new(vec![int(1), int(0), int(1)]),
                Poly::new(vec![int(0), int(1)]),
            )
            .unwrap(),
        )
    }

    #[test]
    fn differentials() {
        let x = CurveFunction::with_logs(
            RationalFunction::zero(),
            vec![(int(1), int(1)), (int(-1), int(1))],
        );
        let expected = RationalFunction::new(
            Poly::new(vec![int(0), int(2)]),
            Poly::new(vec![int(-1), int(0), int(1)]),
        )
        .unwrap();
        assert_eq!(x.differential(), expected);
        assert_eq!(
            CurveFunction::log_z().differential(),
            RationalFunction::pole(int(1), &int(0), 1)
        );
        assert_eq!(
            x_hz().differential(),
            RationalFunction::new(
                Poly::new(vec![int(-1), int(0), int(1)]),
                Poly::new(vec![int(0), int(0), int(1)])
            )
            .unwrap()
        );
    }

    #[test]
    fn local_expansion_of_logs() {
        // log(z) + log(z - 1) at 1/2: constant log(1/2) + log(-1/2)
        let x = CurveFunction::with_logs(
            RationalFunction::zero(),
            vec![(int(0), int(1)), (int(1), int(1))],
        );
        let (c, s) = x.local_expansion(&Point::Finite(rat(1, 2)), 4).unwrap();
        let expected = LogValue::log_of(&rat(1, 2), &int(1))
            .unwrap()
            .add(&LogValue::log_of(&rat(-1, 2), &int(1)).unwrap());
        assert_eq!(c, expected);
        // log(1 + 2t) + log(1 - 2t) = -4 t^2 + O(t^4)
        assert_eq!(s.coeff(1), Some(int(0)));
        assert_eq!(s.coeff(2), Some(int(-4)));
        assert_eq!(s.coeff(3), Some(int(0)));
    }

    #[test]
    fn residues_with_rational_cofactor() {
        // Res_0 (z + 1/z) dz = 1
        let r = x_hz()
            .residue_with(&RationalFunction::one(), &Point::Finite(int(0)))
            .unwrap();
        assert_eq!(r, LogValue::rational(int(1)));
        let r = x_hz()
            .residue_with(&RationalFunction::one(), &Point::Infinity)
            .unwrap();
        assert_eq!(r, LogValue::rational(int(-1)));
    }

    #[test]
    fn residue_with_high_order_pole_of_f() {
        // Res_inf (z^4/4 - z) z^-5 dz = -1/4
        let f = CurveFunction::rational(RationalFunction::from_poly(Poly::new(vec![
            int(0),
            int(-1),
            int(0),
            int(0),
            rat(1, 4),
        ])));
        let g = RationalFunction::pole(int(1), &int(0), 5);
        let r = f.residue_with(&g, &Point::Infinity).unwrap();
        assert_eq!(r, LogValue::rational(rat(-1, 4)));
    }
}
