//! The exponent of the x-y duality formula for curves whose dual side is
//! trivial (`y = z` or `y = log z`), and its `[hbar^{2g} u^{m+1}]` slices.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{
    rational::pow_i, s_function_series, Point, Rational, RationalFunction, SKind, SeriesUH,
};
use crate::curve::{classify_residue_points, DualKind, SpectralCurve};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    YPlainXPlain,
    YPlainXLog,
    YLogXPlain,
    YLogXLog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenominatorKind {
    /// `u hbar`
    UHbar,
    /// `e^{u hbar/2} - e^{-u hbar/2} = u hbar S(u hbar)`
    UHbarS,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualExponent {
    pub series: SeriesUH,
    pub regime: Regime,
    pub denominator: DenominatorKind,
    pub g_max: usize,
    /// `1 / y'(z)`, so that `d/dy = q d/dz`.
    pub dy_inverse: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCoefficients {
    pub g: usize,
    /// `m -> c_{g,m}(z)` for `0 <= m <= 3g`, zero entries omitted.
    pub per_m: BTreeMap<usize, RationalFunction>,
}

impl DualityCoefficients {
    pub fn get(&self, m: usize) -> RationalFunction {
        self.per_m.get(&m).cloned().unwrap_or_else(RationalFunction::zero)
    }
}

/// Rejects curves whose dual side carries nontrivial correlators.
pub fn require_trivial_dual(curve: &SpectralCurve) -> Result<DualKind> {
    curve.dual_kind().ok_or_else(|| {
        Error::UnsupportedDual(format!(
            "y = {} is not z or log z; the dual correlators are not available in closed form",
            curve.y
        ))
    })
}

/// `(S(u hbar d) - 1) x u + u S(u hbar d) sum_i (1/S(alpha_i hbar d) - 1) log(z - a_i)/alpha_i`
/// with `d = d/dy`, over the log-vital points `a_i` of `x`.
pub fn build_exponent(curve: &SpectralCurve, g_max: usize) -> Result<DualExponent> {
    let kind = require_trivial_dual(curve)?;
    let max_u = 3 * g_max + 2;
    let max_hbar = 2 * g_max;
    let q = curve.y.differential().recip()?;
    let d = |f: &RationalFunction| &f.derivative() * &q;
    let s = s_function_series(SKind::S, max_hbar);
    let r = s_function_series(SKind::InverseS, max_hbar);
    let mut series = SeriesUH::zero(max_u, max_hbar);

    // d^n x for n = 1 ..= max_hbar
    let mut dx = vec![RationalFunction::zero(), &curve.x.differential() * &q];
    for n in 2..=max_hbar {
        let next = d(&dx[n - 1]);
        dx.push(next);
    }
    for k in 1..=g_max {
        series.add_term(2 * k + 1, 2 * k, &dx[2 * k].scale(&s[2 * k]));
    }

    let points = classify_residue_points(curve)?;
    let mut has_logs = false;
    for lp in &points.log_x {
        let a = match &lp.point {
            Point::Finite(a) => a.clone(),
            Point::Infinity => {
                return Err(Error::Precondition(
                    "log-vital point of x at infinity".into(),
                ))
            }
        };
        has_logs = true;
        let alpha = lp.alpha();
        // d^n log(z - a)
        let mut dl = vec![RationalFunction::zero(), &RationalFunction::pole(Rational::from_integer(1.into()), &a, 1) * &q];
        for n in 2..=max_hbar {
            let next = d(&dl[n - 1]);
            dl.push(next);
        }
        for j in 0..=g_max {
            for l in 1..=g_max {
                let h = 2 * j + 2 * l;
                if h > max_hbar {
                    continue;
                }
                let c = &s[2 * j] * &r[2 * l] * pow_i(&alpha, 2 * l as i64 - 1);
                series.add_term(2 * j + 1, h, &dl[h].scale(&c));
            }
        }
    }
    let (regime, denominator) = match (kind, has_logs) {
        (DualKind::Z, false) => (Regime::YPlainXPlain, DenominatorKind::UHbar),
        (DualKind::Z, true) => (Regime::YPlainXLog, DenominatorKind::UHbar),
        (DualKind::LogZ, false) => (Regime::YLogXPlain, DenominatorKind::UHbarS),
        (DualKind::LogZ, true) => (Regime::YLogXLog, DenominatorKind::UHbarS),
    };
    Ok(DualExponent {
        series,
        regime,
        denominator,
        g_max,
        dy_inverse: q,
    })
}

/// `exp(E)`, divided by `S(u hbar)` for `y = log z`.
pub fn exponential(e: &DualExponent) -> Result<SeriesUH> {
    let ex = e.series.exp()?;
    Ok(match e.denominator {
        DenominatorKind::UHbar => ex,
        DenominatorKind::UHbarS => {
            let r = s_function_series(SKind::InverseS, e.series.max_hbar());
            let mut inv = SeriesUH::zero(e.series.max_u(), e.series.max_hbar());
            for (l, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    inv.add_term(l, l, &RationalFunction::constant(c.clone()));
                }
            }
            ex.mul(&inv)
        }
    })
}

/// `c_{g,m} = [hbar^{2g} u^{m+1}]` of the exponential; the index shift
/// absorbs the prefactor `1/(u hbar)`. Checks that `m = 3g + 1` vanishes.
pub fn duality_coefficients(e: &DualExponent, g: usize) -> Result<DualityCoefficients> {
    if g > e.g_max {
        return Err(Error::OutOfBounds {
            u: 3 * g + 2,
            hbar: 2 * g,
            max_u: e.series.max_u(),
            max_hbar: e.series.max_hbar(),
        });
    }
    let ex = exponential(e)?;
    coefficients_from(&ex, g)
}

pub(crate) fn coefficients_from(ex: &SeriesUH, g: usize) -> Result<DualityCoefficients> {
    let mut per_m = BTreeMap::new();
    for m in 0..=3 * g {
        let c = ex.extract(m + 1, 2 * g)?;
        if !c.is_zero() {
            per_m.insert(m, c);
        }
    }
    if !ex.extract(3 * g + 2, 2 * g)?.is_zero() {
        return Err(Error::Precondition(format!(
            "u-degree bound violated at genus {g}"
        )));
    }
    Ok(DualityCoefficients { g, per_m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Laurent, Poly};
    use crate::curve::CurveFunction;

    fn hz() -> SpectralCurve {
        SpectralCurve::new(
            CurveFunction::rational(
                RationalFunction::new(Poly::new(vec![int(1), int(0), int(1)]), Poly::z()).unwrap(),
            ),
            CurveFunction::z(),
            "hz",
        )
        .unwrap()
    }

    #[test]
    fn harer_zagier_leading_term() {
        let e = build_exponent(&hz(), 2).unwrap();
        assert_eq!(e.regime, Regime::YPlainXPlain);
        // x'' / 24 = 2 / (24 z^3)
        let expected = RationalFunction::pole(rat(1, 12), &int(0), 3);
        assert_eq!(e.series.extract(3, 2).unwrap(), expected);
    }

    #[test]
    fn log_points_leading_term() {
        let x = CurveFunction::with_logs(
            RationalFunction::zero(),
            vec![(int(0), int(1)), (int(1), int(1))],
        );
        let c = SpectralCurve::new(x, CurveFunction::z(), "log points").unwrap();
        let e = build_exponent(&c, 2).unwrap();
        assert_eq!(e.regime, Regime::YPlainXLog);
        let expected = &RationalFunction::pole(rat(1, 24), &int(0), 2)
            + &RationalFunction::pole(rat(1, 24), &int(1), 2);
        assert_eq!(e.series.extract(1, 2).unwrap(), expected);
    }

    #[test]
    fn log_y_has_no_constant_term() {
        let c = SpectralCurve::new(
            CurveFunction::rational(RationalFunction::z()),
            CurveFunction::log_z(),
            "x=z",
        )
        .unwrap();
        let e = build_exponent(&c, 2).unwrap();
        assert_eq!(e.denominator, DenominatorKind::UHbarS);
        assert!(e.series.extract(0, 0).unwrap().is_zero());
    }

    #[test]
    fn ramified_y_is_unsupported() {
        let c = hz().swapped();
        assert!(matches!(build_exponent(&c, 2), Err(Error::UnsupportedDual(_))));
    }

    #[test]
    fn harer_zagier_slice_matches_binomial_expansion() {
        // ((1 + uh/2z)/(1 - uh/2z))^{1/h} e^{-u/z}, expanded with w = u/z:
        // exponent sum_{k>=1} 2 (h w/2)^{2k+1} / ((2k+1) h) - with the x = 1/z
        // part alone this is the full exponent at z -> 0
        let x = CurveFunction::rational(RationalFunction::pole(int(1), &int(0), 1));
        let c = SpectralCurve::new(x, CurveFunction::z(), "1/z").unwrap();
        let e = build_exponent(&c, 1).unwrap();
        let co = duality_coefficients(&e, 1).unwrap();
        // [h^2 u^3]: w^3/12 ; as a function of z: 1/(12 z^3)
        let oracle = Laurent::monomial(rat(1, 12), -3);
        let got = co.get(2).expand(&Point::Finite(int(0)), 0);
        assert_eq!(got, oracle.truncate(0));
        assert!(co.get(3).is_zero());
    }
}
