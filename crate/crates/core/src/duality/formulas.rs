//! `omega_{g,1}` and `F_g` from the duality formula with a trivial dual side.

use num_traits::Zero;

use super::exponent::{build_exponent, duality_coefficients, DualityCoefficients};
use crate::algebra::{int, Point, Rational, RationalFunction};
use crate::curve::{classify_residue_points, DualKind, SpectralCurve};
use crate::error::{Error, Result};
use crate::tr::{ComputationPath, FreeEnergyValue, MultiDifferential};

/// `((1/x') d/dz)^{m-1} y` for `m >= 2`; rational also for `y = log z`.
pub fn dy_dx_iterate(curve: &SpectralCurve, m: usize) -> Result<RationalFunction> {
    if m < 2 {
        return Err(Error::Precondition("dy_dx_iterate needs m >= 2".into()));
    }
    let dx = curve.x.differential();
    let mut h = curve.y.differential().div(&dx)?;
    for _ in 2..m {
        h = h.derivative().div(&dx)?;
    }
    Ok(h)
}

/// `f dz -> -d(f dz / dx)`
fn minus_d_over_dx(f: &RationalFunction, dx: &RationalFunction) -> Result<RationalFunction> {
    Ok(-&f.div(dx)?.derivative())
}

/// `[hbar^{2g-1}] sum_m (-d 1/dx)^m [u^m] (-dy) exp(..) / denominator`
/// as a function of `z` (the factor `dz` implicit).
pub fn omega_g1_density(curve: &SpectralCurve, g: usize) -> Result<RationalFunction> {
    if g == 0 {
        return Err(Error::Precondition("omega_{g,1} needs g >= 1".into()));
    }
    let e = build_exponent(curve, g)?;
    let co = duality_coefficients(&e, g)?;
    let dx = curve.x.differential();
    let dy = curve.y.differential();
    let mut total = RationalFunction::zero();
    for (&m, c) in &co.per_m {
        let mut f = -&(&dy * c);
        for _ in 0..m {
            f = minus_d_over_dx(&f, &dx)?;
        }
        total = &total + &f;
    }
    Ok(total)
}

pub fn omega_g1_duality(curve: &SpectralCurve, g: usize) -> Result<MultiDifferential> {
    MultiDifferential::from_rational_function(g, &omega_g1_density(curve, g)?)
}

/// Residue contribution of one point to `(2 - 2g) F_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointContribution {
    pub point: Point,
    pub residue: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityFreeEnergy {
    pub value: FreeEnergyValue,
    pub contributions: Vec<PointContribution>,
}

/// `y' sum_{m=2}^{3g} (d/dx)^{m-1} y c_{g,m}`
pub fn free_energy_integrand(
    curve: &SpectralCurve,
    co: &DualityCoefficients,
) -> Result<RationalFunction> {
    let dy = curve.y.differential();
    let mut acc = RationalFunction::zero();
    for (&m, c) in &co.per_m {
        if m < 2 {
            continue;
        }
        acc = &acc + &(&dy_dx_iterate(curve, m)? * c);
    }
    Ok(&acc * &dy)
}

/// The points at which residues are taken: log points of `x`, the
/// singular points `b_i`, `b_i^vee`, `0` for `y = log z`, and infinity.
pub fn residue_points(curve: &SpectralCurve) -> Result<Vec<Point>> {
    let set = classify_residue_points(curve)?;
    let mut pts: Vec<Point> = set.log_x.iter().map(|l| l.point.clone()).collect();
    for a in curve.x.atoms() {
        pts.push(Point::Finite(a.branch_point));
    }
    pts.extend(set.b_points());
    if curve.dual_kind() == Some(DualKind::LogZ) {
        pts.push(Point::Finite(Rational::zero()));
    }
    pts.push(Point::Infinity);
    pts.sort();
    pts.dedup();
    Ok(pts)
}

pub fn free_energy_duality(curve: &SpectralCurve, g: usize) -> Result<FreeEnergyValue> {
    Ok(free_energy_duality_at(curve, g, &[])?.value)
}

/// As [`free_energy_duality`], with per-point residues and with `extra`
/// points added to the residue set.
pub fn free_energy_duality_at(
    curve: &SpectralCurve,
    g: usize,
    extra: &[Point],
) -> Result<DualityFreeEnergy> {
    if g < 2 {
        return Err(Error::Precondition("free energy needs g >= 2".into()));
    }
    let e = build_exponent(curve, g)?;
    let co = duality_coefficients(&e, g)?;
    let integrand = free_energy_integrand(curve, &co)?;
    let mut pts = residue_points(curve)?;
    pts.extend(extra.iter().cloned());
    pts.sort();
    pts.dedup();
    let mut total = Rational::zero();
    let mut contributions = Vec::new();
    for p in pts {
        let r = integrand.residue_at(&p);
        total += &r;
        contributions.push(PointContribution { point: p, residue: r });
    }
    Ok(DualityFreeEnergy {
        value: FreeEnergyValue {
            g,
            value: total / int(2 - 2 * g as i64),
            path: ComputationPath::Duality,
        },
        contributions,
    })
}

/// Value of the invariantized free energy under one classification of
/// points that carry both a primal and a dual residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantizedFreeEnergy {
    pub g: usize,
    /// Shared points treated as primal and dropped.
    pub shared_as_primal: Rational,
    /// Shared points treated as dual and kept.
    pub shared_as_dual: Rational,
    pub shared_points: Vec<Point>,
    pub classification_note: String,
}

impl InvariantizedFreeEnergy {
    pub fn agrees(&self) -> bool {
        self.shared_as_primal == self.shared_as_dual
    }
}

/// `F_g` with the residues at the primal points `a_i`, `b_i` removed.
pub fn invariantized_free_energy(curve: &SpectralCurve, g: usize) -> Result<InvariantizedFreeEnergy> {
    let full = free_energy_duality_at(curve, g, &[])?;
    let set = classify_residue_points(curve)?;
    let mut primal: Vec<Point> = set.log_y.iter().map(|l| l.point.clone()).collect();
    primal.extend(set.poles_primal.iter().map(|(p, _)| p.clone()));
    let mut dual: Vec<Point> = set.log_x.iter().map(|l| l.point.clone()).collect();
    dual.extend(set.poles_dual.iter().map(|(p, _)| p.clone()));
    let shared: Vec<Point> = primal.iter().filter(|p| dual.contains(p)).cloned().collect();
    let denom = int(2 - 2 * g as i64);
    let mut only_primal = Rational::zero();
    let mut shared_sum = Rational::zero();
    for c in &full.contributions {
        if shared.contains(&c.point) {
            shared_sum += &c.residue;
        } else if primal.contains(&c.point) {
            only_primal += &c.residue;
        }
    }
    let base = &full.value.value - &only_primal / &denom;
    let shared_as_primal = &base - &shared_sum / &denom;
    let note = if shared.is_empty() {
        "no point carries both residues".to_string()
    } else if shared_sum.is_zero() {
        format!(
            "{} carry both residues; their contribution vanishes, both classifications agree",
            list(&shared)
        )
    } else {
        format!(
            "{} carry both residues; classifications differ by {}",
            list(&shared),
            &shared_sum / &denom
        )
    };
    Ok(InvariantizedFreeEnergy {
        g,
        shared_as_primal,
        shared_as_dual: base,
        shared_points: shared,
        classification_note: note,
    })
}

fn list(pts: &[Point]) -> String {
    pts.iter().map(|p| format!("z = {p}")).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Poly};
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
    fn iterates_on_harer_zagier() {
        let z2m1 = Poly::new(vec![int(-1), int(0), int(1)]);
        let m2 = RationalFunction::new(Poly::monomial(int(1), 2), z2m1.clone()).unwrap();
        assert_eq!(dy_dx_iterate(&hz(), 2).unwrap(), m2);
        let m3 = RationalFunction::new(Poly::monomial(int(-2), 3), z2m1.pow(3)).unwrap();
        assert_eq!(dy_dx_iterate(&hz(), 3).unwrap(), m3);
    }

    #[test]
    fn airy_like_omega() {
        // x = z^2/2, y = z: -(x''/24) dz pushed twice through -d(1/dx)
        let c = SpectralCurve::new(
            CurveFunction::rational(RationalFunction::from_poly(Poly::monomial(rat(1, 2), 2))),
            CurveFunction::z(),
            "airy",
        )
        .unwrap();
        let w = omega_g1_duality(&c, 1).unwrap();
        assert_eq!(w.terms.len(), 1);
        assert_eq!(w.terms.get(&vec![(int(0), 4)]), Some(&rat(-1, 8)));
    }

    #[test]
    fn regular_points_contribute_nothing() {
        let base = free_energy_duality_at(&hz(), 2, &[]).unwrap();
        let more = free_energy_duality_at(&hz(), 2, &[Point::Finite(rat(7, 3))]).unwrap();
        assert_eq!(base.value, more.value);
    }
}
