//! The residue recursion on genus-zero curves.
//!
//! At a ramification point `p` with local coordinate `t = q - p` and deck
//! series `s(t)`, the kernel expands as
//!
//! ```text
//! 1/(z - q) - 1/(z - s(q)) = sum_{m >= 1} (t^m - s^m) / (z - p)^{m+1}
//! ```
//!
//! so the coefficient of `dz/(z - p)^{m+1}` is `Res_t (t^m - s^m) kappa(t) W(t)`
//! with `kappa = 1 / (2 (y(q) - y(s(q))) x'(q))` and `W` the bracket of the
//! recursion, a map from pole-basis keys of the free variables to series in
//! `t`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::logtr::logtr_correction;
use super::multidiff::{MultiDifferential, Pole};
use crate::algebra::{binomial, int, Laurent, Point, Rational};
use crate::curve::{deck_transformation, form_has_pole, Side, SpectralCurve};
use crate::error::{Error, Result};

/// Orientation of the integral of `B` in the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum KernelOrientation {
    /// `int_{s(q)}^q B(z, .)`. The duality formula for `omega_{g,1}`
    /// reproduces the recursion in this orientation.
    #[default]
    PointToDeck,
    /// `int_q^{s(q)} B(z, .)`; every `omega_{g,n}` with `2g - 2 + n` odd and
    /// every `F_g` change sign.
    DeckToPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrOptions {
    /// Largest number of variables computed.
    pub max_n: usize,
    /// Largest `2g + n - 2` computed.
    pub max_chi: usize,
    /// Starting series precision; defaults to `6g + 2n + 8`.
    pub initial_order: Option<i64>,
    pub orientation: KernelOrientation,
}

impl Default for TrOptions {
    fn default() -> Self {
        TrOptions {
            max_n: 4,
            max_chi: 8,
            initial_order: None,
            orientation: KernelOrientation::default(),
        }
    }
}

const MAX_ORDER: i64 = 512;

type MemoKey = (String, KernelOrientation, usize, usize);

fn memo() -> &'static RwLock<HashMap<MemoKey, Arc<MultiDifferential>>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, Arc<MultiDifferential>>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn memo_get(key: &MemoKey) -> Option<Arc<MultiDifferential>> {
    memo().read().ok()?.get(key).cloned()
}

fn memo_put(key: MemoKey, w: Arc<MultiDifferential>) {
    if let Ok(mut m) = memo().write() {
        m.entry(key).or_insert(w);
    }
}

/// Data the recursion needs from a curve.
#[derive(Clone, Debug)]
pub struct TrSupport {
    pub ram: Vec<Rational>,
    /// Finite log-vital points of `y` with `alpha`.
    pub log_vital: Vec<(Rational, Rational)>,
}

/// Checks that the recursion can run exactly on `curve`.
pub fn tr_support(curve: &SpectralCurve) -> Result<TrSupport> {
    let r = curve.ramification(Side::X).map_err(|e| match e {
        Error::Precondition(m) => Error::PathUnavailable(m),
        e => e,
    })?;
    if let Some(f) = r.irrational_factor {
        return Err(Error::PathUnavailable(format!(
            "ramification points of x are roots of {f}, not rational"
        )));
    }
    let dx = curve.x.differential();
    let mut log_vital = Vec::new();
    for at in curve.y.atoms() {
        let p = Point::Finite(at.branch_point.clone());
        if !form_has_pole(&dx, &p) {
            log_vital.push((at.branch_point, at.coefficient.recip()));
        }
    }
    if curve.y.is_log_point(&Point::Infinity) && !form_has_pole(&dx, &Point::Infinity) {
        return Err(Error::PathUnavailable(
            "y has a log-vital point at infinity".into(),
        ));
    }
    Ok(TrSupport {
        ram: r.points,
        log_vital,
    })
}

pub fn check_guard(g: usize, n: usize, opts: &TrOptions) -> Result<()> {
    if n == 0 || 2 * g + n < 3 {
        return Err(Error::Precondition(format!(
            "omega_({g},{n}) is not produced by the recursion"
        )));
    }
    if n > opts.max_n || 2 * g + n - 2 > opts.max_chi {
        return Err(Error::ComplexityGuard(format!(
            "omega_({g},{n}) exceeds n <= {} and 2g+n-2 <= {}",
            opts.max_n, opts.max_chi
        )));
    }
    Ok(())
}

/// `omega_{g,n}` with default options.
pub fn tr_omega(curve: &SpectralCurve, g: usize, n: usize) -> Result<Arc<MultiDifferential>> {
    tr_omega_with(curve, g, n, &TrOptions::default())
}

pub fn tr_omega_with(
    curve: &SpectralCurve,
    g: usize,
    n: usize,
    opts: &TrOptions,
) -> Result<Arc<MultiDifferential>> {
    check_guard(g, n, opts)?;
    let support = tr_support(curve)?;
    let mut order = opts
        .initial_order
        .unwrap_or(6 * g as i64 + 2 * n as i64 + 8)
        .max(4);
    loop {
        let mut engine = Engine::new(curve, &support, order, opts.orientation)?;
        match engine.omega(g, n) {
            Err(Error::TruncationExhausted(_)) if order < MAX_ORDER => order *= 2,
            r => return r,
        }
    }
}

struct RamData {
    p: Rational,
    sigma: Laurent,
    dsigma: Laurent,
    kappa: Laurent,
    /// `B(q, s(q))` as a series times `dt^2`
    b_diag: Laurent,
    sigma_pows: Vec<Laurent>,
    q_cache: HashMap<Pole, Laurent>,
    s_cache: HashMap<Pole, Laurent>,
    side_cache: HashMap<(usize, usize, bool), Arc<SideMap>>,
}

type SideMap = BTreeMap<Vec<Pole>, Laurent>;

struct Engine<'a> {
    curve: &'a SpectralCurve,
    key: String,
    orientation: KernelOrientation,
    prec: i64,
    ram: Vec<RamData>,
}

fn add_into(map: &mut SideMap, key: Vec<Pole>, s: Laurent) {
    match map.get_mut(&key) {
        Some(old) => *old = &*old + &s,
        None => {
            map.insert(key, s);
        }
    }
}

impl<'a> Engine<'a> {
    fn new(
        curve: &'a SpectralCurve,
        support: &TrSupport,
        prec: i64,
        orientation: KernelOrientation,
    ) -> Result<Self> {
        let mut ram = Vec::new();
        for p in &support.ram {
            let deck = deck_transformation(curve, p, prec - 1)?;
            let sigma = deck.series;
            let dsigma = sigma.derivative();
            let pt = Point::Finite(p.clone());
            let (_, x) = curve.x.local_expansion(&pt, prec + 2)?;
            let (_, y) = curve.y.local_expansion(&pt, prec + 2)?;
            let dy = &y - &y.compose(&sigma)?;
            let two = match orientation {
                KernelOrientation::PointToDeck => int(2),
                KernelOrientation::DeckToPoint => int(-2),
            };
            let denom = (&dy * &x.derivative()).scale(&two);
            let kappa = denom.inv()?;
            let diff = &Laurent::t() - &sigma;
            let b_diag = &dsigma * &diff.pow(-2)?;
            ram.push(RamData {
                p: p.clone(),
                sigma_pows: vec![Laurent::one(), sigma.clone()],
                sigma,
                dsigma,
                kappa,
                b_diag,
                q_cache: HashMap::new(),
                s_cache: HashMap::new(),
                side_cache: HashMap::new(),
            });
        }
        Ok(Engine {
            curve,
            key: curve.fingerprint(),
            orientation,
            prec,
            ram,
        })
    }

    fn omega(&mut self, g: usize, n: usize) -> Result<Arc<MultiDifferential>> {
        let key = (self.key.clone(), self.orientation, g, n);
        if let Some(w) = memo_get(&key) {
            return Ok(w);
        }
        let w = Arc::new(self.compute(g, n)?);
        memo_put(key, w.clone());
        Ok(w)
    }

    fn sigma_pow(&mut self, i: usize, k: usize) -> Laurent {
        let r = &mut self.ram[i];
        while r.sigma_pows.len() <= k {
            let next = r.sigma_pows.last().unwrap() * &r.sigma;
            r.sigma_pows.push(next);
        }
        r.sigma_pows[k].clone()
    }

    /// `dq/(q - a)^k` at `q = p + t`, without `dt`.
    fn q_series(&mut self, i: usize, pole: &Pole) -> Laurent {
        if let Some(s) = self.ram[i].q_cache.get(pole) {
            return s.clone();
        }
        let (a, k) = pole;
        let p = &self.ram[i].p;
        let s = if a == p {
            Laurent::monomial(Rational::one(), -(*k as i64))
        } else {
            // (d + t)^{-k} = sum_j C(-k, j) d^{-k-j} t^j
            let d = p - a;
            let dinv = d.recip();
            let mut c = crate::algebra::rational::pow_i(&dinv, *k as i64);
            let mut coeffs = Vec::with_capacity(self.prec as usize);
            for j in 0..self.prec {
                coeffs.push(&c * binomial(-(*k as i64), j as u64));
                c *= &dinv;
            }
            Laurent::from_coeffs(coeffs, self.prec)
        };
        self.ram[i].q_cache.insert(pole.clone(), s.clone());
        s
    }

    /// `d(s(q))/(s(q) - a)^k` at `q = p + t`, without `dt`.
    fn s_series(&mut self, i: usize, pole: &Pole) -> Result<Laurent> {
        if let Some(s) = self.ram[i].s_cache.get(pole) {
            return Ok(s.clone());
        }
        let (a, k) = pole;
        let base = if a == &self.ram[i].p {
            self.ram[i].sigma.pow(-(*k as i64))?
        } else {
            let r = self.q_series(i, pole);
            r.compose(&self.ram[i].sigma)?
        };
        let s = &base * &self.ram[i].dsigma;
        self.ram[i].s_cache.insert(pole.clone(), s.clone());
        Ok(s)
    }

    /// `omega_{g,n}` with its first slot at `q` (or at `s(q)`), grouped by
    /// the keys of the remaining slots.
    fn side_map(&mut self, i: usize, g: usize, n: usize, sigma_side: bool) -> Result<Arc<SideMap>> {
        if let Some(m) = self.ram[i].side_cache.get(&(g, n, sigma_side)) {
            return Ok(m.clone());
        }
        let w = self.omega(g, n)?;
        let mut map = SideMap::new();
        for (key, c) in &w.terms {
            let s = if sigma_side {
                self.s_series(i, &key[0])?
            } else {
                self.q_series(i, &key[0])
            };
            add_into(&mut map, key[1..].to_vec(), s.scale(c));
        }
        let map = Arc::new(map);
        self.ram[i].side_cache.insert((g, n, sigma_side), map.clone());
        Ok(map)
    }

    /// `B(., z_j)` with the first slot at `q` or `s(q)`, expanded in the pole
    /// basis at `p` up to `(z_j - p)^{-(cut + 2)}`.
    fn bergman_map(&mut self, i: usize, sigma_side: bool, cut: usize) -> SideMap {
        let p = self.ram[i].p.clone();
        let mut map = SideMap::new();
        for k in 0..=cut {
            let c = int(k as i64 + 1);
            let s = if sigma_side {
                &self.sigma_pow(i, k) * &self.ram[i].dsigma
            } else {
                Laurent::monomial(Rational::one(), k as i64)
            };
            map.insert(vec![(p.clone(), k as u32 + 2)], s.scale(&c));
        }
        map
    }

    fn pole_depth(map: &SideMap) -> usize {
        map.values()
            .filter(|s| !s.is_zero())
            .map(|s| (-s.valuation()).max(0) as usize)
            .max()
            .unwrap_or(0)
    }

    fn bracket(&mut self, i: usize, g: usize, n: usize) -> Result<SideMap> {
        let nj = n - 1;
        let mut out = SideMap::new();
        if g >= 1 {
            if g == 1 && n == 1 {
                out.insert(Vec::new(), self.ram[i].b_diag.clone());
            } else {
                let w = self.omega(g - 1, n + 1)?;
                for (key, c) in &w.terms {
                    let a = self.q_series(i, &key[0]);
                    let b = self.s_series(i, &key[1])?;
                    add_into(&mut out, key[2..].to_vec(), (&a * &b).scale(c));
                }
            }
        }
        for g1 in 0..=g {
            let g2 = g - g1;
            for mask in 0u32..(1 << nj) {
                let i1: Vec<usize> = (0..nj).filter(|j| mask & (1 << j) != 0).collect();
                let i2: Vec<usize> = (0..nj).filter(|j| mask & (1 << j) == 0).collect();
                let (m1, m2) = (i1.len() + 1, i2.len() + 1);
                if (g1 == 0 && m1 == 1) || (g2 == 0 && m2 == 1) {
                    continue;
                }
                let berg1 = g1 == 0 && m1 == 2;
                let berg2 = g2 == 0 && m2 == 2;
                let a = if berg1 { None } else { Some(self.side_map(i, g1, m1, false)?) };
                let b = if berg2 { None } else { Some(self.side_map(i, g2, m2, true)?) };
                let a = match a {
                    Some(a) => a,
                    None => {
                        let cut = b.as_deref().map(Self::pole_depth).unwrap_or(0) + 2;
                        Arc::new(self.bergman_map(i, false, cut))
                    }
                };
                let b = match b {
                    Some(b) => b,
                    None => {
                        let cut = Self::pole_depth(&a) + 2;
                        Arc::new(self.bergman_map(i, true, cut))
                    }
                };
                for (ka, sa) in a.iter() {
                    for (kb, sb) in b.iter() {
                        let mut key = vec![(Rational::zero(), 0u32); nj];
                        for (slot, pole) in i1.iter().zip(ka) {
                            key[*slot] = pole.clone();
                        }
                        for (slot, pole) in i2.iter().zip(kb) {
                            key[*slot] = pole.clone();
                        }
                        add_into(&mut out, key, sa * sb);
                    }
                }
            }
        }
        Ok(out)
    }

    fn compute(&mut self, g: usize, n: usize) -> Result<MultiDifferential> {
        let mut out = MultiDifferential::zero(g, n);
        for i in 0..self.ram.len() {
            let br = self.bracket(i, g, n)?;
            let p = self.ram[i].p.clone();
            for (key, w) in br {
                let l = &self.ram[i].kappa * &w;
                if l.is_zero() && l.precision() > 0 {
                    continue;
                }
                let top = 1 - l.valuation();
                for m in 1..=top {
                    let m = m as usize;
                    let d = &Laurent::monomial(Rational::one(), m as i64) - &self.sigma_pow(i, m);
                    let r = (&d * &l).residue()?;
                    let mut full = Vec::with_capacity(n);
                    full.push((p.clone(), m as u32 + 1));
                    full.extend(key.iter().cloned());
                    out.add_term(full, &r);
                }
            }
        }
        if n == 1 {
            out.add(&logtr_correction(self.curve, g)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Poly, RationalFunction};
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
    fn airy_like_w03() {
        // x = z^2/2, y = z: omega_{0,3} = -dz1 dz2 dz3 / (z1 z2 z3)^2
        let c = SpectralCurve::new(
            CurveFunction::rational(RationalFunction::from_poly(Poly::monomial(rat(1, 2), 2))),
            CurveFunction::z(),
            "airy",
        )
        .unwrap();
        let w = tr_omega(&c, 0, 3).unwrap();
        assert_eq!(w.terms.len(), 1);
        assert_eq!(w.terms.get(&vec![(int(0), 2); 3]), Some(&int(-1)));
        let w11 = tr_omega(&c, 1, 1).unwrap();
        assert_eq!(w11.terms.get(&vec![(int(0), 4)]), Some(&rat(-1, 8)));
        assert_eq!(w11.terms.len(), 1);
        let flipped = TrOptions {
            orientation: KernelOrientation::DeckToPoint,
            ..TrOptions::default()
        };
        let w = tr_omega_with(&c, 0, 3, &flipped).unwrap();
        assert_eq!(w.terms.get(&vec![(int(0), 2); 3]), Some(&int(1)));
    }

    #[test]
    fn harer_zagier_w11_properties() {
        let w = tr_omega(&hz(), 1, 1).unwrap();
        assert!(w.is_residue_free());
        let pts: Vec<Rational> = w.points().into_iter().collect();
        assert_eq!(pts, vec![int(-1), int(1)]);
        assert!(w.max_order_at(&int(1)) <= 4);
    }

    #[test]
    fn guard_and_unavailable() {
        assert!(matches!(tr_omega(&hz(), 0, 2), Err(Error::Precondition(_))));
        assert!(matches!(tr_omega(&hz(), 0, 5), Err(Error::ComplexityGuard(_))));
        let x = CurveFunction::rational(RationalFunction::from_poly(Poly::new(vec![
            int(0),
            int(-2),
            int(0),
            rat(1, 3),
        ])));
        let c = SpectralCurve::new(x, CurveFunction::z(), "r-spin").unwrap();
        assert!(matches!(tr_omega(&c, 1, 1), Err(Error::PathUnavailable(_))));
    }
}
