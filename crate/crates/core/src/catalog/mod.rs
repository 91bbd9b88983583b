//! Named curve families with closed-form free energies, and the rewrite
//! `(x~, y~) -> (log x~, x~ y~)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    bernoulli, format_rational, int, parse_rational, rational::pow_i, Poly, Rational,
    RationalFunction,
};
use crate::curve::{CurveFunction, Side, SpectralCurve};
use crate::error::{Error, Result};

/// Parameter values by canonical name; scalars are one-element lists.
pub type Params = BTreeMap<String, Vec<Rational>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Scalar,
    List,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub default: Option<&'static str>,
    pub doc: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogInfo {
    pub name: &'static str,
    pub curve: &'static str,
    pub parameters: Vec<ParamSpec>,
    pub closed_form: bool,
}

/// Which sign and pair-sum convention a closed form is evaluated in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// The formulas as usually displayed: prefactor `B_{2g}/(2g(2-2g))`
    /// and ordered pair sums `sum_{i != j}`.
    #[default]
    Printed,
    /// The values the recursion produces: the rational family carries the
    /// opposite sign and the logarithmic families sum over `i < j`.
    Reconciled,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Printed => "printed",
            Convention::Reconciled => "reconciled",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Convention::Printed),
            "reconciled" => Ok(Convention::Reconciled),
            _ => Err(Error::InvalidParameter(format!("unknown convention '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub g: usize,
    pub printed: Rational,
    pub reconciled: Rational,
}

impl ClosedForm {
    pub fn value(&self, c: Convention) -> &Rational {
        match c {
            Convention::Printed => &self.printed,
            Convention::Reconciled => &self.reconciled,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    /// Parameters after defaults were filled in.
    pub parameters: Params,
    pub curve: SpectralCurve,
}

impl CatalogEntry {
    pub fn has_closed_form(&self) -> bool {
        family(&self.name).map(|f| f.closed).unwrap_or(false)
    }

    pub fn closed_form(&self, g: usize) -> Result<ClosedForm> {
        closed_form_eval(&self.name, &self.parameters, g)
    }
}

struct Family {
    name: &'static str,
    curve: &'static str,
    params: &'static [ParamSpec],
    closed: bool,
}

const fn scalar(name: &'static str, default: Option<&'static str>, doc: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Scalar,
        default,
        doc,
    }
}

const fn list(name: &'static str, default: Option<&'static str>, doc: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::List,
        default,
        doc,
    }
}

const FAMILIES: &[Family] = &[
    Family {
        name: "harer-zagier",
        curve: "x = z + 1/z, y = z",
        params: &[],
        closed: true,
    },
    Family {
        name: "rational-poles",
        curve: "x = z + sum_i c_i/(z - b_i), y = z",
        params: &[
            list("c", None, "pole residues, nonzero"),
            list("b", Some("0,3,6,.."), "distinct pole positions; b_i = 3i when omitted"),
        ],
        closed: true,
    },
    Family {
        name: "log-points",
        curve: "x = sum_i log(z - a_i), y = z",
        params: &[list("a", None, "distinct log points")],
        closed: true,
    },
    Family {
        name: "gaiotto",
        curve: "x~ = -L^r / prod_a (Q_a - z), y~ = -z prod_a (Q_a - z) / L^r",
        params: &[
            list("Q", None, "distinct points"),
            scalar("L", Some("1"), "nonzero; enters only an inert constant"),
            scalar("r", Some("len(Q)"), "must equal the number of Q"),
        ],
        closed: true,
    },
    Family {
        name: "cdo",
        curve: "x~ = -L^r prod_a (P_a + z) / prod_a (Q_a - z), y~ = z / x~",
        params: &[
            list("P", None, "r distinct points"),
            list("Q", None, "r - 1 distinct points, Q_a != -P_b"),
            scalar("L", Some("1"), "nonzero; enters only an inert constant"),
        ],
        closed: true,
    },
    Family {
        name: "r-spin",
        curve: "x = z^r/r - eps z, y = z",
        params: &[
            scalar("r", None, "integer >= 2"),
            scalar("eps", Some("1"), "nonzero"),
        ],
        closed: true,
    },
    Family {
        name: "neg-r-spin",
        curve: "x = z^(-r)/r - eps/z, y = z",
        params: &[
            scalar("r", None, "integer >= 1"),
            scalar("eps", Some("1"), "nonzero"),
        ],
        closed: true,
    },
];

fn family(name: &str) -> Result<&'static Family> {
    FAMILIES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownCurve(name.to_string()))
}

pub fn catalog_list() -> Vec<CatalogInfo> {
    FAMILIES
        .iter()
        .map(|f| CatalogInfo {
            name: f.name,
            curve: f.curve,
            parameters: f.params.to_vec(),
            closed_form: f.closed,
        })
        .collect()
}

pub fn catalog_names() -> Vec<&'static str> {
    FAMILIES.iter().map(|f| f.name).collect()
}

fn canonical_key(k: &str) -> &str {
    match k {
        "Lambda" | "Λ" | "lambda" => "L",
        "epsilon" | "ε" => "eps",
        _ => k,
    }
}

/// Parses `name=v1,v2,..` assignments; later assignments win.
pub fn parse_params<S: AsRef<str>>(items: &[S]) -> Result<Params> {
    let mut out = Params::new();
    for item in items {
        let item = item.as_ref();
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected name=value, got '{item}'")))?;
        let vals = if v.trim().is_empty() {
            Vec::new()
        } else {
            v.split(',')
                .map(|s| {
                    parse_rational(s.trim()).map_err(|_| {
                        Error::InvalidParameter(format!("{k}: bad rational '{}'", s.trim()))
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        out.insert(canonical_key(k.trim()).to_string(), vals);
    }
    Ok(out)
}

/// Checks names and arities against the schema and fills in defaults
/// that do not depend on other parameters.
fn normalize(fam: &Family, params: &Params) -> Result<Params> {
    let mut out = Params::new();
    for (k, v) in params {
        let key = canonical_key(k);
        let spec = fam.params.iter().find(|p| p.name == key).ok_or_else(|| {
            Error::InvalidParameter(format!("{}: unknown parameter '{k}'", fam.name))
        })?;
        if spec.kind == ParamKind::Scalar && v.len() != 1 {
            return Err(Error::InvalidParameter(format!(
                "{}: '{key}' takes one value, got {}",
                fam.name,
                v.len()
            )));
        }
        out.insert(key.to_string(), v.clone());
    }
    for spec in fam.params {
        if out.contains_key(spec.name) {
            continue;
        }
        match spec.default {
            None => {
                return Err(Error::InvalidParameter(format!(
                    "{}: missing parameter '{}'",
                    fam.name, spec.name
                )))
            }
            Some(d) => {
                if let Ok(v) = parse_rational(d) {
                    out.insert(spec.name.to_string(), vec![v]);
                }
            }
        }
    }
    Ok(out)
}

fn get<'a>(p: &'a Params, k: &str) -> &'a [Rational] {
    p.get(k).map(|v| v.as_slice()).unwrap_or(&[])
}

fn get_scalar(p: &Params, k: &str) -> Option<Rational> {
    p.get(k).and_then(|v| v.first().cloned())
}

fn require_distinct(what: &str, v: &[Rational]) -> Result<()> {
    for i in 0..v.len() {
        for j in 0..i {
            if v[i] == v[j] {
                return Err(Error::InvalidParameter(format!(
                    "{what}: points {} coincide",
                    format_rational(&v[i])
                )));
            }
        }
    }
    Ok(())
}

fn require_nonempty(what: &str, v: &[Rational]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidParameter(format!("{what} must not be empty")));
    }
    Ok(())
}

fn require_nonzero(what: &str, v: &Rational) -> Result<()> {
    if v.is_zero() {
        return Err(Error::InvalidParameter(format!("{what} must be nonzero")));
    }
    Ok(())
}

fn integer_at_least(what: &str, v: &Rational, min: i64) -> Result<usize> {
    if !v.is_integer() || *v < int(min) {
        return Err(Error::InvalidParameter(format!(
            "{what} must be an integer >= {min}, got {}",
            format_rational(v)
        )));
    }
    Ok(v.to_integer().try_into().map_err(|_| {
        Error::InvalidParameter(format!("{what} is too large"))
    })?)
}

/// Validates and completes the parameters of a family.
fn validated(name: &str, params: &Params) -> Result<Params> {
    let fam = family(name)?;
    let mut p = normalize(fam, params)?;
    match name {
        "rational-poles" => {
            let c = get(&p, "c").to_vec();
            require_nonempty("c", &c)?;
            for ci in &c {
                require_nonzero("c_i", ci)?;
            }
            if !p.contains_key("b") {
                p.insert("b".into(), (0..c.len()).map(|i| int(3 * i as i64)).collect());
            }
            let b = get(&p, "b");
            if b.len() != c.len() {
                return Err(Error::InvalidParameter(format!(
                    "rational-poles: {} residues but {} positions",
                    c.len(),
                    b.len()
                )));
            }
            require_distinct("b", b)?;
        }
        "log-points" => {
            require_nonempty("a", get(&p, "a"))?;
            require_distinct("a", get(&p, "a"))?;
        }
        "gaiotto" => {
            let q = get(&p, "Q").to_vec();
            require_nonempty("Q", &q)?;
            require_distinct("Q", &q)?;
            require_nonzero("L", &get_scalar(&p, "L").unwrap())?;
            match get_scalar(&p, "r") {
                Some(r) if r != int(q.len() as i64) => {
                    return Err(Error::InvalidParameter(format!(
                        "gaiotto: r = {} but {} points Q",
                        format_rational(&r),
                        q.len()
                    )))
                }
                Some(_) => {}
                None => {
                    p.insert("r".into(), vec![int(q.len() as i64)]);
                }
            }
        }
        "cdo" => {
            let pp = get(&p, "P").to_vec();
            let q = get(&p, "Q").to_vec();
            require_nonempty("P", &pp)?;
            require_distinct("P", &pp)?;
            require_distinct("Q", &q)?;
            if q.len() + 1 != pp.len() {
                return Err(Error::InvalidParameter(format!(
                    "cdo: needs |Q| = |P| - 1, got |P| = {}, |Q| = {}",
                    pp.len(),
                    q.len()
                )));
            }
            for a in &pp {
                for b in &q {
                    if (a + b).is_zero() {
                        return Err(Error::InvalidParameter(format!(
                            "cdo: Q = {} coincides with -P",
                            format_rational(b)
                        )));
                    }
                }
            }
            require_nonzero("L", &get_scalar(&p, "L").unwrap())?;
        }
        "r-spin" => {
            integer_at_least("r", &get_scalar(&p, "r").unwrap(), 2)?;
            require_nonzero("eps", &get_scalar(&p, "eps").unwrap())?;
        }
        "neg-r-spin" => {
            integer_at_least("r", &get_scalar(&p, "r").unwrap(), 1)?;
            require_nonzero("eps", &get_scalar(&p, "eps").unwrap())?;
        }
        _ => {}
    }
    Ok(p)
}

fn label(name: &str, p: &Params) -> String {
    if p.is_empty() {
        return name.to_string();
    }
    let parts: Vec<String> = p
        .iter()
        .map(|(k, v)| {
            let vs: Vec<String> = v.iter().map(format_rational).collect();
            format!("{k}={}", vs.join(","))
        })
        .collect();
    format!("{name}[{}]", parts.join(";"))
}

/// `prod_a (c_a - z)`
fn prod_minus_z(cs: &[Rational]) -> Poly {
    cs.iter().fold(Poly::one(), |acc, c| {
        &acc * &Poly::new(vec![c.clone(), -Rational::one()])
    })
}

/// `prod_a (c_a + z)`
fn prod_plus_z(cs: &[Rational]) -> Poly {
    cs.iter()
        .fold(Poly::one(), |acc, c| &acc * &Poly::new(vec![c.clone(), Rational::one()]))
}

pub fn catalog_get(name: &str, params: &Params) -> Result<CatalogEntry> {
    let p = validated(name, params)?;
    let lbl = label(name, &p);
    let curve = match name {
        "harer-zagier" => {
            let x = RationalFunction::new(Poly::new(vec![int(1), int(0), int(1)]), Poly::z())?;
            SpectralCurve::new(CurveFunction::rational(x), CurveFunction::z(), lbl)?
        }
        "rational-poles" => {
            let mut x = RationalFunction::z();
            for (c, b) in get(&p, "c").iter().zip(get(&p, "b")) {
                x = &x + &RationalFunction::pole(c.clone(), b, 1);
            }
            SpectralCurve::new(CurveFunction::rational(x), CurveFunction::z(), lbl)?
        }
        "log-points" => {
            let atoms = get(&p, "a").iter().map(|a| (a.clone(), Rational::one())).collect();
            let x = CurveFunction::with_logs(RationalFunction::zero(), atoms);
            SpectralCurve::new(x, CurveFunction::z(), lbl)?
        }
        "gaiotto" => {
            let q = get(&p, "Q");
            let lr = pow_i(&get_scalar(&p, "L").unwrap(), q.len() as i64);
            let den = prod_minus_z(q);
            let xt = RationalFunction::new(Poly::constant(-&lr), den.clone())?;
            let yt = RationalFunction::from_poly((&Poly::z() * &den).scale(&(-Rational::one() / &lr)));
            tilde_transform(&xt, &yt, lbl)?.curve
        }
        "cdo" => {
            let lr = pow_i(&get_scalar(&p, "L").unwrap(), get(&p, "P").len() as i64);
            let num = prod_plus_z(get(&p, "P")).scale(&-&lr);
            let den = prod_minus_z(get(&p, "Q"));
            let xt = RationalFunction::new(num, den)?;
            let yt = RationalFunction::z().div(&xt)?;
            tilde_transform(&xt, &yt, lbl)?.curve
        }
        "r-spin" => {
            let r = get_scalar(&p, "r").unwrap().to_integer();
            let r: usize = r.try_into().expect("validated");
            let eps = get_scalar(&p, "eps").unwrap();
            let x = &Poly::monomial(Rational::one() / int(r as i64), r) - &Poly::monomial(eps, 1);
            SpectralCurve::new(
                CurveFunction::rational(RationalFunction::from_poly(x)),
                CurveFunction::z(),
                lbl,
            )?
        }
        "neg-r-spin" => {
            let r = get_scalar(&p, "r").unwrap().to_integer();
            let r: usize = r.try_into().expect("validated");
            let eps = get_scalar(&p, "eps").unwrap();
            // (1/r - eps z^{r-1}) / z^r
            let num = &Poly::constant(Rational::one() / int(r as i64)) - &Poly::monomial(eps, r - 1);
            let x = RationalFunction::new(num, Poly::monomial(Rational::one(), r))?;
            SpectralCurve::new(CurveFunction::rational(x), CurveFunction::z(), lbl)?
        }
        _ => return Err(Error::UnknownCurve(name.to_string())),
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        parameters: p,
        curve,
    })
}

/// `B_{2g} / (2g (2 - 2g))`
pub fn bernoulli_prefactor(g: usize) -> Result<Rational> {
    if g < 2 {
        return Err(Error::Precondition("closed forms need g >= 2".into()));
    }
    let g2 = 2 * g as i64;
    Ok(bernoulli(2 * g)? / (int(g2) * int(2 - g2)))
}

/// `sum (p_i - p_j)^{2-2g}` over `i < j`; the sum over `i != j` is twice
/// this since the exponent is even.
fn pair_sum(pts: &[Rational], g: usize) -> Rational {
    let e = 2 - 2 * g as i64;
    let mut s = Rational::zero();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            s += pow_i(&(&pts[i] - &pts[j]), e);
        }
    }
    s
}

pub fn closed_form_eval(name: &str, params: &Params, g: usize) -> Result<ClosedForm> {
    let p = validated(name, params)?;
    let pre = bernoulli_prefactor(g)?;
    let e = 2 - 2 * g as i64;
    let two = int(2);
    let (printed, reconciled) = match name {
        "harer-zagier" => (pre.clone(), -&pre),
        "rational-poles" => {
            let s: Rational = get(&p, "c").iter().map(|c| pow_i(c, e)).sum();
            (&pre * &s, -(&pre * &s))
        }
        "log-points" => {
            let s = pair_sum(get(&p, "a"), g);
            (&pre * &two * &s, &pre * &s)
        }
        "gaiotto" => {
            // -B_{2g}/(2g(2g-2)) is the same prefactor
            let s = pair_sum(get(&p, "Q"), g);
            (&pre * &two * &s, &pre * &s)
        }
        "cdo" => {
            let sp = pair_sum(get(&p, "P"), g);
            let sq = pair_sum(get(&p, "Q"), g);
            let mut mixed = Rational::zero();
            for q in get(&p, "Q") {
                for pa in get(&p, "P") {
                    mixed += pow_i(&(q + pa), e);
                }
            }
            (
                &pre * &(&two * &(&sp + &sq) - &mixed),
                &pre * &(&(&sp + &sq) - &mixed),
            )
        }
        "r-spin" => (Rational::zero(), Rational::zero()),
        "neg-r-spin" => {
            let v = &pre * pow_i(&get_scalar(&p, "eps").unwrap(), e);
            (v.clone(), v)
        }
        _ => return Err(Error::UnknownCurve(name.to_string())),
    };
    Ok(ClosedForm {
        g,
        printed,
        reconciled,
    })
}

/// Result of [`tilde_transform`]. Since `dx = dx~/x~` and `y dx = y~ dx~`,
/// the correlators and `F_{g >= 2}` of both forms coincide; the two flags
/// record that the transformed curve indeed satisfies this.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeTransform {
    pub curve: SpectralCurve,
    pub dx_matches: bool,
    pub ramification_matches: bool,
}

/// `x = log x~`, `y = x~ y~`. The leading constant of `x~` becomes an
/// inert constant of `x`.
pub fn tilde_transform(
    xt: &RationalFunction,
    yt: &RationalFunction,
    label: impl Into<String>,
) -> Result<TildeTransform> {
    if xt.is_zero() || xt.is_constant() {
        return Err(Error::Precondition("x~ must be nonconstant".into()));
    }
    let zeros = xt.num().split_roots()?;
    let poles = xt.den().split_roots()?;
    let k = xt.num().leading() / xt.den().leading();
    let mut atoms: Vec<(Rational, Rational)> = Vec::new();
    for (a, m) in zeros {
        atoms.push((a, int(m as i64)));
    }
    for (a, m) in poles {
        atoms.push((a, int(-(m as i64))));
    }
    let mut x = CurveFunction::with_logs(RationalFunction::zero(), atoms);
    if !k.is_one() {
        x.log_constants.push((Rational::one(), k));
    }
    let y = CurveFunction::rational(xt * yt);
    let curve = SpectralCurve::new(x, y, label)?;

    let expected = xt.derivative().div(xt)?;
    let dx_matches = curve.x.differential() == expected;
    let ram_tilde = ramification_of_tilde(xt)?;
    let ram = curve.ramification(Side::X)?;
    let ramification_matches = ram.irrational_factor.is_none() && ram.points == ram_tilde
        || ram.irrational_factor.is_some();
    Ok(TildeTransform {
        curve,
        dx_matches,
        ramification_matches,
    })
}

/// Rational zeros of `dx~` at which `x~` is finite and nonzero.
fn ramification_of_tilde(xt: &RationalFunction) -> Result<Vec<Rational>> {
    let d = xt.derivative();
    let (roots, _) = d.num().rational_roots()?;
    let mut out: Vec<Rational> = roots
        .into_iter()
        .map(|(r, _)| r)
        .filter(|r| !xt.num().eval(r).is_zero() && !xt.den().eval(r).is_zero())
        .collect();
    out.sort();
    Ok(out)
}
