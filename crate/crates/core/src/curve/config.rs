//! Curve configuration documents (JSON or TOML).
//!
//! ```json
//! { "label": "hz",
//!   "x": { "rational": { "num": ["1", "0", "1"], "den": ["0", "1"] } },
//!   "y": { "rational": { "num": ["0", "1"] } },
//!   "framing": 0 }
//! ```

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::function::{CurveFunction, CurveKind};
use super::spectral::SpectralCurve;
use crate::algebra::{format_rational, parse_rational, Poly, Rational, RationalFunction};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RationalSpec {
    pub num: Vec<String>,
    #[serde(default = "one_list")]
    pub den: Vec<String>,
}

fn one_list() -> Vec<String> {
    vec!["1".into()]
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub a: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConstantSpec {
    pub arg: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum FunctionSpec {
    Kind(KindSpec),
    Plain(PlainSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct KindSpec {
    pub kind: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PlainSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<RationalSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub logs: Vec<AtomSpec>,
    /// Inert constants `coeff * log(arg)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub log_constants: Vec<ConstantSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub label: String,
    pub x: FunctionSpec,
    pub y: FunctionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<i64>,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn parse_list(v: &[String], what: &str) -> Result<Vec<Rational>> {
    v.iter()
        .map(|s| parse_rational(s).map_err(|_| schema(format!("{what}: bad rational '{s}'"))))
        .collect()
}

fn build_function(spec: &FunctionSpec, name: &str) -> Result<CurveFunction> {
    match spec {
        FunctionSpec::Kind(k) if k.kind == "log_z" => Ok(CurveFunction::log_z()),
        FunctionSpec::Kind(k) => Err(schema(format!("{name}.kind: unknown kind '{}'", k.kind))),
        FunctionSpec::Plain(p) => {
            let rational = match &p.rational {
                Some(r) => {
                    let num = Poly::new(parse_list(&r.num, &format!("{name}.rational.num"))?);
                    let den = Poly::new(parse_list(&r.den, &format!("{name}.rational.den"))?);
                    if den.is_zero() {
                        return Err(schema(format!("{name}.rational.den is zero")));
                    }
                    RationalFunction::new(num, den)?
                }
                None => RationalFunction::zero(),
            };
            let mut atoms = Vec::new();
            for at in &p.logs {
                let a = parse_rational(&at.a).map_err(|_| schema(format!("{name}.logs.a: '{}'", at.a)))?;
                let c = parse_rational(&at.coeff)
                    .map_err(|_| schema(format!("{name}.logs.coeff: '{}'", at.coeff)))?;
                atoms.push((a, c));
            }
            let mut f = CurveFunction::with_logs(rational, atoms);
            for c in &p.log_constants {
                let arg = parse_rational(&c.arg).map_err(|_| schema(format!("{name}.log_constants.arg: '{}'", c.arg)))?;
                let k = parse_rational(&c.coeff)
                    .map_err(|_| schema(format!("{name}.log_constants.coeff: '{}'", c.coeff)))?;
                if arg.is_zero() {
                    return Err(schema(format!("{name}.log_constants.arg must be nonzero")));
                }
                f.log_constants.push((k, arg));
            }
            Ok(f)
        }
    }
}

impl CurveConfig {
    pub fn build(&self) -> Result<SpectralCurve> {
        let x = build_function(&self.x, "x")?;
        let y = build_function(&self.y, "y")?;
        if y.kind == CurveKind::Plain && !y.logs.is_empty() {
            return Err(schema(
                "y: logarithmic atoms in y are not supported; use kind log_z or a rational y",
            ));
        }
        let curve = SpectralCurve::new(x, y, self.label.clone())?;
        match self.framing {
            Some(f) if f != 0 => curve.framed(f),
            _ => Ok(curve),
        }
    }

    /// Config describing an existing curve.
    pub fn from_curve(curve: &SpectralCurve) -> Self {
        CurveConfig {
            label: curve.label.clone(),
            x: function_spec(&curve.x),
            y: function_spec(&curve.y),
            framing: None,
        }
    }
}

fn function_spec(f: &CurveFunction) -> FunctionSpec {
    if f.kind == CurveKind::LogOfZ {
        return FunctionSpec::Kind(KindSpec {
            kind: "log_z".into(),
        });
    }
    let list = |p: &Poly| p.coeffs().iter().map(format_rational).collect::<Vec<_>>();
    FunctionSpec::Plain(PlainSpec {
        rational: Some(RationalSpec {
            num: list(f.rational.num()),
            den: list(f.rational.den()),
        }),
        logs: f
            .logs
            .iter()
            .map(|at| AtomSpec {
                a: format_rational(&at.branch_point),
                coeff: format_rational(&at.coefficient),
            })
            .collect(),
        log_constants: f
            .log_constants
            .iter()
            .map(|(c, a)| ConstantSpec {
                arg: format_rational(a),
                coeff: format_rational(c),
            })
            .collect(),
    })
}

pub fn parse_curve_json(text: &str) -> Result<SpectralCurve> {
    let cfg: CurveConfig = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    cfg.build()
}

pub fn parse_curve_toml(text: &str) -> Result<SpectralCurve> {
    let cfg: CurveConfig = toml::from_str(text).map_err(|e| schema(e.to_string()))?;
    cfg.build()
}

/// Dispatches on the first non-blank character: `{` means JSON.
pub fn parse_curve(text: &str) -> Result<SpectralCurve> {
    if text.trim_start().starts_with('{') {
        parse_curve_json(text)
    } else {
        parse_curve_toml(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::curve::Side;

    const HZ: &str = r#"{"label": "hz",
        "x": {"rational": {"num": ["1", "0", "1"], "den": ["0", "1"]}},
        "y": {"rational": {"num": ["0", "1"]}}}"#;

    #[test]
    fn harer_zagier_from_json() {
        let c = parse_curve(HZ).unwrap();
        assert_eq!(c.ramification_points(Side::X).unwrap(), vec![int(-1), int(1)]);
        let back = serde_json::to_string(&CurveConfig::from_curve(&c)).unwrap();
        assert_eq!(parse_curve(&back).unwrap(), c);
    }

    #[test]
    fn gaiotto_from_toml() {
        let text = r#"
label = "gaiotto"
[x]
logs = [{a = "-1", coeff = "1"}, {a = "1", coeff = "1"}]
log_constants = [{arg = "2", coeff = "2"}]
[y]
rational = {num = ["0", "1"]}
"#;
        let c = parse_curve(text).unwrap();
        assert_eq!(c.ramification_points(Side::X).unwrap(), vec![int(0)]);
    }

    #[test]
    fn schema_errors() {
        let cubic = r#"{"label": "c", "x": {"rational": {"num": ["0","0","0","1"]}}, "y": {"rational": {"num": ["0","1"]}}}"#;
        assert!(matches!(parse_curve(cubic), Err(Error::NonSimpleRamification { .. })));
        let extra = r#"{"label": "c", "x": {"kind": "log_z"}, "y": {"kind": "log_z"}, "colour": 1}"#;
        assert!(matches!(parse_curve(extra), Err(Error::Schema(_))));
        let ylog = r#"{"label": "c", "x": {"rational": {"num": ["0","1"]}}, "y": {"logs": [{"a": "1", "coeff": "1"}]}}"#;
        assert!(matches!(parse_curve(ylog), Err(Error::Schema(_))));
        let irr = r#"{"label": "c", "x": {"rational": {"num": ["1"], "den": ["1","0","1"]}}, "y": {"rational": {"num": ["0","1"]}}}"#;
        assert!(matches!(parse_curve(irr), Err(Error::IrrationalPole { .. })));
    }

    #[test]
    fn framing_rewrites_x() {
        let text = r#"{"label": "f", "x": {"rational": {"num": ["0","0","1/2"]}}, "y": {"kind": "log_z"}, "framing": 1}"#;
        let c = parse_curve(text).unwrap();
        assert_eq!(c.x.logs.len(), 1);
    }
}
