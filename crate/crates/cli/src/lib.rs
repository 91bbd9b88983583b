//! Command-line front end. Exit codes: 0 success, 1 input or computation
//! error, 2 disagreement between paths or a failed identity.

pub mod args;
pub mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use specrec_core::appendix::appendix_suite;
use specrec_core::catalog::{catalog_get, catalog_list, parse_params, Convention, Params};
use specrec_core::curve::{parse_curve, SpectralCurve};
use specrec_core::duality::free_energy_duality;
use specrec_core::tr::{
    dilaton_with_shift, lemma31_check, linear_loop_check, tr_omega_with, TrOptions,
};
use specrec_core::{Error, Result};

use args::{CatalogAction, Cli, Command, ConventionArg, CurveArgs, Format, FreeEnergyArgs, OmegaArgs, VerifyArgs};
use report::{Cell, FreeEnergyReport, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

pub const TRUNC_ENV: &str = "SPECREC_TRUNC_ORDER";

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Freeenergy(a) => freeenergy(&a),
        Command::VerifyIdentities(a) => verify(&a),
        Command::EmitOmega(a) => emit_omega(&a),
        Command::Catalog {
            action: CatalogAction::List { format },
        } => Ok(Outcome::ok(catalog_text(format))),
    };
    match result {
        Ok(o) => {
            if let Some(path) = &o.path {
                if let Err(e) = std::fs::write(path, &o.text) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return EXIT_INPUT;
                }
            } else {
                let _ = out.write_all(o.text.as_bytes());
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

struct Outcome {
    text: String,
    code: i32,
    path: Option<std::path::PathBuf>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
            path: None,
        }
    }
}

fn tr_options() -> Result<TrOptions> {
    let mut opts = TrOptions::default();
    if let Ok(v) = std::env::var(TRUNC_ENV) {
        let order: i64 = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{TRUNC_ENV}: not an integer: '{v}'")))?;
        if order < 4 {
            return Err(Error::InvalidParameter(format!("{TRUNC_ENV} must be at least 4")));
        }
        opts.initial_order = Some(order);
    }
    Ok(opts)
}

/// A loaded curve, with its catalog identity when it has one.
struct Loaded {
    curve: SpectralCurve,
    catalog: Option<(String, Params)>,
}

fn params_file(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    let table: BTreeMap<String, serde_json::Value> = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?
    } else {
        toml::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?
    };
    let scalar = |v: &serde_json::Value| -> Result<String> {
        match v {
            serde_json::Value::String(s) => Ok(s.clone()),
            serde_json::Value::Number(n) => Ok(n.to_string()),
            _ => Err(Error::Schema(format!("parameter value {v} is not a number or string"))),
        }
    };
    let mut items = Vec::new();
    for (k, v) in &table {
        let text = match v {
            serde_json::Value::Array(xs) => xs.iter().map(scalar).collect::<Result<Vec<_>>>()?.join(","),
            other => scalar(other)?,
        };
        items.push(format!("{k}={text}"));
    }
    Ok(items)
}

fn load_curve(name: &str, params: &[String], file: Option<&Path>) -> Result<Loaded> {
    let path = Path::new(name);
    let looks_like_file = path.exists()
        || name.ends_with(".json")
        || name.ends_with(".toml")
        || name.contains(std::path::MAIN_SEPARATOR);
    if looks_like_file {
        if !params.is_empty() || file.is_some() {
            return Err(Error::InvalidParameter(
                "catalog parameters given with a curve file".into(),
            ));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Schema(format!("{name}: {e}")))?;
        return Ok(Loaded {
            curve: parse_curve(&text)?,
            catalog: None,
        });
    }
    // file < flags
    let mut items = match file {
        Some(f) => params_file(f)?,
        None => Vec::new(),
    };
    items.extend(params.iter().cloned());
    let p = parse_params(&items)?;
    let entry = catalog_get(name, &p)?;
    Ok(Loaded {
        curve: entry.curve,
        catalog: Some((entry.name, entry.parameters)),
    })
}

fn load(a: &CurveArgs) -> Result<Loaded> {
    load_curve(&a.curve, &a.params, a.params_file.as_deref())
}

fn freeenergy(a: &FreeEnergyArgs) -> Result<Outcome> {
    if a.gmax < 2 {
        return Err(Error::InvalidParameter("--gmax must be at least 2".into()));
    }
    let opts = tr_options()?;
    let loaded = load(&a.curve)?;
    let convention = match a.convention {
        ConventionArg::Printed => Convention::Printed,
        ConventionArg::Reconciled => Convention::Reconciled,
    };
    let mut timing: BTreeMap<&'static str, u128> = BTreeMap::new();
    let mut rows = Vec::new();
    for g in 2..=a.gmax {
        let tr = if a.method.tr() {
            let t = Instant::now();
            let c = match dilaton_with_shift(&loaded.curve, g, &Default::default(), &opts) {
                Ok(v) => Cell::Value(v.value),
                Err(Error::PathUnavailable(_)) => Cell::Unavailable("PATH_UNAVAILABLE"),
                Err(e) => return Err(e),
            };
            *timing.entry("tr").or_default() += t.elapsed().as_millis();
            c
        } else {
            Cell::NotRequested
        };
        let duality = if a.method.duality() {
            let t = Instant::now();
            let c = match free_energy_duality(&loaded.curve, g) {
                Ok(v) => Cell::Value(v.value),
                Err(Error::UnsupportedDual(_)) => Cell::Unavailable("UNSUPPORTED_DUAL"),
                Err(e) => return Err(e),
            };
            *timing.entry("duality").or_default() += t.elapsed().as_millis();
            c
        } else {
            Cell::NotRequested
        };
        let closed = if a.method.closed_form() {
            match &loaded.catalog {
                Some((name, p)) => {
                    let cf = specrec_core::catalog::closed_form_eval(name, p, g)?;
                    Cell::Value(cf.value(convention).clone())
                }
                None => Cell::Unavailable("NONE"),
            }
        } else {
            Cell::NotRequested
        };
        rows.push(Row::new(g, tr, duality, closed));
    }
    let agree = rows.iter().all(|r| r.agree);
    let rep = FreeEnergyReport {
        curve: loaded.curve.label.clone(),
        convention: match convention {
            Convention::Printed => "printed",
            Convention::Reconciled => "reconciled",
        },
        rows,
        agree,
        timing_ms: if a.timing { Some(timing) } else { None },
    };
    let text = match a.format {
        Format::Json => rep.to_json(),
        Format::Csv => rep.to_csv(),
        Format::Md => rep.to_markdown(),
    };
    Ok(Outcome {
        text,
        code: if agree { EXIT_OK } else { EXIT_MISMATCH },
        path: a.output.clone(),
    })
}

#[derive(Serialize)]
struct LoopRecord {
    check: &'static str,
    g: usize,
    n: usize,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<BTreeMap<&'static str, String>>,
}

fn loop_suite(curve: &SpectralCurve, g_max: usize, opts: &TrOptions) -> Result<Vec<LoopRecord>> {
    let mut recs = Vec::new();
    let rec = |check, g, n, pass| LoopRecord {
        check,
        g,
        n,
        pass,
        detail: None,
    };
    for (g, n) in [(0, 3), (0, 4), (1, 2)] {
        let w = tr_omega_with(curve, g, n, opts)?;
        recs.push(rec("symmetry", g, n, w.is_symmetric()));
    }
    for g in 1..=g_max {
        let w = tr_omega_with(curve, g, 1, opts)?;
        recs.push(rec("residue-free", g, 1, w.is_residue_free()));
        recs.push(rec("linear-loop", g, 1, linear_loop_check(curve, g, 1)?));
    }
    for g in 2..=g_max {
        let r = lemma31_check(curve, g)?;
        let mut d = BTreeMap::new();
        d.insert("lhs", r.lhs.to_string());
        d.insert("rhs", r.rhs.to_string());
        d.insert("loop_form", r.loop_form.to_string());
        recs.push(LoopRecord {
            check: "lemma-3.1",
            g,
            n: 1,
            pass: r.holds,
            detail: Some(d),
        });
    }
    Ok(recs)
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let (appendix, loops) = match a.suite.as_str() {
        "appendix" => (true, false),
        "loop-equations" => (false, true),
        "all" => (true, true),
        s => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite '{s}' (appendix, loop-equations, all)"
            )))
        }
    };
    if a.gmax < 1 {
        return Err(Error::InvalidParameter("--gmax must be at least 1".into()));
    }
    let mut doc = serde_json::Map::new();
    let mut pass = true;
    if appendix {
        let r = appendix_suite(a.gmax, 5)?;
        pass &= r.passed();
        doc.insert("appendix".into(), serde_json::to_value(&r).expect("serializable"));
    }
    if loops {
        let opts = tr_options()?;
        let loaded = load_curve(&a.curve, &a.params, None)?;
        let recs = loop_suite(&loaded.curve, a.gmax, &opts)?;
        pass &= recs.iter().all(|r| r.pass);
        let mut m = serde_json::Map::new();
        m.insert("curve".into(), loaded.curve.label.clone().into());
        m.insert("records".into(), serde_json::to_value(&recs).expect("serializable"));
        doc.insert("loop_equations".into(), m.into());
    }
    doc.insert("pass".into(), pass.into());
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    Ok(Outcome {
        text,
        code: if pass { EXIT_OK } else { EXIT_MISMATCH },
        path: a.output.clone(),
    })
}

fn emit_omega(a: &OmegaArgs) -> Result<Outcome> {
    let loaded = load(&a.curve)?;
    let label = loaded.curve.label.clone();
    let bergman = a.g == 0 && a.n == 2;
    let terms = if bergman {
        None
    } else {
        let opts = tr_options()?;
        Some(tr_omega_with(&loaded.curve, a.g, a.n, &opts)?)
    };
    let text = match a.format {
        Format::Json => {
            let mut m = serde_json::Map::new();
            m.insert("curve".into(), label.into());
            m.insert("g".into(), a.g.into());
            m.insert("n".into(), a.n.into());
            match &terms {
                None => {
                    m.insert("bergman".into(), "dz1*dz2/(z1-z2)^2".into());
                }
                Some(w) => {
                    m.insert("terms".into(), w.to_json());
                }
            }
            let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(m)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv | Format::Md => {
            let md = a.format == Format::Md;
            let mut s = if md {
                String::from("| points | orders | coeff |\n|---|---|---|\n")
            } else {
                String::from("points,orders,coeff\n")
            };
            match &terms {
                None => s.push_str(if md {
                    "| bergman | dz1*dz2/(z1-z2)^2 | 1 |\n"
                } else {
                    "bergman,dz1*dz2/(z1-z2)^2,1\n"
                }),
                Some(w) => {
                    for (key, c) in &w.terms {
                        let pts: Vec<String> = key.iter().map(|(p, _)| specrec_core::algebra::format_rational(p)).collect();
                        let ords: Vec<String> = key.iter().map(|(_, o)| o.to_string()).collect();
                        let c = specrec_core::algebra::format_rational(c);
                        if md {
                            s.push_str(&format!("| {} | {} | {} |\n", pts.join(" "), ords.join(" "), c));
                        } else {
                            s.push_str(&format!("{},{},{}\n", pts.join(";"), ords.join(";"), c));
                        }
                    }
                }
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: EXIT_OK,
        path: a.output.clone(),
    })
}

fn catalog_text(format: Format) -> String {
    let list = catalog_list();
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&list).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv | Format::Md => {
            let md = format == Format::Md;
            let mut s = if md {
                String::from("| name | curve | parameters | closed form |\n|---|---|---|---|\n")
            } else {
                String::from("name,curve,parameters,closed_form\n")
            };
            for c in list {
                let ps: Vec<String> = c
                    .parameters
                    .iter()
                    .map(|p| match p.default {
                        Some(d) => format!("{}={d}", p.name),
                        None => p.name.to_string(),
                    })
                    .collect();
                if md {
                    s.push_str(&format!("| {} | {} | {} | {} |\n", c.name, c.curve, ps.join(" "), c.closed_form));
                } else {
                    s.push_str(&format!("{},\"{}\",\"{}\",{}\n", c.name, c.curve, ps.join(" "), c.closed_form));
                }
            }
            s
        }
    }
}
