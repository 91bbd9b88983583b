//! Free-energy report rows and their JSON, CSV and Markdown renderings.

use std::collections::BTreeMap;

use serde::Serialize;
use specrec_core::algebra::{format_rational, Rational};

/// One path's value for one genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Value(Rational),
    /// The path cannot run on this curve; holds the marker.
    Unavailable(&'static str),
    NotRequested,
}

impl Cell {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Cell::Value(v) => Some(v),
            _ => None,
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Value(v) => format_rational(v),
            Cell::Unavailable(m) => m.to_string(),
            Cell::NotRequested => "-".to_string(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Value(v) => s.serialize_str(&format_rational(v)),
            Cell::Unavailable(m) => s.serialize_str(m),
            Cell::NotRequested => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub g: usize,
    pub tr: Cell,
    pub duality: Cell,
    pub closed_form: Cell,
    pub agree: bool,
}

impl Row {
    pub fn new(g: usize, tr: Cell, duality: Cell, closed_form: Cell) -> Self {
        let vals: Vec<&Rational> = [&tr, &duality, &closed_form]
            .into_iter()
            .filter_map(Cell::value)
            .collect();
        let agree = vals.windows(2).all(|w| w[0] == w[1]);
        Row {
            g,
            tr,
            duality,
            closed_form,
            agree,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeEnergyReport {
    pub curve: String,
    pub convention: &'static str,
    pub rows: Vec<Row>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<&'static str, u128>>,
}

impl FreeEnergyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("g,tr,duality,closed_form,agree\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                r.g,
                r.tr.text(),
                r.duality.text(),
                r.closed_form.text(),
                r.agree
            ));
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("### {} ({} closed forms)\n\n", self.curve, self.convention);
        s.push_str("| g | tr | duality | closed form | agree |\n|---|---|---|---|---|\n");
        for r in &self.rows {
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                r.g,
                r.tr.text(),
                r.duality.text(),
                r.closed_form.text(),
                if r.agree { "yes" } else { "no" }
            ));
        }
        if let Some(t) = &self.timing_ms {
            s.push('\n');
            for (k, v) in t {
                s.push_str(&format!("- {k}: {v} ms\n"));
            }
        }
        s
    }
}
