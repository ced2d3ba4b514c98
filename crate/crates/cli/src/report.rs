use serde::Serialize;
use serde_json::{json, Value};

use catlab_core::apolarity::HilbertFunction;
use catlab_core::linalg::Matrix;
use catlab_core::poly::format_poly;
use catlab_core::{QPoly, Rational};

/// Contraction convention stated in every report that carries ideals or
/// decompositions.
pub const CONVENTION: &str =
    "contraction is differentiation: a^u acting on x^v gives v!/(v-u)! x^(v-u) when u <= v and 0 otherwise";

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    pub seed: u64,
    pub version: &'static str,
    #[serde(skip)]
    pub ok: bool,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value, results: Value, seed: u64) -> Self {
        Report { command, inputs, results, warnings: Vec::new(), seed, version: env!("CARGO_PKG_VERSION"), ok: true }
    }

    pub fn render(&self, text: bool) -> String {
        if !text {
            return serde_json::to_string_pretty(self).expect("reports serialize");
        }
        let mut out = format!("{} (catlab {}, seed {})\n", self.command, self.version, self.seed);
        render_text(&mut out, "inputs", &self.inputs, 0);
        render_text(&mut out, "results", &self.results, 0);
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.pop();
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("null".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar_text(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| render_text(out, k, x, depth + 1)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, x)| render_text(out, &format!("[{i}]"), x, depth + 1)),
        _ => unreachable!(),
    }
}

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

pub fn matrix(m: &Matrix<Rational>) -> Value {
    Value::Array((0..m.rows()).map(|r| rationals(m.row(r))).collect())
}

pub fn poly(p: &QPoly) -> Value {
    Value::String(format_poly(p))
}

pub fn hf(h: &HilbertFunction) -> Value {
    json!(h.values())
}

/// A float rounded to `digits` significant digits, flagged as approximate.
pub fn approx(x: f64, digits: usize) -> Value {
    let x = x + 0.0;
    json!({ "value": format!("{:.*e}", digits.saturating_sub(1), x), "approx": true, "precision_digits": digits })
}

pub fn approx_complex(re: f64, im: f64, digits: usize) -> Value {
    let p = digits.saturating_sub(1);
    let (re, im) = (re + 0.0, im + 0.0);
    json!({
        "re": format!("{re:.p$e}"),
        "im": format!("{im:.p$e}"),
        "approx": true,
        "precision_digits": digits,
    })
}
