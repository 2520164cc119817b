//! Rendering of expansions and matrix blocks as text, JSON, or LaTeX.

use std::collections::BTreeMap;

use gjack_core::envelope::{SchurBasis, SchurExpansion, TransitionMatrix};
use serde::Serialize;
use serde_json::json;

/// Output format selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
    Latex,
}

/// Reproducibility header attached to JSON outputs.
#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub command: String,
    pub rank: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Values of (t1, t2, u1..ur) for specialized runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<String>>,
}

/// Turns the canonical polynomial syntax into LaTeX: subscripted variables,
/// thin-space products.
pub fn latexify(poly: &str) -> String {
    poly.replace("t1", "t_1")
        .replace("t2", "t_2")
        .replace('u', "u_")
        .replace('*', "\\,")
}

fn basis_symbol(basis: SchurBasis, latex: bool) -> &'static str {
    match (basis, latex) {
        (SchurBasis::Straight, false) => "s_",
        (SchurBasis::Dual, false) => "s*_",
        (SchurBasis::Straight, true) => "s_",
        (SchurBasis::Dual, true) => "s^{*}_",
    }
}

/// One expansion, one line: `J_[2] = (...)*s_[1,1] + (...)*s_[2]`.
pub fn expansion_text(e: &SchurExpansion, name: &str) -> String {
    if e.coeffs.is_empty() {
        return format!("{}_{} = 0", name, e.label);
    }
    let terms: Vec<String> = e
        .coeffs
        .iter()
        .map(|(mu, c)| {
            if e.label.size() == 0 {
                format!("{c}")
            } else {
                format!("({c})*{}{}", basis_symbol(e.basis, false), mu)
            }
        })
        .collect();
    format!("{}_{} = {}", name, e.label, terms.join(" + "))
}

pub fn expansion_latex(e: &SchurExpansion, name: &str) -> String {
    if e.coeffs.is_empty() {
        return format!("{}_{{{}}} = 0", name, e.label);
    }
    let terms: Vec<String> = e
        .coeffs
        .iter()
        .map(|(mu, c)| {
            if e.label.size() == 0 {
                latexify(&c.to_string())
            } else {
                format!(
                    "\\left({}\\right) {}{{{}}}",
                    latexify(&c.to_string()),
                    basis_symbol(e.basis, true),
                    mu
                )
            }
        })
        .collect();
    format!("{}_{{{}}} = {}", name, e.label, terms.join(" + "))
}

pub fn expansion_json(e: &SchurExpansion, name: &str, header: &Header) -> serde_json::Value {
    let coeffs: BTreeMap<String, String> = e
        .coeffs
        .iter()
        .map(|(mu, c)| (mu.to_string(), c.to_string()))
        .collect();
    json!({
        "header": header,
        "polynomial": name,
        "diagram": e.label.to_string(),
        "basis": match e.basis { SchurBasis::Straight => "s", SchurBasis::Dual => "s*" },
        "coefficients": coeffs,
    })
}

pub fn matrix_text(m: &TransitionMatrix) -> String {
    let mut out = String::new();
    for (i, l) in m.labels.iter().enumerate() {
        for (j, mu) in m.labels.iter().enumerate() {
            let e = &m.entries[i][j];
            if !e.is_zero() {
                out.push_str(&format!("{}[{l}; {mu}] = {e}\n", m.kind.as_str()));
            }
        }
    }
    out
}

pub fn matrix_latex(m: &TransitionMatrix) -> String {
    let mut out = String::from("\\begin{array}{c|");
    out.push_str(&"c".repeat(m.labels.len()));
    out.push_str("}\n");
    for mu in &m.labels {
        out.push_str(&format!(" & {mu}"));
    }
    out.push_str(" \\\\\\hline\n");
    for (i, l) in m.labels.iter().enumerate() {
        out.push_str(&format!("{l}"));
        for j in 0..m.labels.len() {
            out.push_str(&format!(" & {}", latexify(&m.entries[i][j].to_string())));
        }
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{array}\n");
    out
}
