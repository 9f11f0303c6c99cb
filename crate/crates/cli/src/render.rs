//! Plain-text and CSV rendering.
//!
//! All three formats print numbers with the same shortest round-trip
//! representation, so a value reads identically in plain, CSV and JSON.
//! CSV is the JSON document flattened to `path,value` rows.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::report::{GateReport, SpinReport, TableReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

pub fn num(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| "null".into())
}

fn nums(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn csv<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut out = String::from("path,value\n");
    flatten(&value, String::new(), &mut out);
    out
}

fn flatten(v: &Value, path: String, out: &mut String) {
    let join = |key: &str| if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(child, join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(child, join(&i.to_string()), out);
            }
        }
        Value::Null => {
            let _ = writeln!(out, "{path},");
        }
        Value::String(s) if s.contains([',', '"', '\n']) => {
            let _ = writeln!(out, "{path},\"{}\"", s.replace('"', "\"\""));
        }
        Value::String(s) => {
            let _ = writeln!(out, "{path},{s}");
        }
        other => {
            let _ = writeln!(out, "{path},{other}");
        }
    }
}

pub fn plain_spin(r: &SpinReport) -> String {
    let mut o = String::new();
    let spin = r.spin.as_deref().unwrap_or("-");
    let _ = writeln!(o, "{} spin {} dimension {} hamiltonian {}", r.command, spin, r.dimension, r.hamiltonian);
    let _ = writeln!(o, "cluster_tol {}", num(r.cluster_tol));
    let _ = writeln!(o, "{:>24}  multiplicity", "eigenvalue");
    for c in &r.clusters {
        let _ = writeln!(o, "{:>24}  {}", num(c.value), c.multiplicity);
    }
    let _ = writeln!(o, "eigenvalues {}", nums(&r.eigenvalues));
    if let Some(or) = &r.oracle {
        let list: Vec<String> = or.clusters.iter().map(|c| format!("{} x{}", num(c.value), c.multiplicity)).collect();
        let _ = writeln!(o, "closed form {} [{}]", yes(or.matches), list.join(", "));
    }
    if let Some(c) = &r.comparison {
        let _ = writeln!(o, "compared with {} (cluster_tol {})", c.hamiltonian, num(c.cluster_tol));
        for cl in &c.clusters {
            let _ = writeln!(o, "{:>24}  {}", num(cl.value), cl.multiplicity);
        }
        let _ = writeln!(o, "spectra equal {}", yes(c.spectra_equal));
    }
    if let Some(m) = &r.moments {
        let prefix = m.prefix_len.map_or(String::from("-"), |p| p.to_string());
        let _ = writeln!(
            o,
            "moments k=1..{} prefix {} tol {} max_abs_diff {} max_scaled_diff {} {}",
            m.powers.len(),
            prefix,
            num(m.tol),
            num(m.max_abs_diff),
            num(m.max_scaled_diff),
            yes(m.pass)
        );
        if let Some(p) = m.prefix_pass {
            let _ = writeln!(o, "moment prefix {}", yes(p));
        }
        let _ = writeln!(o, "{:>5}  {:>24}  {:>24}  {:>24}", "k", "tr(H^k)", "tr(K^k)", "threshold");
        for i in 0..m.powers.len() {
            let mark = if m.prefix_len.is_some_and(|p| i < p) { "*" } else { " " };
            let _ = writeln!(
                o,
                "{:>4}{mark}  {:>24}  {:>24}  {:>24}",
                m.powers[i],
                num(m.traces_h[i]),
                num(m.traces_k[i]),
                num(m.thresholds[i])
            );
        }
    }
    if let Some(n) = &r.newton {
        let _ = writeln!(o, "newton H {} K {}", yes(n.h), yes(n.k));
    }
    if let Some(a) = &r.algebra {
        let _ = writeln!(o, "algebra tol {} {}", num(a.tol), yes(a.pass));
        let _ = writeln!(o, "  commutators {}", nums(&a.commutator));
        let _ = writeln!(o, "  casimir {}", num(a.casimir));
        let _ = writeln!(o, "  square traces {}", nums(&a.square_trace));
        let _ = writeln!(o, "  cross traces {}", nums(&a.cross_trace));
        for t in &a.odd_power_trace {
            let _ = writeln!(o, "  odd power {} traces {}", t.power, nums(&t.residuals));
        }
        let _ = writeln!(o, "  kron cross trace {}", num(a.kron_cross_trace));
    }
    for n in &r.notes {
        let _ = writeln!(o, "note: {n}");
    }
    let _ = writeln!(o, "verdict {}", yes(r.verdict));
    o
}

pub fn plain_table(t: &TableReport) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "table max_spin {}", t.max_spin);
    let _ = writeln!(o, "{:>5}  {:>5}  {:<8}  {:<8}  {:<8}  spectrum", "spin", "dim", "isospec", "moments", "prefix");
    for r in &t.rows {
        let spec: Vec<String> = r.clusters.iter().map(|c| format!("{} x{}", num(c.value), c.multiplicity)).collect();
        let iso = r.comparison.as_ref().is_some_and(|c| c.spectra_equal);
        let (mom, pre) = r.moments.as_ref().map_or(("-", "-"), |m| (yes(m.pass), m.prefix_pass.map_or("-", yes)));
        let _ = writeln!(
            o,
            "{:>5}  {:>5}  {:<8}  {:<8}  {:<8}  {}",
            r.spin.as_deref().unwrap_or("-"),
            r.dimension,
            yes(iso),
            mom,
            pre,
            spec.join(", ")
        );
        for n in &r.notes {
            let _ = writeln!(o, "       note: {n}");
        }
    }
    let _ = writeln!(o, "verdict {}", yes(t.verdict));
    o
}

pub fn plain_gate(g: &GateReport) -> String {
    let mut o = String::new();
    let _ = writeln!(
        o,
        "gate spin {} dimension {} hamiltonian {} theta {}",
        g.spin,
        g.dimension,
        g.hamiltonian,
        num(g.theta)
    );
    for row in &g.matrix {
        let cells: Vec<String> = row.iter().map(|[re, im]| format!("({}, {})", num(*re), num(*im))).collect();
        let _ = writeln!(o, "{}", cells.join(" "));
    }
    if let Some(c) = &g.check {
        let _ = writeln!(o, "unitarity residual {} (tol {})", num(c.unitarity_residual), num(c.unitarity_tol));
        let _ = writeln!(o, "identity fidelity {}", num(c.identity_fidelity));
        let _ = writeln!(o, "trace phase {}", num(c.trace_phase));
        let _ = writeln!(o, "{:>5}  {:>24}  {:>24}", "k", "eigenphase", "expected");
        for (k, (a, b)) in c.eigenphases.iter().zip(&c.expected_eigenphases).enumerate() {
            let _ = writeln!(o, "{:>5}  {:>24}  {:>24}", k, num(*a), num(*b));
        }
        let _ = writeln!(o, "max phase error {}", num(c.max_phase_error));
    }
    for n in &g.notes {
        let _ = writeln!(o, "note: {n}");
    }
    let _ = writeln!(o, "verdict {}", yes(g.verdict));
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_match_json() {
        for x in [1.0, -0.75, 1e-10, 0.1 + 0.2, -6.000000000000001, 1e300] {
            let v: f64 = num(x).parse().unwrap();
            assert_eq!(v, x);
            assert_eq!(num(x), serde_json::Value::from(x).to_string());
        }
    }

    #[test]
    fn flatten_paths() {
        let v = serde_json::json!({"a": [1.5, {"b": null}], "c": "x,y", "d": true});
        let mut out = String::new();
        flatten(&v, String::new(), &mut out);
        assert_eq!(out, "a.0,1.5\na.1.b,\nc,\"x,y\"\nd,true\n");
    }
}
