//! Plain-text rendering of the JSON reports.

use std::fmt::Write;

use serde_json::{json, Value};

use iomdin_core::iomdin::{RowRange, VerdictTable};
use iomdin_core::local::{BranchParam, Truncation};
use iomdin_core::strat::Verdict;

pub fn branches_json(branches: &[BranchParam]) -> Value {
    branches
        .iter()
        .map(|b| {
            json!({
                "name": b.name,
                "param": b.components.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "trunc": match b.truncation { Truncation::Exact => json!("auto"), Truncation::Order(k) => json!(k) },
                "multiplicity": b.multiplicity,
            })
        })
        .collect()
}

fn s(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn branch_lines(out: &mut String, branches: &Value) {
    for b in branches.as_array().into_iter().flatten() {
        let param: Vec<String> = b["param"].as_array().into_iter().flatten().map(s).collect();
        let _ = writeln!(out, "  {}: ({})  trunc {}  multiplicity {}", s(&b["name"]), param.join(", "), s(&b["trunc"]), b["multiplicity"]);
    }
}

pub fn critical_locus(j: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "g = {}", s(&j["input"]["g"]));
    let _ = writeln!(out, "dim Σg at 0: {}", s(&j["dim"]));
    if !j["meets_f_only_at_origin"].is_null() {
        let _ = writeln!(out, "Σg ∩ {{f = 0}} = {{0}}: {}", j["meets_f_only_at_origin"]);
    }
    let _ = writeln!(out, "{}", s(&j["note"]));
    branch_lines(&mut out, &j["branches"]);
    out
}

pub fn polar(j: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "f = {}", s(&j["f"]));
    if j["empty"] == json!(true) {
        let _ = writeln!(out, "polar curve: empty");
        return out;
    }
    let _ = writeln!(out, "polar curve: dimension {}", s(&j["dim"]));
    for g in j["ideal"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  {}", s(g));
    }
    if j["components"].as_array().is_some_and(|c| !c.is_empty()) {
        let _ = writeln!(out, "components:");
        branch_lines(&mut out, &j["components"]);
    }
    out
}

pub fn gap(j: &Value) -> String {
    let mut out = String::new();
    let g = &j["gap"];
    let _ = writeln!(out, "f = {}", s(&j["f"]));
    let _ = writeln!(out, "([Γ]·[V(g)])_0 = {}   ([Γ]·[V(f)])_0 = {}", g["total_g"], g["total_f"]);
    for r in g["ratios"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  {}: ord g {} / ord f {} = {}", s(&r["name"]), r["ord_g"], r["ord_f"], s(&r["ratio"]));
    }
    if let Some(m) = g["mismatch"].as_str() {
        let _ = writeln!(out, "components incomplete: {m}");
    }
    let _ = writeln!(out, "threshold N0 = {}", j["threshold"]);
    out
}

pub fn le(j: &Value) -> String {
    let mut out = String::new();
    let le = &j["le"];
    let _ = writeln!(out, "l = {}", s(&le["l"]));
    let _ = writeln!(out, "λ⁰ = {}", le["lambda0"]);
    let _ = writeln!(out, "λ¹ = {}", le["lambda1"]);
    let _ = writeln!(out, "χ(F_g) = {}", j["chi_fibre"]);
    for b in le["branches"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  {}: m_l = {}, μ = {}", s(&b["name"]), b["m_l"], b["mu"]);
    }
    out
}

fn verdict_line(out: &mut String, prefix: &str, v: &Verdict) {
    let sides = match (v.left, v.right) {
        (Some(l), Some(r)) => format!("{l} {} {r}", v.relation),
        _ => v.detail.clone(),
    };
    let _ = writeln!(out, "{prefix}{:<8} {:<30} {sides}", v.status.as_str(), v.identity);
}

pub fn sweep(t: &VerdictTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "g = {}   f = {}", t.g, t.f);
    let _ = writeln!(out, "λ⁰ = {}, λ¹ = {}, χ(F_g) = {}, threshold N0 = {}", t.le.lambda0, t.le.lambda1, t.chi_g, t.threshold);
    for r in &t.rows {
        match r.range {
            RowRange::OutOfRange => {
                let _ = writeln!(out, "N = {:>2}  OUT-OF-RANGE  μ(g~) = {}", r.n, r.mu_tilde);
            }
            RowRange::InRange => {
                let _ = writeln!(out, "N = {:>2}  μ(g~) = {}", r.n, r.mu_tilde);
                for v in &r.verdicts {
                    verdict_line(&mut out, "  ", v);
                }
            }
        }
    }
    out
}

pub fn verdicts(vs: &[Verdict]) -> String {
    let mut out = String::new();
    for v in vs {
        verdict_line(&mut out, "", v);
    }
    out
}

pub fn brasselet(j: &Value) -> String {
    let mut out = String::new();
    for n in j["numbers"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "B[{}] = {}   Eu of function = {}", s(&n["slice"]), n["brasselet"], s(&n["euler_obstruction_of_function"]));
    }
    for (space, v) in j["euler_obstruction"].as_object().into_iter().flatten() {
        let _ = writeln!(out, "Eu_{space}(0) = {v}");
    }
    out
}
