//! The invariant report: every number the pipeline derives for a scenario,
//! each with the route that produced it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::QuotientDim;
use crate::error::{Error, Result};
use crate::frontend::scenario::{Scenario, SCHEMA_VERSION};
use crate::iomdin;
use crate::le::{self, LeData};
use crate::limits::Limits;
use crate::local;
use crate::polar::GapReport;
use crate::strat::{self, Space, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derived<T> {
    pub value: T,
    pub route: String,
}

fn derived<T>(value: T, route: impl Into<String>) -> Option<Derived<T>> {
    Some(Derived { value, route: route.into() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub schema_version: u32,
    pub scenario: String,
    pub variables: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub milnor: Option<Derived<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Derived<[u64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_fibre: Option<Derived<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub le: Option<LeData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Derived<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polar_intersection: Option<Derived<u64>>,
    /// `dim O / Jac(g + f^N)` for each `N` of the scenario range.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub mu_tilde: BTreeMap<u32, QuotientDim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_obstruction: Option<Derived<i64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    /// Quantities that are undefined for this input, with the reason.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub limits: Limits,
}

/// Computes every applicable invariant of `s`. Germ-level errors that merely
/// make one quantity undefined (a non-isolated `μ`, say) become notes.
pub fn invariant_report(s: &Scenario) -> Result<InvariantReport> {
    let limits = &s.limits;
    let mut r = InvariantReport {
        schema_version: SCHEMA_VERSION,
        scenario: s.name.clone(),
        variables: s.ring.names().to_vec(),
        g: s.g.as_ref().map(ToString::to_string),
        f: None,
        milnor: None,
        lambda: None,
        chi_fibre: None,
        le: None,
        threshold: None,
        gap: None,
        polar_intersection: None,
        mu_tilde: BTreeMap::new(),
        euler_obstruction: None,
        verdicts: Vec::new(),
        notes: Vec::new(),
        limits: *limits,
    };
    if let Some(g) = &s.g {
        match local::milnor_number(g, limits) {
            Ok(mu) => r.milnor = derived(mu, "colength of Jac(g) in the local ring"),
            Err(e @ (Error::NonIsolated(_) | Error::Nonsingular(_))) => r.notes.push(format!("milnor: {e}")),
            Err(e) => return Err(e),
        }
        let prep = iomdin::prepare(s)?;
        r.f = Some(prep.f.to_string());
        r.lambda = derived([prep.le.lambda0, prep.le.lambda1], prep.le.route_log.join("; "));
        r.chi_fibre = derived(le::euler_char_fibre(prep.nvars, &prep.le), "1 + (-1)^(v-1) λ⁰ + (-1)^(v-2) λ¹");
        r.threshold = derived(
            prep.threshold,
            if prep.gap.complete && prep.gap.exact_max.is_some() {
                "floor of the largest gap ratio, plus one"
            } else {
                "polar intersection with V(g), plus one"
            },
        );
        r.polar_intersection = derived(prep.gap.total_g, "colength of Γ + <g>");
        r.gap = Some(prep.gap.clone());
        for n in s.n_range.0..=s.n_range.1 {
            r.mu_tilde.insert(n, prep.row(n, limits)?.mu_tilde);
        }
        r.le = Some(prep.le);
    }
    if let Some(ds) = &s.dataset {
        if ds.euler_obstruction.contains_key(&Space::X) {
            r.euler_obstruction = derived(ds.euler_obstruction[&Space::X], "declared");
        } else if ds.has_space(Space::X) {
            match strat::bls_euler_obstruction(ds, Space::X) {
                Ok(eu) => r.euler_obstruction = derived(eu, "BLS: Σ χ(V_i ∩ l = δ) Eu(V_i)"),
                Err(e) => r.notes.push(format!("euler_obstruction: {e}")),
            }
        }
        let n = ds.n.or((s.n_range.0 == s.n_range.1).then_some(s.n_range.0));
        r.verdicts = strat::verify_stratified_identities(ds, s.dim, n, &strat::branch_tables(s));
    }
    Ok(r)
}
