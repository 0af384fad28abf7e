//! Bundled scenarios with reference values.
//!
//! Besides the shipped files, `brieskorn-a-b-c` names the Brieskorn-Pham germ
//! `x^a + y^b + z^c` for any exponents in `2..=9`.

use crate::error::{Error, Result};
use crate::frontend::scenario::{load_scenario, Expected, Scenario, Tagged};
use crate::report::InvariantReport;

const BUNDLED: &[(&str, &str)] = &[
    ("a2-polar", include_str!("../../../fixtures/a2-polar.json")),
    ("brieskorn-2-3-4", include_str!("../../../fixtures/brieskorn-2-3-4.json")),
    ("cusp-curve", include_str!("../../../fixtures/cusp-curve.json")),
    ("cusp-isolated", include_str!("../../../fixtures/cusp-isolated.json")),
    ("cylinder", include_str!("../../../fixtures/cylinder.json")),
    ("cylinder-stratified", include_str!("../../../fixtures/cylinder-stratified.json")),
    ("d-infinity", include_str!("../../../fixtures/d-infinity.json")),
    ("negative/parity-violation", include_str!("../../../fixtures/negative/parity-violation.json")),
    ("negative/theorem-violation", include_str!("../../../fixtures/negative/theorem-violation.json")),
    ("node-curve", include_str!("../../../fixtures/node-curve.json")),
    ("three-axes", include_str!("../../../fixtures/three-axes.json")),
    ("three-lines", include_str!("../../../fixtures/three-lines.json")),
];

/// Names of the shipped fixtures, sorted.
pub fn list_fixtures() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

/// The JSON source of a shipped fixture.
pub fn fixture_source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, src)| *src)
}

pub fn load_fixture(name: &str) -> Result<Scenario> {
    if let Some(src) = fixture_source(name) {
        return load_scenario(src);
    }
    if let Some(exps) = brieskorn_exponents(name) {
        return Ok(brieskorn(exps));
    }
    Err(Error::UnknownFixture(name.to_string()))
}

fn brieskorn_exponents(name: &str) -> Option<[u32; 3]> {
    let rest = name.strip_prefix("brieskorn-")?;
    let parts: Vec<u32> = rest.split('-').map(|p| p.parse().ok()).collect::<Option<_>>()?;
    let exps: [u32; 3] = parts.try_into().ok()?;
    exps.iter().all(|e| (2..=9).contains(e)).then_some(exps)
}

fn brieskorn([a, b, c]: [u32; 3]) -> Scenario {
    let mu = u64::from((a - 1) * (b - 1) * (c - 1));
    let src = serde_json::json!({
        "schema_version": 1,
        "name": format!("brieskorn-{a}-{b}-{c}"),
        "description": format!("Brieskorn-Pham germ x^{a} + y^{b} + z^{c}."),
        "variables": ["x", "y", "z"],
        "g": format!("x^{a} + y^{b} + z^{c}"),
        "f": "GENERIC-LINEAR",
        "expected": {
            "milnor": {"value": mu, "oracle": format!("Brieskorn-Pham: ({a}-1)({b}-1)({c}-1)")},
            "lambda": {"value": [mu, 0], "oracle": "isolated singularity: (μ, 0)"},
            "chi_fibre": {"value": 1 + mu as i64, "oracle": "three variables: χ = 1 + μ"},
        }
    });
    load_scenario(&src.to_string()).expect("generated Brieskorn scenario is valid")
}

fn check<T: PartialEq + std::fmt::Debug>(
    out: &mut Vec<String>,
    what: &str,
    expected: &Option<Tagged<T>>,
    got: Option<&T>,
) {
    if let Some(e) = expected {
        if got != Some(&e.value) {
            out.push(format!("{what}: expected {:?} ({}), got {got:?}", e.value, e.oracle));
        }
    }
}

/// Differences between a fixture's expected values and a computed report.
pub fn mismatches(expected: &Expected, report: &InvariantReport) -> Vec<String> {
    let mut out = Vec::new();
    check(&mut out, "milnor", &expected.milnor, report.milnor.as_ref().map(|d| &d.value));
    check(&mut out, "lambda", &expected.lambda, report.lambda.as_ref().map(|d| &d.value));
    check(&mut out, "chi_fibre", &expected.chi_fibre, report.chi_fibre.as_ref().map(|d| &d.value));
    check(&mut out, "threshold", &expected.threshold, report.threshold.as_ref().map(|d| &d.value));
    check(
        &mut out,
        "polar_intersection",
        &expected.polar_intersection,
        report.polar_intersection.as_ref().map(|d| &d.value),
    );
    check(
        &mut out,
        "euler_obstruction",
        &expected.euler_obstruction,
        report.euler_obstruction.as_ref().map(|d| &d.value),
    );
    if let Some(e) = &expected.mu_tilde {
        for (n, want) in &e.value {
            let got = report.mu_tilde.get(n).and_then(|q| q.finite());
            if got != Some(*want) {
                out.push(format!("mu_tilde at N = {n}: expected {want} ({}), got {got:?}", e.oracle));
            }
        }
    }
    if let Some(e) = &expected.verdicts {
        for (id, want) in &e.value {
            let got = report.verdicts.iter().find(|v| &v.identity == id).map(|v| v.status.as_str());
            if got != Some(want.as_str()) {
                out.push(format!("verdict {id}: expected {want}, got {got:?}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert!(list_fixtures().windows(2).all(|w| w[0] < w[1]));
        for name in list_fixtures() {
            let s = load_fixture(name).unwrap();
            assert!(s.expected.is_some(), "{name}");
        }
        assert_eq!(load_fixture("brieskorn-3-4-5").unwrap().name, "brieskorn-3-4-5");
        for bad in ["nope", "brieskorn-1-2-3", "brieskorn-2-3", "brieskorn-2-3-x"] {
            assert!(matches!(load_fixture(bad), Err(Error::UnknownFixture(_))), "{bad}");
        }
    }
}
