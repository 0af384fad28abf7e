//! JSON scenario documents: parsing, validation, defaults and canonical saving.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::parser::{parse_poly, print_poly};
use crate::algebra::{Poly, Ring};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::local::{BranchParam, Host, Truncation};
use crate::strat::{BranchTable, Dataset};

pub const SCHEMA_VERSION: u32 = 1;
pub const GENERIC_LINEAR: &str = "GENERIC-LINEAR";
pub const N_MIN: u32 = 2;
pub const N_MAX: u32 = 64;
pub const DEFAULT_N: (u32, u32) = (2, 8);

/// The function `f` of a scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FSpec {
    Given(Poly),
    GenericLinear,
}

/// An expected value together with the closed-form argument that certifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tagged<T> {
    pub value: T,
    pub oracle: String,
}

/// Reference values stored with a fixture.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub milnor: Option<Tagged<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Tagged<[u64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_fibre: Option<Tagged<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Tagged<u32>>,
    /// Milnor number of `g + f^N`, keyed by `N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_tilde: Option<Tagged<BTreeMap<u32, u64>>>,
    /// Both sides of the gap-ratio lemma, `([Γ]·[V(g)])_0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polar_intersection: Option<Tagged<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_obstruction: Option<Tagged<i64>>,
    /// Identity name to `PASS`, `FAIL` or `SKIPPED`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Tagged<BTreeMap<String, String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchEntry {
    pub name: String,
    pub components: Option<Vec<Poly>>,
    pub truncation: Truncation,
    pub host: Host,
    pub multiplicity: u32,
    pub table: Option<BranchTable>,
}

impl BranchEntry {
    pub fn param(&self) -> Option<BranchParam> {
        Some(BranchParam {
            name: self.name.clone(),
            components: self.components.clone()?,
            truncation: self.truncation,
            host: self.host,
            multiplicity: self.multiplicity,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub ring: Ring,
    /// Dimension `d` of the ambient space `X`.
    pub dim: usize,
    pub g: Option<Poly>,
    pub f: FSpec,
    pub n_range: (u32, u32),
    pub branches: Vec<BranchEntry>,
    pub dataset: Option<Dataset>,
    pub limits: Limits,
    pub expected: Option<Expected>,
}

impl Scenario {
    /// Minimal scenario over `ring` with defaults everywhere else.
    pub fn new(name: &str, ring: Ring, g: Poly, f: FSpec) -> Scenario {
        Scenario {
            name: name.to_string(),
            description: String::new(),
            dim: ring.nvars(),
            ring,
            g: Some(g),
            f,
            n_range: DEFAULT_N,
            branches: Vec::new(),
            dataset: None,
            limits: Limits::default(),
            expected: None,
        }
    }

    pub fn branch_params(&self, host: Host) -> Vec<BranchParam> {
        self.branches.iter().filter(|b| b.host == host).filter_map(BranchEntry::param).collect()
    }

    pub fn g(&self) -> Result<&Poly> {
        self.g.as_ref().ok_or_else(|| Error::Unsupported(format!("scenario '{}' defines no g", self.name)))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NDoc {
    Single(u32),
    Text(String),
    Bounds { min: u32, max: u32 },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TruncDoc {
    Order(u32),
    Text(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchDoc {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    param: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trunc: Option<TruncDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    host: Option<Host>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multiplicity: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<BranchTable>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    schema_version: u32,
    name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    description: String,
    variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<String>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    n: Option<NDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    branches: Vec<BranchDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    strata: Option<Dataset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    limits: Option<Limits>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expected: Option<Expected>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), message: message.into() }
}

fn poly_at(path: &str, src: &str, ring: &Ring) -> Result<Poly> {
    parse_poly(src, ring).map_err(|e| schema(path, e.to_string()))
}

/// Parses an `N` specification: `"5"`, `"2..8"`.
pub fn parse_n_range(text: &str) -> Result<(u32, u32)> {
    let bad = || Error::NOutOfRange(format!("'{text}' is not an integer or a range a..b"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    check_n_range(lo, hi)
}

pub fn check_n_range(lo: u32, hi: u32) -> Result<(u32, u32)> {
    if lo > hi {
        return Err(Error::NOutOfRange(format!("empty range {lo}..{hi}")));
    }
    if lo < N_MIN || hi > N_MAX {
        return Err(Error::NOutOfRange(format!("{lo}..{hi} is outside [{N_MIN}, {N_MAX}]")));
    }
    Ok((lo, hi))
}

fn validate_dataset(ds: &Dataset, branch_names: &BTreeSet<&str>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (i, r) in ds.records.iter().enumerate() {
        if !seen.insert((r.space, r.name.as_str())) {
            return Err(schema(format!("strata.records[{i}].name"), format!("duplicate stratum '{}'", r.name)));
        }
        for b in &r.branches {
            if !branch_names.contains(b.as_str()) {
                return Err(Error::DanglingReference(format!("stratum '{}' references unknown branch '{b}'", r.name)));
            }
        }
    }
    for space in ds.records.iter().map(|r| r.space).collect::<BTreeSet<_>>() {
        let top = ds.records.iter().filter(|r| r.space == space).map(|r| r.dim).max().unwrap_or(0);
        for (i, r) in ds.records.iter().enumerate() {
            if r.space == space && r.dim == top && top > 0 && r.eu != 1 {
                return Err(schema(
                    format!("strata.records[{i}].eu"),
                    format!("regular stratum '{}' must have Euler obstruction 1", r.name),
                ));
            }
        }
    }
    if let Some(n) = ds.n {
        check_n_range(n, n)?;
    }
    Ok(())
}

fn from_doc(doc: Doc) -> Result<Scenario> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(schema("schema_version", format!("unsupported version {}", doc.schema_version)));
    }
    let ring = Ring::new(&doc.variables).map_err(|e| schema("variables", e.to_string()))?;
    if ring.nvars() == 0 {
        return Err(schema("variables", "at least one variable is required"));
    }
    let g = doc.g.as_deref().map(|s| poly_at("g", s, &ring)).transpose()?;
    let f = match doc.f.as_deref() {
        None => FSpec::GenericLinear,
        Some(s) if s.trim() == GENERIC_LINEAR => FSpec::GenericLinear,
        Some(s) => FSpec::Given(poly_at("f", s, &ring)?),
    };
    let n_range = match doc.n {
        None => DEFAULT_N,
        Some(NDoc::Single(n)) => check_n_range(n, n)?,
        Some(NDoc::Text(t)) => parse_n_range(&t)?,
        Some(NDoc::Bounds { min, max }) => check_n_range(min, max)?,
    };
    let series = Ring::series();
    let mut branches = Vec::new();
    let mut names = BTreeSet::new();
    for (i, b) in doc.branches.into_iter().enumerate() {
        let at = |field: &str| format!("branches[{i}].{field}");
        if !names.insert(b.name.clone()) {
            return Err(schema(at("name"), format!("duplicate branch '{}'", b.name)));
        }
        let components = match b.param {
            None => None,
            Some(srcs) => {
                if srcs.len() != ring.nvars() {
                    return Err(schema(at("param"), format!("expected {} components, got {}", ring.nvars(), srcs.len())));
                }
                let mut comps = Vec::new();
                for (k, s) in srcs.iter().enumerate() {
                    let p = poly_at(&format!("branches[{i}].param[{k}]"), s, &series)?;
                    if !p.constant_term().eq(&num_traits::Zero::zero()) {
                        return Err(schema(format!("branches[{i}].param[{k}]"), "branch must pass through the origin"));
                    }
                    comps.push(p);
                }
                if comps.iter().all(Poly::is_zero) {
                    return Err(schema(at("param"), "parametrization is constant"));
                }
                Some(comps)
            }
        };
        let truncation = match b.trunc {
            None => Truncation::Exact,
            Some(TruncDoc::Text(t)) if t == "auto" => Truncation::Exact,
            Some(TruncDoc::Text(t)) => return Err(schema(at("trunc"), format!("expected \"auto\" or an integer, got '{t}'"))),
            Some(TruncDoc::Order(0)) => return Err(schema(at("trunc"), "truncation order must be positive")),
            Some(TruncDoc::Order(k)) => Truncation::Order(k),
        };
        let multiplicity = b.multiplicity.unwrap_or(1);
        if multiplicity == 0 {
            return Err(schema(at("multiplicity"), "multiplicity must be positive"));
        }
        branches.push(BranchEntry {
            name: b.name,
            components,
            truncation,
            host: b.host.unwrap_or(Host::Sigma),
            multiplicity,
            table: b.table,
        });
    }
    if let Some(ds) = &doc.strata {
        let names: BTreeSet<&str> = branches.iter().map(|b| b.name.as_str()).collect();
        validate_dataset(ds, &names)?;
    }
    let dim = doc.dim.unwrap_or(ring.nvars());
    Ok(Scenario {
        name: doc.name,
        description: doc.description,
        ring,
        dim,
        g,
        f,
        n_range,
        branches,
        dataset: doc.strata,
        limits: doc.limits.unwrap_or_default(),
        expected: doc.expected,
    })
}

/// Parses and validates a scenario document.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Doc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(if path.is_empty() { "$".to_string() } else { path }, e.into_inner().to_string())
    })?;
    from_doc(doc)
}

pub fn load_scenario_file(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_scenario(&text)
}

fn to_doc(s: &Scenario) -> Doc {
    Doc {
        schema_version: SCHEMA_VERSION,
        name: s.name.clone(),
        description: s.description.clone(),
        variables: s.ring.names().to_vec(),
        dim: (s.dim != s.ring.nvars()).then_some(s.dim),
        g: s.g.as_ref().map(print_poly),
        f: Some(match &s.f {
            FSpec::GenericLinear => GENERIC_LINEAR.to_string(),
            FSpec::Given(p) => print_poly(p),
        }),
        n: Some(if s.n_range.0 == s.n_range.1 {
            NDoc::Single(s.n_range.0)
        } else {
            NDoc::Text(format!("{}..{}", s.n_range.0, s.n_range.1))
        }),
        branches: s
            .branches
            .iter()
            .map(|b| BranchDoc {
                name: b.name.clone(),
                param: b.components.as_ref().map(|c| c.iter().map(print_poly).collect()),
                trunc: Some(match b.truncation {
                    Truncation::Exact => TruncDoc::Text("auto".into()),
                    Truncation::Order(k) => TruncDoc::Order(k),
                }),
                host: Some(b.host),
                multiplicity: Some(b.multiplicity),
                table: b.table,
            })
            .collect(),
        strata: s.dataset.clone(),
        limits: Some(s.limits),
        expected: s.expected.clone(),
    }
}

/// Canonical pretty-printed JSON; `load_scenario(&save_scenario(s)) == s`.
pub fn save_scenario(s: &Scenario) -> String {
    let mut out = serde_json::to_string_pretty(&to_doc(s)).expect("scenario serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario_gets_defaults() {
        let s = load_scenario(r#"{"schema_version":1,"name":"m","variables":["x","y","z"],"g":"x^2+y^2","f":"GENERIC-LINEAR"}"#)
            .unwrap();
        assert_eq!(s.n_range, (2, 8));
        assert_eq!(s.f, FSpec::GenericLinear);
        assert_eq!(s.dim, 3);
        assert_eq!(s.limits, Limits::default());
        assert_eq!(load_scenario(&save_scenario(&s)).unwrap(), s);
    }

    #[test]
    fn branch_is_parsed_in_t() {
        let s = load_scenario(
            r#"{"schema_version":1,"name":"c","variables":["x","y","z"],"g":"x^2+y^2","f":"z",
                "branches":[{"name":"b1","param":["0","0","t"]}]}"#,
        )
        .unwrap();
        let b = s.branches[0].param().unwrap();
        assert_eq!(b.components[2].to_string(), "t");
        assert_eq!(b.truncation, Truncation::Exact);
    }

    #[test]
    fn rejections() {
        let base = |extra: &str| format!(r#"{{"schema_version":1,"name":"c","variables":["x","y"],"g":"x*y"{extra}}}"#);
        assert!(matches!(load_scenario(&base(r#","N":"1..4""#)), Err(Error::NOutOfRange(_))));
        assert!(matches!(load_scenario(&base(r#","N":65"#)), Err(Error::NOutOfRange(_))));
        assert!(matches!(load_scenario(&base(r#","colour":1"#)), Err(Error::Schema { .. })));
        let e = load_scenario(&base(r#","branches":[{"name":"b","param":["t","1+t"]}]"#)).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "branches[0].param[1]"), "{e}");
        let e = load_scenario(&base(
            r#","branches":[{"name":"b"}],"strata":{"records":[{"name":"r","space":"X","dim":2,"eu":1,"branches":["zz"]}]}"#,
        ))
        .unwrap_err();
        assert!(matches!(e, Error::DanglingReference(_)), "{e}");
        let e = load_scenario(r#"{"schema_version":1,"name":"c","variables":["x"],"g":"x^"}"#).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "g"));
    }
}
