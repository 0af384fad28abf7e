//! Brasselet numbers, Euler obstructions and the Lê-Iomdin identities over
//! stratified datasets. Every topological quantity is input data.

mod export;
mod identities;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use export::export_dataset;
pub use identities::{verify_stratified_identities, Status, Verdict, IDENTITIES};

/// The stratified spaces a dataset may describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Space {
    #[serde(rename = "X")]
    X,
    #[serde(rename = "X^f")]
    Xf,
    #[serde(rename = "X^g")]
    Xg,
    #[serde(rename = "X^g~")]
    XgTilde,
}

impl Space {
    pub const ALL: [Space; 4] = [Space::X, Space::Xf, Space::Xg, Space::XgTilde];

    pub fn as_str(self) -> &'static str {
        match self {
            Space::X => "X",
            Space::Xf => "X^f",
            Space::Xg => "X^g",
            Space::XgTilde => "X^g~",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Space> {
        match s {
            "X" => Ok(Space::X),
            "X^f" => Ok(Space::Xf),
            "X^g" => Ok(Space::Xg),
            "X^g~" | "X^g̃" => Ok(Space::XgTilde),
            _ => Err(Error::Unsupported(format!("unknown space '{s}'"))),
        }
    }
}

/// Functions whose fibres are recorded per stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Func {
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "g~")]
    GTilde,
    /// A generic linear form.
    #[serde(rename = "l")]
    L,
}

impl Func {
    pub fn as_str(self) -> &'static str {
        match self {
            Func::F => "f",
            Func::G => "g",
            Func::GTilde => "g~",
            Func::L => "l",
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Func {
    type Err = Error;

    fn from_str(s: &str) -> Result<Func> {
        match s {
            "f" => Ok(Func::F),
            "g" => Ok(Func::G),
            "g~" | "g̃" => Ok(Func::GTilde),
            "l" => Ok(Func::L),
            _ => Err(Error::Unsupported(format!("unknown function '{s}'"))),
        }
    }
}

/// A fibre of `func` inside `space`, written `g-fibre` or `l-fibre-of-X^g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceKind {
    pub func: Func,
    pub space: Space,
}

impl fmt::Display for SliceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.space {
            Space::X => write!(f, "{}-fibre", self.func),
            s => write!(f, "{}-fibre-of-{s}", self.func),
        }
    }
}

impl FromStr for SliceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SliceKind> {
        let (head, space) = match s.split_once("-fibre") {
            Some((h, "")) => (h, Space::X),
            Some((h, rest)) => match rest.strip_prefix("-of-") {
                Some(sp) => (h, sp.parse()?),
                None => return Err(Error::Unsupported(format!("malformed slice kind '{s}'"))),
            },
            None => return Err(Error::Unsupported(format!("malformed slice kind '{s}'"))),
        };
        Ok(SliceKind { func: head.parse()?, space })
    }
}

/// One stratum `V_i` of a space, with `Eu(V_i)` and the Euler characteristics
/// of its intersections with nearby fibres.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumRecord {
    pub name: String,
    pub space: Space,
    pub dim: usize,
    pub eu: i64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chi: BTreeMap<Func, i64>,
    /// Functions vanishing identically on the stratum.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zero_of: Vec<Func>,
    /// Branches of the critical locus that this stratum is made of.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<String>,
}

/// Stratified Morse point counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Morse {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, rename = "m~", skip_serializing_if = "Option::is_none")]
    pub m_tilde: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, rename = "n~", skip_serializing_if = "Option::is_none")]
    pub n_tilde: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dataset {
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default)]
    pub records: Vec<StratumRecord>,
    /// Known `Eu_S(0)` values; missing spaces fall back to the BLS formula.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub euler_obstruction: BTreeMap<Space, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morse: Option<Morse>,
    /// Declared hypotheses such as `prepolar` or `tractable`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
}

impl Dataset {
    pub fn has_space(&self, space: Space) -> bool {
        self.records.iter().any(|r| r.space == space)
    }

    pub fn records_in(&self, space: Space) -> impl Iterator<Item = &StratumRecord> {
        self.records.iter().filter(move |r| r.space == space)
    }
}

/// Per-branch quantities, constant along `b_j` near the origin.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchTable {
    /// Local degree of `f` on the branch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_f: Option<i64>,
    /// Local degree of a generic linear form on the branch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_l: Option<i64>,
    /// `Eu_X(b_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eu_x: Option<i64>,
    /// `Eu_{X^g}(b_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eu_xg: Option<i64>,
    /// `B_{g, X ∩ f^{-1}(δ)}(b_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_g_f: Option<i64>,
    /// `Eu_{g, X ∩ f^{-1}(δ)}(b_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eu_g_f: Option<i64>,
    /// `Eu_{f, X ∩ g~^{-1}(α)}(b_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eu_f_gt: Option<i64>,
    /// `B_{f, X ∩ g~^{-1}(α)}(b_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_f_gt: Option<i64>,
    /// `B_{g, X ∩ l^{-1}(δ)}(b_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_g_l: Option<i64>,
}

/// `B_{h,S}(0) = Σ χ(V_i ∩ h^{-1}(δ) ∩ B_ε) Eu_S(V_i)` over positive-dimensional
/// strata of `S` not contained in `{h = 0}`.
pub fn brasselet_number(ds: &Dataset, slice: SliceKind) -> Result<i64> {
    if !ds.has_space(slice.space) {
        return Err(Error::MissingSlice(format!("dataset has no strata for {}", slice.space)));
    }
    let mut total = 0i64;
    for r in ds.records_in(slice.space) {
        if r.dim == 0 || r.zero_of.contains(&slice.func) {
            continue;
        }
        let chi = r.chi.get(&slice.func).ok_or_else(|| {
            Error::MissingSlice(format!("stratum '{}' of {} has no {slice} entry", r.name, r.space))
        })?;
        total += chi * r.eu;
    }
    Ok(total)
}

/// `Eu_S(0)` by the hyperplane formula, from the `l`-fibre entries of `space`.
pub fn bls_euler_obstruction(ds: &Dataset, space: Space) -> Result<i64> {
    brasselet_number(ds, SliceKind { func: Func::L, space })
}

/// `Eu_S(0)`, taken from the dataset when declared and from BLS otherwise.
pub fn euler_obstruction(ds: &Dataset, space: Space) -> Result<i64> {
    match ds.euler_obstruction.get(&space) {
        Some(v) => Ok(*v),
        None => bls_euler_obstruction(ds, space),
    }
}

/// `Eu_{h,S}(0) = Eu_S(0) - B_{h,S}(0)`.
pub fn euler_obstruction_of_function(ds: &Dataset, slice: SliceKind) -> Result<i64> {
    Ok(euler_obstruction(ds, slice.space)? - brasselet_number(ds, slice)?)
}

/// Branch tables keyed by name, in scenario order.
pub fn branch_tables(s: &crate::frontend::Scenario) -> Vec<(String, BranchTable)> {
    s.branches.iter().filter_map(|b| Some((b.name.clone(), b.table?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(name: &str, space: Space, dim: usize, eu: i64, chi: &[(Func, i64)]) -> StratumRecord {
        StratumRecord {
            name: name.into(),
            space,
            dim,
            eu,
            chi: chi.iter().copied().collect(),
            zero_of: vec![],
            branches: vec![],
        }
    }

    #[test]
    fn slice_kinds_parse() {
        let k: SliceKind = "l-fibre-of-X^g".parse().unwrap();
        assert_eq!(k, SliceKind { func: Func::L, space: Space::Xg });
        assert_eq!(k.to_string(), "l-fibre-of-X^g");
        let k: SliceKind = "g~-fibre".parse().unwrap();
        assert_eq!(k, SliceKind { func: Func::GTilde, space: Space::X });
        assert!("g-fibres".parse::<SliceKind>().is_err());
    }

    #[test]
    fn smooth_space() {
        let ds = Dataset {
            records: vec![rec("reg", Space::X, 3, 1, &[(Func::G, 0), (Func::GTilde, 3), (Func::L, 1)])],
            ..Dataset::default()
        };
        let g = SliceKind { func: Func::G, space: Space::X };
        assert_eq!(brasselet_number(&ds, g).unwrap(), 0);
        assert_eq!(brasselet_number(&ds, SliceKind { func: Func::GTilde, space: Space::X }).unwrap(), 3);
        assert_eq!(bls_euler_obstruction(&ds, Space::X).unwrap(), 1);
        assert_eq!(euler_obstruction_of_function(&ds, SliceKind { func: Func::L, space: Space::X }).unwrap(), 0);
        let f = SliceKind { func: Func::F, space: Space::X };
        assert!(matches!(brasselet_number(&ds, f), Err(Error::MissingSlice(_))));
    }

    #[test]
    fn point_strata_and_zero_loci_are_excluded() {
        let mut axis = rec("axis", Space::Xg, 1, 2, &[(Func::L, 1)]);
        axis.zero_of.push(Func::F);
        let ds = Dataset {
            records: vec![rec("origin", Space::Xg, 0, 5, &[]), rec("reg", Space::Xg, 2, 1, &[(Func::L, 0), (Func::F, 0)]), axis],
            ..Dataset::default()
        };
        assert_eq!(bls_euler_obstruction(&ds, Space::Xg).unwrap(), 2);
        assert_eq!(brasselet_number(&ds, SliceKind { func: Func::F, space: Space::Xg }).unwrap(), 0);
    }
}
