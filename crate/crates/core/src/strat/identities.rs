//! The identity ledger: each identity evaluates both sides from dataset
//! entries and reports SKIPPED when an input is absent.

use serde::Serialize;

use super::{brasselet_number, euler_obstruction, BranchTable, Dataset, Func, SliceKind, Space};

pub const IDENTITIES: [&str; 12] = [
    "branch-relation",
    "restriction-equality",
    "prepolar-exchange",
    "parity",
    "branch-difference",
    "euler-obstruction-difference",
    "morse-m",
    "slice-exchange",
    "slice-exchange-eu",
    "morse-brasselet",
    "morse-n",
    "main-theorem",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub identity: String,
    pub status: Status,
    /// `=`, `<=` or `>=`.
    pub relation: &'static str,
    pub left: Option<i64>,
    pub right: Option<i64>,
    pub detail: String,
}

impl Verdict {
    pub fn skipped(identity: &str, missing: &str) -> Verdict {
        Verdict {
            identity: identity.to_string(),
            status: Status::Skipped,
            relation: "=",
            left: None,
            right: None,
            detail: format!("missing {missing}"),
        }
    }

    pub fn compare(identity: &str, relation: &'static str, left: i64, right: i64, detail: String) -> Verdict {
        let ok = match relation {
            "<=" => left <= right,
            ">=" => left >= right,
            _ => left == right,
        };
        Verdict {
            identity: identity.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            relation,
            left: Some(left),
            right: Some(right),
            detail,
        }
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

struct Ctx<'a> {
    ds: &'a Dataset,
    d: usize,
    n: Option<u32>,
    branches: &'a [(String, BranchTable)],
}

impl Ctx<'_> {
    fn b(&self, func: Func, space: Space) -> std::result::Result<i64, String> {
        let k = SliceKind { func, space };
        brasselet_number(self.ds, k).map_err(|_| format!("B_{{{func},{space}}}"))
    }

    fn eu(&self, space: Space) -> std::result::Result<i64, String> {
        if !self.ds.euler_obstruction.contains_key(&space) && !self.ds.has_space(space) {
            return Err(format!("Eu_{space}(0)"));
        }
        euler_obstruction(self.ds, space).map_err(|_| format!("Eu_{space}(0)"))
    }

    fn n(&self) -> std::result::Result<i64, String> {
        self.n.map(i64::from).ok_or_else(|| "N".to_string())
    }

    fn morse(&self, pick: fn(&super::Morse) -> Option<i64>, what: &str) -> std::result::Result<i64, String> {
        self.ds.morse.as_ref().and_then(pick).ok_or_else(|| format!("morse count {what}"))
    }

    /// `Σ_j term(row_j)`, requiring every row to provide the term.
    fn branch_sum(&self, what: &str, term: impl Fn(&BranchTable) -> Option<i64>) -> std::result::Result<i64, String> {
        if self.branches.is_empty() {
            return Err("branch table".into());
        }
        let mut total = 0;
        for (name, row) in self.branches {
            total += term(row).ok_or_else(|| format!("{what} for branch '{name}'"))?;
        }
        Ok(total)
    }
}

type Eval = std::result::Result<Verdict, String>;

fn run(id: &str, eval: impl FnOnce() -> Eval) -> Verdict {
    eval().unwrap_or_else(|missing| Verdict::skipped(id, &missing))
}

fn per_branch(
    c: &Ctx<'_>,
    id: &str,
    what: &str,
    sides: impl Fn(&BranchTable) -> Option<(i64, i64)>,
) -> Vec<Verdict> {
    if c.branches.is_empty() {
        return vec![Verdict::skipped(id, "branch table")];
    }
    c.branches
        .iter()
        .map(|(name, row)| {
            let label = format!("{id}({name})");
            match sides(row) {
                Some((l, r)) => Verdict::compare(&label, "=", l, r, what.to_string()),
                None => Verdict::skipped(&label, &format!("{what} inputs")),
            }
        })
        .collect()
}

/// Evaluates every identity in [`IDENTITIES`] against `ds`, with `d = dim X`
/// and the branch tables of the critical locus of `g`.
pub fn verify_stratified_identities(
    ds: &Dataset,
    d: usize,
    n: Option<u32>,
    branches: &[(String, BranchTable)],
) -> Vec<Verdict> {
    let c = Ctx { ds, d, n: n.or(ds.n), branches };
    let s = sign(c.d as i64 - 1);
    let mut out = Vec::new();

    out.extend(per_branch(&c, "branch-relation", "Eu_{g,X∩f=δ}(b) = Eu_X(b) - B_{g,X∩f=δ}(b)", |r| {
        Some((r.eu_g_f?, r.eu_x? - r.b_g_f?))
    }));

    out.push(run("restriction-equality", || {
        let (l, r) = (c.b(Func::G, Space::Xf)?, c.b(Func::GTilde, Space::Xf)?);
        Ok(Verdict::compare("restriction-equality", "=", l, r, "B_{g,X^f} = B_{g~,X^f}".into()))
    }));

    out.push(run("prepolar-exchange", || {
        let (l, r) = (c.b(Func::GTilde, Space::Xf)?, c.b(Func::F, Space::XgTilde)?);
        Ok(Verdict::compare("prepolar-exchange", "=", l, r, "B_{g~,X^f} = B_{f,X^g~}".into()))
    }));

    out.push(run("parity", || {
        let (l, r) = (c.eu(Space::XgTilde)?, c.eu(Space::Xg)?);
        let rel = if c.d.is_multiple_of(2) { ">=" } else { "<=" };
        Ok(Verdict::compare("parity", rel, l, r, format!("Eu_X^g~(0) {rel} Eu_X^g(0) for d = {}", c.d)))
    }));

    out.push(run("branch-difference", || {
        let l = c.b(Func::F, Space::Xg)? - c.b(Func::F, Space::XgTilde)?;
        let r = c.branch_sum("m_f, eu_xg, b_g_f", |t| Some(t.m_f? * (t.eu_xg? - t.b_g_f?)))?;
        Ok(Verdict::compare(
            "branch-difference",
            "=",
            l,
            r,
            "B_{f,X^g} - B_{f,X^g~} = Σ m_f (Eu_X^g(b) - B_{g,X∩f=δ}(b))".into(),
        ))
    }));

    out.push(run("euler-obstruction-difference", || {
        let l = c.eu(Space::Xg)? - c.eu(Space::XgTilde)?;
        let r = c.branch_sum("m_l, eu_xg, b_g_l", |t| Some(t.m_l? * (t.eu_xg? - t.b_g_l?)))?;
        Ok(Verdict::compare(
            "euler-obstruction-difference",
            "=",
            l,
            r,
            "Eu_X^g(0) - Eu_X^g~(0) = Σ m_l (Eu_X^g(b) - B_{g,X∩l=δ}(b))".into(),
        ))
    }));

    out.push(run("morse-m", || {
        let l = c.morse(|m| m.m_tilde, "m~")?;
        let r = s * c.branch_sum("m_f, eu_g_f", |t| Some(t.m_f? * t.eu_g_f?))? + c.morse(|m| m.m, "m")?;
        Ok(Verdict::compare("morse-m", "=", l, r, "m~ = (-1)^(d-1) Σ m_f Eu_{g,X∩f=δ}(b) + m".into()))
    }));

    out.extend(per_branch(&c, "slice-exchange", "B_{g,X∩f=δ}(b) = B_{f,X∩g~=α}(b)", |r| Some((r.b_g_f?, r.b_f_gt?))));
    out.extend(per_branch(&c, "slice-exchange-eu", "Eu_{g,X∩f=δ}(b) = Eu_{f,X∩g~=α}(b)", |r| {
        Some((r.eu_g_f?, r.eu_f_gt?))
    }));

    out.push(run("morse-brasselet", || {
        let l = c.b(Func::G, Space::X)? - c.b(Func::GTilde, Space::X)?;
        let r = s * (c.morse(|m| m.n, "n")? - c.morse(|m| m.n_tilde, "n~")?);
        Ok(Verdict::compare("morse-brasselet", "=", l, r, "B_{g,X} - B_{g~,X} = (-1)^(d-1) (n - n~)".into()))
    }));

    out.push(run("morse-n", || {
        let l = c.morse(|m| m.n_tilde, "n~")?;
        let r = c.morse(|m| m.n, "n")? + s * c.n()? * c.branch_sum("m_f, eu_f_gt", |t| Some(t.m_f? * t.eu_f_gt?))?;
        Ok(Verdict::compare("morse-n", "=", l, r, "n~ = n + (-1)^(d-1) N Σ m_f Eu_{f,X∩g~=α}(b)".into()))
    }));

    out.push(run("main-theorem", || {
        let l = c.b(Func::GTilde, Space::X)?;
        let r = c.b(Func::G, Space::X)? + c.n()? * c.branch_sum("m_f, eu_f_gt", |t| Some(t.m_f? * t.eu_f_gt?))?;
        Ok(Verdict::compare("main-theorem", "=", l, r, "B_{g~,X} = B_{g,X} + N Σ m_f Eu_{f,X∩g~=α}(b)".into()))
    }));

    out
}

#[cfg(test)]
mod tests {
    use super::super::StratumRecord;
    use super::*;

    #[test]
    fn incomplete_dataset_is_skipped_not_guessed() {
        let ds = Dataset {
            records: vec![StratumRecord {
                name: "reg".into(),
                space: Space::X,
                dim: 3,
                eu: 1,
                chi: [(Func::G, 0), (Func::GTilde, 3)].into_iter().collect(),
                zero_of: vec![],
                branches: vec![],
            }],
            ..Dataset::default()
        };
        let v = verify_stratified_identities(&ds, 3, Some(3), &[]);
        assert!(v.iter().all(|v| v.status == Status::Skipped), "{v:?}");
        let row = BranchTable { m_f: Some(1), eu_f_gt: Some(1), ..BranchTable::default() };
        let v = verify_stratified_identities(&ds, 3, Some(3), &[("b".into(), row)]);
        let main = v.iter().find(|v| v.identity == "main-theorem").unwrap();
        assert_eq!((main.status, main.left, main.right), (Status::Pass, Some(3), Some(3)));
    }
}
