//! The deformation `g~ = g + f^N` and the Lê-Iomdin identities across a sweep of `N`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{LocalDim, Poly, QuotientDim};
use crate::error::{Error, Result};
use crate::frontend::scenario::{FSpec, Scenario, SCHEMA_VERSION};
use crate::frontend::parse_poly;
use crate::le::{self, LeData};
use crate::limits::Limits;
use crate::local::{self, jacobian_ideal, BranchParam, Host};
use crate::polar::{self, GapReport};
use crate::strat::{Status, Verdict};

pub(crate) fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Checks `f(0) = g(0) = 0`, `dim Σg <= 1`, `Σg ∩ {f = 0} = {0}` and that `f` has
/// at most an isolated singularity.
pub fn check_hypotheses(g: &Poly, f: &Poly, limits: &Limits) -> Result<()> {
    g.ring().check_same(f.ring())?;
    for (name, p) in [("g", g), ("f", f)] {
        if !p.constant_term().is_zero() {
            return Err(Error::HypothesisFail(format!("{name}(0) != 0")));
        }
    }
    let sigma = local::critical_locus(g, Some(f), limits)?;
    if let LocalDim::Dim(d) = sigma.dim {
        if d > 1 {
            return Err(Error::HypothesisFail(format!("dim Σg = {d} > 1")));
        }
    }
    if sigma.meets_f_only_at_origin != Some(true) {
        return Err(Error::HypothesisFail(format!("Σg ∩ {{{f} = 0}} is not the origin")));
    }
    if let LocalDim::Dim(d) = jacobian_ideal(f).dim_at_origin(limits)? {
        if d > 0 {
            return Err(Error::HypothesisFail(format!("f = {f} has a critical locus of dimension {d}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationCase {
    pub n: u32,
    pub g_tilde: Poly,
    /// `dim O / Jac(g~)` at the origin.
    pub certificate: QuotientDim,
    pub threshold: u32,
}

impl DeformationCase {
    pub fn in_range(&self) -> bool {
        self.n >= self.threshold
    }
}

/// Builds `g~ = g + f^N` and its isolation certificate. Below the threshold an
/// infinite certificate is reported; at or above it, it is an error.
pub fn build_deformation(g: &Poly, f: &Poly, n: u32, threshold: u32, limits: &Limits) -> Result<DeformationCase> {
    check_hypotheses(g, f, limits)?;
    deformation_unchecked(g, f, n, threshold, limits)
}

fn deformation_unchecked(g: &Poly, f: &Poly, n: u32, threshold: u32, limits: &Limits) -> Result<DeformationCase> {
    let g_tilde = g + &f.pow(n);
    let certificate = jacobian_ideal(&g_tilde).quotient_dim_local(limits)?;
    if n >= threshold && certificate == QuotientDim::Infinite {
        return Err(Error::NonIsolatedAtThreshold(format!(
            "g + f^{n} = {g_tilde} has a non-isolated singularity although N >= threshold {threshold}"
        )));
    }
    Ok(DeformationCase { n, g_tilde, certificate, threshold })
}

/// Per-branch data of `Σg` with respect to `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchRow {
    pub name: String,
    /// Local degree of `f` on the branch.
    pub m_f: u32,
    /// `μ(g|_{f^{-1}(δ)}, b)`.
    pub mu: u64,
}

/// Everything about `(g, f)` that does not depend on `N`.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub g: Poly,
    pub f: Poly,
    pub f_linear: bool,
    pub nvars: usize,
    pub threshold: u32,
    pub gap: GapReport,
    pub le: LeData,
    /// `true` when the Lê numbers were taken with `l = f`.
    pub le_aligned: bool,
    pub chi_g: i64,
    pub sigma: Vec<BranchParam>,
    pub branches: Vec<BranchRow>,
}

/// Resolves `f`, checks the hypotheses and computes the threshold, Lê numbers and branch data.
pub fn prepare(s: &Scenario) -> Result<Prepared> {
    let limits = &s.limits;
    let g = s.g()?.clone();
    let supplied = s.branch_params(Host::Sigma);
    let (le, f) = match &s.f {
        FSpec::Given(f) => {
            let linear = f.linear_coefficients().is_some();
            let le = le::le_numbers(&g, linear.then_some(f), &supplied, limits)?;
            (le, f.clone())
        }
        FSpec::GenericLinear => {
            let le = le::le_numbers(&g, None, &supplied, limits)?;
            let f = parse_poly(&le.l, g.ring())?;
            (le, f)
        }
    };
    check_hypotheses(&g, &f, limits)?;
    let f_linear = f.linear_coefficients().is_some();
    let le_aligned = f_linear && le.l == f.to_string();
    let nvars = g.ring().nvars();
    let chi_g = le::euler_char_fibre(nvars, &le);
    let (threshold, gap) = polar::iomdin_threshold(&f, &g, &s.branch_params(Host::Polar), limits)?;
    let sigma = match jacobian_ideal(&g).dim_at_origin(limits)? {
        LocalDim::Dim(1) => le::sigma_branches(&g, &supplied, limits)?.0,
        _ => Vec::new(),
    };
    let mut branches = Vec::new();
    for b in &sigma {
        let m_f = local::local_degree(&f, b, limits)?;
        let mu = if f_linear {
            local::branch_slice_milnor(&g, &f, b, limits)?.value
        } else {
            local::fibre_slice_milnor(&g, &f, b, limits)?.value
        };
        branches.push(BranchRow { name: b.name.clone(), m_f, mu });
    }
    Ok(Prepared { g, f, f_linear, nvars, threshold, gap, le, le_aligned, chi_g, sigma, branches })
}

impl Prepared {
    fn sum_m_mu(&self) -> i64 {
        self.branches.iter().map(|b| i64::from(b.m_f) * b.mu as i64).sum()
    }

    fn sign_v1(&self) -> i64 {
        sign(self.nvars as i64 - 1)
    }

    /// `χ(F_g~) = 1 + (-1)^(v-1) μ(g~)`.
    pub fn chi_tilde(&self, mu_tilde: u64) -> i64 {
        1 + self.sign_v1() * mu_tilde as i64
    }

    pub fn verify_le_number_identity(&self, n: u32, mu_tilde: u64) -> Verdict {
        const ID: &str = "massey";
        if !self.le_aligned {
            return Verdict::skipped(ID, "Lê numbers with respect to l = f (f must be an admissible linear form)");
        }
        let right = self.le.lambda0 as i64 + (i64::from(n) - 1) * self.le.lambda1 as i64;
        Verdict::compare(ID, "=", mu_tilde as i64, right, "μ(g~) = λ⁰ + (N-1) λ¹".into())
    }

    pub fn verify_chi_identity(&self, n: u32, mu_tilde: u64) -> Verdict {
        let right = self.chi_g + self.sign_v1() * i64::from(n) * self.sum_m_mu();
        Verdict::compare(
            "chi",
            "=",
            self.chi_tilde(mu_tilde),
            right,
            "χ(F_g~) = χ(F_g) + (-1)^(v-1) N Σ m_f μ_j".into(),
        )
    }

    pub fn verify_tibar_identity(&self, n: u32, mu_tilde: u64) -> Verdict {
        const ID: &str = "tibar";
        if !self.f_linear {
            return Verdict::skipped(ID, "a linear f");
        }
        let v2 = sign(self.nvars as i64 - 2);
        let right: i64 = i64::from(n)
            * self.branches.iter().map(|b| i64::from(b.m_f) * (1 - (1 + v2 * b.mu as i64))).sum::<i64>();
        Verdict::compare(
            ID,
            "=",
            self.chi_tilde(mu_tilde) - self.chi_g,
            right,
            "χ(F_g~) - χ(F_g) = N Σ m_b (1 - χ(F_j))".into(),
        )
    }

    /// `ñ - n` from the Brasselet difference against its branch expansion.
    pub fn morse_defect(&self, n: u32, mu_tilde: u64) -> Verdict {
        let s = self.sign_v1();
        let from_chi = s * (self.chi_tilde(mu_tilde) - self.chi_g);
        let expansion = s * i64::from(n) * self.branches.iter().map(|b| i64::from(b.m_f) * s * b.mu as i64).sum::<i64>();
        Verdict::compare("morse", "=", from_chi, expansion, "ñ - n: (-1)^(d-1) (χ(F_g~) - χ(F_g)) = (-1)^(d-1) N Σ m_f Eu_f(b)".into())
    }

    pub fn row(&self, n: u32, limits: &Limits) -> Result<Row> {
        let case = deformation_unchecked(&self.g, &self.f, n, self.threshold, limits)?;
        if !case.in_range() {
            return Ok(Row {
                n,
                range: RowRange::OutOfRange,
                mu_tilde: case.certificate,
                chi_tilde: case.certificate.finite().map(|m| self.chi_tilde(m)),
                verdicts: Vec::new(),
            });
        }
        let mu = case.certificate.finite().expect("certified at threshold");
        let chi = self.verify_chi_identity(n, mu);
        let tibar = self.verify_tibar_identity(n, mu);
        let mut verdicts = vec![self.verify_le_number_identity(n, mu), chi.clone(), tibar.clone(), self.morse_defect(n, mu)];
        verdicts.push(match (tibar.status, tibar.left) {
            (Status::Skipped, _) | (_, None) => Verdict::skipped("chi-tibar-coherence", "the Tibăr row"),
            (_, Some(t)) => Verdict::compare(
                "chi-tibar-coherence",
                "=",
                chi.left.unwrap_or_default() - self.chi_g,
                t,
                "χ defect equals Tibăr defect".into(),
            ),
        });
        Ok(Row { n, range: RowRange::InRange, mu_tilde: case.certificate, chi_tilde: Some(self.chi_tilde(mu)), verdicts })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowRange {
    #[serde(rename = "IN-RANGE")]
    InRange,
    #[serde(rename = "OUT-OF-RANGE")]
    OutOfRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    #[serde(rename = "N")]
    pub n: u32,
    pub range: RowRange,
    pub mu_tilde: QuotientDim,
    pub chi_tilde: Option<i64>,
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictTable {
    pub schema_version: u32,
    pub scenario: String,
    pub variables: Vec<String>,
    pub g: String,
    pub f: String,
    #[serde(rename = "N")]
    pub n_range: [u32; 2],
    pub threshold: u32,
    pub gap: GapReport,
    pub le: LeData,
    pub chi_g: i64,
    pub branches: Vec<BranchRow>,
    pub rows: Vec<Row>,
    pub limits: Limits,
    /// No in-range verdict failed.
    pub pass: bool,
}

impl VerdictTable {
    pub fn failures(&self) -> impl Iterator<Item = (u32, &Verdict)> {
        self.rows.iter().flat_map(|r| r.verdicts.iter().filter(|v| v.status == Status::Fail).map(move |v| (r.n, v)))
    }
}

/// Runs every identity for each `N` in `range`, on `jobs` worker threads
/// (0 picks a default). Rows come back ordered by `N`.
pub fn verify_sweep(s: &Scenario, range: (u32, u32), jobs: usize) -> Result<VerdictTable> {
    crate::frontend::scenario::check_n_range(range.0, range.1)?;
    let prep = prepare(s)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Unsupported(format!("worker pool: {e}")))?;
    let rows: Vec<Row> =
        pool.install(|| (range.0..=range.1).into_par_iter().map(|n| prep.row(n, &s.limits)).collect::<Result<_>>())?;
    let mut table = VerdictTable {
        schema_version: SCHEMA_VERSION,
        scenario: s.name.clone(),
        variables: s.ring.names().to_vec(),
        g: prep.g.to_string(),
        f: prep.f.to_string(),
        n_range: [range.0, range.1],
        threshold: prep.threshold,
        gap: prep.gap.clone(),
        le: prep.le.clone(),
        chi_g: prep.chi_g,
        branches: prep.branches.clone(),
        rows,
        limits: s.limits,
        pass: true,
    };
    let pass = table.failures().next().is_none();
    table.pass = pass;
    Ok(table)
}
