//! Datasets generated from a smooth ambient space `X = C^v`, where every entry
//! follows from Milnor numbers.

use std::collections::BTreeMap;

use crate::algebra::{Ideal, Poly, QuotientDim};
use crate::error::{Error, Result};
use crate::frontend::scenario::{BranchEntry, FSpec, Scenario};
use crate::iomdin::{self, sign};
use crate::le;
use crate::limits::Limits;
use crate::frontend::parse_poly;
use crate::local::{self, jacobian_minors, Host};

use super::{BranchTable, Dataset, Func, Space, StratumRecord};

fn regular(space: Space, dim: usize, chi: &[(Func, i64)]) -> StratumRecord {
    StratumRecord {
        name: "reg".into(),
        space,
        dim,
        eu: 1,
        chi: chi.iter().copied().collect(),
        zero_of: Vec::new(),
        branches: Vec::new(),
    }
}

/// Milnor number that is 0 for a germ nonsingular at the origin.
fn mu_or_zero(g: &Poly, limits: &Limits) -> Result<u64> {
    match local::milnor_number(g, limits) {
        Ok(m) => Ok(m),
        Err(Error::Nonsingular(_)) => Ok(0),
        Err(e) => Err(e),
    }
}

/// `χ({h = 0} ∩ {k = δ})` near the origin for `h` with an isolated singularity.
/// The critical points of `k` on the Milnor fibre of `h` lie on the curve
/// `minors(k, h) : h^∞`; each is a vanishing cycle of `k` restricted to the fibre.
fn hypersurface_slice_chi(h: &Poly, k: &Poly, limits: &Limits) -> Result<i64> {
    let s1 = sign(h.ring().nvars() as i64 - 1);
    let mu = mu_or_zero(h, limits)? as i64;
    let curve = Ideal::new(h.ring(), jacobian_minors(k, h))?.saturate_principal(h, limits)?;
    let crit = match curve.with(std::slice::from_ref(h))?.quotient_dim_local(limits)? {
        QuotientDim::Finite(n) => n as i64,
        QuotientDim::Infinite => {
            return Err(Error::NonIsolated(format!("{k} has non-isolated critical points on the Milnor fibre of {h}")))
        }
    };
    Ok(1 + s1 * mu - s1 * crit)
}

/// `χ` of the Milnor fibre of `g` on `X^f`, which may have a one-dimensional critical locus.
fn restricted_fibre_chi(h: &Poly, limits: &Limits) -> Result<i64> {
    if h.ring().nvars() == 0 || h.is_zero() {
        return Err(Error::Unsupported("g vanishes identically on {f = 0}".into()));
    }
    let data = le::le_numbers(h, None, &[], limits)?;
    Ok(le::euler_char_fibre(h.ring().nvars(), &data))
}

/// Builds the dataset of `X = C^v` at `N`. Quantities that need `X^g` or Morse
/// counts are left out, so the identities depending on them report SKIPPED.
pub fn export_dataset(s: &Scenario, n: u32) -> Result<Scenario> {
    crate::frontend::scenario::check_n_range(n, n)?;
    let limits = &s.limits;
    let prep = iomdin::prepare(s)?;
    let case = iomdin::build_deformation(&prep.g, &prep.f, n, prep.threshold, limits)?;
    if !case.in_range() {
        return Err(Error::NOutOfRange(format!("N = {n} is below the threshold {}", prep.threshold)));
    }
    let v = prep.nvars as i64;
    let (s1, s2) = (sign(v - 1), sign(v - 2));
    let mu_tilde = case.certificate.finite().expect("certified in range") as i64;
    let l = parse_poly(&prep.le.l, &s.ring)?;
    let chi_f = if prep.f_linear { 1 } else { 1 + s1 * mu_or_zero(&prep.f, limits)? as i64 };

    let mut records = vec![regular(
        Space::X,
        prep.nvars,
        &[(Func::G, prep.chi_g), (Func::GTilde, 1 + s1 * mu_tilde), (Func::F, chi_f), (Func::L, 1)],
    )];
    if let Some(coeffs) = prep.f.linear_coefficients() {
        let restricted = local::restrict_to_hyperplane(&prep.g, &coeffs)?;
        let chi = restricted_fibre_chi(&restricted, limits)?;
        records.push(regular(Space::Xf, prep.nvars - 1, &[(Func::G, chi), (Func::GTilde, chi), (Func::L, 1)]));
    }
    let gt = &case.g_tilde;
    records.push(regular(
        Space::XgTilde,
        prep.nvars - 1,
        &[(Func::F, hypersurface_slice_chi(gt, &prep.f, limits)?), (Func::L, hypersurface_slice_chi(gt, &l, limits)?)],
    ));

    let mut tables = BTreeMap::new();
    for (b, row) in prep.sigma.iter().zip(&prep.branches) {
        let nu = local::level_set_milnor(&prep.g, &prep.f, n, b, limits)?.value as i64;
        let mu = row.mu as i64;
        let mu_l = local::branch_slice_milnor(&prep.g, &l, b, limits)?.value as i64;
        let eu_f_gt = s1 * nu;
        tables.insert(
            b.name.clone(),
            BranchTable {
                m_f: Some(i64::from(row.m_f)),
                m_l: Some(i64::from(local::local_degree(&l, b, limits)?)),
                eu_x: Some(1),
                eu_xg: None,
                b_g_f: Some(1 + s2 * mu),
                eu_g_f: Some(s1 * mu),
                eu_f_gt: Some(eu_f_gt),
                b_f_gt: Some(1 - eu_f_gt),
                b_g_l: Some(1 + s2 * mu_l),
            },
        );
    }

    let mut out = s.clone();
    out.description = format!("{} Dataset of X = C^{} exported at N = {n}.", s.description, prep.nvars).trim().to_string();
    out.dim = prep.nvars;
    out.f = FSpec::Given(prep.f.clone());
    let mut branches: Vec<BranchEntry> = out.branches.into_iter().filter(|b| b.host != Host::Sigma).collect();
    for b in &prep.sigma {
        branches.push(BranchEntry {
            name: b.name.clone(),
            components: Some(b.components.clone()),
            truncation: b.truncation,
            host: Host::Sigma,
            multiplicity: b.multiplicity,
            table: tables.get(&b.name).copied(),
        });
    }
    out.branches = branches;
    out.dataset = Some(Dataset { n: Some(n), records, ..Dataset::default() });
    out.expected = None;
    Ok(out)
}
