//! Lê numbers of germs whose critical locus has dimension at most one.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{rat, Ideal, LocalDim, Poly, QuotientDim, Rational};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::local::{self, jacobian_ideal, jacobian_minors, BranchParam, Host};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchLe {
    pub name: String,
    /// Local degree of `l` on the branch.
    pub m_l: u32,
    /// Milnor number of `g` on a nearby hyperplane `l = δ` at the branch point.
    pub mu: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeData {
    pub lambda0: u64,
    pub lambda1: u64,
    /// The linear form used as first coordinate.
    pub l: String,
    /// Variable order with the coordinate replaced by `l` first.
    pub coords: Vec<String>,
    pub branches: Vec<BranchLe>,
    pub route_log: Vec<String>,
}

/// Coefficients of rung `k` of the generic ladder: `c_i = 1 + i (k + 1)`.
pub fn generic_linear(ring: &crate::algebra::Ring, rung: u32) -> Poly {
    let coeffs: Vec<Rational> = (0..ring.nvars()).map(|i| rat(1 + i as i64 * (i64::from(rung) + 1))).collect();
    Poly::linear(ring, &coeffs)
}

fn is_zero_dim(d: LocalDim) -> bool {
    matches!(d, LocalDim::Empty | LocalDim::Dim(0))
}

/// The critical locus branches to use: the supplied ones, or coordinate axes when they cover `Σg`.
pub fn sigma_branches(g: &Poly, supplied: &[BranchParam], limits: &Limits) -> Result<(Vec<BranchParam>, String)> {
    let jac = jacobian_ideal(g);
    let own: Vec<BranchParam> = supplied.iter().filter(|b| b.host == Host::Sigma).cloned().collect();
    if own.is_empty() {
        return match local::discover_axis_branches(&jac, Host::Sigma, limits)? {
            Some(found) => Ok((found, "branches: coordinate axes, cover certified".into())),
            None => Err(Error::Unsupported(
                "critical locus is one-dimensional but no branch parametrizations were supplied".into(),
            )),
        };
    }
    for b in &own {
        local::validate_branch(b, &jac)?;
    }
    let note = if own.iter().all(|b| b.truncation == local::Truncation::Exact) {
        if local::certify_cover(&jac, &own, limits)? {
            "branches: supplied, cover certified"
        } else {
            return Err(Error::Unsupported("supplied branches do not cover the critical locus".into()));
        }
    } else {
        "branches: supplied truncated series, cover not certified"
    };
    Ok((own, note.into()))
}

/// Attempts the Lê numbers with respect to one linear form.
fn try_form(g: &Poly, l: &Poly, branches: &[BranchParam], limits: &Limits) -> Result<LeData> {
    let coeffs = l.linear_coefficients().ok_or_else(|| Error::Unsupported(format!("{l} is not a linear form")))?;
    let k = coeffs.iter().rposition(|c| !c.is_zero()).ok_or_else(|| Error::Degenerate("zero linear form".into()))?;
    let ring = g.ring();
    let mut coords = vec![ring.name(k).to_string()];
    coords.extend((0..ring.nvars()).filter(|&i| i != k).map(|i| ring.name(i).to_string()));

    let jac = jacobian_ideal(g);
    let gamma = Ideal::new(ring, jacobian_minors(l, g))?.saturate(&jac, limits)?;
    if !matches!(gamma.dim_at_origin(limits)?, LocalDim::Empty | LocalDim::Dim(0) | LocalDim::Dim(1)) {
        return Err(Error::Improper(format!("polar curve for {l} is not a curve")));
    }
    let meet = gamma.with(&[g.derivative(k)])?;
    if !is_zero_dim(meet.dim_at_origin(limits)?) {
        return Err(Error::Improper(format!("Γ¹ meets V(∂g/∂{}) in positive dimension", ring.name(k))));
    }
    let lambda0 = match meet.quotient_dim_local(limits)? {
        QuotientDim::Finite(n) => n,
        QuotientDim::Infinite => unreachable!("zero-dimensional germ has finite colength"),
    };
    let mut rows = Vec::new();
    let mut lambda1 = 0;
    for b in branches {
        let m_l = local::local_degree(l, b, limits)?;
        let mu = local::branch_slice_milnor(g, l, b, limits)?.value;
        lambda1 += u64::from(m_l) * mu;
        rows.push(BranchLe { name: b.name.clone(), m_l, mu });
    }
    Ok(LeData { lambda0, lambda1, l: l.to_string(), coords, branches: rows, route_log: Vec::new() })
}

/// `(λ⁰, λ¹)` of `g`. The form `l` is tried first when given, then the generic ladder.
pub fn le_numbers(g: &Poly, l: Option<&Poly>, branches: &[BranchParam], limits: &Limits) -> Result<LeData> {
    let jac = jacobian_ideal(g);
    let dim = jac.dim_at_origin(limits)?;
    let name = |p: Option<&Poly>| p.map_or_else(|| generic_linear(g.ring(), 0).to_string(), Poly::to_string);
    match dim {
        LocalDim::Empty => {
            return Ok(LeData {
                lambda0: 0,
                lambda1: 0,
                l: name(l),
                coords: g.ring().names().to_vec(),
                branches: Vec::new(),
                route_log: vec!["g is nonsingular at the origin".into()],
            })
        }
        LocalDim::Dim(0) => {
            let mu = local::milnor_number(g, limits)?;
            return Ok(LeData {
                lambda0: mu,
                lambda1: 0,
                l: name(l),
                coords: g.ring().names().to_vec(),
                branches: Vec::new(),
                route_log: vec!["isolated singularity: λ⁰ = μ, λ¹ = 0".into()],
            });
        }
        LocalDim::Dim(1) => {}
        LocalDim::Dim(d) => {
            return Err(Error::NonIsolated(format!("critical locus of {g} has dimension {d}; only λ⁰, λ¹ are supported")))
        }
    }
    let (branches, note) = sigma_branches(g, branches, limits)?;
    let mut log = vec![note];
    let mut candidates: Vec<Poly> = l.into_iter().cloned().collect();
    candidates.extend((0..limits.generic_ladder).map(|k| generic_linear(g.ring(), k)));
    for cand in &candidates {
        match try_form(g, cand, &branches, limits) {
            Ok(mut data) => {
                log.push(format!("λ⁰ = colength(Γ¹ + <∂g/∂{}>) for l = {cand}", data.coords[0]));
                log.push("λ¹ = Σ m_l(b) μ(g on l = δ, b)".into());
                data.route_log = log;
                return Ok(data);
            }
            Err(e @ (Error::Improper(_) | Error::Degenerate(_))) => log.push(format!("l = {cand} rejected: {e}")),
            Err(e) => return Err(e),
        }
    }
    Err(Error::UndefinedLe(format!("no admissible linear form among {} candidates: {}", candidates.len(), log.join("; "))))
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `χ(F_g) = 1 + (-1)^(v-1) λ⁰ + (-1)^(v-2) λ¹` with `v` variables.
pub fn euler_char_fibre(nvars: usize, le: &LeData) -> i64 {
    let v = nvars as i64;
    1 + sign(v - 1) * le.lambda0 as i64 + sign(v - 2) * le.lambda1 as i64
}
