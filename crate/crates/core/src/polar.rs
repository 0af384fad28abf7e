//! Relative polar curves, intersection numbers at the origin, gap ratios and
//! the Iomdin threshold.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{Ideal, LocalDim, Poly, QuotientDim, Rational};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::local::{self, jacobian_ideal, jacobian_minors, BranchParam, Host};

/// The relative polar curve of `(f, g)` near the origin.
#[derive(Clone, Debug)]
pub struct PolarCurve {
    pub ideal: Ideal,
    pub dim: LocalDim,
    pub components: Vec<BranchParam>,
}

impl PolarCurve {
    pub fn is_empty(&self) -> bool {
        self.dim == LocalDim::Empty
    }
}

/// Closure of the critical locus of `(f, g)` off `{f g = 0}` and off `Σg`:
/// `((minors(f, g) : Jac(g)^∞) : (f g)^∞)`.
pub fn relative_polar_ideal(f: &Poly, g: &Poly, limits: &Limits) -> Result<PolarCurve> {
    f.ring().check_same(g.ring())?;
    let minors = Ideal::new(g.ring(), jacobian_minors(f, g))?;
    let off_sigma = minors.saturate(&jacobian_ideal(g), limits)?;
    let ideal = off_sigma.saturate_principal(&(f * g), limits)?;
    let dim = ideal.dim_at_origin(limits)?;
    Ok(PolarCurve { ideal, dim, components: Vec::new() })
}

/// Attaches parametrized components after checking each one against the ideal.
pub fn with_components(mut curve: PolarCurve, components: Vec<BranchParam>) -> Result<PolarCurve> {
    for b in &components {
        local::validate_branch(b, &curve.ideal)?;
    }
    curve.components = components;
    Ok(curve)
}

/// `([V(ideal)] · [V(h)])_0`, the colength of `ideal + <h>` at the origin.
pub fn intersection_number(ideal: &Ideal, h: &Poly, limits: &Limits) -> Result<u64> {
    let sum = ideal.with(std::slice::from_ref(h))?;
    match sum.dim_at_origin(limits)? {
        LocalDim::Empty => Ok(0),
        LocalDim::Dim(0) => match sum.quotient_dim_local(limits)? {
            QuotientDim::Finite(n) => Ok(n),
            QuotientDim::Infinite => unreachable!("zero-dimensional germ has finite colength"),
        },
        LocalDim::Dim(d) => Err(Error::Improper(format!("V({h}) meets the curve in dimension {d} at the origin"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapRatio {
    pub name: String,
    pub multiplicity: u32,
    pub ord_g: u32,
    pub ord_f: u32,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub ratios: Vec<GapRatio>,
    /// `([Γ]·[V(g)])_0 + 1`, or 2 for an empty polar curve.
    pub sound_bound: u32,
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact_max: Option<Rational>,
    /// `([Γ]·[V(g)])_0` and `([Γ]·[V(f)])_0`.
    pub total_g: u64,
    pub total_f: u64,
    /// `true` when the components account for both totals, so the list is complete.
    pub complete: bool,
    /// Why the component list was not accepted as complete.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

impl GapReport {
    pub fn threshold(&self) -> u32 {
        match (&self.exact_max, self.complete) {
            (Some(max), true) => threshold_from_max(max),
            _ => self.sound_bound.max(2),
        }
    }
}

/// Smallest integer `N >= 2` strictly above `max`.
pub fn threshold_from_max(max: &Rational) -> u32 {
    let floor = max.numer().div_floor(max.denom());
    (floor.to_u32().unwrap_or(u32::MAX - 1) + 1).max(2)
}

/// Threshold from an explicit list of gap ratios.
pub fn threshold_from_ratios(ratios: &[Rational]) -> u32 {
    ratios.iter().max().map_or(2, threshold_from_max)
}

/// Per-component gap ratios `ord_t g(α) / ord_t f(α)` and the sound bound.
/// Without supplied components, coordinate axes on the curve are tried.
pub fn gap_ratios(f: &Poly, g: &Poly, curve: &PolarCurve, limits: &Limits) -> Result<GapReport> {
    if curve.is_empty() {
        return Ok(GapReport {
            ratios: Vec::new(),
            sound_bound: 2,
            exact_max: None,
            total_g: 0,
            total_f: 0,
            complete: true,
            mismatch: None,
        });
    }
    let total_g = intersection_number(&curve.ideal, g, limits)?;
    let total_f = intersection_number(&curve.ideal, f, limits)?;
    let sound_bound = u32::try_from(total_g + 1).unwrap_or(u32::MAX).max(2);
    let components = if curve.components.is_empty() {
        local::discover_axis_branches(&curve.ideal, Host::Polar, limits)?.unwrap_or_default()
    } else {
        curve.components.clone()
    };
    let mut ratios = Vec::new();
    let (mut sum_g, mut sum_f) = (0u64, 0u64);
    for b in &components {
        let ord_g = local::local_degree(g, b, limits)?;
        let ord_f = local::local_degree(f, b, limits)?;
        sum_g += u64::from(b.multiplicity) * u64::from(ord_g);
        sum_f += u64::from(b.multiplicity) * u64::from(ord_f);
        ratios.push(GapRatio {
            name: b.name.clone(),
            multiplicity: b.multiplicity,
            ord_g,
            ord_f,
            ratio: Rational::new(ord_g.into(), ord_f.into()),
        });
    }
    let mismatch = if components.is_empty() {
        Some("no parametrized components".to_string())
    } else if (sum_g, sum_f) != (total_g, total_f) {
        Some(format!(
            "MISMATCH: components give (g, f) intersections ({sum_g}, {sum_f}), the curve gives ({total_g}, {total_f})"
        ))
    } else {
        None
    };
    let exact_max = ratios.iter().map(|r| r.ratio.clone()).max();
    Ok(GapReport { ratios, sound_bound, exact_max, total_g, total_f, complete: mismatch.is_none(), mismatch })
}

/// Smallest admissible `N`, with the report it was derived from.
pub fn iomdin_threshold(f: &Poly, g: &Poly, components: &[BranchParam], limits: &Limits) -> Result<(u32, GapReport)> {
    let curve = with_components(relative_polar_ideal(f, g, limits)?, components.to_vec())?;
    let report = gap_ratios(f, g, &curve, limits)?;
    Ok((report.threshold(), report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionVerdict {
    pub n: u32,
    pub pass: bool,
    /// A generator of one side whose radical membership in the other fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Checks that, near the origin, the polar curve of `(f, g + f^N)` is the union
/// of `Σg` and the polar curve of `(f, g)`.
pub fn verify_polar_decomposition(f: &Poly, g: &Poly, n: u32, limits: &Limits) -> Result<DecompositionVerdict> {
    if n < 2 {
        return Err(Error::NOutOfRange(format!("N = {n} is below 2")));
    }
    let gt = g + &f.pow(n);
    let lhs = relative_polar_ideal(f, &gt, limits)?.ideal;
    let rhs = jacobian_ideal(g).product(&relative_polar_ideal(f, g, limits)?.ideal)?;
    for (from, into, label) in [(&rhs, &lhs, "Jac(g)·Γ(f,g)"), (&lhs, &rhs, "Γ(f,g~)")] {
        for h in from.gens() {
            if !into.local_radical_contains(h, limits)? {
                return Ok(DecompositionVerdict { n, pass: false, witness: Some(format!("{label} generator {h}")) });
            }
        }
    }
    Ok(DecompositionVerdict { n, pass: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, Ring};
    use crate::frontend::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, &Ring::new(&["x", "y", "z"]).unwrap()).unwrap()
    }

    #[test]
    fn polar_curves() {
        let lim = Limits::default();
        assert!(relative_polar_ideal(&p("z"), &p("x^2+y^2"), &lim).unwrap().is_empty());
        assert!(relative_polar_ideal(&p("z"), &p("x*y*(x+y)"), &lim).unwrap().is_empty());
        let c = relative_polar_ideal(&p("z"), &p("x^2+y^2+z^3"), &lim).unwrap();
        assert_eq!(c.dim, LocalDim::Dim(1));
        assert_eq!(intersection_number(&c.ideal, &p("z"), &lim).unwrap(), 1);
        assert_eq!(intersection_number(&c.ideal, &p("x^2+y^2+z^3"), &lim).unwrap(), 3);
        assert!(matches!(intersection_number(&c.ideal, &p("x"), &lim), Err(Error::Improper(_))));
    }

    #[test]
    fn cusp_against_line() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let cusp = Ideal::new(&r, vec![parse_poly("y^2 - x^3", &r).unwrap()]).unwrap();
        assert_eq!(intersection_number(&cusp, &parse_poly("x", &r).unwrap(), &Limits::default()).unwrap(), 2);
    }

    #[test]
    fn thresholds() {
        let lim = Limits::default();
        assert_eq!(iomdin_threshold(&p("z"), &p("x^2+y^2"), &[], &lim).unwrap().0, 2);
        let (t, rep) = iomdin_threshold(&p("z"), &p("x^2+y^2+z^3"), &[], &lim).unwrap();
        assert_eq!((t, rep.sound_bound, rep.exact_max.clone()), (4, 4, Some(ratio(3, 1))));
        assert_eq!(threshold_from_ratios(&[ratio(3, 1), ratio(5, 2)]), 4);
        assert_eq!(threshold_from_ratios(&[ratio(5, 2)]), 3);
        assert_eq!(threshold_from_ratios(&[]), 2);
    }

    #[test]
    fn decompositions() {
        let lim = Limits::default();
        for (g, n) in [("x^2+y^2", 3), ("x*y*(x+y)", 2), ("x^2+y^2+z^3", 5)] {
            assert!(verify_polar_decomposition(&p("z"), &p(g), n, &lim).unwrap().pass, "{g}");
        }
    }
}
