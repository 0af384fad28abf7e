//! Milnor numbers, critical loci, branch parametrizations and per-branch
//! quantities: local degrees and Milnor numbers of slices at branch points.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Ideal, LocalDim, Poly, QuotientDim, Rational, Ring};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Which ideal a branch claims to lie on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Host {
    /// The critical locus of `g`.
    Sigma,
    /// The relative polar curve of `(f, g)`.
    Polar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Components are polynomials that lie on the curve exactly.
    Exact,
    /// Components are power series known modulo `t^K`.
    Order(u32),
}

/// Parametrization `t -> (b_0(t), ..., b_{v-1}(t))` of a curve branch through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParam {
    pub name: String,
    /// Components in the one-variable ring `Q[t]`.
    pub components: Vec<Poly>,
    pub truncation: Truncation,
    pub host: Host,
    pub multiplicity: u32,
}

impl BranchParam {
    pub fn exact(name: &str, components: Vec<Poly>, host: Host) -> BranchParam {
        BranchParam { name: name.to_string(), components, truncation: Truncation::Exact, host, multiplicity: 1 }
    }

    /// Coordinate axis `z_i = t`, other coordinates zero.
    pub fn axis(name: &str, nvars: usize, index: usize, host: Host) -> BranchParam {
        let series = Ring::series();
        let components =
            (0..nvars).map(|k| if k == index { Poly::var(&series, 0) } else { Poly::zero(&series) }).collect();
        BranchParam::exact(name, components, host)
    }

    /// The point `b(tau)`; only meaningful for exact parametrizations.
    pub fn point(&self, tau: &Rational) -> Vec<Rational> {
        self.components.iter().map(|c| c.eval(std::slice::from_ref(tau))).collect()
    }

    fn require_exact(&self, what: &str) -> Result<()> {
        match self.truncation {
            Truncation::Exact => Ok(()),
            Truncation::Order(_) => Err(Error::Unsupported(format!(
                "{what} needs an exact parametrization; branch '{}' is a truncated series",
                self.name
            ))),
        }
    }
}

fn t_order(p: &Poly) -> Option<u32> {
    p.order()
}

/// `h(b(t))`, truncated below `bound` when given.
pub fn compose(h: &Poly, b: &BranchParam, bound: Option<u32>) -> Result<Poly> {
    h.substitute_truncated(&b.components, bound)
}

pub fn jacobian_ideal(g: &Poly) -> Ideal {
    Ideal::new(g.ring(), g.gradient()).expect("partials share the ring")
}

/// Milnor number `dim O / Jac(g)` at the origin. The constant term of `g` is irrelevant.
pub fn milnor_number(g: &Poly, limits: &Limits) -> Result<u64> {
    let jac = jacobian_ideal(g);
    match jac.dim_at_origin(limits)? {
        LocalDim::Empty => Err(Error::Nonsingular(format!("{g} is nonsingular at the origin (mu = 0)"))),
        LocalDim::Dim(0) => match jac.quotient_dim_local(limits)? {
            QuotientDim::Finite(n) => Ok(n),
            QuotientDim::Infinite => unreachable!("zero-dimensional germ has finite colength"),
        },
        LocalDim::Dim(d) => Err(Error::NonIsolated(format!("critical locus of {g} has dimension {d} at the origin"))),
    }
}

/// Critical locus of `g`, with the hypothesis `Σg ∩ {f = 0} = {0}` evaluated when `f` is given.
#[derive(Clone, Debug)]
pub struct CriticalLocus {
    pub ideal: Ideal,
    pub dim: LocalDim,
    /// `Some(true)` when `dim_0 (Jac(g) + <f>) = 0`.
    pub meets_f_only_at_origin: Option<bool>,
}

pub fn critical_locus(g: &Poly, f: Option<&Poly>, limits: &Limits) -> Result<CriticalLocus> {
    let ideal = jacobian_ideal(g);
    let dim = ideal.dim_at_origin(limits)?;
    let meets = match f {
        Some(f) => {
            let d = ideal.with(std::slice::from_ref(f))?.dim_at_origin(limits)?;
            Some(matches!(d, LocalDim::Dim(0) | LocalDim::Empty))
        }
        None => None,
    };
    Ok(CriticalLocus { ideal, dim, meets_f_only_at_origin: meets })
}

/// Outcome of a successful branch validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchCheck {
    pub branch: String,
    /// Lowest order of a nonvanishing composition; `None` when all vanish exactly.
    pub margin: Option<u32>,
}

/// Checks that every generator of `host` vanishes on `b` (exactly, or modulo `t^K`).
pub fn validate_branch(b: &BranchParam, host: &Ideal) -> Result<BranchCheck> {
    if b.components.len() != host.ring().nvars() {
        return Err(Error::RingMismatch(format!(
            "branch '{}' has {} components in {:?}",
            b.name,
            b.components.len(),
            host.ring()
        )));
    }
    if b.components.iter().all(Poly::is_zero) {
        return Err(Error::Degenerate(format!("branch '{}' is the constant origin", b.name)));
    }
    if b.components.iter().any(|c| !c.constant_term().is_zero()) {
        return Err(Error::Degenerate(format!("branch '{}' does not pass through the origin", b.name)));
    }
    let bound = match b.truncation {
        Truncation::Exact => None,
        Truncation::Order(k) => Some(k),
    };
    let mut margin: Option<u32> = None;
    for h in host.gens() {
        let c = compose(h, b, bound)?;
        if let Some(o) = t_order(&c) {
            if bound.is_none() || o < bound.unwrap() {
                return Err(Error::Violation {
                    branch: b.name.clone(),
                    generator: h.to_string(),
                    order: o,
                    truncation: bound,
                });
            }
            margin = Some(margin.map_or(o, |m| m.min(o)));
        }
    }
    Ok(BranchCheck { branch: b.name.clone(), margin })
}

/// Local degree `m_{f,b}`: the `t`-order of `f(b(t))`.
pub fn local_degree(f: &Poly, b: &BranchParam, limits: &Limits) -> Result<u32> {
    match b.truncation {
        Truncation::Order(k) => {
            let c = compose(f, b, Some(k))?;
            t_order(&c).ok_or_else(|| {
                Error::Degenerate(format!("{f} vanishes on branch '{}' to order >= {k}", b.name))
            })
        }
        Truncation::Exact => {
            let mut k = 8u32.min(limits.trunc_cap.max(1));
            loop {
                let c = compose(f, b, Some(k))?;
                if let Some(o) = t_order(&c) {
                    return Ok(o);
                }
                if k >= limits.trunc_cap {
                    break;
                }
                k = (k * 2).min(limits.trunc_cap);
            }
            if compose(f, b, None)?.is_zero() {
                Err(Error::Degenerate(format!("{f} vanishes identically on branch '{}'", b.name)))
            } else {
                Err(Error::Degenerate(format!(
                    "{f} vanishes on branch '{}' to order >= {}",
                    b.name, limits.trunc_cap
                )))
            }
        }
    }
}

/// Rungs `1/2, 1/4, ...` of the parameter ladder.
pub fn tau_ladder(limits: &Limits) -> impl Iterator<Item = Rational> {
    let two = Rational::from_integer(2.into());
    (1..=limits.tau_ladder.max(2)).map(move |k| num_traits::pow(two.clone(), k as usize).recip())
}

/// Restricts `h` to the hyperplane `{sum c_i z_i = 0}` by solving for the last
/// variable with a nonzero coefficient. The result lives in the ring without that variable.
pub fn restrict_to_hyperplane(h: &Poly, coeffs: &[Rational]) -> Result<Poly> {
    let ring = h.ring();
    let k = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or_else(|| Error::Degenerate("linear form is zero".into()))?;
    let small = ring.without(k);
    let mut images = Vec::with_capacity(ring.nvars());
    let mut solved = Poly::zero(&small);
    for (i, c) in coeffs.iter().enumerate() {
        if i == k || c.is_zero() {
            continue;
        }
        let j = if i < k { i } else { i - 1 };
        solved = &solved - &Poly::var(&small, j).scale(&(c / &coeffs[k]));
    }
    for i in 0..ring.nvars() {
        images.push(match i.cmp(&k) {
            std::cmp::Ordering::Less => Poly::var(&small, i),
            std::cmp::Ordering::Equal => solved.clone(),
            std::cmp::Ordering::Greater => Poly::var(&small, i - 1),
        });
    }
    h.substitute(&images)
}

/// Milnor number of `g|_{l = l(p)}` at the point `p`.
fn slice_milnor_at(g: &Poly, coeffs: &[Rational], p: &[Rational], limits: &Limits) -> Result<u64> {
    let moved = g.translate(p);
    let restricted = restrict_to_hyperplane(&moved, coeffs)?;
    milnor_number(&restricted, limits)
}

/// A Milnor number obtained at a concrete branch point and confirmed at the next rung.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderValue {
    pub value: u64,
    /// The parameter value `tau` (as text) at which the value was first stable.
    pub tau: String,
}

fn ladder<F>(b: &BranchParam, l: &Poly, what: &str, limits: &Limits, mut at: F) -> Result<LadderValue>
where
    F: FnMut(&[Rational]) -> Result<u64>,
{
    let mut prev: Option<(Rational, u64)> = None;
    let mut seen = Vec::new();
    for tau in tau_ladder(limits) {
        let p = b.point(&tau);
        if l.eval(&p).is_zero() {
            prev = None;
            continue;
        }
        let mu = match at(&p) {
            Ok(m) => m,
            Err(Error::Nonsingular(_)) => {
                return Err(Error::Degenerate(format!(
                    "{what}: germ at b({tau}) on branch '{}' is nonsingular; the branch is not critical",
                    b.name
                )))
            }
            Err(e) => return Err(e),
        };
        seen.push(format!("{tau}:{mu}"));
        if let Some((t0, m0)) = &prev {
            if *m0 == mu {
                return Ok(LadderValue { value: mu, tau: t0.to_string() });
            }
        }
        prev = Some((tau, mu));
    }
    Err(Error::Instability(format!(
        "{what} on branch '{}' did not stabilize along the tau ladder ({})",
        b.name,
        seen.join(", ")
    )))
}

/// `mu(g|_{l^{-1}(delta)}, b)` with `delta = l(b(tau))`, for a linear form `l`.
pub fn branch_slice_milnor(g: &Poly, l: &Poly, b: &BranchParam, limits: &Limits) -> Result<LadderValue> {
    b.require_exact("branch slice Milnor number")?;
    let coeffs = l
        .linear_coefficients()
        .ok_or_else(|| Error::Unsupported(format!("slice form {l} must be linear and homogeneous")))?;
    if compose(l, b, None)?.is_zero() {
        return Err(Error::Degenerate(format!("{l} vanishes on branch '{}' (delta = 0)", b.name)));
    }
    ladder(b, l, "slice Milnor number", limits, |p| slice_milnor_at(g, &coeffs, p, limits))
}

/// `mu(g|_{f^{-1}(delta)}, b)` for any `f` smooth along the branch:
/// `dim O_p / (f - f(p), minors(f, g))` at `p = b(tau)`.
pub fn fibre_slice_milnor(g: &Poly, f: &Poly, b: &BranchParam, limits: &Limits) -> Result<LadderValue> {
    b.require_exact("fibre slice Milnor number")?;
    if compose(f, b, None)?.is_zero() {
        return Err(Error::Degenerate(format!("{f} vanishes on branch '{}' (delta = 0)", b.name)));
    }
    let minors = jacobian_minors(f, g);
    ladder(b, f, "fibre slice Milnor number", limits, |p| {
        let level = f - &Poly::constant(f.ring(), f.eval(p));
        let mut gens = vec![level.translate(p)];
        gens.extend(minors.iter().map(|m| m.translate(p)));
        match Ideal::new(f.ring(), gens)?.quotient_dim_local(limits)? {
            QuotientDim::Finite(0) => Err(Error::Nonsingular("no critical point on the fibre".into())),
            QuotientDim::Finite(k) => Ok(k),
            QuotientDim::Infinite => Err(Error::NonIsolated(format!(
                "g on the fibre of f has non-isolated critical points along '{}'",
                b.name
            ))),
        }
    })
}

/// Milnor number of `f` restricted to the level set `{g + f^N = g~(x)}` at
/// `x = b(tau)`: `dim O_x / (g + f^N - g~(x), minors(f, g))`.
pub fn level_set_milnor(g: &Poly, f: &Poly, n: u32, b: &BranchParam, limits: &Limits) -> Result<LadderValue> {
    b.require_exact("level-set Milnor number")?;
    if compose(f, b, None)?.is_zero() {
        return Err(Error::Degenerate(format!("{f} vanishes on branch '{}'", b.name)));
    }
    let gt = g + &f.pow(n);
    let minors = jacobian_minors(f, g);
    ladder(b, f, "level-set Milnor number", limits, |p| {
        let shifted = &gt - &Poly::constant(g.ring(), gt.eval(p));
        let mut gens = vec![shifted.translate(p)];
        gens.extend(minors.iter().map(|m| m.translate(p)));
        let ideal = Ideal::new(g.ring(), gens)?;
        match ideal.quotient_dim_local(limits)? {
            QuotientDim::Finite(0) => Err(Error::Nonsingular("empty level-set critical locus".into())),
            QuotientDim::Finite(k) => Ok(k),
            QuotientDim::Infinite => Err(Error::NonIsolated(format!(
                "f restricted to the level set has non-isolated critical points at b(tau) on '{}'",
                b.name
            ))),
        }
    })
}

/// `2x2` minors `df_i dg_j - df_j dg_i`, `i < j`, in lexicographic index order.
pub fn jacobian_minors(f: &Poly, g: &Poly) -> Vec<Poly> {
    let (df, dg) = (f.gradient(), g.gradient());
    let n = df.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !m.is_zero() {
                out.push(m);
            }
        }
    }
    out
}

/// Ideal of the Zariski closure of an exact parametrized branch.
pub fn implicitize(b: &BranchParam, ring: &Ring, limits: &Limits) -> Result<Ideal> {
    b.require_exact("implicitization")?;
    let big = ring.with_aux_front(1);
    let series_to_big: Vec<Poly> = vec![Poly::var(&big, 0)];
    let mut gens = Vec::new();
    for (i, c) in b.components.iter().enumerate() {
        let ci = c.substitute(&series_to_big)?;
        gens.push(&Poly::var(&big, i + 1) - &ci);
    }
    Ideal::new(&big, gens)?.eliminate_front(1, ring, limits)
}

/// `true` when, near the origin, `V(host)` is contained in the union of the branches.
pub fn certify_cover(host: &Ideal, branches: &[BranchParam], limits: &Limits) -> Result<bool> {
    let ring = host.ring();
    let mut product = Ideal::unit(ring);
    for b in branches {
        product = product.product(&implicitize(b, ring, limits)?)?;
    }
    let rest = host.saturate(&product, limits)?;
    Ok(rest.dim_at_origin(limits)? == LocalDim::Empty)
}

/// Coordinate axes that lie in `V(host)`, if together they cover it near the origin.
pub fn discover_axis_branches(host: &Ideal, host_kind: Host, limits: &Limits) -> Result<Option<Vec<BranchParam>>> {
    let n = host.ring().nvars();
    let mut found = Vec::new();
    for i in 0..n {
        let b = BranchParam::axis(&format!("axis-{}", host.ring().name(i)), n, i, host_kind);
        if validate_branch(&b, host).is_ok() {
            found.push(b);
        }
    }
    if found.is_empty() {
        return Ok(None);
    }
    Ok(certify_cover(host, &found, limits)?.then_some(found))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_poly;

    fn ring3() -> Ring {
        Ring::new(&["x", "y", "z"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ring3()).unwrap()
    }

    fn branch(parts: [&str; 3]) -> BranchParam {
        let s = Ring::series();
        BranchParam::exact("b", parts.iter().map(|c| parse_poly(c, &s).unwrap()).collect(), Host::Sigma)
    }

    #[test]
    fn milnor_basics() {
        let lim = Limits::default();
        let r2 = Ring::new(&["x", "y"]).unwrap();
        assert_eq!(milnor_number(&parse_poly("x^2+y^2", &r2).unwrap(), &lim).unwrap(), 1);
        assert_eq!(milnor_number(&parse_poly("x^3+y^3", &r2).unwrap(), &lim).unwrap(), 4);
        assert!(matches!(milnor_number(&parse_poly("x^2*y", &r2).unwrap(), &lim), Err(Error::NonIsolated(_))));
        assert!(matches!(milnor_number(&parse_poly("x", &r2).unwrap(), &lim), Err(Error::Nonsingular(_))));
    }

    #[test]
    fn validation() {
        let jac = jacobian_ideal(&p("x^2+y^2"));
        assert!(validate_branch(&branch(["0", "0", "t"]), &jac).is_ok());
        let e = validate_branch(&branch(["t", "0", "0"]), &jac).unwrap_err();
        assert!(matches!(e, Error::Violation { order: 1, .. }));
        let cusp = Ideal::new(&ring3(), vec![p("y^2 - x^3")]).unwrap();
        assert!(validate_branch(&branch(["t^2", "t^3", "0"]), &cusp).is_ok());
    }

    #[test]
    fn local_degrees() {
        let lim = Limits::default();
        assert_eq!(local_degree(&p("z"), &branch(["0", "0", "t"]), &lim).unwrap(), 1);
        assert_eq!(local_degree(&p("x"), &branch(["t^2", "t^3", "0"]), &lim).unwrap(), 2);
        assert_eq!(local_degree(&p("x+y+z"), &branch(["t", "t", "t"]), &lim).unwrap(), 1);
        assert!(matches!(local_degree(&p("x"), &branch(["0", "0", "t"]), &lim), Err(Error::Degenerate(_))));
    }

    #[test]
    fn slice_milnor() {
        let lim = Limits::default();
        let b = branch(["0", "0", "t"]);
        assert_eq!(branch_slice_milnor(&p("x^2+y^2"), &p("z"), &b, &lim).unwrap().value, 1);
        assert_eq!(branch_slice_milnor(&p("x*y*(x+y)"), &p("z"), &b, &lim).unwrap().value, 4);
        assert!(matches!(branch_slice_milnor(&p("x^2+y^2"), &p("x"), &b, &lim), Err(Error::Degenerate(_))));
        assert_eq!(fibre_slice_milnor(&p("x*y*(x+y)"), &p("z"), &b, &lim).unwrap().value, 4);
        assert_eq!(fibre_slice_milnor(&p("x*y*(x+y)"), &p("z+x^2"), &b, &lim).unwrap().value, 4);
    }

    #[test]
    fn cover_certificate() {
        let lim = Limits::default();
        let jac = jacobian_ideal(&p("x*y*(x+y)"));
        assert!(certify_cover(&jac, &[branch(["0", "0", "t"])], &lim).unwrap());
        let jac2 = jacobian_ideal(&p("x^2*y^2"));
        assert!(!certify_cover(&jac2, &[branch(["0", "0", "t"])], &lim).unwrap());
        let found = discover_axis_branches(&jac, Host::Sigma, &lim).unwrap().unwrap();
        assert_eq!(found.len(), 1);
    }
}
