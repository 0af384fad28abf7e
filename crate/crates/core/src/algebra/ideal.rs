use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Serialize, Serializer};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::Poly;
use super::ring::Ring;
use super::stdbasis::{normal_form, standard_basis, Budget};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Vector-space dimension of a local quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

impl QuotientDim {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDim::Finite(n) => Some(n),
            QuotientDim::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDim::Finite(n) => write!(f, "{n}"),
            QuotientDim::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for QuotientDim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            QuotientDim::Finite(n) => s.serialize_u64(*n),
            QuotientDim::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

/// Krull dimension of a germ at the origin; `Empty` when the germ does not pass through it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalDim {
    Empty,
    Dim(usize),
}

impl fmt::Display for LocalDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalDim::Empty => f.write_str("EMPTY"),
            LocalDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for LocalDim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LocalDim::Empty => s.serialize_str("EMPTY"),
            LocalDim::Dim(d) => s.serialize_u64(*d as u64),
        }
    }
}

/// A finitely generated ideal with memoized standard bases per order.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    cache: Mutex<BTreeMap<MonomialOrder, Arc<Vec<Poly>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), cache: Mutex::new(self.cache.lock().unwrap().clone()) }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "<{}> in {:?}", gens.join(", "), self.ring)
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            ring.check_same(g.ring())?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, cache: Mutex::new(BTreeMap::new()) })
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Poly::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn standard_basis(&self, ord: &MonomialOrder, limits: &Limits) -> Result<Arc<Vec<Poly>>> {
        if let Some(b) = self.cache.lock().unwrap().get(ord) {
            return Ok(b.clone());
        }
        let what = if ord.is_local() { "local standard basis" } else { "Groebner basis" };
        let b = Arc::new(standard_basis(&self.gens, ord, &mut Budget::new(what, limits.max_steps))?);
        self.cache.lock().unwrap().insert(ord.clone(), b.clone());
        Ok(b)
    }

    pub fn local_basis(&self, limits: &Limits) -> Result<Arc<Vec<Poly>>> {
        self.standard_basis(&MonomialOrder::neg_degrevlex(self.ring.nvars()), limits)
    }

    pub fn global_basis(&self, limits: &Limits) -> Result<Arc<Vec<Poly>>> {
        self.standard_basis(&MonomialOrder::degrevlex(self.ring.nvars()), limits)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        Ideal::new(&self.ring, self.gens.iter().chain(other.gens.iter()).cloned().collect())
    }

    pub fn with(&self, extra: &[Poly]) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().chain(extra.iter()).cloned().collect())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Membership in the polynomial ring.
    pub fn contains(&self, p: &Poly, limits: &Limits) -> Result<bool> {
        let ord = MonomialOrder::degrevlex(self.ring.nvars());
        let b = self.standard_basis(&ord, limits)?;
        Ok(normal_form(p, &b, &ord, &mut Budget::new("normal form", limits.max_steps))?.is_zero())
    }

    /// Membership in the localization at the origin.
    pub fn contains_local(&self, p: &Poly, limits: &Limits) -> Result<bool> {
        let ord = MonomialOrder::neg_degrevlex(self.ring.nvars());
        let b = self.standard_basis(&ord, limits)?;
        Ok(normal_form(p, &b, &ord, &mut Budget::new("local normal form", limits.max_steps))?.is_zero())
    }

    /// Leading monomials of the local standard basis.
    pub fn local_leading_monomials(&self, limits: &Limits) -> Result<Vec<Monomial>> {
        let ord = MonomialOrder::neg_degrevlex(self.ring.nvars());
        let b = self.standard_basis(&ord, limits)?;
        Ok(b.iter().map(|p| p.leading_term(&ord).expect("nonzero").0.clone()).collect())
    }

    pub fn is_locally_unit(&self, limits: &Limits) -> Result<bool> {
        Ok(self.local_leading_monomials(limits)?.iter().any(Monomial::is_one))
    }

    /// `dim_Q O_0 / I`, counted as standard monomials of the local leading ideal.
    pub fn quotient_dim_local(&self, limits: &Limits) -> Result<QuotientDim> {
        let lead = self.local_leading_monomials(limits)?;
        count_standard_monomials(&lead, self.ring.nvars(), limits)
    }

    /// Dimension of the germ of `V(I)` at the origin.
    pub fn dim_at_origin(&self, limits: &Limits) -> Result<LocalDim> {
        let lead = self.local_leading_monomials(limits)?;
        if lead.iter().any(Monomial::is_one) {
            return Ok(LocalDim::Empty);
        }
        Ok(LocalDim::Dim(monomial_ideal_dimension(&lead, self.ring.nvars())))
    }

    /// Dimension of `V(I)` as an affine variety (`None` for the empty set).
    pub fn affine_dim(&self, limits: &Limits) -> Result<Option<usize>> {
        let ord = MonomialOrder::degrevlex(self.ring.nvars());
        let b = self.standard_basis(&ord, limits)?;
        let lead: Vec<Monomial> = b.iter().map(|p| p.leading_term(&ord).unwrap().0.clone()).collect();
        if lead.iter().any(Monomial::is_one) {
            return Ok(None);
        }
        Ok(Some(monomial_ideal_dimension(&lead, self.ring.nvars())))
    }

    /// Eliminates the first `count` variables: `I` must live in a ring whose first
    /// `count` variables are auxiliary; the result lives in `target`.
    pub(crate) fn eliminate_front(&self, count: usize, target: &Ring, limits: &Limits) -> Result<Ideal> {
        let ord = MonomialOrder::elimination(self.ring.nvars(), count);
        let b = self.standard_basis(&ord, limits)?;
        let gens = b.iter().filter_map(|p| p.strip_aux_front(target, count)).collect();
        Ideal::new(target, gens)
    }

    /// `I : h^infinity`, computed globally with one auxiliary variable.
    pub fn saturate_principal(&self, h: &Poly, limits: &Limits) -> Result<Ideal> {
        self.ring.check_same(h.ring())?;
        if h.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if h.is_constant() {
            return Ideal::new(&self.ring, self.gens.clone());
        }
        let big = self.ring.with_aux_front(1);
        let t = Poly::var(&big, 0);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.embed_aux_front(&big, 1)).collect();
        gens.push(&Poly::one(&big) - &(&t * &h.embed_aux_front(&big, 1)));
        Ideal::new(&big, gens)?.eliminate_front(1, &self.ring, limits)
    }

    /// `I : J^infinity` as the intersection of the saturations by the generators of `J`.
    pub fn saturate(&self, j: &Ideal, limits: &Limits) -> Result<Ideal> {
        self.ring.check_same(&j.ring)?;
        let mut acc: Option<Ideal> = None;
        for h in &j.gens {
            if self.contains(h, limits)? {
                continue;
            }
            let s = self.saturate_principal(h, limits)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s, limits)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `I ∩ K` via `t*I + (1-t)*K` with `t` eliminated.
    pub fn intersect(&self, other: &Ideal, limits: &Limits) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let big = self.ring.with_aux_front(1);
        let t = Poly::var(&big, 0);
        let one_minus_t = &Poly::one(&big) - &t;
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| &t * &g.embed_aux_front(&big, 1)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &g.embed_aux_front(&big, 1)));
        Ideal::new(&big, gens)?.eliminate_front(1, &self.ring, limits)
    }

    /// `p` lies in the radical of the localized ideal.
    pub fn local_radical_contains(&self, p: &Poly, limits: &Limits) -> Result<bool> {
        if self.contains_local(p, limits)? {
            return Ok(true);
        }
        self.saturate_principal(p, limits)?.is_locally_unit(limits)
    }

    /// Same localized ideal.
    pub fn locally_equal(&self, other: &Ideal, limits: &Limits) -> Result<bool> {
        for g in &other.gens {
            if !self.contains_local(g, limits)? {
                return Ok(false);
            }
        }
        for g in &self.gens {
            if !other.contains_local(g, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn count_standard_monomials(lead: &[Monomial], n: usize, limits: &Limits) -> Result<QuotientDim> {
    if lead.iter().any(Monomial::is_one) {
        return Ok(QuotientDim::Finite(0));
    }
    let mut bounds = vec![u32::MAX; n];
    for m in lead {
        if let Some((i, k)) = m.as_pure_power() {
            bounds[i] = bounds[i].min(k);
        }
    }
    if bounds.contains(&u32::MAX) {
        return Ok(QuotientDim::Infinite);
    }
    let mut budget = Budget::new("standard monomial count", limits.max_steps.saturating_mul(16));
    let mut exps = vec![0u32; n];
    let mut count = 0u64;
    walk(0, &mut exps, &bounds, lead, &mut count, &mut budget)?;
    Ok(QuotientDim::Finite(count))
}

fn walk(
    i: usize,
    exps: &mut [u32],
    bounds: &[u32],
    lead: &[Monomial],
    count: &mut u64,
    budget: &mut Budget,
) -> Result<()> {
    if i == exps.len() {
        *count += 1;
        return Ok(());
    }
    for e in 0..bounds[i] {
        budget.tick()?;
        exps[i] = e;
        let m = Monomial::from_exponents(exps);
        if lead.iter().any(|l| l.divides(&m)) {
            break;
        }
        walk(i + 1, exps, bounds, lead, count, budget)?;
    }
    exps[i] = 0;
    Ok(())
}

/// Largest set of variables supporting no generator of the monomial ideal.
fn monomial_ideal_dimension(lead: &[Monomial], n: usize) -> usize {
    let supports: Vec<u64> =
        lead.iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    best
}

/// Convenience: the ideal generated by `polys` in their common ring.
pub fn ideal_of(polys: &[Poly]) -> Result<Ideal> {
    let ring = polys.first().ok_or_else(|| Error::Unsupported("ideal with no generators".into()))?.ring().clone();
    Ideal::new(&ring, polys.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn xy() -> (Ring, Poly, Poly) {
        let r = Ring::new(&["x", "y"]).unwrap();
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        (r, x, y)
    }

    #[test]
    fn milnor_algebra_of_a_cusp() {
        let (r, x, y) = xy();
        let i = Ideal::new(&r, vec![x.pow(2), y.pow(3)]).unwrap();
        assert_eq!(i.quotient_dim_local(&lim()).unwrap(), QuotientDim::Finite(6));
        assert_eq!(i.dim_at_origin(&lim()).unwrap(), LocalDim::Dim(0));
    }

    #[test]
    fn components_away_from_origin_are_invisible() {
        let (r, x, y) = xy();
        // V = {x = y = 0} plus the point (1, 0)
        let i = Ideal::new(&r, vec![&x * &(&x - &Poly::one(&r)), y.clone()]).unwrap();
        assert_eq!(i.quotient_dim_local(&lim()).unwrap(), QuotientDim::Finite(1));
        let far = Ideal::new(&r, vec![&x - &Poly::one(&r)]).unwrap();
        assert_eq!(far.dim_at_origin(&lim()).unwrap(), LocalDim::Empty);
        assert_eq!(far.quotient_dim_local(&lim()).unwrap(), QuotientDim::Finite(0));
    }

    #[test]
    fn curve_has_infinite_quotient() {
        let (r, x, _) = xy();
        let i = Ideal::new(&r, vec![x]).unwrap();
        assert_eq!(i.quotient_dim_local(&lim()).unwrap(), QuotientDim::Infinite);
        assert_eq!(i.dim_at_origin(&lim()).unwrap(), LocalDim::Dim(1));
    }

    #[test]
    fn saturation_removes_embedded_component() {
        let (r, x, y) = xy();
        let i = Ideal::new(&r, vec![&x * &y, y.pow(2)]).unwrap();
        let s = i.saturate_principal(&x, &lim()).unwrap();
        assert!(s.contains(&y, &lim()).unwrap());
        assert!(!s.contains(&x, &lim()).unwrap());
    }

    #[test]
    fn intersection_of_axes() {
        let (r, x, y) = xy();
        let a = Ideal::new(&r, vec![x.clone()]).unwrap();
        let b = Ideal::new(&r, vec![y.clone()]).unwrap();
        let c = a.intersect(&b, &lim()).unwrap();
        assert_eq!(c.global_basis(&lim()).unwrap().as_slice(), &[&x * &y]);
    }

    #[test]
    fn local_radical() {
        let (r, x, y) = xy();
        let i = Ideal::new(&r, vec![x.pow(2), y.pow(3)]).unwrap();
        assert!(i.local_radical_contains(&(&x + &y), &lim()).unwrap());
        let j = Ideal::new(&r, vec![x.pow(2)]).unwrap();
        assert!(!j.local_radical_contains(&y, &lim()).unwrap());
    }
}
