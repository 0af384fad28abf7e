//! Buchberger's algorithm for global orders and Mora's tangent cone algorithm
//! for the local order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::Poly;
use super::ring::Ring;
use super::Rational;
use crate::error::{Error, Result};

/// Step counter shared by one computation; fails loudly once `cap` is reached.
#[derive(Debug)]
pub struct Budget {
    what: &'static str,
    used: u64,
    cap: u64,
}

impl Budget {
    pub fn new(what: &'static str, cap: u64) -> Budget {
        Budget { what, used: 0, cap }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::IterationCap { what: self.what, cap: self.cap });
        }
        Ok(())
    }
}

/// Terms sorted strictly descending under the active order.
type Terms = Vec<(Monomial, Rational)>;

fn to_terms(p: &Poly, ord: &MonomialOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    t
}

fn from_terms(ring: &Ring, t: Terms) -> Poly {
    Poly::from_terms(ring, t)
}

/// `a - c * m * b`, both inputs sorted; monomial orders are multiplicative so
/// `m * b` stays sorted.
fn sub_mul(a: &Terms, c: &Rational, m: &Monomial, b: &Terms, ord: &MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.iter().peekable();
    let mut ib = b.iter().map(|(mb, cb)| (mb.mul(m), -(c * cb))).peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(ia.next().unwrap().clone()),
            (None, Some(_)) => out.push(ib.next().unwrap()),
            (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                Ordering::Greater => out.push(ia.next().unwrap().clone()),
                Ordering::Less => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let (mx, cx) = ia.next().unwrap();
                    let (_, cy) = ib.next().unwrap();
                    let s = cx + cy;
                    if !s.is_zero() {
                        out.push((mx.clone(), s));
                    }
                }
            },
        }
    }
    out
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

fn ecart(t: &Terms) -> u32 {
    let top = t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
    top - t.first().map(|(m, _)| m.degree()).unwrap_or(0)
}

fn spoly(a: &Terms, b: &Terms, ord: &MonomialOrder) -> Terms {
    let (la, ca) = &a[0];
    let (lb, cb) = &b[0];
    let l = la.lcm(lb);
    let qa = la.quotient_of(&l).expect("lcm is a multiple");
    let qb = lb.quotient_of(&l).expect("lcm is a multiple");
    let scaled_a: Terms = a.iter().map(|(m, c)| (m.mul(&qa), c / ca)).collect();
    sub_mul(&scaled_a, &cb.recip(), &qb, b, ord)
}

/// Full reduction for a well-ordering: no term of the result is divisible by a leading monomial.
fn reduce_full(mut h: Terms, basis: &[Terms], ord: &MonomialOrder, budget: &mut Budget) -> Result<Terms> {
    let mut rem: Terms = Vec::new();
    while !h.is_empty() {
        let (m, c) = &h[0];
        match basis.iter().find(|g| g[0].0.divides(m)) {
            Some(g) => {
                budget.tick()?;
                let q = g[0].0.quotient_of(m).unwrap();
                let coef = c / &g[0].1;
                h = sub_mul(&h, &coef, &q, g, ord);
            }
            None => {
                rem.push(h.remove(0));
            }
        }
    }
    Ok(rem)
}

/// Smallest `D` such that every monomial of degree `D` is divisible by one of
/// `lms`, when the staircase is finite.
fn corner_degree(lms: &[&Monomial], nvars: usize) -> Option<u32> {
    let mut bounds = vec![None; nvars];
    for m in lms {
        if m.is_one() {
            return Some(0);
        }
        if let Some((i, e)) = m.as_pure_power() {
            bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
        }
    }
    let bounds: Vec<u32> = bounds.into_iter().collect::<Option<_>>()?;
    let mut top = 0;
    let mut exps = vec![0u32; nvars];
    fn walk(k: usize, exps: &mut Vec<u32>, bounds: &[u32], lms: &[&Monomial], top: &mut u32) {
        if k == exps.len() {
            let m = Monomial::from_exponents(exps);
            if !lms.iter().any(|l| l.divides(&m)) {
                *top = (*top).max(m.degree() + 1);
            }
            return;
        }
        for e in 0..bounds[k] {
            exps[k] = e;
            let partial = Monomial::from_exponents(exps);
            if lms.iter().any(|l| l.divides(&partial)) {
                break;
            }
            walk(k + 1, exps, bounds, lms, top);
        }
        exps[k] = 0;
    }
    walk(0, &mut exps, &bounds, lms, &mut top);
    Some(top)
}

/// Drops the terms of degree `>= cut`, which lie in the ideal. A leading term
/// at or above the cut makes the whole element redundant.
fn cut_terms(t: &mut Terms, cut: Option<u32>) {
    if let Some(d) = cut {
        t.retain(|(m, _)| m.degree() < d);
    }
}

fn cut_basis(basis: &mut [Terms], cut: Option<u32>) {
    if let Some(d) = cut {
        for g in basis.iter_mut() {
            if g[0].0.degree() >= d {
                g.truncate(1);
            } else {
                g.retain(|(m, _)| m.degree() < d);
            }
        }
    }
}

/// Mora's weak normal form: returns `h` with `u*p - h` in the ideal for a unit
/// `u`, and `LM(h)` not divisible by any leading monomial of `basis`.
fn reduce_mora(p: Terms, basis: &[Terms], ord: &MonomialOrder, cut: Option<u32>, budget: &mut Budget) -> Result<Terms> {
    let mut h = p;
    cut_terms(&mut h, cut);
    let mut t: Vec<(Terms, u32)> = basis.iter().map(|g| (g.clone(), ecart(g))).collect();
    while !h.is_empty() {
        let lm = h[0].0.clone();
        let pick = t
            .iter()
            .enumerate()
            .filter(|(_, (g, _))| g[0].0.divides(&lm))
            .min_by_key(|(i, (_, e))| (*e, *i))
            .map(|(i, _)| i);
        let Some(i) = pick else { break };
        budget.tick()?;
        let eh = ecart(&h);
        let g = t[i].0.clone();
        if t[i].1 > eh {
            t.push((h.clone(), eh));
        }
        let q = g[0].0.quotient_of(&lm).unwrap();
        let coef = &h[0].1 / &g[0].1;
        h = sub_mul(&h, &coef, &q, &g, ord);
        cut_terms(&mut h, cut);
    }
    Ok(h)
}

fn check_inputs(polys: &[Poly], ord: &MonomialOrder) -> Result<Option<Ring>> {
    let Some(first) = polys.first() else { return Ok(None) };
    let ring = first.ring().clone();
    for p in polys {
        ring.check_same(p.ring())?;
    }
    if ord.nvars() != ring.nvars() {
        return Err(Error::RingMismatch(format!("order on {} variables used in {ring:?}", ord.nvars())));
    }
    Ok(Some(ring))
}

/// Normal form of `p` with respect to `basis` (assumed a standard basis for `ord`).
/// Global orders give the fully reduced remainder; the local order gives
/// Mora's weak normal form, which is zero exactly when `p` lies in the
/// localized ideal.
pub fn normal_form(p: &Poly, basis: &[Poly], ord: &MonomialOrder, budget: &mut Budget) -> Result<Poly> {
    if let Some(ring) = check_inputs(basis, ord)? {
        ring.check_same(p.ring())?;
    }
    let b: Vec<Terms> = basis.iter().filter(|g| !g.is_zero()).map(|g| to_terms(g, ord)).collect();
    let h = to_terms(p, ord);
    let r = if ord.is_local() {
        let lms: Vec<&Monomial> = b.iter().map(|g| &g[0].0).collect();
        let cut = corner_degree(&lms, ord.nvars());
        reduce_mora(h, &b, ord, cut, budget)?
    } else {
        reduce_full(h, &b, ord, budget)?
    };
    Ok(from_terms(p.ring(), r))
}

struct PairQueue {
    pending: BTreeSet<(u32, usize, usize)>,
}

impl PairQueue {
    fn contains(&self, lcm_degree: &[Vec<u32>], i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.pending.contains(&(lcm_degree[b][a], a, b))
    }
}

/// Standard basis of the ideal generated by `gens` under `ord`.
///
/// Global orders return the reduced Groebner basis; the local order returns a
/// minimal monic standard basis. Either way the output is sorted ascending by
/// leading monomial, so it is deterministic for a given input.
pub fn standard_basis(gens: &[Poly], ord: &MonomialOrder, budget: &mut Budget) -> Result<Vec<Poly>> {
    let Some(ring) = check_inputs(gens, ord)? else { return Ok(Vec::new()) };
    let local = ord.is_local();
    let mut basis: Vec<Terms> = Vec::new();
    // lcm_degree[j][i] for i < j
    let mut lcm_degree: Vec<Vec<u32>> = Vec::new();
    let mut queue = PairQueue { pending: BTreeSet::new() };
    let mut cut: Option<u32> = None;

    let push = |h: Terms, basis: &mut Vec<Terms>, lcm_degree: &mut Vec<Vec<u32>>, queue: &mut PairQueue| {
        let j = basis.len();
        let row: Vec<u32> = basis.iter().map(|g| g[0].0.lcm(&h[0].0).degree()).collect();
        for (i, &d) in row.iter().enumerate() {
            queue.pending.insert((d, i, j));
        }
        lcm_degree.push(row);
        basis.push(h);
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut t = to_terms(g, ord);
        if !local {
            t = reduce_full(t, &basis, ord, budget)?;
            if t.is_empty() {
                continue;
            }
        }
        make_monic(&mut t);
        push(t, &mut basis, &mut lcm_degree, &mut queue);
    }

    if local {
        let lms: Vec<&Monomial> = basis.iter().map(|g| &g[0].0).collect();
        cut = corner_degree(&lms, ord.nvars());
        cut_basis(&mut basis, cut);
    }

    while let Some(&key) = queue.pending.iter().next() {
        queue.pending.remove(&key);
        let (lcm_deg, i, j) = key;
        budget.tick()?;
        if cut.is_some_and(|d| lcm_deg >= d) {
            continue;
        }
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if !local {
            if li.is_coprime(lj) {
                continue;
            }
            let l = li.lcm(lj);
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k][0].0.divides(&l)
                    && !queue.contains(&lcm_degree, i, k)
                    && !queue.contains(&lcm_degree, j, k)
            });
            if chain {
                continue;
            }
        }
        let s = spoly(&basis[i], &basis[j], ord);
        let mut h =
            if local { reduce_mora(s, &basis, ord, cut, budget)? } else { reduce_full(s, &basis, ord, budget)? };
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        let unit = h[0].0.is_one();
        push(h, &mut basis, &mut lcm_degree, &mut queue);
        if local && !unit {
            let lms: Vec<&Monomial> = basis.iter().map(|g| &g[0].0).collect();
            let next = corner_degree(&lms, ord.nvars());
            if next.is_some() && (cut.is_none() || next < cut) {
                cut = next;
                cut_basis(&mut basis, cut);
            }
        }
        if unit {
            break;
        }
    }

    if basis.iter().any(|g| g[0].0.is_one()) {
        return Ok(vec![Poly::one(&ring)]);
    }
    // minimalize
    let mut keep: Vec<Terms> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, other)| {
            k != idx && other[0].0.divides(&g[0].0) && (other[0].0 != g[0].0 || k < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    if !local {
        let snapshot = keep.clone();
        for (idx, g) in keep.iter_mut().enumerate() {
            let others: Vec<Terms> =
                snapshot.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, o)| o.clone()).collect();
            let tail = reduce_full(g[1..].to_vec(), &others, ord, budget)?;
            g.truncate(1);
            g.extend(tail);
        }
    }
    keep.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    Ok(keep.into_iter().map(|t| from_terms(&ring, t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat;

    fn ring() -> Ring {
        Ring::new(&["x", "y"]).unwrap()
    }

    fn budget() -> Budget {
        Budget::new("test", 100_000)
    }

    #[test]
    fn global_basis_of_twisted_cubic_slice() {
        let r = ring();
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        let gens = [&x.pow(2) - &y, &(&x * &y) - &Poly::one(&r)];
        let gb = standard_basis(&gens, &MonomialOrder::degrevlex(2), &mut budget()).unwrap();
        let shown: Vec<String> = gb.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["y^2 - x", "x*y - 1", "x^2 - y"]);
    }

    #[test]
    fn local_basis_ignores_unit_factor() {
        let r = ring();
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        // x*(1+y) generates the same local ideal as x
        let gens = [&x * &(&Poly::one(&r) + &y), y.pow(3)];
        let ord = MonomialOrder::neg_degrevlex(2);
        let sb = standard_basis(&gens, &ord, &mut budget()).unwrap();
        let lms: Vec<String> = sb.iter().map(|p| p.leading_term(&ord).unwrap().0.clone()).map(|m| Poly::monomial(&r, m, rat(1)).to_string()).collect();
        assert_eq!(lms, ["y^3", "x"]);
        let nf = normal_form(&x, &sb, &ord, &mut budget()).unwrap();
        assert!(nf.is_zero());
    }

    #[test]
    fn unit_is_detected_locally() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let gens = [&x - &Poly::one(&r)];
        let sb = standard_basis(&gens, &MonomialOrder::neg_degrevlex(2), &mut budget()).unwrap();
        assert_eq!(sb.len(), 1);
        assert!(sb[0].is_constant());
    }

    #[test]
    fn cap_is_enforced() {
        let r = ring();
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        let gens = [&x.pow(5) - &y.pow(3), &(&x * &y.pow(4)) - &Poly::one(&r)];
        let err = standard_basis(&gens, &MonomialOrder::degrevlex(2), &mut Budget::new("gb", 3)).unwrap_err();
        assert!(matches!(err, Error::IterationCap { cap: 3, .. }));
    }
}
