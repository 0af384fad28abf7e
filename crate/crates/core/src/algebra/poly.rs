use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::ring::Ring;
use super::Rational;
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients. No zero coefficient is ever stored.
#[derive(Clone)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Poly {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, Rational::one())
    }

    pub fn var(ring: &Ring, index: usize) -> Poly {
        Poly::monomial(ring, Monomial::var(ring.nvars(), index), Rational::one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Poly {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length does not match ring");
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ring: &Ring, terms: I) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum c_i z_i`.
    pub fn linear(ring: &Ring, coeffs: &[Rational]) -> Poly {
        assert_eq!(coeffs.len(), ring.nvars());
        Poly::from_terms(ring, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(ring.nvars(), i), c.clone())))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.ring.nvars())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest total degree of a term; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (the order at the origin), `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Coefficients of a polynomial of degree <= 1 with no constant term.
    pub fn linear_coefficients(&self) -> Option<Vec<Rational>> {
        let n = self.ring.nvars();
        let mut out = vec![Rational::zero(); n];
        for (m, c) in &self.terms {
            match m.as_pure_power() {
                Some((i, 1)) => out[i] = c.clone(),
                _ => return None,
            }
        }
        Some(out)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, index: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exponents_mut()[index] = e - 1;
            out.add_term(d, c * rat(e as i64));
        }
        out
    }

    /// All first partial derivatives in variable order.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.ring.nvars()).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Substitutes `images[i]` for variable `i`; all images must share one ring.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        self.substitute_truncated(images, None)
    }

    /// Like [`Poly::substitute`], dropping every term of total degree `>= bound`
    /// in the target ring as it goes. Only sound when every image has order >= 1
    /// or the caller accepts truncation of intermediate products.
    pub fn substitute_truncated(&self, images: &[Poly], bound: Option<u32>) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(Poly::zero(&self.ring)),
        };
        for p in images {
            target.check_same(&p.ring)?;
        }
        let cut = |p: Poly| match bound {
            Some(b) => p.truncate_degree(b),
            None => p,
        };
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|_| vec![Poly::one(&target)]).collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = cut(&powers[i][powers[i].len() - 1] * &images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = cut(&term * &powers[i][e]);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Drops every term of total degree `>= bound`.
    pub fn truncate_degree(&self, bound: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() < bound).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// `p(z + point)`: moves `point` to the origin.
    pub fn translate(&self, point: &[Rational]) -> Poly {
        let n = self.ring.nvars();
        let images: Vec<Poly> =
            (0..n).map(|i| &Poly::var(&self.ring, i) + &Poly::constant(&self.ring, point[i].clone())).collect();
        self.substitute(&images).expect("translation images share the ring")
    }

    /// Rewrites the polynomial in `ring`, matching variables by name. Every
    /// variable that actually occurs must exist in `ring`.
    pub fn rename_into(&self, ring: &Ring) -> Result<Poly> {
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| ring.index_of(n)).collect();
        let mut out = Poly::zero(ring);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; ring.nvars()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = k,
                    None => {
                        return Err(Error::RingMismatch(format!(
                            "variable '{}' is not in {ring:?}",
                            self.ring.name(i)
                        )))
                    }
                }
            }
            out.add_term(Monomial::from_exponents(&e), c.clone());
        }
        Ok(out)
    }

    pub(crate) fn embed_aux_front(&self, target: &Ring, count: usize) -> Poly {
        debug_assert_eq!(target.nvars(), self.ring.nvars() + count);
        Poly { ring: target.clone(), terms: self.terms.iter().map(|(m, c)| (m.extend_front(count), c.clone())).collect() }
    }

    pub(crate) fn strip_aux_front(&self, target: &Ring, count: usize) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.strip_front(count)?, c.clone());
        }
        Some(Poly { ring: target.clone(), terms })
    }

    /// Makes the coefficient of the leading term (under `order`) equal to one.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Clears denominators and content so that coefficients are coprime integers
    /// with a positive leading coefficient (in the canonical print order).
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lead_sign = self.sorted_terms_for_print()[0].1.is_negative();
        let mut lcm_den = BigInt::one();
        for c in self.terms.values() {
            lcm_den = num_integer::Integer::lcm(&lcm_den, c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm_den / c.denom());
            g = num_integer::Integer::gcd(&g, &n);
        }
        let mut factor = Rational::new(lcm_den, g);
        if lead_sign {
            factor = -factor;
        }
        self.scale(&factor)
    }

    fn sorted_terms_for_print(&self) -> Vec<(&Monomial, &Rational)> {
        let order = MonomialOrder::degrevlex(self.ring.nvars());
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    fn binary(&self, other: &Poly, sign: bool) -> Poly {
        assert!(self.ring.same(&other.ring), "ring mismatch: {:?} vs {:?}", self.ring, other.ring);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if sign { c.clone() } else { -c.clone() });
        }
        out
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.binary(rhs, true)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.binary(rhs, false)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.ring.same(&rhs.ring), "ring mismatch: {:?} vs {:?}", self.ring, rhs.ring);
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ring.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical form: terms in descending degrevlex order, `c*mono` with unit
/// coefficients omitted, e.g. `x^2*y - 3/2*x + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms_for_print().into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.ring)
    }
}
