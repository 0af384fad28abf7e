use std::cmp::Ordering;

use super::monomial::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    /// Degree reverse lexicographic; a well-ordering.
    GlobalDegRevLex,
    /// Negative degree reverse lexicographic: lower degree ranks higher, so `1`
    /// outranks every variable. Realizes the local ring at the origin.
    LocalNegDegRevLex,
    /// Global block order that eliminates the first `block` positions.
    Elimination { block: usize },
}

/// A monomial order together with the variable permutation it reads exponents through.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// `perm[i]` is the variable consulted at position `i`.
    perm: Vec<usize>,
}

fn degrevlex_tail(a: &Monomial, b: &Monomial, positions: &[usize]) -> Ordering {
    let (ea, eb) = (a.exponents(), b.exponents());
    for &v in positions.iter().rev() {
        if ea[v] != eb[v] {
            return eb[v].cmp(&ea[v]);
        }
    }
    Ordering::Equal
}

fn partial_degree(m: &Monomial, positions: &[usize]) -> u32 {
    positions.iter().map(|&v| m.exponents()[v]).sum()
}

impl MonomialOrder {
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::GlobalDegRevLex, perm: (0..nvars).collect() }
    }

    pub fn neg_degrevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::LocalNegDegRevLex, perm: (0..nvars).collect() }
    }

    pub fn elimination(nvars: usize, block: usize) -> Self {
        assert!(block <= nvars);
        MonomialOrder { kind: OrderKind::Elimination { block }, perm: (0..nvars).collect() }
    }

    pub fn with_permutation(mut self, perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; self.perm.len()];
        if perm.len() != self.perm.len() {
            return Err(Error::InvalidRing(format!("permutation length {} != {}", perm.len(), self.perm.len())));
        }
        for &p in &perm {
            if p >= seen.len() || seen[p] {
                return Err(Error::InvalidRing(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        self.perm = perm;
        Ok(self)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn is_local(&self) -> bool {
        matches!(self.kind, OrderKind::LocalNegDegRevLex)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::GlobalDegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| degrevlex_tail(a, b, &self.perm)),
            OrderKind::LocalNegDegRevLex => b
                .degree()
                .cmp(&a.degree())
                .then_with(|| degrevlex_tail(a, b, &self.perm)),
            OrderKind::Elimination { block } => {
                let (head, tail) = self.perm.split_at(block);
                partial_degree(a, head)
                    .cmp(&partial_degree(b, head))
                    .then_with(|| degrevlex_tail(a, b, head))
                    .then_with(|| partial_degree(a, tail).cmp(&partial_degree(b, tail)))
                    .then_with(|| degrevlex_tail(a, b, tail))
            }
        }
    }
}
