use smallvec::SmallVec;

/// Exponent vector over the ambient variables `z_0..z_{v-1}`.
///
/// The derived `Ord` is plain lexicographic order on exponents; it is only used
/// as a storage key. Term orders live in [`super::order::MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `true` when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// If this is a pure power `z_i^k` with `k > 0`, returns `(i, k)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    /// Prepends `count` zero exponents.
    pub(crate) fn extend_front(&self, count: usize) -> Monomial {
        let mut v: SmallVec<[u32; 6]> = SmallVec::from_elem(0, count);
        v.extend_from_slice(&self.0);
        Monomial(v)
    }

    /// Drops the first `count` exponents, or `None` if any of them is nonzero.
    pub(crate) fn strip_front(&self, count: usize) -> Option<Monomial> {
        if self.0[..count].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial(SmallVec::from_slice(&self.0[count..])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_quotient() {
        let a = Monomial::from_exponents(&[1, 2, 0]);
        let b = Monomial::from_exponents(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Some(Monomial::from_exponents(&[1, 0, 1])));
        assert_eq!(a.lcm(&Monomial::from_exponents(&[0, 3, 1])).exponents(), &[1, 3, 1]);
    }

    #[test]
    fn pure_powers() {
        assert_eq!(Monomial::from_exponents(&[0, 4]).as_pure_power(), Some((1, 4)));
        assert_eq!(Monomial::from_exponents(&[1, 4]).as_pure_power(), None);
        assert_eq!(Monomial::one(2).as_pure_power(), None);
    }
}
