use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Variable-name table shared by every polynomial of one ring.
#[derive(Clone)]
pub struct Ring(Arc<Vec<String>>);

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("'{n}' is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable '{n}'")));
            }
        }
        Ok(Ring(Arc::new(names)))
    }

    /// One-parameter ring used for branch parametrizations.
    pub fn series() -> Ring {
        Ring(Arc::new(vec!["t".to_string()]))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self:?} vs {other:?}")))
        }
    }

    /// Ring with `count` fresh auxiliary variables placed before the existing ones.
    pub(crate) fn with_aux_front(&self, count: usize) -> Ring {
        let mut names: Vec<String> = (0..count).map(|i| format!("_aux{i}")).collect();
        names.extend(self.0.iter().cloned());
        Ring(Arc::new(names))
    }

    /// Ring obtained by deleting one variable.
    pub(crate) fn without(&self, index: usize) -> Ring {
        let names = self.0.iter().enumerate().filter(|(i, _)| *i != index).map(|(_, n)| n.clone()).collect();
        Ring(Arc::new(names))
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.0.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(Ring::new(&["x", "y", "x"]).is_err());
        assert!(Ring::new(&["x", "2y"]).is_err());
        assert!(Ring::new(&["x", "y_1"]).is_ok());
    }

    #[test]
    fn equality_is_by_names() {
        let a = Ring::new(&["x", "y"]).unwrap();
        let b = Ring::new(&["x", "y"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Ring::new(&["y", "x"]).unwrap());
    }
}
