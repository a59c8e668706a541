use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GyroError, Result};

/// A permutation of `0..n` stored as its image array.
///
/// Used for gyroautomorphisms of finite gyrogroups and for automorphisms of
/// the kernel group in factor systems.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Wraps an image array, rejecting anything that is not a bijection.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n {
                return Err(GyroError::OutOfRange { index: v, size: n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(GyroError::Inconsistent(format!(
                    "image array repeats {v}, not a permutation"
                )));
            }
        }
        Ok(Perm(image))
    }

    /// Checks whether an image array is a bijection without consuming it.
    pub fn is_bijection(image: &[usize]) -> bool {
        let n = image.len();
        let mut seen = vec![false; n];
        image
            .iter()
            .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Self {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Disjoint cycle notation, omitting fixed points; `()` for the identity.
    pub fn cycles(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.0[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            out.push_str(&format!("({})", body.join(" ")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self.cycles())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycles())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_notation() {
        let p = Perm::new(vec![0, 6, 5, 3, 4, 2, 1, 7]).unwrap();
        assert_eq!(p.cycles(), "(1 6)(2 5)");
        assert_eq!(Perm::identity(4).cycles(), "()");
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(Perm::new(vec![0, 2]).is_err());
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(v in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Perm::new(v).unwrap();
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }
    }
}
