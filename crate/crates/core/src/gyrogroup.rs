//! Table-backed structures and the traits the checkers are written against.

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::axioms::{verify_axioms, Window};
use crate::error::{GyroError, Result};
use crate::perm::Perm;
use crate::table::CayleyTable;

/// A binary operation with a distinguished identity candidate.
///
/// Nothing here promises the gyrogroup axioms; the checkers in
/// [`crate::axioms`] work on any `Magma` and report what fails.
pub trait Magma: Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync + Serialize;

    fn name(&self) -> &str;
    fn op(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
    /// Some `x` with `x ⊕ a = e`, if one exists.
    fn left_inverse(&self, a: Self::Elem) -> Option<Self::Elem>;

    /// `gyr[a,b](c) = (a ⊕ b)⁻¹ ⊕ (a ⊕ (b ⊕ c))`, or `None` when `a ⊕ b` has no
    /// left inverse.
    #[inline]
    fn gyrator(&self, a: Self::Elem, b: Self::Elem, c: Self::Elem) -> Option<Self::Elem> {
        let ab_inv = self.left_inverse(self.op(a, b))?;
        Some(self.op(ab_inv, self.op(a, self.op(b, c))))
    }
}

/// A finite table-backed magma with 0 as identity candidate.
#[derive(Clone, Debug)]
pub struct FiniteMagma {
    name: String,
    table: CayleyTable,
    left_inv: Vec<Option<usize>>,
}

impl FiniteMagma {
    pub fn new(name: impl Into<String>, table: CayleyTable) -> Self {
        let n = table.len();
        let left_inv = (0..n)
            .map(|a| (0..n).find(|&x| table.get(x, a) == 0))
            .collect();
        Self {
            name: name.into(),
            table,
            left_inv,
        }
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
}

impl Magma for FiniteMagma {
    type Elem = usize;

    fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    fn op(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    fn identity(&self) -> usize {
        0
    }

    #[inline]
    fn left_inverse(&self, a: usize) -> Option<usize> {
        self.left_inv[a]
    }
}

/// A finite gyrogroup on `0..n`, element 0 the identity.
///
/// Construction runs the full axiom check, so every value of this type is a
/// verified gyrogroup. Gyroautomorphisms are always recomputed from the
/// table through the gyrator identity.
#[derive(Clone, Debug)]
pub struct FiniteGyrogroup {
    name: String,
    table: CayleyTable,
    inv: Vec<usize>,
}

impl FiniteGyrogroup {
    pub fn new(name: impl Into<String>, table: CayleyTable) -> Result<Self> {
        let magma = FiniteMagma::new(name, table);
        Self::from_magma(magma)
    }

    pub fn from_magma(magma: FiniteMagma) -> Result<Self> {
        let report = verify_axioms(&magma, &Window::full(magma.order()));
        if let Some(failure) = report.first_failure() {
            return Err(GyroError::NotAGyrogroup {
                name: magma.name,
                reason: failure,
            });
        }
        let inv = magma
            .left_inv
            .iter()
            .map(|x| x.expect("left inverses exist after verification"))
            .collect();
        Ok(Self {
            name: magma.name,
            table: magma.table,
            inv,
        })
    }

    /// Builds from an operation on `0..n`.
    pub fn from_fn(
        name: impl Into<String>,
        n: usize,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        Self::new(name, CayleyTable::from_fn(n, op)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn as_magma(&self) -> FiniteMagma {
        FiniteMagma::new(self.name.clone(), self.table.clone())
    }

    /// Checked `a ⊕ b`.
    pub fn apply(&self, a: usize, b: usize) -> Result<usize> {
        self.table.try_get(a, b)
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    /// The (two-sided) inverse of `a`.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn left_inverse(&self, a: usize) -> Result<usize> {
        self.inv.get(a).copied().ok_or(GyroError::OutOfRange {
            index: a,
            size: self.order(),
        })
    }

    #[inline]
    pub fn gyr_apply(&self, a: usize, b: usize, c: usize) -> usize {
        self.op(self.inv(self.op(a, b)), self.op(a, self.op(b, c)))
    }

    /// `gyr[a,b]` as a permutation, computed from the gyrator identity.
    pub fn gyr(&self, a: usize, b: usize) -> Result<Perm> {
        let n = self.order();
        for x in [a, b] {
            if x >= n {
                return Err(GyroError::OutOfRange { index: x, size: n });
            }
        }
        let image: Vec<usize> = (0..n).map(|c| self.gyr_apply(a, b, c)).collect();
        let perm = Perm::new(image)
            .map_err(|_| GyroError::NotAutomorphism(format!("gyr[{a},{b}] is not a bijection")))?;
        if let Some((x, y)) = self.homomorphism_failure(&perm) {
            return Err(GyroError::NotAutomorphism(format!(
                "gyr[{a},{b}] does not preserve {x} ⊕ {y}"
            )));
        }
        Ok(perm)
    }

    /// `true` when every gyroautomorphism is trivial.
    pub fn gyr_is_trivial(&self, a: usize, b: usize) -> bool {
        (0..self.order()).all(|c| self.gyr_apply(a, b, c) == c)
    }

    /// Returns a pair whose product a map fails to preserve.
    pub fn homomorphism_failure(&self, perm: &Perm) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| perm.apply(self.op(x, y)) != self.op(perm.apply(x), perm.apply(y)))
    }

    pub fn is_automorphism(&self, perm: &Perm) -> bool {
        perm.len() == self.order() && self.homomorphism_failure(perm).is_none()
    }

    /// `x`, `x ⊕ x`, `x ⊕ (x ⊕ x)`, ... until the identity recurs.
    pub fn element_order(&self, x: usize) -> usize {
        let mut p = x;
        let mut k = 1;
        while p != 0 {
            p = self.op(x, p);
            k += 1;
            if k > self.order() + 1 {
                return 0;
            }
        }
        k
    }
}

impl Magma for FiniteGyrogroup {
    type Elem = usize;

    fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    fn op(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    fn identity(&self) -> usize {
        0
    }

    #[inline]
    fn left_inverse(&self, a: usize) -> Option<usize> {
        Some(self.inv[a])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn apply_examples() {
        let k8 = builtin::k8();
        assert_eq!(k8.apply(0, 5).unwrap(), 5);
        assert_eq!(k8.apply(1, 6).unwrap(), 7);
        let z3 = builtin::cyclic(3);
        assert_eq!(z3.apply(1, 2).unwrap(), 0);
        assert!(matches!(
            z3.apply(3, 0),
            Err(GyroError::OutOfRange { index: 3, size: 3 })
        ));
    }

    #[test]
    fn left_inverse_examples() {
        let k8 = builtin::k8();
        assert_eq!(k8.left_inverse(0).unwrap(), 0);
        assert_eq!(k8.left_inverse(3).unwrap(), 3);
        for x in k8.elements() {
            assert_eq!(k8.inv(x), x, "every element of K8 is self-inverse");
        }
        assert_eq!(builtin::cyclic(4).left_inverse(1).unwrap(), 3);
    }

    #[test]
    fn gyr_examples() {
        let k8 = builtin::k8();
        for b in k8.elements() {
            assert!(k8.gyr(0, b).unwrap().is_identity());
        }
        let a = k8.gyr(1, 2).unwrap();
        assert!(!a.is_identity());
        assert_eq!(a, builtin::k8_automorphism_a());
        assert!(k8.gyr(1, 6).unwrap().is_identity());
    }

    #[test]
    fn non_gyrogroup_rejected() {
        // a Latin square with identity 0 that is not gyroassociative
        let t = CayleyTable::from_rows(vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap();
        assert!(matches!(
            FiniteGyrogroup::new("L5", t),
            Err(GyroError::NotAGyrogroup { .. })
        ));
    }
}
