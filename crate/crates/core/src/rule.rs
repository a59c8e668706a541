//! Rule-backed semi cross products `ℤ ⋈ K` over a finite gyrogroup `K`.
//!
//! `Aut(ℤ) = {I, -I}`, so σ is a sign per element of `K`. The carrier is
//! infinite and checks quantify over a symmetric integer window.

use std::fmt;

use crate::axioms::{Check, Window};
use crate::error::{GyroError, Result};
use crate::factor::FactorData;
use crate::gyrogroup::{FiniteGyrogroup, Magma};

/// Default `m` bound for windows over the ℤ coordinate.
pub const DEFAULT_RADIUS: i64 = 50;

#[derive(Clone, Debug)]
pub struct RuleGyrogroup {
    name: String,
    k: FiniteGyrogroup,
    negate: Vec<bool>,
    /// `±1` per `x`; keeps `op` branch free.
    sign: Vec<i64>,
}

impl RuleGyrogroup {
    /// `negate[x]` selects `σ_x = -I`. The sign map must satisfy the semi
    /// cross product conditions, which for `Aut(ℤ) ≅ ℤ₂` read `σ_e = I`,
    /// `σ_{x⁻¹} = σ_x` and `σ_{(xy)y} = σ_x`.
    pub fn new(name: impl Into<String>, k: FiniteGyrogroup, negate: Vec<bool>) -> Result<Self> {
        let n = k.order();
        if negate.len() != n {
            return Err(GyroError::DomainMismatch(format!(
                "sign map has {} values, K has {n} elements",
                negate.len()
            )));
        }
        if negate[0] {
            return Err(GyroError::Precondition("σ_e must be the identity".into()));
        }
        for x in 0..n {
            if negate[k.inv(x)] != negate[x] {
                return Err(GyroError::Precondition(format!(
                    "σ_(x^-1) ≠ σ_x^-1 at x = {x}"
                )));
            }
            for y in 0..n {
                let xyy = k.op(k.op(x, y), y);
                if negate[xyy] != negate[x] {
                    return Err(GyroError::Precondition(format!(
                        "σ_((xy)y) ≠ σ_x at ({x}, {y})"
                    )));
                }
            }
        }
        let sign = negate.iter().map(|&n| if n { -1 } else { 1 }).collect();
        Ok(Self {
            name: name.into(),
            k,
            negate,
            sign,
        })
    }

    /// The integers, `ℤ ⋈ {e}`.
    pub fn integers() -> Self {
        let trivial = FiniteGyrogroup::from_fn("Z1", 1, |_, _| 0).expect("trivial group");
        Self::new("Z", trivial, vec![false]).expect("trivial sign map")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> &FiniteGyrogroup {
        &self.k
    }

    pub fn negate(&self) -> &[bool] {
        &self.negate
    }

    #[inline]
    pub fn sigma(&self, x: usize, h: i64) -> i64 {
        self.sign[x] * h
    }

    pub fn contains(&self, a: (i64, usize)) -> bool {
        a.1 < self.k.order()
    }

    /// Checked product.
    pub fn apply(&self, a: (i64, usize), b: (i64, usize)) -> Result<(i64, usize)> {
        for v in [a, b] {
            if !self.contains(v) {
                return Err(GyroError::OutsideCarrier(format!(
                    "({}, {}) has K-coordinate outside 0..{}",
                    v.0,
                    v.1,
                    self.k.order()
                )));
            }
        }
        a.0.checked_add(self.sigma(a.1, b.0))
            .map(|h| (h, self.k.op(a.1, b.1)))
            .ok_or_else(|| GyroError::OutsideCarrier("integer overflow".into()))
    }

    /// `{(m, x) : |m| ≤ radius}` with probes `|m| ≤ 1`.
    pub fn window(&self, radius: i64) -> Window<(i64, usize)> {
        let block = |r: i64| {
            (-r..=r)
                .flat_map(|m| (0..self.k.order()).map(move |x| (m, x)))
                .collect::<Vec<_>>()
        };
        Window::new(block(radius), block(radius.min(1)))
    }

    /// The formula `gyr[(h,x),(k,y)](l,z) = (σ_{(xy)⁻¹}σ_xσ_y(l), gyr[x,y]z)`.
    pub fn gyr_formula(&self, x: usize, y: usize, l: i64, z: usize) -> (i64, usize) {
        let w = self.k.inv(self.k.op(x, y));
        (
            self.sigma(w, self.sigma(x, self.sigma(y, l))),
            self.k.gyr_apply(x, y, z),
        )
    }

    /// Compares the gyrator of the rule with [`Self::gyr_formula`] on a window.
    pub fn gyr_formula_check(&self, w: &Window<(i64, usize)>) -> Check<(i64, usize)> {
        let mut check = Check::new("gyr matches the semi cross formula");
        for &a in &w.probes {
            for &b in &w.probes {
                for &c in &w.elements {
                    check.checked += 1;
                    let got = self.gyrator(a, b, c);
                    let want = self.gyr_formula(a.1, b.1, c.0, c.1);
                    if got != Some(want) {
                        check.fail(vec![a, b, c], format!("{got:?} ≠ {want:?}"));
                        return check;
                    }
                }
            }
        }
        check
    }
}

impl Magma for RuleGyrogroup {
    type Elem = (i64, usize);

    fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    fn op(&self, a: (i64, usize), b: (i64, usize)) -> (i64, usize) {
        (a.0 + self.sigma(a.1, b.0), self.k.op(a.1, b.1))
    }

    fn identity(&self) -> (i64, usize) {
        (0, 0)
    }

    #[inline]
    fn left_inverse(&self, a: (i64, usize)) -> Option<(i64, usize)> {
        let xi = self.k.inv(a.1);
        Some((self.sigma(xi, -a.0), xi))
    }
}

/// A factor system `(K, ℤ, σ, f ≡ 0, F)` with σ a sign map, checked on a
/// window of ℤ.
#[derive(Clone, Debug)]
pub struct IntFactorSystem {
    rule: RuleGyrogroup,
    radius: i64,
}

impl IntFactorSystem {
    pub fn trivial(k: FiniteGyrogroup, radius: i64) -> Self {
        let n = k.order();
        let rule = RuleGyrogroup::new(format!("Z x {}", k.name()), k, vec![false; n])
            .expect("trivial sign map");
        Self { rule, radius }
    }

    pub fn from_sigma(rule: RuleGyrogroup, radius: i64) -> Self {
        Self { rule, radius }
    }
}

impl fmt::Display for IntFactorSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (|m| ≤ {})", self.rule.name(), self.radius)
    }
}

impl FactorData for IntFactorSystem {
    type H = i64;
    type K = usize;

    fn name(&self) -> String {
        self.to_string()
    }

    fn h_elements(&self) -> Vec<i64> {
        (-self.radius..=self.radius).collect()
    }

    fn k_elements(&self) -> Vec<usize> {
        self.rule.k().elements().collect()
    }

    fn h_identity(&self) -> i64 {
        0
    }

    fn h_op(&self, a: i64, b: i64) -> i64 {
        a + b
    }

    fn h_inv(&self, a: i64) -> i64 {
        -a
    }

    fn k_identity(&self) -> usize {
        0
    }

    fn k_op(&self, x: usize, y: usize) -> usize {
        self.rule.k().op(x, y)
    }

    fn k_inv(&self, x: usize) -> usize {
        self.rule.k().inv(x)
    }

    fn sigma(&self, x: usize, h: i64) -> i64 {
        self.rule.sigma(x, h)
    }

    fn f(&self, _x: usize, _y: usize) -> i64 {
        0
    }

    fn big_f(&self, x: usize, y: usize, l: i64, z: usize) -> i64 {
        self.rule.gyr_formula(x, y, l, z).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::verify_axioms;
    use crate::builtin;

    #[test]
    fn apply_and_carrier() {
        let g = builtin::ginf("Ginf_b").unwrap();
        assert_eq!(
            g.apply((5, 7), (2, 3)).unwrap(),
            (3, builtin::k8().op(7, 3))
        );
        assert_eq!(
            g.apply((5, 1), (2, 3)).unwrap(),
            (7, builtin::k8().op(1, 3))
        );
        assert!(matches!(
            g.apply((0, 8), (0, 0)),
            Err(GyroError::OutsideCarrier(_))
        ));
    }

    #[test]
    fn window_shape() {
        let g = builtin::ginf("Ginf_a").unwrap();
        let w = g.window(DEFAULT_RADIUS);
        assert_eq!(w.elements.len(), 808);
        assert_eq!(w.probes.len(), 24);
    }

    #[test]
    fn integers_are_a_group() {
        let z = RuleGyrogroup::integers();
        let r = verify_axioms(&z, &z.window(20));
        assert!(r.passed());
        assert_eq!(z.op((3, 0), (-5, 0)), (-2, 0));
    }

    #[test]
    fn bad_sign_map_rejected() {
        let mut negate = vec![false; 8];
        negate[1] = true;
        assert!(RuleGyrogroup::new("bad", builtin::k8(), negate).is_err());
    }

    #[test]
    fn gyr_matches_formula() {
        for name in ["Ginf_a", "Ginf_b", "Ginf_q"] {
            let g = builtin::ginf(name).unwrap();
            assert!(g.gyr_formula_check(&g.window(3)).passed, "{name}");
        }
    }
}
