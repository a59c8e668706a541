//! Exhaustive (or windowed) verification of the gyrogroup axioms and the
//! standard gyrogroup identities.
//!
//! Every check quantifies over a [`Window`]. For finite structures the window
//! is the whole carrier. For rule-backed structures the element quantifiers
//! range over `window.elements`, while map equalities (automorphism, loop
//! property, gyr inversion) are evaluated on the smaller `window.probes`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::gyrogroup::Magma;

/// The finite sample a check quantifies over.
#[derive(Clone, Debug)]
pub struct Window<E> {
    pub elements: Vec<E>,
    pub probes: Vec<E>,
}

impl Window<usize> {
    pub fn full(n: usize) -> Self {
        let all: Vec<usize> = (0..n).collect();
        Window {
            elements: all.clone(),
            probes: all,
        }
    }
}

impl<E: Clone> Window<E> {
    pub fn new(elements: Vec<E>, probes: Vec<E>) -> Self {
        Window { elements, probes }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness<E> {
    pub elements: Vec<E>,
    pub detail: String,
}

/// Outcome of one quantified check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check<E> {
    pub name: &'static str,
    pub passed: bool,
    /// Number of instances (elements, pairs or triples) examined.
    pub checked: u64,
    pub witness: Option<Witness<E>>,
}

impl<E> Check<E> {
    pub(crate) fn new(name: &'static str) -> Self {
        Check {
            name,
            passed: true,
            checked: 0,
            witness: None,
        }
    }

    pub(crate) fn fail(&mut self, elements: Vec<E>, detail: String) {
        self.passed = false;
        if self.witness.is_none() {
            self.witness = Some(Witness { elements, detail });
        }
    }

    pub(crate) fn absorb(&mut self, other: Check<E>) {
        self.checked += other.checked;
        if !other.passed {
            self.passed = false;
            if self.witness.is_none() {
                self.witness = other.witness;
            }
        }
    }
}

/// Pass/fail per check, each with its first counterexample.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport<E> {
    pub structure: String,
    pub checks: Vec<Check<E>>,
}

pub type AxiomReport<E> = CheckReport<E>;
pub type IdentityReport<E> = CheckReport<E>;

impl<E: std::fmt::Debug> CheckReport<E> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check<E>> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks.iter().find(|c| !c.passed).map(|c| {
            let w = c
                .witness
                .as_ref()
                .map(|w| format!(" at {:?}: {}", w.elements, w.detail))
                .unwrap_or_default();
            format!("{} fails{}", c.name, w)
        })
    }
}

pub const LEFT_IDENTITY: &str = "left identity";
pub const LEFT_INVERSE: &str = "left inverse";
pub const GYROASSOCIATIVE: &str = "gyroassociative law";
pub const LEFT_LOOP: &str = "left loop property";

/// Checks the four gyrogroup axioms.
///
/// Axiom (iii) covers both that every `gyr[a,b]` is an automorphism and the
/// left gyroassociative law; its `checked` count is the number of triples
/// visited, `|W|³`.
pub fn verify_axioms<M: Magma>(m: &M, w: &Window<M::Elem>) -> AxiomReport<M::Elem> {
    let e = m.identity();

    let mut identity = Check::new(LEFT_IDENTITY);
    let mut inverse = Check::new(LEFT_INVERSE);
    for &a in &w.elements {
        identity.checked += 1;
        if m.op(e, a) != a {
            identity.fail(vec![a], format!("e ⊕ a = {:?}", m.op(e, a)));
        }
        inverse.checked += 1;
        match m.left_inverse(a) {
            Some(x) if m.op(x, a) == e => {}
            _ => inverse.fail(vec![a], "no x with x ⊕ a = e".into()),
        }
    }

    // b ⊕ c and the probe products c ⊕ d do not depend on a
    let bc: Vec<Vec<M::Elem>> = w
        .elements
        .par_iter()
        .map(|&b| w.elements.iter().map(|&c| m.op(b, c)).collect())
        .collect();
    let probe_products = ProbeProducts::new(m, &w.probes);
    let rows: Vec<[Check<M::Elem>; 3]> = w
        .elements
        .par_iter()
        .map(|&a| axiom_row(m, w, &bc, &probe_products, a))
        .collect();
    let mut gyroassoc = Check::new(GYROASSOCIATIVE);
    let mut left_loop = Check::new(LEFT_LOOP);
    let mut automorphism = Check::new(GYROASSOCIATIVE);
    for [g, auto, l] in rows {
        gyroassoc.absorb(g);
        automorphism.absorb(auto);
        left_loop.absorb(l);
    }
    gyroassoc.absorb(automorphism);

    CheckReport {
        structure: m.name().to_string(),
        checks: vec![identity, inverse, gyroassoc, left_loop],
    }
}

/// The products `c ⊕ d` of probe pairs, deduplicated.
struct ProbeProducts<E> {
    distinct: Vec<E>,
    /// `slot[i * n + j]` indexes `distinct` for `probes[i] ⊕ probes[j]`.
    slot: Vec<usize>,
}

impl<E: Ord + Copy> ProbeProducts<E> {
    fn new<M: Magma<Elem = E>>(m: &M, probes: &[E]) -> Self {
        let all: Vec<E> = probes
            .iter()
            .flat_map(|&c| probes.iter().map(move |&d| m.op(c, d)))
            .collect();
        let mut distinct = all.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let slot = all
            .iter()
            .map(|v| distinct.binary_search(v).expect("present"))
            .collect();
        ProbeProducts { distinct, slot }
    }
}

fn axiom_row<M: Magma>(
    m: &M,
    w: &Window<M::Elem>,
    bc: &[Vec<M::Elem>],
    products: &ProbeProducts<M::Elem>,
    a: M::Elem,
) -> [Check<M::Elem>; 3] {
    let mut gyroassoc = Check::new(GYROASSOCIATIVE);
    let mut left_loop = Check::new(LEFT_LOOP);
    let mut image = Vec::with_capacity(w.probes.len());
    let mut automorphic: HashSet<Vec<M::Elem>> = HashSet::new();
    // kept apart so that a failing triple, when there is one, is the witness
    let mut automorphism = Check::new(GYROASSOCIATIVE);
    let n_probes = w.probes.len();
    for (bi, &b) in w.elements.iter().enumerate() {
        let ab = m.op(a, b);
        let Some(ab_inv) = m.left_inverse(ab) else {
            gyroassoc.checked += w.elements.len() as u64;
            gyroassoc.fail(
                vec![a, b],
                "a ⊕ b has no left inverse, gyr undefined".into(),
            );
            left_loop.fail(vec![a, b], "gyr[a,b] undefined".into());
            continue;
        };
        let gyr = |c: M::Elem| m.op(ab_inv, m.op(a, m.op(b, c)));

        // gyr[a,b] is an automorphism (on the probe set); the verdict depends
        // only on the probe images, so it is computed once per distinct map
        image.clear();
        image.extend(w.probes.iter().map(|&c| gyr(c)));
        image.extend(products.distinct.iter().map(|&v| gyr(v)));
        if !automorphic.contains(&image) {
            let (on_probes, on_products) = image.split_at(n_probes);
            let mut ok = true;
            if let Some(dup) = first_duplicate(on_probes) {
                ok = false;
                automorphism.fail(
                    vec![a, b],
                    format!("gyr[a,b] is not injective (repeats {dup:?})"),
                );
            }
            'hom: for (i, &c) in w.probes.iter().enumerate() {
                for (j, &d) in w.probes.iter().enumerate() {
                    if on_products[products.slot[i * n_probes + j]]
                        != m.op(on_probes[i], on_probes[j])
                    {
                        ok = false;
                        automorphism.fail(
                            vec![a, b, c, d],
                            "gyr[a,b](c ⊕ d) ≠ gyr[a,b](c) ⊕ gyr[a,b](d)".into(),
                        );
                        break 'hom;
                    }
                }
            }
            if ok {
                automorphic.insert(image.clone());
            }
        }

        for (ci, &bc) in bc[bi].iter().enumerate() {
            gyroassoc.checked += 1;
            let lhs = m.op(a, bc);
            let rhs = m.op(ab, m.op(ab_inv, lhs));
            if lhs != rhs {
                gyroassoc.fail(
                    vec![a, b, w.elements[ci]],
                    format!("a ⊕ (b ⊕ c) = {lhs:?} but (a ⊕ b) ⊕ gyr[a,b](c) = {rhs:?}"),
                );
            }
        }

        left_loop.checked += 1;
        for (i, &c) in w.probes.iter().enumerate() {
            match m.gyrator(ab, b, c) {
                Some(v) if v == image[i] => {}
                other => {
                    left_loop.fail(
                        vec![a, b, c],
                        format!(
                            "gyr[a ⊕ b, b](c) = {other:?} but gyr[a,b](c) = {:?}",
                            image[i]
                        ),
                    );
                    break;
                }
            }
        }
    }
    [gyroassoc, automorphism, left_loop]
}

fn first_duplicate<E: Ord + Copy>(values: &[E]) -> Option<E> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).find(|p| p[0] == p[1]).map(|p| p[0])
}

pub const LEFT_CANCELLATION: &str = "left cancellation";
pub const TWO_SIDED_INVERSE: &str = "ab = e iff ba = e";
pub const GYR_AB_AINV: &str = "gyr[ab, a^-1] = gyr[a,b]";
pub const GYRATOR: &str = "gyrator identity";
pub const GYR_INVERSION: &str = "gyr^-1[a,b] = gyr[b,a]";
pub const INVERSE_OF_PRODUCT: &str = "(ab)^-1 = gyr[a,b](b^-1 a^-1)";

/// Checks the six standard gyrogroup identities.
///
/// The gyrator identity is checked as the statement that the element
/// `(ab)⁻¹(a(bc))` solves the gyroassociative law, which is its content once
/// gyr is defined through it.
pub fn verify_identities<M: Magma>(m: &M, w: &Window<M::Elem>) -> IdentityReport<M::Elem> {
    let rows: Vec<[Check<M::Elem>; 6]> = w
        .elements
        .par_iter()
        .map(|&a| identity_row(m, w, a))
        .collect();
    let mut checks = [
        Check::new(LEFT_CANCELLATION),
        Check::new(TWO_SIDED_INVERSE),
        Check::new(GYR_AB_AINV),
        Check::new(GYRATOR),
        Check::new(GYR_INVERSION),
        Check::new(INVERSE_OF_PRODUCT),
    ];
    for row in rows {
        for (acc, c) in checks.iter_mut().zip(row) {
            acc.absorb(c);
        }
    }
    CheckReport {
        structure: m.name().to_string(),
        checks: checks.into(),
    }
}

fn identity_row<M: Magma>(m: &M, w: &Window<M::Elem>, a: M::Elem) -> [Check<M::Elem>; 6] {
    let e = m.identity();
    let mut cancel = Check::new(LEFT_CANCELLATION);
    let mut two_sided = Check::new(TWO_SIDED_INVERSE);
    let mut gyr_ab_ainv = Check::new(GYR_AB_AINV);
    let mut gyrator = Check::new(GYRATOR);
    let mut gyr_inv = Check::new(GYR_INVERSION);
    let mut inv_prod = Check::new(INVERSE_OF_PRODUCT);

    let a_inv = m.left_inverse(a);
    for &b in &w.elements {
        let ab = m.op(a, b);

        cancel.checked += 1;
        match a_inv {
            Some(ai) if m.op(ai, ab) == b => {}
            _ => cancel.fail(vec![a, b], "a⁻¹ ⊕ (a ⊕ b) ≠ b".into()),
        }

        two_sided.checked += 1;
        if (ab == e) != (m.op(b, a) == e) {
            two_sided.fail(
                vec![a, b],
                format!("a ⊕ b = {ab:?}, b ⊕ a = {:?}", m.op(b, a)),
            );
        }

        gyr_ab_ainv.checked += 1;
        match a_inv {
            Some(ai) => {
                if let Some(&c) = w
                    .probes
                    .iter()
                    .find(|&&c| m.gyrator(ab, ai, c) != m.gyrator(a, b, c))
                {
                    gyr_ab_ainv.fail(vec![a, b, c], "maps differ at c".into());
                }
            }
            None => gyr_ab_ainv.fail(vec![a, b], "a has no inverse".into()),
        }

        for &c in &w.elements {
            gyrator.checked += 1;
            let lhs = m.op(a, m.op(b, c));
            match m.gyrator(a, b, c) {
                Some(g) if m.op(ab, g) == lhs => {}
                other => gyrator.fail(
                    vec![a, b, c],
                    format!("(a ⊕ b) ⊕ {other:?} ≠ a ⊕ (b ⊕ c) = {lhs:?}"),
                ),
            }
        }

        gyr_inv.checked += 1;
        if let Some(&c) = w
            .probes
            .iter()
            .find(|&&c| m.gyrator(a, b, c).and_then(|g| m.gyrator(b, a, g)) != Some(c))
        {
            gyr_inv.fail(vec![a, b, c], "gyr[b,a](gyr[a,b](c)) ≠ c".into());
        }

        inv_prod.checked += 1;
        let expected = m.left_inverse(ab);
        let computed = match (m.left_inverse(b), a_inv) {
            (Some(bi), Some(ai)) => m.gyrator(a, b, m.op(bi, ai)),
            _ => None,
        };
        if expected.is_none() || expected != computed {
            inv_prod.fail(
                vec![a, b],
                format!("(a ⊕ b)⁻¹ = {expected:?}, gyr[a,b](b⁻¹ ⊕ a⁻¹) = {computed:?}"),
            );
        }
    }
    [cancel, two_sided, gyr_ab_ainv, gyrator, gyr_inv, inv_prod]
}

/// Result of [`is_group`]: a non-associative triple when the answer is no.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCheck<E> {
    pub is_group: bool,
    pub witness: Option<[E; 3]>,
}

/// A gyrogroup is a group iff every gyroautomorphism is trivial.
///
/// Looks for `gyr[a,b](c) ≠ c`; by left cancellation `(a,b,c)` then violates
/// associativity. If the structure is not a gyrogroup the triple is confirmed
/// directly and, failing that, associativity is searched for outright.
pub fn is_group<M: Magma>(m: &M, w: &Window<M::Elem>) -> GroupCheck<M::Elem> {
    let assoc_fails = |a, b, c| m.op(a, m.op(b, c)) != m.op(m.op(a, b), c);
    let mut gyr_witness = None;
    'outer: for &a in &w.elements {
        for &b in &w.elements {
            for &c in &w.probes {
                if m.gyrator(a, b, c) != Some(c) {
                    gyr_witness = Some([a, b, c]);
                    break 'outer;
                }
            }
        }
    }
    match gyr_witness {
        None => GroupCheck {
            is_group: true,
            witness: None,
        },
        Some([a, b, c]) if assoc_fails(a, b, c) => GroupCheck {
            is_group: false,
            witness: Some([a, b, c]),
        },
        Some(_) => {
            let found = w.elements.iter().find_map(|&a| {
                w.elements.iter().find_map(|&b| {
                    w.elements
                        .iter()
                        .find(|&&c| assoc_fails(a, b, c))
                        .map(|&c| [a, b, c])
                })
            });
            GroupCheck {
                is_group: false,
                witness: found,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::gyrogroup::FiniteMagma;
    use crate::table::CayleyTable;

    #[test]
    fn groups_and_k8_pass() {
        for g in [builtin::cyclic(3), builtin::q8(), builtin::k8()] {
            let w = Window::full(g.order());
            let r = verify_axioms(&g, &w);
            assert!(r.passed(), "{:?}", r.first_failure());
            let n = g.order() as u64;
            assert_eq!(r.check(GYROASSOCIATIVE).unwrap().checked, n * n * n);
            let ids = verify_identities(&g, &w);
            assert!(ids.passed(), "{:?}", ids.first_failure());
        }
    }

    #[test]
    fn g24b_passes_all_triples() {
        let g = builtin::builtin_finite("G24b").unwrap();
        let r = verify_axioms(&g, &Window::full(24));
        assert!(r.passed());
        assert_eq!(r.check(GYROASSOCIATIVE).unwrap().checked, 13_824);
    }

    #[test]
    fn corrupted_k8_is_diagnosed() {
        // swap two entries in row 3; the table is no longer Latin
        let k8 = builtin::k8();
        let mut t = k8.table().clone();
        let (u, v) = (t.get(3, 1), t.get(3, 2));
        t.set(3, 1, v).unwrap();
        t.set(3, 2, u).unwrap();
        let m = FiniteMagma::new("K8-corrupt", t);
        let w = Window::full(8);
        let ids = verify_identities(&m, &w);
        assert!(!ids.passed());
        let failing = ids.checks.iter().find(|c| !c.passed).unwrap();
        assert!(failing.witness.is_some());
        assert!(!verify_axioms(&m, &w).passed());
    }

    #[test]
    fn is_group_examples() {
        let z4 = builtin::cyclic(4);
        assert!(is_group(&z4, &Window::full(4)).is_group);

        let k8 = builtin::k8();
        let r = is_group(&k8, &Window::full(8));
        assert!(!r.is_group);
        let [a, b, c] = r.witness.unwrap();
        assert_ne!(k8.op(a, k8.op(b, c)), k8.op(k8.op(a, b), c));

        let g24a = builtin::builtin_finite("G24a").unwrap();
        assert!(!is_group(&g24a, &Window::full(24)).is_group);
    }

    #[test]
    fn non_associative_magma_witness_is_checked() {
        let t = CayleyTable::from_rows_lenient(vec![vec![0, 1], vec![1, 1]]).unwrap();
        let m = FiniteMagma::new("bad", t);
        let r = verify_axioms(&m, &Window::full(2));
        assert!(!r.check(LEFT_INVERSE).unwrap().passed);
    }
}
