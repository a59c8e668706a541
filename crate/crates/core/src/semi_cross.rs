//! The semi cross product `H ⋈ K` of a group `H` and a gyrogroup `K`:
//! `(h, x)(k, y) = (h σ_x(k), xy)`.

use serde::Serialize;

use crate::axioms::{is_group, Check, CheckReport, Window};
use crate::error::{GyroError, Result};
use crate::extension::{Extension, Section};
use crate::gyrogroup::FiniteGyrogroup;
use crate::perm::Perm;
use crate::product::PairIndex;
use crate::structure::{automorphisms, induced, is_isomorphism, is_subgroup, Subset};
use crate::table::{tokenize, CayleyTable};

/// A map `K → Aut(H)`, stored as one value table per element of `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SigmaMap(Vec<Perm>);

impl SigmaMap {
    /// Checks that there is one value per element of `K` and each is an
    /// automorphism of `H`. The semi cross product conditions are checked by
    /// [`validate_sigma`].
    pub fn new(h: &FiniteGyrogroup, k: &FiniteGyrogroup, values: Vec<Perm>) -> Result<Self> {
        if values.len() != k.order() {
            return Err(GyroError::DomainMismatch(format!(
                "σ has {} values, K has {} elements",
                values.len(),
                k.order()
            )));
        }
        for (x, p) in values.iter().enumerate() {
            if p.len() != h.order() {
                return Err(GyroError::DomainMismatch(format!(
                    "σ_{x} acts on {} points, H has {}",
                    p.len(),
                    h.order()
                )));
            }
            if let Some((a, b)) = h.homomorphism_failure(p) {
                return Err(GyroError::NotAutomorphism(format!(
                    "σ_{x} does not preserve {a} ⊕ {b}"
                )));
            }
        }
        Ok(Self(values))
    }

    pub fn from_fn(
        h: &FiniteGyrogroup,
        k: &FiniteGyrogroup,
        value: impl Fn(usize) -> Perm,
    ) -> Result<Self> {
        Self::new(h, k, k.elements().map(value).collect())
    }

    pub fn trivial(h: &FiniteGyrogroup, k: &FiniteGyrogroup) -> Self {
        Self(vec![Perm::identity(h.order()); k.order()])
    }

    #[inline]
    pub fn at(&self, x: usize) -> &Perm {
        &self.0[x]
    }

    #[inline]
    pub fn apply(&self, x: usize, h: usize) -> usize {
        self.0[x].apply(h)
    }

    pub fn values(&self) -> &[Perm] {
        &self.0
    }

    /// `|K|` lines, each the value table of `σ_x`.
    pub fn parse(h: &FiniteGyrogroup, k: &FiniteGyrogroup, text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let (nh, nk) = (h.order(), k.order());
        if tokens.len() != nh * nk {
            return Err(GyroError::Parse(format!(
                "σ file needs {nk} lines of {nh} integers, found {} integers",
                tokens.len()
            )));
        }
        let values = tokens
            .chunks(nh)
            .enumerate()
            .map(|(x, c)| {
                Perm::new(c.to_vec())
                    .map_err(|_| GyroError::Parse(format!("σ_{x} is not a permutation")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(h, k, values)
    }

    pub fn to_text(&self) -> String {
        self.0
            .iter()
            .map(|p| {
                let v: Vec<String> = p.as_slice().iter().map(usize::to_string).collect();
                v.join(" ") + "\n"
            })
            .collect()
    }
}

pub const SIGMA_IDENTITY: &str = "σ_e = I";
pub const SIGMA_INVERSE: &str = "σ_(x^-1) = σ_x^-1";
pub const SIGMA_LOOP: &str = "σ_(((xy)y)^-1) σ_(xy) = σ_((xy)^-1) σ_x";
pub const SIGMA_SIMPLIFIED: &str = "σ_((xy)y) = σ_x";

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    /// The three semi cross product conditions.
    pub conditions: CheckReport<usize>,
    /// Present when `Aut(H)` is abelian with every element self-inverse.
    pub simplified: Option<Check<usize>>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.conditions.passed()
    }

    /// Whether the simplified form agrees with the raw conditions, when it
    /// applies.
    pub fn forms_agree(&self) -> Option<bool> {
        self.simplified
            .as_ref()
            .map(|s| s.passed == self.conditions.passed())
    }
}

/// `true` when `Aut(H)` is abelian and every automorphism is an involution.
pub fn aut_is_elementary_abelian_2(h: &FiniteGyrogroup) -> bool {
    let auts = automorphisms(h);
    auts.iter().all(|a| a.compose(a).is_identity())
        && auts
            .iter()
            .all(|a| auts.iter().all(|b| a.compose(b) == b.compose(a)))
}

pub fn validate_sigma(h: &FiniteGyrogroup, k: &FiniteGyrogroup, sigma: &SigmaMap) -> SigmaReport {
    let simplified_applies = aut_is_elementary_abelian_2(h);
    validate_with(h, k, sigma, simplified_applies)
}

fn validate_with(
    h: &FiniteGyrogroup,
    k: &FiniteGyrogroup,
    sigma: &SigmaMap,
    simplified_applies: bool,
) -> SigmaReport {
    let mut identity = Check::new(SIGMA_IDENTITY);
    identity.checked = 1;
    if !sigma.at(0).is_identity() {
        identity.fail(vec![0], format!("σ_e = {}", sigma.at(0)));
    }

    let mut inverse = Check::new(SIGMA_INVERSE);
    for x in k.elements() {
        inverse.checked += 1;
        if *sigma.at(k.inv(x)) != sigma.at(x).inverse() {
            inverse.fail(vec![x], format!("σ_(x^-1) = {}", sigma.at(k.inv(x))));
        }
    }

    let mut loop_cond = Check::new(SIGMA_LOOP);
    let mut simplified = Check::new(SIGMA_SIMPLIFIED);
    for x in k.elements() {
        for y in k.elements() {
            loop_cond.checked += 1;
            simplified.checked += 1;
            let xy = k.op(x, y);
            let xyy = k.op(xy, y);
            let lhs = sigma.at(k.inv(xyy)).compose(sigma.at(xy));
            let rhs = sigma.at(k.inv(xy)).compose(sigma.at(x));
            if lhs != rhs {
                loop_cond.fail(vec![x, y], format!("{lhs} ≠ {rhs}"));
            }
            if sigma.at(xyy) != sigma.at(x) {
                simplified.fail(
                    vec![x, y],
                    format!(
                        "(xy)y = {xyy}, σ_((xy)y) = {} but σ_x = {}",
                        sigma.at(xyy),
                        sigma.at(x)
                    ),
                );
            }
        }
    }
    if simplified_applies && !(identity.passed && inverse.passed) {
        // the simplified form presumes the first two conditions
        simplified.fail(vec![], "first two conditions fail".into());
    }

    SigmaReport {
        conditions: CheckReport {
            structure: format!("σ: {} → Aut({})", k.name(), h.name()),
            checks: vec![identity, inverse, loop_cond],
        },
        simplified: simplified_applies.then_some(simplified),
    }
}

/// The table of `H ⋈ K`; fails if σ violates the conditions.
pub fn semi_cross(
    h: &FiniteGyrogroup,
    k: &FiniteGyrogroup,
    sigma: &SigmaMap,
) -> Result<FiniteGyrogroup> {
    let report = validate_sigma(h, k, sigma);
    if let Some(failure) = report.conditions.first_failure() {
        return Err(GyroError::Precondition(format!("invalid σ: {failure}")));
    }
    semi_cross_unchecked(h, k, sigma)
}

/// Builds the product table without validating σ; the result is still
/// axiom-checked.
pub fn semi_cross_unchecked(
    h: &FiniteGyrogroup,
    k: &FiniteGyrogroup,
    sigma: &SigmaMap,
) -> Result<FiniteGyrogroup> {
    let p = PairIndex::new(h.order(), k.order());
    let table = CayleyTable::from_fn(p.size(), |a, b| {
        let ((ha, x), (hb, y)) = (p.decode(a), p.decode(b));
        p.encode(h.op(ha, sigma.apply(x, hb)), k.op(x, y))
    })?;
    FiniteGyrogroup::new(format!("{} ⋈ {}", h.name(), k.name()), table)
}

/// `gyr[(h,x),(k,y)](l,z) = (σ_{(xy)⁻¹}σ_xσ_y(l), gyr[x,y](z))`.
pub fn semi_cross_gyr(
    k: &FiniteGyrogroup,
    sigma: &SigmaMap,
    x: usize,
    y: usize,
    l: usize,
    z: usize,
) -> (usize, usize) {
    let w = k.inv(k.op(x, y));
    (
        sigma.apply(w, sigma.apply(x, sigma.apply(y, l))),
        k.gyr_apply(x, y, z),
    )
}

/// Exhaustive comparison of the gyrator of `g = H ⋈ K` with
/// [`semi_cross_gyr`].
pub fn semi_cross_gyr_check(
    g: &FiniteGyrogroup,
    h: &FiniteGyrogroup,
    k: &FiniteGyrogroup,
    sigma: &SigmaMap,
) -> Check<usize> {
    let p = PairIndex::new(h.order(), k.order());
    let mut check = Check::new("gyr matches the semi cross formula");
    for a in g.elements() {
        for b in g.elements() {
            let (x, y) = (p.decode(a).1, p.decode(b).1);
            for c in g.elements() {
                check.checked += 1;
                let (l, z) = p.decode(c);
                let (hl, kz) = semi_cross_gyr(k, sigma, x, y, l, z);
                let want = p.encode(hl, kz);
                let got = g.gyr_apply(a, b, c);
                if got != want {
                    check.fail(vec![a, b, c], format!("table gives {got}, formula {want}"));
                    return check;
                }
            }
        }
    }
    check
}

/// `H → H ⋈ K → K` with `i(h) = (h, e)`, `β(h, x) = x` and the canonical
/// section `t(x) = (e, x)`.
pub fn semi_cross_extension(
    h: &FiniteGyrogroup,
    k: &FiniteGyrogroup,
    sigma: &SigmaMap,
) -> Result<(Extension, Section)> {
    let g = semi_cross(h, k, sigma)?;
    let p = PairIndex::new(h.order(), k.order());
    let inclusion = h.elements().map(|a| p.encode(a, 0)).collect();
    let projection = g.elements().map(|a| p.decode(a).1).collect();
    let e = Extension::new(h.clone(), g, k.clone(), inclusion, projection)?;
    let t = Section::new(&e, k.elements().collect())?;
    Ok((e, t))
}

const SIGMA_GUARD: u128 = 1_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct SigmaEnumeration {
    /// `|Aut(H)|^|K|`.
    pub candidates: u128,
    /// Maps satisfying the three raw conditions.
    pub valid: Vec<SigmaMap>,
    /// Maps satisfying conditions (1), (2) and `σ_{(xy)y} = σ_x`, when
    /// `Aut(H)` is elementary abelian of exponent 2.
    pub simplified_count: Option<usize>,
}

/// Every map `K → Aut(H)` satisfying the semi cross product conditions.
pub fn enumerate_sigmas(h: &FiniteGyrogroup, k: &FiniteGyrogroup) -> Result<SigmaEnumeration> {
    let auts = automorphisms(h);
    let nk = k.order();
    let candidates = (auts.len() as u128)
        .checked_pow(nk as u32)
        .unwrap_or(u128::MAX);
    if candidates > SIGMA_GUARD {
        return Err(GyroError::SearchGuard {
            candidates,
            guard: SIGMA_GUARD,
        });
    }
    let simplified_applies = aut_is_elementary_abelian_2(h);
    let mut valid = Vec::new();
    let mut simplified = 0usize;
    let mut digits = vec![0usize; nk];
    for _ in 0..candidates {
        let sigma = SigmaMap(digits.iter().map(|&d| auts[d].clone()).collect());
        let report = validate_with(h, k, &sigma, simplified_applies);
        if report.passed() {
            valid.push(sigma.clone());
        }
        if let Some(s) = &report.simplified {
            if s.passed {
                simplified += 1;
            }
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < auts.len() {
                break;
            }
            *d = 0;
        }
    }
    valid.sort_by(|a, b| a.0.cmp(&b.0));
    valid.dedup();
    Ok(SigmaEnumeration {
        candidates,
        valid,
        simplified_count: simplified_applies.then_some(simplified),
    })
}

const SPLIT_GUARD: u128 = 10_000_000;

/// Searches for a section that is a gyrogroup homomorphism.
pub fn is_split(e: &Extension) -> Result<Option<Section>> {
    let (g, k) = (e.g(), e.k());
    let nk = k.order();
    let fibers: Vec<Vec<usize>> = (0..nk).map(|x| e.fiber(x)).collect();
    let count: u128 = fibers[1..].iter().map(|f| f.len() as u128).product();
    if count > SPLIT_GUARD {
        return Err(GyroError::SearchGuard {
            candidates: count,
            guard: SPLIT_GUARD,
        });
    }
    let mut t: Vec<Option<usize>> = vec![None; nk];
    t[0] = Some(0);
    if split_search(g, k, &fibers, &mut t) {
        let values = t.into_iter().map(|v| v.expect("complete")).collect();
        return Section::new(e, values).map(Some);
    }
    Ok(None)
}

fn split_search(
    g: &FiniteGyrogroup,
    k: &FiniteGyrogroup,
    fibers: &[Vec<usize>],
    t: &mut Vec<Option<usize>>,
) -> bool {
    let Some(x) = t.iter().position(Option::is_none) else {
        return true;
    };
    for &candidate in &fibers[x] {
        let mut trial = t.clone();
        trial[x] = Some(candidate);
        if close_section(g, k, &mut trial) && split_search(g, k, fibers, &mut trial) {
            *t = trial;
            return true;
        }
    }
    false
}

/// Extends a partial section by `t(xy) = t(x)t(y)`; `false` on conflict.
fn close_section(g: &FiniteGyrogroup, k: &FiniteGyrogroup, t: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        for x in k.elements() {
            let Some(tx) = t[x] else { continue };
            for y in k.elements() {
                let Some(ty) = t[y] else { continue };
                let v = g.op(tx, ty);
                match t[k.op(x, y)] {
                    Some(w) if w != v => return false,
                    Some(_) => {}
                    None => {
                        t[k.op(x, y)] = Some(v);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InternalReport {
    pub conditions: CheckReport<usize>,
    /// `σ_x(h) = (x ⊕ h) ⊕ x⁻¹`, in the indices of the induced `H` and `K`.
    pub sigma: Option<SigmaMap>,
    /// `(h, x) ↦ h ⊕ x` from `H ⋈ K` (pair layout) onto `G`.
    pub isomorphism: Option<Vec<usize>>,
}

impl InternalReport {
    pub fn passed(&self) -> bool {
        self.conditions.passed() && self.isomorphism.is_some()
    }
}

pub const INTERNAL_SUBOBJECTS: &str = "H is a subgroup and K a subgyrogroup";
pub const INTERNAL_PRODUCT: &str = "G = HK uniquely";
pub const INTERNAL_GYR: &str = "gyr[h, g] = I";
pub const INTERNAL_CONJUGATION: &str = "(g h) g^-1 in H";

/// Recognizes `G` as an internal semi cross product of subsets `H` and `K`.
pub fn internal_semi_cross_check(
    g: &FiniteGyrogroup,
    hs: &Subset,
    ks: &Subset,
) -> Result<InternalReport> {
    let n = g.order();
    let in_h = membership(hs, n);

    let mut subobjects = Check::new(INTERNAL_SUBOBJECTS);
    subobjects.absorb(is_subgroup(g, hs));
    for &a in ks.elements() {
        for &b in ks.elements() {
            subobjects.checked += 1;
            if !ks.contains(g.op(a, b)) {
                subobjects.fail(vec![a, b], "K not closed".into());
            }
        }
        if !ks.contains(g.inv(a)) {
            subobjects.fail(vec![a], "K not closed under inverses".into());
        }
    }

    let mut product = Check::new(INTERNAL_PRODUCT);
    let mut hit = vec![false; n];
    for &a in hs.elements() {
        for &x in ks.elements() {
            product.checked += 1;
            let v = g.op(a, x);
            if std::mem::replace(&mut hit[v], true) {
                product.fail(vec![a, x], format!("{v} has two factorizations"));
            }
        }
    }
    if let Some(v) = hit.iter().position(|&b| !b) {
        product.fail(vec![v], "not a product h ⊕ x".into());
    }

    let mut gyr = Check::new(INTERNAL_GYR);
    'gyr: for &a in hs.elements() {
        for b in g.elements() {
            gyr.checked += 1;
            if let Some(c) = g.elements().find(|&c| g.gyr_apply(a, b, c) != c) {
                gyr.fail(vec![a, b, c], "gyr[h,g] moves c".into());
                break 'gyr;
            }
        }
    }

    let mut conj = Check::new(INTERNAL_CONJUGATION);
    for x in g.elements() {
        for &a in hs.elements() {
            conj.checked += 1;
            let v = g.op(g.op(x, a), g.inv(x));
            if !in_h[v] {
                conj.fail(vec![x, a], format!("({x} ⊕ {a}) ⊕ {x}^-1 = {v} ∉ H"));
            }
        }
    }

    let conditions = CheckReport {
        structure: g.name().to_string(),
        checks: vec![subobjects, product, gyr, conj],
    };
    if !conditions.passed() {
        return Ok(InternalReport {
            conditions,
            sigma: None,
            isomorphism: None,
        });
    }

    let h = induced(g, hs, "H")?;
    let k = induced(g, ks, "K")?;
    if !is_group(&h, &Window::full(h.order())).is_group {
        return Err(GyroError::Inconsistent(
            "subgroup H is not associative".into(),
        ));
    }
    let h_index = |v: usize| {
        hs.elements()
            .binary_search(&v)
            .expect("conjugate lies in H")
    };
    let sigma = SigmaMap::from_fn(&h, &k, |xi| {
        let x = ks.elements()[xi];
        Perm::new(
            hs.elements()
                .iter()
                .map(|&a| h_index(g.op(g.op(x, a), g.inv(x))))
                .collect(),
        )
        .expect("conjugation is injective")
    })?;
    let p = PairIndex::new(h.order(), k.order());
    let phi: Vec<usize> = (0..p.size())
        .map(|i| {
            let (a, x) = p.decode(i);
            g.op(hs.elements()[a], ks.elements()[x])
        })
        .collect();
    let isomorphism = semi_cross(&h, &k, &sigma)
        .ok()
        .filter(|sc| is_isomorphism(sc, g, &phi))
        .map(|_| phi);
    Ok(InternalReport {
        conditions,
        sigma: Some(sigma),
        isomorphism,
    })
}

fn membership(s: &Subset, n: usize) -> Vec<bool> {
    let mut m = vec![false; n];
    for &x in s.elements() {
        m[x] = true;
    }
    m
}

/// `(x ⊕ y) ⊕ y`, row `x`, column `y`.
pub fn xyy_table(k: &FiniteGyrogroup) -> Vec<Vec<usize>> {
    k.elements()
        .map(|x| k.elements().map(|y| k.op(k.op(x, y), y)).collect())
        .collect()
}

/// Cells `(x, y, computed, reference)` where the `(x ⊕ y) ⊕ y` table differs
/// from a reference.
pub fn xyy_mismatches(
    k: &FiniteGyrogroup,
    reference: &[Vec<usize>],
) -> Vec<(usize, usize, usize, usize)> {
    let table = xyy_table(k);
    let mut out = Vec::new();
    for (x, row) in table.iter().enumerate() {
        for (y, &v) in row.iter().enumerate() {
            let r = reference[x][y];
            if v != r {
                out.push((x, y, v, r));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{self, cyclic, k8, negation, q8};
    use crate::k8::PUBLISHED_XYY;

    fn sign_map(h: &FiniteGyrogroup, k: &FiniteGyrogroup, at: &[usize]) -> SigmaMap {
        let f = negation(h);
        SigmaMap::from_fn(h, k, |x| {
            if at.contains(&x) {
                f.clone()
            } else {
                Perm::identity(h.order())
            }
        })
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        let (z3, k) = (cyclic(3), k8());
        let r = validate_sigma(&z3, &k, &SigmaMap::trivial(&z3, &k));
        assert!(r.passed());
        let r = validate_sigma(&z3, &k, &builtin::sigma_k8_at_seven(&z3));
        assert!(r.passed());
        assert_eq!(r.forms_agree(), Some(true));

        let r = validate_sigma(&z3, &k, &sign_map(&z3, &k, &[1]));
        assert!(!r.passed());
        let c = r.conditions.check(SIGMA_LOOP).unwrap();
        assert!(!c.passed);
        assert!(!r.simplified.unwrap().passed);
    }

    #[test]
    fn non_automorphism_rejected() {
        let z3 = cyclic(3);
        let bad = Perm::new(vec![1, 0, 2]).unwrap();
        assert!(matches!(
            SigmaMap::from_fn(&z3, &k8(), |_| bad.clone()),
            Err(GyroError::NotAutomorphism(_))
        ));
    }

    #[test]
    fn semi_cross_examples() {
        let (z3, k) = (cyclic(3), k8());
        let a = semi_cross(&z3, &k, &SigmaMap::trivial(&z3, &k)).unwrap();
        for i in 0..24 {
            for j in 0..24 {
                assert_eq!(a.op(i, j), ((i / 8 + j / 8) % 3) * 8 + k.op(i % 8, j % 8));
            }
        }
        let sigma = builtin::sigma_k8_at_seven(&z3);
        let b = semi_cross(&z3, &k, &sigma).unwrap();
        assert!(semi_cross_gyr_check(&b, &z3, &k, &sigma).passed);
        assert!(semi_cross(&z3, &k, &sign_map(&z3, &k, &[1])).is_err());
    }

    #[test]
    fn g24q_gyr_pairs() {
        let (z3, q) = (cyclic(3), q8());
        let sigma = builtin::sigma_q8_at_i(&z3);
        let g = semi_cross(&z3, &q, &sigma).unwrap();
        assert!(semi_cross_gyr_check(&g, &z3, &q, &sigma).passed);
        let mut nontrivial = Vec::new();
        for x in 0..8 {
            for y in 0..8 {
                if !g.gyr_is_trivial(x, y) {
                    assert_eq!(g.gyr(x, y).unwrap().as_slice()[8], 16, "H-part is f");
                    nontrivial.push((x, y));
                }
            }
        }
        let (i, j, k) = ([2, 3], [4, 5], [6, 7]);
        let mut expected = Vec::new();
        for x in 0..8 {
            for y in 0..8 {
                let pair = |a: [usize; 2], b: [usize; 2]| a.contains(&x) && b.contains(&y);
                if pair(i, j) || pair(i, k) || pair(j, i) || pair(k, i) || pair(j, k) || pair(k, j)
                {
                    expected.push((x, y));
                }
            }
        }
        assert_eq!(nontrivial, expected);
        assert_eq!(nontrivial.len(), 24);
    }

    #[test]
    fn semidirect_when_sigma_is_a_homomorphism() {
        // Q8 → Aut(Z3) with kernel ⟨i⟩: σ(±j) = σ(±k) = f
        let (z3, q) = (cyclic(3), q8());
        let sigma = sign_map(&z3, &q, &[4, 5, 6, 7]);
        assert!(validate_sigma(&z3, &q, &sigma).passed());
        let g = semi_cross(&z3, &q, &sigma).unwrap();
        assert!(is_group(&g, &Window::full(24)).is_group);
    }

    #[test]
    fn enumeration_counts() {
        let (z3, k, q) = (cyclic(3), k8(), q8());
        for kk in [&k, &q] {
            let e = enumerate_sigmas(&z3, kk).unwrap();
            assert_eq!(e.candidates, 256);
            assert_eq!(e.simplified_count, Some(e.valid.len()));
            assert!(e.valid.contains(&SigmaMap::trivial(&z3, kk)));
        }
        let ek = enumerate_sigmas(&z3, &k).unwrap();
        assert!(ek.valid.contains(&builtin::sigma_k8_at_seven(&z3)));
        let eq = enumerate_sigmas(&z3, &q).unwrap();
        assert!(eq.valid.contains(&builtin::sigma_q8_at_i(&z3)));
        assert_eq!(enumerate_sigmas(&cyclic(2), &k).unwrap().valid.len(), 1);
        assert!(matches!(
            enumerate_sigmas(&cyclic(5), &builtin::builtin_finite("G24a").unwrap()),
            Err(GyroError::SearchGuard { .. })
        ));
    }

    #[test]
    fn split_examples() {
        let (z3, k) = (cyclic(3), k8());
        let (e, t) = semi_cross_extension(&z3, &k, &builtin::sigma_k8_at_seven(&z3)).unwrap();
        let s = is_split(&e).unwrap().unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn internal_round_trip() {
        let g = builtin::builtin_finite("G24b").unwrap();
        let hs = Subset::new(&g, [0, 8, 16]).unwrap();
        let ks = Subset::new(&g, 0..8).unwrap();
        let r = internal_semi_cross_check(&g, &hs, &ks).unwrap();
        assert!(r.passed(), "{:?}", r.conditions.first_failure());
        assert_eq!(r.sigma.unwrap(), builtin::sigma_k8_at_seven(&cyclic(3)));

        let g = builtin::builtin_finite("G24a").unwrap();
        let r = internal_semi_cross_check(&g, &hs, &ks).unwrap();
        assert!(r.passed());
        assert!(r.sigma.unwrap().values().iter().all(Perm::is_identity));
    }

    #[test]
    fn xyy_examples() {
        let t = xyy_table(&k8());
        assert_eq!(t[7], vec![7; 8]);
        assert_eq!(t[2], vec![2, 5, 2, 2, 2, 2, 5, 2]);
        for (x, row) in t.iter().enumerate() {
            assert_eq!(row[0], x);
        }
        let published: Vec<Vec<usize>> = PUBLISHED_XYY.iter().map(|r| r.to_vec()).collect();
        assert_eq!(
            xyy_mismatches(&k8(), &published),
            vec![(2, 2, 2, 1), (7, 3, 7, 3)]
        );
        let q = xyy_table(&q8());
        assert_eq!(q[0], vec![0, 0, 1, 1, 1, 1, 1, 1]);
    }
}
