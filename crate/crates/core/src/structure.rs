//! Subgroups, normality, cosets, quotients and isomorphism search.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::axioms::Check;
use crate::error::{GyroError, Result};
use crate::gyrogroup::FiniteGyrogroup;
use crate::perm::Perm;
use crate::table::CayleyTable;

/// A sorted, duplicate-free subset of a gyrogroup's carrier containing 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subset {
    elements: Vec<usize>,
}

impl Subset {
    pub fn new(g: &FiniteGyrogroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= g.order()) {
            return Err(GyroError::OutOfRange {
                index: bad,
                size: g.order(),
            });
        }
        if !set.contains(&0) {
            return Err(GyroError::Precondition(
                "subset must contain the identity 0".into(),
            ));
        }
        Ok(Self {
            elements: set.into_iter().collect(),
        })
    }

    pub fn trivial() -> Self {
        Self { elements: vec![0] }
    }

    pub fn whole(g: &FiniteGyrogroup) -> Self {
        Self {
            elements: g.elements().collect(),
        }
    }

    /// Parses a comma separated list of indices, e.g. `0,8,16`.
    pub fn parse(g: &FiniteGyrogroup, text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            out.push(
                tok.parse::<usize>()
                    .map_err(|_| GyroError::Parse(format!("bad element index `{tok}`")))?,
            );
        }
        Self::new(g, out)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    fn membership(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.elements {
            m[x] = true;
        }
        m
    }
}

/// `true` iff `s` is closed, has inverses and `⊕` restricted to it is
/// associative. The returned check carries a witness on failure.
pub fn is_subgroup(g: &FiniteGyrogroup, s: &Subset) -> Check<usize> {
    let mut check = Check::new("subgroup");
    let inside = s.membership(g.order());
    for &a in s.elements() {
        check.checked += 1;
        if !inside[g.inv(a)] {
            check.fail(vec![a], "inverse leaves the subset".into());
            return check;
        }
        for &b in s.elements() {
            if !inside[g.op(a, b)] {
                check.fail(vec![a, b], "product leaves the subset".into());
                return check;
            }
        }
    }
    for &a in s.elements() {
        for &b in s.elements() {
            for &c in s.elements() {
                check.checked += 1;
                if g.op(a, g.op(b, c)) != g.op(g.op(a, b), c) {
                    check.fail(vec![a, b, c], "not associative on the subset".into());
                    return check;
                }
            }
        }
    }
    check
}

/// The three normality conditions, each with its own witness.
#[derive(Clone, Debug, Serialize)]
pub struct NormalityReport {
    /// gyr[g, h] = I for all g ∈ G, h ∈ H.
    pub gyr_trivial: Check<usize>,
    /// gyr[g, g'](H) ⊆ H for all g, g' ∈ G.
    pub gyr_invariant: Check<usize>,
    /// g ⊕ H = H ⊕ g for all g ∈ G.
    pub cosets_agree: Check<usize>,
}

impl NormalityReport {
    pub fn passed(&self) -> bool {
        self.gyr_trivial.passed && self.gyr_invariant.passed && self.cosets_agree.passed
    }

    pub fn checks(&self) -> [&Check<usize>; 3] {
        [&self.gyr_trivial, &self.gyr_invariant, &self.cosets_agree]
    }
}

pub fn is_normal(g: &FiniteGyrogroup, h: &Subset) -> Result<NormalityReport> {
    let sub = is_subgroup(g, h);
    if !sub.passed {
        return Err(GyroError::Precondition(format!(
            "subset is not a subgroup: {:?}",
            sub.witness
        )));
    }
    let n = g.order();
    let inside = h.membership(n);

    let mut gyr_trivial = Check::new("gyr[g,h] = I");
    'a: for x in 0..n {
        for &y in h.elements() {
            gyr_trivial.checked += 1;
            if let Some(c) = (0..n).find(|&c| g.gyr_apply(x, y, c) != c) {
                gyr_trivial.fail(vec![x, y, c], "gyr[g,h] moves c".into());
                break 'a;
            }
        }
    }

    let mut gyr_invariant = Check::new("gyr[g,g'](H) in H");
    'b: for x in 0..n {
        for y in 0..n {
            gyr_invariant.checked += 1;
            if let Some(&c) = h
                .elements()
                .iter()
                .find(|&&c| !inside[g.gyr_apply(x, y, c)])
            {
                gyr_invariant.fail(vec![x, y, c], "gyr[g,g'] maps c out of H".into());
                break 'b;
            }
        }
    }

    let mut cosets_agree = Check::new("g + H = H + g");
    for x in 0..n {
        cosets_agree.checked += 1;
        let left: BTreeSet<usize> = h.elements().iter().map(|&y| g.op(x, y)).collect();
        let right: BTreeSet<usize> = h.elements().iter().map(|&y| g.op(y, x)).collect();
        if left != right {
            cosets_agree.fail(vec![x], "left and right cosets differ".into());
            break;
        }
    }

    Ok(NormalityReport {
        gyr_trivial,
        gyr_invariant,
        cosets_agree,
    })
}

/// Left cosets `g ⊕ H`, ordered by least element (so `H` itself comes first).
pub fn cosets(g: &FiniteGyrogroup, h: &Subset) -> Result<Vec<Vec<usize>>> {
    let report = is_normal(g, h)?;
    if !report.passed() {
        return Err(GyroError::Precondition("subgroup is not normal".into()));
    }
    Ok(left_cosets(g, h))
}

fn left_cosets(g: &FiniteGyrogroup, h: &Subset) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut coset: Vec<usize> = h.elements().iter().map(|&y| g.op(x, y)).collect();
        coset.sort_unstable();
        for &c in &coset {
            assigned[c] = true;
        }
        out.push(coset);
    }
    out
}

#[derive(Clone, Debug)]
pub struct QuotientGyrogroup {
    pub cosets: Vec<Vec<usize>>,
    pub gyrogroup: FiniteGyrogroup,
    /// ν: G → G/H, coset index of each element.
    pub projection: Vec<usize>,
}

/// The factor gyrogroup `G/H` on left cosets.
pub fn quotient(g: &FiniteGyrogroup, h: &Subset) -> Result<QuotientGyrogroup> {
    let cosets = cosets(g, h)?;
    let mut projection = vec![0; g.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            projection[x] = i;
        }
    }
    let m = cosets.len();
    let mut rows = vec![vec![0; m]; m];
    for (i, ci) in cosets.iter().enumerate() {
        for (j, cj) in cosets.iter().enumerate() {
            let value = projection[g.op(ci[0], cj[0])];
            for &a in ci {
                for &b in cj {
                    if projection[g.op(a, b)] != value {
                        return Err(GyroError::Inconsistent(format!(
                            "coset product not well defined at representatives {a}, {b}"
                        )));
                    }
                }
            }
            rows[i][j] = value;
        }
    }
    let name = format!("{}/H", g.name());
    let gyrogroup = FiniteGyrogroup::new(name, CayleyTable::from_rows(rows)?)?;
    Ok(QuotientGyrogroup {
        cosets,
        gyrogroup,
        projection,
    })
}

/// Per-element isomorphism invariants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Profile {
    order: usize,
    trivial_gyr_left: usize,
    trivial_gyr_right: usize,
    square_order: usize,
    commuting: usize,
}

fn profiles(g: &FiniteGyrogroup) -> Vec<Profile> {
    let n = g.order();
    let trivial: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| g.gyr_is_trivial(a, b)).collect())
        .collect();
    (0..n)
        .map(|a| Profile {
            order: g.element_order(a),
            trivial_gyr_left: (0..n).filter(|&b| trivial[a][b]).count(),
            trivial_gyr_right: (0..n).filter(|&b| trivial[b][a]).count(),
            square_order: g.element_order(g.op(a, a)),
            commuting: (0..n).filter(|&b| g.op(a, b) == g.op(b, a)).count(),
        })
        .collect()
}

/// Greedy generating sequence: each element is the least one outside the
/// closure of the previous ones.
fn generators(g: &FiniteGyrogroup) -> Vec<usize> {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut closure = vec![0];
    let mut gens = Vec::new();
    while let Some(x) = (0..n).find(|&x| !inside[x]) {
        gens.push(x);
        inside[x] = true;
        closure.push(x);
        let mut i = 0;
        while i < closure.len() {
            for j in 0..=i {
                for (p, q) in [(closure[i], closure[j]), (closure[j], closure[i])] {
                    let r = g.op(p, q);
                    if !inside[r] {
                        inside[r] = true;
                        closure.push(r);
                    }
                }
            }
            i += 1;
        }
    }
    gens
}

/// Extends a partial map by closing under products; `false` on conflict.
fn close_map(g1: &FiniteGyrogroup, g2: &FiniteGyrogroup, map: &mut [Option<usize>]) -> bool {
    let n = g1.order();
    let mut used = vec![false; n];
    let mut domain = Vec::new();
    for (x, image) in map.iter().enumerate() {
        if let Some(y) = *image {
            if std::mem::replace(&mut used[y], true) {
                return false;
            }
            domain.push(x);
        }
    }
    let mut i = 0;
    while i < domain.len() {
        for j in 0..=i {
            for (a, b) in [(domain[i], domain[j]), (domain[j], domain[i])] {
                let c = g1.op(a, b);
                let image = g2.op(map[a].unwrap(), map[b].unwrap());
                match map[c] {
                    Some(existing) if existing != image => return false,
                    Some(_) => {}
                    None => {
                        if std::mem::replace(&mut used[image], true) {
                            return false;
                        }
                        map[c] = Some(image);
                        domain.push(c);
                    }
                }
            }
        }
        i += 1;
    }
    true
}

fn search(g1: &FiniteGyrogroup, g2: &FiniteGyrogroup, find_all: bool) -> Vec<Vec<usize>> {
    let n = g1.order();
    if n != g2.order() {
        return Vec::new();
    }
    let p1 = profiles(g1);
    let p2 = profiles(g2);
    let mut sorted1 = p1.clone();
    let mut sorted2 = p2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 || p1[0] != p2[0] {
        return Vec::new();
    }
    let gens = generators(g1);
    let mut start = vec![None; n];
    start[0] = Some(0);
    let mut out = Vec::new();
    backtrack(g1, g2, &p1, &p2, &gens, 0, start, find_all, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    g1: &FiniteGyrogroup,
    g2: &FiniteGyrogroup,
    p1: &[Profile],
    p2: &[Profile],
    gens: &[usize],
    depth: usize,
    map: Vec<Option<usize>>,
    find_all: bool,
    out: &mut Vec<Vec<usize>>,
) {
    if !find_all && !out.is_empty() {
        return;
    }
    if depth == gens.len() {
        if map.iter().all(Option::is_some) {
            let phi: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
            if is_isomorphism(g1, g2, &phi) {
                out.push(phi);
            }
        }
        return;
    }
    let x = gens[depth];
    if let Some(y) = map[x] {
        // already forced by closure
        let _ = y;
        backtrack(g1, g2, p1, p2, gens, depth + 1, map, find_all, out);
        return;
    }
    let used: Vec<bool> = {
        let mut u = vec![false; g2.order()];
        for y in map.iter().flatten() {
            u[*y] = true;
        }
        u
    };
    for y in 0..g2.order() {
        if used[y] || p1[x] != p2[y] {
            continue;
        }
        let mut next = map.clone();
        next[x] = Some(y);
        if close_map(g1, g2, &mut next) {
            backtrack(g1, g2, p1, p2, gens, depth + 1, next, find_all, out);
        }
    }
}

/// `true` iff `phi` is a bijection preserving `⊕`.
pub fn is_isomorphism(g1: &FiniteGyrogroup, g2: &FiniteGyrogroup, phi: &[usize]) -> bool {
    let n = g1.order();
    phi.len() == n
        && n == g2.order()
        && Perm::is_bijection(phi)
        && (0..n).all(|a| (0..n).all(|b| phi[g1.op(a, b)] == g2.op(phi[a], phi[b])))
}

/// Finds an isomorphism `G1 → G2`, if any.
pub fn find_isomorphism(g1: &FiniteGyrogroup, g2: &FiniteGyrogroup) -> Option<Vec<usize>> {
    search(g1, g2, false).into_iter().next()
}

pub fn all_isomorphisms(g1: &FiniteGyrogroup, g2: &FiniteGyrogroup) -> Vec<Vec<usize>> {
    search(g1, g2, true)
}

/// `Aut(G)`, sorted with the identity first.
pub fn automorphisms(g: &FiniteGyrogroup) -> Vec<Perm> {
    let mut auts: Vec<Perm> = all_isomorphisms(g, g)
        .into_iter()
        .map(|v| Perm::new(v).expect("isomorphisms are bijections"))
        .collect();
    auts.sort();
    auts
}

/// Sub-table of `g` restricted to a closed subset, relabelled `0..|S|` in
/// sorted order.
pub fn induced(g: &FiniteGyrogroup, s: &Subset, name: &str) -> Result<FiniteGyrogroup> {
    let index = |x: usize| s.elements().binary_search(&x);
    let mut rows = Vec::with_capacity(s.len());
    for &a in s.elements() {
        let mut row = Vec::with_capacity(s.len());
        for &b in s.elements() {
            row.push(index(g.op(a, b)).map_err(|_| {
                GyroError::Precondition(format!("subset not closed: {a} ⊕ {b} leaves it"))
            })?);
        }
        rows.push(row);
    }
    FiniteGyrogroup::new(name, CayleyTable::from_rows(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{is_group, Window};
    use crate::builtin;

    #[test]
    fn subgroup_examples() {
        let k8 = builtin::k8();
        assert!(is_subgroup(&k8, &Subset::trivial()).passed);
        let g24b = builtin::builtin_finite("G24b").unwrap();
        let h = Subset::new(&g24b, [0, 8, 16]).unwrap();
        assert!(is_subgroup(&g24b, &h).passed);
        // {0,1} in K8 is closed (1 is self-inverse), hence a subgroup
        let s = Subset::new(&k8, [0, 1]).unwrap();
        assert!(is_subgroup(&k8, &s).passed);
        // {0,1,2} is not closed: 1 ⊕ 2 = 3
        let s = Subset::new(&k8, [0, 1, 2]).unwrap();
        let c = is_subgroup(&k8, &s);
        assert!(!c.passed);
        assert!(c.witness.is_some());
    }

    #[test]
    fn subset_errors() {
        let k8 = builtin::k8();
        assert!(matches!(
            Subset::new(&k8, [0, 9]),
            Err(GyroError::OutOfRange { index: 9, .. })
        ));
        assert!(Subset::new(&k8, [1]).is_err());
        assert_eq!(Subset::parse(&k8, "0, 3,1").unwrap().elements(), &[0, 1, 3]);
    }

    #[test]
    fn normality_and_cosets() {
        let g = builtin::builtin_finite("G24b").unwrap();
        assert!(is_normal(&g, &Subset::trivial()).unwrap().passed());
        // G itself is a normal subgroup only when G is a group
        assert!(is_normal(&g, &Subset::whole(&g)).is_err());
        let q8 = builtin::q8();
        assert!(is_normal(&q8, &Subset::whole(&q8)).unwrap().passed());
        assert_eq!(cosets(&q8, &Subset::whole(&q8)).unwrap().len(), 1);
        let h = Subset::new(&g, [0, 8, 16]).unwrap();
        assert!(is_normal(&g, &h).unwrap().passed());
        let cs = cosets(&g, &h).unwrap();
        assert_eq!(cs.len(), 8);
        assert!(cs.iter().all(|c| c.len() == 3));
        assert_eq!(cosets(&g, &Subset::trivial()).unwrap().len(), 24);
    }

    #[test]
    fn non_normal_subgroup_fails_with_witness() {
        // brute force over cyclic subgroups of G24q
        let g = builtin::builtin_finite("G24q").unwrap();
        let failing = g.elements().skip(1).find_map(|x| {
            let mut powers = vec![0, x];
            let mut p = x;
            while g.op(x, p) != 0 {
                p = g.op(x, p);
                powers.push(p);
            }
            let s = Subset::new(&g, powers).ok()?;
            if !is_subgroup(&g, &s).passed {
                return None;
            }
            let r = is_normal(&g, &s).ok()?;
            (!r.passed()).then_some(r)
        });
        let r = failing.expect("some cyclic subgroup is not normal");
        assert!(r.checks().iter().any(|c| !c.passed && c.witness.is_some()));
    }

    #[test]
    fn quotient_examples() {
        let g24b = builtin::builtin_finite("G24b").unwrap();
        let h = Subset::new(&g24b, [0, 8, 16]).unwrap();
        let q = quotient(&g24b, &h).unwrap();
        assert_eq!(q.gyrogroup.order(), 8);
        assert!(find_isomorphism(&q.gyrogroup, &builtin::k8()).is_some());
        // ν is a homomorphism
        for a in g24b.elements() {
            for b in g24b.elements() {
                assert_eq!(
                    q.projection[g24b.op(a, b)],
                    q.gyrogroup.op(q.projection[a], q.projection[b])
                );
            }
        }

        let g24q = builtin::builtin_finite("G24q").unwrap();
        let h = Subset::new(&g24q, [0, 8, 16]).unwrap();
        let q = quotient(&g24q, &h).unwrap();
        assert!(find_isomorphism(&q.gyrogroup, &builtin::q8()).is_some());
        assert!(is_group(&q.gyrogroup, &Window::full(8)).is_group);

        let k8 = builtin::k8();
        let q = quotient(&k8, &Subset::trivial()).unwrap();
        assert!(find_isomorphism(&q.gyrogroup, &k8).is_some());
    }

    #[test]
    fn isomorphism_examples() {
        let g = builtin::builtin_finite("G24b").unwrap();
        let id = find_isomorphism(&g, &g).unwrap();
        assert!(is_isomorphism(&g, &g, &id));

        let q8 = builtin::q8();
        let k8 = builtin::k8();
        assert!(find_isomorphism(&q8, &k8).is_none());

        let z4 = builtin::cyclic(4);
        assert_eq!(automorphisms(&z4).len(), 2);
        assert_eq!(automorphisms(&builtin::cyclic(3)).len(), 2);
        assert_eq!(automorphisms(&builtin::cyclic(2)).len(), 1);
        assert_eq!(automorphisms(&q8).len(), 24);
    }

    #[test]
    fn isomorphism_inverts() {
        let k8 = builtin::k8();
        let relabelled = FiniteGyrogroup::new(
            "K8'",
            k8.table().relabel(&[0, 2, 1, 4, 3, 6, 5, 7]).unwrap(),
        )
        .unwrap();
        let phi = find_isomorphism(&k8, &relabelled).unwrap();
        let inv = Perm::new(phi).unwrap().inverse();
        assert!(is_isomorphism(&relabelled, &k8, inv.as_slice()));
    }
}
