//! Morphisms of extensions `(λ, μ, ν)` and of factor systems `(ν, g, λ)`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::axioms::{Check, CheckReport};
use crate::error::{GyroError, Result};
use crate::extension::{extract_factor_system, Chart, Extension, Section};
use crate::factor::FactorSystem;
use crate::gyrogroup::FiniteGyrogroup;

/// Value tables of `λ: H₁ → H₂`, `μ: G₁ → G₂`, `ν: K₁ → K₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionMorphism {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
}

impl ExtensionMorphism {
    pub fn identity(e: &Extension) -> Self {
        Self {
            lambda: e.h().elements().collect(),
            mu: e.g().elements().collect(),
            nu: e.k().elements().collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ExtensionMorphism) -> Result<Self> {
        Ok(Self {
            lambda: compose_maps(&self.lambda, &next.lambda)?,
            mu: compose_maps(&self.mu, &next.mu)?,
            nu: compose_maps(&self.nu, &next.nu)?,
        })
    }
}

fn compose_maps(first: &[usize], second: &[usize]) -> Result<Vec<usize>> {
    first
        .iter()
        .map(|&v| {
            second
                .get(v)
                .copied()
                .ok_or(GyroError::DomainMismatch(format!(
                    "value {v} outside a domain of size {}",
                    second.len()
                )))
        })
        .collect()
}

fn check_map(name: &str, map: &[usize], from: usize, to: usize) -> Result<()> {
    if map.len() != from {
        return Err(GyroError::DomainMismatch(format!(
            "{name} has {} values, its domain has {from} elements",
            map.len()
        )));
    }
    if let Some(&v) = map.iter().find(|&&v| v >= to) {
        return Err(GyroError::DomainMismatch(format!(
            "{name} takes value {v} outside a codomain of size {to}"
        )));
    }
    Ok(())
}

fn hom_check(
    name: &'static str,
    from: &FiniteGyrogroup,
    to: &FiniteGyrogroup,
    map: &[usize],
) -> Check<usize> {
    let mut check = Check::new(name);
    for a in from.elements() {
        for b in from.elements() {
            check.checked += 1;
            if map[from.op(a, b)] != to.op(map[a], map[b]) {
                check.fail(vec![a, b], format!("image of {a} ⊕ {b} differs"));
                return check;
            }
        }
    }
    check
}

pub const LAMBDA_HOM: &str = "λ is a homomorphism";
pub const MU_HOM: &str = "μ is a homomorphism";
pub const NU_HOM: &str = "ν is a homomorphism";
pub const MU_GYR: &str = "μ(gyr[a,b]c) = gyr[μa,μb]μc";
pub const LEFT_SQUARE: &str = "μ i1 = i2 λ";
pub const RIGHT_SQUARE: &str = "β2 μ = ν β1";

pub fn verify_extension_morphism(
    m: &ExtensionMorphism,
    e1: &Extension,
    e2: &Extension,
) -> Result<CheckReport<usize>> {
    check_map("λ", &m.lambda, e1.h().order(), e2.h().order())?;
    check_map("μ", &m.mu, e1.g().order(), e2.g().order())?;
    check_map("ν", &m.nu, e1.k().order(), e2.k().order())?;
    let (g1, g2) = (e1.g(), e2.g());

    let mut gyr = Check::new(MU_GYR);
    'outer: for a in g1.elements() {
        for b in g1.elements() {
            for c in g1.elements() {
                gyr.checked += 1;
                let lhs = m.mu[g1.gyr_apply(a, b, c)];
                let rhs = g2.gyr_apply(m.mu[a], m.mu[b], m.mu[c]);
                if lhs != rhs {
                    gyr.fail(vec![a, b, c], format!("{lhs} ≠ {rhs}"));
                    break 'outer;
                }
            }
        }
    }

    let mut left = Check::new(LEFT_SQUARE);
    for h in e1.h().elements() {
        left.checked += 1;
        if m.mu[e1.include(h)] != e2.include(m.lambda[h]) {
            left.fail(vec![h], "square does not commute".into());
        }
    }
    let mut right = Check::new(RIGHT_SQUARE);
    for a in g1.elements() {
        right.checked += 1;
        if e2.project(m.mu[a]) != m.nu[e1.project(a)] {
            right.fail(vec![a], "square does not commute".into());
        }
    }

    Ok(CheckReport {
        structure: format!("{} → {}", g1.name(), g2.name()),
        checks: vec![
            hom_check(LAMBDA_HOM, e1.h(), e2.h(), &m.lambda),
            hom_check(MU_HOM, g1, g2, &m.mu),
            hom_check(NU_HOM, e1.k(), e2.k(), &m.nu),
            gyr,
            left,
            right,
        ],
    })
}

/// `(ν, g, λ)` with `ν: K₁ → K₂`, `g: K₁ → H₂`, `λ: H₁ → H₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FsMorphism {
    pub nu: Vec<usize>,
    pub g: Vec<usize>,
    pub lambda: Vec<usize>,
}

impl FsMorphism {
    pub fn identity(fs: &FactorSystem) -> Self {
        Self {
            nu: fs.k().elements().collect(),
            g: vec![0; fs.k().order()],
            lambda: fs.h().elements().collect(),
        }
    }
}

pub const GFAC_NORMALIZED: &str = "(1) g(e) = e";
pub const GFAC_COCYCLE: &str = "(2) λ(f1(x,y)) g(xy) = g(x) σ2_ν(x)(g(y)) f2(ν(x),ν(y))";
pub const GFAC_SIGMA: &str = "(3) λ(σ1_x(h)) = g(x) σ2_ν(x)(λ(h)) g(x)^-1";
pub const GFAC_F: &str = "(4) F2_(νx,νy)(λ(l) g(z), ν(z)) = λ(F1_(x,y)(l,z)) g(gyr[x,y]z)";

/// The four conditions with caller-supplied names.
fn gfac_checks(
    m: &FsMorphism,
    fs1: &FactorSystem,
    fs2: &FactorSystem,
    names: [&'static str; 4],
) -> Vec<Check<usize>> {
    let (h2, k1) = (fs2.h(), fs1.k());
    let (nu, g, lambda) = (&m.nu, &m.g, &m.lambda);

    let mut c1 = Check::new(names[0]);
    c1.checked = 1;
    if g[0] != 0 {
        c1.fail(vec![0], format!("g(e) = {}", g[0]));
    }

    let mut c2 = Check::new(names[1]);
    for x in k1.elements() {
        for y in k1.elements() {
            c2.checked += 1;
            let lhs = h2.op(lambda[fs1.f_at(x, y)], g[k1.op(x, y)]);
            let rhs = h2.op(
                h2.op(g[x], fs2.sigma(nu[x]).apply(g[y])),
                fs2.f_at(nu[x], nu[y]),
            );
            if lhs != rhs {
                c2.fail(vec![x, y], format!("{lhs} ≠ {rhs}"));
            }
        }
    }

    let mut c3 = Check::new(names[2]);
    for x in k1.elements() {
        for h in fs1.h().elements() {
            c3.checked += 1;
            let lhs = lambda[fs1.sigma(x).apply(h)];
            let rhs = h2.op(h2.op(g[x], fs2.sigma(nu[x]).apply(lambda[h])), h2.inv(g[x]));
            if lhs != rhs {
                c3.fail(vec![x, h], format!("{lhs} ≠ {rhs}"));
            }
        }
    }

    let mut c4 = Check::new(names[3]);
    for x in k1.elements() {
        for y in k1.elements() {
            for l in fs1.h().elements() {
                for z in k1.elements() {
                    c4.checked += 1;
                    let lhs = fs2.big_f_at(nu[x], nu[y], h2.op(lambda[l], g[z]), nu[z]);
                    let rhs = h2.op(lambda[fs1.big_f_at(x, y, l, z)], g[k1.gyr_apply(x, y, z)]);
                    if lhs != rhs {
                        c4.fail(vec![x, y, l, z], format!("{lhs} ≠ {rhs}"));
                    }
                }
            }
        }
    }
    vec![c1, c2, c3, c4]
}

pub fn verify_fs_morphism(
    m: &FsMorphism,
    fs1: &FactorSystem,
    fs2: &FactorSystem,
) -> Result<CheckReport<usize>> {
    check_map("ν", &m.nu, fs1.k().order(), fs2.k().order())?;
    check_map("g", &m.g, fs1.k().order(), fs2.h().order())?;
    check_map("λ", &m.lambda, fs1.h().order(), fs2.h().order())?;
    let mut checks = vec![
        hom_check(NU_HOM, fs1.k(), fs2.k(), &m.nu),
        hom_check(LAMBDA_HOM, fs1.h(), fs2.h(), &m.lambda),
    ];
    checks.extend(gfac_checks(
        m,
        fs1,
        fs2,
        [GFAC_NORMALIZED, GFAC_COCYCLE, GFAC_SIGMA, GFAC_F],
    ));
    Ok(CheckReport {
        structure: format!("{} → {}", fs1.k().name(), fs2.k().name()),
        checks,
    })
}

pub const EQ_G_NORMALIZED: &str = "g(e) = e";
pub const EQ_F_TRANSPORT: &str = "λ(f1(x,y)) g(xy) = g(x) σ2_ν(x)(g(y)) f2(ν(x),ν(y))";
pub const EQ_SIGMA_TRANSPORT: &str = "λ(σ1_x(h)) = g(x) σ2_ν(x)(λ(h)) g(x)^-1";
pub const EQ_BIG_F_TRANSPORT: &str = "F2_(νx,νy)(λ(l) g(z), ν(z)) = λ(F1_(x,y)(l,z)) g(gyr[x,y]z)";

/// The factor-system morphism of `m` relative to sections `t1`, `t2`:
/// `μ(t₁(x)) = g(x) t₂(ν(x))`.
pub fn induce_fs_morphism(
    m: &ExtensionMorphism,
    e1: &Extension,
    t1: &Section,
    e2: &Extension,
    t2: &Section,
) -> Result<(FsMorphism, CheckReport<usize>)> {
    let report = verify_extension_morphism(m, e1, e2)?;
    if let Some(failure) = report.first_failure() {
        return Err(GyroError::Precondition(format!(
            "not an extension morphism: {failure}"
        )));
    }
    let fs1 = extract_factor_system(e1, t1)?;
    let fs2 = extract_factor_system(e2, t2)?;
    let chart = Chart::new(e2, t2)?;
    let mut g = Vec::with_capacity(e1.k().order());
    for x in e1.k().elements() {
        let (h, y) = chart.coords(m.mu[t1.at(x)]);
        if y != m.nu[x] {
            return Err(GyroError::Inconsistent(format!(
                "μ(t1({x})) lies over {y}, not ν({x})"
            )));
        }
        g.push(h);
    }
    let fm = FsMorphism {
        nu: m.nu.clone(),
        g,
        lambda: m.lambda.clone(),
    };
    let checks = gfac_checks(
        &fm,
        &fs1,
        &fs2,
        [
            EQ_G_NORMALIZED,
            EQ_F_TRANSPORT,
            EQ_SIGMA_TRANSPORT,
            EQ_BIG_F_TRANSPORT,
        ],
    );
    let report = CheckReport {
        structure: format!("{} → {}", e1.g().name(), e2.g().name()),
        checks,
    };
    if let Some(failure) = report.first_failure() {
        return Err(GyroError::Inconsistent(format!(
            "induced morphism: {failure}"
        )));
    }
    Ok((fm, report))
}

/// `m1` followed by `m2`: `(ν₂ν₁, x ↦ λ₂(g₁(x)) g₂(ν₁(x)), λ₂λ₁)`. `h3` is
/// the codomain group of `λ₂`.
pub fn compose_fs_morphisms(
    m1: &FsMorphism,
    m2: &FsMorphism,
    h3: &FiniteGyrogroup,
) -> Result<FsMorphism> {
    let nu = compose_maps(&m1.nu, &m2.nu)?;
    let lambda = compose_maps(&m1.lambda, &m2.lambda)?;
    let n3 = h3.order();
    let mut g = Vec::with_capacity(m1.g.len());
    for (x, &gx) in m1.g.iter().enumerate() {
        let a = *m2
            .lambda
            .get(gx)
            .ok_or_else(|| GyroError::DomainMismatch("g1 outside H2".into()))?;
        let b = *m2
            .g
            .get(m1.nu[x])
            .ok_or_else(|| GyroError::DomainMismatch("ν1 outside K2".into()))?;
        if a >= n3 || b >= n3 {
            return Err(GyroError::DomainMismatch("value outside H3".into()));
        }
        g.push(h3.op(a, b));
    }
    Ok(FsMorphism { nu, g, lambda })
}

pub const SC_COCYCLE: &str = "f_s(x,y) g(xy) = g(x) σt_x(g(y)) f_t(x,y)";
pub const SC_SIGMA: &str = "σs_x(h) = g(x) σt_x(h) g(x)^-1";
pub const SC_F: &str = "Ft_(x,y)(l g(z), z) = Fs_(x,y)(l,z) g(gyr[x,y]z)";

#[derive(Clone, Debug, Serialize)]
pub struct SectionChange {
    /// `s(x) = g(x) t(x)`.
    pub g: Vec<usize>,
    pub report: CheckReport<usize>,
}

/// Compares two sections of a group-gyro extension.
pub fn section_change(e: &Extension, s: &Section, t: &Section) -> Result<SectionChange> {
    let chart = Chart::new(e, t)?;
    let g: Vec<usize> = e.k().elements().map(|x| chart.coords(s.at(x)).0).collect();
    let fs_s = extract_factor_system(e, s)?;
    let fs_t = extract_factor_system(e, t)?;
    let m = FsMorphism {
        nu: e.k().elements().collect(),
        g: g.clone(),
        lambda: e.h().elements().collect(),
    };
    let checks = gfac_checks(
        &m,
        &fs_s,
        &fs_t,
        [EQ_G_NORMALIZED, SC_COCYCLE, SC_SIGMA, SC_F],
    );
    Ok(SectionChange {
        g,
        report: CheckReport {
            structure: e.g().name().to_string(),
            checks,
        },
    })
}

/// A uniformly random section from a seeded generator.
pub fn random_section(e: &Extension, seed: u64) -> Section {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_section_with(e, &mut rng)
}

pub fn random_section_with(e: &Extension, rng: &mut ChaCha8Rng) -> Section {
    let values = e
        .k()
        .elements()
        .map(|x| {
            if x == 0 {
                0
            } else {
                *e.fiber(x).choose(rng).expect("fibers are non-empty")
            }
        })
        .collect();
    Section::new(e, values).expect("fiber choices form a section")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{self, cyclic, k8, negation};
    use crate::factor::{build_extension, from_sigma};
    use crate::product::PairIndex;

    fn g24b() -> (Extension, Section) {
        builtin::builtin_extension("G24b").unwrap()
    }

    #[test]
    fn identity_morphisms() {
        let (e, t) = g24b();
        let id = ExtensionMorphism::identity(&e);
        assert!(verify_extension_morphism(&id, &e, &e).unwrap().passed());
        let (fm, _) = induce_fs_morphism(&id, &e, &t, &e, &t).unwrap();
        let fs = extract_factor_system(&e, &t).unwrap();
        assert_eq!(fm, FsMorphism::identity(&fs));
        assert!(verify_fs_morphism(&fm, &fs, &fs).unwrap().passed());
    }

    #[test]
    fn identity_with_different_sections() {
        let (e, t) = g24b();
        let mut v: Vec<usize> = (0..8).collect();
        v[4] = 8 + 4;
        let s = Section::new(&e, v).unwrap();
        let id = ExtensionMorphism::identity(&e);
        let (fm, _) = induce_fs_morphism(&id, &e, &s, &e, &t).unwrap();
        assert_eq!(fm.g[4], 1);
        assert!(fm.g.iter().enumerate().all(|(x, &g)| x == 4 || g == 0));
    }

    #[test]
    fn coordinate_map_between_builds() {
        let z3 = cyclic(3);
        let sigma = builtin::sigma_k8_at_seven(&z3);
        let built = build_extension(&from_sigma(z3, k8(), &sigma).unwrap()).unwrap();
        let (e, t) = g24b();
        let id = ExtensionMorphism::identity(&e);
        assert!(verify_extension_morphism(&id, &built.extension, &e)
            .unwrap()
            .passed());
        let (fm, _) = induce_fs_morphism(&id, &built.extension, &built.section, &e, &t).unwrap();
        assert!(fm.g.iter().all(|&g| g == 0));
    }

    #[test]
    fn mutated_lambda_fails() {
        let (e, _) = g24b();
        let mut m = ExtensionMorphism::identity(&e);
        m.lambda = vec![0, 2, 2];
        let r = verify_extension_morphism(&m, &e, &e).unwrap();
        assert!(!r.check(LAMBDA_HOM).unwrap().passed);
        m.lambda = vec![0, 1];
        assert!(matches!(
            verify_extension_morphism(&m, &e, &e),
            Err(GyroError::DomainMismatch(_))
        ));
    }

    #[test]
    fn perturbed_g_fails() {
        let (e, t) = g24b();
        let fs = extract_factor_system(&e, &t).unwrap();
        let mut m = FsMorphism::identity(&fs);
        m.g[3] = 1;
        assert!(!verify_fs_morphism(&m, &fs, &fs).unwrap().passed());
    }

    #[test]
    fn composition_with_identity() {
        let (e, t) = g24b();
        let p = PairIndex::new(3, 8);
        let f = negation(&cyclic(3));
        let m = ExtensionMorphism {
            lambda: f.as_slice().to_vec(),
            mu: (0..24)
                .map(|a| {
                    let (h, x) = p.decode(a);
                    p.encode(f.apply(h), x)
                })
                .collect(),
            nu: (0..8).collect(),
        };
        let s = random_section(&e, 7);
        let (fm, _) = induce_fs_morphism(&m, &e, &t, &e, &s).unwrap();
        let fs = extract_factor_system(&e, &t).unwrap();
        let id = FsMorphism::identity(&fs);
        assert_eq!(compose_fs_morphisms(&id, &fm, e.h()).unwrap(), fm);
        assert_eq!(
            compose_fs_morphisms(
                &fm,
                &FsMorphism::identity(&extract_factor_system(&e, &s).unwrap()),
                e.h()
            )
            .unwrap(),
            fm
        );
    }

    #[test]
    fn section_change_examples() {
        let (e, t) = g24b();
        let same = section_change(&e, &t, &t).unwrap();
        assert!(same.g.iter().all(|&g| g == 0));
        assert!(same.report.passed());
        let mut v: Vec<usize> = (0..8).collect();
        v[2] = 16 + 2;
        let s = Section::new(&e, v).unwrap();
        let sc = section_change(&e, &s, &t).unwrap();
        assert_eq!(sc.g[2], 2);
        assert!(sc.report.passed(), "{:?}", sc.report.first_failure());
    }

    #[test]
    fn random_sections_are_reproducible() {
        let (e, _) = g24b();
        assert_eq!(random_section(&e, 42), random_section(&e, 42));
    }
}
