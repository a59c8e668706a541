//! Named structures: cyclic groups, `Q8`, `K8`, the integers and the semi
//! cross products built from them.
//!
//! | name | structure |
//! |------|-----------|
//! | `Zn` | cyclic group of order `n` |
//! | `Z` | the integers (rule-backed) |
//! | `Q8` | quaternions, indices `1, -1, i, -i, j, -j, k, -k` |
//! | `K8` | the order-8 gyrogroup of [`crate::k8`] |
//! | `G24a`, `G32a` | `Z3 ⋈ K8`, `Z4 ⋈ K8` with trivial σ |
//! | `G24b`, `G32b` | same with `σ(7) = -I` |
//! | `G24q`, `G32q` | `Z3 ⋈ Q8`, `Z4 ⋈ Q8` with `σ(±i) = -I` |
//! | `Ginf_a`, `Ginf_b`, `Ginf_q` | the same three over `ℤ` |
//!
//! Semi cross products use the pair layout of [`crate::product::PairIndex`].

use crate::error::{GyroError, Result};
use crate::extension::{Extension, Section};
use crate::gyrogroup::FiniteGyrogroup;
use crate::k8;
use crate::perm::Perm;
use crate::rule::RuleGyrogroup;
use crate::semi_cross::{semi_cross, semi_cross_extension, SigmaMap};

pub const NAMES: [&str; 13] = [
    "Zn", "Z", "Q8", "K8", "G24a", "G24b", "G24q", "G32a", "G32b", "G32q", "Ginf_a", "Ginf_b",
    "Ginf_q",
];

/// The finite builtins checked by the axiom suites.
pub const FINITE: [&str; 10] = [
    "Z3", "Z4", "Q8", "K8", "G24a", "G24b", "G24q", "G32a", "G32b", "G32q",
];

pub fn cyclic(n: usize) -> FiniteGyrogroup {
    assert!(n > 0, "cyclic group of order 0");
    FiniteGyrogroup::from_fn(format!("Z{n}"), n, |a, b| (a + b) % n)
        .expect("cyclic groups are gyrogroups")
}

pub const Q8_LABELS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

/// `Q8` with index `2u + s` for unit `u ∈ {1, i, j, k}` and sign `s`.
pub fn q8() -> FiniteGyrogroup {
    // unit products: (sign, unit)
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGyrogroup::from_fn("Q8", 8, |a, b| {
        let (s, u) = UNITS[a / 2][b / 2];
        2 * u + ((a % 2) ^ (b % 2) ^ s)
    })
    .expect("Q8 is a group")
}

/// Index of a quaternion label such as `-j`.
pub fn q8_index(label: &str) -> Option<usize> {
    Q8_LABELS.iter().position(|&l| l == label)
}

pub fn k8() -> FiniteGyrogroup {
    FiniteGyrogroup::new("K8", k8::table()).expect("vendored K8 is a gyrogroup")
}

/// The automorphism `A = gyr[1,2]` of `K8`.
pub fn k8_automorphism_a() -> Perm {
    Perm::new(k8::AUTOMORPHISM_A.to_vec()).expect("A is a permutation")
}

/// Inversion `h ↦ h⁻¹` of an abelian group, as a permutation.
pub fn negation(h: &FiniteGyrogroup) -> Perm {
    Perm::new(h.elements().map(|a| h.inv(a)).collect()).expect("inversion is a bijection")
}

/// `σ(7) = f`, identity elsewhere, on `K8`.
pub fn sigma_k8_at_seven(h: &FiniteGyrogroup) -> SigmaMap {
    let f = negation(h);
    SigmaMap::from_fn(h, &k8(), |x| {
        if x == 7 {
            f.clone()
        } else {
            Perm::identity(h.order())
        }
    })
    .expect("σ(7) = f is a valid sign map")
}

/// `σ(±i) = f`, identity elsewhere, on `Q8`.
pub fn sigma_q8_at_i(h: &FiniteGyrogroup) -> SigmaMap {
    let f = negation(h);
    SigmaMap::from_fn(h, &q8(), |x| {
        if x == 2 || x == 3 {
            f.clone()
        } else {
            Perm::identity(h.order())
        }
    })
    .expect("σ(±i) = f is a valid sign map")
}

/// `(H, K, σ)` behind a finite semi cross product builtin.
pub fn semi_cross_parts(name: &str) -> Result<(FiniteGyrogroup, FiniteGyrogroup, SigmaMap)> {
    let (n, variant) = match name {
        "G24a" => (3, 'a'),
        "G24b" => (3, 'b'),
        "G24q" => (3, 'q'),
        "G32a" => (4, 'a'),
        "G32b" => (4, 'b'),
        "G32q" => (4, 'q'),
        _ => return Err(GyroError::UnknownBuiltin(name.into())),
    };
    let h = cyclic(n);
    let (k, sigma) = match variant {
        'a' => {
            let k = k8();
            let s = SigmaMap::trivial(&h, &k);
            (k, s)
        }
        'b' => (k8(), sigma_k8_at_seven(&h)),
        _ => (q8(), sigma_q8_at_i(&h)),
    };
    Ok((h, k, sigma))
}

/// The canonical split extension `H → H ⋈ K → K` of a semi cross builtin.
pub fn builtin_extension(name: &str) -> Result<(Extension, Section)> {
    let (h, k, sigma) = semi_cross_parts(name)?;
    let (e, t) = semi_cross_extension(&h, &k, &sigma)?;
    let g = e.g().clone().with_name(name);
    let e = Extension::new(
        e.h().clone(),
        g,
        e.k().clone(),
        e.inclusion().to_vec(),
        e.projection().to_vec(),
    )?;
    Ok((e, t))
}

pub fn builtin_finite(name: &str) -> Result<FiniteGyrogroup> {
    match name {
        "Q8" => Ok(q8()),
        "K8" => Ok(k8()),
        _ if name.starts_with('G') && !name.starts_with("Ginf") => {
            let (h, k, sigma) = semi_cross_parts(name)?;
            Ok(semi_cross(&h, &k, &sigma)?.with_name(name))
        }
        _ => match name.strip_prefix('Z').map(str::parse::<usize>) {
            Some(Ok(n)) if n > 0 => Ok(cyclic(n)),
            _ => Err(GyroError::UnknownBuiltin(name.into())),
        },
    }
}

/// The rule-backed builtins `Z`, `Ginf_a`, `Ginf_b`, `Ginf_q`.
pub fn ginf(name: &str) -> Result<RuleGyrogroup> {
    let sign_at = |k: &FiniteGyrogroup, set: &[usize]| -> Vec<bool> {
        k.elements().map(|x| set.contains(&x)).collect()
    };
    match name {
        "Z" => Ok(RuleGyrogroup::integers()),
        "Ginf_a" => {
            let k = k8();
            let s = sign_at(&k, &[]);
            RuleGyrogroup::new(name, k, s)
        }
        "Ginf_b" => {
            let k = k8();
            let s = sign_at(&k, &[7]);
            RuleGyrogroup::new(name, k, s)
        }
        "Ginf_q" => {
            let k = q8();
            let s = sign_at(&k, &[2, 3]);
            RuleGyrogroup::new(name, k, s)
        }
        _ => Err(GyroError::UnknownBuiltin(name.into())),
    }
}

/// A builtin of either kind.
#[derive(Clone, Debug)]
pub enum Builtin {
    Finite(FiniteGyrogroup),
    Rule(RuleGyrogroup),
}

pub fn builtin(name: &str) -> Result<Builtin> {
    match ginf(name) {
        Ok(r) => Ok(Builtin::Rule(r)),
        Err(_) => builtin_finite(name).map(Builtin::Finite),
    }
}
