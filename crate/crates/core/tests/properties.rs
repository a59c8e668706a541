//! Randomized invariants over the builtin structures.

use gyrokit::builtin::{self, builtin_finite, cyclic, k8, q8};
use gyrokit::extension::extract_factor_system;
use gyrokit::factor::{build_extension, from_sigma, FactorSystem};
use gyrokit::gyrogroup::{FiniteGyrogroup, Magma};
use gyrokit::morphism::{random_section, section_change};
use gyrokit::semi_cross::{semi_cross_extension, validate_sigma, SigmaMap};
use gyrokit::table::CayleyTable;
use proptest::prelude::*;
use proptest::sample::select;

fn finite() -> impl Strategy<Value = FiniteGyrogroup> {
    select(builtin::FINITE.to_vec()).prop_map(|n| builtin_finite(n).unwrap())
}

/// A structure together with three of its elements.
fn triple() -> impl Strategy<Value = (FiniteGyrogroup, usize, usize, usize)> {
    finite().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 0..n, 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gyroassociative((g, a, b, c) in triple()) {
        prop_assert_eq!(g.op(a, g.op(b, c)), g.op(g.op(a, b), g.gyr_apply(a, b, c)));
        prop_assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, g.gyr_apply(b, a, c))));
    }

    #[test]
    fn gyr_inversion((g, a, b, c) in triple()) {
        prop_assert_eq!(g.gyr_apply(b, a, g.gyr_apply(a, b, c)), c);
    }

    #[test]
    fn loop_properties((g, a, b, c) in triple()) {
        prop_assert_eq!(g.gyr_apply(g.op(a, b), b, c), g.gyr_apply(a, b, c));
        prop_assert_eq!(g.gyr_apply(a, g.op(b, a), c), g.gyr_apply(a, b, c));
    }

    #[test]
    fn inverse_of_product((g, a, b, _c) in triple()) {
        let lhs = g.inv(g.op(a, b));
        let rhs = g.gyr_apply(a, b, g.op(g.inv(b), g.inv(a)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_cancellation((g, a, b, _c) in triple()) {
        prop_assert_eq!(g.op(g.inv(a), g.op(a, b)), b);
    }

    #[test]
    fn gyr_is_automorphism((g, a, b, c) in triple(), d in 0usize..8) {
        let d = d % g.order();
        prop_assert_eq!(
            g.gyr_apply(a, b, g.op(c, d)),
            g.op(g.gyr_apply(a, b, c), g.gyr_apply(a, b, d))
        );
    }

    #[test]
    fn table_text_round_trip(g in finite()) {
        let back = CayleyTable::parse(&g.table().to_text()).unwrap();
        prop_assert_eq!(&back, g.table());
    }

    #[test]
    fn rule_gyrogroups_on_wide_integers(
        name in select(vec!["Ginf_a", "Ginf_b", "Ginf_q"]),
        h in proptest::array::uniform3(-1_000_000i64..1_000_000),
        x in proptest::array::uniform3(0usize..8),
    ) {
        let g = builtin::ginf(name).unwrap();
        let (a, b, c) = ((h[0], x[0]), (h[1], x[1]), (h[2], x[2]));
        let gyr = g.gyrator(a, b, c).unwrap();
        prop_assert_eq!(g.op(a, g.op(b, c)), g.op(g.op(a, b), gyr));
        prop_assert_eq!(gyr, g.gyr_formula(a.1, b.1, c.0, c.1));
        prop_assert_eq!(g.gyrator(b, a, gyr), Some(c));
    }
}

fn sigma_systems() -> Vec<FactorSystem> {
    let mut out = Vec::new();
    for n in [2, 3, 4] {
        let h = cyclic(n);
        for k in [k8(), q8()] {
            let sigma = if k.name() == "K8" {
                builtin::sigma_k8_at_seven(&h)
            } else {
                builtin::sigma_q8_at_i(&h)
            };
            out.push(from_sigma(h.clone(), k, &sigma).unwrap());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extract_after_build_with_any_section(i in 0usize..6, seed in any::<u64>()) {
        let fs = &sigma_systems()[i];
        let built = build_extension(fs).unwrap();
        let t = random_section(&built.extension, seed);
        let other = extract_factor_system(&built.extension, &t).unwrap();
        prop_assert!(other.validate().passed());
        let rebuilt = build_extension(&other).unwrap();
        prop_assert!(rebuilt.gyr_check.passed);
        let sc = section_change(&built.extension, &built.section, &t).unwrap();
        prop_assert!(sc.report.passed(), "{:?}", sc.report.first_failure());
    }

    #[test]
    fn factor_system_text_round_trip(i in 0usize..6) {
        let fs = &sigma_systems()[i];
        let (h, k) = (fs.h().name().to_string(), fs.k().name().to_string());
        let text = fs.to_text(&h, &k);
        let back = FactorSystem::parse(&text, |r| match r {
            "K8" => Ok(k8()),
            "Q8" => Ok(q8()),
            other => builtin_finite(other),
        })
        .unwrap();
        prop_assert_eq!(&back, fs);
    }

    #[test]
    fn semi_cross_with_random_valid_sigma(choice in any::<prop::sample::Index>()) {
        let h = cyclic(3);
        let k = k8();
        let valid = gyrokit::semi_cross::enumerate_sigmas(&h, &k).unwrap().valid;
        let sigma: &SigmaMap = choice.get(&valid);
        prop_assert!(validate_sigma(&h, &k, sigma).passed());
        let (e, t) = semi_cross_extension(&h, &k, sigma).unwrap();
        let fs = extract_factor_system(&e, &t).unwrap();
        prop_assert!(fs.validate().passed());
        prop_assert_eq!(fs.sigmas(), sigma.values());
    }
}
