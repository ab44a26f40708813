//! Exhaustive checks over all functors with at most two-point values.

use schemoid_core::builders::{discrete_schemoid, group_schemoid, pullback_counterexample};
use schemoid_core::coloring::ColoredCategory;
use schemoid_core::fincat::FiniteCategory;
use schemoid_core::monoid::FiniteMonoid;
use schemoid_core::quotient::{quotient_category, Caps, FiniteQuotient};
use schemoid_core::scheme::{as_schemoid, hamming};
use schemoid_core::toposlab::*;

fn fixtures() -> Vec<(&'static str, ColoredCategory)> {
    vec![
        ("z2", group_schemoid(&FiniteMonoid::cyclic(2)).unwrap()),
        ("z3", group_schemoid(&FiniteMonoid::cyclic(3)).unwrap()),
        ("pullback", pullback_counterexample().colored),
        ("h22", as_schemoid(&hamming(2, 2).unwrap())),
        (
            "arrow",
            discrete_schemoid(&FiniteCategory::from_preorder(2, |a, b| a <= b)),
        ),
    ]
}

fn quotient(x: &ColoredCategory) -> FiniteQuotient {
    quotient_category(x, Caps::default())
        .finite()
        .expect("finite quotient")
        .clone()
}

fn preserving(x: &ColoredCategory) -> Vec<schemoid_core::fincat::SetFunctor> {
    enumerate_functors(x.base(), 2)
        .into_iter()
        .filter(|f| is_color_preserving(x, f).holds)
        .collect()
}

#[test]
fn color_preserving_functors_are_constant_on_object_classes() {
    for (name, x) in fixtures() {
        for f in preserving(&x) {
            assert!(values_agree_on_classes(&x, &f).holds, "{name}");
        }
    }
}

#[test]
fn locally_constant_agrees_with_sharp_on_natural_fixtures() {
    for (name, x) in fixtures() {
        if !x.is_naturally_colored().holds {
            continue;
        }
        let fs = preserving(&x);
        for f in &fs {
            for g in &fs {
                for eta in natural_transformations(x.base(), f, g) {
                    let s = classify_transformation(&x, f, g, &eta);
                    assert_eq!(s.locally_constant, s.sharp, "{name}");
                }
            }
        }
    }
}

#[test]
fn sharp_implies_locally_constant() {
    for (name, x) in fixtures() {
        let fs = preserving(&x);
        for f in &fs {
            for g in &fs {
                for eta in natural_transformations(x.base(), f, g) {
                    let s = classify_transformation(&x, f, g, &eta);
                    assert!(!s.sharp || s.locally_constant, "{name}");
                }
            }
        }
    }
}

#[test]
fn sheafification_is_color_preserving_with_natural_counit() {
    for (name, x) in fixtures() {
        let q = quotient(&x);
        let c = x.base();
        for f in enumerate_functors(c, 2) {
            let s = sheafify_with(&x, &q, &f).unwrap();
            assert!(s.functor.check(c).unwrap().is_valid(), "{name}");
            assert!(
                s.pushforward.check(&q.category).unwrap().is_valid(),
                "{name}"
            );
            assert!(is_color_preserving(&x, &s.functor).holds, "{name}");
            assert!(
                s.counit.check(c, &s.functor, &f).unwrap().is_valid(),
                "{name}"
            );
        }
    }
}

#[test]
fn unit_exists_on_color_preserving_functors() {
    for (name, x) in fixtures() {
        let q = quotient(&x);
        let c = x.base();
        for f in preserving(&x) {
            let s = sheafify_with(&x, &q, &f).unwrap();
            let unit = sheaf_unit(&x, &q, &f, &s).unwrap();
            assert!(unit.check(c, &f, &s.functor).unwrap().is_valid(), "{name}");
            assert!(
                classify_transformation(&x, &f, &s.functor, &unit).sharp,
                "{name}"
            );
            // counit after unit is the identity
            let back = unit.then(&s.counit);
            assert_eq!(
                back,
                schemoid_core::fincat::NaturalTransformation::identity(&f),
                "{name}"
            );
        }
    }
}

#[test]
fn theta_and_pi_star_are_inverse() {
    for (name, x) in fixtures() {
        let q = quotient(&x);
        let c = x.base();
        for f in preserving(&x) {
            let t = transport_theta(&x, &q, &f).unwrap();
            assert!(t.check(&q.category).unwrap().is_valid(), "{name}");
            assert!(functors_equal(c, &pi_star(&x, &q, &t), &f), "{name}");
        }
        for h in enumerate_functors(&q.category, 2) {
            let back = pi_star(&x, &q, &h);
            assert!(is_color_preserving(&x, &back).holds, "{name}");
            let t = transport_theta(&x, &q, &back).unwrap();
            assert!(functors_equal(&q.category, &t, &h), "{name}");
        }
    }
}

#[test]
fn adjunction_hom_counts_agree() {
    for (name, x) in fixtures() {
        if x.base().object_count() > 3 {
            continue;
        }
        let q = quotient(&x);
        let all = enumerate_functors(x.base(), 2);
        for f in preserving(&x) {
            for g in &all {
                let (left, right) = adjunction_counts(&x, &q, &f, g).unwrap();
                assert_eq!(left, right, "{name}");
            }
        }
    }
}

#[test]
fn sums_are_disjoint_and_stay_color_preserving() {
    for (name, x) in fixtures() {
        let c = x.base();
        let fs = preserving(&x);
        for f in &fs {
            for g in &fs {
                let sum = objectwise_coproduct(c, f, g);
                assert!(sum.check(c).unwrap().is_valid(), "{name}");
                assert!(is_color_preserving(&x, &sum).holds, "{name}");
                let inj = |offset: bool, h: &schemoid_core::fincat::SetFunctor| {
                    schemoid_core::fincat::NaturalTransformation {
                        components: (0..c.object_count())
                            .map(|o| {
                                let shift = if offset { f.value(o).len() } else { 0 };
                                (0..h.value(o).len()).map(|i| i + shift).collect()
                            })
                            .collect(),
                    }
                };
                let p = objectwise_pullback(c, f, g, &inj(false, f), &inj(true, g));
                assert!(p.functor.object_sets.iter().all(Vec::is_empty), "{name}");
            }
        }
    }
}

#[test]
fn pullbacks_of_sharp_cospans_are_color_preserving() {
    for (name, x) in fixtures() {
        if x.base().object_count() > 2 {
            continue;
        }
        let c = x.base();
        let fs = preserving(&x);
        for h in &fs {
            let into_h: Vec<_> = fs
                .iter()
                .flat_map(|f| {
                    natural_transformations(c, f, h)
                        .into_iter()
                        .filter(|eta| classify_transformation(&x, f, h, eta).sharp)
                        .map(move |eta| (f, eta))
                })
                .collect();
            for (f, eta) in &into_h {
                for (g, lambda) in &into_h {
                    let p = objectwise_pullback(c, f, g, eta, lambda);
                    assert!(is_color_preserving(&x, &p.functor).holds, "{name}");
                }
            }
        }
    }
}
