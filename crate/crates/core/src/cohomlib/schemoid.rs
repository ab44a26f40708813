use serde::Serialize;
use thiserror::Error;

use super::bar::{bar_cochain_complex, BarError, BarVariant};
use super::complex::{cochain_cohomology, Coefficients, CohomologyGroups};
use super::koszul::{koszul_ext, Augmentation, NatLen};
use super::module::{ModuleError, MonoidModule};
use super::nerve::nerve_cochain_complex;
use crate::coloring::ColoredCategory;
use crate::monoid::FiniteMonoid;
use crate::quotient::{
    quotient_category, Caps, CategoryPresentation, QuotientKind, QuotientResult, RewriteSystem,
    UndecidedReason,
};

/// Coefficients as a module over the quotient monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    /// The constant module `ℤ` with trivial action.
    Constant,
    /// An explicit action, indexed by the morphisms of the finite quotient.
    Explicit(MonoidModule),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("the quotient is undecided within the completion caps")]
    Undecided,
    #[error("the quotient has {0} objects; explicit modules need a one-object quotient")]
    MultiObject(usize),
    #[error("explicit modules are only supported on finite quotients")]
    ExplicitOnFree,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Bar(#[from] BarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Route {
    /// Bar cochains on the finite quotient.
    Bar { order: usize, kind: QuotientKind },
    /// Nerve cochains of a finite quotient with several objects.
    Nerve { objects: usize, morphisms: usize },
    /// Two-term resolution over the free monoid on one generator.
    Koszul,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemoidCohomology {
    #[serde(flatten)]
    pub route: Route,
    pub groups: CohomologyGroups,
}

/// `H^0, …, H^{max_degree}` of a colored category with coefficients in a
/// module over its quotient.
///
/// One-object finite quotients use normalized bar cochains, and finite
/// quotients with several objects use nerve cochains (constant
/// coefficients only). A quotient that
/// completes to a free monoid on a single generator is handled by the
/// two-term resolution; anything else is unsupported.
pub fn schemoid_cohomology(
    x: &ColoredCategory,
    module: &ModuleSpec,
    coefficients: &Coefficients,
    max_degree: usize,
    caps: Caps,
) -> Result<SchemoidCohomology, CohomologyError> {
    match quotient_category(x, caps) {
        QuotientResult::Finite(q) => {
            let objects = q.category.object_count();
            if objects != 1 {
                if *module != ModuleSpec::Constant {
                    return Err(CohomologyError::MultiObject(objects));
                }
                let complex = nerve_cochain_complex(&q.category, max_degree)?;
                return Ok(SchemoidCohomology {
                    route: Route::Nerve {
                        objects,
                        morphisms: q.category.morphism_count(),
                    },
                    groups: cochain_cohomology(&complex, coefficients),
                });
            }
            let g = FiniteMonoid::from_category(&q.category).expect("one-object quotient");
            let m = match module {
                ModuleSpec::Constant => MonoidModule::trivial(&g, 1),
                ModuleSpec::Explicit(m) => m.clone(),
            };
            Ok(SchemoidCohomology {
                route: Route::Bar {
                    order: g.order(),
                    kind: q.kind,
                },
                groups: monoid_cohomology(&g, &m, coefficients, max_degree)?,
            })
        }
        QuotientResult::Undecided {
            presentation,
            system,
            reason,
        } => {
            let free_on_one =
                reason != UndecidedReason::Incomplete && is_free_on_one(&presentation, &system);
            if !free_on_one {
                return Err(CohomologyError::Undecided);
            }
            if *module != ModuleSpec::Constant {
                return Err(CohomologyError::ExplicitOnFree);
            }
            Ok(SchemoidCohomology {
                route: Route::Koszul,
                groups: nat_len_cohomology(NatLen, coefficients, max_degree),
            })
        }
    }
}

/// Largest power tried when expressing a generator through another.
const MAX_POWER: usize = 64;

/// Certifies that a one-object presentation defines the free monoid on one
/// letter: some generator `a` has every generator equal to a power `a^k`,
/// and the exponents make every defining relation homogeneous. The
/// exponents then define a surjection onto `ℕ` sending `a` to 1, so the
/// powers of `a` are pairwise distinct.
fn is_free_on_one(p: &CategoryPresentation, system: &RewriteSystem) -> bool {
    if !system.complete || p.objects != 1 {
        return false;
    }
    let weight = |w: &[usize], k: &[usize]| w.iter().map(|&g| k[g]).sum::<usize>();
    (0..p.generators.len()).any(|a| {
        let mut power = Vec::new();
        let mut forms = vec![system.normal_form(&power)];
        for _ in 0..MAX_POWER {
            power.push(a);
            forms.push(system.normal_form(&power));
        }
        let exponents: Option<Vec<usize>> = (0..p.generators.len())
            .map(|g| {
                let nf = system.normal_form(&[g]);
                forms.iter().position(|f| *f == nf)
            })
            .collect();
        let Some(k) = exponents else {
            return false;
        };
        k[a] == 1
            && p.relations
                .iter()
                .all(|(l, r)| weight(l, &k) == weight(r, &k))
    })
}

/// Cohomology of a finite monoid with coefficients in `m`.
pub fn monoid_cohomology(
    g: &FiniteMonoid,
    m: &MonoidModule,
    coefficients: &Coefficients,
    max_degree: usize,
) -> Result<CohomologyGroups, CohomologyError> {
    let complex = bar_cochain_complex(g, m, max_degree, BarVariant::Normalized)?;
    Ok(cochain_cohomology(&complex, coefficients))
}

/// Cohomology of the length-colored free category on one endomorphism with
/// constant coefficients: `σ` acts on `ℤ` as the identity.
pub fn nat_len_cohomology(
    _: NatLen,
    coefficients: &Coefficients,
    max_degree: usize,
) -> CohomologyGroups {
    let ext = koszul_ext(Augmentation::One, &vec![vec![1]], coefficients);
    CohomologyGroups {
        coefficients: coefficients.to_string(),
        degrees: (0..=max_degree).map(|p| ext.ext(p)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomlib::complex::AbelianGroup;
    use crate::fincat::FiniteCategory;

    #[test]
    fn terminal_category_has_only_h0() {
        let x = ColoredCategory::new(FiniteCategory::terminal(), vec![0]).unwrap();
        let h = schemoid_cohomology(
            &x,
            &ModuleSpec::Constant,
            &Coefficients::Integers,
            3,
            Caps::default(),
        )
        .unwrap();
        assert_eq!(h.groups.degrees[0], AbelianGroup::free(1));
        assert!(h.groups.degrees[1..].iter().all(AbelianGroup::is_zero));
    }

    #[test]
    fn nat_len_vanishes_above_one() {
        let h = nat_len_cohomology(NatLen, &Coefficients::Integers, 5);
        assert_eq!(h.degrees[0], AbelianGroup::free(1));
        assert_eq!(h.degrees[1], AbelianGroup::free(1));
        assert!(h.degrees[2..].iter().all(AbelianGroup::is_zero));
    }

    #[test]
    fn truncated_length_coloring_is_free_on_one_letter() {
        for len in 1..=4 {
            let x = crate::builders::nat_len_truncation(len);
            let h = schemoid_cohomology(
                &x,
                &ModuleSpec::Constant,
                &Coefficients::Integers,
                4,
                Caps::default(),
            )
            .unwrap();
            assert_eq!(h.route, Route::Koszul);
            assert_eq!(
                h.groups,
                nat_len_cohomology(NatLen, &Coefficients::Integers, 4)
            );
        }
    }

    #[test]
    fn free_monoid_on_two_letters_is_not_certified() {
        let k = crate::builders::SimplicialComplex::generated(2, &[]).unwrap();
        let x = crate::builders::simplicial_schemoid(&k);
        assert_eq!(
            schemoid_cohomology(
                &x,
                &ModuleSpec::Constant,
                &Coefficients::Integers,
                2,
                Caps::default()
            ),
            Err(CohomologyError::Undecided)
        );
    }

    #[test]
    fn multi_object_quotient_goes_through_the_nerve() {
        let c = FiniteCategory::indiscrete(2);
        let x = ColoredCategory::new(c, (0..4).collect()).unwrap();
        let h = schemoid_cohomology(
            &x,
            &ModuleSpec::Constant,
            &Coefficients::Integers,
            2,
            Caps::default(),
        )
        .unwrap();
        assert_eq!(
            h.route,
            Route::Nerve {
                objects: 2,
                morphisms: 4
            }
        );
        assert_eq!(h.groups.degrees[0], AbelianGroup::free(1));
        assert!(h.groups.degrees[1..].iter().all(AbelianGroup::is_zero));
        let z2 = FiniteMonoid::cyclic(2);
        let explicit = ModuleSpec::Explicit(MonoidModule::trivial(&z2, 1));
        assert_eq!(
            schemoid_cohomology(&x, &explicit, &Coefficients::Integers, 2, Caps::default()),
            Err(CohomologyError::MultiObject(2))
        );
    }
}
