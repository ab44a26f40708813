//! The acceptance table: each row recomputes a known result and reports a
//! one-line detail on success.

use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::{Deserialize, Serialize};

use crate::builders::{
    group_schemoid, prop_app_example, pullback_counterexample, simplicial_schemoid,
    simplicial_weights, trace_monoid_presentation, PullbackExample, SimplicialComplex,
};
use crate::cohomlib::{
    bar_cochain_complex, cochain_cohomology, cyclic_cohomology, koszul_ext, nat_len_cohomology,
    schemoid_cohomology, AbelianGroup, Augmentation, BarVariant, Coefficients, KoszulExt,
    ModuleSpec, MonoidModule, NatLen,
};
use crate::coloring::prop_app_hypotheses;
use crate::monoid::FiniteMonoid;
use crate::quotient::{
    build_presentation, growth_series, quotient_category, Caps, QuotientKind, QuotientResult,
};
use crate::scheme::{
    as_schemoid, builtin_schemes, hamming, johnson, prop_h_crosscheck,
    standard_representation_check, AssociationScheme,
};
use crate::toposlab::{
    adjunction_counts, enumerate_functors, is_color_preserving, objectwise_pullback,
};

pub type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn quotient_group_order(a: &AssociationScheme) -> Result<usize, String> {
    match quotient_category(&as_schemoid(a), Caps::default()) {
        QuotientResult::Finite(q) => {
            if q.kind != QuotientKind::Group {
                return Err(format!("quotient is {:?}, not a group", q.kind));
            }
            Ok(q.order())
        }
        QuotientResult::Undecided { reason, .. } => Err(format!("undecided: {reason:?}")),
    }
}

fn hamming_quotients() -> Outcome {
    let mut seen = Vec::new();
    for (n, q, expected) in [
        (1, 2, 2),
        (2, 2, 2),
        (3, 2, 2),
        (1, 3, 1),
        (2, 3, 1),
        (1, 4, 1),
    ] {
        let order = quotient_group_order(&hamming(n, q).unwrap())?;
        ensure!(
            order == expected,
            "H({n},{q}) has quotient of order {order}, expected {expected}"
        );
        seen.push(format!("H({n},{q})→{order}"));
    }
    Ok(seen.join(" "))
}

fn johnson_quotients() -> Outcome {
    let mut seen = Vec::new();
    for (v, d, expected) in [(2, 1, 2), (3, 1, 1), (4, 2, 1), (5, 2, 1)] {
        let order = quotient_group_order(&johnson(v, d).unwrap())?;
        ensure!(
            order == expected,
            "J({v},{d}) has quotient of order {order}, expected {expected}"
        );
        seen.push(format!("J({v},{d})→{order}"));
    }
    Ok(seen.join(" "))
}

fn thin_residue_crosscheck() -> Outcome {
    let mut count = 0;
    for (name, a) in builtin_schemes() {
        if a.point_count() > 16 {
            continue;
        }
        let r = prop_h_crosscheck(&a, Caps::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            r.quotient_order == r.factor_order,
            "{name}: orders {} and {}",
            r.quotient_order,
            r.factor_order
        );
        ensure!(
            r.searched.is_some(),
            "{name}: no isomorphism found by search"
        );
        ensure!(r.isomorphism, "{name}: [σ] ↦ (σ*)^T is not an isomorphism");
        count += 1;
    }
    Ok(format!("{count} schemes with at most 16 points"))
}

fn group_schemoid_quotients() -> Outcome {
    let z2 = FiniteMonoid::cyclic(2);
    let groups = [
        ("Z/2", z2.clone()),
        ("Z/3", FiniteMonoid::cyclic(3)),
        ("Z/4", FiniteMonoid::cyclic(4)),
        ("Z/2xZ/2", z2.product(&z2)),
        ("S3", FiniteMonoid::symmetric(3)),
    ];
    for (name, g) in &groups {
        let x = group_schemoid(g).unwrap();
        let result = quotient_category(&x, Caps::default());
        let q = result.finite().ok_or(format!("{name}: undecided"))?;
        let m =
            FiniteMonoid::from_category(&q.category).ok_or(format!("{name}: several objects"))?;
        ensure!(
            m.find_isomorphism(g).is_some(),
            "{name}: quotient of order {} not isomorphic",
            m.order()
        );
    }
    Ok(format!("{} groups", groups.len()))
}

fn hamming_cohomology_and_prop_app() -> Outcome {
    let z2 = Coefficients::Mod(2);
    for n in 1..=3 {
        let x = as_schemoid(&hamming(n, 2).unwrap());
        let h = schemoid_cohomology(&x, &ModuleSpec::Constant, &z2, 5, Caps::default())
            .map_err(|e| format!("H({n},2): {e}"))?;
        ensure!(
            h.groups.degrees.len() == 6,
            "H({n},2): wrong number of degrees"
        );
        for (k, g) in h.groups.degrees.iter().enumerate() {
            ensure!(*g == AbelianGroup::cyclic(2), "H({n},2): H^{k} = {g}");
        }
    }
    let e = prop_app_example();
    ensure!(
        prop_app_hypotheses(&e.u, &e.colored, &e.hamming, e.tau),
        "fixture does not satisfy the hypotheses"
    );
    let h = schemoid_cohomology(&e.colored, &ModuleSpec::Constant, &z2, 5, Caps::default())
        .map_err(|e| format!("fixture: {e}"))?;
    for (k, g) in h.groups.degrees.iter().enumerate() {
        ensure!(!g.is_zero(), "fixture: H^{k} vanishes");
    }
    Ok("H^0..5 = Z/2 for n = 1, 2, 3; fixture H^0..5 nonzero".into())
}

fn resolutions_agree() -> Outcome {
    let mut compared = 0;
    for n in [2usize, 3, 4] {
        let g = FiniteMonoid::cyclic(n);
        let mut modules = vec![("trivial", vec![vec![1i64]])];
        if n % 2 == 0 {
            modules.push(("sign", vec![vec![-1]]));
        } else {
            // -1 has order 2, so it does not define a Z/n-action; both engines must refuse it
            ensure!(
                MonoidModule::sign(n).is_err(),
                "Z/{n}: sign accepted by the bar engine"
            );
            ensure!(
                cyclic_cohomology(n, &vec![vec![-1]], 1, &Coefficients::Integers).is_err(),
                "Z/{n}: sign accepted by the periodic engine"
            );
        }
        for (name, t) in modules {
            let m = MonoidModule::cyclic(n, t.clone()).unwrap();
            for coeffs in [
                Coefficients::Integers,
                Coefficients::Mod(2),
                Coefficients::Mod(n as u64),
            ] {
                let bar = bar_cochain_complex(&g, &m, 5, BarVariant::Standard)
                    .map_err(|e| format!("Z/{n} {name}: {e}"))?;
                let bar = cochain_cohomology(&bar, &coeffs).degrees;
                let periodic = cyclic_cohomology(n, &t, 5, &coeffs).unwrap().degrees;
                ensure!(
                    bar == periodic,
                    "Z/{n} {name} {coeffs}: {bar:?} vs {periodic:?}"
                );
                compared += 1;
            }
        }
    }
    Ok(format!(
        "{compared} comparisons in degrees 0..5 (no sign module for odd n)"
    ))
}

fn standard_representation() -> Outcome {
    let mut count = 0;
    for (name, a) in builtin_schemes() {
        if a.point_count() > 36 {
            continue;
        }
        let report = standard_representation_check(&a);
        ensure!(report.is_valid(), "{name}: {:?}", report.violations.first());
        count += 1;
    }
    Ok(format!("{count} schemes with at most 36 points"))
}

fn koszul_column() -> Outcome {
    let z = Coefficients::Integers;
    // δ = S − a: [0], [0] and [1] respectively
    let cases = [
        (
            Augmentation::Zero,
            0,
            AbelianGroup::free(1),
            AbelianGroup::free(1),
        ),
        (
            Augmentation::One,
            1,
            AbelianGroup::free(1),
            AbelianGroup::free(1),
        ),
        (
            Augmentation::One,
            2,
            AbelianGroup::zero(),
            AbelianGroup::zero(),
        ),
    ];
    for (aug, s, ext0, ext1) in cases {
        let e = koszul_ext(aug, &vec![vec![s]], &z);
        ensure!(
            e.ext0 == ext0 && e.ext1 == ext1,
            "S = {s}, {aug:?}: got {} / {}",
            e.ext0,
            e.ext1
        );
        for p in KoszulExt::VANISHES_FROM..10 {
            ensure!(e.ext(p).is_zero(), "S = {s}: Ext^{p} nonzero");
        }
    }
    let h = nat_len_cohomology(NatLen, &z, 6);
    ensure!(
        h.degrees[2..].iter().all(AbelianGroup::is_zero),
        "length-colored category: higher Ext"
    );
    Ok("three modules; Ext^p = 0 for p >= 2".into())
}

fn pullback_regression() -> Outcome {
    let e = pullback_counterexample();
    let c = e.colored.base();
    let p = objectwise_pullback(c, &e.functor, &e.functor, &e.eta, &e.lambda);
    let at_x = p.functor.value(PullbackExample::X);
    ensure!(at_x == ["(3,3)"], "value at x is {at_x:?}");
    let at_y = p.functor.value(PullbackExample::Y);
    ensure!(at_y.len() == 3, "value at y has {} elements", at_y.len());
    ensure!(
        p.right.components[PullbackExample::Y] == [0, 1, 2],
        "value at y does not project onto U"
    );
    let v = is_color_preserving(&e.colored, &p.functor);
    ensure!(!v.holds, "pullback is color-preserving");
    ensure!(
        v.witness == Some((PullbackExample::ID_X, PullbackExample::F)),
        "witness {:?}",
        v.witness
    );
    Ok("(FxF)(x) = {(3,3)}, (FxF)(y) ≅ U, witness (id_x, f)".into())
}

fn adjunction_counts_agree() -> Outcome {
    let fixtures = [
        ("S(Z/2)", group_schemoid(&FiniteMonoid::cyclic(2)).unwrap()),
        ("pullback", pullback_counterexample().colored),
    ];
    let mut pairs = 0;
    for (name, x) in &fixtures {
        let result = quotient_category(x, Caps::default());
        let q = result.finite().ok_or(format!("{name}: undecided"))?;
        let all = enumerate_functors(x.base(), 2);
        for f in all.iter().filter(|f| is_color_preserving(x, f).holds) {
            for g in &all {
                let (left, right) = adjunction_counts(x, q, f, g).map_err(|e| e.to_string())?;
                ensure!(left == right, "{name}: {left} vs {right}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs (F, G)"))
}

fn trace_growth() -> Outcome {
    const LEN: usize = 4;
    let mut series = Vec::new();
    for n in 0..=3 {
        for k in SimplicialComplex::all_on(n) {
            let (p, _) = build_presentation(&simplicial_schemoid(&k));
            let left =
                growth_series(&p, &simplicial_weights(&k), LEN).map_err(|e| e.to_string())?;
            let right = growth_series(&trace_monoid_presentation(&k), &vec![1; n], LEN)
                .map_err(|e| e.to_string())?;
            ensure!(left == right, "{:?}: {left:?} vs {right:?}", k.faces());
            series.push((k, left));
        }
    }
    let mut shared = 0;
    for (a, sa) in &series {
        for (b, sb) in &series {
            if a != b && a.one_skeleton() == b.one_skeleton() {
                ensure!(
                    sa == sb,
                    "{:?} and {:?} share a 1-skeleton",
                    a.faces(),
                    b.faces()
                );
                shared += 1;
            }
        }
    }
    ensure!(shared > 0, "no pair of complexes shares a 1-skeleton");
    Ok(format!(
        "{} complexes, {shared} ordered pairs sharing a 1-skeleton",
        series.len()
    ))
}

/// Outcome of one row of the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub criterion: usize,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl std::fmt::Display for Row {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {:>2} {verdict}  {}: {}",
            self.criterion, self.name, self.detail
        )
    }
}

pub type Check = fn() -> Outcome;

pub const CRITERIA: [(&str, Check); 11] = [
    ("Hamming quotients", hamming_quotients),
    ("Johnson quotients", johnson_quotients),
    ("thin residue cross-check", thin_residue_crosscheck),
    ("group schemoid quotients", group_schemoid_quotients),
    (
        "Hamming cohomology and nonvanishing",
        hamming_cohomology_and_prop_app,
    ),
    ("bar vs periodic resolution", resolutions_agree),
    ("standard representation", standard_representation),
    ("Koszul column", koszul_column),
    ("pullback counterexample", pullback_regression),
    ("adjunction hom counts", adjunction_counts_agree),
    ("trace monoid growth", trace_growth),
];

/// Runs criterion `n` (1-based); a panic counts as a failure.
pub fn run_row(n: usize) -> Row {
    let (name, run) = CRITERIA[n - 1];
    let outcome =
        catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
    let (pass, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Row {
        criterion: n,
        name: name.to_string(),
        pass,
        detail,
    }
}

/// Runs every row, one thread per row; the result is in criterion order.
pub fn run_all() -> Vec<Row> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=CRITERIA.len())
            .map(|n| s.spawn(move || run_row(n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("row thread"))
            .collect()
    })
}
