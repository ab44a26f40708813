//! One function per subcommand. Each returns a structured result and a
//! one-line summary; `main` wraps them into a report.

use serde::Serialize;
use serde_json::{json, Value};

use schemoid_core::builders::{
    discrete_schemoid, group_schemoid, nat_len_truncation, prop_app_example,
    pullback_counterexample, simplicial_schemoid,
};
use schemoid_core::cohomlib::{
    schemoid_cohomology, BarError, Coefficients, CohomologyError, ModuleSpec,
};
use schemoid_core::coloring::ColoredCategory;
use schemoid_core::golden::{run_all, Row};
use schemoid_core::quotient::{quotient_category, Caps, FiniteQuotient, QuotientResult};
use schemoid_core::scheme::{
    as_schemoid, builtin_schemes, factor_scheme, group_scheme, hamming, johnson, prop_h_crosscheck,
    thin_residue, validate_relations, AssociationScheme, SchemeError, SchemeFile,
};
use schemoid_core::toposlab::{is_color_preserving, sheaf_unit, sheafify_with};

use crate::fixtures::{
    load_category, load_colored, load_complex, load_functor, load_scheme, parse_group,
};
use crate::input::{Input, InputError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    False,
    Undecided,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::False => 1,
            Status::Undecided => 3,
        }
    }
}

pub struct Outcome {
    pub result: Value,
    pub summary: String,
    pub status: Status,
}

impl Outcome {
    fn ok(result: Value, summary: impl Into<String>) -> Self {
        Outcome {
            result,
            summary: summary.into(),
            status: Status::Ok,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

/// Stable JSON text for fixtures written by `gen`.
pub fn fixture_text<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("plain data serializes") + "\n"
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Predicate {
    Schemoid,
    Natural,
    Tame,
}

pub fn analyze(input: &Input, asserts: &[Predicate]) -> Result<Outcome, InputError> {
    let x = load_colored(input)?;
    let c = x.base();
    let table = x.structure_constants();
    let natural = x.is_naturally_colored();
    let tameness = x.tameness();
    let classes = x.object_classes();
    let constants: Vec<[usize; 4]> = table
        .nonzero_entries()
        .into_iter()
        .map(|(s, t, m, p)| [s, t, m, p])
        .collect();
    let result = json!({
        "objects": c.object_count(),
        "morphisms": c.morphism_count(),
        "colors": x.color_count(),
        "identity_colors": x.identity_colors(),
        "object_classes": classes.classes,
        "schemoid": { "holds": table.schemoid, "witness": table.witness },
        "naturally_colored": natural,
        "tameness": tameness,
        "structure_constants": constants,
    });
    let failed: Vec<&str> = asserts
        .iter()
        .filter(|p| match p {
            Predicate::Schemoid => !table.schemoid,
            Predicate::Natural => !natural.holds,
            Predicate::Tame => !tameness.tame,
        })
        .map(|p| match p {
            Predicate::Schemoid => "not a schemoid",
            Predicate::Natural => "not naturally colored",
            Predicate::Tame => "not tame",
        })
        .collect();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let summary = format!(
        "{} objects, {} morphisms, {} colors; schemoid: {}, naturally colored: {}, tame: {}",
        c.object_count(),
        c.morphism_count(),
        x.color_count(),
        yes_no(table.schemoid),
        yes_no(natural.holds),
        yes_no(tameness.tame),
    );
    Ok(Outcome {
        result,
        status: if failed.is_empty() {
            Status::Ok
        } else {
            Status::False
        },
        summary: if failed.is_empty() {
            summary
        } else {
            format!("{}; {summary}", failed.join(", "))
        },
    })
}

fn finite_quotient_json(q: &FiniteQuotient) -> Value {
    let morphisms: Vec<Value> = (0..q.order())
        .map(|m| {
            let a = q.category.arrow(m);
            json!({ "src": a.src, "tgt": a.tgt, "word": q.render(m) })
        })
        .collect();
    json!({
        "status": "finite",
        "kind": q.kind,
        "order": q.order(),
        "objects": q.category.object_count(),
        "object_classes": q.partition.classes,
        "generators": q.presentation.generators,
        "rules": rules_json(q),
        "morphisms": morphisms,
        "multiplication_table": q.multiplication_table(),
    })
}

fn rules_json(q: &FiniteQuotient) -> Vec<[String; 2]> {
    q.system
        .rules
        .iter()
        .map(|r| [q.presentation.render(&r.lhs), q.presentation.render(&r.rhs)])
        .collect()
}

fn quotient_outcome(result: &QuotientResult) -> Outcome {
    match result {
        QuotientResult::Finite(q) => Outcome::ok(
            finite_quotient_json(q),
            format!(
                "{:?} with {} morphisms on {} objects",
                q.kind,
                q.order(),
                q.category.object_count()
            )
            .to_lowercase(),
        ),
        QuotientResult::Undecided {
            presentation,
            system,
            reason,
        } => {
            let rules: Vec<[String; 2]> = system
                .rules
                .iter()
                .map(|r| [presentation.render(&r.lhs), presentation.render(&r.rhs)])
                .collect();
            Outcome {
                result: json!({
                    "status": "undecided",
                    "reason": reason,
                    "caps": system.caps,
                    "pairs_examined": system.pairs_examined,
                    "generators": presentation.generators,
                    "rules": rules,
                }),
                summary: format!("undecided ({reason:?}) after {} rules", system.rules.len()),
                status: Status::Undecided,
            }
        }
    }
}

pub fn quotient(input: &Input, caps: Caps) -> Result<Outcome, InputError> {
    let x = load_colored(input)?;
    Ok(quotient_outcome(&quotient_category(&x, caps)))
}

pub fn cohomology(
    input: &Input,
    coeffs: &str,
    degree: usize,
    caps: Caps,
) -> Result<Outcome, InputError> {
    let coefficients: Coefficients = coeffs
        .parse()
        .map_err(|e| InputError::Argument(format!("{e}")))?;
    let x = load_colored(input)?;
    match schemoid_cohomology(&x, &ModuleSpec::Constant, &coefficients, degree, caps) {
        Ok(h) => {
            let shown: Vec<String> = h.groups.degrees.iter().map(ToString::to_string).collect();
            let mut result = to_value(&h);
            result["display"] = json!(shown);
            Ok(Outcome::ok(
                result,
                format!("H^0..{degree}({coefficients}) = {}", shown.join(", ")),
            ))
        }
        Err(e @ (CohomologyError::Undecided | CohomologyError::Bar(BarError::TooLarge(_)))) => {
            Ok(Outcome {
                result: json!({ "status": "undecided", "reason": e.to_string() }),
                summary: e.to_string(),
                status: Status::Undecided,
            })
        }
        Err(e) => Err(InputError::Argument(e.to_string())),
    }
}

pub fn sheafify(colored: &Input, functor: &Input, caps: Caps) -> Result<Outcome, InputError> {
    let x = load_colored(colored)?;
    let f = load_functor(functor, x.base())?;
    let preserving = is_color_preserving(&x, &f);
    let result = quotient_category(&x, caps);
    let Some(q) = result.finite() else {
        let mut partial = quotient_outcome(&result);
        partial.result = json!({ "color_preserving": preserving, "quotient": partial.result });
        return Ok(partial);
    };
    let s = sheafify_with(&x, q, &f).map_err(|e| InputError::field(functor, "", e))?;
    let unit = if preserving.holds {
        Some(sheaf_unit(&x, q, &f, &s).map_err(|e| InputError::field(functor, "", e))?)
    } else {
        None
    };
    let sizes: Vec<usize> = s.functor.object_sets.iter().map(Vec::len).collect();
    Ok(Outcome::ok(
        json!({
            "color_preserving": preserving,
            "pushforward": s.pushforward,
            "sheafified": s.functor,
            "counit": s.counit,
            "unit": unit,
        }),
        format!(
            "input is {}color-preserving; sheafified value sizes {sizes:?}",
            if preserving.holds { "" } else { "not " }
        ),
    ))
}

pub fn scheme_validate(input: &Input) -> Result<Outcome, InputError> {
    let file: SchemeFile = input.parse()?;
    let report = validate_relations(&file.relations);
    let valid = report.is_valid() && file.relations.len() == file.points;
    Ok(Outcome {
        result: json!({ "valid": valid, "points": file.points, "violations": report.violations }),
        summary: if valid {
            "valid association scheme".into()
        } else {
            format!(
                "not an association scheme: {} violations",
                report.len().max(1)
            )
        },
        status: if valid { Status::Ok } else { Status::False },
    })
}

fn scheme_summary(a: &AssociationScheme) -> Value {
    json!({
        "points": a.point_count(),
        "colors": a.color_count(),
        "valencies": (0..a.color_count()).map(|s| a.valency(s)).collect::<Vec<_>>(),
        "symmetric": a.is_symmetric(),
        "commutative": a.is_commutative(),
        "thin": a.is_thin(),
    })
}

pub fn scheme_quo(input: &Input, caps: Caps) -> Result<Outcome, InputError> {
    let a = load_scheme(input)?;
    let residue = thin_residue(&a);
    let factor =
        factor_scheme(&a, &residue).map_err(|e| InputError::field(input, "/relations", e))?;
    let factor_order = factor.group().map(|g| g.order());
    let mut result = json!({
        "scheme": scheme_summary(&a),
        "thin_residue": residue.colors,
        "factor_blocks": factor.blocks,
        "factor_order": factor_order,
    });
    match prop_h_crosscheck(&a, caps) {
        Ok(r) => {
            let order = r.quotient_order;
            let agree = r.isomorphism && r.searched.is_some();
            result["quotient_order"] = json!(order);
            result["crosscheck"] = to_value(&r);
            Ok(Outcome {
                result,
                summary: format!(
                    "group of order {order}; thin-residue factor group {}",
                    if agree {
                        "isomorphic"
                    } else {
                        "NOT isomorphic"
                    }
                ),
                status: if agree { Status::Ok } else { Status::False },
            })
        }
        Err(SchemeError::Undecided) => {
            result["quotient"] =
                quotient_outcome(&quotient_category(&as_schemoid(&a), caps)).result;
            Ok(Outcome {
                result,
                summary: "rewriting quotient undecided within caps".into(),
                status: Status::Undecided,
            })
        }
        Err(e) => Err(InputError::field(input, "/relations", e)),
    }
}

#[derive(Debug, Clone, clap::Subcommand)]
pub enum SchemeKind {
    /// Hamming scheme H(n, q)
    Hamming { n: usize, q: usize },
    /// Johnson scheme J(v, d)
    Johnson { v: usize, d: usize },
    /// Thin scheme of a group (`z3`, `s3`, `z2xz2`, ...)
    Group { name: String },
    /// A scheme from the built-in catalog, e.g. `H(2,2)` or `Cay(S3)`
    Builtin { name: String },
}

pub fn scheme_gen(kind: &SchemeKind) -> Result<AssociationScheme, InputError> {
    let param = |e: SchemeError| InputError::Argument(e.to_string());
    match kind {
        SchemeKind::Hamming { n, q } => hamming(*n, *q).map_err(param),
        SchemeKind::Johnson { v, d } => johnson(*v, *d).map_err(param),
        SchemeKind::Group { name } => group_scheme(&parse_group(name)?).map_err(param),
        SchemeKind::Builtin { name } => builtin_schemes()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
            .ok_or_else(|| {
                InputError::Argument(format!(
                    "no built-in scheme named {name:?}; see `scheme list`"
                ))
            }),
    }
}

pub fn scheme_list() -> Outcome {
    let rows: Vec<Value> = builtin_schemes()
        .iter()
        .map(|(name, a)| json!({ "name": name, "points": a.point_count(), "colors": a.color_count() }))
        .collect();
    let n = rows.len();
    Outcome::ok(Value::Array(rows), format!("{n} built-in schemes"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PullbackPart {
    Colored,
    Functor,
    Eta,
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PropAppPart {
    Colored,
    Hamming,
    U,
}

#[derive(Debug, Clone, clap::Subcommand)]
pub enum GenKind {
    /// Discrete coloring of a category file (one color per morphism)
    Discrete { category: String },
    /// Group schemoid of a finite group
    Group { name: String },
    /// Face-inclusion schemoid of a simplicial complex file
    Simplicial { complex: String },
    /// Truncation of the length-colored monoid of naturals
    NatLen { len: usize },
    /// The two-object example whose pullback is not color-preserving
    PullbackExample {
        #[arg(long, value_enum, default_value = "colored")]
        part: PullbackPart,
    },
    /// Three-object example with an invertible pair inside one color
    PropAppExample {
        #[arg(long, value_enum, default_value = "colored")]
        part: PropAppPart,
    },
}

fn colored_text(x: &ColoredCategory) -> String {
    fixture_text(&x.to_file())
}

pub fn gen(kind: &GenKind) -> Result<String, InputError> {
    Ok(match kind {
        GenKind::Discrete { category } => {
            let input = Input::read(category)?;
            let c = load_category(&input)?;
            colored_text(&discrete_schemoid(&c))
        }
        GenKind::Group { name } => {
            let g = parse_group(name)?;
            let x = group_schemoid(&g).map_err(|e| InputError::Argument(e.to_string()))?;
            colored_text(&x)
        }
        GenKind::Simplicial { complex } => {
            let input = Input::read(complex)?;
            let k = load_complex(&input)?;
            colored_text(&simplicial_schemoid(&k))
        }
        GenKind::NatLen { len } => colored_text(&nat_len_truncation(*len)),
        GenKind::PullbackExample { part } => {
            let e = pullback_counterexample();
            match part {
                PullbackPart::Colored => colored_text(&e.colored),
                PullbackPart::Functor => fixture_text(&e.functor),
                PullbackPart::Eta => fixture_text(&e.eta),
                PullbackPart::Lambda => fixture_text(&e.lambda),
            }
        }
        GenKind::PropAppExample { part } => {
            let e = prop_app_example();
            match part {
                PropAppPart::Colored => colored_text(&e.colored),
                PropAppPart::Hamming => colored_text(&e.hamming),
                PropAppPart::U => fixture_text(&e.u),
            }
        }
    })
}

pub const EXPECTED_GOLDEN: &str = include_str!("../golden/expected.json");

/// Runs the acceptance table and compares every row with `expected`.
pub fn golden(expected: &str, source: &str) -> Result<(Outcome, Vec<Row>), InputError> {
    let expected: Vec<Row> = serde_json::from_str(expected).map_err(|e| InputError::Field {
        source_name: source.to_string(),
        pointer: String::new(),
        message: e.to_string(),
    })?;
    let rows = run_all();
    let mut diffs = Vec::new();
    for row in &rows {
        match expected.iter().find(|e| e.criterion == row.criterion) {
            Some(e) if e == row => {}
            Some(e) => {
                diffs.push(json!({ "criterion": row.criterion, "expected": e, "actual": row }))
            }
            None => {
                diffs.push(json!({ "criterion": row.criterion, "expected": null, "actual": row }))
            }
        }
    }
    for e in &expected {
        if !rows.iter().any(|r| r.criterion == e.criterion) {
            diffs.push(json!({ "criterion": e.criterion, "expected": e, "actual": null }));
        }
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    let ok = diffs.is_empty() && passed == rows.len();
    let outcome = Outcome {
        result: json!({ "rows": rows, "diffs": diffs }),
        summary: format!(
            "{passed}/{} rows pass, {} differ from expectations",
            rows.len(),
            diffs.len()
        ),
        status: if ok { Status::Ok } else { Status::False },
    };
    Ok((outcome, rows))
}
