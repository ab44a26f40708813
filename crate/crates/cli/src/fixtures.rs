//! Typed loading of fixture files, with semantic errors mapped back to the
//! field that caused them.

use schemoid_core::builders::{ComplexFile, SimplicialComplex};
use schemoid_core::coloring::{ColoredCategory, ColoredFile, ColoringError};
use schemoid_core::fincat::{
    CategoryError, CategoryFile, FiniteCategory, FunctorError, SetFunctor,
};
use schemoid_core::monoid::FiniteMonoid;
use schemoid_core::scheme::{AssociationScheme, SchemeFile};

use crate::input::{from_value, Input, InputError};

fn compose_pointer(file: &CategoryFile, g: usize, f: usize) -> String {
    file.compose
        .iter()
        .position(|e| e[0] == g && e[1] == f)
        .map_or("/compose".to_string(), |i| format!("/compose/{i}"))
}

fn category_error(input: &Input, file: &CategoryFile, e: CategoryError) -> InputError {
    let pointer = match &e {
        CategoryError::EndpointOutOfRange { morphism, .. } => format!("/morphisms/{morphism}"),
        CategoryError::IdentityCount { .. } => "/identity".to_string(),
        CategoryError::IdentityOutOfRange { object, .. } => format!("/identity/{object}"),
        CategoryError::ComposeOutOfRange { g, f, .. }
        | CategoryError::DuplicateCompose { g, f } => compose_pointer(file, *g, *f),
    };
    InputError::field(input, pointer, e)
}

/// Builds the category and checks the category laws.
fn category_from(input: &Input, file: &CategoryFile) -> Result<FiniteCategory, InputError> {
    let c = FiniteCategory::from_file(file).map_err(|e| category_error(input, file, e))?;
    let report = c.validate();
    if let Some(v) = report.violations.first() {
        return Err(InputError::field(
            input,
            "/compose",
            format!("{}: {}", v.rule, v.detail),
        ));
    }
    Ok(c)
}

pub fn load_category(input: &Input) -> Result<FiniteCategory, InputError> {
    let file: CategoryFile = input.parse()?;
    category_from(input, &file)
}

pub fn load_colored(input: &Input) -> Result<ColoredCategory, InputError> {
    // parse the flattened category on its own so errors keep their path
    let value: serde_json::Value = input.parse()?;
    let category: CategoryFile = from_value(input, &value, "")?;
    let colors = value
        .get("colors")
        .ok_or_else(|| InputError::field(input, "/colors", "missing field `colors`"))?;
    let file = ColoredFile {
        category,
        colors: from_value(input, colors, "/colors")?,
    };
    let base = category_from(input, &file.category)?;
    ColoredCategory::new(base, file.colors.clone()).map_err(|e| match e {
        ColoringError::Category(e) => category_error(input, &file.category, e),
        ColoringError::NoMorphisms => InputError::field(input, "/morphisms", e),
        ColoringError::LengthMismatch { .. } => InputError::field(input, "/colors", e),
        ColoringError::EmptyColor(_) => InputError::field(input, "/colors", e),
    })
}

pub fn load_scheme(input: &Input) -> Result<AssociationScheme, InputError> {
    let file: SchemeFile = input.parse()?;
    AssociationScheme::from_file(&file).map_err(|e| InputError::field(input, "/relations", e))
}

pub fn load_complex(input: &Input) -> Result<SimplicialComplex, InputError> {
    let file: ComplexFile = input.parse()?;
    SimplicialComplex::from_file(&file).map_err(|e| InputError::field(input, "/faces", e))
}

/// Parses the functor and checks it against `c`.
pub fn load_functor(input: &Input, c: &FiniteCategory) -> Result<SetFunctor, InputError> {
    let f: SetFunctor = input.parse()?;
    let report = f.check(c).map_err(|e| {
        let pointer = match &e {
            FunctorError::MissingObject(_) => "/object_sets".to_string(),
            FunctorError::MissingMorphism(_) => "/morphism_maps".to_string(),
            FunctorError::DomainMismatch { morphism, .. }
            | FunctorError::ImageOutOfRange { morphism, .. } => {
                format!("/morphism_maps/{morphism}")
            }
            FunctorError::DuplicateLabel { object, .. } => format!("/object_sets/{object}"),
            FunctorError::MissingComponent(_) | FunctorError::ComponentMismatch { .. } => {
                String::new()
            }
        };
        InputError::field(input, pointer, e)
    })?;
    if let Some(v) = report.violations.first() {
        return Err(InputError::field(
            input,
            "/morphism_maps",
            format!("{}: {}", v.rule, v.detail),
        ));
    }
    Ok(f)
}

/// Group names: `trivial`, `zN`, `sK` (K ≤ 5) and products joined by `x`,
/// e.g. `z2xz2`.
pub fn parse_group(name: &str) -> Result<FiniteMonoid, InputError> {
    let bad = || {
        InputError::Argument(format!(
            "unknown group {name:?}; expected e.g. z3, s3, z2xz2"
        ))
    };
    let lower = name.to_ascii_lowercase();
    if lower == "trivial" {
        return Ok(FiniteMonoid::trivial());
    }
    let mut acc: Option<FiniteMonoid> = None;
    for factor in lower.split('x') {
        let (kind, n) = factor.split_at(factor.len().min(1));
        let n: usize = n.parse().map_err(|_| bad())?;
        let g = match kind {
            "z" if (1..=64).contains(&n) => FiniteMonoid::cyclic(n),
            "s" if (1..=5).contains(&n) => FiniteMonoid::symmetric(n),
            _ => return Err(bad()),
        };
        acc = Some(match acc {
            None => g,
            Some(a) => a.product(&g),
        });
        if acc.as_ref().is_some_and(|a| a.order() > 256) {
            return Err(InputError::Argument(format!(
                "{name}: more than 256 elements"
            )));
        }
    }
    acc.ok_or_else(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_names() {
        assert_eq!(parse_group("z2xz2").unwrap().order(), 4);
        assert_eq!(parse_group("S3").unwrap().order(), 6);
        assert_eq!(parse_group("trivial").unwrap().order(), 1);
        assert!(parse_group("q8").is_err());
        assert!(parse_group("z").is_err());
    }
}
