//! Integer homological algebra: Smith normal form, cochain cohomology, and
//! the resolutions used to compute cohomology of colored categories.

mod bar;
mod complex;
mod cyclic;
mod koszul;
mod matrix;
mod module;
mod nerve;
mod schemoid;
mod smith;

pub use bar::{
    bar_cochain_complex, bar_pullback, is_chain_map, BarError, BarVariant, MAX_COCHAINS,
};
pub use complex::{
    cochain_cohomology, AbelianGroup, CochainComplex, Coefficients, CoefficientsParseError,
    CohomologyGroups, ComplexError,
};
pub use cyclic::{cyclic_cohomology, cyclic_complex};
pub use koszul::{koszul_ext, Augmentation, KoszulExt, NatLen};
pub use matrix::{IntMatrix, SparseMatrix};
pub use module::{Matrix, ModuleError, MonoidModule};
pub use nerve::nerve_cochain_complex;
pub use schemoid::{
    monoid_cohomology, nat_len_cohomology, schemoid_cohomology, CohomologyError, ModuleSpec, Route,
    SchemoidCohomology,
};
pub use smith::{elementary_divisors, elementary_divisors_dense, rank, smith_normal_form, Smith};

pub use crate::monoid::FiniteMonoid;
