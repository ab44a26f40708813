//! Colored categories, schemoids and association schemes: structure
//! constants, the quotient category of a colored category, thin residues
//! and factor schemes, and cohomology computed over the integers.

pub mod builders;
pub mod cohomlib;
pub mod coloring;
pub mod fincat;
pub mod golden;
pub mod monoid;
pub mod quotient;
pub mod report;
pub mod scheme;
pub mod toposlab;
