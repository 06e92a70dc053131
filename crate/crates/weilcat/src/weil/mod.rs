//! Weil ℕ-algebras and their morphisms.
//!
//! A Weil ℕ-algebra is ℕ[x₁,…,xₙ]/(xᵢxⱼ | i ∼ j) where ∼ is the partition of
//! {1,…,n} into consecutive blocks. The algebra is encoded solely by the list
//! of block widths; the empty list is ℕ itself. Elements are finite ℕ-linear
//! combinations of nonzero monomials, and morphisms are determined by the
//! images of the generators.

mod algebra;
mod element;
pub mod generators;
mod morphism;

pub use algebra::WeilAlgebra;
pub use element::{normalize_monomial, Element, Monomial, Natural};
pub use morphism::{check_hom, compose, HomVerdict, WeilMorphism};

use thiserror::Error;

/// Errors raised by constructors and operations on Weil-algebra data.
///
/// Every variant is an input error: the library never constructs invalid
/// values, so downstream modules treat these as caller mistakes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("block widths must be at least 1 (block {block} has width 0)")]
    ZeroWidth { block: usize },
    #[error("generator index {index} out of range for an algebra with {count} generators")]
    IndexOutOfRange { index: u32, count: u32 },
    #[error("ambient algebra mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: String, found: String },
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: u32, found: u32 },
    #[error("boundary mismatch: cannot compose {outer_source} <- {inner_target}")]
    BoundaryMismatch {
        inner_target: String,
        outer_source: String,
    },
    #[error("images do not define a morphism: generators {i} and {j} are related in the source but the product of their images is nonzero")]
    NotAHom { i: u32, j: u32 },
    #[error("the empty monomial cannot appear in an element")]
    ConstantTerm,
    #[error("monomial is not normalized for this algebra")]
    UnnormalizedMonomial,
}
