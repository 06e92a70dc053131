//! Exact symbolic calculus for Weil ℕ-algebras and the combinatorics of
//! tangent structure built on them.
//!
//! The crate has six layers:
//! - [`weil`]: the category 𝕎eil of Weil ℕ-algebras (objects, elements,
//!   morphisms, strict tensor).
//! - [`limits`]: the foundational and vertical-lift pullback squares with a
//!   constructive lift algorithm and a structural uniqueness certificate.
//! - [`space`]: wedge-of-smash expressions in pointed-space variables, the
//!   functor φ ↦ φ̃, and the α decomposition with its coherence law.
//! - [`engine`]: a generic verifier for categories carrying a strict Weil
//!   action (tangent structure), including pullback preservation.
//! - [`instances`]: three concrete actions (trivial, 𝕎eil on itself, ℕ-module
//!   matrices), differential objects, and the cartesian derivative.
//! - [`dsl`] and [`cli`]: a small text syntax, JSON forms, and the command
//!   line surface.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision naturals and
//! every verification is an equality of normal forms, never approximate.

pub mod cli;
pub mod dsl;
pub mod engine;
pub mod instances;
pub mod limits;
pub mod sample;
pub mod space;
pub mod weil;
