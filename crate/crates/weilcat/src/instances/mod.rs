//! Concrete tangent structures for the generic engine.
//!
//! Three actions are provided: the trivial action on an arbitrary category,
//! the self-action of 𝕎eil by tensoring, and the action on finitely
//! generated free ℕ-modules by monomial-basis substitution. The ℕ-module
//! instance also carries the differential-object layer in [`diff`].

pub mod diff;
mod nmod;
mod trivial;
mod weil_self;

pub use nmod::{
    monomial_rank, ranked_monomials, unit_column_map, NModAction, NModCategory, NModMorphism,
    NModObject, NatMatrix,
};
pub use trivial::TrivialAction;
pub use weil_self::WeilSelfAction;

use crate::engine::{ComputableCategory, MorphismSampler};
use crate::sample::{self, SampleBounds};
use crate::weil::{compose as compose_weil, WeilAlgebra, WeilMorphism};

/// 𝕎eil itself as a computable category.
#[derive(Debug, Clone, Default)]
pub struct WeilCat;

impl ComputableCategory for WeilCat {
    type Obj = WeilAlgebra;
    type Mor = WeilMorphism;

    fn source(&self, f: &WeilMorphism) -> WeilAlgebra {
        f.source().clone()
    }

    fn target(&self, f: &WeilMorphism) -> WeilAlgebra {
        f.target().clone()
    }

    fn identity(&self, x: &WeilAlgebra) -> WeilMorphism {
        WeilMorphism::identity(x)
    }

    fn compose(&self, g: &WeilMorphism, f: &WeilMorphism) -> Result<WeilMorphism, String> {
        compose_weil(g, f).map_err(|e| e.to_string())
    }
}

impl MorphismSampler for WeilCat {
    fn sample_morphisms_into(&self, x: &WeilAlgebra, seed: u64, budget: usize) -> Vec<WeilMorphism> {
        let mut rng = sample::rng_from_seed(seed);
        let bounds = SampleBounds::default();
        (0..budget)
            .map(|_| {
                let apex = sample::algebra(&mut rng, &bounds);
                sample::morphism(&mut rng, &apex, x, &bounds)
            })
            .collect()
    }
}
