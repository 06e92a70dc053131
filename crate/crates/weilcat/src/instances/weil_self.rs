//! The self-action of 𝕎eil: T^A(X) = X ⊗ A.
//!
//! The algebra is placed on the right so that the strictness convention
//! T^{A⊗A′} = T^{A′} ∘ T^{A} holds on the nose: (X ⊗ A) ⊗ A′ = X ⊗ (A ⊗ A′)
//! because tensoring concatenates width lists. Pullback preservation reduces
//! to the Weil-algebra certificates for the tensored squares: T applied to a
//! designated square at X is exactly the square tensored with X on the left.

use crate::engine::{PullbackSupport, WeilAction};
use crate::instances::WeilCat;
use crate::limits::{self, Square};
use crate::weil::{WeilAlgebra, WeilMorphism};

#[derive(Debug, Clone, Default)]
pub struct WeilSelfAction {
    category: WeilCat,
}

impl WeilSelfAction {
    pub fn new() -> Self {
        WeilSelfAction { category: WeilCat }
    }
}

impl WeilAction for WeilSelfAction {
    type Cat = WeilCat;

    fn name(&self) -> &'static str {
        "weil-self"
    }

    fn category(&self) -> &WeilCat {
        &self.category
    }

    fn act_obj(&self, a: &WeilAlgebra, x: &WeilAlgebra) -> WeilAlgebra {
        x.tensor(a)
    }

    fn act_mor(&self, phi: &WeilMorphism, x: &WeilAlgebra) -> WeilMorphism {
        WeilMorphism::identity(x).tensor(phi)
    }

    fn act_fun(&self, a: &WeilAlgebra, f: &WeilMorphism) -> WeilMorphism {
        f.tensor(&WeilMorphism::identity(a))
    }
}

impl PullbackSupport for WeilSelfAction {
    fn certify_image(&self, square: &Square, x: &WeilAlgebra) -> Result<(), String> {
        limits::certify(&square.tensor_left(x))
            .map(|_| ())
            .map_err(|failure| failure.to_string())
    }

    fn sample_image_cones(
        &self,
        square: &Square,
        x: &WeilAlgebra,
        seed: u64,
        budget: usize,
    ) -> Vec<(WeilMorphism, WeilMorphism)> {
        limits::sample_cones(&square.tensor_left(x), seed, budget)
            .into_iter()
            .map(|sampled| (sampled.cone.leg_right, sampled.cone.leg_bottom))
            .collect()
    }

    fn lift_image_cone(
        &self,
        square: &Square,
        x: &WeilAlgebra,
        leg_right: &WeilMorphism,
        leg_bottom: &WeilMorphism,
    ) -> Result<WeilMorphism, String> {
        let image = square.tensor_left(x);
        let cone = limits::Cone::new(leg_right.clone(), leg_bottom.clone())
            .map_err(|e| e.to_string())?;
        limits::lift_cone(&image, &cone).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{self, structure_maps};
    use crate::sample::{self, SampleBounds};
    use crate::weil::generators;

    #[test]
    fn action_tensors_on_the_right() {
        let action = WeilSelfAction::new();
        let w = WeilAlgebra::w();
        assert_eq!(action.act_obj(&w, &w), WeilAlgebra::w_tensor(2));

        // T^ε at W collapses W⊗W onto its first factor, killing x₂.
        let p = action.act_mor(&generators::epsilon(), &w);
        assert_eq!(p.to_string(), "[W@W -> W]{ x1 -> x1 ; x2 -> 0 }");

        // Strictness on objects: X ⊗ (A ⊗ A′) = (X ⊗ A) ⊗ A′.
        let a = WeilAlgebra::new(vec![2]).unwrap();
        let ab = a.tensor(&w);
        assert_eq!(
            action.act_obj(&ab, &w),
            action.act_obj(&w, &action.act_obj(&a, &w))
        );
    }

    #[test]
    fn self_action_satisfies_every_law() {
        let action = WeilSelfAction::new();
        let mut rng = sample::rng_from_seed(17);
        let bounds = SampleBounds::default();
        let morphisms: Vec<_> = (0..5)
            .flat_map(|_| sample::morphism_chain(&mut rng, 2, &bounds))
            .collect();
        let objects: Vec<WeilAlgebra> = morphisms.iter().map(|f| f.source().clone()).collect();
        let weil_samples = sample::morphism_chain(&mut rng, 3, &bounds);
        let report = engine::verify_action_laws(&action, &objects, &morphisms, &weil_samples);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn self_action_preserves_the_designated_squares() {
        let action = WeilSelfAction::new();
        let objects = vec![WeilAlgebra::nat(), WeilAlgebra::w()];
        let reports =
            engine::verify_tangent_pullbacks(&action, &WeilAlgebra::nat(), 1, 1, &objects, 5, 20)
                .expect("squares build");
        for report in &reports {
            assert!(report.passed(), "{report}");
            assert!(report.cones_checked > 0);
        }
    }

    #[test]
    fn structure_maps_recover_the_tangent_projection() {
        let action = WeilSelfAction::new();
        let x = WeilAlgebra::w();
        let (maps, failures) = structure_maps(&action, &x);
        assert!(failures.is_empty(), "{failures:?}");
        assert_eq!(maps.projection.to_string(), "[W@W -> W]{ x1 -> x1 ; x2 -> 0 }");
        assert_eq!(
            maps.lift.to_string(),
            "[W@W -> W@W@W]{ x1 -> x1 ; x2 -> x2*x3 }"
        );
    }
}
