//! The trivial tangent structure: every Weil algebra acts as the identity
//! functor. T^A(X) = X, T^φ is the identity transformation, and every
//! designated square becomes a square of identities, whose cones are pairs
//! of equal morphisms lifting through themselves.

use crate::engine::{ComputableCategory, MorphismSampler, PullbackSupport, WeilAction};
use crate::limits::Square;
use crate::weil::{WeilAlgebra, WeilMorphism};

#[derive(Debug, Clone, Default)]
pub struct TrivialAction<C: ComputableCategory> {
    category: C,
}

impl<C: ComputableCategory> TrivialAction<C> {
    pub fn new(category: C) -> Self {
        TrivialAction { category }
    }
}

impl<C: ComputableCategory> WeilAction for TrivialAction<C> {
    type Cat = C;

    fn name(&self) -> &'static str {
        "trivial"
    }

    fn category(&self) -> &C {
        &self.category
    }

    fn act_obj(&self, _a: &WeilAlgebra, x: &C::Obj) -> C::Obj {
        x.clone()
    }

    fn act_mor(&self, _phi: &WeilMorphism, x: &C::Obj) -> C::Mor {
        self.category.identity(x)
    }

    fn act_fun(&self, _a: &WeilAlgebra, f: &C::Mor) -> C::Mor {
        f.clone()
    }
}

impl<C: MorphismSampler> PullbackSupport for TrivialAction<C> {
    fn certify_image(&self, _square: &Square, _x: &C::Obj) -> Result<(), String> {
        // Every side of the image square is an identity, so the corner maps
        // isomorphically (identically) onto the fiber.
        Ok(())
    }

    fn sample_image_cones(
        &self,
        _square: &Square,
        x: &C::Obj,
        seed: u64,
        budget: usize,
    ) -> Vec<(C::Mor, C::Mor)> {
        self.category
            .sample_morphisms_into(x, seed, budget)
            .into_iter()
            .map(|f| (f.clone(), f))
            .collect()
    }

    fn lift_image_cone(
        &self,
        _square: &Square,
        _x: &C::Obj,
        leg_right: &C::Mor,
        leg_bottom: &C::Mor,
    ) -> Result<C::Mor, String> {
        if leg_right != leg_bottom {
            return Err("legs of a cone over an identity square must agree".to_string());
        }
        Ok(leg_right.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{self, structure_maps};
    use crate::instances::WeilCat;
    use crate::sample::{self, SampleBounds};

    #[test]
    fn trivial_action_satisfies_every_law() {
        let action = TrivialAction::new(WeilCat);
        let mut rng = sample::rng_from_seed(3);
        let bounds = SampleBounds::default();
        let morphisms: Vec<_> = (0..6)
            .flat_map(|_| sample::morphism_chain(&mut rng, 2, &bounds))
            .collect();
        let objects: Vec<WeilAlgebra> = morphisms.iter().map(|f| f.source().clone()).collect();
        let weil_samples = sample::morphism_chain(&mut rng, 3, &bounds);
        let report = engine::verify_action_laws(&action, &objects, &morphisms, &weil_samples);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn trivial_pullbacks_lift_uniquely() {
        let action = TrivialAction::new(WeilCat);
        let objects = vec![WeilAlgebra::nat(), WeilAlgebra::w_tensor(1)];
        let reports = engine::verify_tangent_pullbacks(
            &action,
            &WeilAlgebra::nat(),
            1,
            1,
            &objects,
            9,
            25,
        )
        .expect("squares build");
        for report in &reports {
            assert!(report.passed(), "{report}");
            assert!(report.cones_checked > 0);
        }
    }

    #[test]
    fn trivial_structure_maps_are_identities() {
        let action = TrivialAction::new(WeilCat);
        let x = WeilAlgebra::w_tensor(1);
        let (maps, failures) = structure_maps(&action, &x);
        assert!(failures.is_empty(), "{failures:?}");
        assert_eq!(maps.projection, WeilMorphism::identity(&x));
        assert_eq!(maps.lift, WeilMorphism::identity(&x));
    }
}
