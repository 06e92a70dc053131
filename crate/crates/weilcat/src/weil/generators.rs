//! The five structure morphisms of the tangent monad plus the universal
//! vertical-lift map μ, all given by explicit generator images.

use super::{Element, Monomial, WeilAlgebra, WeilMorphism};

fn gen(a: &WeilAlgebra, i: u32) -> Element {
    Element::generator(a.clone(), i).expect("index in range")
}

fn mono(a: &WeilAlgebra, indices: &[u32]) -> Element {
    let m = Monomial::from_sorted(indices.to_vec()).expect("indices sorted");
    Element::monomial(a.clone(), m).expect("monomial valid")
}

/// Augmentation A → ℕ, every generator to 0.
pub fn augmentation(a: &WeilAlgebra) -> WeilMorphism {
    let images = (0..a.generator_count())
        .map(|_| Element::zero(WeilAlgebra::nat()))
        .collect();
    WeilMorphism::new(a.clone(), WeilAlgebra::nat(), images).expect("zero images form a morphism")
}

/// Unit ℕ → A; there are no generators to map.
pub fn unit(a: &WeilAlgebra) -> WeilMorphism {
    WeilMorphism::new(WeilAlgebra::nat(), a.clone(), Vec::new())
        .expect("the empty image list is a morphism")
}

/// ε: W → ℕ, x ↦ 0 (projection of the tangent bundle).
pub fn epsilon() -> WeilMorphism {
    augmentation(&WeilAlgebra::w())
}

/// η: ℕ → W (zero section).
pub fn eta() -> WeilMorphism {
    unit(&WeilAlgebra::w())
}

/// plus: W² → W, x ↦ z, y ↦ z (fibrewise addition).
pub fn plus() -> WeilMorphism {
    let w2 = WeilAlgebra::w_pow(2).expect("width 2");
    let w = WeilAlgebra::w();
    WeilMorphism::new(w2, w.clone(), vec![gen(&w, 1), gen(&w, 1)])
        .expect("z·z = 0 in W")
}

/// σ: W⊗W → W⊗W, x ↦ y, y ↦ x (the canonical flip).
pub fn sigma() -> WeilMorphism {
    let ww = WeilAlgebra::w_tensor(2);
    WeilMorphism::new(ww.clone(), ww.clone(), vec![gen(&ww, 2), gen(&ww, 1)])
        .expect("swapping blocks preserves relations")
}

/// δ: W → W⊗W, z ↦ xy (the vertical lift).
pub fn delta() -> WeilMorphism {
    let w = WeilAlgebra::w();
    let ww = WeilAlgebra::w_tensor(2);
    WeilMorphism::new(w, ww.clone(), vec![mono(&ww, &[1, 2])]).expect("(xy)² = 0")
}

/// μ: W² → W⊗W, x ↦ ab, y ↦ b (top of the vertical-lift pullback).
pub fn mu() -> WeilMorphism {
    let w2 = WeilAlgebra::w_pow(2).expect("width 2");
    let ww = WeilAlgebra::w_tensor(2);
    WeilMorphism::new(w2, ww.clone(), vec![mono(&ww, &[1, 2]), gen(&ww, 2)])
        .expect("ab·b = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::compose;

    #[test]
    fn images_match_their_definitions() {
        assert_eq!(epsilon().to_string(), "[W -> N]{ x1 -> 0 }");
        assert_eq!(eta().to_string(), "[N -> W]{ }");
        assert_eq!(plus().to_string(), "[W^2 -> W]{ x1 -> x1 ; x2 -> x1 }");
        assert_eq!(sigma().to_string(), "[W@W -> W@W]{ x1 -> x2 ; x2 -> x1 }");
        assert_eq!(delta().to_string(), "[W -> W@W]{ x1 -> x1*x2 }");
        assert_eq!(mu().to_string(), "[W^2 -> W@W]{ x1 -> x1*x2 ; x2 -> x2 }");
    }

    #[test]
    fn monad_identities() {
        // ε∘η = 1_ℕ, σ∘σ = 1, σ∘δ = δ.
        let id_n = WeilMorphism::identity(&WeilAlgebra::nat());
        assert_eq!(compose(&epsilon(), &eta()).unwrap(), id_n);
        let s = sigma();
        assert_eq!(
            compose(&s, &s).unwrap(),
            WeilMorphism::identity(&WeilAlgebra::w_tensor(2))
        );
        assert_eq!(compose(&s, &delta()).unwrap(), delta());
    }
}
