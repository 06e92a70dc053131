use std::fmt;

use super::{Element, Monomial, Natural, WeilAlgebra, WeilError};

/// Outcome of the homomorphism check on candidate generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomVerdict {
    Hom,
    /// Witness: source generators i ∼ j whose image product is nonzero.
    Violation { i: u32, j: u32, product: Element },
}

impl HomVerdict {
    pub fn is_hom(&self) -> bool {
        matches!(self, HomVerdict::Hom)
    }
}

/// Checks that generator images define a morphism `source → target`.
///
/// The images must already be shape-valid (one per source generator, all in
/// `target`); shape problems are reported as errors, not verdicts. The
/// morphism condition is that every related pair i ∼ j of source generators
/// (squares included) has `images[i]·images[j] = 0`, since all other
/// relations are generated by these.
pub fn check_hom(
    source: &WeilAlgebra,
    target: &WeilAlgebra,
    images: &[Element],
) -> Result<HomVerdict, WeilError> {
    let n = source.generator_count();
    if images.len() != n as usize {
        return Err(WeilError::ImageCount {
            expected: n,
            found: images.len() as u32,
        });
    }
    for e in images {
        if e.ambient() != target {
            return Err(WeilError::AmbientMismatch {
                expected: target.to_string(),
                found: e.ambient().to_string(),
            });
        }
    }
    let mut start = 1u32;
    for &w in source.widths() {
        for i in start..start + w {
            for j in i..start + w {
                let product = images[(i - 1) as usize].mul(&images[(j - 1) as usize])?;
                if !product.is_zero() {
                    return Ok(HomVerdict::Violation { i, j, product });
                }
            }
        }
        start += w;
    }
    Ok(HomVerdict::Hom)
}

/// A morphism of Weil ℕ-algebras, stored as the images of the source
/// generators. Every constructed value satisfies [`check_hom`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilMorphism {
    source: WeilAlgebra,
    target: WeilAlgebra,
    images: Vec<Element>,
}

impl WeilMorphism {
    pub fn new(
        source: WeilAlgebra,
        target: WeilAlgebra,
        images: Vec<Element>,
    ) -> Result<Self, WeilError> {
        match check_hom(&source, &target, &images)? {
            HomVerdict::Hom => Ok(WeilMorphism {
                source,
                target,
                images,
            }),
            HomVerdict::Violation { i, j, .. } => Err(WeilError::NotAHom { i, j }),
        }
    }

    pub fn identity(a: &WeilAlgebra) -> Self {
        let images = (1..=a.generator_count())
            .map(|i| Element::generator(a.clone(), i).expect("index in range"))
            .collect();
        WeilMorphism {
            source: a.clone(),
            target: a.clone(),
            images,
        }
    }

    pub fn source(&self) -> &WeilAlgebra {
        &self.source
    }

    pub fn target(&self) -> &WeilAlgebra {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, generator: u32) -> Result<&Element, WeilError> {
        self.source.block_of(generator)?;
        Ok(&self.images[(generator - 1) as usize])
    }

    pub fn is_identity(&self) -> bool {
        *self == WeilMorphism::identity(&self.source)
    }

    /// Substitutes generator images into a nonconstant monomial.
    pub fn eval_monomial(&self, m: &Monomial) -> Result<Element, WeilError> {
        if m.is_one() {
            return Err(WeilError::ConstantTerm);
        }
        let mut acc: Option<Element> = None;
        for &i in m.indices() {
            let img = self.image(i)?;
            acc = Some(match acc {
                None => img.clone(),
                Some(e) => e.mul(img)?,
            });
        }
        Ok(acc.expect("monomial is nonconstant"))
    }

    /// Applies the morphism to an element of the source.
    pub fn eval(&self, e: &Element) -> Result<Element, WeilError> {
        if e.ambient() != &self.source {
            return Err(WeilError::AmbientMismatch {
                expected: self.source.to_string(),
                found: e.ambient().to_string(),
            });
        }
        let mut out = Element::zero(self.target.clone());
        for (m, c) in e.terms() {
            out = out.add(&self.eval_monomial(m)?.scale(c))?;
        }
        Ok(out)
    }

    /// Composition `outer ∘ self`; the images are `outer` applied to this
    /// morphism's images. The result is re-validated on construction.
    pub fn then(&self, outer: &WeilMorphism) -> Result<WeilMorphism, WeilError> {
        if self.target != outer.source {
            return Err(WeilError::BoundaryMismatch {
                inner_target: self.target.to_string(),
                outer_source: outer.source.to_string(),
            });
        }
        let images = self
            .images
            .iter()
            .map(|e| outer.eval(e))
            .collect::<Result<Vec<_>, _>>()?;
        WeilMorphism::new(self.source.clone(), outer.target.clone(), images)
    }

    /// Blockwise tensor of morphisms: acts as `self` on the first factor's
    /// generators and as `other`, shifted, on the second factor's.
    pub fn tensor(&self, other: &WeilMorphism) -> WeilMorphism {
        let source = self.source.tensor(&other.source);
        let target = self.target.tensor(&other.target);
        let shift = self.target.generator_count();
        let mut images = Vec::with_capacity(source.generator_count() as usize);
        for e in &self.images {
            images.push(
                e.embed(target.clone(), 0)
                    .expect("first-factor embedding preserves blocks"),
            );
        }
        for e in &other.images {
            images.push(
                e.embed(target.clone(), shift)
                    .expect("second-factor embedding preserves blocks"),
            );
        }
        WeilMorphism::new(source, target, images).expect("tensor of morphisms is a morphism")
    }
}

/// Composition in application order: `compose(outer, inner) = outer ∘ inner`.
pub fn compose(outer: &WeilMorphism, inner: &WeilMorphism) -> Result<WeilMorphism, WeilError> {
    inner.then(outer)
}

impl fmt::Display for WeilMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} -> {}]{{", self.source, self.target)?;
        if self.images.is_empty() {
            return write!(f, " }}");
        }
        let body: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(k, e)| format!("x{} -> {}", k + 1, e))
            .collect();
        write!(f, " {} }}", body.join(" ; "))
    }
}

#[allow(dead_code)]
pub(crate) fn natural(n: u32) -> Natural {
    Natural::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::generators;

    fn nat(n: u32) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn remark_morphism_corrected_is_a_hom() {
        // W² → W⊗W with x ↦ 2x₁ + x₁x₂ and y ↦ 3x₁x₂. Both squares and the
        // mixed product vanish, so this is a morphism.
        let w2 = WeilAlgebra::w_pow(2).unwrap();
        let ww = WeilAlgebra::w_tensor(2);
        let x1 = Monomial::from_sorted(vec![1]).unwrap();
        let x1x2 = Monomial::from_sorted(vec![1, 2]).unwrap();
        let img_x =
            Element::from_terms(ww.clone(), [(x1, nat(2)), (x1x2.clone(), nat(1))]).unwrap();
        let img_y = Element::from_terms(ww.clone(), [(x1x2, nat(3))]).unwrap();
        let verdict = check_hom(&w2, &ww, &[img_x.clone(), img_y.clone()]).unwrap();
        assert!(verdict.is_hom());
        assert!(WeilMorphism::new(w2, ww, vec![img_x, img_y]).is_ok());
    }

    #[test]
    fn square_relations_are_enforced() {
        // x ↦ 2x₁ + x₁x₂ + x₂ has φ(x)² = 4x₁x₂ ≠ 0, even though the mixed
        // product with y ↦ 3x₁x₂ is 0. The witness is the square (1,1).
        let w2 = WeilAlgebra::w_pow(2).unwrap();
        let ww = WeilAlgebra::w_tensor(2);
        let x1 = Monomial::from_sorted(vec![1]).unwrap();
        let x2 = Monomial::from_sorted(vec![2]).unwrap();
        let x1x2 = Monomial::from_sorted(vec![1, 2]).unwrap();
        let img_x = Element::from_terms(
            ww.clone(),
            [(x1, nat(2)), (x1x2.clone(), nat(1)), (x2, nat(1))],
        )
        .unwrap();
        let img_y = Element::from_terms(ww.clone(), [(x1x2, nat(3))]).unwrap();
        assert!(img_x.mul(&img_y).unwrap().is_zero());
        match check_hom(&w2, &ww, &[img_x, img_y]).unwrap() {
            HomVerdict::Violation { i, j, product } => {
                assert_eq!((i, j), (1, 1));
                assert_eq!(product.to_string(), "4*x1*x2");
            }
            HomVerdict::Hom => panic!("square violation must be caught"),
        }
    }

    #[test]
    fn unrelated_images_of_related_generators_fail() {
        // W² → W⊗W, x ↦ x₁, y ↦ x₂: x ∼ y in the source but x₁x₂ ≠ 0.
        let w2 = WeilAlgebra::w_pow(2).unwrap();
        let ww = WeilAlgebra::w_tensor(2);
        let a = Element::generator(ww.clone(), 1).unwrap();
        let b = Element::generator(ww.clone(), 2).unwrap();
        let verdict = check_hom(&w2, &ww, &[a, b]).unwrap();
        match verdict {
            HomVerdict::Violation { i, j, product } => {
                assert_eq!((i, j), (1, 2));
                assert_eq!(product.to_string(), "x1*x2");
            }
            HomVerdict::Hom => panic!("expected a violation"),
        }
    }

    #[test]
    fn named_generators_are_homs() {
        // Constructors run check_hom; reaching here means all five passed.
        let _ = generators::epsilon();
        let _ = generators::eta();
        let _ = generators::plus();
        let _ = generators::sigma();
        let _ = generators::delta();
        let _ = generators::mu();
    }

    #[test]
    fn compose_is_substitution() {
        // δ then (1⊗ε): z ↦ x₁x₂ ↦ 0.
        let delta = generators::delta();
        let proj = generators::epsilon().tensor(&WeilMorphism::identity(&WeilAlgebra::w()));
        // proj: W⊗W → W with x₁ ↦ 0, x₂ ↦ x₁.
        let comp = compose(&proj, &delta).unwrap();
        assert!(comp.images()[0].is_zero());
    }

    #[test]
    fn eval_is_multiplicative_on_products() {
        let mu = generators::mu();
        let w2 = mu.source().clone();
        let x = Element::generator(w2.clone(), 1).unwrap();
        let y = Element::generator(w2.clone(), 2).unwrap();
        let xy = x.mul(&y).unwrap();
        assert!(xy.is_zero());
        let img = mu.eval(&x.add(&y).unwrap()).unwrap();
        assert_eq!(img.to_string(), "x2 + x1*x2");
    }

    #[test]
    fn tensor_of_morphisms_acts_blockwise() {
        let eps = generators::epsilon();
        let id_w = WeilMorphism::identity(&WeilAlgebra::w());
        let m = eps.tensor(&id_w);
        assert_eq!(m.source(), &WeilAlgebra::w_tensor(2));
        assert_eq!(m.target(), &WeilAlgebra::w());
        assert!(m.images()[0].is_zero());
        assert_eq!(m.images()[1].to_string(), "x1");
    }

    #[test]
    fn interchange_of_tensor_and_composition() {
        let mu = generators::mu();
        let plus = generators::plus();
        let delta = generators::delta();
        let eps = generators::epsilon();
        // (δ∘ε-side) ⊗ (μ∘plus-side) both ways... use composable pairs:
        // f2∘f1 with f1 = plus: W² → W, f2 = δ: W → W⊗W
        // g2∘g1 with g1 = mu: W² → W⊗W, g2 = ε⊗ε: W⊗W → N.
        let epseps = eps.tensor(&eps);
        let lhs = compose(&delta.tensor(&epseps), &plus.tensor(&mu)).unwrap();
        let rhs = compose(&delta, &plus)
            .unwrap()
            .tensor(&compose(&epseps, &mu).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_and_identity() {
        let id = WeilMorphism::identity(&WeilAlgebra::w_tensor(2));
        assert!(id.is_identity());
        assert_eq!(id.to_string(), "[W@W -> W@W]{ x1 -> x1 ; x2 -> x2 }");
    }
}
