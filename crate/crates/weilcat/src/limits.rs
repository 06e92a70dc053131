//! Tangent pullback squares in 𝕎eil with constructive lifts.
//!
//! Two families of squares are built here: the foundational squares
//!
//! ```text
//!   A⊗W^{m+n} ──top──▶ A⊗W^m
//!       │                 │
//!     left              right
//!       ▼                 ▼
//!   A⊗W^n  ──bottom──▶    A
//! ```
//!
//! with all maps induced by augmentations, and the vertical-lift square with
//! top μ: W² → W⊗W, x ↦ ab, y ↦ b. Both families (and their tensor
//! translates) are pullbacks, witnessed structurally: the pair (top, left)
//! maps the corner's monomial basis bijectively onto the canonical basis of
//! the fiber product of right and bottom. That certificate simultaneously
//! proves uniqueness of lifts and drives the lift algorithm, which transports
//! coefficients backwards along the bijection. On the vertical square the
//! transport reads as the substitution ab ↦ x, b ↦ y; on foundational squares
//! it reassembles the A-only part shared by both legs with the two
//! single-generator parts.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::sample::{self, SampleBounds};
use crate::weil::{
    compose, generators, Element, Monomial, Natural, WeilAlgebra, WeilError, WeilMorphism,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitsError {
    #[error("foundational squares need m ≥ 1 and n ≥ 1 (got m={m}, n={n})")]
    BadParameter { m: u32, n: u32 },
    #[error("square does not commute: right∘top ≠ bottom∘left")]
    NotCommuting,
    #[error("cone legs do not match the square: {0}")]
    ConeBoundary(String),
    #[error("cone condition fails: right∘leg_right ≠ bottom∘leg_bottom")]
    ConeMismatch,
    #[error("square carries no uniqueness certificate: {0}")]
    Uncertified(String),
    #[error("lift algorithm reached an inconsistent state: {0}")]
    Internal(String),
    #[error(transparent)]
    Weil(#[from] WeilError),
}

/// How a square was built; used for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareKind {
    Foundational { base: WeilAlgebra, m: u32, n: u32 },
    VerticalLift,
    TensoredLeft { ambient: WeilAlgebra, inner: Box<SquareKind> },
    TensoredRight { ambient: WeilAlgebra, inner: Box<SquareKind> },
}

impl fmt::Display for SquareKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareKind::Foundational { base, m, n } => {
                write!(f, "foundational({base}, m={m}, n={n})")
            }
            SquareKind::VerticalLift => write!(f, "vertical"),
            SquareKind::TensoredLeft { ambient, inner } => write!(f, "{ambient} @ ({inner})"),
            SquareKind::TensoredRight { ambient, inner } => write!(f, "({inner}) @ {ambient}"),
        }
    }
}

/// A commuting square of Weil morphisms with corner P = source(top) =
/// source(left), oriented as in the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    kind: SquareKind,
    top: WeilMorphism,
    left: WeilMorphism,
    right: WeilMorphism,
    bottom: WeilMorphism,
}

impl Square {
    pub fn from_parts(
        kind: SquareKind,
        top: WeilMorphism,
        left: WeilMorphism,
        right: WeilMorphism,
        bottom: WeilMorphism,
    ) -> Result<Self, LimitsError> {
        if top.source() != left.source()
            || top.target() != right.source()
            || left.target() != bottom.source()
            || right.target() != bottom.target()
        {
            return Err(LimitsError::ConeBoundary(
                "square sides do not share corners".to_string(),
            ));
        }
        if compose(&right, &top)? != compose(&bottom, &left)? {
            return Err(LimitsError::NotCommuting);
        }
        Ok(Square {
            kind,
            top,
            left,
            right,
            bottom,
        })
    }

    pub fn kind(&self) -> &SquareKind {
        &self.kind
    }

    pub fn corner(&self) -> &WeilAlgebra {
        self.top.source()
    }

    pub fn top(&self) -> &WeilMorphism {
        &self.top
    }

    pub fn left(&self) -> &WeilMorphism {
        &self.left
    }

    pub fn right(&self) -> &WeilMorphism {
        &self.right
    }

    pub fn bottom(&self) -> &WeilMorphism {
        &self.bottom
    }

    /// The square B ⊗ (−), every side tensored with the identity of `b` on
    /// the left.
    pub fn tensor_left(&self, b: &WeilAlgebra) -> Square {
        let id = WeilMorphism::identity(b);
        Square {
            kind: SquareKind::TensoredLeft {
                ambient: b.clone(),
                inner: Box::new(self.kind.clone()),
            },
            top: id.tensor(&self.top),
            left: id.tensor(&self.left),
            right: id.tensor(&self.right),
            bottom: id.tensor(&self.bottom),
        }
    }

    /// The square (−) ⊗ B.
    pub fn tensor_right(&self, b: &WeilAlgebra) -> Square {
        let id = WeilMorphism::identity(b);
        Square {
            kind: SquareKind::TensoredRight {
                ambient: b.clone(),
                inner: Box::new(self.kind.clone()),
            },
            top: self.top.tensor(&id),
            left: self.left.tensor(&id),
            right: self.right.tensor(&id),
            bottom: self.bottom.tensor(&id),
        }
    }
}

/// Projection W^{total} → W^{keep} retaining the first `keep` generators
/// (`from_start`) or the last `keep` generators, killing the rest.
fn wpow_projection(total: u32, keep: u32, from_start: bool) -> WeilMorphism {
    let src = WeilAlgebra::w_pow(total).expect("total ≥ 1");
    let tgt = WeilAlgebra::w_pow(keep).expect("keep ≥ 1");
    let images = (1..=total)
        .map(|j| {
            let kept = if from_start {
                (j <= keep).then_some(j)
            } else {
                (j > total - keep).then(|| j - (total - keep))
            };
            match kept {
                Some(i) => Element::generator(tgt.clone(), i).expect("index in range"),
                None => Element::zero(tgt.clone()),
            }
        })
        .collect();
    WeilMorphism::new(src, tgt, images).expect("indiscrete targets absorb all products")
}

/// The foundational pullback square on A⊗W^{m+n}.
pub fn foundational_square(base: &WeilAlgebra, m: u32, n: u32) -> Result<Square, LimitsError> {
    if m == 0 || n == 0 {
        return Err(LimitsError::BadParameter { m, n });
    }
    let id_a = WeilMorphism::identity(base);
    let top = id_a.tensor(&wpow_projection(m + n, m, true));
    let left = id_a.tensor(&wpow_projection(m + n, n, false));
    let right = id_a.tensor(&generators::augmentation(
        &WeilAlgebra::w_pow(m).expect("m ≥ 1"),
    ));
    let bottom = id_a.tensor(&generators::augmentation(
        &WeilAlgebra::w_pow(n).expect("n ≥ 1"),
    ));
    Square::from_parts(
        SquareKind::Foundational {
            base: base.clone(),
            m,
            n,
        },
        top,
        left,
        right,
        bottom,
    )
}

/// The vertical-lift pullback square on W².
pub fn vertical_square() -> Square {
    let top = generators::mu();
    let left = generators::augmentation(&WeilAlgebra::w_pow(2).expect("width 2"));
    let right = WeilMorphism::identity(&WeilAlgebra::w()).tensor(&generators::epsilon());
    let bottom = generators::eta();
    Square::from_parts(SquareKind::VerticalLift, top, left, right, bottom)
        .expect("the vertical square commutes")
}

/// A cone over a square: legs from an apex to the two non-corner sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub apex: WeilAlgebra,
    pub leg_right: WeilMorphism,
    pub leg_bottom: WeilMorphism,
}

impl Cone {
    pub fn new(leg_right: WeilMorphism, leg_bottom: WeilMorphism) -> Result<Self, LimitsError> {
        if leg_right.source() != leg_bottom.source() {
            return Err(LimitsError::ConeBoundary(
                "legs have different apexes".to_string(),
            ));
        }
        Ok(Cone {
            apex: leg_right.source().clone(),
            leg_right,
            leg_bottom,
        })
    }
}

/// Why a square fails the structural pullback certificate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateFailure {
    #[error("{side} sends basis monomial {monomial} to a non-monomial image {image}")]
    NonMonomialImage {
        side: &'static str,
        monomial: String,
        image: String,
    },
    #[error("fiber product over monomial {over} is not free: {right_preimages} right preimages and {bottom_preimages} bottom preimages")]
    NonFreeFiber {
        over: String,
        right_preimages: usize,
        bottom_preimages: usize,
    },
    #[error("corner monomials {first} and {second} have identical images under (top, left)")]
    Collision { first: String, second: String },
    #[error("corner monomial {monomial} maps to pair ({top}, {left}) outside the fiber-product basis")]
    NotInFiber {
        monomial: String,
        top: String,
        left: String,
    },
    #[error("fiber-product basis pair ({top}, {left}) is not hit by any corner monomial")]
    NotOnto { top: String, left: String },
}

fn opt_label(m: &Option<Monomial>) -> String {
    match m {
        Some(m) => m.to_string(),
        None => "0".to_string(),
    }
}

/// A successful certificate: the corner basis together with the monomial (or
/// zero) each leg sends it to. Lifts read coefficients back through these
/// tables; their injectivity-onto-the-fiber-basis is what makes the lift
/// unique.
#[derive(Debug, Clone)]
pub struct Certificate {
    corner_basis: Vec<Monomial>,
    top_images: Vec<Option<Monomial>>,
    left_images: Vec<Option<Monomial>>,
}

/// The image of a basis monomial under a morphism, required to be zero or a
/// single coefficient-1 monomial.
fn monomial_image(
    mor: &WeilMorphism,
    m: &Monomial,
    side: &'static str,
) -> Result<Option<Monomial>, CertificateFailure> {
    if m.is_one() {
        return Ok(Some(Monomial::one()));
    }
    let image = mor.eval_monomial(m).expect("basis monomial is valid");
    if image.is_zero() {
        return Ok(None);
    }
    let mut terms = image.terms();
    let (mono, coef) = terms.next().expect("nonzero element has a term");
    if terms.next().is_some() || *coef != Natural::from(1u32) {
        return Err(CertificateFailure::NonMonomialImage {
            side,
            monomial: m.to_string(),
            image: image.to_string(),
        });
    }
    Ok(Some(mono.clone()))
}

/// Checks that (top, left) maps the corner basis bijectively onto the
/// canonical basis of the fiber product of right and bottom.
pub fn certify(square: &Square) -> Result<Certificate, CertificateFailure> {
    let basis_b = square.top.target().basis();
    let basis_c = square.left.target().basis();

    let right_images: Vec<Option<Monomial>> = basis_b
        .iter()
        .map(|m| monomial_image(&square.right, m, "right"))
        .collect::<Result<_, _>>()?;
    let bottom_images: Vec<Option<Monomial>> = basis_c
        .iter()
        .map(|m| monomial_image(&square.bottom, m, "bottom"))
        .collect::<Result<_, _>>()?;

    // Canonical fiber-product basis: matched pairs over each base monomial
    // plus the kernel summands of either side.
    let mut right_fibers: BTreeMap<Monomial, Vec<usize>> = BTreeMap::new();
    for (i, img) in right_images.iter().enumerate() {
        if let Some(a) = img {
            right_fibers.entry(a.clone()).or_default().push(i);
        }
    }
    let mut bottom_fibers: BTreeMap<Monomial, Vec<usize>> = BTreeMap::new();
    for (j, img) in bottom_images.iter().enumerate() {
        if let Some(a) = img {
            bottom_fibers.entry(a.clone()).or_default().push(j);
        }
    }

    let mut fiber: BTreeMap<(Option<Monomial>, Option<Monomial>), bool> = BTreeMap::new();
    for (a, us) in &right_fibers {
        if let Some(vs) = bottom_fibers.get(a) {
            if us.len() > 1 || vs.len() > 1 {
                return Err(CertificateFailure::NonFreeFiber {
                    over: a.to_string(),
                    right_preimages: us.len(),
                    bottom_preimages: vs.len(),
                });
            }
            fiber.insert(
                (
                    Some(basis_b[us[0]].clone()),
                    Some(basis_c[vs[0]].clone()),
                ),
                false,
            );
        }
    }
    for (i, img) in right_images.iter().enumerate() {
        if img.is_none() {
            fiber.insert((Some(basis_b[i].clone()), None), false);
        }
    }
    for (j, img) in bottom_images.iter().enumerate() {
        if img.is_none() {
            fiber.insert((None, Some(basis_c[j].clone())), false);
        }
    }

    let corner_basis = square.corner().basis();
    let mut top_images = Vec::with_capacity(corner_basis.len());
    let mut left_images = Vec::with_capacity(corner_basis.len());
    for w in &corner_basis {
        let t = monomial_image(&square.top, w, "top")?;
        let l = monomial_image(&square.left, w, "left")?;
        match fiber.get_mut(&(t.clone(), l.clone())) {
            Some(seen @ false) => *seen = true,
            Some(true) => {
                let first = corner_basis
                    .iter()
                    .take_while(|prev| {
                        monomial_image(&square.top, prev, "top").ok() != Some(t.clone())
                            || monomial_image(&square.left, prev, "left").ok() != Some(l.clone())
                    })
                    .count();
                return Err(CertificateFailure::Collision {
                    first: corner_basis[first].to_string(),
                    second: w.to_string(),
                });
            }
            None => {
                return Err(CertificateFailure::NotInFiber {
                    monomial: w.to_string(),
                    top: opt_label(&t),
                    left: opt_label(&l),
                });
            }
        }
        top_images.push(t);
        left_images.push(l);
    }
    if let Some(((t, l), _)) = fiber.iter().find(|(_, seen)| !**seen) {
        return Err(CertificateFailure::NotOnto {
            top: opt_label(t),
            left: opt_label(l),
        });
    }
    Ok(Certificate {
        corner_basis,
        top_images,
        left_images,
    })
}

/// Computes the unique lift of a cone through the square's corner.
///
/// Coefficients of the lift are read off leg images through the certificate
/// tables: a corner monomial seen by `top` takes its coefficient from
/// `leg_right`, the remaining ones (killed by `top`) from `leg_bottom`. Both
/// leg equations are then re-verified exactly.
pub fn lift_cone(square: &Square, cone: &Cone) -> Result<WeilMorphism, LimitsError> {
    if cone.leg_right.target() != square.top.target() {
        return Err(LimitsError::ConeBoundary(format!(
            "leg_right lands in {}, square needs {}",
            cone.leg_right.target(),
            square.top.target()
        )));
    }
    if cone.leg_bottom.target() != square.left.target() {
        return Err(LimitsError::ConeBoundary(format!(
            "leg_bottom lands in {}, square needs {}",
            cone.leg_bottom.target(),
            square.left.target()
        )));
    }
    if compose(&square.right, &cone.leg_right)? != compose(&square.bottom, &cone.leg_bottom)? {
        return Err(LimitsError::ConeMismatch);
    }
    let cert = certify(square).map_err(|e| LimitsError::Uncertified(e.to_string()))?;

    let corner = square.corner().clone();
    let mut images = Vec::with_capacity(cone.apex.generator_count() as usize);
    for g in 1..=cone.apex.generator_count() {
        let el_r = cone.leg_right.image(g)?;
        let el_b = cone.leg_bottom.image(g)?;
        let mut terms: Vec<(Monomial, Natural)> = Vec::new();
        for (idx, w) in cert.corner_basis.iter().enumerate() {
            if w.is_one() {
                continue;
            }
            let coef = match (&cert.top_images[idx], &cert.left_images[idx]) {
                (Some(u), _) if !u.is_one() => el_r.coefficient(u),
                (_, Some(v)) if !v.is_one() => el_b.coefficient(v),
                _ => {
                    return Err(LimitsError::Internal(format!(
                        "corner monomial {w} has no nonconstant leg image"
                    )))
                }
            };
            terms.push((w.clone(), coef));
        }
        images.push(Element::from_terms(corner.clone(), terms)?);
    }
    let lift = WeilMorphism::new(cone.apex.clone(), corner, images)
        .map_err(|e| LimitsError::Internal(format!("lift candidate is not a morphism: {e}")))?;

    if compose(&square.top, &lift)? != cone.leg_right
        || compose(&square.left, &lift)? != cone.leg_bottom
    {
        return Err(LimitsError::Internal(
            "lift does not reproduce the cone legs".to_string(),
        ));
    }
    Ok(lift)
}

/// A sampled cone remembers the morphism it was projected from, so
/// verification can also confirm the lift reproduces it exactly.
#[derive(Debug, Clone)]
pub struct SampledCone {
    pub cone: Cone,
    pub witness: WeilMorphism,
}

/// Samples cones by projecting random morphisms into the corner. Every cone
/// over a pullback arises this way, and the distribution bounds are the
/// documented ones.
pub fn sample_cones(square: &Square, seed: u64, budget: usize) -> Vec<SampledCone> {
    let mut rng = sample::rng_from_seed(seed);
    let bounds = SampleBounds::default();
    (0..budget)
        .map(|_| {
            let apex = sample::algebra(&mut rng, &bounds);
            let witness = sample::morphism(&mut rng, &apex, square.corner(), &bounds);
            let leg_right = compose(&square.top, &witness).expect("witness lands in the corner");
            let leg_bottom = compose(&square.left, &witness).expect("witness lands in the corner");
            SampledCone {
                cone: Cone::new(leg_right, leg_bottom).expect("legs share the witness apex"),
                witness,
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ConeFailure {
    pub index: usize,
    pub reason: String,
}

/// Outcome of verifying a square: the one-time structural certificate plus
/// per-cone lift checks. `certified_unique` distinguishes structural
/// uniqueness from merely sampled evidence.
#[derive(Debug, Clone)]
pub struct PullbackReport {
    pub square: String,
    pub certified_unique: bool,
    pub certificate_failure: Option<String>,
    pub cones_checked: usize,
    pub failures: Vec<ConeFailure>,
    pub seed: Option<u64>,
}

impl PullbackReport {
    pub fn passed(&self) -> bool {
        self.certified_unique && self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "square": self.square,
            "certified_unique": self.certified_unique,
            "certificate_failure": self.certificate_failure,
            "cones_checked": self.cones_checked,
            "failures": self.failures.iter().map(|f| json!({
                "cone": f.index,
                "reason": f.reason,
            })).collect::<Vec<_>>(),
            "seed": self.seed,
        })
    }
}

impl fmt::Display for PullbackReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "square: {}", self.square)?;
        match &self.certificate_failure {
            None => writeln!(f, "uniqueness certificate: ok (jointly injective on the corner basis)")?,
            Some(reason) => writeln!(f, "uniqueness certificate: FAILED ({reason})")?,
        }
        if let Some(seed) = self.seed {
            writeln!(f, "seed: {seed}")?;
        }
        writeln!(f, "cones checked: {}", self.cones_checked)?;
        if self.failures.is_empty() {
            write!(f, "all sampled cones lift uniquely")
        } else {
            for fail in &self.failures {
                writeln!(f, "cone {}: {}", fail.index, fail.reason)?;
            }
            write!(f, "{} cone(s) failed", self.failures.len())
        }
    }
}

/// Verifies the square against explicit cones.
pub fn verify_pullback<I>(square: &Square, cones: I) -> PullbackReport
where
    I: IntoIterator<Item = Cone>,
{
    verify_inner(square, cones.into_iter().map(|c| (c, None)), None)
}

/// Verifies the square against `budget` seeded cones, additionally checking
/// that each lift reproduces the morphism the cone was projected from.
pub fn verify_pullback_seeded(square: &Square, seed: u64, budget: usize) -> PullbackReport {
    let cones = sample_cones(square, seed, budget)
        .into_iter()
        .map(|s| (s.cone, Some(s.witness)));
    verify_inner(square, cones, Some(seed))
}

fn verify_inner<I>(square: &Square, cones: I, seed: Option<u64>) -> PullbackReport
where
    I: Iterator<Item = (Cone, Option<WeilMorphism>)>,
{
    let certificate = certify(square);
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for (index, (cone, witness)) in cones.enumerate() {
        checked += 1;
        match lift_cone(square, &cone) {
            Ok(lift) => {
                if let Some(w) = witness {
                    if lift != w {
                        failures.push(ConeFailure {
                            index,
                            reason: "lift differs from the generating morphism".to_string(),
                        });
                    }
                }
            }
            Err(e) => failures.push(ConeFailure {
                index,
                reason: e.to_string(),
            }),
        }
    }
    PullbackReport {
        square: square.kind().to_string(),
        certified_unique: certificate.is_ok(),
        certificate_failure: certificate.err().map(|e| e.to_string()),
        cones_checked: checked,
        failures,
        seed,
    }
}

/// The corrupted vertical square used as a negative control: μ is replaced
/// by x ↦ ab, y ↦ a, which still commutes with the same sides only after
/// swapping the right leg, so the square is rebuilt from scratch without the
/// commutation check.
pub fn corrupted_vertical_square() -> Square {
    let ww = WeilAlgebra::w_tensor(2);
    let w2 = WeilAlgebra::w_pow(2).expect("width 2");
    let ab = Element::monomial(
        ww.clone(),
        Monomial::from_sorted(vec![1, 2]).expect("sorted"),
    )
    .expect("valid monomial");
    let a = Element::generator(ww.clone(), 1).expect("index in range");
    let top = WeilMorphism::new(w2.clone(), ww, vec![ab, a]).expect("ab·a = 0");
    Square {
        kind: SquareKind::VerticalLift,
        top,
        left: generators::augmentation(&w2),
        right: WeilMorphism::identity(&WeilAlgebra::w()).tensor(&generators::epsilon()),
        bottom: generators::eta(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u32) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn foundational_square_commutes_and_certifies() {
        let grid: Vec<WeilAlgebra> = vec![
            WeilAlgebra::nat(),
            WeilAlgebra::w(),
            WeilAlgebra::w_pow(2).unwrap(),
            WeilAlgebra::w_tensor(2),
        ];
        for a in &grid {
            for m in 1..=2 {
                for n in 1..=2 {
                    let sq = foundational_square(a, m, n).unwrap();
                    assert!(certify(&sq).is_ok(), "certify failed for {a}, m={m}, n={n}");
                }
            }
        }
    }

    #[test]
    fn vertical_square_certifies() {
        assert!(certify(&vertical_square()).is_ok());
    }

    #[test]
    fn corrupted_vertical_square_fails_certificate() {
        // x ↦ ab, y ↦ a pairs y with (a, 0), which is outside the fiber
        // basis because right(a) = a ≠ 0 while bottom hits only 1.
        let err = certify(&corrupted_vertical_square()).unwrap_err();
        match err {
            CertificateFailure::NotInFiber { monomial, top, left } => {
                assert_eq!(monomial, "x2");
                assert_eq!(top, "x1");
                assert_eq!(left, "0");
            }
            other => panic!("unexpected failure {other:?}"),
        }
    }

    #[test]
    fn vertical_lift_substitutes_ab_and_b() {
        // Cone leg W → W⊗W, z ↦ ab + 2b; the ℕ-leg is forced. The lift
        // performs ab ↦ x, b ↦ y: z ↦ x + 2y.
        let sq = vertical_square();
        let w = WeilAlgebra::w();
        let ww = WeilAlgebra::w_tensor(2);
        let leg = WeilMorphism::new(
            w.clone(),
            ww.clone(),
            vec![Element::from_terms(
                ww.clone(),
                [
                    (Monomial::from_sorted(vec![1, 2]).unwrap(), nat(1)),
                    (Monomial::from_sorted(vec![2]).unwrap(), nat(2)),
                ],
            )
            .unwrap()],
        )
        .unwrap();
        let leg_bottom = generators::augmentation(&w);
        let cone = Cone::new(leg, leg_bottom).unwrap();
        let lift = lift_cone(&sq, &cone).unwrap();
        assert_eq!(lift.to_string(), "[W -> W^2]{ x1 -> x1 + 2*x2 }");
    }

    #[test]
    fn foundational_lift_reassembles_parts() {
        // A = W, m = n = 1. Cone legs W⊗W ⇒ plug in a morphism and project.
        let a = WeilAlgebra::w();
        let sq = foundational_square(&a, 1, 1).unwrap();
        for sc in sample_cones(&sq, 5, 40) {
            let lift = lift_cone(&sq, &sc.cone).unwrap();
            assert_eq!(lift, sc.witness);
        }
    }

    #[test]
    fn mismatched_cone_is_an_input_error() {
        // leg_right z ↦ a disagrees with the zero ℕ-leg after augmenting.
        let sq = vertical_square();
        let w = WeilAlgebra::w();
        let ww = WeilAlgebra::w_tensor(2);
        let leg = WeilMorphism::new(
            w.clone(),
            ww.clone(),
            vec![Element::generator(ww.clone(), 1).unwrap()],
        )
        .unwrap();
        let cone = Cone::new(leg, generators::augmentation(&w)).unwrap();
        assert_eq!(lift_cone(&sq, &cone).unwrap_err(), LimitsError::ConeMismatch);
    }

    #[test]
    fn seeded_verification_passes_and_reports() {
        let sq = vertical_square();
        let report = verify_pullback_seeded(&sq, 11, 60);
        assert!(report.passed());
        assert_eq!(report.cones_checked, 60);
        let bad = verify_pullback_seeded(&corrupted_vertical_square(), 11, 5);
        assert!(!bad.passed());
        assert!(!bad.certified_unique);
    }

    #[test]
    fn tensored_squares_still_certify() {
        let b = WeilAlgebra::new(vec![2]).unwrap();
        let sq = vertical_square().tensor_left(&b);
        assert!(certify(&sq).is_ok());
        let report = verify_pullback_seeded(&sq, 7, 30);
        assert!(report.passed());
        let sq = foundational_square(&WeilAlgebra::w(), 1, 2)
            .unwrap()
            .tensor_right(&b);
        assert!(verify_pullback_seeded(&sq, 7, 30).passed());
    }
}
