//! Generic verifier for strict Weil-actions on a pluggable category.
//!
//! A tangent structure is presented as an action: `act_obj` applies a Weil
//! algebra to an object (T^A), `act_mor` is the component at an object of the
//! transformation induced by a Weil morphism (T^φ), and `act_fun` applies
//! T^A to a morphism. Strictness fixes T^{A⊗A′} = T^{A′} ∘ T^{A}, the first
//! tensor factor acting innermost.
//!
//! [`verify_action_laws`] checks category laws, functoriality, naturality,
//! and the strict monoidality equations on caller-supplied samples, exactly.
//! [`verify_tangent_pullbacks`] checks that the images of the foundational
//! and vertical-lift squares still admit unique cone lifts, combining an
//! instance-supplied structural certificate with sampled cones, and
//! distinguishing the two in the report. [`structure_maps`] returns the five
//! classical structure maps at an object and re-checks the consequences of
//! the 𝕎eil identities ε∘η = 1, σ∘σ = 1, σ∘δ = δ at the instance level.

use std::fmt;

use serde_json::json;

use crate::limits::{self, Square};
use crate::weil::{compose as compose_weil, generators, WeilAlgebra, WeilMorphism};

/// A category with decidable equality of morphisms. Composition is written
/// `compose(g, f)` for g∘f and may fail on a boundary mismatch.
pub trait ComputableCategory {
    type Obj: Clone + Eq + fmt::Display;
    type Mor: Clone + Eq + fmt::Display;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, String>;
}

pub type Obj<A> = <<A as WeilAction>::Cat as ComputableCategory>::Obj;
pub type Mor<A> = <<A as WeilAction>::Cat as ComputableCategory>::Mor;

/// A strict action of 𝕎eil on a category.
pub trait WeilAction {
    type Cat: ComputableCategory;

    fn name(&self) -> &'static str;
    fn category(&self) -> &Self::Cat;
    fn act_obj(&self, a: &WeilAlgebra, x: &Obj<Self>) -> Obj<Self>;
    fn act_mor(&self, phi: &WeilMorphism, x: &Obj<Self>) -> Mor<Self>;
    fn act_fun(&self, a: &WeilAlgebra, f: &Mor<Self>) -> Mor<Self>;
}

/// Seeded sampling of morphisms with a prescribed target, used to build
/// cones and law-check samples for a category.
pub trait MorphismSampler: ComputableCategory {
    fn sample_morphisms_into(&self, x: &Self::Obj, seed: u64, budget: usize) -> Vec<Self::Mor>;
}

/// Instance-side support for verifying preservation of a designated square:
/// a structural uniqueness certificate, a cone sampler, and a lift oracle,
/// all for the square's image at an object.
pub trait PullbackSupport: WeilAction {
    /// Structural reason lifts through the image square at `x` are unique,
    /// or why no certificate exists.
    fn certify_image(&self, square: &Square, x: &Obj<Self>) -> Result<(), String>;

    /// Sampled cones over the image square at `x`: pairs of legs into the
    /// images of the two non-corner sides.
    fn sample_image_cones(
        &self,
        square: &Square,
        x: &Obj<Self>,
        seed: u64,
        budget: usize,
    ) -> Vec<(Mor<Self>, Mor<Self>)>;

    /// The lift of a cone through the image square's corner.
    fn lift_image_cone(
        &self,
        square: &Square,
        x: &Obj<Self>,
        leg_right: &Mor<Self>,
        leg_bottom: &Mor<Self>,
    ) -> Result<Mor<Self>, String>;
}

const WITNESS_CAP: usize = 3;

/// Result of checking one law on all sampled data.
#[derive(Debug, Clone)]
pub struct LawCheck {
    pub law: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub suppressed_failures: usize,
}

impl LawCheck {
    fn new(law: &'static str) -> Self {
        LawCheck {
            law,
            checks: 0,
            failures: Vec::new(),
            suppressed_failures: 0,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            if self.failures.len() < WITNESS_CAP {
                self.failures.push(witness());
            } else {
                self.suppressed_failures += 1;
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.suppressed_failures == 0
    }
}

/// Report of [`verify_action_laws`]: one entry per law identifier.
#[derive(Debug, Clone)]
pub struct ActionLawReport {
    pub instance: String,
    pub laws: Vec<LawCheck>,
}

impl ActionLawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawCheck::passed)
    }

    pub fn checks(&self) -> usize {
        self.laws.iter().map(|l| l.checks).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "instance": self.instance,
            "passed": self.passed(),
            "laws": self.laws.iter().map(|l| json!({
                "law": l.law,
                "checks": l.checks,
                "failures": l.failures,
                "suppressed_failures": l.suppressed_failures,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ActionLawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance: {}", self.instance)?;
        for law in &self.laws {
            if law.passed() {
                writeln!(f, "  {}: ok ({} checks)", law.law, law.checks)?;
            } else {
                writeln!(
                    f,
                    "  {}: FAILED ({} of {} checks)",
                    law.law,
                    law.failures.len() + law.suppressed_failures,
                    law.checks
                )?;
                for w in &law.failures {
                    writeln!(f, "    witness: {w}")?;
                }
            }
        }
        write!(
            f,
            "action laws: {}",
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

/// Deduplicated algebras appearing in a sample of Weil morphisms, always
/// including ℕ and W.
fn algebra_pool(weil_samples: &[WeilMorphism]) -> Vec<WeilAlgebra> {
    let mut pool = vec![WeilAlgebra::nat(), WeilAlgebra::w()];
    for phi in weil_samples {
        for a in [phi.source(), phi.target()] {
            if !pool.contains(a) {
                pool.push(a.clone());
            }
        }
    }
    pool.truncate(6);
    pool
}

/// Checks all action, functoriality, naturality, and strictness laws on the
/// given samples. Every comparison is an exact equality in the instance
/// category; composition errors count as failures of the law being checked.
pub fn verify_action_laws<A: WeilAction>(
    action: &A,
    objects: &[Obj<A>],
    morphisms: &[Mor<A>],
    weil_samples: &[WeilMorphism],
) -> ActionLawReport {
    let cat = action.category();
    let algebras = algebra_pool(weil_samples);
    let nat = WeilAlgebra::nat();

    let mut cat_identity = LawCheck::new("category-identity");
    for f in morphisms {
        let left = cat.compose(f, &cat.identity(&cat.source(f)));
        let right = cat.compose(&cat.identity(&cat.target(f)), f);
        cat_identity.record(
            left.as_ref() == Ok(f) && right.as_ref() == Ok(f),
            || format!("identity laws fail at {f}"),
        );
    }

    let mut cat_assoc = LawCheck::new("category-associativity");
    for f in morphisms {
        for g in morphisms {
            if cat.source(g) != cat.target(f) {
                continue;
            }
            for h in morphisms {
                if cat.source(h) != cat.target(g) {
                    continue;
                }
                let lhs = cat
                    .compose(h, &cat.compose(g, f).expect("checked boundary"))
                    .ok();
                let rhs = cat
                    .compose(&cat.compose(h, g).expect("checked boundary"), f)
                    .ok();
                cat_assoc.record(lhs.is_some() && lhs == rhs, || {
                    format!("associativity fails on {h} ∘ {g} ∘ {f}")
                });
            }
        }
    }

    let mut identity_action = LawCheck::new("identity-action");
    for a in &algebras {
        let id_a = WeilMorphism::identity(a);
        for x in objects {
            let lhs = action.act_mor(&id_a, x);
            let rhs = cat.identity(&action.act_obj(a, x));
            identity_action.record(lhs == rhs, || {
                format!("act_mor(1_{a}, {x}) = {lhs} differs from the identity")
            });
        }
    }

    let mut compose_action = LawCheck::new("compose-action");
    for phi in weil_samples {
        for psi in weil_samples {
            if psi.source() != phi.target() {
                continue;
            }
            let composite = compose_weil(psi, phi).expect("checked boundary");
            for x in objects {
                let lhs = action.act_mor(&composite, x);
                let rhs = cat.compose(&action.act_mor(psi, x), &action.act_mor(phi, x));
                compose_action.record(rhs.as_ref() == Ok(&lhs), || {
                    format!("act_mor(ψ∘φ, {x}) ≠ act_mor(ψ)∘act_mor(φ) for φ = {phi}, ψ = {psi}")
                });
            }
        }
    }

    let mut functor_identity = LawCheck::new("functor-identity");
    let mut functor_compose = LawCheck::new("functor-composition");
    for a in &algebras {
        for x in objects {
            let lhs = action.act_fun(a, &cat.identity(x));
            let rhs = cat.identity(&action.act_obj(a, x));
            functor_identity.record(lhs == rhs, || {
                format!("act_fun({a}, 1_{x}) is not the identity")
            });
        }
        for f in morphisms {
            for g in morphisms {
                if cat.source(g) != cat.target(f) {
                    continue;
                }
                let composite = cat.compose(g, f).expect("checked boundary");
                let lhs = action.act_fun(a, &composite);
                let rhs = cat.compose(&action.act_fun(a, g), &action.act_fun(a, f));
                functor_compose.record(rhs.as_ref() == Ok(&lhs), || {
                    format!("act_fun({a}, g∘f) ≠ act_fun({a}, g)∘act_fun({a}, f) at f = {f}")
                });
            }
        }
    }

    let mut naturality = LawCheck::new("naturality");
    for phi in weil_samples {
        for f in morphisms {
            let x = cat.source(f);
            let y = cat.target(f);
            let lhs = cat.compose(&action.act_mor(phi, &y), &action.act_fun(phi.source(), f));
            let rhs = cat.compose(&action.act_fun(phi.target(), f), &action.act_mor(phi, &x));
            naturality.record(lhs.is_ok() && lhs == rhs, || {
                format!("naturality square fails for φ = {phi} at f = {f}")
            });
        }
    }

    let mut strict_obj_unit = LawCheck::new("strict-unit-object");
    let mut strict_fun_unit = LawCheck::new("strict-unit-functor");
    for x in objects {
        let u = action.act_obj(&nat, x);
        strict_obj_unit.record(&u == x, || format!("act_obj(N, {x}) = {u} differs from {x}"));
    }
    for f in morphisms {
        let u = action.act_fun(&nat, f);
        strict_fun_unit.record(&u == f, || format!("act_fun(N, {f}) differs from {f}"));
    }

    let mut strict_obj_tensor = LawCheck::new("strict-tensor-object");
    let mut strict_fun_tensor = LawCheck::new("strict-tensor-functor");
    for a in &algebras {
        for b in &algebras {
            let ab = a.tensor(b);
            for x in objects {
                let lhs = action.act_obj(&ab, x);
                let rhs = action.act_obj(b, &action.act_obj(a, x));
                strict_obj_tensor.record(lhs == rhs, || {
                    format!("act_obj({a}@{b}, {x}) = {lhs} differs from the nested {rhs}")
                });
            }
            for f in morphisms {
                let lhs = action.act_fun(&ab, f);
                let rhs = action.act_fun(b, &action.act_fun(a, f));
                strict_fun_tensor.record(lhs == rhs, || {
                    format!("act_fun({a}@{b}, f) differs from the nested application at f = {f}")
                });
            }
        }
    }

    // Horizontal composition of morphism components: T^{φ⊗φ′} factors
    // through either whiskering order.
    let mut tensor_mor = LawCheck::new("tensor-morphism-interchange");
    for phi in weil_samples.iter().take(4) {
        for psi in weil_samples.iter().take(4) {
            let tensor = phi.tensor(psi);
            for x in objects.iter().take(3) {
                let lhs = action.act_mor(&tensor, x);
                let tb_x = action.act_obj(phi.target(), x);
                let ta_x = action.act_obj(phi.source(), x);
                let first = cat.compose(
                    &action.act_mor(psi, &tb_x),
                    &action.act_fun(psi.source(), &action.act_mor(phi, x)),
                );
                let second = cat.compose(
                    &action.act_fun(psi.target(), &action.act_mor(phi, x)),
                    &action.act_mor(psi, &ta_x),
                );
                tensor_mor.record(
                    first.as_ref() == Ok(&lhs) && second.as_ref() == Ok(&lhs),
                    || format!("act_mor(φ⊗ψ, {x}) fails interchange for φ = {phi}, ψ = {psi}"),
                );
            }
        }
    }

    ActionLawReport {
        instance: action.name().to_string(),
        laws: vec![
            cat_identity,
            cat_assoc,
            identity_action,
            compose_action,
            functor_identity,
            functor_compose,
            naturality,
            strict_obj_unit,
            strict_fun_unit,
            strict_obj_tensor,
            strict_fun_tensor,
            tensor_mor,
        ],
    }
}

/// Report of pullback preservation for one square, aggregated over the
/// sampled objects. Mirrors the weil-limits report shape, extended with the
/// instance name.
#[derive(Debug, Clone)]
pub struct TangentPullbackReport {
    pub instance: String,
    pub square: String,
    pub objects_checked: usize,
    pub certified_unique: bool,
    pub certificate_failure: Option<String>,
    pub cones_checked: usize,
    pub failures: Vec<String>,
    pub seed: u64,
}

impl TangentPullbackReport {
    pub fn passed(&self) -> bool {
        self.certified_unique && self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "instance": self.instance,
            "square": self.square,
            "objects_checked": self.objects_checked,
            "certified_unique": self.certified_unique,
            "certificate_failure": self.certificate_failure,
            "cones_checked": self.cones_checked,
            "failures": self.failures,
            "seed": self.seed,
        })
    }
}

impl fmt::Display for TangentPullbackReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "square {} at {} object(s): certificate {}, {} cones, {}",
            self.square,
            self.objects_checked,
            if self.certified_unique {
                "ok".to_string()
            } else {
                format!(
                    "FAILED ({})",
                    self.certificate_failure.as_deref().unwrap_or("unknown")
                )
            },
            self.cones_checked,
            if self.failures.is_empty() {
                "all lift".to_string()
            } else {
                format!("{} failure(s): {}", self.failures.len(), self.failures[0])
            }
        )
    }
}

/// Verifies that the action preserves one square at each sampled object:
/// the instance certificate holds, sampled cones commute, their lifts exist,
/// and both leg equations hold exactly after composing with the image sides.
pub fn verify_square_preservation<A: PullbackSupport>(
    action: &A,
    square: &Square,
    objects: &[Obj<A>],
    seed: u64,
    cone_budget: usize,
) -> TangentPullbackReport {
    let cat = action.category();
    let mut certified = true;
    let mut certificate_failure = None;
    let mut cones_checked = 0usize;
    let mut failures = Vec::new();

    for x in objects {
        if let Err(reason) = action.certify_image(square, x) {
            certified = false;
            if certificate_failure.is_none() {
                certificate_failure = Some(format!("at {x}: {reason}"));
            }
            continue;
        }
        let top = action.act_mor(square.top(), x);
        let left = action.act_mor(square.left(), x);
        let right = action.act_mor(square.right(), x);
        let bottom = action.act_mor(square.bottom(), x);
        for (i, (leg_r, leg_b)) in action
            .sample_image_cones(square, x, seed, cone_budget)
            .into_iter()
            .enumerate()
        {
            if failures.len() >= WITNESS_CAP {
                continue;
            }
            cones_checked += 1;
            let cone_ok = cat.compose(&right, &leg_r).ok() == cat.compose(&bottom, &leg_b).ok();
            if !cone_ok {
                failures.push(format!("at {x}, cone {i}: legs do not commute with the square"));
                continue;
            }
            match action.lift_image_cone(square, x, &leg_r, &leg_b) {
                Ok(lift) => {
                    let top_ok = cat.compose(&top, &lift).ok() == Some(leg_r.clone());
                    let left_ok = cat.compose(&left, &lift).ok() == Some(leg_b.clone());
                    if !top_ok || !left_ok {
                        failures.push(format!(
                            "at {x}, cone {i}: lift does not reproduce the legs"
                        ));
                    }
                }
                Err(reason) => {
                    failures.push(format!("at {x}, cone {i}: no lift ({reason})"));
                }
            }
        }
    }

    TangentPullbackReport {
        instance: action.name().to_string(),
        square: square.kind().to_string(),
        objects_checked: objects.len(),
        certified_unique: certified,
        certificate_failure,
        cones_checked,
        failures,
        seed,
    }
}

/// Verifies preservation of foundational_square(base, m, n) and of the
/// vertical-lift square at every sampled object.
pub fn verify_tangent_pullbacks<A: PullbackSupport>(
    action: &A,
    base: &WeilAlgebra,
    m: u32,
    n: u32,
    objects: &[Obj<A>],
    seed: u64,
    cone_budget: usize,
) -> Result<Vec<TangentPullbackReport>, limits::LimitsError> {
    let foundational = limits::foundational_square(base, m, n)?;
    let vertical = limits::vertical_square();
    Ok(vec![
        verify_square_preservation(action, &foundational, objects, seed, cone_budget),
        verify_square_preservation(action, &vertical, objects, seed, cone_budget),
    ])
}

/// The five structure maps of the tangent structure at an object.
#[derive(Debug, Clone)]
pub struct StructureMaps<M> {
    /// p: T(X) → X, from the augmentation ε.
    pub projection: M,
    /// 0: X → T(X), from the unit η.
    pub zero: M,
    /// +: T₂(X) → T(X), from x, y ↦ z.
    pub add: M,
    /// c: T²(X) → T²(X), from the symmetry σ.
    pub flip: M,
    /// ℓ: T(X) → T²(X), from δ: z ↦ xy.
    pub lift: M,
}

/// Returns the structure maps at `x` and re-checks p∘0 = 1, c∘c = 1 and
/// c∘ℓ = ℓ, the instance-level shadows of ε∘η = 1, σ∘σ = 1, σ∘δ = δ.
pub fn structure_maps<A: WeilAction>(
    action: &A,
    x: &Obj<A>,
) -> (StructureMaps<Mor<A>>, Vec<String>) {
    let cat = action.category();
    let maps = StructureMaps {
        projection: action.act_mor(&generators::epsilon(), x),
        zero: action.act_mor(&generators::eta(), x),
        add: action.act_mor(&generators::plus(), x),
        flip: action.act_mor(&generators::sigma(), x),
        lift: action.act_mor(&generators::delta(), x),
    };
    let mut failures = Vec::new();
    if cat.compose(&maps.projection, &maps.zero).ok() != Some(cat.identity(x)) {
        failures.push(format!("p∘0 is not the identity at {x}"));
    }
    let t2x = action.act_obj(&WeilAlgebra::w_tensor(2), x);
    if cat.compose(&maps.flip, &maps.flip).ok() != Some(cat.identity(&t2x)) {
        failures.push(format!("c∘c is not the identity at {x}"));
    }
    if cat.compose(&maps.flip, &maps.lift).ok() != Some(maps.lift.clone()) {
        failures.push(format!("c∘ℓ differs from ℓ at {x}"));
    }
    (maps, failures)
}

/// Combined outcome of a full tangent-structure check on one instance:
/// the action laws, pullback preservation over a grid of squares, and the
/// structure-map sanity identities.
#[derive(Debug, Clone)]
pub struct TangentReport {
    pub laws: ActionLawReport,
    pub pullbacks: Vec<TangentPullbackReport>,
    pub structure_failures: Vec<String>,
    pub seed: u64,
}

impl TangentReport {
    pub fn passed(&self) -> bool {
        self.laws.passed()
            && self.pullbacks.iter().all(|r| r.passed())
            && self.structure_failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "instance": self.laws.instance,
            "passed": self.passed(),
            "seed": self.seed,
            "laws": self.laws.to_json()["laws"],
            "pullbacks": self.pullbacks.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "structure_failures": self.structure_failures,
        })
    }
}

impl fmt::Display for TangentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.laws)?;
        for report in &self.pullbacks {
            write!(f, "\n{report}")?;
        }
        for failure in &self.structure_failures {
            write!(f, "\nstructure: {failure}")?;
        }
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "\noverall: {verdict} (seed {})", self.seed)
    }
}

/// Runs the whole verification battery on an instance: the action laws on
/// the given samples, preservation of the foundational(ℕ, 1, 1) and
/// vertical-lift squares at every object, and the structure-map identities.
pub fn run_full_check<A: PullbackSupport>(
    action: &A,
    objects: &[Obj<A>],
    morphisms: &[Mor<A>],
    weil_samples: &[WeilMorphism],
    seed: u64,
    cone_budget: usize,
) -> Result<TangentReport, String> {
    let laws = verify_action_laws(action, objects, morphisms, weil_samples);
    let pullbacks = verify_tangent_pullbacks(
        action,
        &WeilAlgebra::nat(),
        1,
        1,
        objects,
        seed,
        cone_budget,
    )
    .map_err(|e| e.to_string())?;
    let mut structure_failures = Vec::new();
    for x in objects {
        structure_failures.extend(structure_maps(action, x).1);
    }
    Ok(TangentReport {
        laws,
        pullbacks,
        structure_failures,
        seed,
    })
}

/// Basis-level description of a square of morphisms that send basis elements
/// to basis elements or to zero: entry `i ↦ Some(j)` or `i ↦ None`.
///
/// Such a square certifies unique lifts exactly when (top, left) is a
/// bijection from the corner basis onto the canonical fiber basis of
/// (right, bottom): matched pairs over each shared target index plus the
/// kernel elements of either side. This mirrors the Weil-algebra certificate
/// and is shared by matrix instances whose structure maps are unit-or-zero
/// column maps.
#[derive(Debug, Clone)]
pub struct BasisSquare {
    pub top: Vec<Option<usize>>,
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    pub bottom: Vec<Option<usize>>,
}

/// Transport tables of a certified basis square: for each corner basis
/// index, the leg that reads its coefficient.
#[derive(Debug, Clone)]
pub struct BasisTables {
    pub from_top: Vec<Option<usize>>,
    pub from_left: Vec<Option<usize>>,
}

pub fn certify_basis_square(square: &BasisSquare) -> Result<BasisTables, String> {
    let b_len = square.right.len();
    let c_len = square.bottom.len();

    let mut right_pre: Vec<Vec<usize>> = Vec::new();
    let mut bottom_pre: Vec<Vec<usize>> = Vec::new();
    let a_len = square
        .right
        .iter()
        .chain(&square.bottom)
        .filter_map(|o| *o)
        .max()
        .map_or(0, |m| m + 1);
    right_pre.resize(a_len, Vec::new());
    bottom_pre.resize(a_len, Vec::new());
    for (u, img) in square.right.iter().enumerate() {
        if let Some(a) = img {
            right_pre[*a].push(u);
        }
    }
    for (v, img) in square.bottom.iter().enumerate() {
        if let Some(a) = img {
            bottom_pre[*a].push(v);
        }
    }

    // Canonical fiber basis as pairs (Option<u>, Option<v>).
    let mut fiber: std::collections::BTreeMap<(Option<usize>, Option<usize>), bool> =
        std::collections::BTreeMap::new();
    for a in 0..a_len {
        match (right_pre[a].as_slice(), bottom_pre[a].as_slice()) {
            ([], _) | (_, []) => {}
            ([u], [v]) => {
                fiber.insert((Some(*u), Some(*v)), false);
            }
            (us, vs) => {
                return Err(format!(
                    "fiber over target index {a} is not free: {} right and {} bottom preimages",
                    us.len(),
                    vs.len()
                ));
            }
        }
    }
    for (u, img) in square.right.iter().enumerate() {
        if img.is_none() {
            fiber.insert((Some(u), None), false);
        }
    }
    for (v, img) in square.bottom.iter().enumerate() {
        if img.is_none() {
            fiber.insert((None, Some(v)), false);
        }
    }

    if square.top.len() != square.left.len() {
        return Err("top and left certificates have different corner sizes".to_string());
    }
    for (w, (t, l)) in square.top.iter().zip(&square.left).enumerate() {
        if let Some(u) = t {
            if *u >= b_len {
                return Err(format!("top sends corner {w} out of range"));
            }
        }
        if let Some(v) = l {
            if *v >= c_len {
                return Err(format!("left sends corner {w} out of range"));
            }
        }
        match fiber.get_mut(&(*t, *l)) {
            Some(seen @ false) => *seen = true,
            Some(true) => {
                return Err(format!(
                    "corner indices collide: {w} repeats an earlier (top, left) image"
                ))
            }
            None => {
                return Err(format!(
                    "corner index {w} maps outside the fiber basis (top {t:?}, left {l:?})"
                ))
            }
        }
    }
    if let Some(((t, l), _)) = fiber.iter().find(|(_, seen)| !**seen) {
        return Err(format!(
            "fiber basis pair (top {t:?}, left {l:?}) is not hit by the corner"
        ));
    }
    Ok(BasisTables {
        from_top: square.top.clone(),
        from_left: square.left.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_certificate_accepts_a_split_square() {
        // Corner basis {1, x1, x2} of W² over two W's and ℕ: the split
        // underlying foundational(ℕ, 1, 1), where no monomial mixes the two
        // generators.
        let square = BasisSquare {
            top: vec![Some(0), Some(1), None],
            left: vec![Some(0), None, Some(1)],
            right: vec![Some(0), None],
            bottom: vec![Some(0), None],
        };
        let tables = certify_basis_square(&square).unwrap();
        assert_eq!(tables.from_top[1], Some(1));
        assert_eq!(tables.from_left[2], Some(1));
    }

    #[test]
    fn basis_certificate_rejects_misses_and_collisions() {
        // Two corner elements with the same (top, left) image.
        let collision = BasisSquare {
            top: vec![Some(0), Some(1), Some(1)],
            left: vec![Some(0), None, None],
            right: vec![Some(0), None],
            bottom: vec![Some(0)],
        };
        assert!(certify_basis_square(&collision).is_err());

        // A corner element outside the fiber basis: top lands on a basis
        // vector with nonzero right-image while left is zero.
        let outside = BasisSquare {
            top: vec![Some(0), Some(0)],
            left: vec![Some(0), None],
            right: vec![Some(0)],
            bottom: vec![Some(0)],
        };
        assert!(certify_basis_square(&outside).is_err());
    }
}
