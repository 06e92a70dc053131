//! Wedge-of-smash expressions in pointed-space variables.
//!
//! A Weil morphism φ: A → A′ is transcribed into a space functor φ̃ going the
//! other way: one component per A-generator, each a wedge sum of smash words
//! in variables X₁ … X_{n′} indexed by the A′-generators. Monomials become
//! smash words, coefficients become wedge multiplicities, zero becomes the
//! point ∗.
//!
//! Composing two such functors by substitution ([`compose_space`]) expands
//! every product formally; unlike algebra multiplication nothing annihilates,
//! so the expansion carries extra summands whose words contain a related pair
//! of variables (a repeated variable, or two in one block of the final
//! algebra). Those smash to the point. [`alpha`] computes the decomposition:
//! an inclusion of the honest composite φ̃₂φ₁ onto the surviving summands and
//! the complement ζ of point-bound ones.
//!
//! [`check_alpha_coherence`] verifies the pentagon-like law for triple
//! composites. Both composite inclusions are monotone, word-preserving
//! injections between canonically sorted wedges, and such a map is determined
//! by its image; the two routes are therefore equal as summand maps exactly
//! when they keep the same summands of the full expansion alive. The check
//! enumerates the full expansion in tree coordinates, classifies each summand
//! the way each route would, and compares the three survivor sets (route one,
//! route two, and direct classification) plus the final inclusion targets.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::weil::{compose, Element, Monomial, Natural, WeilAlgebra, WeilError, WeilMorphism};

/// Largest coefficient a morphism may carry into space land, where it turns
/// into that many wedge copies.
pub const MULTIPLICITY_LIMIT: u64 = 1 << 16;

/// Largest number of summands a single component expansion may produce.
pub const EXPANSION_LIMIT: u64 = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("coefficient {coefficient} exceeds the wedge multiplicity limit {limit}")]
    MultiplicityTooLarge { coefficient: String, limit: u64 },
    #[error("expansion would produce {estimated} summands, over the limit {limit}")]
    ExpansionTooLarge { estimated: String, limit: u64 },
    #[error("space functors do not compose: {0}")]
    Boundary(String),
    #[error("structural violation, contradicting the decomposition law: {0}")]
    StructuralViolation(String),
    #[error(transparent)]
    Weil(#[from] WeilError),
}

/// A smash product of variables, canonically sorted with repeats kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmashWord {
    letters: Vec<u32>,
}

impl SmashWord {
    /// Builds a word from letters in any order; letters are 1-based variable
    /// indices bounded by `arity`.
    pub fn new(mut letters: Vec<u32>, arity: u32) -> Result<Self, SpaceError> {
        if letters.is_empty() {
            return Err(SpaceError::Boundary(
                "smash words are nonempty; the point is the empty wedge".to_string(),
            ));
        }
        if let Some(&bad) = letters.iter().find(|&&v| v == 0 || v > arity) {
            return Err(SpaceError::Boundary(format!(
                "variable X{bad} is out of range for arity {arity}"
            )));
        }
        letters.sort_unstable();
        Ok(SmashWord { letters })
    }

    fn from_monomial(m: &Monomial) -> Self {
        SmashWord {
            letters: m.indices().to_vec(),
        }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// Whether two letters (possibly the same one twice) would annihilate in
    /// `ambient`; such a word smashes to the point.
    pub fn has_related_pair(&self, ambient: &WeilAlgebra) -> bool {
        self.letters.iter().enumerate().any(|(p, &i)| {
            self.letters[p + 1..]
                .iter()
                .any(|&j| ambient.related(i, j).unwrap_or(false))
        })
    }

    fn concat(parts: &[&SmashWord]) -> SmashWord {
        let mut letters: Vec<u32> = parts.iter().flat_map(|w| w.letters.iter().copied()).collect();
        letters.sort_unstable();
        SmashWord { letters }
    }
}

impl Ord for SmashWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.letters.len(), &self.letters).cmp(&(other.letters.len(), &other.letters))
    }
}

impl PartialOrd for SmashWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SmashWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.letters {
            if !first {
                write!(f, "^")?;
            }
            write!(f, "X{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// A finite wedge of smash words, kept sorted; the empty wedge is the point.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WedgeSum {
    words: Vec<SmashWord>,
}

impl WedgeSum {
    pub fn new(mut words: Vec<SmashWord>) -> Self {
        words.sort();
        WedgeSum { words }
    }

    pub fn point() -> Self {
        WedgeSum::default()
    }

    pub fn words(&self) -> &[SmashWord] {
        &self.words
    }

    pub fn is_point(&self) -> bool {
        self.words.is_empty()
    }
}

impl fmt::Display for WedgeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "*");
        }
        let mut first = true;
        for w in &self.words {
            if !first {
                write!(f, " v ")?;
            }
            write!(f, "{w}")?;
            first = false;
        }
        Ok(())
    }
}

/// The space functor pattern of a Weil morphism A → A′: components indexed by
/// the A-generators, variables by the A′-generators. The target algebra is
/// kept because relatedness of its generators decides which words die.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceFunctor {
    source: WeilAlgebra,
    target: WeilAlgebra,
    components: Vec<WedgeSum>,
}

impl SpaceFunctor {
    pub fn new(
        source: WeilAlgebra,
        target: WeilAlgebra,
        components: Vec<WedgeSum>,
    ) -> Result<Self, SpaceError> {
        if components.len() != source.generator_count() as usize {
            return Err(SpaceError::Boundary(format!(
                "{} components for {} source generators",
                components.len(),
                source.generator_count()
            )));
        }
        let arity = target.generator_count();
        for wedge in &components {
            for word in wedge.words() {
                if let Some(&bad) = word.letters().iter().find(|&&v| v == 0 || v > arity) {
                    return Err(SpaceError::Boundary(format!(
                        "variable X{bad} is out of range for arity {arity}"
                    )));
                }
            }
        }
        Ok(SpaceFunctor {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &WeilAlgebra {
        &self.source
    }

    pub fn target(&self) -> &WeilAlgebra {
        &self.target
    }

    /// Number of variables: generators of the target algebra.
    pub fn in_arity(&self) -> u32 {
        self.target.generator_count()
    }

    /// Number of components: generators of the source algebra.
    pub fn out_arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[WedgeSum] {
        &self.components
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "source": { "widths": self.source.widths() },
            "target": { "widths": self.target.widths() },
            "components": self.components.iter().map(|wedge| {
                wedge.words().iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SpaceFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (i, wedge) in self.components.iter().enumerate() {
            if !first {
                write!(f, " ;")?;
            }
            write!(f, " x{} -> {wedge}", i + 1)?;
            first = false;
        }
        write!(f, " }}")
    }
}

fn multiplicity(coef: &Natural) -> Result<usize, SpaceError> {
    let limit = Natural::from(MULTIPLICITY_LIMIT);
    if *coef > limit {
        return Err(SpaceError::MultiplicityTooLarge {
            coefficient: coef.to_string(),
            limit: MULTIPLICITY_LIMIT,
        });
    }
    let digits = coef.to_u64_digits();
    Ok(*digits.first().unwrap_or(&0) as usize)
}

fn wedge_of_element(e: &Element) -> Result<WedgeSum, SpaceError> {
    let mut words = Vec::new();
    for (mono, coef) in e.terms() {
        let copies = multiplicity(coef)?;
        for _ in 0..copies {
            words.push(SmashWord::from_monomial(mono));
        }
    }
    Ok(WedgeSum::new(words))
}

/// The space functor pattern of a Weil morphism: monomials become smash
/// words, coefficients become wedge multiplicities, zero the point.
pub fn phitilde(phi: &WeilMorphism) -> Result<SpaceFunctor, SpaceError> {
    let components = (1..=phi.source().generator_count())
        .map(|g| wedge_of_element(phi.image(g).expect("generator in range")))
        .collect::<Result<Vec<_>, _>>()?;
    SpaceFunctor::new(phi.source().clone(), phi.target().clone(), components)
}

/// φ̃ of the identity: component i is the single word Xᵢ.
pub fn identity_space(a: &WeilAlgebra) -> SpaceFunctor {
    let components = (1..=a.generator_count())
        .map(|i| WedgeSum::new(vec![SmashWord { letters: vec![i] }]))
        .collect();
    SpaceFunctor {
        source: a.clone(),
        target: a.clone(),
        components,
    }
}

/// One formally expanded summand of a substitution: which word of the outer
/// wedge was chosen and, per letter slot, which word of the substituted
/// component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ExpandedSummand {
    word_choice: usize,
    slot_choices: Vec<usize>,
    word: SmashWord,
}

/// Expands the substitution of `g`'s components into one wedge of words over
/// `g`'s source generators, in lexicographic generation order. No
/// annihilation happens here.
fn expand_wedge(wedge: &WedgeSum, g: &SpaceFunctor) -> Result<Vec<ExpandedSummand>, SpaceError> {
    let mut estimated: u64 = 0;
    for word in wedge.words() {
        let mut per_word: u64 = 1;
        for &v in word.letters() {
            let options = g.components[(v - 1) as usize].words().len() as u64;
            per_word = per_word.saturating_mul(options);
        }
        estimated = estimated.saturating_add(per_word);
    }
    if estimated > EXPANSION_LIMIT {
        return Err(SpaceError::ExpansionTooLarge {
            estimated: estimated.to_string(),
            limit: EXPANSION_LIMIT,
        });
    }

    let mut out = Vec::new();
    for (word_choice, word) in wedge.words().iter().enumerate() {
        let slots: Vec<&WedgeSum> = word
            .letters()
            .iter()
            .map(|&v| &g.components[(v - 1) as usize])
            .collect();
        // Odometer over slot choices; a slot with a point component makes the
        // whole product the point, contributing nothing.
        if slots.iter().any(|s| s.is_point()) {
            continue;
        }
        let mut choices = vec![0usize; slots.len()];
        loop {
            let parts: Vec<&SmashWord> = slots
                .iter()
                .zip(&choices)
                .map(|(s, &c)| &s.words()[c])
                .collect();
            out.push(ExpandedSummand {
                word_choice,
                slot_choices: choices.clone(),
                word: SmashWord::concat(&parts),
            });
            let mut k = slots.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                choices[k] += 1;
                if choices[k] < slots[k].words().len() {
                    break;
                }
                choices[k] = 0;
            }
            if choices.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok(out)
}

/// Substitutes `g`'s components into `f`'s variables and expands formally,
/// with no related-pair annihilation. Multiset multiplicities multiply.
pub fn compose_space(f: &SpaceFunctor, g: &SpaceFunctor) -> Result<SpaceFunctor, SpaceError> {
    if f.target != g.source {
        return Err(SpaceError::Boundary(format!(
            "variables of {{in_arity {}}} over {} cannot receive components of {} (out_arity {})",
            f.in_arity(),
            f.target,
            g.source,
            g.out_arity()
        )));
    }
    let components = f
        .components
        .iter()
        .map(|wedge| {
            Ok(WedgeSum::new(
                expand_wedge(wedge, g)?.into_iter().map(|s| s.word).collect(),
            ))
        })
        .collect::<Result<Vec<_>, SpaceError>>()?;
    SpaceFunctor::new(f.source.clone(), g.target.clone(), components)
}

/// Per component, an injective map matching each summand of the honest
/// composite wedge to an equal summand of the formal expansion. Stored as
/// index maps between canonically sorted wedges under the convention that the
/// k-th copy of a word goes to its k-th surviving copy; this is the unique
/// monotone word-preserving injection with the surviving image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandInclusion {
    maps: Vec<Vec<usize>>,
}

impl SummandInclusion {
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// Confirms injectivity and word equality of each matched pair.
    pub fn verify(&self, from: &SpaceFunctor, into: &SpaceFunctor) -> bool {
        if self.maps.len() != from.components.len() || self.maps.len() != into.components.len() {
            return false;
        }
        for ((map, small), big) in self
            .maps
            .iter()
            .zip(&from.components)
            .zip(&into.components)
        {
            if map.len() != small.words().len() {
                return false;
            }
            let mut seen = BTreeSet::new();
            for (p, &q) in map.iter().enumerate() {
                if q >= big.words().len() || !seen.insert(q) {
                    return false;
                }
                if small.words()[p] != big.words()[q] {
                    return false;
                }
            }
        }
        true
    }
}

/// The α decomposition of a composable pair: the honest composite, the formal
/// expansion, the inclusion of the former into the latter, and the complement
/// ζ of summands bound for the point.
#[derive(Debug, Clone)]
pub struct AlphaResult {
    pub widetilde: SpaceFunctor,
    pub expansion: SpaceFunctor,
    pub inclusion: SummandInclusion,
    pub zeta: Vec<WedgeSum>,
}

impl AlphaResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "widetilde": self.widetilde.to_json(),
            "expansion": self.expansion.to_json(),
            "inclusion": self.inclusion.maps(),
            "zeta": self.zeta.iter().map(|wedge| {
                wedge.words().iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// Computes the decomposition of φ̃₁φ̃₂ into widetilde(φ₂∘φ₁) and ζ.
///
/// Classification marks an expanded word dead exactly when it has a related
/// pair of final-algebra variables. The honest check is that the surviving
/// words then reproduce the composite's wedges as multisets; a mismatch in
/// either direction is a structural violation and cannot occur for valid
/// morphisms.
pub fn alpha(phi1: &WeilMorphism, phi2: &WeilMorphism) -> Result<AlphaResult, SpaceError> {
    let composite = compose(phi2, phi1)?;
    let widetilde = phitilde(&composite)?;
    let f1 = phitilde(phi1)?;
    let f2 = phitilde(phi2)?;
    let expansion = compose_space(&f1, &f2)?;

    let ambient = expansion.target.clone();
    let mut maps = Vec::new();
    let mut zeta = Vec::new();
    for (wedge, honest) in expansion.components.iter().zip(&widetilde.components) {
        let mut alive = Vec::new();
        let mut dead = Vec::new();
        for (q, word) in wedge.words().iter().enumerate() {
            if word.has_related_pair(&ambient) {
                dead.push(word.clone());
            } else {
                alive.push(q);
            }
        }
        let alive_words: Vec<&SmashWord> = alive.iter().map(|&q| &wedge.words()[q]).collect();
        let honest_words: Vec<&SmashWord> = honest.words().iter().collect();
        if alive_words != honest_words {
            return Err(SpaceError::StructuralViolation(format!(
                "surviving summands [{}] differ from the composite wedge [{}]",
                alive_words
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                honest_words
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            )));
        }
        maps.push(alive);
        zeta.push(WedgeSum::new(dead));
    }
    Ok(AlphaResult {
        widetilde,
        expansion,
        inclusion: SummandInclusion { maps },
        zeta,
    })
}

/// One summand of a fully expanded triple composite, in tree coordinates:
/// the word chosen in φ̃₁'s component, then per slot the word chosen in φ̃₂'s
/// component together with the per-letter choices into φ̃₃'s components.
type TreeCoord = (usize, Vec<(usize, Vec<usize>)>);

/// Report of the coherence law for a composable triple.
#[derive(Debug, Clone)]
pub struct CoherenceReport {
    pub components: usize,
    pub summands_checked: usize,
    pub alive: usize,
    pub route_collapse_inner_first: usize,
    pub route_collapse_outer_first: usize,
    pub passed: bool,
    pub mismatch: Option<String>,
}

impl CoherenceReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "components": self.components,
            "summands_checked": self.summands_checked,
            "alive": self.alive,
            "route_collapse_inner_first": self.route_collapse_inner_first,
            "route_collapse_outer_first": self.route_collapse_outer_first,
            "passed": self.passed,
            "mismatch": self.mismatch,
        })
    }
}

impl fmt::Display for CoherenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "summands checked: {} across {} components",
            self.summands_checked, self.components
        )?;
        writeln!(
            f,
            "alive: {} (inner-first route {}, outer-first route {})",
            self.alive, self.route_collapse_inner_first, self.route_collapse_outer_first
        )?;
        match &self.mismatch {
            None => write!(f, "coherence holds: both inclusion routes agree"),
            Some(m) => write!(f, "coherence FAILED: {m}"),
        }
    }
}

/// Verifies that the two composite summand inclusions
/// widetilde(φ₃φ₂φ₁) ⇒ φ̃₁φ̃₂φ̃₃ agree.
///
/// Composite inclusions are monotone word-preserving injections, so they are
/// equal exactly when the same full-expansion summands survive both routes.
/// Route one collapses the inner pair first, killing a summand when its
/// φ₂∘φ₁-word has a related pair in target(φ₂) or the final word has one in
/// target(φ₃); route two collapses the outer pair first, killing per-slot
/// words with a related pair in target(φ₃) before classifying the final word.
/// Agreement is a theorem precisely because φ₃ is a homomorphism; the
/// survivor multiset must also reproduce widetilde(φ₃φ₂φ₁).
pub fn check_alpha_coherence(
    phi1: &WeilMorphism,
    phi2: &WeilMorphism,
    phi3: &WeilMorphism,
) -> Result<CoherenceReport, SpaceError> {
    let f1 = phitilde(phi1)?;
    let f2 = phitilde(phi2)?;
    let f3 = phitilde(phi3)?;
    if f1.target != f2.source || f2.target != f3.source {
        return Err(SpaceError::Boundary(
            "triple is not composable".to_string(),
        ));
    }
    let mid = phi2.target().clone();
    let fin = phi3.target().clone();

    // Substitution is strictly associative on canonical forms; both
    // parenthesizations must agree before any collapsing happens.
    let left = compose_space(&compose_space(&f1, &f2)?, &f3)?;
    let right = compose_space(&f1, &compose_space(&f2, &f3)?)?;
    if left != right {
        return Err(SpaceError::StructuralViolation(
            "formal substitution is not associative on this triple".to_string(),
        ));
    }

    let triple = compose(phi3, &compose(phi2, phi1)?)?;
    let widetilde = phitilde(&triple)?;

    let mut summands_checked = 0usize;
    let mut alive_total = 0usize;
    let mut inner_total = 0usize;
    let mut outer_total = 0usize;
    let mut mismatch: Option<String> = None;

    for (j, wedge1) in f1.components().iter().enumerate() {
        // Stage one: expand φ̃₂ into this component's words.
        let stage1 = expand_wedge(wedge1, &f2)?;
        let mut route_inner: BTreeSet<TreeCoord> = BTreeSet::new();
        let mut route_outer: BTreeSet<TreeCoord> = BTreeSet::new();
        let mut direct: BTreeSet<TreeCoord> = BTreeSet::new();
        let mut alive_words: Vec<SmashWord> = Vec::new();

        for s1 in &stage1 {
            let word12_alive = !s1.word.has_related_pair(&mid);
            // Stage two: expand φ̃₃ into the chosen φ̃₂-words slot by slot,
            // tracking each slot's own word for the outer-first route.
            let chosen2: Vec<&SmashWord> = f1.components()[j].words()[s1.word_choice]
                .letters()
                .iter()
                .zip(&s1.slot_choices)
                .map(|(&v, &h)| &f2.components()[(v - 1) as usize].words()[h])
                .collect();
            let per_slot: Vec<Vec<ExpandedSummand>> = chosen2
                .iter()
                .map(|w2| {
                    expand_wedge(&WedgeSum::new(vec![(*w2).clone()]), &f3)
                })
                .collect::<Result<_, _>>()?;
            if per_slot.iter().any(|v| v.is_empty()) {
                // A slot hit a point component; the summand vanishes in every
                // route before classification.
                continue;
            }
            let mut counters = vec![0usize; per_slot.len()];
            loop {
                let picks: Vec<&ExpandedSummand> = per_slot
                    .iter()
                    .zip(&counters)
                    .map(|(v, &c)| &v[c])
                    .collect();
                summands_checked += 1;
                let final_word =
                    SmashWord::concat(&picks.iter().map(|p| &p.word).collect::<Vec<_>>());
                let final_alive = !final_word.has_related_pair(&fin);
                let slots_alive = picks.iter().all(|p| !p.word.has_related_pair(&fin));
                let coord: TreeCoord = (
                    s1.word_choice,
                    s1.slot_choices
                        .iter()
                        .zip(&picks)
                        .map(|(&h, p)| (h, p.slot_choices.clone()))
                        .collect(),
                );
                if word12_alive && final_alive {
                    route_inner.insert(coord.clone());
                    inner_total += 1;
                }
                if slots_alive && final_alive {
                    route_outer.insert(coord.clone());
                    outer_total += 1;
                }
                if final_alive {
                    direct.insert(coord);
                    alive_total += 1;
                    alive_words.push(final_word);
                }
                let mut k = per_slot.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    counters[k] += 1;
                    if counters[k] < per_slot[k].len() {
                        break;
                    }
                    counters[k] = 0;
                }
                if counters.iter().all(|&c| c == 0) {
                    break;
                }
            }
        }

        if mismatch.is_none() {
            if route_inner != direct {
                mismatch = Some(format!(
                    "component {}: inner-first route keeps {} summands, direct classification {}",
                    j + 1,
                    route_inner.len(),
                    direct.len()
                ));
            } else if route_outer != direct {
                mismatch = Some(format!(
                    "component {}: outer-first route keeps {} summands, direct classification {}",
                    j + 1,
                    route_outer.len(),
                    direct.len()
                ));
            } else {
                alive_words.sort();
                if alive_words.iter().ne(widetilde.components()[j].words().iter()) {
                    mismatch = Some(format!(
                        "component {}: surviving words do not reproduce the composite wedge",
                        j + 1
                    ));
                }
            }
        }
    }

    Ok(CoherenceReport {
        components: f1.components().len(),
        summands_checked,
        alive: alive_total,
        route_collapse_inner_first: inner_total,
        route_collapse_outer_first: outer_total,
        passed: mismatch.is_none(),
        mismatch,
    })
}
