use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{WeilAlgebra, WeilError};

/// Coefficients are arbitrary-precision naturals; all arithmetic is exact.
pub type Natural = num_bigint::BigUint;

/// A nonzero monomial: a strictly increasing list of 1-based generator
/// indices, at most one per block of the ambient algebra. The empty list is
/// the constant monomial 1, which may appear in basis enumerations but never
/// in an [`Element`]'s support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    indices: Vec<u32>,
}

impl Monomial {
    /// The constant monomial 1.
    pub fn one() -> Self {
        Monomial {
            indices: Vec::new(),
        }
    }

    /// Builds a monomial from an already strictly increasing index list.
    pub fn from_sorted(indices: Vec<u32>) -> Result<Self, WeilError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(WeilError::UnnormalizedMonomial);
        }
        Ok(Monomial { indices })
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn is_one(&self) -> bool {
        self.indices.is_empty()
    }

    /// Shifts every index, reinterpreting the monomial inside a tensor
    /// factor that starts `offset` generators in.
    pub fn shift(&self, offset: u32) -> Monomial {
        Monomial {
            indices: self.indices.iter().map(|&i| i + offset).collect(),
        }
    }

    /// Whether the monomial is a valid nonzero monomial of `ambient`.
    pub fn validate(&self, ambient: &WeilAlgebra) -> Result<(), WeilError> {
        let mut last_block: Option<usize> = None;
        for &i in &self.indices {
            let b = ambient.block_of(i)?;
            if last_block == Some(b) {
                return Err(WeilError::UnnormalizedMonomial);
            }
            last_block = Some(b);
        }
        Ok(())
    }
}

/// Degree first, then index-lexicographic. This is the canonical order used
/// for printing and for basis enumeration of a single algebra.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices.iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Normalizes a raw index list into the monomial basis of `ambient`.
///
/// Returns `None` when the product is zero: an index repeats or two indices
/// share a block. Otherwise returns the sorted monomial. Zero monomials are
/// never stored anywhere downstream.
pub fn normalize_monomial(
    ambient: &WeilAlgebra,
    raw: &[u32],
) -> Result<Option<Monomial>, WeilError> {
    let mut indices = raw.to_vec();
    for &i in &indices {
        ambient.block_of(i)?;
    }
    indices.sort_unstable();
    for w in indices.windows(2) {
        if w[0] == w[1] || ambient.related(w[0], w[1])? {
            return Ok(None);
        }
    }
    Ok(Some(Monomial { indices }))
}

/// An element of the augmentation ideal of a Weil algebra: a finite ℕ-linear
/// combination of nonzero non-constant monomials. Constant terms are
/// structurally impossible, which matches what generator images may contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    ambient: WeilAlgebra,
    terms: BTreeMap<Monomial, Natural>,
}

impl Element {
    pub fn zero(ambient: WeilAlgebra) -> Self {
        Element {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms, dropping zero coefficients and rejecting
    /// constant or unnormalized monomials.
    pub fn from_terms<I>(ambient: WeilAlgebra, terms: I) -> Result<Self, WeilError>
    where
        I: IntoIterator<Item = (Monomial, Natural)>,
    {
        let mut acc: BTreeMap<Monomial, Natural> = BTreeMap::new();
        for (m, c) in terms {
            if m.is_one() {
                return Err(WeilError::ConstantTerm);
            }
            m.validate(&ambient)?;
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Natural::zero) += c;
        }
        Ok(Element {
            ambient,
            terms: acc,
        })
    }

    /// The element consisting of one monomial with coefficient 1.
    pub fn monomial(ambient: WeilAlgebra, m: Monomial) -> Result<Self, WeilError> {
        Element::from_terms(ambient, [(m, Natural::from(1u32))])
    }

    /// The generator xᵢ as an element.
    pub fn generator(ambient: WeilAlgebra, index: u32) -> Result<Self, WeilError> {
        ambient.block_of(index)?;
        Element::monomial(ambient, Monomial { indices: vec![index] })
    }

    pub fn ambient(&self) -> &WeilAlgebra {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Natural)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Natural {
        self.terms.get(m).cloned().unwrap_or_else(Natural::zero)
    }

    fn check_ambient(&self, other: &Element) -> Result<(), WeilError> {
        if self.ambient != other.ambient {
            return Err(WeilError::AmbientMismatch {
                expected: self.ambient.to_string(),
                found: other.ambient.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element, WeilError> {
        self.check_ambient(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Natural::zero) += c;
        }
        Ok(Element {
            ambient: self.ambient.clone(),
            terms,
        })
    }

    /// Exact product; monomial products that hit a relation vanish silently.
    pub fn mul(&self, other: &Element) -> Result<Element, WeilError> {
        self.check_ambient(other)?;
        let mut terms: BTreeMap<Monomial, Natural> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut raw: Vec<u32> = m1.indices.clone();
                raw.extend_from_slice(&m2.indices);
                if let Some(m) = normalize_monomial(&self.ambient, &raw)? {
                    *terms.entry(m).or_insert_with(Natural::zero) += c1 * c2;
                }
            }
        }
        Ok(Element {
            ambient: self.ambient.clone(),
            terms,
        })
    }

    pub fn scale(&self, k: &Natural) -> Element {
        if k.is_zero() {
            return Element::zero(self.ambient.clone());
        }
        Element {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    /// Reinterprets the element in `target`, shifting indices by `offset`.
    /// The block structure over the shifted range must agree, which holds for
    /// the tensor embeddings this is used for.
    pub fn embed(&self, target: WeilAlgebra, offset: u32) -> Result<Element, WeilError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.shift(offset), c.clone()))
            .collect::<Vec<_>>();
        Element::from_terms(target, terms)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = Natural::from(1u32);
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if *c == one {
                    m.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u32) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn normalize_sorts_and_detects_zero() {
        let w2 = WeilAlgebra::w_pow(2).unwrap();
        let ww = WeilAlgebra::w_tensor(2);
        // x2*x1 dies in W² (one block) but survives sorted in W⊗W.
        assert_eq!(normalize_monomial(&w2, &[2, 1]).unwrap(), None);
        let m = normalize_monomial(&ww, &[2, 1]).unwrap().unwrap();
        assert_eq!(m.indices(), &[1, 2]);
        // Squares always vanish.
        assert_eq!(normalize_monomial(&ww, &[1, 1]).unwrap(), None);
        // Out-of-range index is an input error, not zero.
        assert!(normalize_monomial(&ww, &[3]).is_err());
    }

    #[test]
    fn element_addition_merges_support() {
        let ww = WeilAlgebra::w_tensor(2);
        let x1 = Element::generator(ww.clone(), 1).unwrap();
        let sum = x1.add(&x1).unwrap();
        assert_eq!(sum.to_string(), "2*x1");
    }

    #[test]
    fn paper_product_vanishes() {
        // In ℕ[x,y]/(x²,y²): (x + x + xy + y)·(xy + xy + xy) = 0.
        let ww = WeilAlgebra::w_tensor(2);
        let x = Monomial::from_sorted(vec![1]).unwrap();
        let y = Monomial::from_sorted(vec![2]).unwrap();
        let xy = Monomial::from_sorted(vec![1, 2]).unwrap();
        let lhs = Element::from_terms(
            ww.clone(),
            [
                (x, nat(2)),
                (xy.clone(), nat(1)),
                (y, nat(1)),
            ],
        )
        .unwrap();
        let rhs = Element::from_terms(ww.clone(), [(xy, nat(3))]).unwrap();
        assert!(lhs.mul(&rhs).unwrap().is_zero());
    }

    #[test]
    fn constants_are_rejected() {
        let w = WeilAlgebra::w();
        assert_eq!(
            Element::from_terms(w, [(Monomial::one(), nat(1))]),
            Err(WeilError::ConstantTerm)
        );
    }

    #[test]
    fn display_is_canonical() {
        let a = WeilAlgebra::new(vec![1, 2]).unwrap();
        let e = Element::from_terms(
            a,
            [
                (Monomial::from_sorted(vec![1, 3]).unwrap(), nat(1)),
                (Monomial::from_sorted(vec![2]).unwrap(), nat(5)),
            ],
        )
        .unwrap();
        assert_eq!(e.to_string(), "5*x2 + x1*x3");
    }
}
