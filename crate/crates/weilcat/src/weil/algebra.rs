use std::fmt;

use super::{Monomial, WeilError};

/// A Weil ℕ-algebra, encoded by its list of block widths.
///
/// `widths = [n₁, …, n_r]` denotes ℕ[x₁,…,xₙ]/(xᵢxⱼ | i ∼ j) with n = Σ nᵢ
/// and ∼ the partition into consecutive blocks of those widths. The empty
/// list denotes ℕ. Generator indices are 1-based throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeilAlgebra {
    widths: Vec<u32>,
}

impl WeilAlgebra {
    /// Builds an algebra from block widths. Every width must be at least 1.
    pub fn new(widths: Vec<u32>) -> Result<Self, WeilError> {
        if let Some(block) = widths.iter().position(|&w| w == 0) {
            return Err(WeilError::ZeroWidth { block });
        }
        Ok(WeilAlgebra { widths })
    }

    /// The initial algebra ℕ (no generators).
    pub fn nat() -> Self {
        WeilAlgebra { widths: Vec::new() }
    }

    /// W = ℕ[x]/(x²), a single block of width 1.
    pub fn w() -> Self {
        WeilAlgebra { widths: vec![1] }
    }

    /// Wⁿ = ℕ[x₁,…,xₙ]/(xᵢxⱼ), a single block of width n ≥ 1.
    pub fn w_pow(n: u32) -> Result<Self, WeilError> {
        WeilAlgebra::new(vec![n])
    }

    /// W ⊗ ⋯ ⊗ W with r factors (r = 0 gives ℕ).
    pub fn w_tensor(r: usize) -> Self {
        WeilAlgebra { widths: vec![1; r] }
    }

    pub fn widths(&self) -> &[u32] {
        &self.widths
    }

    pub fn block_count(&self) -> usize {
        self.widths.len()
    }

    pub fn generator_count(&self) -> u32 {
        self.widths.iter().sum()
    }

    pub fn is_nat(&self) -> bool {
        self.widths.is_empty()
    }

    /// The 0-based block containing 1-based generator `index`.
    pub fn block_of(&self, index: u32) -> Result<usize, WeilError> {
        if index == 0 || index > self.generator_count() {
            return Err(WeilError::IndexOutOfRange {
                index,
                count: self.generator_count(),
            });
        }
        let mut upper = 0;
        for (b, &w) in self.widths.iter().enumerate() {
            upper += w;
            if index <= upper {
                return Ok(b);
            }
        }
        unreachable!("index bounds were checked above")
    }

    /// Whether xᵢxⱼ = 0, i.e. i and j lie in one block (squares always vanish).
    pub fn related(&self, i: u32, j: u32) -> Result<bool, WeilError> {
        Ok(i == j || self.block_of(i)? == self.block_of(j)?)
    }

    /// Tensor product, realized by concatenating width lists. Strictly
    /// associative with ℕ as strict unit.
    pub fn tensor(&self, other: &WeilAlgebra) -> WeilAlgebra {
        let mut widths = self.widths.clone();
        widths.extend_from_slice(&other.widths);
        WeilAlgebra { widths }
    }

    /// All nonzero monomials, the empty one included, in degree-then-index
    /// order. A monomial is nonzero exactly when it picks at most one
    /// generator from each block.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut choices: Vec<Vec<u32>> = vec![Vec::new()];
        let mut start = 1u32;
        for &w in &self.widths {
            let mut next = Vec::with_capacity(choices.len() * (w as usize + 1));
            for picked in &choices {
                next.push(picked.clone());
                for g in start..start + w {
                    let mut with = picked.clone();
                    with.push(g);
                    next.push(with);
                }
            }
            choices = next;
            start += w;
        }
        let mut basis: Vec<Monomial> = choices
            .into_iter()
            .map(|indices| Monomial::from_sorted(indices).expect("blockwise picks are sorted"))
            .collect();
        basis.sort();
        basis
    }

    /// Number of nonzero monomials, ∏ (1 + nᵢ).
    pub fn basis_size(&self) -> u64 {
        self.widths.iter().map(|&w| w as u64 + 1).product()
    }
}

impl fmt::Display for WeilAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.widths.is_empty() {
            return write!(f, "N");
        }
        let parts: Vec<String> = self
            .widths
            .iter()
            .map(|&w| {
                if w == 1 {
                    "W".to_string()
                } else {
                    format!("W^{w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("@"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths_encode_the_algebra() {
        assert_eq!(WeilAlgebra::nat().generator_count(), 0);
        assert_eq!(WeilAlgebra::w().generator_count(), 1);
        let a = WeilAlgebra::new(vec![2, 1]).unwrap();
        assert_eq!(a.generator_count(), 3);
        assert_eq!(a.block_of(1).unwrap(), 0);
        assert_eq!(a.block_of(2).unwrap(), 0);
        assert_eq!(a.block_of(3).unwrap(), 1);
        assert!(a.related(1, 2).unwrap());
        assert!(!a.related(2, 3).unwrap());
        assert!(a.related(3, 3).unwrap());
    }

    #[test]
    fn zero_width_rejected() {
        assert_eq!(
            WeilAlgebra::new(vec![1, 0]),
            Err(WeilError::ZeroWidth { block: 1 })
        );
    }

    #[test]
    fn tensor_concatenates_and_is_strict() {
        let a = WeilAlgebra::new(vec![2]).unwrap();
        let b = WeilAlgebra::w_tensor(2);
        assert_eq!(a.tensor(&b).widths(), &[2, 1, 1]);
        assert_eq!(a.tensor(&WeilAlgebra::nat()), a);
        assert_eq!(WeilAlgebra::nat().tensor(&a), a);
        let c = WeilAlgebra::new(vec![3]).unwrap();
        assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
    }

    #[test]
    fn equality_is_widths_equality() {
        // W⊗W and W² differ even though both have two nilpotent generators.
        assert_ne!(WeilAlgebra::w_tensor(2), WeilAlgebra::w_pow(2).unwrap());
    }

    #[test]
    fn basis_enumerates_blockwise_picks() {
        let ww = WeilAlgebra::w_tensor(2);
        let names: Vec<String> = ww.basis().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["1", "x1", "x2", "x1*x2"]);
        assert_eq!(ww.basis_size(), 4);

        let w2 = WeilAlgebra::w_pow(2).unwrap();
        let names: Vec<String> = w2.basis().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["1", "x1", "x2"]);
    }

    #[test]
    fn display_round_trips_shape() {
        assert_eq!(WeilAlgebra::nat().to_string(), "N");
        assert_eq!(WeilAlgebra::w().to_string(), "W");
        assert_eq!(WeilAlgebra::new(vec![2, 1]).unwrap().to_string(), "W^2@W");
    }
}
