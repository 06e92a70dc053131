//! The Lawvere-theory instance: finitely generated free ℕ-modules and
//! ℕ-matrices, acted on through monomial bases. T^A(ℕ^k) is free on the
//! pairs (monomial of A, basis element), monomial-major.
//!
//! Monomials are ranked with the first block least significant and the last
//! block most significant (a reversed mixed radix). Under that order the
//! basis of T^{A⊗A′}(M) coincides positionally with the basis of
//! T^{A′}(T^A(M)), which makes the strictness equations hold as literal
//! matrix identities. Ranking by degree instead breaks them once two blocks
//! of width ≥ 2 meet: deg-lex on W²⊗W² interleaves the second block's
//! generators among the first block's degree-2 stratum.
//!
//! Objects compare by rank alone. Labels record the chosen basis for
//! display and serialization; they are not transported through the action,
//! which would require the outer of two nested applications to know the
//! inner algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::engine::{
    certify_basis_square, BasisSquare, BasisTables, ComputableCategory, MorphismSampler,
    PullbackSupport, WeilAction,
};
use crate::limits::Square;
use crate::sample;
use crate::weil::{normalize_monomial, Monomial, Natural, WeilAlgebra, WeilMorphism};
use rand::Rng;

/// ℕ^k with a chosen, named basis.
#[derive(Debug, Clone, Eq)]
pub struct NModObject {
    labels: Vec<String>,
}

impl NModObject {
    pub fn new(labels: Vec<String>) -> Self {
        NModObject { labels }
    }

    /// Rank k with the default labels e1..ek.
    pub fn from_rank(rank: usize) -> Self {
        NModObject {
            labels: (1..=rank).map(|i| format!("e{i}")).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "rank": self.rank(), "labels": self.labels })
    }
}

impl PartialEq for NModObject {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank()
    }
}

impl fmt::Display for NModObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rank() {
            1 => write!(f, "N"),
            k => write!(f, "N^{k}"),
        }
    }
}

/// A dense matrix of naturals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Natural>,
}

impl NatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        NatMatrix {
            rows,
            cols,
            entries: vec![Natural::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = NatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Natural::one());
        }
        m
    }

    /// Builds from explicit rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self, String> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err("ragged rows".to_string());
        }
        Ok(NatMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .into_iter()
                .flatten()
                .map(Natural::from)
                .collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Natural) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        NatMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Natural {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Natural) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn mul(&self, rhs: &NatMatrix) -> Result<NatMatrix, String> {
        if self.cols != rhs.rows {
            return Err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        Ok(NatMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).map(|k| self.get(r, k) * rhs.get(k, c)).sum()
        }))
    }

    pub fn add(&self, rhs: &NatMatrix) -> Result<NatMatrix, String> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err("dimension mismatch in matrix addition".to_string());
        }
        Ok(NatMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c) + rhs.get(r, c)
        }))
    }

    /// Places `self` and `other` on the diagonal of a larger matrix.
    pub fn block_diag(&self, other: &NatMatrix) -> NatMatrix {
        NatMatrix::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |r, c| match (r < self.rows, c < self.cols) {
                (true, true) => self.get(r, c).clone(),
                (false, false) => other.get(r - self.rows, c - self.cols).clone(),
                _ => Natural::zero(),
            },
        )
    }

    /// Stacks `self` above `bottom`; both must have the same column count.
    pub fn stack(&self, bottom: &NatMatrix) -> Result<NatMatrix, String> {
        if self.cols != bottom.cols {
            return Err("column mismatch in row stacking".to_string());
        }
        Ok(NatMatrix::from_fn(self.rows + bottom.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                bottom.get(r - self.rows, c).clone()
            }
        }))
    }

    /// Places `self` left of `right`; both must have the same row count.
    pub fn hstack(&self, right: &NatMatrix) -> Result<NatMatrix, String> {
        if self.rows != right.rows {
            return Err("row mismatch in column stacking".to_string());
        }
        Ok(NatMatrix::from_fn(self.rows, self.cols + right.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                right.get(r, c - self.cols).clone()
            }
        }))
    }

    pub fn transpose(&self) -> NatMatrix {
        NatMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Over ℕ a matrix is invertible exactly when it is a permutation.
    pub fn is_permutation(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let one = Natural::one();
        let unit_rows = (0..self.rows).all(|r| {
            (0..self.cols).filter(|&c| !self.get(r, c).is_zero()).count() == 1
                && (0..self.cols).all(|c| self.get(r, c).is_zero() || *self.get(r, c) == one)
        });
        unit_rows
            && (0..self.cols)
                .all(|c| (0..self.rows).filter(|&r| !self.get(r, c).is_zero()).count() == 1)
    }

    /// The inverse of a permutation matrix, its transpose.
    pub fn inverse_permutation(&self) -> Result<NatMatrix, String> {
        if !self.is_permutation() {
            return Err("matrix is not a permutation, not invertible over the naturals".to_string());
        }
        Ok(self.transpose())
    }

    pub fn row(&self, r: usize) -> &[Natural] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.rows)
            .map(|r| self.row(r).iter().map(nat_json).collect())
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": rows })
    }
}

fn nat_json(n: &Natural) -> serde_json::Value {
    n.to_u64()
        .map(serde_json::Value::from)
        .unwrap_or_else(|| serde_json::Value::from(n.to_string()))
}

impl fmt::Display for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[]");
        }
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(Natural::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// An ℕ-linear map presented by its matrix: rows index the target basis,
/// columns the source basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NModMorphism {
    source: NModObject,
    target: NModObject,
    matrix: NatMatrix,
}

impl NModMorphism {
    pub fn new(source: NModObject, target: NModObject, matrix: NatMatrix) -> Result<Self, String> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(format!(
                "matrix is {}x{}, endpoints need {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            ));
        }
        Ok(NModMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &NModObject {
        &self.source
    }

    pub fn target(&self) -> &NModObject {
        &self.target
    }

    pub fn matrix(&self) -> &NatMatrix {
        &self.matrix
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "source_rank": self.source.rank(),
            "target_rank": self.target.rank(),
            "matrix": self.matrix.to_json()["entries"],
        })
    }
}

impl fmt::Display for NModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {}", self.source, self.target, self.matrix)
    }
}

/// The category of finitely generated free ℕ-modules, with finite products.
#[derive(Debug, Clone, Default)]
pub struct NModCategory;

impl ComputableCategory for NModCategory {
    type Obj = NModObject;
    type Mor = NModMorphism;

    fn source(&self, f: &NModMorphism) -> NModObject {
        f.source.clone()
    }

    fn target(&self, f: &NModMorphism) -> NModObject {
        f.target.clone()
    }

    fn identity(&self, x: &NModObject) -> NModMorphism {
        NModMorphism {
            source: x.clone(),
            target: x.clone(),
            matrix: NatMatrix::identity(x.rank()),
        }
    }

    fn compose(&self, g: &NModMorphism, f: &NModMorphism) -> Result<NModMorphism, String> {
        if g.source != f.target {
            return Err(format!(
                "boundary mismatch: composing {} -> {} after {} -> {}",
                g.source, g.target, f.source, f.target
            ));
        }
        Ok(NModMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            matrix: g.matrix.mul(&f.matrix)?,
        })
    }
}

impl NModCategory {
    pub fn terminal(&self) -> NModObject {
        NModObject::new(Vec::new())
    }

    pub fn bang(&self, m: &NModObject) -> NModMorphism {
        NModMorphism {
            source: m.clone(),
            target: self.terminal(),
            matrix: NatMatrix::zero(0, m.rank()),
        }
    }

    pub fn product(&self, m: &NModObject, n: &NModObject) -> NModObject {
        let mut labels = m.labels.clone();
        labels.extend(n.labels.iter().cloned());
        NModObject::new(labels)
    }

    pub fn proj1(&self, m: &NModObject, n: &NModObject) -> NModMorphism {
        let matrix = NatMatrix::identity(m.rank())
            .hstack(&NatMatrix::zero(m.rank(), n.rank()))
            .expect("row counts agree");
        NModMorphism {
            source: self.product(m, n),
            target: m.clone(),
            matrix,
        }
    }

    pub fn proj2(&self, m: &NModObject, n: &NModObject) -> NModMorphism {
        let matrix = NatMatrix::zero(n.rank(), m.rank())
            .hstack(&NatMatrix::identity(n.rank()))
            .expect("row counts agree");
        NModMorphism {
            source: self.product(m, n),
            target: n.clone(),
            matrix,
        }
    }

    /// ⟨f, g⟩: Z → M×N for f: Z → M, g: Z → N.
    pub fn pairing(&self, f: &NModMorphism, g: &NModMorphism) -> Result<NModMorphism, String> {
        if f.source != g.source {
            return Err("pairing needs a common source".to_string());
        }
        Ok(NModMorphism {
            source: f.source.clone(),
            target: self.product(&f.target, &g.target),
            matrix: f.matrix.stack(&g.matrix)?,
        })
    }

    /// f × g on products, the block diagonal.
    pub fn product_mor(&self, f: &NModMorphism, g: &NModMorphism) -> NModMorphism {
        NModMorphism {
            source: self.product(&f.source, &g.source),
            target: self.product(&f.target, &g.target),
            matrix: f.matrix.block_diag(&g.matrix),
        }
    }

    pub fn swap(&self, m: &NModObject, n: &NModObject) -> NModMorphism {
        let top = NatMatrix::zero(n.rank(), m.rank())
            .hstack(&NatMatrix::identity(n.rank()))
            .expect("row counts agree");
        let bottom = NatMatrix::identity(m.rank())
            .hstack(&NatMatrix::zero(m.rank(), n.rank()))
            .expect("row counts agree");
        NModMorphism {
            source: self.product(m, n),
            target: self.product(n, m),
            matrix: top.stack(&bottom).expect("column counts agree"),
        }
    }
}

impl MorphismSampler for NModCategory {
    fn sample_morphisms_into(&self, x: &NModObject, seed: u64, budget: usize) -> Vec<NModMorphism> {
        let mut rng = sample::rng_from_seed(seed);
        (0..budget)
            .map(|_| {
                let source = NModObject::from_rank(rng.random_range(0..=3));
                let matrix = NatMatrix::from_fn(x.rank(), source.rank(), |_, _| {
                    Natural::from(rng.random_range(0u64..=3))
                });
                NModMorphism {
                    source,
                    target: x.clone(),
                    matrix,
                }
            })
            .collect()
    }
}

/// All monomials of `a`, the empty monomial first, ranked with the first
/// block least significant.
pub fn ranked_monomials(a: &WeilAlgebra) -> Vec<Monomial> {
    let widths = a.widths();
    let size = a.basis_size() as usize;
    let mut offsets = Vec::with_capacity(widths.len());
    let mut acc = 0u32;
    for &w in widths {
        offsets.push(acc);
        acc += w;
    }
    (0..size)
        .map(|rank| {
            let mut rest = rank;
            let mut indices = Vec::new();
            for (b, &w) in widths.iter().enumerate() {
                let radix = w as usize + 1;
                let digit = rest % radix;
                rest /= radix;
                if digit > 0 {
                    indices.push(offsets[b] + digit as u32);
                }
            }
            normalize_monomial(a, &indices)
                .expect("digit decode stays in range")
                .expect("one generator per block never vanishes")
        })
        .collect()
}

/// The position of `m` in [`ranked_monomials`].
pub fn monomial_rank(a: &WeilAlgebra, m: &Monomial) -> Result<usize, String> {
    m.validate(a).map_err(|e| e.to_string())?;
    let widths = a.widths();
    let mut digits = vec![0usize; widths.len()];
    for &i in m.indices() {
        let block = a.block_of(i).map_err(|e| e.to_string())?;
        let offset: u32 = widths[..block].iter().sum();
        digits[block] = (i - offset) as usize;
    }
    let mut rank = 0usize;
    let mut place = 1usize;
    for (b, &w) in widths.iter().enumerate() {
        rank += digits[b] * place;
        place *= w as usize + 1;
    }
    Ok(rank)
}

/// The action of 𝕎eil on free ℕ-modules by basis expansion.
#[derive(Debug, Clone, Default)]
pub struct NModAction {
    category: NModCategory,
}

impl NModAction {
    pub fn new() -> Self {
        NModAction {
            category: NModCategory,
        }
    }
}

impl WeilAction for NModAction {
    type Cat = NModCategory;

    fn name(&self) -> &'static str {
        "nmod"
    }

    fn category(&self) -> &NModCategory {
        &self.category
    }

    fn act_obj(&self, a: &WeilAlgebra, x: &NModObject) -> NModObject {
        let labels = ranked_monomials(a)
            .iter()
            .flat_map(|u| {
                x.labels.iter().map(move |e| {
                    if u.is_one() {
                        e.clone()
                    } else {
                        format!("{u}.{e}")
                    }
                })
            })
            .collect();
        NModObject::new(labels)
    }

    fn act_mor(&self, phi: &WeilMorphism, x: &NModObject) -> NModMorphism {
        let k = x.rank();
        let source_mons = ranked_monomials(phi.source());
        let target_mons = ranked_monomials(phi.target());
        let target_rank: BTreeMap<&Monomial, usize> = target_mons
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut matrix = NatMatrix::zero(target_mons.len() * k, source_mons.len() * k);
        for (ci, u) in source_mons.iter().enumerate() {
            if u.is_one() {
                for j in 0..k {
                    matrix.set(j, ci * k + j, Natural::one());
                }
                continue;
            }
            let image = phi.eval_monomial(u).expect("basis monomial evaluates");
            for (w, coef) in image.terms() {
                let ri = target_rank[w];
                for j in 0..k {
                    matrix.set(ri * k + j, ci * k + j, coef.clone());
                }
            }
        }
        NModMorphism {
            source: self.act_obj(phi.source(), x),
            target: self.act_obj(phi.target(), x),
            matrix,
        }
    }

    fn act_fun(&self, a: &WeilAlgebra, f: &NModMorphism) -> NModMorphism {
        let count = a.basis_size() as usize;
        let (fr, fc) = (f.matrix.rows(), f.matrix.cols());
        let matrix = NatMatrix::from_fn(count * fr, count * fc, |r, c| {
            if r / fr == c / fc {
                f.matrix.get(r % fr, c % fc).clone()
            } else {
                Natural::zero()
            }
        });
        NModMorphism {
            source: self.act_obj(a, &f.source),
            target: self.act_obj(a, &f.target),
            matrix,
        }
    }
}

/// Reads a matrix whose columns are unit vectors or zero as a basis map:
/// column j ↦ Some(row of its 1) or None.
pub fn unit_column_map(m: &NatMatrix) -> Result<Vec<Option<usize>>, String> {
    let one = Natural::one();
    (0..m.cols())
        .map(|c| {
            let nonzero: Vec<usize> = (0..m.rows()).filter(|&r| !m.get(r, c).is_zero()).collect();
            match nonzero.as_slice() {
                [] => Ok(None),
                [r] if *m.get(*r, c) == one => Ok(Some(*r)),
                _ => Err(format!("column {c} is not a unit or zero column")),
            }
        })
        .collect()
}

impl NModAction {
    fn image_basis_square(&self, square: &Square, x: &NModObject) -> Result<BasisSquare, String> {
        Ok(BasisSquare {
            top: unit_column_map(self.act_mor(square.top(), x).matrix())?,
            left: unit_column_map(self.act_mor(square.left(), x).matrix())?,
            right: unit_column_map(self.act_mor(square.right(), x).matrix())?,
            bottom: unit_column_map(self.act_mor(square.bottom(), x).matrix())?,
        })
    }
}

impl PullbackSupport for NModAction {
    fn certify_image(&self, square: &Square, x: &NModObject) -> Result<(), String> {
        certify_basis_square(&self.image_basis_square(square, x)?).map(|_| ())
    }

    fn sample_image_cones(
        &self,
        square: &Square,
        x: &NModObject,
        seed: u64,
        budget: usize,
    ) -> Vec<(NModMorphism, NModMorphism)> {
        let corner = self.act_obj(square.corner(), x);
        let top = self.act_mor(square.top(), x);
        let left = self.act_mor(square.left(), x);
        self.category
            .sample_morphisms_into(&corner, seed, budget)
            .into_iter()
            .map(|witness| {
                let leg_right = self.category.compose(&top, &witness).expect("boundaries match");
                let leg_bottom = self.category.compose(&left, &witness).expect("boundaries match");
                (leg_right, leg_bottom)
            })
            .collect()
    }

    fn lift_image_cone(
        &self,
        square: &Square,
        x: &NModObject,
        leg_right: &NModMorphism,
        leg_bottom: &NModMorphism,
    ) -> Result<NModMorphism, String> {
        let tables: BasisTables = certify_basis_square(&self.image_basis_square(square, x)?)?;
        let corner = self.act_obj(square.corner(), x);
        if leg_right.source != leg_bottom.source {
            return Err("cone legs have different apexes".to_string());
        }
        if leg_right.target != self.act_obj(square.top().target(), x)
            || leg_bottom.target != self.act_obj(square.left().target(), x)
        {
            return Err("cone legs do not land on the image square's sides".to_string());
        }
        let cols = leg_right.matrix.cols();
        let mut matrix = NatMatrix::zero(corner.rank(), cols);
        for w in 0..corner.rank() {
            let source_row = match (tables.from_top[w], tables.from_left[w]) {
                (Some(u), _) => leg_right.matrix.row(u),
                (None, Some(v)) => leg_bottom.matrix.row(v),
                (None, None) => return Err(format!("corner index {w} escapes the fiber")),
            };
            for (c, value) in source_row.iter().enumerate() {
                matrix.set(w, c, value.clone());
            }
        }
        Ok(NModMorphism {
            source: leg_right.source.clone(),
            target: corner,
            matrix,
        })
    }
}
