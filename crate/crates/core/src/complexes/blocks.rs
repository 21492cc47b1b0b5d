use std::collections::BTreeMap;

use crate::group::{Lattice, SubgroupId};
use crate::orbit::{MorphismSum, OrbitError};

/// A sparse matrix of morphism sums between two typed bases.
///
/// Entry `(row, col)` is a combination of G-maps from the orbit type of
/// column `col` to the orbit type of row `row`; it acts on a chain by
/// post-composition. Stored column-major with zero entries omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    row_types: Vec<SubgroupId>,
    col_types: Vec<SubgroupId>,
    columns: Vec<BTreeMap<usize, MorphismSum>>,
}

impl BlockMatrix {
    pub fn zero(row_types: Vec<SubgroupId>, col_types: Vec<SubgroupId>) -> Self {
        let columns = vec![BTreeMap::new(); col_types.len()];
        Self {
            row_types,
            col_types,
            columns,
        }
    }

    pub fn identity(lattice: &Lattice, types: Vec<SubgroupId>) -> Self {
        let mut m = Self::zero(types.clone(), types.clone());
        for (i, &t) in types.iter().enumerate() {
            m.set(i, i, MorphismSum::identity(lattice, t));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.row_types.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_types.len()
    }

    pub fn row_types(&self) -> &[SubgroupId] {
        &self.row_types
    }

    pub fn col_types(&self) -> &[SubgroupId] {
        &self.col_types
    }

    pub fn is_square(&self) -> bool {
        self.row_types == self.col_types
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&MorphismSum> {
        self.columns[col].get(&row)
    }

    pub fn column(&self, col: usize) -> &BTreeMap<usize, MorphismSum> {
        &self.columns[col]
    }

    /// Replaces an entry; a zero sum clears it.
    ///
    /// Panics if the sum's hom-set does not match the row and column types.
    pub fn set(&mut self, row: usize, col: usize, sum: MorphismSum) {
        assert_eq!(sum.source(), self.col_types[col], "entry source type");
        assert_eq!(sum.target(), self.row_types[row], "entry target type");
        if sum.is_zero() {
            self.columns[col].remove(&row);
        } else {
            self.columns[col].insert(row, sum);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, sum: &MorphismSum) {
        let slot = self.columns[col]
            .entry(row)
            .or_insert_with(|| MorphismSum::zero(sum.source(), sum.target()));
        slot.add_assign(sum).expect("entry types");
        if slot.is_zero() {
            self.columns[col].remove(&row);
        }
    }

    /// `(row, col, entry)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &MorphismSum)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, s)| (r, c, s)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    /// `self` followed by `second`: entry `(ρ, σ)` is
    /// `Σ_τ self(τ, σ) ; second(ρ, τ)`.
    pub fn then(&self, lattice: &Lattice, second: &BlockMatrix) -> Result<BlockMatrix, OrbitError> {
        assert_eq!(self.row_types, second.col_types, "inner dimensions");
        let mut out = BlockMatrix::zero(second.row_types.clone(), self.col_types.clone());
        for (sigma, col) in self.columns.iter().enumerate() {
            for (&tau, a) in col {
                for (&rho, b) in &second.columns[tau] {
                    out.add_to(rho, sigma, &lattice.sum_compose(a, b)?);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BlockMatrix) -> BlockMatrix {
        assert_eq!(self.row_types, other.row_types);
        assert_eq!(self.col_types, other.col_types);
        let mut out = self.clone();
        for (r, c, s) in other.entries() {
            out.add_to(r, c, s);
        }
        out
    }

    pub fn scaled(&self, k: i64) -> BlockMatrix {
        let mut out = BlockMatrix::zero(self.row_types.clone(), self.col_types.clone());
        for (r, c, s) in self.entries() {
            out.set(r, c, s.scaled(k));
        }
        out
    }

    /// The sub-block on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BlockMatrix {
        let mut row_pos = vec![usize::MAX; self.nrows()];
        for (i, &r) in rows.iter().enumerate() {
            row_pos[r] = i;
        }
        let mut out = BlockMatrix::zero(
            rows.iter().map(|&r| self.row_types[r]).collect(),
            cols.iter().map(|&c| self.col_types[c]).collect(),
        );
        for (j, &c) in cols.iter().enumerate() {
            for (&r, s) in &self.columns[c] {
                if row_pos[r] != usize::MAX {
                    out.set(row_pos[r], j, s.clone());
                }
            }
        }
        out
    }

    /// Places `block` with its rows at `row_offset` and columns at `col_offset`.
    pub fn paste(&mut self, block: &BlockMatrix, row_offset: usize, col_offset: usize) {
        for (r, c, s) in block.entries() {
            self.set(r + row_offset, c + col_offset, s.clone());
        }
    }
}
