//! Finite G-CW complexes as reduced cellular chain data over the orbit
//! category, and cellular maps between them.
//!
//! The G-fixed base point is never stored: every chain group is reduced.
//! Each cell carries its orbit type; cells given with a type conjugate to a
//! class representative are re-typed to the representative on construction
//! (entries are conjugated accordingly), so stored types are always class
//! representatives.

mod blocks;
mod build;
mod group_ring;
mod solve;
mod strata;

pub use blocks::BlockMatrix;
pub use build::{generator_map, orbit_point, orbit_sphere, suspend, suspend_map, wedge, Wedge};
pub use group_ring::{GroupRingElement, GroupRingMatrix};
pub use solve::{
    random_complex, solve_chain_maps, solve_maps, CellPlan, LinearSystem, SolveOptions,
};
pub use strata::{
    fixed_relative_data, quotient_data, quotient_map_data, restrict_map, restrict_to, stratum,
    IntegerChainData, Subcomplex,
};

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{Lattice, SubgroupId};
use crate::orbit::MorphismSum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate cell id {0:?}")]
    DuplicateCellId(String),
    #[error("cell index {0} out of range")]
    CellIndex(usize),
    #[error("entry {from} -> {to} joins cells of incompatible dimensions")]
    DimensionMismatch { from: String, to: String },
    #[error("complexes or maps over different groups")]
    GroupMismatch,
    #[error("element {element} is not in the normalizer of the subgroup")]
    NotInNormalizer { element: usize },
    #[error("map is not a self-map")]
    NotSelfMap,
    #[error("maps are not composable")]
    NotComposable,
    #[error("cell {cell} has boundary on {boundary}, which is outside the subcomplex")]
    NotSubcomplex { cell: String, boundary: String },
    #[error("map sends {cell} to {image}, which is outside the subcomplex")]
    NotPreserved { cell: String, image: String },
    #[error("type violation in entry {from} -> {to}: element {rep} gives no G-map between the orbit types")]
    TypeViolation {
        from: String,
        to: String,
        rep: usize,
    },
    #[error("d∘d is nonzero from {sigma} to {rho}")]
    BoundarySquareNonzero { sigma: String, rho: String },
    #[error("chain law fails from {sigma} to {tau}")]
    ChainLawViolation { sigma: String, tau: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    /// Orbit type, always a class representative.
    pub cell_type: SubgroupId,
    /// The type as supplied; conjugate to `cell_type`.
    pub given_type: SubgroupId,
}

/// A cell as supplied by a caller, before type normalization.
#[derive(Clone, Debug)]
pub struct CellSpec {
    pub id: String,
    pub dim: usize,
    pub cell_type: SubgroupId,
}

impl CellSpec {
    pub fn new(id: impl Into<String>, dim: usize, cell_type: SubgroupId) -> Self {
        Self {
            id: id.into(),
            dim,
            cell_type,
        }
    }
}

/// One matrix entry in terms of the supplied cell types: `Σ coeff·[x ↦ x g]`
/// from cell `from` to cell `to` (indices into the cell list).
#[derive(Clone, Debug)]
pub struct RawEntry {
    pub from: usize,
    pub to: usize,
    pub terms: Vec<(usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    lattice: Arc<Lattice>,
    cells: Vec<Cell>,
    by_dim: Vec<Vec<usize>>,
    differential: BlockMatrix,
}

impl PartialEq for CellComplex {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.same_as(&other.lattice)
            && self.cells == other.cells
            && self.differential == other.differential
    }
}

impl Eq for CellComplex {}

fn normalize_cells(lattice: &Lattice, specs: Vec<CellSpec>) -> Result<Vec<Cell>, ComplexError> {
    let mut seen = HashMap::new();
    let mut cells = Vec::with_capacity(specs.len());
    for (i, s) in specs.into_iter().enumerate() {
        if seen.insert(s.id.clone(), i).is_some() {
            return Err(ComplexError::DuplicateCellId(s.id));
        }
        let rep = lattice.class_rep(lattice.class_of(s.cell_type));
        cells.push(Cell {
            id: s.id,
            dim: s.dim,
            cell_type: rep,
            given_type: s.cell_type,
        });
    }
    Ok(cells)
}

/// Rewrites a raw entry between supplied types as a morphism sum between the
/// representative types: `g ↦ a_σ · g · a_τ⁻¹`.
fn normalize_entry(
    lattice: &Lattice,
    from: &Cell,
    to: &Cell,
    terms: &[(usize, i64)],
) -> MorphismSum {
    let grp = lattice.group();
    let a_from = lattice.conjugator(from.given_type);
    let a_to_inv = grp.inv(lattice.conjugator(to.given_type));
    let mut sum = MorphismSum::zero(from.cell_type, to.cell_type);
    for &(g, c) in terms {
        let g2 = grp.mul(grp.mul(a_from, g), a_to_inv);
        sum.add_term(lattice, g2, c);
    }
    sum
}

impl CellComplex {
    /// Builds a complex from supplied cells and differential entries.
    ///
    /// Only structure is checked here (unique ids, indices, dimensions);
    /// [`validate_complex`] checks types and `d∘d = 0`.
    pub fn new(
        lattice: Arc<Lattice>,
        cells: Vec<CellSpec>,
        entries: &[RawEntry],
    ) -> Result<Self, ComplexError> {
        let cells = normalize_cells(&lattice, cells)?;
        let types: Vec<SubgroupId> = cells.iter().map(|c| c.cell_type).collect();
        let mut d = BlockMatrix::zero(types.clone(), types);
        for e in entries {
            let (from, to) = (
                cells.get(e.from).ok_or(ComplexError::CellIndex(e.from))?,
                cells.get(e.to).ok_or(ComplexError::CellIndex(e.to))?,
            );
            if from.dim != to.dim + 1 {
                return Err(ComplexError::DimensionMismatch {
                    from: from.id.clone(),
                    to: to.id.clone(),
                });
            }
            d.add_to(e.to, e.from, &normalize_entry(&lattice, from, to, &e.terms));
        }
        Ok(Self::from_parts(lattice, cells, d))
    }

    /// Internal constructor for already normalized data.
    pub(crate) fn from_parts(
        lattice: Arc<Lattice>,
        cells: Vec<Cell>,
        differential: BlockMatrix,
    ) -> Self {
        let top = cells.iter().map(|c| c.dim + 1).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        for (i, c) in cells.iter().enumerate() {
            by_dim[c.dim].push(i);
        }
        Self {
            lattice,
            cells,
            by_dim,
            differential,
        }
    }

    pub fn empty(lattice: Arc<Lattice>) -> Self {
        Self::from_parts(
            lattice,
            Vec::new(),
            BlockMatrix::zero(Vec::new(), Vec::new()),
        )
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.id == id)
    }

    /// Number of dimensions in use (`max dim + 1`, or 0 when empty).
    pub fn dim_count(&self) -> usize {
        self.by_dim.len()
    }

    pub fn cells_in_dim(&self, n: usize) -> &[usize] {
        self.by_dim.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn types(&self) -> Vec<SubgroupId> {
        self.cells.iter().map(|c| c.cell_type).collect()
    }

    pub fn differential(&self) -> &BlockMatrix {
        &self.differential
    }

    /// Subgroup class of a cell's orbit type.
    pub fn cell_class(&self, i: usize) -> usize {
        self.lattice.class_of(self.cells[i].cell_type)
    }

    /// Cells of orbit type exactly `(H)`.
    pub fn cells_of_class(&self, class: usize) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cell_class(i) == class)
            .collect()
    }
}

/// Checks type monotonicity and `d∘d = 0`; errors name the first violation.
pub fn validate_complex(c: &CellComplex) -> Result<(), ComplexError> {
    let lat = &c.lattice;
    for (to, from, s) in c.differential.entries() {
        if let Some(rep) = s.first_inadmissible(lat) {
            return Err(ComplexError::TypeViolation {
                from: c.cells[from].id.clone(),
                to: c.cells[to].id.clone(),
                rep,
            });
        }
    }
    let dd = c
        .differential
        .then(lat, &c.differential)
        .expect("differential entries are typed by their cells");
    if let Some((rho, sigma, _)) = dd.entries().next() {
        return Err(ComplexError::BoundarySquareNonzero {
            sigma: c.cells[sigma].id.clone(),
            rho: c.cells[rho].id.clone(),
        });
    }
    Ok(())
}

/// A cellular map as graded blocks: entry `(τ, σ)` for domain cell `σ` and
/// codomain cell `τ` of the same dimension.
#[derive(Clone, Debug)]
pub struct CellMap {
    domain: Arc<CellComplex>,
    codomain: Arc<CellComplex>,
    blocks: BlockMatrix,
}

impl PartialEq for CellMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.blocks == other.blocks
    }
}

impl Eq for CellMap {}

impl CellMap {
    /// Builds a map from entries in terms of the supplied cell types.
    pub fn new(
        domain: Arc<CellComplex>,
        codomain: Arc<CellComplex>,
        entries: &[RawEntry],
    ) -> Result<Self, ComplexError> {
        if !domain.lattice.same_as(&codomain.lattice) {
            return Err(ComplexError::GroupMismatch);
        }
        let mut blocks = BlockMatrix::zero(codomain.types(), domain.types());
        for e in entries {
            let from = domain
                .cells
                .get(e.from)
                .ok_or(ComplexError::CellIndex(e.from))?;
            let to = codomain
                .cells
                .get(e.to)
                .ok_or(ComplexError::CellIndex(e.to))?;
            if from.dim != to.dim {
                return Err(ComplexError::DimensionMismatch {
                    from: from.id.clone(),
                    to: to.id.clone(),
                });
            }
            blocks.add_to(
                e.to,
                e.from,
                &normalize_entry(&domain.lattice, from, to, &e.terms),
            );
        }
        Ok(Self {
            domain,
            codomain,
            blocks,
        })
    }

    /// Builds a map from blocks already typed by the stored cell types.
    pub fn from_blocks(
        domain: Arc<CellComplex>,
        codomain: Arc<CellComplex>,
        blocks: BlockMatrix,
    ) -> Result<Self, ComplexError> {
        if !domain.lattice.same_as(&codomain.lattice) {
            return Err(ComplexError::GroupMismatch);
        }
        assert_eq!(blocks.col_types(), domain.types().as_slice());
        assert_eq!(blocks.row_types(), codomain.types().as_slice());
        for (r, c, _) in blocks.entries() {
            if domain.cells[c].dim != codomain.cells[r].dim {
                return Err(ComplexError::DimensionMismatch {
                    from: domain.cells[c].id.clone(),
                    to: codomain.cells[r].id.clone(),
                });
            }
        }
        Ok(Self {
            domain,
            codomain,
            blocks,
        })
    }

    pub fn identity(c: &Arc<CellComplex>) -> Self {
        Self {
            domain: c.clone(),
            codomain: c.clone(),
            blocks: BlockMatrix::identity(&c.lattice, c.types()),
        }
    }

    pub fn zero(domain: &Arc<CellComplex>, codomain: &Arc<CellComplex>) -> Self {
        Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            blocks: BlockMatrix::zero(codomain.types(), domain.types()),
        }
    }

    pub fn domain(&self) -> &Arc<CellComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<CellComplex> {
        &self.codomain
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.domain.lattice
    }

    pub fn blocks(&self) -> &BlockMatrix {
        &self.blocks
    }

    pub fn is_endo(&self) -> bool {
        Arc::ptr_eq(&self.domain, &self.codomain) || self.domain == self.codomain
    }

    /// `self` followed by `second`.
    pub fn then(&self, second: &CellMap) -> Result<CellMap, ComplexError> {
        if !(Arc::ptr_eq(&self.codomain, &second.domain) || self.codomain == second.domain) {
            return Err(ComplexError::NotComposable);
        }
        let blocks = self
            .blocks
            .then(self.lattice(), &second.blocks)
            .expect("blocks are typed by their cells");
        Ok(CellMap {
            domain: self.domain.clone(),
            codomain: second.codomain.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &CellMap) -> Result<CellMap, ComplexError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(ComplexError::NotComposable);
        }
        Ok(CellMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self.blocks.add(&other.blocks),
        })
    }

    pub fn scaled(&self, k: i64) -> CellMap {
        CellMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self.blocks.scaled(k),
        }
    }

    /// Degree-`n` block of a self-map, on the degree-`n` cells in order.
    pub fn degree_block(&self, n: usize) -> BlockMatrix {
        self.blocks
            .submatrix(self.codomain.cells_in_dim(n), self.domain.cells_in_dim(n))
    }
}

/// Checks type monotonicity and the chain law `f∘d = d∘f`.
pub fn validate_map(f: &CellMap) -> Result<(), ComplexError> {
    let lat = f.lattice();
    for (to, from, s) in f.blocks.entries() {
        if let Some(rep) = s.first_inadmissible(lat) {
            return Err(ComplexError::TypeViolation {
                from: f.domain.cells[from].id.clone(),
                to: f.codomain.cells[to].id.clone(),
                rep,
            });
        }
    }
    let left = f
        .domain
        .differential
        .then(lat, &f.blocks)
        .expect("typed blocks");
    let right = f
        .blocks
        .then(lat, &f.codomain.differential)
        .expect("typed blocks");
    let diff = left.add(&right.scaled(-1));
    if let Some((tau, sigma, _)) = diff.entries().next() {
        return Err(ComplexError::ChainLawViolation {
            sigma: f.domain.cells[sigma].id.clone(),
            tau: f.codomain.cells[tau].id.clone(),
        });
    }
    Ok(())
}
