use std::collections::HashSet;
use std::sync::Arc;

use super::{BlockMatrix, Cell, CellComplex, CellMap, CellSpec, ComplexError, RawEntry};
use crate::group::{Lattice, SubgroupId};

/// Reduced model of `(G/H)₊`: a single 0-cell of type `H`.
pub fn orbit_point(lattice: &Arc<Lattice>, h: SubgroupId) -> CellComplex {
    CellComplex::new(lattice.clone(), vec![CellSpec::new("p", 0, h)], &[]).expect("single cell")
}

/// Reduced model of `(G/H)₊ ∧ Sⁿ`: a single n-cell of type `H`.
pub fn orbit_sphere(lattice: &Arc<Lattice>, h: SubgroupId, n: usize) -> CellComplex {
    CellComplex::new(lattice.clone(), vec![CellSpec::new("s", n, h)], &[]).expect("single cell")
}

/// The self-map `[g] ↦ [g w]` of `(G/H)₊` (`n = 0`) or its `n`-fold
/// suspension, for `w` in the normalizer of `H`.
pub fn generator_map(
    lattice: &Arc<Lattice>,
    h: SubgroupId,
    w: usize,
    n: usize,
) -> Result<CellMap, ComplexError> {
    if !lattice.subgroup(h).normalizer().contains(w) {
        return Err(ComplexError::NotInNormalizer { element: w });
    }
    let c = Arc::new(if n == 0 {
        orbit_point(lattice, h)
    } else {
        orbit_sphere(lattice, h, n)
    });
    CellMap::new(
        c.clone(),
        c,
        &[RawEntry {
            from: 0,
            to: 0,
            terms: vec![(w, 1)],
        }],
    )
}

/// A wedge of complexes with its summand inclusions and projections.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub complex: Arc<CellComplex>,
    pub summands: Vec<Arc<CellComplex>>,
    /// First cell index of each summand.
    pub offsets: Vec<usize>,
    pub injections: Vec<CellMap>,
    pub projections: Vec<CellMap>,
}

/// Wedge sum: disjoint union of the reduced cells with block-diagonal
/// differential. Cell ids get an `i.` summand prefix only when summands
/// share ids.
pub fn wedge(summands: &[Arc<CellComplex>]) -> Result<Wedge, ComplexError> {
    let lattice = summands
        .first()
        .map(|c| c.lattice().clone())
        .ok_or(ComplexError::GroupMismatch)?;
    if summands.iter().any(|c| !c.lattice().same_as(&lattice)) {
        return Err(ComplexError::GroupMismatch);
    }
    let mut ids = HashSet::new();
    let clash = summands
        .iter()
        .flat_map(|c| c.cells())
        .any(|cell| !ids.insert(cell.id.clone()));

    let mut cells: Vec<Cell> = Vec::new();
    let mut offsets = Vec::new();
    for (i, c) in summands.iter().enumerate() {
        offsets.push(cells.len());
        for cell in c.cells() {
            let mut cell = cell.clone();
            if clash {
                cell.id = format!("{i}.{}", cell.id);
            }
            cells.push(cell);
        }
    }
    let types: Vec<SubgroupId> = cells.iter().map(|c| c.cell_type).collect();
    let mut d = BlockMatrix::zero(types.clone(), types);
    for (c, &off) in summands.iter().zip(&offsets) {
        d.paste(c.differential(), off, off);
    }
    let complex = Arc::new(CellComplex::from_parts(lattice.clone(), cells, d));

    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (c, &off) in summands.iter().zip(&offsets) {
        let id = BlockMatrix::identity(&lattice, c.types());
        let mut inj = BlockMatrix::zero(complex.types(), c.types());
        inj.paste(&id, off, 0);
        let mut proj = BlockMatrix::zero(c.types(), complex.types());
        proj.paste(&id, 0, off);
        injections.push(CellMap::from_blocks(c.clone(), complex.clone(), inj)?);
        projections.push(CellMap::from_blocks(complex.clone(), c.clone(), proj)?);
    }
    Ok(Wedge {
        complex,
        summands: summands.to_vec(),
        offsets,
        injections,
        projections,
    })
}

impl Wedge {
    /// Assembles a self-map of the wedge from component maps: `parts(i, j)`
    /// is the component from summand `j` to summand `i` (absent = zero).
    pub fn assemble(
        &self,
        parts: impl Fn(usize, usize) -> Option<CellMap>,
    ) -> Result<CellMap, ComplexError> {
        let mut blocks = BlockMatrix::zero(self.complex.types(), self.complex.types());
        for i in 0..self.summands.len() {
            for j in 0..self.summands.len() {
                if let Some(f) = parts(i, j) {
                    if **f.domain() != *self.summands[j] || **f.codomain() != *self.summands[i] {
                        return Err(ComplexError::NotComposable);
                    }
                    blocks.paste(f.blocks(), self.offsets[i], self.offsets[j]);
                }
            }
        }
        CellMap::from_blocks(self.complex.clone(), self.complex.clone(), blocks)
    }

    /// Block-diagonal wedge of self-maps of the summands.
    pub fn diagonal(&self, maps: &[CellMap]) -> Result<CellMap, ComplexError> {
        self.assemble(|i, j| (i == j).then(|| maps[i].clone()))
    }

    /// `p_i ∘ f ∘ ι_i`
    pub fn component(&self, f: &CellMap, i: usize) -> Result<CellMap, ComplexError> {
        self.injections[i].then(f)?.then(&self.projections[i])
    }
}

/// Reduced suspension: every cell moves up one dimension; the differential
/// is unchanged.
pub fn suspend(c: &CellComplex) -> CellComplex {
    let cells = c
        .cells()
        .iter()
        .map(|cell| Cell {
            dim: cell.dim + 1,
            ..cell.clone()
        })
        .collect();
    CellComplex::from_parts(c.lattice().clone(), cells, c.differential().clone())
}

/// Suspension of a map; a self-map stays a self-map of one suspended complex.
pub fn suspend_map(f: &CellMap) -> CellMap {
    let domain = Arc::new(suspend(f.domain()));
    let codomain = if f.is_endo() {
        domain.clone()
    } else {
        Arc::new(suspend(f.codomain()))
    };
    CellMap::from_blocks(domain, codomain, f.blocks().clone()).expect("same shape")
}
