use std::collections::BTreeMap;
use std::sync::Arc;

use super::{BlockMatrix, CellComplex, CellMap, ComplexError, GroupRingMatrix};

/// A selection of cells of a parent complex with the induced chain data.
///
/// For a subcomplex (closed under the differential) this is the subcomplex
/// itself; for the complement of a subcomplex it is the chain data of the
/// quotient `X/A` in the reduced convention.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub complex: Arc<CellComplex>,
    /// Parent indices of the selected cells, increasing.
    pub cells: Vec<usize>,
}

fn select(c: &CellComplex, keep: Vec<usize>) -> Subcomplex {
    let cells = keep.iter().map(|&i| c.cell(i).clone()).collect();
    let d = c.differential().submatrix(&keep, &keep);
    Subcomplex {
        complex: Arc::new(CellComplex::from_parts(c.lattice().clone(), cells, d)),
        cells: keep,
    }
}

impl Subcomplex {
    /// Checks that the selected cells are closed under the differential.
    pub fn new(c: &CellComplex, mut keep: Vec<usize>) -> Result<Self, ComplexError> {
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&i| i >= c.num_cells()) {
            return Err(ComplexError::CellIndex(bad));
        }
        let mut inside = vec![false; c.num_cells()];
        for &i in &keep {
            inside[i] = true;
        }
        for &sigma in &keep {
            if let Some(&tau) = c.differential().column(sigma).keys().find(|&&t| !inside[t]) {
                return Err(ComplexError::NotSubcomplex {
                    cell: c.cell(sigma).id.clone(),
                    boundary: c.cell(tau).id.clone(),
                });
            }
        }
        Ok(select(c, keep))
    }

    /// The cells of `parent` not in `self`, with the quotient differential.
    pub fn complement(&self, parent: &CellComplex) -> Subcomplex {
        let mut inside = vec![false; parent.num_cells()];
        for &i in &self.cells {
            inside[i] = true;
        }
        select(
            parent,
            (0..parent.num_cells()).filter(|&i| !inside[i]).collect(),
        )
    }

    fn mask(&self, n: usize) -> Vec<bool> {
        let mut inside = vec![false; n];
        for &i in &self.cells {
            inside[i] = true;
        }
        inside
    }
}

/// `X_{≥(H)}` (or `X_{>(H)}` when `strict`): all cells whose orbit type is
/// at least `(H)` in the subconjugacy order. Closed under `d` by type
/// monotonicity.
pub fn stratum(c: &CellComplex, class: usize, strict: bool) -> Subcomplex {
    let lat = c.lattice();
    let keep = (0..c.num_cells())
        .filter(|&i| {
            let k = c.cell_class(i);
            lat.class_leq(class, k) && !(strict && k == class)
        })
        .collect();
    select(c, keep)
}

/// Restriction of a self-map to a subcomplex it preserves.
pub fn restrict_to(f: &CellMap, sub: &Subcomplex) -> Result<CellMap, ComplexError> {
    if !f.is_endo() {
        return Err(ComplexError::NotSelfMap);
    }
    let c = f.domain();
    let inside = sub.mask(c.num_cells());
    for (tau, sigma, _) in f.blocks().entries() {
        if inside[sigma] && !inside[tau] {
            return Err(ComplexError::NotPreserved {
                cell: c.cell(sigma).id.clone(),
                image: c.cell(tau).id.clone(),
            });
        }
    }
    let blocks = f.blocks().submatrix(&sub.cells, &sub.cells);
    CellMap::from_blocks(sub.complex.clone(), sub.complex.clone(), blocks)
}

/// The map induced on the selected cells with no preservation check; on the
/// complement of a preserved subcomplex this is the map of `X/A`.
pub(crate) fn induced_on(f: &CellMap, sel: &Subcomplex) -> CellMap {
    let blocks = f.blocks().submatrix(&sel.cells, &sel.cells);
    CellMap::from_blocks(sel.complex.clone(), sel.complex.clone(), blocks)
        .expect("square selection")
}

impl Subcomplex {
    /// `(f|_A, f̂)` for a self-map `f` preserving this subcomplex `A`: the
    /// restriction and the induced map on the quotient chain data.
    pub fn split_map(&self, f: &CellMap) -> Result<(CellMap, CellMap), ComplexError> {
        let restricted = restrict_to(f, self)?;
        let quotient = self.complement(f.domain());
        Ok((restricted, induced_on(f, &quotient)))
    }
}

/// `f` restricted to `X_{≥(H)}` (or `X_{>(H)}`).
pub fn restrict_map(f: &CellMap, class: usize, strict: bool) -> Result<CellMap, ComplexError> {
    let s = stratum(f.domain(), class, strict);
    restrict_to(f, &s)
}

/// Integer chain data: cells with dimensions and a sparse integer matrix
/// (a differential, or the blocks of a self-map).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerChainData {
    pub cell_dims: Vec<usize>,
    /// `(row, col) → value`, zeros omitted.
    pub entries: BTreeMap<(usize, usize), i64>,
}

impl IntegerChainData {
    fn from_blocks(cell_dims: Vec<usize>, m: &BlockMatrix) -> Self {
        let entries = m
            .entries()
            .map(|(r, c, s)| ((r, c), s.coefficient_sum()))
            .filter(|&(_, v)| v != 0)
            .collect();
        Self { cell_dims, entries }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries.get(&(r, c)).copied().unwrap_or(0)
    }

    /// Dense degree-`n` block of a square matrix on these cells.
    pub fn degree_block(&self, n: usize) -> Vec<Vec<i64>> {
        let idx: Vec<usize> = (0..self.cell_dims.len())
            .filter(|&i| self.cell_dims[i] == n)
            .collect();
        idx.iter()
            .map(|&r| idx.iter().map(|&c| self.get(r, c)).collect())
            .collect()
    }

    pub fn dim_count(&self) -> usize {
        self.cell_dims.iter().map(|d| d + 1).max().unwrap_or(0)
    }

    /// `self` followed by `second` (`second · self` as matrices).
    pub fn then(&self, second: &IntegerChainData) -> IntegerChainData {
        let mut entries: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (&(t, s), &a) in &self.entries {
            for (&(r, t2), &b) in &second.entries {
                if t2 == t {
                    *entries.entry((r, s)).or_insert(0) += a * b;
                }
            }
        }
        entries.retain(|_, v| *v != 0);
        IntegerChainData {
            cell_dims: self.cell_dims.clone(),
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Differential of the orbit-space chain complex `C̃_*(X/G)`: every morphism
/// sum replaced by its coefficient sum.
pub fn quotient_data(c: &CellComplex) -> IntegerChainData {
    IntegerChainData::from_blocks(c.cells().iter().map(|x| x.dim).collect(), c.differential())
}

/// The map induced on `C̃_*(X/G)` by a self-map.
pub fn quotient_map_data(f: &CellMap) -> IntegerChainData {
    IntegerChainData::from_blocks(
        f.domain().cells().iter().map(|x| x.dim).collect(),
        f.blocks(),
    )
}

/// The blocks of a self-map between cells of type exactly `(H)`, one matrix
/// per degree, with each `[x ↦ x g]` replaced by the Weyl element of `g`.
pub fn fixed_relative_data(
    f: &CellMap,
    class: usize,
) -> Result<Vec<GroupRingMatrix>, ComplexError> {
    if !f.is_endo() {
        return Err(ComplexError::NotSelfMap);
    }
    let c = f.domain();
    let lat = c.lattice();
    let weyl = lat.weyl(class);
    let of_class = c.cells_of_class(class);
    let mut out = Vec::with_capacity(c.dim_count());
    for n in 0..c.dim_count() {
        let cells: Vec<usize> = of_class
            .iter()
            .copied()
            .filter(|&i| c.cell(i).dim == n)
            .collect();
        let mut m = GroupRingMatrix::zero(lat.clone(), class, cells.clone(), cells.clone());
        for (j, &sigma) in cells.iter().enumerate() {
            for (i, &tau) in cells.iter().enumerate() {
                if let Some(s) = f.blocks().get(tau, sigma) {
                    for (g, coeff) in s.terms() {
                        let w = weyl
                            .project(g)
                            .expect("endomorphism of G/H is given by N(H)");
                        m.add_at(i, j, w, coeff);
                    }
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}
