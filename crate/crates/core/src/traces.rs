//! Traces of square matrices over the isotropy ring, over `ℤW` (landing in
//! `ℤCo(W)`) and over `ℤ`.

use std::sync::Arc;

use thiserror::Error;

use crate::complexes::{BlockMatrix, GroupRingMatrix};
use crate::group::Lattice;
use crate::orbit::epsilon_endo;
use crate::rings::{ConjClassSum, TomDieckElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrices are not composable")]
    NotComposable,
}

/// `Σ_σ ε(m(σ, σ))` in the tom Dieck group.
pub fn hs_trace(lattice: &Arc<Lattice>, m: &BlockMatrix) -> Result<TomDieckElement, TraceError> {
    if !m.is_square() {
        return Err(TraceError::NotSquare);
    }
    let mut out = TomDieckElement::zero(lattice.clone());
    for i in 0..m.nrows() {
        if let Some(s) = m.get(i, i) {
            let e = epsilon_endo(lattice, s).expect("diagonal entries are endomorphisms");
            out = out.add(&e).expect("same lattice");
        }
    }
    Ok(out)
}

/// `(hs_trace(b ∘ a), hs_trace(a ∘ b))` for `a: X → Y`, `b: Y → X`, i.e.
/// the traces of `a` then `b` and of `b` then `a`.
pub fn hs_trace_commutes(
    lattice: &Arc<Lattice>,
    a: &BlockMatrix,
    b: &BlockMatrix,
) -> Result<(TomDieckElement, TomDieckElement), TraceError> {
    if a.row_types() != b.col_types() || b.row_types() != a.col_types() {
        return Err(TraceError::NotComposable);
    }
    let ab = a.then(lattice, b).map_err(|_| TraceError::NotComposable)?;
    let ba = b.then(lattice, a).map_err(|_| TraceError::NotComposable)?;
    Ok((hs_trace(lattice, &ab)?, hs_trace(lattice, &ba)?))
}

/// Diagonal sum with each Weyl element replaced by its conjugacy class.
pub fn group_ring_trace(m: &GroupRingMatrix) -> Result<ConjClassSum, TraceError> {
    if !m.is_square() {
        return Err(TraceError::NotSquare);
    }
    let mut out = ConjClassSum::zero(m.lattice().clone(), m.subgroup_class());
    for i in 0..m.nrows() {
        for (w, c) in m.get(i, i).terms() {
            out.add_element(w, c);
        }
    }
    Ok(out)
}

pub fn integer_trace(m: &[Vec<i64>]) -> Result<i64, TraceError> {
    if m.iter().any(|row| row.len() != m.len()) {
        return Err(TraceError::NotSquare);
    }
    Ok((0..m.len()).map(|i| m[i][i]).sum())
}
