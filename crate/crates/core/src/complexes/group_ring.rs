use std::collections::BTreeMap;
use std::sync::Arc;

use crate::group::Lattice;

/// An element of the integral group ring `ℤW` of a Weyl group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement(BTreeMap<usize, i64>);

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: usize, coeff: i64) -> Self {
        let mut out = Self::zero();
        out.add(w, coeff);
        out
    }

    pub fn add(&mut self, w: usize, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.0.entry(w).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.0.remove(&w);
        }
    }

    pub fn add_assign(&mut self, other: &GroupRingElement) {
        for (&w, &c) in &other.0 {
            self.add(w, c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|(&w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// A matrix over `ℤW(H)` on the cells of type exactly `(H)`: the chain data of
/// `C_*(X^H, X^{>H})` as a free `ℤW(H)`-module.
///
/// Composition follows the chain-map convention of the rest of the crate:
/// entry `(ρ, σ)` of `a.then(b)` is `Σ_τ a(τ, σ) · b(ρ, τ)`, with group-ring
/// products taken in that order.
#[derive(Clone, Debug)]
pub struct GroupRingMatrix {
    lattice: Arc<Lattice>,
    subgroup_class: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    entries: Vec<Vec<GroupRingElement>>,
}

impl PartialEq for GroupRingMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.same_as(&other.lattice)
            && self.subgroup_class == other.subgroup_class
            && self.entries == other.entries
    }
}

impl Eq for GroupRingMatrix {}

impl GroupRingMatrix {
    pub fn zero(
        lattice: Arc<Lattice>,
        subgroup_class: usize,
        rows: Vec<usize>,
        cols: Vec<usize>,
    ) -> Self {
        let entries = vec![vec![GroupRingElement::zero(); cols.len()]; rows.len()];
        Self {
            lattice,
            subgroup_class,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(lattice: Arc<Lattice>, subgroup_class: usize, cells: Vec<usize>) -> Self {
        let e = lattice.weyl(subgroup_class).quotient.identity();
        let mut m = Self::zero(lattice, subgroup_class, cells.clone(), cells);
        for i in 0..m.rows.len() {
            m.entries[i][i] = GroupRingElement::basis(e, 1);
        }
        m
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn subgroup_class(&self) -> usize {
        self.subgroup_class
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &GroupRingElement {
        &self.entries[r][c]
    }

    pub fn add_at(&mut self, r: usize, c: usize, w: usize, coeff: i64) {
        self.entries[r][c].add(w, coeff);
    }

    pub fn then(&self, second: &GroupRingMatrix) -> GroupRingMatrix {
        assert_eq!(self.subgroup_class, second.subgroup_class);
        assert_eq!(self.nrows(), second.ncols(), "inner dimensions");
        let w = &self.lattice.weyl(self.subgroup_class).quotient;
        let mut out = GroupRingMatrix::zero(
            self.lattice.clone(),
            self.subgroup_class,
            second.rows.clone(),
            self.cols.clone(),
        );
        for sigma in 0..self.ncols() {
            for tau in 0..self.nrows() {
                for (a, x) in self.entries[tau][sigma].terms() {
                    for rho in 0..second.nrows() {
                        for (b, y) in second.entries[rho][tau].terms() {
                            out.entries[rho][sigma].add(w.mul(a, b), x * y);
                        }
                    }
                }
            }
        }
        out
    }
}
