//! Value groups of the invariants: the tom Dieck group `U_G` (free on
//! conjugacy classes of subgroups) and `ℤCo(W(H))` (free on conjugacy
//! classes of Weyl-group elements). Only the additive structure is modelled.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("class sums belong to different Weyl groups")]
    WeylMismatch,
}

/// `Σ c_(H) · (H)`, keyed by class index in the lattice (canonical order).
#[derive(Clone)]
pub struct TomDieckElement {
    lattice: Arc<Lattice>,
    coeffs: BTreeMap<usize, i64>,
}

impl TomDieckElement {
    pub fn zero(lattice: Arc<Lattice>) -> Self {
        Self {
            lattice,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn single(lattice: Arc<Lattice>, class: usize, coeff: i64) -> Self {
        let mut out = Self::zero(lattice);
        out.add_to(class, coeff);
        out
    }

    pub fn from_coeffs(
        lattice: Arc<Lattice>,
        coeffs: impl IntoIterator<Item = (usize, i64)>,
    ) -> Self {
        let mut out = Self::zero(lattice);
        for (c, k) in coeffs {
            out.add_to(c, k);
        }
        out
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero `(class, coefficient)` pairs in canonical class order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&c, &k)| (c, k))
    }

    pub(crate) fn add_to(&mut self, class: usize, coeff: i64) {
        assert!(
            class < self.lattice.num_classes(),
            "class index out of range"
        );
        if coeff == 0 {
            return;
        }
        let e = self.coeffs.entry(class).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&class);
        }
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.lattice.same_as(&other.lattice) {
            Ok(())
        } else {
            Err(RingError::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let mut out = self.clone();
        for (c, k) in other.terms() {
            out.add_to(c, k);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_coeffs(self.lattice.clone(), self.terms().map(|(c, x)| (c, x * k)))
    }

    /// Coefficient of `(H)`.
    pub fn project(&self, class: usize) -> i64 {
        self.coeffs.get(&class).copied().unwrap_or(0)
    }

    /// Sum of the coefficients of all `(K) ≥ (H)`.
    pub fn downward_augment(&self, class: usize) -> i64 {
        self.terms()
            .filter(|&(k, _)| self.lattice.class_leq(class, k))
            .map(|(_, c)| c)
            .sum()
    }

    /// Adds `1·(G)`: the unreduced value of a reduced invariant.
    pub fn unreduced(&self) -> Self {
        let mut out = self.clone();
        out.add_to(self.lattice.whole_class(), 1);
        out
    }
}

impl PartialEq for TomDieckElement {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.same_as(&other.lattice) && self.coeffs == other.coeffs
    }
}

impl Eq for TomDieckElement {}

impl fmt::Debug for TomDieckElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TomDieckElement({self})")
    }
}

/// `c1*(L1) + c2*(L2) - ...`, classes in canonical order, zero as `0`.
impl fmt::Display for TomDieckElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms()
                .map(|(c, k)| (k, format!("({})", self.lattice.label(c)))),
        )
    }
}

pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, String)>,
) -> fmt::Result {
    let mut first = true;
    for (k, label) in terms {
        if first {
            if k < 0 {
                write!(f, "-")?;
            }
            first = false;
        } else {
            write!(f, " {} ", if k < 0 { '-' } else { '+' })?;
        }
        write!(f, "{}*{}", k.unsigned_abs(), label)?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `Σ c_[w] · [w]` in `ℤCo(W(H))` for the class `H` of the lattice.
#[derive(Clone)]
pub struct ConjClassSum {
    lattice: Arc<Lattice>,
    subgroup_class: usize,
    coeffs: BTreeMap<usize, i64>,
}

impl ConjClassSum {
    pub fn zero(lattice: Arc<Lattice>, subgroup_class: usize) -> Self {
        Self {
            lattice,
            subgroup_class,
            coeffs: BTreeMap::new(),
        }
    }

    /// `coeff · [w]` for a Weyl-group element `w`.
    pub fn of_element(lattice: Arc<Lattice>, subgroup_class: usize, w: usize, coeff: i64) -> Self {
        let mut out = Self::zero(lattice, subgroup_class);
        out.add_element(w, coeff);
        out
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn subgroup_class(&self) -> usize {
        self.subgroup_class
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero `(element class, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&c, &k)| (c, k))
    }

    pub fn coeff(&self, element_class: usize) -> i64 {
        self.coeffs.get(&element_class).copied().unwrap_or(0)
    }

    pub fn add_class(&mut self, element_class: usize, coeff: i64) {
        assert!(
            element_class < self.lattice.weyl_classes(self.subgroup_class).len(),
            "element class out of range"
        );
        if coeff == 0 {
            return;
        }
        let e = self.coeffs.entry(element_class).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&element_class);
        }
    }

    pub fn add_element(&mut self, w: usize, coeff: i64) {
        let cls = self.lattice.weyl_classes(self.subgroup_class).class_of[w];
        self.add_class(cls, coeff);
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        if !self.lattice.same_as(&other.lattice) {
            return Err(RingError::GroupMismatch);
        }
        if self.subgroup_class != other.subgroup_class {
            return Err(RingError::WeylMismatch);
        }
        let mut out = self.clone();
        for (c, k) in other.terms() {
            out.add_class(c, k);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.lattice.clone(), self.subgroup_class);
        for (c, x) in self.terms() {
            out.add_class(c, x * k);
        }
        out
    }

    pub fn negate(&self) -> Self {
        self.scale(-1)
    }

    /// Total coefficient.
    pub fn augment(&self) -> i64 {
        self.coeffs.values().sum()
    }
}

/// Total-coefficient map `ℤCo(W) → ℤ`.
pub fn cc_augment(s: &ConjClassSum) -> i64 {
    s.augment()
}

impl PartialEq for ConjClassSum {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.same_as(&other.lattice)
            && self.subgroup_class == other.subgroup_class
            && self.coeffs == other.coeffs
    }
}

impl Eq for ConjClassSum {}

impl fmt::Debug for ConjClassSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConjClassSum({self})")
    }
}

/// `c1*[w1] + ...` with each class named by its least element.
impl fmt::Display for ConjClassSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = self.lattice.weyl_classes(self.subgroup_class);
        write_terms(
            f,
            self.terms()
                .map(|(c, k)| (k, format!("[{}]", table.label(c)))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric3};

    fn z2() -> Arc<Lattice> {
        Arc::new(Lattice::new(cyclic(2)).unwrap())
    }

    #[test]
    fn arithmetic() {
        let lat = z2();
        let a = TomDieckElement::from_coeffs(lat.clone(), [(0, -1), (1, 1)]);
        let zero = TomDieckElement::zero(lat.clone());
        assert_eq!(a.add(&zero).unwrap(), a);
        assert!(a.add(&a.negate()).unwrap().is_zero());
        assert_eq!(
            a.scale(2),
            TomDieckElement::from_coeffs(lat.clone(), [(0, -2), (1, 2)])
        );
        let other = Arc::new(Lattice::new(cyclic(3)).unwrap());
        assert_eq!(
            a.add(&TomDieckElement::zero(other)).unwrap_err(),
            RingError::GroupMismatch
        );
    }

    #[test]
    fn projections() {
        let lat = z2();
        let a = TomDieckElement::from_coeffs(lat.clone(), [(0, -1), (1, 1)]);
        assert_eq!(a.project(0), -1);
        assert_eq!(TomDieckElement::zero(lat.clone()).project(1), 0);
        assert_eq!(TomDieckElement::single(lat.clone(), 1, 3).project(0), 0);

        let b = TomDieckElement::from_coeffs(lat.clone(), [(0, -1), (1, 2)]);
        assert_eq!(b.downward_augment(0), 1);
        assert_eq!(b.downward_augment(1), b.project(1));
        assert_eq!(TomDieckElement::zero(lat).downward_augment(0), 0);
    }

    #[test]
    fn downward_augment_at_trivial_class_is_total() {
        let lat = Arc::new(Lattice::new(symmetric3()).unwrap());
        let a = TomDieckElement::from_coeffs(lat, [(0, 4), (1, -2), (2, 7), (3, 1)]);
        assert_eq!(a.downward_augment(0), 10);
        // (C2) ≤ (C2), (S3) only.
        assert_eq!(a.downward_augment(1), -1);
    }

    #[test]
    fn display() {
        let lat = z2();
        let a = TomDieckElement::from_coeffs(lat.clone(), [(0, -1), (1, 1)]);
        assert_eq!(a.to_string(), "-1*(H1_0) + 1*(H2_0)");
        let b = TomDieckElement::from_coeffs(lat.clone(), [(0, 3), (1, -2)]);
        assert_eq!(b.to_string(), "3*(H1_0) - 2*(H2_0)");
        assert_eq!(TomDieckElement::zero(lat).to_string(), "0");
    }

    #[test]
    fn class_sums() {
        let lat = Arc::new(Lattice::new(symmetric3()).unwrap());
        // W({e}) = S3; elements 2 and 5 are conjugate transpositions.
        let a = ConjClassSum::of_element(lat.clone(), 0, 2, 1);
        let b = ConjClassSum::of_element(lat.clone(), 0, 5, 1);
        assert_eq!(a, b);
        assert_eq!(cc_augment(&a), 1);
        assert_eq!(cc_augment(&ConjClassSum::zero(lat.clone(), 0)), 0);
        let mut c = ConjClassSum::of_element(lat.clone(), 0, 0, 2);
        c.add_element(3, -3);
        assert_eq!(cc_augment(&c), -1);
        assert_eq!(c.to_string(), "2*[e] - 3*[(1 2 3)]");
    }
}
