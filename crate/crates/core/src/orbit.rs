//! The orbit category of a finite group: G-maps `G/K → G/H` and their formal
//! integer combinations (hom-set slices of the isotropy ring).
//!
//! A G-map `G/K → G/H` is right multiplication `[x] ↦ [x g]`, well defined
//! exactly when `g⁻¹ K g ⊆ H`, and determined by the coset `gH`. It is
//! stored by the least element of that coset.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{Lattice, SubgroupId};
use crate::rings::TomDieckElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("morphisms are not composable: target {first:?} vs source {second:?}")]
    NotComposable {
        first: SubgroupId,
        second: SubgroupId,
    },
    #[error("source {from:?} differs from target {to:?}")]
    SourceTargetMismatch { from: SubgroupId, to: SubgroupId },
    #[error("element {rep} does not define a G-map G/{from:?} -> G/{to:?}")]
    NotAMorphism {
        from: SubgroupId,
        to: SubgroupId,
        rep: usize,
    },
    #[error("morphism sums live in different hom-sets")]
    HomSetMismatch,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitMorphism {
    pub source: SubgroupId,
    pub target: SubgroupId,
    pub rep: usize,
}

impl Lattice {
    /// `g⁻¹ K g ⊆ H`
    pub fn is_admissible(&self, k: SubgroupId, h: SubgroupId, g: usize) -> bool {
        let grp = self.group();
        let gi = grp.inv(g);
        let target = self.subgroup(h);
        self.subgroup(k)
            .elements()
            .iter()
            .all(|&x| target.contains(grp.conjugate(gi, x)))
    }

    /// All G-maps `G/K → G/H`, one per coset in `(G/H)^K`, sorted by rep.
    pub fn morphism_set(&self, k: SubgroupId, h: SubgroupId) -> Vec<OrbitMorphism> {
        let mut reps: Vec<usize> = self
            .group()
            .elements()
            .filter(|&g| self.coset_min(h, g) == g && self.is_admissible(k, h, g))
            .collect();
        reps.sort_unstable();
        reps.into_iter()
            .map(|rep| OrbitMorphism {
                source: k,
                target: h,
                rep,
            })
            .collect()
    }

    pub fn morphism(
        &self,
        k: SubgroupId,
        h: SubgroupId,
        g: usize,
    ) -> Result<OrbitMorphism, OrbitError> {
        if !self.is_admissible(k, h, g) {
            return Err(OrbitError::NotAMorphism {
                from: k,
                to: h,
                rep: g,
            });
        }
        Ok(OrbitMorphism {
            source: k,
            target: h,
            rep: self.coset_min(h, g),
        })
    }

    pub fn identity_morphism(&self, h: SubgroupId) -> OrbitMorphism {
        OrbitMorphism {
            source: h,
            target: h,
            rep: self.coset_min(h, self.group().identity()),
        }
    }

    /// `first` then `second`: `[x] ↦ [x g g']`.
    pub fn compose(
        &self,
        first: &OrbitMorphism,
        second: &OrbitMorphism,
    ) -> Result<OrbitMorphism, OrbitError> {
        if first.target != second.source {
            return Err(OrbitError::NotComposable {
                first: first.target,
                second: second.source,
            });
        }
        Ok(OrbitMorphism {
            source: first.source,
            target: second.target,
            rep: self.coset_min(second.target, self.group().mul(first.rep, second.rep)),
        })
    }

    /// Bilinear extension of [`Lattice::compose`].
    pub fn sum_compose(
        &self,
        first: &MorphismSum,
        second: &MorphismSum,
    ) -> Result<MorphismSum, OrbitError> {
        if first.target != second.source {
            return Err(OrbitError::NotComposable {
                first: first.target,
                second: second.source,
            });
        }
        let mut out = MorphismSum::zero(first.source, second.target);
        let grp = self.group();
        for (&g, &a) in &first.terms {
            for (&h, &b) in &second.terms {
                let rep = self.coset_min(second.target, grp.mul(g, h));
                out.add_canonical(rep, a * b);
            }
        }
        Ok(out)
    }
}

/// A formal integer combination of G-maps `G/K → G/H` with fixed `K`, `H`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismSum {
    source: SubgroupId,
    target: SubgroupId,
    terms: BTreeMap<usize, i64>,
}

impl MorphismSum {
    pub fn zero(source: SubgroupId, target: SubgroupId) -> Self {
        Self {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_morphism(m: OrbitMorphism, coeff: i64) -> Self {
        let mut s = Self::zero(m.source, m.target);
        s.add_canonical(m.rep, coeff);
        s
    }

    pub fn identity(lattice: &Lattice, h: SubgroupId) -> Self {
        Self::from_morphism(lattice.identity_morphism(h), 1)
    }

    pub fn source(&self) -> SubgroupId {
        self.source
    }

    pub fn target(&self) -> SubgroupId {
        self.target
    }

    /// `(rep, coefficient)` pairs in increasing rep order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&r, &c)| (r, c))
    }

    pub fn morphisms(&self) -> impl Iterator<Item = (OrbitMorphism, i64)> + '_ {
        self.terms.iter().map(|(&rep, &c)| {
            (
                OrbitMorphism {
                    source: self.source,
                    target: self.target,
                    rep,
                },
                c,
            )
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, rep: usize) -> i64 {
        self.terms.get(&rep).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · [x ↦ x g]`, canonicalizing `g` to its coset minimum.
    /// Admissibility is not checked here; validators do that.
    pub fn add_term(&mut self, lattice: &Lattice, g: usize, coeff: i64) {
        let rep = lattice.coset_min(self.target, g);
        self.add_canonical(rep, coeff);
    }

    pub(crate) fn add_canonical(&mut self, rep: usize, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(rep).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&rep);
        }
    }

    pub fn add_assign(&mut self, other: &MorphismSum) -> Result<(), OrbitError> {
        if self.source != other.source || self.target != other.target {
            return Err(OrbitError::HomSetMismatch);
        }
        for (&r, &c) in &other.terms {
            self.add_canonical(r, c);
        }
        Ok(())
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (&r, &c) in &self.terms {
            out.add_canonical(r, c * k);
        }
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1)
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// First term whose element does not define a G-map, if any.
    pub fn first_inadmissible(&self, lattice: &Lattice) -> Option<usize> {
        self.terms
            .keys()
            .copied()
            .find(|&g| !lattice.is_admissible(self.source, self.target, g))
    }
}

/// Augmentation of an endomorphism sum of `G/H` into the tom Dieck group:
/// every `[φ] : G/H → G/H` goes to `1·(H)`.
pub fn epsilon_endo(
    lattice: &Arc<Lattice>,
    m: &MorphismSum,
) -> Result<TomDieckElement, OrbitError> {
    if m.source != m.target {
        return Err(OrbitError::SourceTargetMismatch {
            from: m.source,
            to: m.target,
        });
    }
    let class = lattice.class_of(m.source);
    Ok(TomDieckElement::single(
        lattice.clone(),
        class,
        m.coefficient_sum(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric3};

    fn s3() -> Arc<Lattice> {
        Arc::new(Lattice::new(symmetric3()).unwrap())
    }

    #[test]
    fn free_orbit_has_all_cosets() {
        let lat = s3();
        for (i, _) in lat.subgroups().iter().enumerate() {
            let h = SubgroupId(i);
            let n = lat.morphism_set(lat.trivial_id(), h).len();
            assert_eq!(n, 6 / lat.subgroup(h).order());
        }
    }

    #[test]
    fn no_maps_from_fixed_point_to_proper_orbit() {
        let lat = s3();
        let g = lat.whole_id();
        for i in 0..lat.subgroups().len() - 1 {
            assert!(lat.morphism_set(g, SubgroupId(i)).is_empty());
        }
    }

    #[test]
    fn between_conjugate_order_two_subgroups() {
        let lat = s3();
        // Subgroups 1 and 2 are distinct conjugate C2's.
        let set = lat.morphism_set(SubgroupId(1), SubgroupId(2));
        assert_eq!(set.len(), 1);
        for m in &set {
            assert!(lat.is_admissible(m.source, m.target, m.rep));
        }
    }

    #[test]
    fn compose_with_identity() {
        let lat = s3();
        let k = lat.trivial_id();
        let h = SubgroupId(4);
        for phi in lat.morphism_set(k, h) {
            let id_k = lat.identity_morphism(k);
            let id_h = lat.identity_morphism(h);
            assert_eq!(lat.compose(&id_k, &phi).unwrap(), phi);
            assert_eq!(lat.compose(&phi, &id_h).unwrap(), phi);
        }
    }

    #[test]
    fn not_composable() {
        let lat = s3();
        let a = lat.identity_morphism(SubgroupId(1));
        let b = lat.identity_morphism(SubgroupId(2));
        assert!(matches!(
            lat.compose(&a, &b),
            Err(OrbitError::NotComposable { .. })
        ));
    }

    #[test]
    fn z2_free_orbit_algebra() {
        let lat = Lattice::new(cyclic(2)).unwrap();
        let e = lat.trivial_id();
        let r_e = lat.morphism(e, e, 0).unwrap();
        let r_g = lat.morphism(e, e, 1).unwrap();
        assert_eq!(lat.compose(&r_g, &r_g).unwrap(), r_e);

        let mut plus = MorphismSum::zero(e, e);
        plus.add_term(&lat, 0, 1);
        plus.add_term(&lat, 1, 1);
        let mut minus = MorphismSum::zero(e, e);
        minus.add_term(&lat, 0, 1);
        minus.add_term(&lat, 1, -1);
        assert!(lat.sum_compose(&plus, &minus).unwrap().is_zero());

        let two = MorphismSum::from_morphism(r_g, 2);
        let three = MorphismSum::from_morphism(r_g, 3);
        let six = lat.sum_compose(&two, &three).unwrap();
        assert_eq!(six, MorphismSum::from_morphism(r_e, 6));
        assert!(lat
            .sum_compose(&two, &MorphismSum::zero(e, e))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn augmentation() {
        let lat = s3();
        let h = SubgroupId(4);
        let id = MorphismSum::identity(&lat, h);
        let td = epsilon_endo(&lat, &id).unwrap();
        assert_eq!(td.project(lat.class_of(h)), 1);
        assert!(epsilon_endo(&lat, &MorphismSum::zero(h, h))
            .unwrap()
            .is_zero());

        let mut m = MorphismSum::zero(h, h);
        let w = lat.morphism_set(h, h)[1].rep;
        m.add_term(&lat, lat.group().identity(), 2);
        m.add_term(&lat, w, -5);
        assert_eq!(epsilon_endo(&lat, &m).unwrap().project(lat.class_of(h)), -3);

        let off = MorphismSum::zero(lat.trivial_id(), h);
        assert!(matches!(
            epsilon_endo(&lat, &off),
            Err(OrbitError::SourceTargetMismatch { .. })
        ));
    }
}
