use std::collections::HashMap;
use std::sync::Arc;

use super::{
    all_subgroups, element_classes, subgroup_classes, weyl, ElementClassTable, FiniteGroup,
    GroupError, Subgroup, SubgroupClass, WeylGroup,
};
use crate::par;

pub const DEFAULT_GROUP_CAP: usize = 64;

/// Index of a subgroup in [`Lattice::subgroups`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupId(pub usize);

/// All subgroup data of one finite group, computed once and shared.
///
/// Holds the subgroups, their conjugacy classes with the subconjugacy order,
/// one Weyl group and element-class table per class representative, and a
/// table of least coset representatives `min(gH)` for every subgroup.
#[derive(Debug)]
pub struct Lattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<Vec<usize>, SubgroupId>,
    classes: Vec<SubgroupClass>,
    class_of: Vec<usize>,
    conjugator: Vec<usize>,
    class_rep: Vec<SubgroupId>,
    leq: Vec<Vec<bool>>,
    weyl: Vec<WeylGroup>,
    weyl_classes: Vec<ElementClassTable>,
    coset_min: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn new(group: FiniteGroup) -> Result<Self, GroupError> {
        Self::with_cap(Arc::new(group), DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(group: Arc<FiniteGroup>, cap: usize) -> Result<Self, GroupError> {
        let subgroups = all_subgroups(&group, cap)?;
        let index: HashMap<Vec<usize>, SubgroupId> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements().to_vec(), SubgroupId(i)))
            .collect();
        let classes = subgroup_classes(&subgroups);

        let mut class_of = vec![0; subgroups.len()];
        let mut conjugator = vec![group.identity(); subgroups.len()];
        let mut class_rep = Vec::with_capacity(classes.len());
        for (ci, class) in classes.iter().enumerate() {
            class_rep.push(index[class.representative.elements()]);
            for (m, &a) in class.members.iter().zip(&class.conjugators) {
                let id = index[m.elements()];
                class_of[id.0] = ci;
                conjugator[id.0] = a;
            }
        }

        let leq = par::map(&classes, |a| {
            classes
                .iter()
                .map(|b| {
                    super::is_subconjugate(&a.representative, &b.representative)
                        .expect("same parent")
                })
                .collect()
        });
        let weyl: Vec<WeylGroup> = par::map(&classes, |c| weyl(&c.representative));
        let weyl_classes = weyl.iter().map(|w| element_classes(&w.quotient)).collect();
        let coset_min = par::map(&subgroups, |h| {
            group
                .elements()
                .map(|g| {
                    h.elements()
                        .iter()
                        .map(|&x| group.mul(g, x))
                        .min()
                        .expect("subgroups are nonempty")
                })
                .collect()
        });

        Ok(Self {
            group,
            subgroups,
            index,
            classes,
            class_of,
            conjugator,
            class_rep,
            leq,
            weyl,
            weyl_classes,
            coset_min,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Lattices over equal Cayley tables are interchangeable.
    pub fn same_as(&self, other: &Lattice) -> bool {
        std::ptr::eq(self, other) || *self.group == *other.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id.0]
    }

    pub fn id_of(&self, h: &Subgroup) -> Result<SubgroupId, GroupError> {
        if !(Arc::ptr_eq(h.group(), &self.group) || **h.group() == *self.group) {
            return Err(GroupError::ParentMismatch);
        }
        self.id_of_elements(h.elements())
            .ok_or_else(|| GroupError::NotASubgroup(h.elements().to_vec()))
    }

    /// Looks up a sorted element list.
    pub fn id_of_elements(&self, elements: &[usize]) -> Option<SubgroupId> {
        self.index.get(elements).copied()
    }

    pub fn trivial_id(&self) -> SubgroupId {
        SubgroupId(0)
    }

    pub fn whole_id(&self) -> SubgroupId {
        SubgroupId(self.subgroups.len() - 1)
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &SubgroupClass {
        &self.classes[c]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, id: SubgroupId) -> usize {
        self.class_of[id.0]
    }

    pub fn class_rep(&self, class: usize) -> SubgroupId {
        self.class_rep[class]
    }

    pub fn is_class_rep(&self, id: SubgroupId) -> bool {
        self.class_rep[self.class_of[id.0]] == id
    }

    /// The least `a` with `subgroup(id) = a⁻¹ · rep · a`.
    pub fn conjugator(&self, id: SubgroupId) -> usize {
        self.conjugator[id.0]
    }

    /// `(a) ≤ (b)` in the subconjugacy order.
    pub fn class_leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn subconjugate(&self, h: SubgroupId, k: SubgroupId) -> bool {
        self.leq[self.class_of(h)][self.class_of(k)]
    }

    pub fn whole_class(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn weyl(&self, class: usize) -> &WeylGroup {
        &self.weyl[class]
    }

    pub fn weyl_classes(&self, class: usize) -> &ElementClassTable {
        &self.weyl_classes[class]
    }

    /// Least element of the coset `g H`.
    #[inline]
    pub fn coset_min(&self, h: SubgroupId, g: usize) -> usize {
        self.coset_min[h.0][g]
    }

    pub fn label(&self, class: usize) -> &str {
        &self.classes[class].label
    }

    pub fn set_label(&mut self, class: usize, label: impl Into<String>) {
        self.classes[class].label = label.into();
    }

    pub fn class_by_label(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{dihedral, symmetric3};

    #[test]
    fn s3_lattice() {
        let lat = Lattice::new(symmetric3()).unwrap();
        assert_eq!(lat.subgroups().len(), 6);
        assert_eq!(lat.num_classes(), 4);
        for (i, s) in lat.subgroups().iter().enumerate() {
            let id = SubgroupId(i);
            let rep = lat.subgroup(lat.class_rep(lat.class_of(id)));
            let a = lat.conjugator(id);
            assert_eq!(rep.conjugate_by(lat.group().inv(a)), *s);
        }
        // (e) ≤ everything, (C2) and (C3) incomparable.
        assert!((0..4).all(|c| lat.class_leq(0, c)));
        assert!(!lat.class_leq(1, 2) && !lat.class_leq(2, 1));
        assert_eq!(lat.weyl(2).order(), 2);
        assert_eq!(lat.weyl(1).order(), 1);
    }

    #[test]
    fn subconjugacy_is_a_partial_order_on_classes() {
        let lat = Lattice::new(dihedral(4)).unwrap();
        let n = lat.num_classes();
        for a in 0..n {
            assert!(lat.class_leq(a, a));
            for b in 0..n {
                if a != b {
                    assert!(!(lat.class_leq(a, b) && lat.class_leq(b, a)));
                }
                for c in 0..n {
                    if lat.class_leq(a, b) && lat.class_leq(b, c) {
                        assert!(lat.class_leq(a, c));
                    }
                }
            }
        }
        let total: usize = lat.classes().iter().map(|c| c.members.len()).sum();
        assert_eq!(total, lat.subgroups().len());
    }
}
