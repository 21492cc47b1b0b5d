use std::sync::Arc;

use super::{FiniteGroup, Subgroup};

/// `W(H) = N(H)/H` together with the coset bookkeeping that links it back to
/// the ambient group.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub base: Subgroup,
    pub normalizer: Subgroup,
    pub quotient: Arc<FiniteGroup>,
    /// Sorted coset `gH` for each quotient element, ordered by least element.
    pub cosets: Vec<Vec<usize>>,
    /// Quotient element of each `g ∈ N(H)`; `None` outside the normalizer.
    pub projection: Vec<Option<usize>>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.cosets.len()
    }

    pub fn project(&self, g: usize) -> Option<usize> {
        self.projection[g]
    }

    /// Least element of the coset representing quotient element `w`.
    pub fn lift(&self, w: usize) -> usize {
        self.cosets[w][0]
    }
}

pub fn weyl(h: &Subgroup) -> WeylGroup {
    let g = h.group();
    let normalizer = h.normalizer();
    let mut projection = vec![None; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    // Normalizer elements are sorted, so cosets are discovered in order of
    // their least element.
    for &x in normalizer.elements() {
        if projection[x].is_some() {
            continue;
        }
        let mut coset: Vec<usize> = h.elements().iter().map(|&y| g.mul(x, y)).collect();
        coset.sort_unstable();
        let idx = cosets.len();
        for &y in &coset {
            projection[y] = Some(idx);
        }
        cosets.push(coset);
    }
    let k = cosets.len();
    let names = cosets.iter().map(|c| g.name(c[0]).to_string()).collect();
    let quotient = FiniteGroup::from_fn(names, |a, b| {
        projection[g.mul(cosets[a][0], cosets[b][0])].expect("normalizer is closed")
    })
    .expect("coset multiplication in N(H)/H is a group");
    debug_assert_eq!(quotient.order(), k);
    WeylGroup {
        base: h.clone(),
        normalizer,
        quotient: Arc::new(quotient),
        cosets,
        projection,
    }
}

/// Conjugacy classes of elements of a finite group.
#[derive(Clone, Debug)]
pub struct ElementClassTable {
    pub group: Arc<FiniteGroup>,
    /// Sorted element lists, ordered by least element.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ElementClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Display label of a class: the name of its least element.
    pub fn label(&self, class: usize) -> &str {
        self.group.name(self.classes[class][0])
    }
}

pub fn element_classes(group: &Arc<FiniteGroup>) -> ElementClassTable {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = (0..n).map(|g| group.conjugate(g, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            class_of[y] = classes.len();
        }
        classes.push(orbit);
    }
    ElementClassTable {
        group: group.clone(),
        classes,
        class_of,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{all_subgroups, cyclic, symmetric3};

    #[test]
    fn weyl_of_whole_group_is_trivial() {
        let g = Arc::new(symmetric3());
        let w = weyl(&Subgroup::whole(g));
        assert_eq!(w.order(), 1);
    }

    #[test]
    fn weyl_of_trivial_is_the_group() {
        let g = Arc::new(symmetric3());
        let w = weyl(&Subgroup::trivial(g.clone()));
        assert_eq!(w.order(), 6);
        assert_eq!(w.quotient.table_rows(), g.table_rows());
    }

    #[test]
    fn weyl_of_c3_in_s3() {
        let g = Arc::new(symmetric3());
        let subs = all_subgroups(&g, 64).unwrap();
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();
        let w = weyl(c3);
        assert_eq!(w.normalizer.order(), 6);
        assert_eq!(w.order(), 2);
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let g = Arc::new(symmetric3());
        for h in all_subgroups(&g, 64).unwrap() {
            let w = weyl(&h);
            for &a in w.normalizer.elements() {
                for &b in w.normalizer.elements() {
                    let pa = w.project(a).unwrap();
                    let pb = w.project(b).unwrap();
                    assert_eq!(w.project(g.mul(a, b)).unwrap(), w.quotient.mul(pa, pb));
                }
            }
            for &x in h.elements() {
                assert_eq!(w.project(x), Some(w.quotient.identity()));
            }
        }
    }

    #[test]
    fn class_tables() {
        let triv = Arc::new(cyclic(1));
        assert_eq!(element_classes(&triv).len(), 1);
        let s3 = Arc::new(symmetric3());
        let t = element_classes(&s3);
        let sizes: Vec<usize> = t.classes.iter().map(Vec::len).collect();
        // Identity, then the class met first by index.
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(sizes[0], 1);
        let c5 = Arc::new(cyclic(5));
        assert_eq!(element_classes(&c5).len(), 5);
    }
}
