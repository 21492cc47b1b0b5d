use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{FiniteGroup, GroupError};

/// A subgroup, stored as its sorted element list.
///
/// Equality, ordering and hashing look at the element list only; values from
/// different parent groups should not be mixed in one collection.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks closure and returns the canonical (sorted) subgroup.
    pub fn new(group: Arc<FiniteGroup>, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        let n = group.order();
        if elements.is_empty() || elements.iter().any(|&x| x >= n) {
            return Err(GroupError::NotASubgroup(elements));
        }
        let mut inside = vec![false; n];
        for &x in &elements {
            inside[x] = true;
        }
        // Finite: closure under multiplication suffices.
        let closed = elements
            .iter()
            .all(|&a| elements.iter().all(|&b| inside[group.mul(a, b)]));
        if !closed {
            return Err(GroupError::NotASubgroup(elements));
        }
        Ok(Self { group, elements })
    }

    pub(crate) fn from_sorted_unchecked(group: Arc<FiniteGroup>, elements: Vec<usize>) -> Self {
        Self { group, elements }
    }

    pub fn generated(group: Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let elements = group.closure(gens);
        Self { group, elements }
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let elements = vec![group.identity()];
        Self { group, elements }
    }

    pub fn whole(group: Arc<FiniteGroup>) -> Self {
        let elements = group.elements().collect();
        Self { group, elements }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `g H g⁻¹`, sorted.
    pub fn conjugate_by(&self, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self
            .elements
            .iter()
            .map(|&h| self.group.conjugate(g, h))
            .collect();
        elements.sort_unstable();
        Subgroup {
            group: self.group.clone(),
            elements,
        }
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    /// The normalizer `N(H) = { g : gHg⁻¹ = H }`.
    pub fn normalizer(&self) -> Subgroup {
        let elements = self
            .group
            .elements()
            .filter(|&g| {
                self.elements
                    .iter()
                    .all(|&h| self.contains(self.group.conjugate(g, h)))
            })
            .collect();
        Subgroup {
            group: self.group.clone(),
            elements,
        }
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Ord for Subgroup {
    /// By order, then lexicographically by element list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

/// Every subgroup of `group`, canonical and sorted by (order, elements).
///
/// Subgroups are grown from the cyclic ones: each newly found subgroup is
/// joined with every cyclic subgroup it does not contain, until no new
/// closure appears. Every subgroup is a join of cyclic subgroups, so this
/// reaches all of them.
pub fn all_subgroups(group: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    let n = group.order();
    if n > cap {
        return Err(GroupError::GroupTooLarge { order: n, cap });
    }

    let mut cyclic: Vec<Vec<usize>> = group.elements().map(|g| group.closure(&[g])).collect();
    cyclic.sort();
    cyclic.dedup();
    // One generator per cyclic subgroup.
    let cyclic_gens: Vec<usize> = cyclic
        .iter()
        .map(|c| {
            *c.iter()
                .find(|&&g| group.closure(&[g]).len() == c.len())
                .expect("cyclic subgroup has a generator")
        })
        .collect();

    let mut found: HashSet<Vec<usize>> = cyclic.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for sub in &frontier {
            let inside: BTreeSet<usize> = sub.iter().copied().collect();
            for (c, &g) in cyclic.iter().zip(&cyclic_gens) {
                if inside.contains(&g) || c.len() == n {
                    continue;
                }
                let mut gens = sub.clone();
                gens.push(g);
                let joined = group.closure(&gens);
                if found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }

    let mut subs: Vec<Subgroup> = found
        .into_iter()
        .map(|e| Subgroup::from_sorted_unchecked(group.clone(), e))
        .collect();
    subs.sort();
    Ok(subs)
}

/// True iff some conjugate `gHg⁻¹` is contained in `K`.
pub fn is_subconjugate(h: &Subgroup, k: &Subgroup) -> Result<bool, GroupError> {
    if !h.same_parent(k) {
        return Err(GroupError::ParentMismatch);
    }
    if h.order() > k.order() || !k.order().is_multiple_of(h.order()) {
        return Ok(false);
    }
    let g = h.group();
    Ok(g.elements()
        .any(|x| h.elements().iter().all(|&y| k.contains(g.conjugate(x, y)))))
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Lexicographically least member.
    pub representative: Subgroup,
    /// All conjugates, sorted.
    pub members: Vec<Subgroup>,
    /// `conjugators[i]` is the least `a` with `members[i] = a⁻¹ · representative · a`.
    pub conjugators: Vec<usize>,
    pub label: String,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn position(&self, member: &Subgroup) -> Option<usize> {
        self.members.binary_search(member).ok()
    }
}

/// Partitions all subgroups into conjugacy classes, ordered by
/// representative. Labels are `H{order}_{k}` with `k` counting classes of
/// the same order.
pub fn subgroup_classes(subgroups: &[Subgroup]) -> Vec<SubgroupClass> {
    let mut assigned: HashSet<&[usize]> = HashSet::new();
    let mut classes = Vec::new();
    // `subgroups` is sorted, so the first unassigned member of each class is
    // its lexicographic minimum.
    for h in subgroups {
        if assigned.contains(h.elements()) {
            continue;
        }
        let g = h.group();
        let mut members: Vec<Subgroup> = g.elements().map(|x| h.conjugate_by(x)).collect();
        members.sort();
        members.dedup();
        let conjugators = members
            .iter()
            .map(|m| {
                g.elements()
                    .find(|&a| h.conjugate_by(g.inv(a)) == *m)
                    .expect("member is a conjugate")
            })
            .collect();
        for m in &members {
            if let Some(orig) = subgroups.iter().find(|s| *s == m) {
                assigned.insert(orig.elements());
            }
        }
        classes.push(SubgroupClass {
            representative: h.clone(),
            members,
            conjugators,
            label: String::new(),
        });
    }
    let mut per_order = std::collections::HashMap::<usize, usize>::new();
    for class in &mut classes {
        let k = per_order.entry(class.order()).or_insert(0);
        class.label = format!("H{}_{}", class.order(), k);
        *k += 1;
    }
    classes
}
