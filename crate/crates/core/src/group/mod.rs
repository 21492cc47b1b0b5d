//! Finite groups given by Cayley tables, and the subgroup structure derived
//! from them.

mod catalog;
mod lattice;
mod subgroup;
mod weyl;

pub use catalog::*;
pub use lattice::{Lattice, SubgroupId, DEFAULT_GROUP_CAP};
pub use subgroup::{all_subgroups, is_subconjugate, subgroup_classes, Subgroup, SubgroupClass};
pub use weyl::{element_classes, weyl, ElementClassTable, WeylGroup};

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed group table: {0}")]
    Malformed(String),
    #[error("not a Latin square: entry ({row}, {col}) repeats a value in its row or column")]
    NotLatinSquare { row: usize, col: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("duplicate element name {name:?} at index {index}")]
    DuplicateName { index: usize, name: String },
    #[error("group of order {order} exceeds the configured cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("subgroups belong to different groups")]
    ParentMismatch,
    #[error("element list {0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),
}

/// A finite group stored as a validated Cayley table.
///
/// Row index is the left factor: `mul(a, b) = table[a][b]`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    names: Vec<String>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a raw Cayley table. Checks run in a fixed order (shape,
    /// Latin square, identity, inverses, associativity, names) and each
    /// error names the first violation found in row-major order.
    pub fn from_table(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Malformed("empty table".into()));
        }
        if names.len() != order {
            return Err(GroupError::Malformed(format!(
                "{} names for a table of order {order}",
                names.len()
            )));
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::Malformed(format!(
                    "row {r} has length {}, expected {order}",
                    row.len()
                )));
            }
            if let Some(c) = row.iter().position(|&x| x >= order) {
                return Err(GroupError::Malformed(format!(
                    "entry ({r}, {c}) = {} is out of range",
                    row[c]
                )));
            }
        }

        // Latin square: report the first cell whose value already occurred
        // earlier in its row or column.
        for r in 0..order {
            for c in 0..order {
                let v = table[r][c];
                let dup_row = table[r][..c].contains(&v);
                let dup_col = (0..r).any(|r2| table[r2][c] == v);
                if dup_row || dup_col {
                    return Err(GroupError::NotLatinSquare { row: r, col: c });
                }
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;

        let mut inverses = Vec::with_capacity(order);
        for (a, row) in table.iter().enumerate() {
            let inv = (0..order)
                .find(|&b| row[b] == identity && table[b][a] == identity)
                .ok_or(GroupError::NoInverse { element: a })?;
            inverses.push(inv);
        }

        for a in 0..order {
            for b in 0..order {
                let ab = table[a][b];
                for c in 0..order {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let mut seen = HashSet::new();
        for (index, name) in names.iter().enumerate() {
            if !seen.insert(name.as_str()) {
                return Err(GroupError::DuplicateName {
                    index,
                    name: name.clone(),
                });
            }
        }

        Ok(Self {
            order,
            table: table.into_iter().flatten().collect(),
            names,
            identity,
            inverses,
        })
    }

    /// Builds the table from a multiplication function on `0..order`.
    pub fn from_fn(
        names: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let n = names.len();
        let table = (0..n)
            .map(|a| (0..n).map(|b| mul(a, b)).collect())
            .collect();
        Self::from_table(table, names)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| inside[x]).collect()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("names", &self.names)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("g{i}")).collect()
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_table(vec![vec![0]], names(1)).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn z2() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], names(2)).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn latin_square_violation() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], names(2)).unwrap_err();
        assert_eq!(err, GroupError::NotLatinSquare { row: 1, col: 1 });
    }

    #[test]
    fn identity_may_be_any_index() {
        // ℤ₂ with the identity stored second.
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], names(2)).unwrap();
        assert_eq!(g.identity(), 1);
    }

    #[test]
    fn no_identity() {
        // Latin square without an identity: x*y = -x-y mod 3.
        let t = (0..3)
            .map(|a| (0..3).map(|b| (6 - a - b) % 3).collect())
            .collect();
        assert_eq!(
            FiniteGroup::from_table(t, names(3)).unwrap_err(),
            GroupError::NoIdentity
        );
    }

    #[test]
    fn non_associative_loop() {
        // A Latin square with identity 0 that is not associative (order-5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(t, names(5)),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn duplicate_name() {
        let err =
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], vec!["e".into(), "e".into()])
                .unwrap_err();
        assert_eq!(
            err,
            GroupError::DuplicateName {
                index: 1,
                name: "e".into()
            }
        );
    }

    #[test]
    fn malformed_shapes() {
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1]], names(1)),
            Err(GroupError::Malformed(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]], names(2)),
            Err(GroupError::Malformed(_))
        ));
    }
}
