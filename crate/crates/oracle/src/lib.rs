//! Brute-force reference computations on raw Cayley tables
//! (`table[a][b] = a·b`). Nothing here shares code with `equilef`; the
//! algorithms are chosen for obviousness, not speed.

use std::collections::BTreeSet;

pub type Table = [Vec<usize>];

pub fn identity(t: &Table) -> usize {
    (0..t.len())
        .find(|&e| (0..t.len()).all(|x| t[e][x] == x))
        .expect("group has an identity")
}

pub fn inverse(t: &Table, a: usize) -> usize {
    let e = identity(t);
    (0..t.len())
        .find(|&b| t[a][b] == e)
        .expect("inverse exists")
}

/// Every subset containing the identity that is closed under
/// multiplication, as sorted element lists.
pub fn subgroups(t: &Table) -> BTreeSet<Vec<usize>> {
    let n = t.len();
    assert!(n <= 16, "subset enumeration is exponential");
    let e = identity(t);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << e) == 0 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| mask & (1 << t[a][b]) != 0));
        if closed {
            out.insert(members);
        }
    }
    out
}

/// Conjugacy classes of elements: `a ~ b` iff `g a g⁻¹ = b` for some `g`,
/// merged with union-find. Classes sorted by least element.
pub fn conjugacy_classes(t: &Table) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in 0..n {
        for b in 0..n {
            if (0..n).any(|g| t[t[g][a]][inverse(t, g)] == b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        match classes.iter_mut().find(|c| find(&mut parent, c[0]) == r) {
            Some(c) => c.push(x),
            None => classes.push(vec![x]),
        }
    }
    classes
}

/// Left cosets `xH` as sorted sets, ordered by least element.
pub fn cosets(t: &Table, h: &[usize]) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    for row in t {
        let c: BTreeSet<usize> = h.iter().map(|&y| row[y]).collect();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// `|(G/H)^K|`: cosets `xH` with `k x H = x H` for all `k ∈ K`.
pub fn fixed_cosets(t: &Table, k: &[usize], h: &[usize]) -> usize {
    cosets(t, h)
        .iter()
        .filter(|c| {
            k.iter()
                .all(|&kk| c.iter().map(|&y| t[kk][y]).collect::<BTreeSet<_>>() == **c)
        })
        .count()
}

pub type Matrix = Vec<Vec<i64>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), inner, "inner dimensions");
        for (k, &x) in row.iter().enumerate() {
            if x != 0 {
                for j in 0..cols {
                    out[i][j] += x * b[k][j];
                }
            }
        }
    }
    out
}

pub fn is_zero(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Permutation-module matrix of `Σ c · [xK ↦ xgH]` from `ℤ[G/K]` to
/// `ℤ[G/H]` on the coset bases. Panics if some `g` is not well defined.
pub fn morphism_matrix(t: &Table, k: &[usize], h: &[usize], terms: &[(usize, i64)]) -> Matrix {
    let src = cosets(t, k);
    let dst = cosets(t, h);
    let mut m = zeros(dst.len(), src.len());
    for &(g, c) in terms {
        for (j, coset) in src.iter().enumerate() {
            let images: BTreeSet<BTreeSet<usize>> = coset
                .iter()
                .map(|&x| h.iter().map(|&y| t[t[x][g]][y]).collect())
                .collect();
            assert_eq!(images.len(), 1, "g does not give a G-map");
            let img = images.into_iter().next().unwrap();
            let i = dst.iter().position(|d| *d == img).unwrap();
            m[i][j] += c;
        }
    }
    m
}

/// Whether `[xK ↦ xgH]` is well defined.
pub fn well_defined(t: &Table, k: &[usize], h: &[usize], g: usize) -> bool {
    let hs: BTreeSet<usize> = h.iter().copied().collect();
    let gi = inverse(t, g);
    k.iter().all(|&x| hs.contains(&t[t[gi][x]][g]))
}

/// A matrix of morphism sums between typed cells, flattened to one integer
/// matrix on the direct sum of permutation modules.
/// `(row, col, terms)` with terms `(g, coeff)`.
pub type Entry = (usize, usize, Vec<(usize, i64)>);

pub struct TypedMatrix<'a> {
    pub row_types: &'a [Vec<usize>],
    pub col_types: &'a [Vec<usize>],
    pub entries: Vec<Entry>,
}

pub fn flatten(t: &Table, m: &TypedMatrix) -> Matrix {
    let offsets = |types: &[Vec<usize>]| {
        let mut off = vec![0];
        for ty in types {
            off.push(off.last().unwrap() + t.len() / ty.len());
        }
        off
    };
    let (ro, co) = (offsets(m.row_types), offsets(m.col_types));
    let mut out = zeros(*ro.last().unwrap(), *co.last().unwrap());
    for (r, c, terms) in &m.entries {
        let block = morphism_matrix(t, &m.col_types[*c], &m.row_types[*r], terms);
        for (i, row) in block.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[ro[*r] + i][co[*c] + j] += x;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect()
    }

    #[test]
    fn cyclic_facts() {
        assert_eq!(subgroups(&z(6)).len(), 4);
        assert_eq!(conjugacy_classes(&z(4)).len(), 4);
        assert_eq!(fixed_cosets(&z(4), &[0, 2], &[0]), 0);
        assert_eq!(fixed_cosets(&z(4), &[0, 2], &[0, 2]), 2);
    }

    #[test]
    fn free_orbit_shift() {
        let m = morphism_matrix(&z(3), &[0], &[0], &[(1, 1)]);
        assert_eq!(m, vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(
            mul(&mul(&m, &m), &m),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }
}
