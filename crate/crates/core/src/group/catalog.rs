//! A catalog of small groups by name.

use std::collections::{BTreeSet, HashMap};

use super::FiniteGroup;

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// The cyclic group `C_n`, elements `a^k` at index `k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    let names = (0..n).map(|k| power_name("a", k)).collect();
    FiniteGroup::from_fn(names, |x, y| (x + y) % n).expect("cyclic group")
}

/// The dihedral group of order `2n`: index `i` is `r^i`, index `n + i` is `s r^i`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let mut names: Vec<String> = (0..n).map(|i| power_name("r", i)).collect();
    names.extend((0..n).map(|i| match i {
        0 => "s".to_string(),
        1 => "sr".to_string(),
        _ => format!("sr^{i}"),
    }));
    FiniteGroup::from_fn(names, |x, y| {
        let (a, i) = (x / n, x % n);
        let (b, j) = (y / n, y % n);
        // s^a r^i s^b r^j = s^(a+b) r^(±i + j)
        let k = if b == 0 { (i + j) % n } else { (n - i + j) % n };
        ((a + b) % 2) * n + k
    })
    .expect("dihedral group")
}

/// The dicyclic group of order `4m`: `a^{2m} = 1`, `x² = a^m`,
/// `x a x⁻¹ = a⁻¹`. Index `i` is `a^i`, index `2m + i` is `x a^i`.
/// `dicyclic(2)` is the quaternion group.
pub fn dicyclic(m: usize) -> FiniteGroup {
    let n = 2 * m;
    let mut names: Vec<String> = (0..n).map(|i| power_name("a", i)).collect();
    names.extend((0..n).map(|i| match i {
        0 => "x".to_string(),
        1 => "xa".to_string(),
        _ => format!("xa^{i}"),
    }));
    FiniteGroup::from_fn(names, |p, q| {
        let (b1, i) = (p / n, p % n);
        let (b2, j) = (q / n, q % n);
        match (b1, b2) {
            (0, 0) => (i + j) % n,
            (0, 1) => n + (n - i + j) % n,
            (1, 0) => n + (i + j) % n,
            // x a^i x a^j = x² a^{-i} a^j = a^{m - i + j}
            _ => (m + n - i + j) % n,
        }
    })
    .expect("dicyclic group")
}

pub fn quaternion8() -> FiniteGroup {
    dicyclic(2)
}

pub fn klein_four() -> FiniteGroup {
    direct_product(&cyclic(2), &cyclic(2))
}

/// Elements are pairs `(x, y)` at index `x * |b| + y`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let nb = b.order();
    let names = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", a.name(x), b.name(y)))
        .collect();
    FiniteGroup::from_fn(names, |p, q| {
        a.mul(p / nb, q / nb) * nb + b.mul(p % nb, q % nb)
    })
    .expect("direct product")
}

fn cycle_name(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(i + 1).to_string());
            first = false;
            i = perm[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// The permutation group generated by `gens` (images of `0..degree`).
/// Elements are sorted lexicographically by image list, so the identity is
/// index 0; names are in cycle notation on `1..=degree`.
pub fn permutation_group(gens: &[Vec<usize>]) -> FiniteGroup {
    let degree = gens.first().map_or(0, Vec::len);
    let id: Vec<usize> = (0..degree).collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(id.clone());
    let mut stack = vec![id];
    while let Some(p) = stack.pop() {
        for s in gens {
            let q: Vec<usize> = (0..degree).map(|i| p[s[i]]).collect();
            if found.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    let perms: Vec<Vec<usize>> = found.into_iter().collect();
    let index: HashMap<&Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let names = perms.iter().map(|p| cycle_name(p)).collect();
    FiniteGroup::from_fn(names, |a, b| {
        let c: Vec<usize> = (0..degree).map(|i| perms[a][perms[b][i]]).collect();
        index[&c]
    })
    .expect("permutation group")
}

/// `S_3` as permutations of three points: `e, (2 3), (1 2), (1 2 3), (1 3 2), (1 3)`.
pub fn symmetric3() -> FiniteGroup {
    permutation_group(&[vec![1, 0, 2], vec![1, 2, 0]])
}

pub fn alternating4() -> FiniteGroup {
    permutation_group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// One representative of every isomorphism type of group of order at most 12,
/// with a short name.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("C1", cyclic(1)),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C2xC2", klein_four()),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", symmetric3()),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C4xC2", direct_product(&cyclic(4), &cyclic(2))),
        ("C2xC2xC2", direct_product(&klein_four(), &cyclic(2))),
        ("D4", dihedral(4)),
        ("Q8", quaternion8()),
        ("C9", cyclic(9)),
        ("C3xC3", direct_product(&cyclic(3), &cyclic(3))),
        ("C10", cyclic(10)),
        ("D5", dihedral(5)),
        ("C11", cyclic(11)),
        ("C12", cyclic(12)),
        ("C6xC2", direct_product(&cyclic(6), &cyclic(2))),
        ("A4", alternating4()),
        ("D6", dihedral(6)),
        ("Dic3", dicyclic(3)),
    ]
}

/// Looks up a catalog group by the names used in [`small_groups`], plus
/// `Cn`, `Dn` and `Dicn` for any `n`.
pub fn named_group(name: &str) -> Option<FiniteGroup> {
    if let Some((_, g)) = small_groups().into_iter().find(|(n, _)| *n == name) {
        return Some(g);
    }
    let num = |p: &str| {
        name.strip_prefix(p)
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&n| n > 0)
    };
    if let Some(n) = num("Dic") {
        return Some(dicyclic(n));
    }
    if let Some(n) = num("C") {
        return Some(cyclic(n));
    }
    if let Some(n) = num("D") {
        return (n >= 2).then(|| dihedral(n));
    }
    None
}
