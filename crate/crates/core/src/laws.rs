//! Executable identities between the invariants. Each check returns the
//! first violation it finds; batch runners apply every law to a list of
//! self-maps.

use std::fmt;
use std::sync::Arc;

use crate::complexes::{
    generator_map, quotient_map_data, stratum, suspend_map, wedge, CellMap, Subcomplex, Wedge,
};
use crate::group::{Lattice, SubgroupId};
use crate::invariants::{
    analytical_lefschetz, decompose, ell_component, homological_lefschetz,
    ordinary_reduced_lefschetz,
};
use crate::par;
use crate::rings::{cc_augment, ConjClassSum, TomDieckElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub detail: String,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.detail)
    }
}

pub type LawResult = Result<(), LawViolation>;

fn fail(law: &'static str, detail: String) -> LawResult {
    Err(LawViolation { law, detail })
}

pub const CHAIN_EQUALITY: &str = "chain-equality";
pub const COMPONENTS: &str = "component-compatibility";
pub const SUSPENSION: &str = "suspension-sign";
pub const WEDGE: &str = "wedge-additivity";
pub const COFIBRATION: &str = "cofibration";
pub const COMMUTATIVITY: &str = "commutativity";
pub const CONJUGATION: &str = "conjugation-invariance";
pub const GENERATOR: &str = "generator-identity";
pub const CIRCLES: &str = "wedge-of-circles";

/// Homological and analytical values agree.
pub fn chain_equality(f: &CellMap) -> LawResult {
    let hom = homological_lefschetz(f);
    let (an, _) = analytical_lefschetz(f);
    if hom != an {
        return fail(
            CHAIN_EQUALITY,
            format!("homological {hom}, analytical {an}"),
        );
    }
    Ok(())
}

/// `project(L_G(f), (H)) = cc_augment(ℓ_H(f))` for every class.
pub fn component_compatibility(f: &CellMap) -> LawResult {
    let l = homological_lefschetz(f);
    for class in 0..f.lattice().num_classes() {
        let ell = ell_component(f, class);
        if l.project(class) != cc_augment(&ell) {
            return fail(
                COMPONENTS,
                format!(
                    "({}): L_G coefficient {}, augmented component {}",
                    f.lattice().label(class),
                    l.project(class),
                    cc_augment(&ell)
                ),
            );
        }
    }
    Ok(())
}

/// Suspension negates `L_G` and every `ℓ_H`.
pub fn suspension_sign(f: &CellMap) -> LawResult {
    let s = suspend_map(f);
    let (a, b) = (homological_lefschetz(f), homological_lefschetz(&s));
    if b != a.negate() {
        return fail(SUSPENSION, format!("L_G(f) = {a}, L_G(Σf) = {b}"));
    }
    if decompose(&s) != decompose(f).negate() {
        return fail(SUSPENSION, "components do not change sign".into());
    }
    Ok(())
}

/// `L_G(F) = Σ_i L_G(p_i F ι_i)` for a self-map `F` of a wedge.
pub fn wedge_additivity_on(w: &Wedge, big: &CellMap) -> LawResult {
    let total = homological_lefschetz(big);
    let mut sum = TomDieckElement::zero(big.lattice().clone());
    let mut parts = None::<crate::invariants::Decomposition>;
    for i in 0..w.summands.len() {
        let c = w.component(big, i).expect("wedge component");
        sum = sum.add(&homological_lefschetz(&c)).expect("same lattice");
        let d = decompose(&c);
        parts = Some(match parts {
            None => d,
            Some(p) => p.add(&d),
        });
    }
    if total != sum {
        return fail(
            WEDGE,
            format!("L_G of wedge map {total}, sum of components {sum}"),
        );
    }
    if let Some(p) = parts {
        if p != decompose(big) {
            return fail(WEDGE, "ℓ components are not additive".into());
        }
    }
    Ok(())
}

/// Wedge additivity on `X ∨ X` for the map with all four blocks `f`.
pub fn wedge_additivity(f: &CellMap) -> LawResult {
    let x = f.domain().clone();
    let w = wedge(&[x.clone(), x]).expect("same lattice");
    let big = w.assemble(|_, _| Some(f.clone())).expect("components fit");
    wedge_additivity_on(&w, &big)
}

/// `L_G(f) = L_G(f|_A) + L_G(f̂)` and the same for `ℓ`, for a subcomplex
/// `A` preserved by `f`.
pub fn cofibration_on(f: &CellMap, a: &Subcomplex) -> LawResult {
    let (res, quot) = match a.split_map(f) {
        Ok(p) => p,
        Err(e) => return fail(COFIBRATION, e.to_string()),
    };
    let whole = homological_lefschetz(f);
    let split = homological_lefschetz(&res)
        .add(&homological_lefschetz(&quot))
        .expect("same lattice");
    if whole != split {
        return fail(
            COFIBRATION,
            format!("L_G(f) = {whole}, L_G(f|A) + L_G(f^) = {split}"),
        );
    }
    if decompose(f) != decompose(&res).add(&decompose(&quot)) {
        return fail(COFIBRATION, "ℓ components are not additive".into());
    }
    Ok(())
}

/// Cofibration law for every stratum `X_{≥(H)}` and `X_{>(H)}`.
pub fn cofibration(f: &CellMap) -> LawResult {
    let c = f.domain();
    for class in 0..f.lattice().num_classes() {
        for strict in [false, true] {
            cofibration_on(f, &stratum(c, class, strict))?;
        }
    }
    Ok(())
}

/// `L_G(h∘f) = L_G(f∘h)` and `decompose` likewise, for `f: X → Y`,
/// `h: Y → X`.
pub fn commutativity(f: &CellMap, h: &CellMap) -> LawResult {
    let (Ok(fh), Ok(hf)) = (f.then(h), h.then(f)) else {
        return fail(COMMUTATIVITY, "maps are not composable both ways".into());
    };
    let (a, b) = (homological_lefschetz(&fh), homological_lefschetz(&hf));
    if a != b {
        return fail(COMMUTATIVITY, format!("{a} vs {b}"));
    }
    if decompose(&fh) != decompose(&hf) {
        return fail(COMMUTATIVITY, "ℓ components differ".into());
    }
    Ok(())
}

/// `ℓ(r_{vwv⁻¹}) = ℓ(r_w)` for all `v ∈ N(H)`.
pub fn conjugation_invariance(lattice: &Arc<Lattice>, h: SubgroupId, w: usize) -> LawResult {
    let grp = lattice.group();
    let base = match generator_map(lattice, h, w, 0) {
        Ok(f) => decompose(&f),
        Err(e) => return fail(CONJUGATION, e.to_string()),
    };
    for v in lattice.subgroup(h).normalizer().elements().iter().copied() {
        let c = grp.mul(grp.mul(v, w), grp.inv(v));
        let other = decompose(&generator_map(lattice, h, c, 0).expect("normalizer is closed"));
        if other != base {
            return fail(
                CONJUGATION,
                format!("conjugating by {} changes the components", grp.name(v)),
            );
        }
    }
    Ok(())
}

/// `r_w` on `(G/H)₊` has both Lefschetz numbers `1·(H)` and components
/// `[w]` at `(H)`, zero elsewhere.
pub fn generator_identity(lattice: &Arc<Lattice>, h: SubgroupId, w: usize) -> LawResult {
    let f = match generator_map(lattice, h, w, 0) {
        Ok(f) => f,
        Err(e) => return fail(GENERATOR, e.to_string()),
    };
    let class = lattice.class_of(h);
    let expected = TomDieckElement::single(lattice.clone(), class, 1);
    let hom = homological_lefschetz(&f);
    let (an, _) = analytical_lefschetz(&f);
    if hom != expected || an != expected {
        return fail(GENERATOR, format!("homological {hom}, analytical {an}"));
    }
    let grp = lattice.group();
    let a = lattice.conjugator(h);
    let w_rep = grp.mul(grp.mul(a, w), grp.inv(a));
    let pattern = identity_pattern(
        lattice,
        class,
        lattice.weyl(class).project(w_rep).expect("w ∈ N(H)"),
    );
    if decompose(&f).components != pattern {
        return fail(GENERATOR, "components differ from [w] at (H)".into());
    }
    Ok(())
}

/// `[w]` at `class`, zero in every other component.
pub fn identity_pattern(
    lattice: &Arc<Lattice>,
    class: usize,
    weyl_element: usize,
) -> Vec<ConjClassSum> {
    (0..lattice.num_classes())
        .map(|k| {
            if k == class {
                ConjClassSum::of_element(lattice.clone(), k, weyl_element, 1)
            } else {
                ConjClassSum::zero(lattice.clone(), k)
            }
        })
        .collect()
}

/// On a wedge of orbit 1-spheres, `L_G(F) = Σ_i L(F̄_i) · (H_i)`.
pub fn wedge_of_circles(w: &Wedge, big: &CellMap) -> LawResult {
    let lat = big.lattice();
    let mut expected = TomDieckElement::zero(lat.clone());
    for (i, s) in w.summands.iter().enumerate() {
        if s.num_cells() != 1 || s.cell(0).dim != 1 {
            return fail(CIRCLES, format!("summand {i} is not an orbit 1-sphere"));
        }
        let c = w.component(big, i).expect("wedge component");
        let l = ordinary_reduced_lefschetz(&quotient_map_data(&c));
        expected = expected
            .add(&TomDieckElement::single(lat.clone(), s.cell_class(0), l))
            .expect("same lattice");
    }
    let got = homological_lefschetz(big);
    if got != expected {
        return fail(CIRCLES, format!("L_G {got}, formula {expected}"));
    }
    Ok(())
}

/// Every single-map law for one self-map.
pub fn self_map_laws(f: &CellMap) -> Vec<(&'static str, LawResult)> {
    vec![
        (CHAIN_EQUALITY, chain_equality(f)),
        (COMPONENTS, component_compatibility(f)),
        (SUSPENSION, suspension_sign(f)),
        (WEDGE, wedge_additivity(f)),
        (COFIBRATION, cofibration(f)),
    ]
}

fn violations(f: &CellMap) -> Vec<LawViolation> {
    self_map_laws(f)
        .into_iter()
        .filter_map(|(_, r)| r.err())
        .collect()
}

/// All self-map law violations over a batch, in input order. Runs on the
/// rayon pool when the `parallel` feature is on.
pub fn check_batch(maps: &[CellMap]) -> Vec<LawViolation> {
    par::map(maps, violations).into_iter().flatten().collect()
}

/// [`check_batch`] on one thread.
pub fn check_batch_sequential(maps: &[CellMap]) -> Vec<LawViolation> {
    par::map_sequential(maps, violations)
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{orbit_sphere, solve_chain_maps, solve_maps, SolveOptions};
    use crate::group::{cyclic, symmetric3};

    #[test]
    fn laws_on_small_inventory() {
        let lat = Arc::new(Lattice::new(symmetric3()).unwrap());
        let a = Arc::new(orbit_sphere(&lat, lat.trivial_id(), 1));
        let b = Arc::new(orbit_sphere(&lat, SubgroupId(4), 1));
        let w = wedge(&[a.clone(), b.clone()]).unwrap();
        let maps = solve_chain_maps(&w.complex, 1, 30, 5);
        assert!(maps.len() > 10);
        assert!(check_batch(&maps).is_empty());
        assert_eq!(check_batch_sequential(&maps), check_batch(&maps));
        for f in &maps {
            wedge_additivity_on(&w, f).unwrap();
            wedge_of_circles(&w, f).unwrap();
        }
        let there = solve_maps(&a, &w.complex, &SolveOptions::new(1, 6, 1));
        let back = solve_maps(&w.complex, &a, &SolveOptions::new(1, 6, 2));
        for f in &there {
            for h in &back {
                commutativity(f, h).unwrap();
            }
        }
    }

    #[test]
    fn generator_laws() {
        let lat = Arc::new(Lattice::new(symmetric3()).unwrap());
        for (i, _) in lat.subgroups().iter().enumerate() {
            let h = SubgroupId(i);
            for w in lat.subgroup(h).normalizer().elements().iter().copied() {
                generator_identity(&lat, h, w).unwrap();
                conjugation_invariance(&lat, h, w).unwrap();
            }
        }
    }

    #[test]
    fn detects_a_wrong_pair() {
        let lat = Arc::new(Lattice::new(cyclic(2)).unwrap());
        let s = Arc::new(orbit_sphere(&lat, lat.trivial_id(), 1));
        let f = CellMap::identity(&s);
        let p = Arc::new(orbit_sphere(&lat, lat.whole_id(), 1));
        let g = CellMap::identity(&p);
        assert_eq!(commutativity(&f, &g).unwrap_err().law, COMMUTATIVITY);
    }
}
