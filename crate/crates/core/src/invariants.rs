//! Invariants of a cellular self-map. `L_G` is computed two ways, from
//! chain traces and from quotient strata; `ℓ_H` refines it per class.

use std::fmt;

use crate::complexes::{
    fixed_relative_data, quotient_map_data, restrict_map, CellMap, IntegerChainData,
};
use crate::group::Lattice;
use crate::par;
use crate::rings::{ConjClassSum, TomDieckElement};
use crate::traces::{group_ring_trace, hs_trace, integer_trace};

fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Reduced `L_G(f) = Σ_n (−1)ⁿ ε(tr C_n(f))`. Add `1·(G)` for the unreduced
/// value.
pub fn homological_lefschetz(f: &CellMap) -> TomDieckElement {
    let lat = f.lattice();
    let mut out = TomDieckElement::zero(lat.clone());
    for n in 0..f.domain().dim_count() {
        let t = hs_trace(lat, &f.degree_block(n)).expect("self-map blocks are square");
        out = out.add(&t.scale(sign(n))).expect("same lattice");
    }
    out
}

/// `Σ_n (−1)ⁿ tr(m_n)` of an integer chain self-map.
pub fn ordinary_reduced_lefschetz(m: &IntegerChainData) -> i64 {
    (0..m.dim_count())
        .map(|n| sign(n) * integer_trace(&m.degree_block(n)).expect("square"))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexRow {
    pub class: usize,
    /// Reduced Lefschetz number of the quotient map on `X_{≥(H)}/G`.
    pub l_geq: i64,
    /// Same on `X_{>(H)}/G`.
    pub l_gt: i64,
    /// Unreduced fixed-orbit index: `l_geq − l_gt`, plus 1 at `(G)`.
    pub i_h: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTable {
    pub rows: Vec<IndexRow>,
}

impl IndexTable {
    /// The unreduced index `i_G = Σ i_(H) · (H)`.
    pub fn unreduced_index(&self, lattice: &std::sync::Arc<Lattice>) -> TomDieckElement {
        TomDieckElement::from_coeffs(lattice.clone(), self.rows.iter().map(|r| (r.class, r.i_h)))
    }

    pub fn render(&self, lattice: &Lattice) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&format!(
                "({}): L>= {} L> {} i {}\n",
                lattice.label(r.class),
                r.l_geq,
                r.l_gt,
                r.i_h
            ));
        }
        s
    }
}

fn stratum_lefschetz(f: &CellMap, class: usize, strict: bool) -> i64 {
    let g = restrict_map(f, class, strict).expect("self-maps preserve strata");
    ordinary_reduced_lefschetz(&quotient_map_data(&g))
}

/// `Σ_(H) (L(f̄_{≥(H)}) − L(f̄_{>(H)})) · (H)` with the per-class table.
pub fn analytical_lefschetz(f: &CellMap) -> (TomDieckElement, IndexTable) {
    let lat = f.lattice();
    let whole = lat.whole_class();
    let rows = par::map_range(lat.num_classes(), |class| {
        let l_geq = stratum_lefschetz(f, class, false);
        let l_gt = stratum_lefschetz(f, class, true);
        IndexRow {
            class,
            l_geq,
            l_gt,
            i_h: l_geq - l_gt + i64::from(class == whole),
        }
    });
    let value = TomDieckElement::from_coeffs(
        lat.clone(),
        rows.iter().map(|r| (r.class, r.l_geq - r.l_gt)),
    );
    (value, IndexTable { rows })
}

/// `ℓ_H(f) = Σ_n (−1)ⁿ tr C_n(f^H, f^{>H})` in `ℤCo(W(H))`.
pub fn ell_component(f: &CellMap, class: usize) -> ConjClassSum {
    let mut out = ConjClassSum::zero(f.lattice().clone(), class);
    let data = fixed_relative_data(f, class).expect("self-map");
    for (n, m) in data.iter().enumerate() {
        let t = group_ring_trace(m).expect("square");
        out = out.add(&t.scale(sign(n))).expect("same Weyl group");
    }
    out
}

/// All components `ℓ_H(f)`, indexed by subgroup class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<ConjClassSum>,
}

impl Decomposition {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ConjClassSum::is_zero)
    }

    pub fn add(&self, other: &Decomposition) -> Decomposition {
        Decomposition {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b).expect("same Weyl group"))
                .collect(),
        }
    }

    pub fn negate(&self) -> Decomposition {
        Decomposition {
            components: self.components.iter().map(ConjClassSum::negate).collect(),
        }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "({}): {}", c.lattice().label(c.subgroup_class()), c)?;
        }
        Ok(())
    }
}

pub fn decompose(f: &CellMap) -> Decomposition {
    Decomposition {
        components: par::map_range(f.lattice().num_classes(), |class| ell_component(f, class)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub class: usize,
    pub coefficient: i64,
    pub conclusion: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedOrbitReport {
    pub lefschetz: TomDieckElement,
    pub witnesses: Vec<Witness>,
}

impl fmt::Display for FixedOrbitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "L_G = {}", self.lefschetz)?;
        if self.witnesses.is_empty() {
            writeln!(f, "no nonzero components; no fixed orbits are forced")?;
        }
        for w in &self.witnesses {
            writeln!(
                f,
                "({}) coefficient {}: {}",
                self.lefschetz.lattice().label(w.class),
                w.coefficient,
                w.conclusion
            )?;
        }
        Ok(())
    }
}

/// Lists the classes with a nonzero coefficient in `L_G(f)` and what each
/// one guarantees about fixed orbits. The conclusions are stated, not
/// checked.
pub fn fixed_orbit_report(f: &CellMap) -> FixedOrbitReport {
    let lefschetz = homological_lefschetz(f);
    let lat = f.lattice();
    let witnesses = lefschetz
        .terms()
        .map(|(class, coefficient)| {
            let label = lat.label(class);
            let conclusion = if class == lat.whole_class() {
                "provided the base point is isolated in the G-fixed set, f fixes a G-fixed point other than the base point".to_string()
            } else {
                format!("f fixes some non-base-point orbit whose orbit type is at least ({label})")
            };
            Witness {
                class,
                coefficient,
                conclusion,
            }
        })
        .collect();
    FixedOrbitReport {
        lefschetz,
        witnesses,
    }
}
