use std::path::Path;
use std::sync::{Arc, OnceLock};

use equilef::complexes::{
    fixed_relative_data, solve_chain_maps, BlockMatrix, CellMap, GroupRingMatrix,
};
use equilef::group::{Lattice, SubgroupId};
use equilef::invariants::{decompose, homological_lefschetz};
use equilef::inventory::{lattice, random_two_complex, standard_complexes, NamedComplex};
use equilef::io::{self, Document, Resolver};
use equilef::orbit::MorphismSum;
use equilef::rings::TomDieckElement;
use equilef::traces::{hs_trace, hs_trace_commutes};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GROUPS: [&str; 6] = ["C2", "C4", "S3", "D4", "A4", "C2xC2xC2"];

fn lattices() -> &'static Vec<Arc<Lattice>> {
    static L: OnceLock<Vec<Arc<Lattice>>> = OnceLock::new();
    L.get_or_init(|| GROUPS.iter().map(|g| lattice(g)).collect())
}

fn inventory() -> &'static Vec<NamedComplex> {
    static C: OnceLock<Vec<NamedComplex>> = OnceLock::new();
    C.get_or_init(standard_complexes)
}

fn element(lat: &Arc<Lattice>, coeffs: &[i64]) -> TomDieckElement {
    TomDieckElement::from_coeffs(
        lat.clone(),
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (i % lat.num_classes(), c)),
    )
}

fn random_block(
    lat: &Lattice,
    rng: &mut ChaCha8Rng,
    rows: &[SubgroupId],
    cols: &[SubgroupId],
) -> BlockMatrix {
    let mut m = BlockMatrix::zero(rows.to_vec(), cols.to_vec());
    for (r, &tr) in rows.iter().enumerate() {
        for (c, &tc) in cols.iter().enumerate() {
            let homs = lat.morphism_set(tc, tr);
            if homs.is_empty() {
                continue;
            }
            let mut s = MorphismSum::zero(tc, tr);
            for _ in 0..rng.random_range(0..3) {
                s.add_term(
                    lat,
                    homs[rng.random_range(0..homs.len())].rep,
                    rng.random_range(-3..=3),
                );
            }
            if !s.is_zero() {
                m.set(r, c, s);
            }
        }
    }
    m
}

fn random_types(lat: &Lattice, rng: &mut ChaCha8Rng) -> Vec<SubgroupId> {
    let n = rng.random_range(1..5);
    (0..n)
        .map(|_| lat.class_rep(rng.random_range(0..lat.num_classes())))
        .collect()
}

fn same_matrix(a: &GroupRingMatrix, b: &GroupRingMatrix) -> bool {
    a.nrows() == b.nrows()
        && a.ncols() == b.ncols()
        && (0..a.nrows()).all(|r| (0..a.ncols()).all(|c| a.get(r, c) == b.get(r, c)))
}

fn self_maps(seed: u64) -> (usize, Vec<CellMap>) {
    let i = seed as usize % inventory().len();
    (i, solve_chain_maps(&inventory()[i].complex, 2, 6, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tom_dieck_text_round_trips(g in 0..GROUPS.len(), coeffs in prop::collection::vec(-5i64..=5, 0..12)) {
        let lat = &lattices()[g];
        let x = element(lat, &coeffs);
        let text = x.to_string();
        prop_assert_eq!(io::parse_tom_dieck(lat, &text).unwrap(), x);
    }

    #[test]
    fn projections_are_additive(
        g in 0..GROUPS.len(),
        a in prop::collection::vec(-5i64..=5, 0..12),
        b in prop::collection::vec(-5i64..=5, 0..12),
    ) {
        let lat = &lattices()[g];
        let (x, y) = (element(lat, &a), element(lat, &b));
        let s = x.add(&y).unwrap();
        for class in 0..lat.num_classes() {
            prop_assert_eq!(s.project(class), x.project(class) + y.project(class));
            prop_assert_eq!(s.downward_augment(class), x.downward_augment(class) + y.downward_augment(class));
            let above: i64 = (0..lat.num_classes())
                .filter(|&k| lat.class_leq(class, k))
                .map(|k| s.project(k))
                .sum();
            prop_assert_eq!(s.downward_augment(class), above);
        }
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn trace_is_commutative(g in 0..GROUPS.len(), seed in any::<u64>()) {
        let lat = &lattices()[g];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_types(lat, &mut rng);
        let y = random_types(lat, &mut rng);
        let a = random_block(lat, &mut rng, &y, &x);
        let b = random_block(lat, &mut rng, &x, &y);
        let (ab, ba) = hs_trace_commutes(lat, &a, &b).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn trace_is_additive(g in 0..GROUPS.len(), seed in any::<u64>()) {
        let lat = &lattices()[g];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_types(lat, &mut rng);
        let a = random_block(lat, &mut rng, &x, &x);
        let b = random_block(lat, &mut rng, &x, &x);
        let sum = hs_trace(lat, &a).unwrap().add(&hs_trace(lat, &b).unwrap()).unwrap();
        prop_assert_eq!(hs_trace(lat, &a.add(&b)).unwrap(), sum);
    }

    #[test]
    fn fixed_relative_data_is_functorial(seed in any::<u64>()) {
        let (i, maps) = self_maps(seed);
        let c = &inventory()[i].complex;
        let lat = c.lattice();
        for (f, g) in maps.iter().zip(maps.iter().rev()) {
            let fg = f.then(g).unwrap();
            for class in 0..lat.num_classes() {
                let (df, dg) = (fixed_relative_data(f, class).unwrap(), fixed_relative_data(g, class).unwrap());
                let dfg = fixed_relative_data(&fg, class).unwrap();
                for n in 0..dfg.len() {
                    prop_assert!(same_matrix(&dfg[n], &df[n].then(&dg[n])), "{} class {} degree {}", inventory()[i].name, class, n);
                }
            }
        }
    }

    #[test]
    fn invariants_are_additive(seed in any::<u64>()) {
        let (_, maps) = self_maps(seed);
        for (f, g) in maps.iter().zip(maps.iter().skip(1)) {
            let s = f.add(g).unwrap();
            let hom = homological_lefschetz(f).add(&homological_lefschetz(g)).unwrap();
            prop_assert_eq!(homological_lefschetz(&s), hom);
            prop_assert_eq!(decompose(&s), decompose(f).add(&decompose(g)));
        }
    }

    #[test]
    fn documents_round_trip(g in 0..GROUPS.len(), seed in 0u64..1000) {
        let lat = &lattices()[g];
        let mid = lat.class_rep(seed as usize % lat.num_classes());
        let c = Arc::new(random_two_complex(lat, mid, seed));
        let text = io::emit(&Document::Complex(io::complex_doc(&c)));
        let doc = io::parse(&text, "generated").unwrap();
        prop_assert_eq!(io::emit(&doc), text.clone());
        let Document::Complex(cd) = doc else { panic!("kind") };
        let back = Resolver::default().complex(&cd, Path::new("")).unwrap();
        prop_assert_eq!(&*back, &*c);

        for f in solve_chain_maps(&c, 1, 3, seed) {
            let text = io::emit(&Document::Map(io::map_doc(&f)));
            let Document::Map(md) = io::parse(&text, "generated").unwrap() else { panic!("kind") };
            prop_assert_eq!(Resolver::default().map(&md, Path::new("")).unwrap(), f);
        }
    }
}
