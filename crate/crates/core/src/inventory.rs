//! A fixed inventory of complexes and solver maps over small groups, shared
//! by the property tests and the benches.

use std::sync::Arc;

use crate::complexes::{
    orbit_point, orbit_sphere, random_complex, solve_chain_maps, solve_maps, suspend, wedge,
    CellComplex, CellMap, CellPlan, CellSpec, RawEntry, SolveOptions,
};
use crate::group::{named_group, Lattice, SubgroupId};
use crate::par;

pub fn lattice(name: &str) -> Arc<Lattice> {
    Arc::new(Lattice::new(named_group(name).expect("catalog group")).expect("small group"))
}

/// Representatives of the subgroup classes of the given order, in class order.
pub fn reps_of_order(lat: &Lattice, order: usize) -> Vec<SubgroupId> {
    (0..lat.num_classes())
        .map(|c| lat.class_rep(c))
        .filter(|&h| lat.subgroup(h).order() == order)
        .collect()
}

/// The reduced ℤ₂ reflection circle pointed at a fixed point: one fixed
/// 0-cell `v`, one free 1-cell `a` with `d(a) = [e]·v`.
pub fn reflection_circle(lat: &Arc<Lattice>) -> CellComplex {
    CellComplex::new(
        lat.clone(),
        vec![
            CellSpec::new("v", 0, lat.whole_id()),
            CellSpec::new("a", 1, lat.trivial_id()),
        ],
        &[RawEntry {
            from: 1,
            to: 0,
            terms: vec![(lat.group().identity(), 1)],
        }],
    )
    .expect("well formed")
}

/// A fixed point, a free 1-cell and a free 2-cell attached by `[e] − [g]`.
pub fn free_disk(lat: &Arc<Lattice>, g: usize) -> CellComplex {
    let e = lat.group().identity();
    CellComplex::new(
        lat.clone(),
        vec![
            CellSpec::new("v", 0, lat.whole_id()),
            CellSpec::new("a", 1, lat.trivial_id()),
            CellSpec::new("D", 2, lat.trivial_id()),
        ],
        &[
            RawEntry {
                from: 1,
                to: 0,
                terms: vec![(e, 1)],
            },
            RawEntry {
                from: 2,
                to: 1,
                terms: vec![(e, 1), (g, -1)],
            },
        ],
    )
    .expect("well formed")
}

/// Wedge of orbit 1-spheres, one per class representative listed.
pub fn circle_wedge(lat: &Arc<Lattice>, types: &[SubgroupId]) -> CellComplex {
    let parts: Vec<Arc<CellComplex>> = types
        .iter()
        .map(|&h| Arc::new(orbit_sphere(lat, h, 1)))
        .collect();
    wedge(&parts)
        .expect("same lattice")
        .complex
        .as_ref()
        .clone()
}

/// A random 2-dimensional complex: two 0-cells (one fixed), two 1-cells and
/// a free 2-cell.
pub fn random_two_complex(lat: &Arc<Lattice>, mid: SubgroupId, seed: u64) -> CellComplex {
    let plan = CellPlan {
        cells: vec![
            (0, lat.whole_id()),
            (0, mid),
            (1, lat.trivial_id()),
            (1, lat.trivial_id()),
            (2, lat.trivial_id()),
        ],
        bound: 1,
    };
    random_complex(lat, &plan, seed).expect("plan is well formed")
}

#[derive(Clone, Debug)]
pub struct NamedComplex {
    pub name: String,
    pub complex: Arc<CellComplex>,
}

fn named(name: impl Into<String>, c: CellComplex) -> NamedComplex {
    NamedComplex {
        name: name.into(),
        complex: Arc::new(c),
    }
}

/// The standard inventory: 24 complexes over groups of order at most 12,
/// mixing orbit points, wedges, suspensions and 2-dimensional complexes
/// with nonzero differentials.
pub fn standard_complexes() -> Vec<NamedComplex> {
    let mut out = Vec::new();
    let c2 = lattice("C2");
    out.push(named("C2 reflection circle", reflection_circle(&c2)));
    out.push(named(
        "C2 suspended circle",
        suspend(&reflection_circle(&c2)),
    ));
    out.push(named("C2 disk", free_disk(&c2, 1)));

    let c3 = lattice("C3");
    out.push(named("C3 disk", free_disk(&c3, 1)));
    out.push(named(
        "C3 free circles",
        circle_wedge(&c3, &[c3.trivial_id(), c3.trivial_id()]),
    ));

    let c4 = lattice("C4");
    let c4_mid = reps_of_order(&c4, 2)[0];
    out.push(named("C4 disk", free_disk(&c4, 1)));
    out.push(named("C4 random", random_two_complex(&c4, c4_mid, 1)));

    let v4 = lattice("C2xC2");
    let v4_mid = reps_of_order(&v4, 2);
    out.push(named(
        "C2xC2 circles",
        circle_wedge(&v4, &[v4.trivial_id(), v4_mid[0], v4_mid[2]]),
    ));
    out.push(named("C2xC2 random", random_two_complex(&v4, v4_mid[1], 2)));

    let s3 = lattice("S3");
    let s3_c2 = reps_of_order(&s3, 2)[0];
    let s3_c3 = reps_of_order(&s3, 3)[0];
    out.push(named(
        "S3 circles",
        circle_wedge(&s3, &[s3.trivial_id(), s3_c2, s3_c3]),
    ));
    out.push(named("S3 random", random_two_complex(&s3, s3_c2, 3)));
    out.push(named(
        "S3 random suspended",
        suspend(&random_two_complex(&s3, s3_c3, 4)),
    ));
    out.push(named("S3 disk", free_disk(&s3, 3)));
    let pts: Vec<Arc<CellComplex>> = vec![
        Arc::new(orbit_point(&s3, s3_c2)),
        Arc::new(orbit_point(&s3, s3_c3)),
        Arc::new(reflection_circle(&s3)),
    ];
    out.push(named(
        "S3 points and circle",
        wedge(&pts).unwrap().complex.as_ref().clone(),
    ));

    let d4 = lattice("D4");
    let d4_c2 = reps_of_order(&d4, 2);
    out.push(named("D4 random", random_two_complex(&d4, d4_c2[1], 5)));
    out.push(named(
        "D4 circles",
        circle_wedge(&d4, &[d4_c2[0], reps_of_order(&d4, 4)[0]]),
    ));

    let c6 = lattice("C6");
    out.push(named(
        "C6 random",
        random_two_complex(&c6, reps_of_order(&c6, 3)[0], 6),
    ));

    let q8 = lattice("Q8");
    out.push(named("Q8 disk", free_disk(&q8, 2)));

    let d5 = lattice("D5");
    out.push(named(
        "D5 random",
        random_two_complex(&d5, reps_of_order(&d5, 2)[0], 7),
    ));

    let a4 = lattice("A4");
    out.push(named(
        "A4 random",
        random_two_complex(&a4, reps_of_order(&a4, 3)[0], 8),
    ));

    let dic3 = lattice("Dic3");
    out.push(named(
        "Dic3 random",
        random_two_complex(&dic3, reps_of_order(&dic3, 4)[0], 9),
    ));

    let d6 = lattice("D6");
    let d6_rand = Arc::new(random_two_complex(&d6, reps_of_order(&d6, 2)[0], 10));
    let d6_circle = Arc::new(orbit_sphere(&d6, reps_of_order(&d6, 6)[0], 1));
    out.push(named(
        "D6 random wedge circle",
        wedge(&[d6_rand, d6_circle])
            .unwrap()
            .complex
            .as_ref()
            .clone(),
    ));

    let c12 = lattice("C12");
    out.push(named(
        "C12 random",
        random_two_complex(&c12, reps_of_order(&c12, 4)[0], 11),
    ));

    let c222 = lattice("C2xC2xC2");
    out.push(named(
        "C2xC2xC2 random",
        random_two_complex(&c222, reps_of_order(&c222, 2)[3], 12),
    ));
    out
}

/// `per_complex` solver self-maps of each complex (coefficient bound 2),
/// solved in parallel; seeds are derived from `seed` and the index.
pub fn solver_maps(complexes: &[NamedComplex], per_complex: usize, seed: u64) -> Vec<CellMap> {
    let indexed: Vec<(usize, &NamedComplex)> = complexes.iter().enumerate().collect();
    par::map(&indexed, |(i, c)| {
        solve_chain_maps(&c.complex, 2, per_complex, seed.wrapping_add(*i as u64))
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Pairs `(f: X → Y, h: Y → X)` between every two inventory complexes over
/// the same group, `per_direction²` pairs for each.
pub fn cross_pairs(
    complexes: &[NamedComplex],
    per_direction: usize,
    seed: u64,
) -> Vec<(CellMap, CellMap)> {
    let mut out = Vec::new();
    for (i, x) in complexes.iter().enumerate() {
        for (j, y) in complexes.iter().enumerate().skip(i + 1) {
            if !x.complex.lattice().same_as(y.complex.lattice()) {
                continue;
            }
            let s = seed.wrapping_add((i * 64 + j) as u64);
            let there = solve_maps(
                &x.complex,
                &y.complex,
                &SolveOptions::new(1, per_direction, s),
            );
            let back = solve_maps(
                &y.complex,
                &x.complex,
                &SolveOptions::new(1, per_direction, s + 1),
            );
            for f in &there {
                for h in &back {
                    out.push((f.clone(), h.clone()));
                }
            }
        }
    }
    out
}
