//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use equilef::complexes::{
    generator_map, solve_chain_maps, validate_complex, validate_map, BlockMatrix, CellComplex,
    CellMap, CellSpec, RawEntry,
};
use equilef::group::{element_classes, small_groups, Lattice, SubgroupId};
use equilef::invariants::{analytical_lefschetz, decompose, homological_lefschetz};
use equilef::inventory::{
    cross_pairs, lattice, random_two_complex, solver_maps, standard_complexes,
};
use equilef::laws;
use equilef::orbit::MorphismSum;
use equilef::rings::TomDieckElement;
use equilef::traces::{hs_trace, hs_trace_commutes};
use equilef_oracle as oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, body: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = body();
    let took = start.elapsed();
    let within = limit.is_none_or(|l| took < l);
    let budget = limit.map_or(String::new(), |l| format!(" / {:.0} s", l.as_secs_f64()));
    verdict(
        v.ok && within,
        format!("{} [{:.2} s{budget}]", v.detail, took.as_secs_f64()),
    )
}

fn first_of(items: &[String]) -> String {
    items
        .first()
        .map_or(String::new(), |s| format!(", first: {s}"))
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn cli(args: &[&str]) -> equilef_cli::Outcome {
    equilef_cli::run(std::iter::once("equilef").chain(args.iter().copied()))
}

// ------------------------------------------------------------------ oracle glue

fn types_of(c: &CellComplex) -> Vec<Vec<usize>> {
    c.types()
        .iter()
        .map(|&h| c.lattice().subgroup(h).elements().to_vec())
        .collect()
}

fn entries_of(m: &BlockMatrix) -> Vec<oracle::Entry> {
    m.entries()
        .map(|(r, c, s)| (r, c, s.terms().collect()))
        .collect()
}

fn oracle_matrix(
    table: &[Vec<usize>],
    rows: &[Vec<usize>],
    cols: &[Vec<usize>],
    m: &BlockMatrix,
) -> oracle::Matrix {
    oracle::flatten(
        table,
        &oracle::TypedMatrix {
            row_types: rows,
            col_types: cols,
            entries: entries_of(m),
        },
    )
}

fn oracle_dd_zero(c: &CellComplex) -> bool {
    let t = c.lattice().group().table_rows();
    let ty = types_of(c);
    let d = oracle_matrix(&t, &ty, &ty, c.differential());
    oracle::is_zero(&oracle::mul(&d, &d))
}

fn oracle_chain_law(f: &CellMap) -> bool {
    let t = f.lattice().group().table_rows();
    let (tx, ty) = (types_of(f.domain()), types_of(f.codomain()));
    let dx = oracle_matrix(&t, &tx, &tx, f.domain().differential());
    let dy = oracle_matrix(&t, &ty, &ty, f.codomain().differential());
    let m = oracle_matrix(&t, &ty, &tx, f.blocks());
    oracle::mul(&m, &dx) == oracle::mul(&dy, &m)
}

// ------------------------------------------------------------------ criteria

fn criterion_1() -> Verdict {
    timed(Some(Duration::from_secs(1)), || {
        let map = data_dir().join("z2_circle_f0.map");
        let out = cli(&[
            "lefschetz",
            map.to_str().unwrap(),
            "--method",
            "both",
            "--index",
        ]);
        let lines: Vec<&str> = out.stdout.lines().collect();
        let expected_l = "-1*(H1_0) + 1*(H2_0)";
        let expected_i = "i_G = -1*(H1_0) + 2*(H2_0)";
        let ok = out.code == 0
            && lines.len() >= 2
            && lines[0] == expected_l
            && lines[1] == expected_l
            && lines.last() == Some(&expected_i);
        verdict(
            ok,
            format!(
                "L_G hom = an = {}, {}",
                lines.first().unwrap_or(&"?"),
                lines.last().unwrap_or(&"?")
            ),
        )
    })
}

const GENERATOR_GROUPS: [&str; 6] = ["C2", "C3", "C4", "C2xC2", "S3", "D4"];

fn criterion_2() -> Verdict {
    timed(Some(Duration::from_secs(10)), || {
        let mut cases = 0;
        let mut failures = Vec::new();
        for name in GENERATOR_GROUPS {
            let lat = lattice(name);
            for h in 0..lat.subgroups().len() {
                let h = SubgroupId(h);
                let class = lat.class_of(h);
                for &w in lat.subgroup(h).normalizer().elements() {
                    cases += 1;
                    let f = generator_map(&lat, h, w, 0).expect("w normalizes H");
                    let one = TomDieckElement::single(lat.clone(), class, 1);
                    let hom = homological_lefschetz(&f);
                    let (an, _) = analytical_lefschetz(&f);
                    let d = decompose(&f);
                    let a = lat.conjugator(h);
                    let w_rep = lat.group().mul(lat.group().mul(a, w), lat.group().inv(a));
                    let wbar = lat.weyl(class).project(w_rep).expect("normalizer element");
                    let pattern = laws::identity_pattern(&lat, class, wbar);
                    if hom != one || an != one || d.components != pattern {
                        failures.push(format!("{name} H#{} w={w}", h.0));
                    }
                }
            }
        }
        verdict(
            failures.is_empty(),
            format!(
                "{cases} generator cases, {} failures{}",
                failures.len(),
                first_of(&failures)
            ),
        )
    })
}

struct Inventory {
    complexes: usize,
    maps: Vec<CellMap>,
}

fn inventory() -> Inventory {
    let cs = standard_complexes();
    let maps = solver_maps(&cs, 30, 2024);
    Inventory {
        complexes: cs.len(),
        maps,
    }
}

fn criterion_3(inv: &Inventory) -> Verdict {
    timed(Some(Duration::from_secs(60)), || {
        let invalid = inv
            .maps
            .iter()
            .filter(|f| validate_map(f).is_err() || !oracle_chain_law(f))
            .count();
        let mut failures = 0;
        for f in &inv.maps {
            if laws::chain_equality(f).is_err() || laws::component_compatibility(f).is_err() {
                failures += 1;
            }
        }
        let ok = inv.maps.len() >= 500 && inv.complexes >= 20 && invalid == 0 && failures == 0;
        verdict(
            ok,
            format!(
                "{} maps over {} complexes, {invalid} invalid, {failures} law failures",
                inv.maps.len(),
                inv.complexes
            ),
        )
    })
}

fn criterion_4(inv: &Inventory) -> Verdict {
    timed(None, || {
        let mut failures: Vec<String> = Vec::new();
        let mut checks = 0usize;
        for f in &inv.maps {
            for (law, r) in [
                (laws::SUSPENSION, laws::suspension_sign(f)),
                (laws::WEDGE, laws::wedge_additivity(f)),
                (laws::COFIBRATION, laws::cofibration(f)),
            ] {
                checks += 1;
                if let Err(e) = r {
                    failures.push(format!("{law}: {}", e.detail));
                }
            }
        }
        let pairs = cross_pairs(&standard_complexes(), 3, 77);
        for (f, h) in &pairs {
            checks += 1;
            if let Err(e) = laws::commutativity(f, h) {
                failures.push(e.detail);
            }
        }
        let mut conj = 0;
        for name in GENERATOR_GROUPS {
            let lat = lattice(name);
            for h in 0..lat.subgroups().len() {
                let h = SubgroupId(h);
                for &w in lat.subgroup(h).normalizer().elements() {
                    conj += 1;
                    if let Err(e) = laws::conjugation_invariance(&lat, h, w) {
                        failures.push(e.detail);
                    }
                }
            }
        }
        checks += conj;
        verdict(
            failures.is_empty() && pairs.len() >= 100,
            format!(
                "{checks} checks ({} commutativity pairs, {conj} conjugation cases), {} failures{}",
                pairs.len(),
                failures.len(),
                first_of(&failures)
            ),
        )
    })
}

fn random_sum(
    lat: &Lattice,
    rng: &mut ChaCha8Rng,
    src: SubgroupId,
    dst: SubgroupId,
) -> MorphismSum {
    let mut s = MorphismSum::zero(src, dst);
    let homs = lat.morphism_set(src, dst);
    if homs.is_empty() {
        return s;
    }
    for _ in 0..rng.random_range(0..=3) {
        let m = homs[rng.random_range(0..homs.len())];
        s.add_term(lat, m.rep, rng.random_range(-3..=3));
    }
    s
}

fn random_types(lat: &Lattice, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<SubgroupId> {
    let n = rng.random_range(1..=max_len);
    (0..n)
        .map(|_| lat.class_rep(rng.random_range(0..lat.num_classes())))
        .collect()
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
            let s = random_sum(lat, rng, tc, tr);
            if !s.is_zero() {
                m.set(r, c, s);
            }
        }
    }
    m
}

fn criterion_5() -> Verdict {
    timed(Some(Duration::from_secs(10)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let lats = [lattice("S3"), lattice("D4")];
        let (mut comm_fail, mut add_fail, mut nontrivial) = (0, 0, 0);
        for i in 0..200 {
            let lat = &lats[i % 2];
            let x = random_types(lat, &mut rng, 4);
            let y = random_types(lat, &mut rng, 4);
            let a = random_block(lat, &mut rng, &y, &x);
            let b = random_block(lat, &mut rng, &x, &y);
            let (ab, ba) = hs_trace_commutes(lat, &a, &b).expect("composable");
            if !ab.is_zero() {
                nontrivial += 1;
            }
            if ab != ba {
                comm_fail += 1;
            }
        }
        for i in 0..100 {
            let lat = &lats[i % 2];
            let x = random_types(lat, &mut rng, 3);
            let y = random_types(lat, &mut rng, 3);
            let a = random_block(lat, &mut rng, &x, &x);
            let c = random_block(lat, &mut rng, &y, &y);
            let off = random_block(lat, &mut rng, &x, &y);
            let all: Vec<SubgroupId> = x.iter().chain(&y).copied().collect();
            let mut m = BlockMatrix::zero(all.clone(), all);
            m.paste(&a, 0, 0);
            m.paste(&c, x.len(), x.len());
            m.paste(&off, 0, x.len());
            let whole = hs_trace(lat, &m).unwrap();
            let parts = hs_trace(lat, &a)
                .unwrap()
                .add(&hs_trace(lat, &c).unwrap())
                .unwrap();
            if whole != parts {
                add_fail += 1;
            }
        }
        verdict(
            comm_fail == 0 && add_fail == 0,
            format!(
                "200 commuting pairs ({nontrivial} with nonzero trace), {comm_fail} failures; 100 block-triangular, {add_fail} failures"
            ),
        )
    })
}

fn rebuild_complex(c: &CellComplex, extra: Option<RawEntry>) -> CellComplex {
    let specs = c
        .cells()
        .iter()
        .map(|cell| CellSpec::new(cell.id.clone(), cell.dim, cell.cell_type))
        .collect();
    let mut entries: Vec<RawEntry> = c
        .differential()
        .entries()
        .map(|(to, from, s)| RawEntry {
            from,
            to,
            terms: s.terms().collect(),
        })
        .collect();
    entries.extend(extra);
    CellComplex::new(c.lattice().clone(), specs, &entries).expect("structure unchanged")
}

fn rebuild_map(f: &CellMap, extra: Option<RawEntry>) -> CellMap {
    let mut entries: Vec<RawEntry> = f
        .blocks()
        .entries()
        .map(|(to, from, s)| RawEntry {
            from,
            to,
            terms: s.terms().collect(),
        })
        .collect();
    entries.extend(extra);
    CellMap::new(f.domain().clone(), f.codomain().clone(), &entries).expect("structure unchanged")
}

#[derive(Default)]
struct MutationTally {
    breaking: usize,
    harmless: usize,
    false_accepts: usize,
    false_rejects: usize,
}

fn mutation_corpus() -> Vec<(Arc<CellComplex>, CellMap)> {
    let groups = [
        "C2", "C3", "C4", "C2xC2", "S3", "C6", "D4", "Q8", "D5", "A4",
    ];
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 50 {
        seed += 1;
        let lat = lattice(groups[seed as usize % groups.len()]);
        let mid = lat.class_rep((seed as usize / groups.len()) % lat.num_classes());
        let c = Arc::new(random_two_complex(&lat, mid, seed));
        if c.differential().is_zero() {
            continue;
        }
        let maps = solve_chain_maps(&c, 1, 4, seed);
        let f = maps
            .iter()
            .rev()
            .find(|m| !m.blocks().is_zero())
            .cloned()
            .unwrap_or_else(|| CellMap::identity(&c));
        out.push((c, f));
    }
    out
}

fn criterion_6() -> Verdict {
    timed(None, || {
        let mut tally = MutationTally::default();
        let corpus = mutation_corpus();
        let mut base_invalid = 0;
        for (c, f) in &corpus {
            if validate_complex(c).is_err()
                || !oracle_dd_zero(c)
                || validate_map(f).is_err()
                || !oracle_chain_law(f)
            {
                base_invalid += 1;
                continue;
            }
            let lat = c.lattice();
            let cells = c.cells();
            for (from, s) in cells.iter().enumerate() {
                for (to, t) in cells.iter().enumerate() {
                    for delta in [-1, 1] {
                        if s.dim == t.dim + 1 {
                            for m in lat.morphism_set(s.cell_type, t.cell_type) {
                                let extra = RawEntry {
                                    from,
                                    to,
                                    terms: vec![(m.rep, delta)],
                                };
                                let mutated = rebuild_complex(c, Some(extra));
                                let breaks = !oracle_dd_zero(&mutated);
                                tally.record(breaks, validate_complex(&mutated).is_ok());
                            }
                        }
                        if s.dim == t.dim {
                            for m in lat.morphism_set(s.cell_type, t.cell_type) {
                                let extra = RawEntry {
                                    from,
                                    to,
                                    terms: vec![(m.rep, delta)],
                                };
                                let mutated = rebuild_map(f, Some(extra));
                                let breaks = !oracle_chain_law(&mutated);
                                tally.record(breaks, validate_map(&mutated).is_ok());
                            }
                        }
                    }
                }
            }
        }
        verdict(
            base_invalid == 0 && tally.false_accepts == 0 && tally.false_rejects == 0 && tally.breaking > 0,
            format!(
                "{} complexes with maps, {} breaking and {} harmless mutations, {} false accepts, {} false rejects",
                corpus.len(),
                tally.breaking,
                tally.harmless,
                tally.false_accepts,
                tally.false_rejects
            ),
        )
    })
}

impl MutationTally {
    fn record(&mut self, breaks: bool, accepted: bool) {
        match (breaks, accepted) {
            (true, true) => self.false_accepts += 1,
            (true, false) => self.breaking += 1,
            (false, true) => self.harmless += 1,
            (false, false) => self.false_rejects += 1,
        }
    }
}

fn criterion_7() -> Verdict {
    timed(None, || {
        let mut mismatches = Vec::new();
        let mut hom_sets = 0;
        let groups = small_groups();
        for (name, g) in &groups {
            let lat = Lattice::new(g.clone()).expect("small group");
            let t = g.table_rows();
            let ours: std::collections::BTreeSet<Vec<usize>> = lat
                .subgroups()
                .iter()
                .map(|s| s.elements().to_vec())
                .collect();
            if ours != oracle::subgroups(&t) || ours.len() != lat.subgroups().len() {
                mismatches.push(format!("{name}: subgroups"));
            }
            let ec = element_classes(lat.group());
            if ec.classes != oracle::conjugacy_classes(&t) {
                mismatches.push(format!("{name}: element classes"));
            }
            for k in 0..lat.subgroups().len() {
                for h in 0..lat.subgroups().len() {
                    hom_sets += 1;
                    let (ks, hs) = (lat.subgroup(SubgroupId(k)), lat.subgroup(SubgroupId(h)));
                    let n = lat.morphism_set(SubgroupId(k), SubgroupId(h)).len();
                    if n != oracle::fixed_cosets(&t, ks.elements(), hs.elements()) {
                        mismatches.push(format!("{name}: |Hom(G/{k}, G/{h})|"));
                    }
                }
            }
        }
        verdict(
            mismatches.is_empty(),
            format!(
                "{} groups, {hom_sets} morphism sets, {} mismatches{}",
                groups.len(),
                mismatches.len(),
                first_of(&mismatches)
            ),
        )
    })
}

fn main() -> ExitCode {
    let inv = inventory();
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(&inv),
        criterion_4(&inv),
        criterion_5(),
        criterion_6(),
        criterion_7(),
    ];
    let mut all = true;
    for (i, v) in results.iter().enumerate() {
        println!(
            "criterion {}: {} {}",
            i + 1,
            if v.ok { "PASS" } else { "FAIL" },
            v.detail
        );
        all &= v.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
