//! Integer solutions of the linear constraints on chain-map and differential
//! coefficients, used to generate test inventories.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_integer::Integer;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BlockMatrix, Cell, CellComplex, CellMap, ComplexError};
use crate::group::{Lattice, SubgroupId};
use crate::orbit::MorphismSum;

/// A homogeneous integer linear system `A x = 0`, reduced by fraction-free
/// Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    nvars: usize,
    rows: Vec<BTreeMap<usize, i128>>,
}

/// Arithmetic overflowed during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

/// The solution lattice of a [`LinearSystem`] in parametrized form:
/// `denom_p · x_p + Σ_f c_{p,f} x_f = 0` for each pivot `p`.
type PivotRow = (usize, i128, Vec<(usize, i128)>);

#[derive(Clone, Debug)]
pub struct Kernel {
    nvars: usize,
    free: Vec<usize>,
    pivots: Vec<PivotRow>,
}

fn normalize(row: &mut BTreeMap<usize, i128>) {
    let g = row.values().fold(0i128, |g, &v| g.gcd(&v));
    if g > 1 {
        for v in row.values_mut() {
            *v /= g;
        }
    }
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Adds `Σ coeff · x_var = 0`; repeated variables are summed.
    pub fn add_equation(&mut self, terms: impl IntoIterator<Item = (usize, i128)>) {
        let mut row = BTreeMap::new();
        for (v, c) in terms {
            assert!(v < self.nvars, "variable out of range");
            *row.entry(v).or_insert(0) += c;
        }
        row.retain(|_, c| *c != 0);
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn solve(&self) -> Result<Kernel, Overflow> {
        let mut rows = self.rows.clone();
        let mut pivot_rows: Vec<(usize, BTreeMap<usize, i128>)> = Vec::new();
        while let Some(mut row) = rows.pop() {
            // Reduce against existing pivots.
            for (p, prow) in &pivot_rows {
                if let Some(&a) = row.get(p) {
                    eliminate(&mut row, prow, *p, a)?;
                }
            }
            let Some((&p, _)) = row.iter().next() else {
                continue;
            };
            normalize(&mut row);
            if row[&p] < 0 {
                for v in row.values_mut() {
                    *v = -*v;
                }
            }
            // Clear the new pivot column from the earlier pivot rows.
            for (_, prow) in pivot_rows.iter_mut() {
                if let Some(&a) = prow.get(&p) {
                    eliminate(prow, &row, p, a)?;
                }
            }
            pivot_rows.push((p, row));
        }
        let pivot_set: HashSet<usize> = pivot_rows.iter().map(|(p, _)| *p).collect();
        let free: Vec<usize> = (0..self.nvars).filter(|v| !pivot_set.contains(v)).collect();
        let free_pos: HashMap<usize, usize> =
            free.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut pivots: Vec<_> = pivot_rows
            .into_iter()
            .map(|(p, row)| {
                let denom = row[&p];
                let rest = row
                    .iter()
                    .filter(|(&v, _)| v != p)
                    .map(|(v, &c)| (free_pos[v], c))
                    .collect();
                (p, denom, rest)
            })
            .collect();
        pivots.sort_by_key(|(p, _, _)| *p);
        Ok(Kernel {
            nvars: self.nvars,
            free,
            pivots,
        })
    }
}

/// `row ← pivot_coeff · row − a · prow`, clearing column `p`.
fn eliminate(
    row: &mut BTreeMap<usize, i128>,
    prow: &BTreeMap<usize, i128>,
    p: usize,
    a: i128,
) -> Result<(), Overflow> {
    let b = prow[&p];
    let g = a.gcd(&b);
    let (mul_row, mul_p) = (b / g, a / g);
    for v in row.values_mut() {
        *v = v.checked_mul(mul_row).ok_or(Overflow)?;
    }
    for (&v, &c) in prow {
        let e = row.entry(v).or_insert(0);
        *e = e
            .checked_sub(c.checked_mul(mul_p).ok_or(Overflow)?)
            .ok_or(Overflow)?;
    }
    row.retain(|_, c| *c != 0);
    normalize(row);
    Ok(())
}

impl Kernel {
    pub fn num_free(&self) -> usize {
        self.free.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Extends values of the free variables to a full integral solution, if
    /// one exists.
    pub fn complete(&self, free_values: &[i64]) -> Option<Vec<i64>> {
        let mut x = vec![0i64; self.nvars];
        for (&v, &val) in self.free.iter().zip(free_values) {
            x[v] = val;
        }
        for (p, denom, rest) in &self.pivots {
            let s: i128 = rest.iter().map(|&(f, c)| c * free_values[f] as i128).sum();
            if s % denom != 0 {
                return None;
            }
            x[*p] = i64::try_from(-s / denom).ok()?;
        }
        Some(x)
    }

    /// Whether a full assignment satisfies every pivot equation.
    pub fn contains(&self, x: &[i64]) -> bool {
        self.pivots.iter().all(|(p, denom, rest)| {
            let s: i128 = rest.iter().map(|&(f, c)| c * x[self.free[f]] as i128).sum();
            denom * x[*p] as i128 + s == 0
        })
    }

    /// Up to `count` distinct solutions with every coordinate in
    /// `[-bound, bound]`, always starting with the supplied `seeds` that
    /// qualify. Enumerates exhaustively when the free grid has at most
    /// `exhaustive_limit` points, otherwise samples.
    pub fn sample(
        &self,
        bound: i64,
        count: usize,
        seeds: &[Vec<i64>],
        exhaustive_limit: u64,
        rng: &mut ChaCha8Rng,
    ) -> Vec<Vec<i64>> {
        let in_box = |x: &Vec<i64>| x.iter().all(|v| v.abs() <= bound);
        let mut seen = HashSet::new();
        let mut out: Vec<Vec<i64>> = Vec::new();
        for s in seeds {
            if out.len() < count && in_box(s) && self.contains(s) && seen.insert(s.clone()) {
                out.push(s.clone());
            }
        }
        let width = (2 * bound + 1) as u64;
        let grid = (0..self.free.len()).try_fold(1u64, |acc, _| acc.checked_mul(width));
        match grid {
            Some(total) if total <= exhaustive_limit => {
                let mut found = Vec::new();
                let mut free = vec![-bound; self.free.len()];
                loop {
                    if let Some(x) = self.complete(&free).filter(in_box) {
                        if !seen.contains(&x) {
                            found.push(x);
                        }
                    }
                    // Odometer step.
                    let mut i = 0;
                    while i < free.len() && free[i] == bound {
                        free[i] = -bound;
                        i += 1;
                    }
                    if i == free.len() {
                        break;
                    }
                    free[i] += 1;
                }
                if found.len() + out.len() > count {
                    found.shuffle(rng);
                }
                for x in found {
                    if out.len() >= count {
                        break;
                    }
                    seen.insert(x.clone());
                    out.push(x);
                }
            }
            _ => self.sample_random(bound, count, &mut out, &mut seen, rng),
        }
        out
    }

    fn sample_random(
        &self,
        bound: i64,
        count: usize,
        out: &mut Vec<Vec<i64>>,
        seen: &mut HashSet<Vec<i64>>,
        rng: &mut ChaCha8Rng,
    ) {
        let nfree = self.free.len();
        if nfree == 0 || bound == 0 {
            return;
        }
        let attempts = 40 * count + 400;
        for _ in 0..attempts {
            if out.len() >= count {
                break;
            }
            let candidate = if !out.is_empty() && rng.random_bool(0.4) {
                // Sums of solutions are solutions.
                let a = &out[rng.random_range(0..out.len())];
                let b = &out[rng.random_range(0..out.len())];
                let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                Some(a.iter().zip(b).map(|(x, y)| x + sign * y).collect())
            } else {
                let mut free = vec![0i64; nfree];
                let k = rng.random_range(1..=nfree.min(3));
                for _ in 0..k {
                    let v = rng.random_range(1..=bound);
                    free[rng.random_range(0..nfree)] = if rng.random_bool(0.5) { v } else { -v };
                }
                self.complete(&free)
            };
            if let Some(x) = candidate {
                if x.iter().all(|v| v.abs() <= bound) && seen.insert(x.clone()) {
                    out.push(x);
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub bound: i64,
    pub count: usize,
    pub seed: u64,
    /// Largest free-variable grid enumerated exhaustively.
    pub exhaustive_limit: u64,
}

impl SolveOptions {
    pub fn new(bound: i64, count: usize, seed: u64) -> Self {
        Self {
            bound,
            count,
            seed,
            exhaustive_limit: 20_000,
        }
    }
}

/// One unknown coefficient: the morphism `rep` in block entry `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Var {
    row: usize,
    col: usize,
    rep: usize,
}

struct MorphismCache<'a> {
    lattice: &'a Lattice,
    sets: HashMap<(SubgroupId, SubgroupId), Vec<usize>>,
}

impl<'a> MorphismCache<'a> {
    fn new(lattice: &'a Lattice) -> Self {
        Self {
            lattice,
            sets: HashMap::new(),
        }
    }

    fn reps(&mut self, k: SubgroupId, h: SubgroupId) -> &[usize] {
        let lat = self.lattice;
        self.sets
            .entry((k, h))
            .or_insert_with(|| lat.morphism_set(k, h).into_iter().map(|m| m.rep).collect())
    }
}

/// Index of equation coordinates `(row, col, rep)`.
#[derive(Default)]
struct Coords(HashMap<(usize, usize, usize), usize>);

impl Coords {
    fn index(&mut self, key: (usize, usize, usize)) -> usize {
        let n = self.0.len();
        *self.0.entry(key).or_insert(n)
    }
}

fn single(source: SubgroupId, target: SubgroupId, rep: usize) -> MorphismSum {
    let mut s = MorphismSum::zero(source, target);
    s.add_canonical(rep, 1);
    s
}

fn row_lists(m: &BlockMatrix) -> Vec<Vec<(usize, &MorphismSum)>> {
    let mut rows = vec![Vec::new(); m.nrows()];
    for (r, c, s) in m.entries() {
        rows[r].push((c, s));
    }
    rows
}

/// Variables and chain-law equations for maps `x → y`.
fn chain_map_system(x: &CellComplex, y: &CellComplex) -> (Vec<Var>, LinearSystem) {
    let lat = x.lattice();
    let mut cache = MorphismCache::new(lat);
    let mut vars = Vec::new();
    for (col, sc) in x.cells().iter().enumerate() {
        for &row in y.cells_in_dim(sc.dim) {
            let tc: &Cell = y.cell(row);
            for &rep in cache.reps(sc.cell_type, tc.cell_type) {
                vars.push(Var { row, col, rep });
            }
        }
    }
    let dx_rows = row_lists(x.differential());
    let mut coords = Coords::default();
    let mut eqs: Vec<Vec<(usize, i128)>> = Vec::new();
    let mut push = |coords: &mut Coords, key, v: usize, c: i64| {
        let e = coords.index(key);
        if e == eqs.len() {
            eqs.push(Vec::new());
        }
        eqs[e].push((v, c as i128));
    };
    for (vi, v) in vars.iter().enumerate() {
        let src = x.cell(v.col).cell_type;
        let tgt = y.cell(v.row).cell_type;
        let phi = single(src, tgt, v.rep);
        // d_x then f: (row, σ') += d_x(col, σ') ; φ
        for &(sigma2, d) in &dx_rows[v.col] {
            let s = lat.sum_compose(d, &phi).expect("typed");
            for (psi, c) in s.terms() {
                push(&mut coords, (v.row, sigma2, psi), vi, c);
            }
        }
        // f then d_y: (ρ', col) -= φ ; d_y(ρ', row)
        for (&rho, d) in y.differential().column(v.row) {
            let s = lat.sum_compose(&phi, d).expect("typed");
            for (psi, c) in s.terms() {
                push(&mut coords, (rho, v.col, psi), vi, -c);
            }
        }
    }
    let mut sys = LinearSystem::new(vars.len());
    for e in eqs {
        sys.add_equation(e);
    }
    (vars, sys)
}

fn assemble(x: &Arc<CellComplex>, y: &Arc<CellComplex>, vars: &[Var], values: &[i64]) -> CellMap {
    let mut blocks = BlockMatrix::zero(y.types(), x.types());
    let mut sums: BTreeMap<(usize, usize), MorphismSum> = BTreeMap::new();
    for (v, &c) in vars.iter().zip(values) {
        if c != 0 {
            sums.entry((v.row, v.col))
                .or_insert_with(|| {
                    MorphismSum::zero(x.cell(v.col).cell_type, y.cell(v.row).cell_type)
                })
                .add_canonical(v.rep, c);
        }
    }
    for ((r, c), s) in sums {
        blocks.set(r, c, s);
    }
    CellMap::from_blocks(x.clone(), y.clone(), blocks).expect("same-dimension blocks")
}

fn coordinates(vars: &[Var], f: &CellMap) -> Vec<i64> {
    vars.iter()
        .map(|v| f.blocks().get(v.row, v.col).map_or(0, |s| s.coeff(v.rep)))
        .collect()
}

/// Distinct chain maps `x → y` with coefficients in `[-bound, bound]`.
/// The zero map comes first; for self-maps the identity follows when
/// `bound ≥ 1`. Deterministic in the seed.
pub fn solve_maps(x: &Arc<CellComplex>, y: &Arc<CellComplex>, opts: &SolveOptions) -> Vec<CellMap> {
    if opts.count == 0 || !x.lattice().same_as(y.lattice()) {
        return Vec::new();
    }
    let (vars, sys) = chain_map_system(x, y);
    let mut seeds = vec![vec![0i64; vars.len()]];
    if x == y {
        seeds.push(coordinates(&vars, &CellMap::identity(x)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let solutions = match sys.solve() {
        Ok(kernel) => kernel.sample(
            opts.bound,
            opts.count,
            &seeds,
            opts.exhaustive_limit,
            &mut rng,
        ),
        Err(Overflow) => seeds
            .into_iter()
            .filter(|s| s.iter().all(|v| v.abs() <= opts.bound))
            .take(opts.count)
            .collect(),
    };
    solutions.iter().map(|s| assemble(x, y, &vars, s)).collect()
}

/// Self-maps of `c`; see [`solve_maps`].
pub fn solve_chain_maps(c: &Arc<CellComplex>, bound: i64, count: usize, seed: u64) -> Vec<CellMap> {
    solve_maps(c, c, &SolveOptions::new(bound, count, seed))
}

/// Cells to place in a random complex: `(dim, type)` pairs.
#[derive(Clone, Debug)]
pub struct CellPlan {
    pub cells: Vec<(usize, SubgroupId)>,
    /// Coefficient bound for differential entries.
    pub bound: i64,
}

/// A random valid complex on the planned cells. Differentials are filled
/// from degree 1 upward; each `d_n` is a random solution of the linear
/// system `d_{n-1} ∘ d_n = 0`, nonzero whenever one exists in the box.
pub fn random_complex(
    lattice: &Arc<Lattice>,
    plan: &CellPlan,
    seed: u64,
) -> Result<CellComplex, ComplexError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..plan.cells.len()).collect();
    order.sort_by_key(|&i| plan.cells[i].0);
    let mut counters: BTreeMap<usize, usize> = BTreeMap::new();
    let cells: Vec<Cell> = order
        .iter()
        .map(|&i| {
            let (dim, t) = plan.cells[i];
            let k = counters.entry(dim).or_insert(0);
            *k += 1;
            let rep = lattice.class_rep(lattice.class_of(t));
            Cell {
                id: format!("c{dim}_{}", *k - 1),
                dim,
                cell_type: rep,
                given_type: rep,
            }
        })
        .collect();
    let types: Vec<SubgroupId> = cells.iter().map(|c| c.cell_type).collect();
    let mut d = BlockMatrix::zero(types.clone(), types);
    let top = cells.iter().map(|c| c.dim).max().unwrap_or(0);
    let mut cache = MorphismCache::new(lattice);
    for n in 1..=top {
        let by_dim =
            |m: usize| -> Vec<usize> { (0..cells.len()).filter(|&i| cells[i].dim == m).collect() };
        let (upper, lower) = (by_dim(n), by_dim(n - 1));
        let mut vars = Vec::new();
        for &col in &upper {
            for &row in &lower {
                for &rep in cache.reps(cells[col].cell_type, cells[row].cell_type) {
                    vars.push(Var { row, col, rep });
                }
            }
        }
        let mut sys = LinearSystem::new(vars.len());
        let mut coords = Coords::default();
        let mut eqs: Vec<Vec<(usize, i128)>> = Vec::new();
        for (vi, v) in vars.iter().enumerate() {
            let phi = single(cells[v.col].cell_type, cells[v.row].cell_type, v.rep);
            for (&rho, dd) in d.column(v.row) {
                let s = lattice.sum_compose(&phi, dd).expect("typed");
                for (psi, c) in s.terms() {
                    let e = coords.index((rho, v.col, psi));
                    if e == eqs.len() {
                        eqs.push(Vec::new());
                    }
                    eqs[e].push((vi, c as i128));
                }
            }
        }
        for e in eqs {
            sys.add_equation(e);
        }
        let zero = vec![0i64; vars.len()];
        let sols = match sys.solve() {
            Ok(k) => k.sample(plan.bound, 8, &[zero], 0, &mut rng),
            Err(Overflow) => Vec::new(),
        };
        let nonzero: Vec<&Vec<i64>> = sols.iter().filter(|s| s.iter().any(|&v| v != 0)).collect();
        if let Some(&pick) = nonzero.choose(&mut rng) {
            for (v, &c) in vars.iter().zip(pick) {
                if c != 0 {
                    d.add_to(
                        v.row,
                        v.col,
                        &single(cells[v.col].cell_type, cells[v.row].cell_type, v.rep).scaled(c),
                    );
                }
            }
        }
    }
    Ok(CellComplex::from_parts(lattice.clone(), cells, d))
}
