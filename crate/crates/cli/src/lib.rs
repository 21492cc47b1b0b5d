//! Command-line front end. [`run`] is the whole program minus process I/O,
//! so tests can drive it directly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use equilef::complexes::{solve_chain_maps, validate_complex, validate_map, CellComplex, CellMap};
use equilef::group::Lattice;
use equilef::invariants::{
    analytical_lefschetz, decompose, fixed_orbit_report, homological_lefschetz,
};
use equilef::io::{self, group_cap_from_env, Document, IoError, Resolver};
use equilef::laws::{self, LawResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_LAW_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "equilef",
    version,
    about = "Equivariant Lefschetz invariants of cellular self-maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Hom,
    An,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subgroup classes with their Weyl groups
    Info { group: PathBuf },
    /// Check a group, complex, map or suite file
    Validate { file: PathBuf },
    /// Equivariant Lefschetz number of a self-map
    Lefschetz {
        map: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        /// Also print the per-class stratum table and the unreduced index
        #[arg(long)]
        index: bool,
    },
    /// Components of a self-map in the universal linear Lefschetz group
    Decompose { map: PathBuf },
    /// Orbit types of fixed orbits forced by the Lefschetz number
    Report { map: PathBuf },
    /// Write random chain self-maps of a complex
    Solve {
        complex: PathBuf,
        #[arg(long, default_value_t = 1)]
        bound: i64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check every applicable law on the given maps
    Axioms {
        #[arg(required = true)]
        maps: Vec<PathBuf>,
    },
    /// Re-emit a document in canonical form
    Fmt { file: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn io_failure(e: IoError) -> Outcome {
    let code = match e {
        IoError::Read { .. } => EXIT_USAGE,
        _ => EXIT_INVALID,
    };
    Outcome::fail(code, format!("error: {e}\n"))
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let mut resolver = Resolver::new(group_cap_from_env());
    match cli.command {
        Command::Info { group } => info(&mut resolver, &group),
        Command::Validate { file } => validate(&mut resolver, &file),
        Command::Lefschetz { map, method, index } => lefschetz(&mut resolver, &map, method, index),
        Command::Decompose { map } => with_map(&mut resolver, &map, |f| {
            Outcome::ok(decompose(f).to_string())
        }),
        Command::Report { map } => with_map(&mut resolver, &map, |f| {
            Outcome::ok(fixed_orbit_report(f).to_string())
        }),
        Command::Solve {
            complex,
            bound,
            count,
            seed,
            out,
        } => solve(&mut resolver, &complex, bound, count, seed, &out),
        Command::Axioms { maps } => axioms(&mut resolver, &maps),
        Command::Fmt { file } => match io::read_document(&file) {
            Ok(d) => Outcome::ok(io::emit(&io::canonicalize(&d))),
            Err(e) => io_failure(e),
        },
    }
}

fn info(resolver: &mut Resolver, path: &Path) -> Outcome {
    let lat = match resolver.load_group(path) {
        Ok(l) => l,
        Err(e) => return io_failure(e),
    };
    Outcome::ok(render_info(&lat))
}

pub fn render_info(lat: &Lattice) -> String {
    let g = lat.group();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "order {}, {} subgroups in {} classes",
        g.order(),
        lat.subgroups().len(),
        lat.num_classes()
    );
    for class in 0..lat.num_classes() {
        let c = lat.class(class);
        let rep = lat.subgroup(lat.class_rep(class));
        let w = lat.weyl(class);
        let co = lat.weyl_classes(class);
        let co_text: Vec<String> = (0..co.len())
            .map(|k| format!("[{}] x{}", co.label(k), co.classes[k].len()))
            .collect();
        let _ = writeln!(
            s,
            "({}): order {}, {} conjugate(s), representative {:?}; W order {}; Co(W): {}",
            lat.label(class),
            rep.order(),
            c.members.len(),
            rep.elements(),
            w.order(),
            co_text.join(", ")
        );
    }
    s
}

fn describe_complex(c: &CellComplex) -> String {
    format!("{} cells, dimension count {}", c.num_cells(), c.dim_count())
}

fn validate(resolver: &mut Resolver, path: &Path) -> Outcome {
    let doc = match io::read_document(path) {
        Ok(d) => d,
        Err(e) => return io_failure(e),
    };
    let base = path.parent().unwrap_or(Path::new(""));
    let result: Result<String, Outcome> = match &doc {
        Document::Group(g) => resolver
            .group(g)
            .map(|l| format!("valid group of order {}", l.group().order()))
            .map_err(io_failure),
        Document::Complex(c) => resolver
            .complex(c, base)
            .map_err(io_failure)
            .and_then(|cx| {
                validate_complex(&cx)
                    .map(|_| format!("valid complex: {}", describe_complex(&cx)))
                    .map_err(|e| Outcome::fail(EXIT_INVALID, format!("invalid complex: {e}\n")))
            }),
        Document::Map(_) | Document::Suite(_) => resolver
            .load_maps(path)
            .map_err(io_failure)
            .and_then(|maps| {
                for (i, f) in maps.iter().enumerate() {
                    check_map(f)
                        .map_err(|e| Outcome::fail(EXIT_INVALID, format!("map {i}: {e}")))?;
                }
                Ok(format!("valid: {} map(s)", maps.len()))
            }),
    };
    match result {
        Ok(msg) => Outcome::ok(format!("{msg}\n")),
        Err(o) => o,
    }
}

/// Validates both complexes and the map; the message names the first
/// violation.
fn check_map(f: &CellMap) -> Result<(), String> {
    validate_complex(f.domain()).map_err(|e| format!("invalid domain: {e}\n"))?;
    if !f.is_endo() {
        validate_complex(f.codomain()).map_err(|e| format!("invalid codomain: {e}\n"))?;
    }
    validate_map(f).map_err(|e| format!("invalid map: {e}\n"))
}

fn load_valid_map(resolver: &mut Resolver, path: &Path) -> Result<CellMap, Outcome> {
    let maps = resolver.load_maps(path).map_err(io_failure)?;
    let [f] = <[CellMap; 1]>::try_from(maps)
        .map_err(|_| Outcome::fail(EXIT_USAGE, "error: expected a single map\n".into()))?;
    check_map(&f).map_err(|e| Outcome::fail(EXIT_INVALID, e))?;
    Ok(f)
}

fn with_map(
    resolver: &mut Resolver,
    path: &Path,
    body: impl FnOnce(&CellMap) -> Outcome,
) -> Outcome {
    match load_valid_map(resolver, path) {
        Ok(f) if !f.is_endo() => Outcome::fail(EXIT_USAGE, "error: not a self-map\n".into()),
        Ok(f) => body(&f),
        Err(o) => o,
    }
}

fn lefschetz(resolver: &mut Resolver, path: &Path, method: Method, index: bool) -> Outcome {
    with_map(resolver, path, |f| {
        let mut s = String::new();
        let hom = homological_lefschetz(f);
        let (an, table) = analytical_lefschetz(f);
        if matches!(method, Method::Hom | Method::Both) {
            let _ = writeln!(s, "{hom}");
        }
        if matches!(method, Method::An | Method::Both) {
            let _ = writeln!(s, "{an}");
        }
        if index {
            s.push_str(&table.render(f.lattice()));
            let _ = writeln!(s, "i_G = {}", table.unreduced_index(f.lattice()));
        }
        if method == Method::Both && hom != an {
            return Outcome {
                code: EXIT_LAW_FAILED,
                stdout: s,
                stderr: "error: homological and analytical values differ\n".into(),
            };
        }
        Outcome::ok(s)
    })
}

fn solve(
    resolver: &mut Resolver,
    path: &Path,
    bound: i64,
    count: usize,
    seed: u64,
    out: &Path,
) -> Outcome {
    if bound < 0 {
        return Outcome::fail(EXIT_USAGE, "error: --bound must be non-negative\n".into());
    }
    let c = match resolver.load_complex(path) {
        Ok(c) => c,
        Err(e) => return io_failure(e),
    };
    if let Err(e) = validate_complex(&c) {
        return Outcome::fail(EXIT_INVALID, format!("invalid complex: {e}\n"));
    }
    let maps = solve_chain_maps(&c, bound, count, seed);
    if let Err(e) = fs::create_dir_all(out) {
        return Outcome::fail(EXIT_USAGE, format!("error: {}: {e}\n", out.display()));
    }
    let mut s = String::new();
    for (i, f) in maps.iter().enumerate() {
        let file = out.join(format!("map_{i:04}.map"));
        let text = io::emit(&Document::Map(io::map_doc(f)));
        if let Err(e) = fs::write(&file, text) {
            return Outcome::fail(EXIT_USAGE, format!("error: {}: {e}\n", file.display()));
        }
        let _ = writeln!(s, "{}", file.display());
    }
    let _ = writeln!(s, "{} map(s) written", maps.len());
    Outcome::ok(s)
}

/// A single-cell complex with a single-term self-map: a generator `r_w`.
fn generator_of(f: &CellMap) -> Option<(equilef::group::SubgroupId, usize)> {
    let c = f.domain();
    if !f.is_endo() || c.num_cells() != 1 || c.cell(0).dim != 0 {
        return None;
    }
    let s = f.blocks().get(0, 0)?;
    let mut terms = s.terms();
    match (terms.next(), terms.next()) {
        (Some((w, 1)), None) => Some((c.cell(0).cell_type, w)),
        _ => None,
    }
}

fn axioms(resolver: &mut Resolver, paths: &[PathBuf]) -> Outcome {
    let mut maps: Vec<(String, CellMap)> = Vec::new();
    for p in paths {
        let loaded = match resolver.load_maps(p) {
            Ok(m) => m,
            Err(e) => return io_failure(e),
        };
        let many = loaded.len() > 1;
        for (i, f) in loaded.into_iter().enumerate() {
            let name = if many {
                format!("{}#{i}", p.display())
            } else {
                p.display().to_string()
            };
            if let Err(e) = check_map(&f) {
                return Outcome::fail(EXIT_INVALID, format!("{name}: {e}"));
            }
            maps.push((name, f));
        }
    }
    let mut s = String::new();
    let mut failed = false;
    let mut record = |s: &mut String, name: &str, law: &str, r: LawResult| match r {
        Ok(()) => {
            let _ = writeln!(s, "{name}: {law} pass");
        }
        Err(v) => {
            failed = true;
            let _ = writeln!(s, "{name}: {law} FAIL ({})", v.detail);
        }
    };
    for (name, f) in &maps {
        if !f.is_endo() {
            continue;
        }
        for (law, r) in laws::self_map_laws(f) {
            record(&mut s, name, law, r);
        }
        if let Some((h, w)) = generator_of(f) {
            let lat: &Arc<Lattice> = f.lattice();
            record(
                &mut s,
                name,
                laws::GENERATOR,
                laws::generator_identity(lat, h, w),
            );
            record(
                &mut s,
                name,
                laws::CONJUGATION,
                laws::conjugation_invariance(lat, h, w),
            );
        }
    }
    for (i, (a, f)) in maps.iter().enumerate() {
        for (b, h) in maps.iter().skip(i + 1) {
            if f.codomain() == h.domain() && h.codomain() == f.domain() {
                record(
                    &mut s,
                    &format!("{a} + {b}"),
                    laws::COMMUTATIVITY,
                    laws::commutativity(f, h),
                );
            }
        }
    }
    Outcome {
        code: if failed { EXIT_LAW_FAILED } else { EXIT_OK },
        stdout: s,
        stderr: String::new(),
    }
}
