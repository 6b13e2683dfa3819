//! `ramsey` subcommands. [`run`] parses arguments and returns the exit code;
//! output goes to the writers passed in so tests can capture it.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramsey_core::checker::{self, Embedding, Verdict};
use ramsey_core::constructions::{build_witness, ConstructionError};
use ramsey_core::formulas;
use ramsey_core::oracle::{suggested_cap, OracleStatus, SearchConfig, DEFAULT_BUDGET};
use ramsey_core::{Color, Coloring, Parameters};

use crate::io::{self, OracleCheck, TableRow};
use crate::parallel::{parallel_oracle_ramsey, ParallelConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ARRIVES: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEFECT: i32 = 3;
pub const EXIT_UNWRITABLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "ramsey",
    version,
    about = "Multicolor star and matching Ramsey numbers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Instance {
    /// Number of colors.
    #[arg(short = 't', allow_negative_numbers = true)]
    pub t: i64,
    /// Star sizes, comma separated: t of them, or t-1 with -s.
    #[arg(
        short = 'm',
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub stars: Vec<i64>,
    /// Matching size; the matching misses color t.
    #[arg(short = 's', allow_negative_numbers = true)]
    pub matching: Option<i64>,
}

impl Instance {
    fn params(&self) -> Result<Parameters, String> {
        Parameters::normalize(self.t, &self.stars, self.matching).map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Node budget shared by every order searched.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Symmetry-pruning depth; 0 disables it. Defaults to full pruning.
    #[arg(long)]
    pub symmetry_depth: Option<usize>,
}

impl SearchArgs {
    fn config(&self, verbose: bool) -> ParallelConfig {
        let jobs = self
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        let search = SearchConfig::default()
            .with_budget(self.budget)
            .with_symmetry(self.symmetry_depth.unwrap_or(usize::MAX));
        ParallelConfig {
            verbose,
            ..ParallelConfig::new(search, jobs)
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the closed-form value R.
    Compute {
        #[command(flatten)]
        instance: Instance,
        /// Also print the derivation trace.
        #[arg(long)]
        trace: bool,
    },
    /// Build a certified coloring of K_{R-1} that avoids every target.
    Witness {
        #[command(flatten)]
        instance: Instance,
        /// Certificate path; without it the certificate goes to stdout and
        /// the summary to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DOT rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a certificate against an instance's targets.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        instance: Instance,
    },
    /// Exhaustive search for R.
    Search {
        #[command(flatten)]
        instance: Instance,
        /// Largest order to search; defaults to one past the formula value.
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        verbose: bool,
    },
    /// CSV of formula values over a grid of sorted instances.
    Table {
        /// Number of colors.
        #[arg(short = 't')]
        t: i64,
        #[arg(long, default_value_t = 1)]
        m_min: i64,
        #[arg(long)]
        m_max: i64,
        /// With --s-max, sweep t-1 stars plus a matching of size s_min..=s_max.
        #[arg(long, requires = "s_max")]
        s_min: Option<i64>,
        #[arg(long)]
        s_max: Option<i64>,
        /// Run the oracle on every row and fill the agreement column.
        #[arg(long)]
        oracle_check: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// A uniformly random coloring certificate.
    Random {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 't')]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Uniform coloring of `K_n` from a seeded ChaCha stream.
pub fn random_coloring(n: usize, t: usize, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_coloring_with(n, t, &mut rng)
}

pub fn random_coloring_with<R: Rng>(n: usize, t: usize, rng: &mut R) -> Coloring {
    Coloring::from_fn(n, t, |_, _| rng.gen_range(1..=t) as Color).expect("valid palette")
}

pub fn format_embedding(e: &Embedding) -> String {
    match e {
        Embedding::Star(s) => {
            let leaves: Vec<String> = s.leaves.iter().map(usize::to_string).collect();
            format!("star:center={}:leaves={}", s.center, leaves.join(","))
        }
        Embedding::Matching(edges) => {
            let edges: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            format!("matching:{}", edges.join(","))
        }
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! say {
    ($w:expr, $($arg:tt)*) => {{
        let _ = writeln!($w, $($arg)*);
    }};
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut io = Io { out, err };
    match cli.command {
        Command::Compute { instance, trace } => compute(&mut io, &instance, trace),
        Command::Witness { instance, out, dot } => {
            witness(&mut io, &instance, out.as_deref(), dot.as_deref())
        }
        Command::Verify { file, instance } => verify(&mut io, &file, &instance),
        Command::Search {
            instance,
            cap,
            search,
            verbose,
        } => search_cmd(&mut io, &instance, cap, &search, verbose),
        Command::Table {
            t,
            m_min,
            m_max,
            s_min,
            s_max,
            oracle_check,
            search,
        } => table(
            &mut io,
            t,
            (m_min, m_max),
            s_min,
            s_max,
            oracle_check,
            &search,
        ),
        Command::Random { n, t, seed, out } => random(&mut io, n, t, seed, out.as_deref()),
    }
}

fn invalid(io: &mut Io, msg: impl std::fmt::Display) -> i32 {
    say!(io.err, "error: {msg}");
    EXIT_INVALID
}

fn compute(io: &mut Io, instance: &Instance, trace: bool) -> i32 {
    let params = match instance.params() {
        Ok(p) => p,
        Err(e) => return invalid(io, e),
    };
    match formulas::ramsey_value(&params) {
        Ok((value, tr)) => {
            say!(io.out, "{value}");
            if trace {
                let _ = io.out.write_all(io::write_trace(&tr).as_bytes());
            }
            EXIT_OK
        }
        Err(e) => invalid(io, e),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn witness(io: &mut Io, instance: &Instance, out: Option<&Path>, dot: Option<&Path>) -> i32 {
    let params = match instance.params() {
        Ok(p) => p,
        Err(e) => return invalid(io, e),
    };
    let (_, trace) = match formulas::ramsey_value(&params) {
        Ok(v) => v,
        Err(e) => return invalid(io, e),
    };
    let w = match build_witness(&params) {
        Ok(w) => w,
        Err(ConstructionError::Formula(e)) => return invalid(io, e),
        Err(e) => {
            say!(io.err, "construction defect: {e}");
            return EXIT_DEFECT;
        }
    };
    let user = match params.denormalize(&w.coloring) {
        Ok(c) => c,
        Err(e) => {
            say!(io.err, "construction defect: {e:?}");
            return EXIT_DEFECT;
        }
    };
    if !checker::coloring_arrives(&user, &params.user_targets()).avoids() {
        say!(io.err, "construction defect: witness arrives in user order");
        return EXIT_DEFECT;
    }
    let cert = io::write_coloring(&user);
    let rule = trace.final_rule().map_or("-", |r| r.label());
    let summary = format!(
        "R = {}\nrule = {rule}\nconstruction = {}\nn = {}",
        w.value,
        w.construction,
        user.n()
    );
    if let Some(path) = dot {
        if let Err(e) = write_file(path, &io::export_dot(&user)) {
            say!(io.err, "error: {e}");
            return EXIT_UNWRITABLE;
        }
    }
    match out {
        Some(path) => {
            if let Err(e) = write_file(path, &cert) {
                say!(io.err, "error: {e}");
                return EXIT_UNWRITABLE;
            }
            say!(io.out, "{summary}");
        }
        None => {
            let _ = io.out.write_all(cert.as_bytes());
            say!(io.err, "{summary}");
        }
    }
    EXIT_OK
}

fn verify(io: &mut Io, file: &Path, instance: &Instance) -> i32 {
    let params = match instance.params() {
        Ok(p) => p,
        Err(e) => return invalid(io, e),
    };
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return invalid(io, format!("cannot read {}: {e}", file.display())),
    };
    let coloring = match io::read_coloring(&text) {
        Ok(c) => c,
        Err(e) => return invalid(io, e),
    };
    if coloring.t() != params.t() {
        return invalid(
            io,
            format!(
                "certificate has t={} but the instance has t={}",
                coloring.t(),
                params.t()
            ),
        );
    }
    match checker::coloring_arrives(&coloring, &params.user_targets()) {
        Verdict::Avoids => {
            say!(io.out, "AVOIDS");
            EXIT_OK
        }
        Verdict::Arrives { target, embedding } => {
            say!(
                io.out,
                "ARRIVES target={} embedding={}",
                target + 1,
                format_embedding(&embedding)
            );
            EXIT_ARRIVES
        }
    }
}

fn search_cmd(
    io: &mut Io,
    instance: &Instance,
    cap: Option<usize>,
    search: &SearchArgs,
    verbose: bool,
) -> i32 {
    let params = match instance.params() {
        Ok(p) => p,
        Err(e) => return invalid(io, e),
    };
    let cap = cap.unwrap_or_else(|| suggested_cap(&params));
    let r = parallel_oracle_ramsey(&params, cap, &search.config(verbose));
    match r.status {
        OracleStatus::Exact => say!(io.out, "R = {} ({})", r.value, r.status.label()),
        _ => say!(io.out, "R >= {} ({})", r.value, r.status.label()),
    }
    say!(io.out, "nodes = {}", r.nodes);
    EXIT_OK
}

fn sorted_tuples(k: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                let start = prefix.last().copied().unwrap_or(lo);
                (start..=hi).map(move |m| {
                    let mut v = prefix.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    out
}

fn table(
    io: &mut Io,
    t: i64,
    (m_min, m_max): (i64, i64),
    s_min: Option<i64>,
    s_max: Option<i64>,
    oracle_check: bool,
    search: &SearchArgs,
) -> i32 {
    if m_min < 1 || m_min > m_max {
        return invalid(io, format!("empty star range {m_min}..={m_max}"));
    }
    let s_range = match (s_min, s_max) {
        (_, None) => None,
        (lo, Some(hi)) => {
            let lo = lo.unwrap_or(1);
            if lo < 1 || lo > hi {
                return invalid(io, format!("empty matching range {lo}..={hi}"));
            }
            Some((lo, hi))
        }
    };
    let k = match (t, s_range) {
        (t, _) if !(2..=64).contains(&t) => {
            return invalid(io, format!("t must lie in 2..=64, got {t}"))
        }
        (t, Some(_)) => (t - 1) as usize,
        (t, None) => t as usize,
    };
    let mut instances = Vec::new();
    for stars in sorted_tuples(k, m_min as u64, m_max as u64) {
        let stars: Vec<i64> = stars.into_iter().map(|m| m as i64).collect();
        match s_range {
            None => instances.push(Parameters::normalize(t, &stars, None)),
            Some((lo, hi)) => {
                for s in lo..=hi {
                    instances.push(Parameters::normalize(t, &stars, Some(s)));
                }
            }
        }
    }
    let config = search.config(false);
    let mut rows = Vec::with_capacity(instances.len());
    for p in instances {
        let p = match p {
            Ok(p) => p,
            Err(e) => return invalid(io, e),
        };
        let (value, trace) = match formulas::ramsey_value(&p) {
            Ok(v) => v,
            Err(e) => return invalid(io, e),
        };
        let oracle = if oracle_check {
            let r = parallel_oracle_ramsey(&p, value as usize + 1, &config);
            match (r.status, r.value == value) {
                (OracleStatus::Exact, true) => OracleCheck::Ok,
                (OracleStatus::Exact, false) => OracleCheck::Mismatch,
                _ => OracleCheck::Inexact,
            }
        } else {
            OracleCheck::Unchecked
        };
        rows.push(TableRow {
            t: p.t(),
            stars: p.stars().to_vec(),
            matching: p.matching(),
            value,
            rule: trace.final_rule().expect("non-empty trace"),
            oracle,
        });
    }
    match io::emit_table(&rows) {
        Ok(csv) => {
            let _ = io.out.write_all(csv.as_bytes());
            EXIT_OK
        }
        Err(e) => invalid(io, e),
    }
}

fn random(io: &mut Io, n: usize, t: usize, seed: u64, out: Option<&Path>) -> i32 {
    if n == 0 || !(1..=ramsey_core::coloring::MAX_COLORS).contains(&t) {
        return invalid(io, "need n >= 1 and 1 <= t <= 64");
    }
    let cert = io::write_coloring(&random_coloring(n, t, seed));
    match out {
        Some(path) => match write_file(path, &cert) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                say!(io.err, "error: {e}");
                EXIT_UNWRITABLE
            }
        },
        None => {
            let _ = io.out.write_all(cert.as_bytes());
            EXIT_OK
        }
    }
}
