//! Multi-threaded oracle: the top of the search tree is split into prefixes
//! and each subtree runs on a rayon worker.
//!
//! A subtree only keeps going while no subtree with a lower index has found
//! a witness, so the reported coloring is the one the sequential search
//! would return. Node counts may differ from run to run because
//! higher-index subtrees can be cut at different points.

use std::io::Write;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use ramsey_core::oracle::{
    oracle_ramsey_with, OracleResult, Outcome, SearchConfig, SearchControl, SearchReport, Searcher,
    SubtreeOutcome,
};
use ramsey_core::{Parameters, TargetSpec};

/// Prefixes per worker to aim for when splitting.
const PREFIXES_PER_JOB: usize = 8;
const MAX_SPLIT_DEPTH: usize = 10;
const PROGRESS_EVERY: Duration = Duration::from_secs(1);

#[derive(Clone, Copy, Debug)]
pub struct ParallelConfig {
    pub search: SearchConfig,
    pub jobs: usize,
    /// Progress lines on stderr.
    pub verbose: bool,
}

impl ParallelConfig {
    pub fn new(search: SearchConfig, jobs: usize) -> Self {
        ParallelConfig {
            search,
            jobs: jobs.max(1),
            verbose: false,
        }
    }
}

struct Shared {
    budget: u64,
    nodes: AtomicU64,
    /// Index of the lowest subtree known to hold a witness.
    lowest_found: AtomicUsize,
    over_budget: AtomicBool,
    verbose: bool,
    start: Instant,
    last_report: Mutex<Instant>,
    n: usize,
}

struct Worker<'a> {
    shared: &'a Shared,
    index: usize,
}

impl SearchControl for Worker<'_> {
    fn tick(&self, nodes: u64, depth: usize) -> bool {
        let s = self.shared;
        let total = s.nodes.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total >= s.budget {
            s.over_budget.store(true, Ordering::Relaxed);
            return false;
        }
        if s.verbose {
            s.maybe_report(total, depth);
        }
        self.index < s.lowest_found.load(Ordering::Relaxed)
    }
}

impl Shared {
    fn maybe_report(&self, total: u64, depth: usize) {
        let now = Instant::now();
        let Ok(mut last) = self.last_report.try_lock() else {
            return;
        };
        if now.duration_since(*last) >= PROGRESS_EVERY {
            *last = now;
            let elapsed = now.duration_since(self.start).as_secs_f64();
            let _ = writeln!(
                std::io::stderr(),
                "progress n={} nodes={total} depth={depth} elapsed={elapsed:.1}s",
                self.n
            );
        }
    }
}

fn split_prefixes(searcher: &Searcher, edges: usize, jobs: usize) -> (Vec<Vec<u8>>, u64) {
    let want = jobs * PREFIXES_PER_JOB;
    let mut spent = 0;
    let mut best = searcher.split(0);
    for depth in 1..=edges.min(MAX_SPLIT_DEPTH) {
        spent += best.1;
        best = searcher.split(depth);
        if best.0.len() >= want {
            break;
        }
    }
    (best.0, spent + best.1)
}

/// Parallel counterpart of a single `(n, t, targets)` search. Verdicts and
/// any returned witness match the sequential search.
pub fn parallel_search(
    n: usize,
    t: usize,
    targets: &TargetSpec,
    budget: u64,
    config: &ParallelConfig,
) -> SearchReport {
    let searcher = Searcher::new(n, t, targets, config.search.symmetry_depth);
    let edges = n * n.saturating_sub(1) / 2;
    if config.jobs <= 1 || edges < 2 {
        return searcher.search(budget);
    }
    if budget == 0 {
        return SearchReport {
            outcome: Outcome::BudgetExhausted,
            nodes: 0,
        };
    }
    let (prefixes, split_nodes) = split_prefixes(&searcher, edges, config.jobs);
    let shared = Shared {
        budget,
        nodes: AtomicU64::new(split_nodes),
        lowest_found: AtomicUsize::new(usize::MAX),
        over_budget: AtomicBool::new(split_nodes >= budget),
        verbose: config.verbose,
        start: Instant::now(),
        last_report: Mutex::new(Instant::now()),
        n,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .expect("thread pool");

    let results: Vec<(SubtreeOutcome, u64)> = pool.install(|| {
        prefixes
            .par_iter()
            .enumerate()
            .map(|(index, prefix)| {
                if index > shared.lowest_found.load(Ordering::Relaxed)
                    || shared.over_budget.load(Ordering::Relaxed)
                {
                    return (SubtreeOutcome::Stopped, 0);
                }
                let remaining = budget.saturating_sub(shared.nodes.load(Ordering::Relaxed));
                let worker = Worker {
                    shared: &shared,
                    index,
                };
                let (outcome, nodes) = searcher.search_subtree(prefix, remaining, &worker);
                if matches!(outcome, SubtreeOutcome::Found(_)) {
                    shared.lowest_found.fetch_min(index, Ordering::Relaxed);
                }
                if matches!(outcome, SubtreeOutcome::BudgetExhausted) {
                    shared.over_budget.store(true, Ordering::Relaxed);
                }
                (outcome, nodes)
            })
            .collect()
    });

    // ticks already added most of these; the exact total is recomputed here
    let nodes = split_nodes + results.iter().map(|(_, k)| k).sum::<u64>();
    // every subtree before the first witness must have been exhausted
    for (outcome, _) in results {
        match outcome {
            SubtreeOutcome::Exhausted => continue,
            SubtreeOutcome::Found(c) => {
                return SearchReport {
                    outcome: Outcome::Found(c),
                    nodes,
                }
            }
            SubtreeOutcome::BudgetExhausted | SubtreeOutcome::Stopped => {
                return SearchReport {
                    outcome: Outcome::BudgetExhausted,
                    nodes,
                }
            }
        }
    }
    // subtree budgets are local, so the shared limit is rechecked here
    let outcome = if nodes > budget {
        Outcome::BudgetExhausted
    } else {
        Outcome::None
    };
    SearchReport { outcome, nodes }
}

/// [`ramsey_core::oracle::oracle_ramsey`] with each order searched in
/// parallel.
pub fn parallel_oracle_ramsey(
    params: &Parameters,
    n_cap: usize,
    config: &ParallelConfig,
) -> OracleResult {
    let targets = params.targets();
    let t = params.t();
    oracle_ramsey_with(n_cap, config.search.budget, |n, remaining| {
        let report = parallel_search(n, t, &targets, remaining, config);
        if config.verbose {
            let verdict = match &report.outcome {
                Outcome::Found(_) => "found",
                Outcome::None => "none",
                Outcome::BudgetExhausted => "budget_exhausted",
            };
            eprintln!("n={n} {verdict} nodes={}", report.nodes);
        }
        report
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ramsey_core::oracle::{oracle_ramsey, OracleStatus};

    fn cfg(jobs: usize) -> ParallelConfig {
        ParallelConfig::new(SearchConfig::default().with_symmetry(usize::MAX), jobs)
    }

    #[test]
    fn agrees_with_sequential() {
        for (t, ms, s) in [
            (3, vec![2, 2, 2], None),
            (3, vec![3, 3, 3], None),
            (3, vec![2, 3, 3], None),
            (2, vec![3, 4], None),
            (3, vec![3, 4], Some(2)),
        ] {
            let p = Parameters::normalize(t, &ms, s).unwrap();
            let seq = oracle_ramsey(&p, 8, SearchConfig::default().with_symmetry(usize::MAX));
            for jobs in [1, 2, 4] {
                let par = parallel_oracle_ramsey(&p, 8, &cfg(jobs));
                assert_eq!(
                    (par.value, par.status),
                    (seq.value, seq.status),
                    "{p} jobs={jobs}"
                );
                assert_eq!(par.witness, seq.witness, "{p} jobs={jobs}");
            }
        }
    }

    #[test]
    fn same_witness_as_sequential_search() {
        let p = Parameters::normalize(3, &[3, 3, 3], None).unwrap();
        let seq = Searcher::new(4, 3, &p.targets(), usize::MAX).search(u64::MAX);
        let par = parallel_search(4, 3, &p.targets(), u64::MAX, &cfg(3));
        assert_eq!(seq.outcome, par.outcome);
    }

    #[test]
    fn tiny_budget() {
        let p = Parameters::normalize(3, &[3, 3, 3], None).unwrap();
        let r = parallel_oracle_ramsey(
            &p,
            8,
            &ParallelConfig::new(SearchConfig::default().with_budget(1), 4),
        );
        assert_eq!(r.status, OracleStatus::BudgetExhausted);
        let r = parallel_search(5, 3, &p.targets(), 0, &cfg(4));
        assert_eq!(r.outcome, Outcome::BudgetExhausted);
    }

    #[test]
    fn budget_exhausted_mid_search() {
        let p = Parameters::normalize(3, &[3, 3, 3], None).unwrap();
        let full = Searcher::new(5, 3, &p.targets(), usize::MAX).search(u64::MAX);
        assert_eq!(full.outcome, Outcome::None);
        let r = parallel_search(5, 3, &p.targets(), full.nodes / 2, &cfg(4));
        assert_eq!(r.outcome, Outcome::BudgetExhausted);
    }
}
