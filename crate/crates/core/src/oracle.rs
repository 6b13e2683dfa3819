//! Exhaustive search over colorings of small complete graphs.
//!
//! Edges are colored in lexicographic order `(0,1), (0,2), ...`, so vertex 0's
//! whole fan is fixed first. A branch is cut as soon as the colored edges
//! already contain some target; containment only grows under extension, so
//! no avoiding coloring is lost.
//!
//! Optional symmetry pruning only uses vertex permutations (targets differ
//! per color, so colors are never permuted):
//!
//! * vertex 0's fan is forced non-decreasing, `c(0,v-1) <= c(0,v)`;
//! * inside each run of equal `c(0,·)` among vertices `>= 2`, vertex 1's fan
//!   is forced non-decreasing as well.
//!
//! `symmetry_depth` counts how many of these adjacent comparisons are
//! enforced, vertex 0's first. Depth 0 disables pruning.

use alloc::vec;
use alloc::vec::Vec;

use crate::checker::{self, Verdict};
use crate::coloring::{edge_count, lex_edges, Color, Coloring};
use crate::formulas;
use crate::params::Parameters;
use crate::target::{Pattern, TargetSpec};

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search-tree nodes (root plus one per color trial).
    pub budget: u64,
    pub symmetry_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            symmetry_depth: 0,
        }
    }
}

impl SearchConfig {
    pub fn with_symmetry(self, depth: usize) -> Self {
        SearchConfig {
            symmetry_depth: depth,
            ..self
        }
    }

    pub fn with_budget(self, budget: u64) -> Self {
        SearchConfig { budget, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// An avoiding coloring, already confirmed by the checker.
    Found(Coloring),
    /// The whole tree was explored: every coloring arrives.
    None,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: Outcome,
    pub nodes: u64,
}

/// Result of searching one subtree under external control.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubtreeOutcome {
    Found(Coloring),
    Exhausted,
    BudgetExhausted,
    /// [`SearchControl::tick`] asked to stop.
    Stopped,
}

/// Hook for a driver that runs several subtrees at once.
pub trait SearchControl {
    /// Called every [`TICK`] nodes with the nodes visited since the last call
    /// and the current depth (edges colored). Return `false` to stop.
    fn tick(&self, nodes: u64, depth: usize) -> bool;
}

/// Nodes between two [`SearchControl::tick`] calls.
pub const TICK: u64 = 4096;

struct NoControl;

impl SearchControl for NoControl {
    fn tick(&self, _: u64, _: usize) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug)]
struct SymRule {
    prev: usize,
    /// Only enforced when these two edges share a color.
    guard: Option<(usize, usize)>,
}

/// Immutable search setup for one `(n, t, targets)`; cheap to share.
#[derive(Clone, Debug)]
pub struct Searcher {
    n: usize,
    t: usize,
    edges: Vec<(usize, usize)>,
    stars: Vec<(Color, u32)>,
    matchings: Vec<(Color, u32)>,
    sym: Vec<Option<SymRule>>,
    targets: TargetSpec,
}

struct State {
    colors: Vec<Color>,
    /// `deg[v * (t + 1) + c]`
    deg: Vec<u32>,
    total: Vec<u32>,
    /// Upper bound on each matching target's size, one row per depth.
    ub: Vec<u32>,
    nodes: u64,
    since_tick: u64,
}

enum Flow {
    Found,
    Exhausted,
    Budget,
    Stopped,
}

impl Searcher {
    pub fn new(n: usize, t: usize, targets: &TargetSpec, symmetry_depth: usize) -> Self {
        assert!(t >= 1 && targets.min_palette() <= t);
        let edges: Vec<_> = lex_edges(n).collect();
        let mut stars = Vec::new();
        let mut matchings = Vec::new();
        for e in targets.entries() {
            match e.pattern {
                Pattern::Star(m) => stars.push((e.missing, m.min(u32::MAX as u64) as u32)),
                Pattern::Matching(s) => matchings.push((e.missing, s.min(u32::MAX as u64) as u32)),
            }
        }
        let idx = |u, v| crate::coloring::edge_index(n, u, v);
        let mut sym = vec![None; edges.len()];
        let level_one = n.saturating_sub(2);
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u == 0 && v >= 2 && v - 2 < symmetry_depth {
                sym[e] = Some(SymRule {
                    prev: idx(0, v - 1),
                    guard: None,
                });
            } else if u == 1 && v >= 3 && level_one + (v - 3) < symmetry_depth {
                sym[e] = Some(SymRule {
                    prev: idx(1, v - 1),
                    guard: Some((idx(0, v), idx(0, v - 1))),
                });
            }
        }
        Searcher {
            n,
            t,
            edges,
            stars,
            matchings,
            sym,
            targets: targets.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn fresh_state(&self) -> State {
        let e = self.edges.len();
        let mut ub = vec![0u32; (e + 1) * self.matchings.len().max(1)];
        ub.truncate((e + 1) * self.matchings.len());
        State {
            colors: vec![0; e],
            deg: vec![0; self.n * (self.t + 1)],
            total: vec![0; self.n],
            ub,
            nodes: 1,
            since_tick: 1,
        }
    }

    /// Symmetry constraint on coloring edge `e` with `c`.
    fn allowed(&self, st: &State, e: usize, c: Color) -> bool {
        match self.sym[e] {
            None => true,
            Some(SymRule { prev, guard }) => {
                let active = guard.is_none_or(|(a, b)| st.colors[a] == st.colors[b]);
                !active || c >= st.colors[prev]
            }
        }
    }

    /// Colors edge `e` and reports whether the partial coloring now holds a
    /// target. The caller must `unassign` either way.
    fn assign(&self, st: &mut State, e: usize, c: Color) -> bool {
        let (u, v) = self.edges[e];
        let t1 = self.t + 1;
        st.colors[e] = c;
        st.deg[u * t1 + c as usize] += 1;
        st.deg[v * t1 + c as usize] += 1;
        st.total[u] += 1;
        st.total[v] += 1;
        for &(miss, m) in &self.stars {
            for w in [u, v] {
                if st.total[w] - st.deg[w * t1 + miss as usize] >= m {
                    return true;
                }
            }
        }
        let k = self.matchings.len();
        let mut hit = false;
        for (i, &(miss, s)) in self.matchings.iter().enumerate() {
            let before = st.ub[e * k + i];
            let mut bound = if c != miss { before + 1 } else { before };
            if bound >= s && c != miss {
                bound = self.partial_matching(st, e, miss);
            }
            st.ub[(e + 1) * k + i] = bound;
            if bound >= s {
                hit = true;
            }
        }
        hit
    }

    fn unassign(&self, st: &mut State, e: usize) {
        let (u, v) = self.edges[e];
        let c = st.colors[e] as usize;
        let t1 = self.t + 1;
        st.colors[e] = 0;
        st.deg[u * t1 + c] -= 1;
        st.deg[v * t1 + c] -= 1;
        st.total[u] -= 1;
        st.total[v] -= 1;
    }

    /// Exact maximum matching among colored edges `0..=last` avoiding `miss`.
    fn partial_matching(&self, st: &State, last: usize, miss: Color) -> u32 {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges[..=last].iter().enumerate() {
            if st.colors[e] != miss {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mate = checker::maximum_matching(&adj);
        (mate.iter().flatten().count() / 2) as u32
    }

    fn dfs(&self, st: &mut State, e: usize, budget: u64, control: &dyn SearchControl) -> Flow {
        if e == self.edges.len() {
            return Flow::Found;
        }
        for c in 1..=self.t as Color {
            if !self.allowed(st, e, c) {
                continue;
            }
            if st.nodes >= budget {
                return Flow::Budget;
            }
            st.nodes += 1;
            st.since_tick += 1;
            if st.since_tick >= TICK {
                let delta = core::mem::take(&mut st.since_tick);
                if !control.tick(delta, e) {
                    return Flow::Stopped;
                }
            }
            let hit = self.assign(st, e, c);
            if !hit {
                match self.dfs(st, e + 1, budget, control) {
                    Flow::Exhausted => {}
                    other => return other,
                }
            }
            self.unassign(st, e);
        }
        Flow::Exhausted
    }

    fn finish(&self, st: &State) -> Coloring {
        let c = Coloring::from_lex_colors(self.n, self.t, st.colors.clone())
            .expect("search assigns every edge");
        assert!(
            matches!(
                checker::coloring_arrives(&c, &self.targets),
                Verdict::Avoids
            ),
            "search produced a coloring the checker rejects: {c:?}"
        );
        c
    }

    /// Full search of the tree within `budget` nodes.
    pub fn search(&self, budget: u64) -> SearchReport {
        let mut st = self.fresh_state();
        if budget == 0 {
            return SearchReport {
                outcome: Outcome::BudgetExhausted,
                nodes: 0,
            };
        }
        let outcome = match self.dfs(&mut st, 0, budget, &NoControl) {
            Flow::Found => Outcome::Found(self.finish(&st)),
            Flow::Exhausted => Outcome::None,
            Flow::Budget | Flow::Stopped => Outcome::BudgetExhausted,
        };
        SearchReport {
            outcome,
            nodes: st.nodes,
        }
    }

    /// Every surviving assignment of the first `depth` edges, in search
    /// order, with the nodes spent enumerating them. These prefixes split
    /// the tree into disjoint subtrees.
    pub fn split(&self, depth: usize) -> (Vec<Vec<Color>>, u64) {
        let depth = depth.min(self.edges.len());
        let mut st = self.fresh_state();
        let mut out = Vec::new();
        self.collect(&mut st, 0, depth, &mut out);
        (out, st.nodes)
    }

    fn collect(&self, st: &mut State, e: usize, depth: usize, out: &mut Vec<Vec<Color>>) {
        if e == depth {
            out.push(st.colors[..depth].to_vec());
            return;
        }
        for c in 1..=self.t as Color {
            if !self.allowed(st, e, c) {
                continue;
            }
            st.nodes += 1;
            if !self.assign(st, e, c) {
                self.collect(st, e + 1, depth, out);
            }
            self.unassign(st, e);
        }
    }

    /// Searches below a prefix returned by [`Searcher::split`]. Node counts
    /// exclude the prefix itself.
    pub fn search_subtree(
        &self,
        prefix: &[Color],
        budget: u64,
        control: &dyn SearchControl,
    ) -> (SubtreeOutcome, u64) {
        let mut st = self.fresh_state();
        st.nodes = 0;
        st.since_tick = 0;
        for (e, &c) in prefix.iter().enumerate() {
            let hit = self.assign(&mut st, e, c);
            debug_assert!(!hit, "split returned a pruned prefix");
        }
        let flow = self.dfs(&mut st, prefix.len(), budget, control);
        if st.since_tick > 0 {
            control.tick(st.since_tick, prefix.len());
        }
        let outcome = match flow {
            Flow::Found => SubtreeOutcome::Found(self.finish(&st)),
            Flow::Exhausted => SubtreeOutcome::Exhausted,
            Flow::Budget => SubtreeOutcome::BudgetExhausted,
            Flow::Stopped => SubtreeOutcome::Stopped,
        };
        (outcome, st.nodes)
    }
}

/// Plain DFS, no symmetry pruning.
pub fn exists_avoiding_coloring(
    n: usize,
    t: usize,
    targets: &TargetSpec,
    budget: u64,
) -> SearchReport {
    Searcher::new(n, t, targets, 0).search(budget)
}

/// Same verdicts as [`exists_avoiding_coloring`], with vertex-symmetry
/// pruning at the given depth.
pub fn symmetry_pruned_search(
    n: usize,
    t: usize,
    targets: &TargetSpec,
    budget: u64,
    depth: usize,
) -> SearchReport {
    Searcher::new(n, t, targets, depth).search(budget)
}

/// Enough comparisons to enable every symmetry rule for `K_n`.
pub fn full_symmetry_depth(n: usize) -> usize {
    2 * n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleStatus {
    Exact,
    CapReached,
    BudgetExhausted,
}

impl OracleStatus {
    pub fn label(self) -> &'static str {
        match self {
            OracleStatus::Exact => "exact",
            OracleStatus::CapReached => "cap_reached",
            OracleStatus::BudgetExhausted => "budget_exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// Exact value, or a lower bound when `status` is not `Exact`.
    pub value: u64,
    pub status: OracleStatus,
    pub nodes: u64,
    /// Avoiding coloring on `value - 1` vertices, when one was found.
    pub witness: Option<Coloring>,
}

/// Walks `n = 1, 2, ...` until the search reports that no avoiding coloring
/// of `K_n` exists. `search(n, remaining_budget)` runs one order.
pub fn oracle_ramsey_with<F>(n_cap: usize, budget: u64, mut search: F) -> OracleResult
where
    F: FnMut(usize, u64) -> SearchReport,
{
    let mut nodes = 0u64;
    let mut witness = None;
    for n in 1..=n_cap {
        let report = search(n, budget.saturating_sub(nodes));
        nodes += report.nodes;
        match report.outcome {
            Outcome::Found(c) => witness = Some(c),
            Outcome::None => {
                return OracleResult {
                    value: n as u64,
                    status: OracleStatus::Exact,
                    nodes,
                    witness,
                }
            }
            Outcome::BudgetExhausted => {
                return OracleResult {
                    value: n as u64,
                    status: OracleStatus::BudgetExhausted,
                    nodes,
                    witness,
                }
            }
        }
    }
    OracleResult {
        value: n_cap as u64 + 1,
        status: OracleStatus::CapReached,
        nodes,
        witness,
    }
}

/// Sequential oracle for an instance's sorted targets.
pub fn oracle_ramsey(params: &Parameters, n_cap: usize, config: SearchConfig) -> OracleResult {
    let targets = params.targets();
    let t = params.t();
    oracle_ramsey_with(n_cap, config.budget, |n, budget| {
        symmetry_pruned_search(n, t, &targets, budget, config.symmetry_depth)
    })
}

/// A cap that comfortably covers the formula value, for grid sweeps.
pub fn suggested_cap(params: &Parameters) -> usize {
    formulas::ramsey_value(params)
        .map(|(v, _)| v as usize + 1)
        .unwrap_or(8)
}

/// Number of colorings of `K_n` with `t` colors, saturating.
pub fn tree_leaves(n: usize, t: usize) -> u64 {
    (t as u64).saturating_pow(edge_count(n) as u32)
}
