//! Containment tests: does a coloring contain a star or a matching in the
//! colors other than a given one?

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::coloring::{Color, ColorSet, Coloring};
use crate::target::{Pattern, Target, TargetSpec};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarEmbedding {
    pub center: usize,
    pub leaves: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedding {
    Star(StarEmbedding),
    Matching(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `target` is the index of the first entry that embeds.
    Arrives {
        target: usize,
        embedding: Embedding,
    },
    Avoids,
}

impl Verdict {
    pub fn avoids(&self) -> bool {
        matches!(self, Verdict::Avoids)
    }
}

/// A `K_{1,m}` whose edges all avoid color `missing`: the lowest center with
/// enough such edges, and its first `m` neighbours along them.
pub fn star_missing_color(c: &Coloring, missing: Color, m: u64) -> Option<StarEmbedding> {
    let n = c.n();
    if m as usize >= n {
        return None;
    }
    let m = m as usize;
    (0..n).find_map(|center| {
        let leaves: Vec<usize> = (0..n)
            .filter(|&w| w != center && c.color(center, w) != missing)
            .take(m)
            .collect();
        (leaves.len() == m).then_some(StarEmbedding { center, leaves })
    })
}

/// Maximum matching of the spanning subgraph on edges colored from `allowed`.
pub fn max_matching(c: &Coloring, allowed: ColorSet) -> Vec<(usize, usize)> {
    let n = c.n();
    let mut adj = vec![Vec::new(); n];
    for (u, v, col) in c.edges() {
        if allowed.contains(col) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mate = maximum_matching(&adj);
    mate.iter()
        .enumerate()
        .filter_map(|(u, &m)| m.filter(|&v| u < v).map(|v| (u, v)))
        .collect()
}

/// Edmonds' blossom algorithm on an adjacency list. `mate[v]` is the
/// partner of `v` in a maximum matching.
pub fn maximum_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut b = Blossom {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::with_capacity(n),
    };
    // greedy start
    for (v, nbrs) in adj.iter().enumerate() {
        if b.mate[v] == NONE {
            if let Some(&w) = nbrs.iter().find(|&&w| b.mate[w] == NONE && w != v) {
                b.mate[v] = w;
                b.mate[w] = v;
            }
        }
    }
    for root in 0..n {
        if b.mate[root] != NONE {
            continue;
        }
        let mut v = b.find_augmenting_path(root);
        while v != NONE {
            let pv = b.parent[v];
            let ppv = b.mate[pv];
            b.mate[v] = pv;
            b.mate[pv] = v;
            v = ppv;
        }
    }
    b.mate
        .into_iter()
        .map(|m| (m != NONE).then_some(m))
        .collect()
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, stem: usize, mut child: usize) {
        while self.base[v] != stem {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS over alternating paths from `root`; returns the free endpoint of
    /// an augmenting path, or `NONE`.
    fn find_augmenting_path(&mut self, root: usize) -> usize {
        let n = self.mate.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.adj[v].iter() {
                if to == v || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // odd cycle: contract
                    let stem = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, stem, to);
                    self.mark_path(to, stem, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = stem;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        NONE
    }
}

/// Checks one target; returns an embedding when it is present.
pub fn find_target(c: &Coloring, target: &Target) -> Option<Embedding> {
    match target.pattern {
        Pattern::Star(m) => star_missing_color(c, target.missing, m).map(Embedding::Star),
        Pattern::Matching(s) => {
            let allowed = ColorSet::all_but(c.t(), target.missing);
            let mut edges = max_matching(c, allowed);
            if (edges.len() as u64) < s {
                return None;
            }
            edges.truncate(s as usize);
            Some(Embedding::Matching(edges))
        }
    }
}

/// Reports the lowest-index target that embeds, or [`Verdict::Avoids`].
pub fn coloring_arrives(c: &Coloring, targets: &TargetSpec) -> Verdict {
    targets
        .entries()
        .iter()
        .enumerate()
        .find_map(|(i, t)| {
            find_target(c, t).map(|embedding| Verdict::Arrives {
                target: i,
                embedding,
            })
        })
        .unwrap_or(Verdict::Avoids)
}

/// Re-checks an embedding against the coloring directly: the edges exist,
/// avoid the missing color, and form the claimed pattern.
pub fn verify_embedding(c: &Coloring, target: &Target, embedding: &Embedding) -> bool {
    let n = c.n();
    let ok_edge = |u: usize, v: usize| u < n && v < n && u != v && c.color(u, v) != target.missing;
    match (target.pattern, embedding) {
        (Pattern::Star(m), Embedding::Star(e)) => {
            let mut leaves = e.leaves.clone();
            leaves.sort_unstable();
            leaves.dedup();
            leaves.len() as u64 == m
                && e.leaves.len() == leaves.len()
                && e.leaves.iter().all(|&w| ok_edge(e.center, w))
        }
        (Pattern::Matching(s), Embedding::Matching(edges)) => {
            let mut used = vec![false; n];
            edges.len() as u64 == s
                && edges.iter().all(|&(u, v)| {
                    let fresh = ok_edge(u, v) && !used[u] && !used[v];
                    if fresh {
                        used[u] = true;
                        used[v] = true;
                    }
                    fresh
                })
        }
        _ => false,
    }
}

/// Smallest number of `color` edges at any vertex (`None` for `K_0`).
pub fn min_color_degree(c: &Coloring, color: Color) -> Option<usize> {
    let degs = c.color_degrees();
    degs.iter().map(|d| d[color as usize]).min()
}
