//! Matching decompositions of complete graphs, plus circulant regular graphs.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorizationError {
    OddOrder(usize),
    EvenOrder(usize),
    ParityInfeasible { p: usize, d: usize },
    DegreeOutOfRange { p: usize, d: usize },
}

impl fmt::Display for FactorizationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorizationError::OddOrder(p) => {
                write!(f, "1-factorization needs an even order >= 2, got {p}")
            }
            FactorizationError::EvenOrder(x) => {
                write!(f, "near-1-factorization needs an odd order >= 3, got {x}")
            }
            FactorizationError::ParityInfeasible { p, d } => {
                write!(f, "no {d}-regular graph on {p} vertices: d*p is odd")
            }
            FactorizationError::DegreeOutOfRange { p, d } => {
                write!(
                    f,
                    "degree {d} outside 0..={} for {p} vertices",
                    p.saturating_sub(1)
                )
            }
        }
    }
}

impl core::error::Error for FactorizationError {}

/// A partition of the edges of `K_p` into matchings, each with a fixed edge
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingDecomposition {
    pub order: usize,
    pub classes: Vec<Vec<(usize, usize)>>,
    /// For near-1-factorizations, `missing_vertex[i]` is the only vertex
    /// class `i` does not touch.
    pub missing_vertex: Option<Vec<usize>>,
}

impl MatchingDecomposition {
    /// Index of the class holding edge `{u, v}`.
    pub fn class_of(&self, u: usize, v: usize) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)))
    }
}

/// Round-robin 1-factorization of `K_p`, `p` even: vertex `p-1` stays fixed
/// while `0..p-1` rotate. Class `r` holds `(r, p-1)` followed by
/// `(r+k, r-k)` (mod `p-1`) for `k = 1..p/2`.
pub fn one_factorization(p: usize) -> Result<MatchingDecomposition, FactorizationError> {
    if p < 2 || p % 2 == 1 {
        return Err(FactorizationError::OddOrder(p));
    }
    let m = p - 1;
    let classes = (0..m)
        .map(|r| {
            let mut class = Vec::with_capacity(p / 2);
            class.push((r, p - 1));
            for k in 1..p / 2 {
                class.push(((r + k) % m, (r + m - k) % m));
            }
            class
        })
        .collect();
    Ok(MatchingDecomposition {
        order: p,
        classes,
        missing_vertex: None,
    })
}

/// Near-1-factorization of `K_x`, `x` odd: class `v` misses `v` and holds
/// `(v+k, v-k)` (mod `x`) for `k = 1..=(x-1)/2`, so every edge `{a, b}` of
/// class `v` has `a + b ≡ 2v (mod x)`. For `v = x-1` this is the list
/// `(0, x-2), (1, x-3), ...`.
pub fn near_one_factorization(x: usize) -> Result<MatchingDecomposition, FactorizationError> {
    if x < 3 || x.is_multiple_of(2) {
        return Err(FactorizationError::EvenOrder(x));
    }
    let classes = (0..x)
        .map(|v| {
            (1..=(x - 1) / 2)
                .map(|k| ((v + k) % x, (v + x - k) % x))
                .collect()
        })
        .collect();
    Ok(MatchingDecomposition {
        order: x,
        classes,
        missing_vertex: Some((0..x).collect()),
    })
}

/// A `d`-regular circulant graph on `p` vertices with connection set
/// `{±1, ..., ±floor(d/2)}`, plus `p/2` when `d` is odd. Edges come back
/// sorted with `u < v`.
pub fn regular_circulant(p: usize, d: usize) -> Result<Vec<(usize, usize)>, FactorizationError> {
    if d > p.saturating_sub(1) {
        return Err(FactorizationError::DegreeOutOfRange { p, d });
    }
    if (d * p) % 2 == 1 {
        return Err(FactorizationError::ParityInfeasible { p, d });
    }
    let mut offsets: Vec<usize> = (1..=d / 2).collect();
    if d % 2 == 1 {
        offsets.push(p / 2);
    }
    let edges: BTreeSet<(usize, usize)> = (0..p)
        .flat_map(|u| {
            offsets.iter().map(move |&k| {
                let v = (u + k) % p;
                (u.min(v), u.max(v))
            })
        })
        .collect();
    Ok(edges.into_iter().collect())
}
