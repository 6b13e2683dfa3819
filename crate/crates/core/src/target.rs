use alloc::vec::Vec;
use core::fmt;

use crate::coloring::Color;

/// The graphs a coloring may be asked to avoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `K_{1,m}`: a center with `m` leaves.
    Star(u64),
    /// `sP_2`: `s` pairwise disjoint edges.
    Matching(u64),
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Star(m) => write!(f, "K1,{m}"),
            Pattern::Matching(s) => write!(f, "{s}P2"),
        }
    }
}

/// One pattern together with the color it must avoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Target {
    pub pattern: Pattern,
    pub missing: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetError {
    MissingColorOutOfRange {
        index: usize,
        missing: Color,
        t: usize,
    },
    DuplicateMissingColor(Color),
    ZeroSize(usize),
}

impl fmt::Display for TargetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetError::MissingColorOutOfRange { index, missing, t } => {
                write!(f, "target {index} misses color {missing}, outside 1..={t}")
            }
            TargetError::DuplicateMissingColor(c) => {
                write!(f, "color {c} is missed by more than one target")
            }
            TargetError::ZeroSize(i) => write!(f, "target {i} has size 0"),
        }
    }
}

impl core::error::Error for TargetError {}

/// An ordered list of targets. A coloring *arrives* when some entry's
/// pattern embeds in the subgraph of edges whose color differs from the
/// entry's missing color.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TargetSpec {
    entries: Vec<Target>,
}

impl TargetSpec {
    pub fn new(entries: Vec<Target>, t: usize) -> Result<Self, TargetError> {
        let mut seen = 0u128;
        for (i, e) in entries.iter().enumerate() {
            if e.missing == 0 || e.missing as usize > t {
                return Err(TargetError::MissingColorOutOfRange {
                    index: i,
                    missing: e.missing,
                    t,
                });
            }
            let size = match e.pattern {
                Pattern::Star(m) => m,
                Pattern::Matching(s) => s,
            };
            if size == 0 {
                return Err(TargetError::ZeroSize(i));
            }
            let bit = 1u128 << e.missing;
            if seen & bit != 0 {
                return Err(TargetError::DuplicateMissingColor(e.missing));
            }
            seen |= bit;
        }
        Ok(TargetSpec { entries })
    }

    pub fn entries(&self) -> &[Target] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest missing color, i.e. the smallest palette these targets fit.
    pub fn min_palette(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.missing as usize)
            .max()
            .unwrap_or(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn validates_entries() {
        let star = |m, c| Target {
            pattern: Pattern::Star(m),
            missing: c,
        };
        assert!(TargetSpec::new(vec![star(2, 1), star(3, 2)], 2).is_ok());
        assert_eq!(
            TargetSpec::new(vec![star(2, 1), star(3, 1)], 2),
            Err(TargetError::DuplicateMissingColor(1))
        );
        assert!(matches!(
            TargetSpec::new(vec![star(2, 3)], 2),
            Err(TargetError::MissingColorOutOfRange { .. })
        ));
        assert_eq!(
            TargetSpec::new(vec![star(0, 1)], 2),
            Err(TargetError::ZeroSize(0))
        );
    }
}
