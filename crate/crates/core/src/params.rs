use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{Color, Coloring, ColoringError, MAX_COLORS};
use crate::target::{Pattern, Target, TargetSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamError {
    TooFewColors(i64),
    TooManyColors(i64),
    NonPositiveStar { index: usize, value: i64 },
    NonPositiveMatching(i64),
    MatchingWithTLessThan3(i64),
    StarCount { expected: usize, found: usize },
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::TooFewColors(t) => write!(f, "need at least 2 colors, got t={t}"),
            ParamError::TooManyColors(t) => {
                write!(f, "at most {MAX_COLORS} colors are supported, got t={t}")
            }
            ParamError::NonPositiveStar { index, value } => {
                write!(f, "star {} has size {value}; sizes must be >= 1", index + 1)
            }
            ParamError::NonPositiveMatching(s) => {
                write!(f, "matching size {s}; it must be >= 1")
            }
            ParamError::MatchingWithTLessThan3(t) => {
                write!(f, "stars plus a matching needs t >= 3, got t={t}")
            }
            ParamError::StarCount { expected, found } => {
                write!(f, "expected {expected} star sizes, got {found}")
            }
        }
    }
}

impl core::error::Error for ParamError {}

/// A validated problem instance with star sizes sorted non-decreasing.
///
/// `perm[i]` is the user-supplied (0-based) position of the star that sits
/// at sorted position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parameters {
    t: usize,
    stars: Vec<u64>,
    matching: Option<u64>,
    perm: Vec<usize>,
}

impl Parameters {
    /// Validates and sorts a raw instance. With `matching = None` exactly
    /// `t` stars are expected; with `Some(s)` exactly `t - 1`.
    pub fn normalize(t: i64, stars: &[i64], matching: Option<i64>) -> Result<Self, ParamError> {
        if t < 2 {
            return Err(ParamError::TooFewColors(t));
        }
        if t > MAX_COLORS as i64 {
            return Err(ParamError::TooManyColors(t));
        }
        if matching.is_some() && t < 3 {
            return Err(ParamError::MatchingWithTLessThan3(t));
        }
        let t = t as usize;
        let expected = if matching.is_some() { t - 1 } else { t };
        if stars.len() != expected {
            return Err(ParamError::StarCount {
                expected,
                found: stars.len(),
            });
        }
        if let Some((index, &value)) = stars.iter().enumerate().find(|(_, &m)| m < 1) {
            return Err(ParamError::NonPositiveStar { index, value });
        }
        let matching = match matching {
            Some(s) if s < 1 => return Err(ParamError::NonPositiveMatching(s)),
            Some(s) => Some(s as u64),
            None => None,
        };

        let mut perm: Vec<usize> = (0..stars.len()).collect();
        // stable: equal sizes keep their user order
        perm.sort_by_key(|&i| stars[i]);
        let stars = perm.iter().map(|&i| stars[i] as u64).collect();
        Ok(Parameters {
            t,
            stars,
            matching,
            perm,
        })
    }

    /// An all-stars instance from sizes that are already sorted.
    pub(crate) fn sorted_stars(stars: &[u64]) -> Self {
        debug_assert!(stars.len() >= 2 && stars.windows(2).all(|w| w[0] <= w[1]));
        Parameters {
            t: stars.len(),
            stars: stars.to_vec(),
            matching: None,
            perm: (0..stars.len()).collect(),
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Sorted star sizes.
    pub fn stars(&self) -> &[u64] {
        &self.stars
    }

    pub fn matching(&self) -> Option<u64> {
        self.matching
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn has_matching(&self) -> bool {
        self.matching.is_some()
    }

    /// Targets for the sorted instance: star `i` misses color `i`, the
    /// matching (if any) misses color `t`.
    pub fn targets(&self) -> TargetSpec {
        let mut entries: Vec<Target> = self
            .stars
            .iter()
            .enumerate()
            .map(|(i, &m)| Target {
                pattern: Pattern::Star(m),
                missing: (i + 1) as Color,
            })
            .collect();
        if let Some(s) = self.matching {
            entries.push(Target {
                pattern: Pattern::Matching(s),
                missing: self.t as Color,
            });
        }
        TargetSpec::new(entries, self.t).expect("normalized parameters give valid targets")
    }

    /// Targets in the order the user supplied the stars.
    pub fn user_targets(&self) -> TargetSpec {
        let mut entries: Vec<Target> = (0..self.stars.len())
            .map(|user| Target {
                pattern: Pattern::Star(0),
                missing: (user + 1) as Color,
            })
            .collect();
        for (sorted, &user) in self.perm.iter().enumerate() {
            entries[user].pattern = Pattern::Star(self.stars[sorted]);
        }
        if let Some(s) = self.matching {
            entries.push(Target {
                pattern: Pattern::Matching(s),
                missing: self.t as Color,
            });
        }
        TargetSpec::new(entries, self.t).expect("normalized parameters give valid targets")
    }

    /// Maps a coloring built for the sorted instance to the user's color
    /// labels: sorted star color `i + 1` becomes `perm[i] + 1`.
    pub fn denormalize(&self, c: &Coloring) -> Result<Coloring, ColoringError> {
        let k = self.stars.len();
        c.recolor(self.t, |col| {
            let i = col as usize - 1;
            if i < k {
                (self.perm[i] + 1) as Color
            } else {
                col
            }
        })
    }
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} m=", self.t)?;
        for (i, m) in self.stars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        if let Some(s) = self.matching {
            write!(f, " s={s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn sorts_and_records_perm() {
        let p = Parameters::normalize(3, &[4, 2, 3], None).unwrap();
        assert_eq!(p.stars(), &[2, 3, 4]);
        // 1-based (2,3,1)
        assert_eq!(p.perm(), &[1, 2, 0]);
    }

    #[test]
    fn stable_on_ties() {
        let p = Parameters::normalize(4, &[3, 1, 3, 1], None).unwrap();
        assert_eq!(p.stars(), &[1, 1, 3, 3]);
        assert_eq!(p.perm(), &[1, 3, 0, 2]);
    }

    #[test]
    fn stars_plus_matching() {
        let p = Parameters::normalize(3, &[3, 3], Some(2)).unwrap();
        assert_eq!(p.matching(), Some(2));
        let targets = p.targets();
        assert_eq!(targets.len(), 3);
        assert_eq!(
            targets.entries()[2],
            Target {
                pattern: Pattern::Matching(2),
                missing: 3
            }
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            Parameters::normalize(2, &[3], Some(1)),
            Err(ParamError::MatchingWithTLessThan3(2))
        );
        assert_eq!(
            Parameters::normalize(1, &[3], None),
            Err(ParamError::TooFewColors(1))
        );
        assert_eq!(
            Parameters::normalize(3, &[3, 0, 2], None),
            Err(ParamError::NonPositiveStar { index: 1, value: 0 })
        );
        assert_eq!(
            Parameters::normalize(3, &[3, 3, 3], Some(2)),
            Err(ParamError::StarCount {
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            Parameters::normalize(3, &[3, 3], Some(0)),
            Err(ParamError::NonPositiveMatching(0))
        );
    }

    #[test]
    fn user_targets_follow_input_order() {
        let p = Parameters::normalize(3, &[4, 2, 3], None).unwrap();
        let sizes: Vec<_> = p
            .user_targets()
            .entries()
            .iter()
            .map(|e| (e.pattern, e.missing))
            .collect();
        assert_eq!(
            sizes,
            vec![
                (Pattern::Star(4), 1),
                (Pattern::Star(2), 2),
                (Pattern::Star(3), 3)
            ]
        );
    }
}
