//! Closed-form values with derivation traces.
//!
//! For all-stars instances the value is built up along the prefix chain
//! `R_2, R_3, ..., R_t`, where `R_j` is the value for the `j` smallest stars
//! on `j` colors. Each level either inherits `R_{j-1}` (the new star is too
//! large to matter) or is decided by the counting value `x` or `x + 1`.

use alloc::vec::Vec;
use core::fmt;

use crate::params::Parameters;
use crate::trace::{DerivationTrace, Rule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaError {
    Overflow,
    /// A star size of 0, or fewer than two stars.
    Precondition(&'static str),
    NotAllStars,
    NoMatching,
}

impl fmt::Display for FormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaError::Overflow => f.write_str("arithmetic overflow"),
            FormulaError::Precondition(what) => write!(f, "precondition failed: {what}"),
            FormulaError::NotAllStars => {
                f.write_str("instance has a matching; expected stars only")
            }
            FormulaError::NoMatching => f.write_str("instance has no matching"),
        }
    }
}

impl core::error::Error for FormulaError {}

type Result<T> = core::result::Result<T, FormulaError>;

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(FormulaError::Overflow)
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(FormulaError::Overflow)
}

/// `Σ (m_i - 1)` over the given sizes.
pub fn sigma(stars: &[u64]) -> Result<u64> {
    stars.iter().try_fold(0u64, |acc, &m| {
        if m == 0 {
            Err(FormulaError::Precondition("star sizes must be >= 1"))
        } else {
            add(acc, m - 1)
        }
    })
}

/// Intermediate symbols of an all-stars instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived {
    pub sigma: u64,
    /// `floor((Σ + t - 1) / (t - 1))`
    pub x: u64,
    /// `Σ mod (t - 1)`
    pub h: u64,
    /// `Σ div (t - 1)`
    pub q: u64,
    /// `x_j = floor((m_1 + ... + m_j - 1) / (j - 1))` for `j = 2..=t`.
    pub x_chain: Vec<u64>,
}

fn counting_symbols(stars: &[u64]) -> Result<(u64, u64, u64, u64)> {
    let t = stars.len() as u64;
    if t < 2 {
        return Err(FormulaError::Precondition("need at least two stars"));
    }
    let sigma = sigma(stars)?;
    let x = add(sigma, t - 1)? / (t - 1);
    Ok((sigma, x, sigma % (t - 1), sigma / (t - 1)))
}

pub fn derived_quantities(params: &Parameters) -> Result<Derived> {
    if params.has_matching() {
        return Err(FormulaError::NotAllStars);
    }
    let stars = params.stars();
    let (sigma, x, h, q) = counting_symbols(stars)?;
    let mut x_chain = Vec::with_capacity(stars.len() - 1);
    let mut total = stars[0];
    for (j, &m) in stars.iter().enumerate().skip(1) {
        total = add(total, m)?;
        x_chain.push((total - 1) / j as u64);
    }
    debug_assert_eq!(x_chain.last().copied(), Some(x));
    Ok(Derived {
        sigma,
        x,
        h,
        q,
        x_chain,
    })
}

/// Two stars, `r(K_{1,m1}, K_{1,m2}) = m1 + m2 - eps`.
pub fn star_ramsey_base(m1: u64, m2: u64) -> Result<(u64, DerivationTrace)> {
    if m1 == 0 || m2 == 0 {
        return Err(FormulaError::Precondition("star sizes must be >= 1"));
    }
    let eps = u64::from(m1.is_multiple_of(2) && m2.is_multiple_of(2));
    let value = add(m1, m2)? - eps;
    let mut trace = DerivationTrace::new();
    trace.push(
        Rule::TwoStarBase,
        &[("m1", m1), ("m2", m2), ("eps", eps)],
        value,
    );
    Ok((value, trace))
}

/// The counting value for sorted sizes, ignoring whether the last star
/// should instead inherit the shorter family's value: `x` when `x` is odd,
/// `h = 0` and some size is even, otherwise `x + 1`.
pub fn counting_value(stars: &[u64]) -> Result<(u64, Rule)> {
    let (_, x, h, _) = counting_symbols(stars)?;
    Ok(counting_case(stars, x, h))
}

fn counting_case(stars: &[u64], x: u64, h: u64) -> (u64, Rule) {
    if x.is_multiple_of(2) {
        (x + 1, Rule::EvenX)
    } else if h >= 1 {
        (x + 1, Rule::OddXSlack)
    } else if stars.iter().any(|m| m % 2 == 0) {
        (x, Rule::OddXParity)
    } else {
        (x + 1, Rule::OddXExact)
    }
}

/// `R_j` for every prefix `j = 2..=len` of the sorted sizes, with the trace
/// of the full chain.
pub fn star_chain(stars: &[u64]) -> Result<(Vec<u64>, DerivationTrace)> {
    if stars.len() < 2 {
        return Err(FormulaError::Precondition("need at least two stars"));
    }
    debug_assert!(stars.windows(2).all(|w| w[0] <= w[1]));
    let (mut value, mut trace) = star_ramsey_base(stars[0], stars[1])?;
    let mut chain = Vec::with_capacity(stars.len() - 1);
    chain.push(value);
    for j in 3..=stars.len() {
        let prefix = &stars[..j];
        let m_t = prefix[j - 1];
        let r_prev = value;
        let (sigma, x, h, q) = counting_symbols(prefix)?;
        if add(m_t, 1)? >= r_prev {
            if add(m_t, 1)? == r_prev {
                debug_assert_eq!(
                    counting_case(prefix, x, h).0,
                    r_prev,
                    "boundary disagreement for {prefix:?}"
                );
            }
            trace.push(
                Rule::ReduceEquality,
                &[("t", j as u64), ("R_prev", r_prev), ("m_t", m_t)],
                r_prev,
            );
        } else {
            let (v, rule) = counting_case(prefix, x, h);
            let some_even = u64::from(prefix.iter().any(|m| m % 2 == 0));
            trace.push(
                rule,
                &[
                    ("t", j as u64),
                    ("R_prev", r_prev),
                    ("m_t", m_t),
                    ("sigma", sigma),
                    ("x", x),
                    ("h", h),
                    ("q", q),
                    ("some_even", some_even),
                ],
                v,
            );
            value = v;
        }
        chain.push(value);
    }
    Ok((chain, trace))
}

/// Value for an all-stars instance.
pub fn star_ramsey(params: &Parameters) -> Result<(u64, DerivationTrace)> {
    if params.has_matching() {
        return Err(FormulaError::NotAllStars);
    }
    let (chain, trace) = star_chain(params.stars())?;
    Ok((*chain.last().expect("non-empty chain"), trace))
}

/// Which regime a stars-plus-matching instance falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingCase {
    /// `2s >= R_{t-1}`
    Reduce,
    /// `2s < R_{t-1}` and `Σ < (2t-3)s - t + 2`
    Double,
    /// `2s < R_{t-1}`, `Σ >= (2t-3)s - t + 2`, and every `m_i <= l`
    /// where `l = ceil((Σ + s)/(t-1))`
    Ceiling,
    /// As `Ceiling`, but the largest star exceeds `l`, so the class sizes
    /// `l - m_i` are not all non-negative.
    Clamped,
}

impl MatchingCase {
    pub fn rule(self) -> Rule {
        match self {
            MatchingCase::Reduce => Rule::MatchingReduce,
            MatchingCase::Double => Rule::MatchingDouble,
            MatchingCase::Ceiling => Rule::MatchingCeiling,
            MatchingCase::Clamped => Rule::MatchingClamped,
        }
    }
}

/// Classifies a stars-plus-matching instance; also returns `R_{t-1}` and `Σ`.
pub fn matching_case(params: &Parameters) -> Result<(MatchingCase, u64, u64)> {
    let s = params.matching().ok_or(FormulaError::NoMatching)?;
    let t = params.t() as u64;
    if t < 3 {
        return Err(FormulaError::Precondition("t >= 3"));
    }
    let stars = params.stars();
    let (chain, _) = star_chain(stars)?;
    let r_prev = *chain.last().unwrap();
    let sigma = sigma(stars)?;
    let case = if mul(2, s)? >= r_prev {
        MatchingCase::Reduce
    } else if add(sigma, t)? < add(mul(2 * t - 3, s)?, 2)? {
        MatchingCase::Double
    } else {
        let l = add(sigma, s)?.div_ceil(t - 1);
        if *stars.last().unwrap() <= l {
            MatchingCase::Ceiling
        } else {
            MatchingCase::Clamped
        }
    };
    Ok((case, r_prev, sigma))
}

/// Least `p` with `Σ max(0, p - m_i) >= s`: from this order on, each
/// vertex of an avoiding coloring meets at least `s` edges in the colors
/// the matching may use.
pub fn least_covering_order(stars: &[u64], s: u64) -> u64 {
    let covered = |p: u64| -> u64 { stars.iter().map(|&m| p.saturating_sub(m)).sum() };
    // covered() is non-decreasing in p; covered(min m + s) >= s
    let (mut lo, mut hi) = (
        0u64,
        stars.iter().min().copied().unwrap_or(0).saturating_add(s),
    );
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if covered(mid) >= s {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Value for stars `m_1..m_{t-1}` plus one matching `sP_2`, `t >= 3`.
pub fn star_matching_ramsey(params: &Parameters) -> Result<(u64, DerivationTrace)> {
    let s = params.matching().ok_or(FormulaError::NoMatching)?;
    let t = params.t() as u64;
    let (case, r_prev, sigma) = matching_case(params)?;
    let (_, mut trace) = star_chain(params.stars())?;
    let stars = params.stars();
    let value = match case {
        MatchingCase::Reduce => r_prev,
        MatchingCase::Double => mul(2, s)?,
        MatchingCase::Ceiling => add(sigma, s)?.div_ceil(t - 1) + 1,
        MatchingCase::Clamped => r_prev.min(mul(2, s)?.max(least_covering_order(stars, s))),
    };
    let mut bindings = alloc::vec![
        ("t", t),
        ("R_prev", r_prev),
        ("sigma", sigma),
        ("s", s),
        ("m_max", *stars.last().unwrap()),
    ];
    if case == MatchingCase::Clamped {
        bindings.extend(stars.iter().map(|&m| ("m", m)));
    }
    trace.push(case.rule(), &bindings, value);
    Ok((value, trace))
}

/// Dispatches on the instance kind.
pub fn ramsey_value(params: &Parameters) -> Result<(u64, DerivationTrace)> {
    if params.has_matching() {
        star_matching_ramsey(params)
    } else {
        star_ramsey(params)
    }
}
