//! Extremal colorings certifying the lower bounds.
//!
//! Every builder here is a candidate generator: its output goes through
//! [`checker::coloring_arrives`] before it is returned, and a rejection is a
//! hard [`ConstructionError::InvariantViolated`], never repaired.
//!
//! All colorings are built for the sorted instance (star `i` misses color
//! `i`, the matching misses color `t`). Use [`Parameters::denormalize`] to
//! translate back to the user's order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::checker::{self, Verdict};
use crate::coloring::{Color, Coloring, ColoringError};
use crate::factorization::{near_one_factorization, one_factorization, regular_circulant};
use crate::formulas::{self, FormulaError, MatchingCase};
use crate::params::Parameters;
use crate::trace::Rule;

/// Which builder produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Two stars: a regular circulant in color 1, the rest in color 2.
    TwoStarCirculant,
    /// The shorter family's witness with the last color unused.
    Reduced,
    /// Grouped 1-factorization of `K_x`, `x` even.
    LowerStarEven,
    /// Near-1-factorization of `K_x`, `x` odd with slack `h >= 1`.
    NearFactorSlack,
    /// Near-1-factorization of `K_x` with exact color degrees.
    NearFactorExact,
    /// Grouped 1-factorization of `K_{x-1}` when `K_x` has no witness.
    LowerStarParity,
    /// Matching instance reusing the star witness on `R_{t-1} - 1` vertices.
    MatchingReduced,
    /// Matching instance on `2s - 1` vertices.
    MatchingDouble,
    /// Matching instance from the class partition on `l` vertices.
    MatchingPartition,
}

impl Construction {
    pub fn label(self) -> &'static str {
        match self {
            Construction::TwoStarCirculant => "two-star-circulant",
            Construction::Reduced => "reduced-witness",
            Construction::LowerStarEven => "lowerstar-even",
            Construction::NearFactorSlack => "near-factor-slack",
            Construction::NearFactorExact => "near-factor-exact",
            Construction::LowerStarParity => "lowerstar-parity",
            Construction::MatchingReduced => "matching-reduced",
            Construction::MatchingDouble => "matching-double",
            Construction::MatchingPartition => "matching-partition",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionError {
    /// The builder's preconditions do not hold for this instance.
    Precondition(&'static str),
    /// The counting the builder relies on fails.
    Infeasible(&'static str),
    /// The checker found a target in the built coloring.
    InvariantViolated {
        construction: Construction,
        target: usize,
    },
    /// The built coloring has the wrong order for the formula value.
    WrongOrder {
        construction: Construction,
        expected: usize,
        found: usize,
    },
    Formula(FormulaError),
    Coloring(ColoringError),
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::Precondition(what) => write!(f, "precondition failed: {what}"),
            ConstructionError::Infeasible(what) => write!(f, "construction infeasible: {what}"),
            ConstructionError::InvariantViolated {
                construction,
                target,
            } => write!(f, "{construction} coloring contains target {}", target + 1),
            ConstructionError::WrongOrder {
                construction,
                expected,
                found,
            } => write!(f, "{construction} built K_{found}, expected K_{expected}"),
            ConstructionError::Formula(e) => write!(f, "{e}"),
            ConstructionError::Coloring(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConstructionError {}

impl From<FormulaError> for ConstructionError {
    fn from(e: FormulaError) -> Self {
        ConstructionError::Formula(e)
    }
}

impl From<ColoringError> for ConstructionError {
    fn from(e: ColoringError) -> Self {
        ConstructionError::Coloring(e)
    }
}

type Result<T> = core::result::Result<T, ConstructionError>;

/// A certified coloring of `K_{value-1}` for the sorted instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub coloring: Coloring,
    pub construction: Construction,
    pub value: u64,
}

fn certify(c: Coloring, params: &Parameters, construction: Construction) -> Result<Coloring> {
    match checker::coloring_arrives(&c, &params.targets()) {
        Verdict::Avoids => Ok(c),
        Verdict::Arrives { target, .. } => Err(ConstructionError::InvariantViolated {
            construction,
            target,
        }),
    }
}

fn stars_only(params: &Parameters) -> Result<&[u64]> {
    if params.has_matching() {
        Err(ConstructionError::Precondition(
            "expected an all-stars instance",
        ))
    } else {
        Ok(params.stars())
    }
}

/// `K_{m1+m2-1-eps}` with a `(m2-1)`-regular color-1 subgraph.
fn two_star_coloring(m1: u64, m2: u64) -> Result<Coloring> {
    let (value, _) = formulas::star_ramsey_base(m1, m2)?;
    let n = (value - 1) as usize;
    let d = (m2 - 1) as usize;
    let edges = regular_circulant(n, d)
        .map_err(|_| ConstructionError::Infeasible("no regular graph for the two-star witness"))?;
    let mut c = Coloring::uniform(n, 2, 2)?;
    for (u, v) in edges {
        c.set(u, v, 1);
    }
    Ok(c)
}

/// `R_{t-1} - (m_t + 1)`: the counting value applies when this is `>= 0`,
/// and the dispatcher prefers the reduction unless it is `> 0`.
fn reduction_gap(stars: &[u64]) -> Result<Option<i128>> {
    let t = stars.len();
    if t < 3 {
        return Ok(None);
    }
    let (chain, _) = formulas::star_chain(&stars[..t - 1])?;
    Ok(Some(
        *chain.last().unwrap() as i128 - stars[t - 1] as i128 - 1,
    ))
}

fn counting_applies(stars: &[u64]) -> Result<bool> {
    Ok(reduction_gap(stars)?.is_some_and(|g| g >= 0))
}

/// Grouped 1-factorization of `K_p`, `p` even: with `r` the largest index
/// below `t` such that `p >= m_r`, colors `i <= r` each take `p - m_i`
/// matchings and color `r + 1` takes the rest, so every vertex has at least
/// `p - m_i` edges of color `i`. `p = 0` gives the empty coloring.
pub fn lowerstar_witness(params: &Parameters, p: usize) -> Result<Coloring> {
    let stars = stars_only(params)?;
    let t = params.t();
    if p % 2 == 1 {
        return Err(ConstructionError::Precondition("p must be even"));
    }
    if p == 0 {
        return Ok(Coloring::uniform(0, t, 1)?);
    }
    let r = stars[..t - 1]
        .iter()
        .rposition(|&m| m <= p as u64)
        .map_or(0, |i| i + 1);
    let demands: Vec<usize> = stars[..r].iter().map(|&m| p - m as usize).collect();
    if demands.iter().sum::<usize>() > p - 1 {
        return Err(ConstructionError::Infeasible(
            "color demands exceed the p-1 matchings of K_p",
        ));
    }
    let fact = one_factorization(p).expect("p even and >= 2");
    let mut class_color = Vec::with_capacity(p - 1);
    for (i, &d) in demands.iter().enumerate() {
        class_color.extend(core::iter::repeat_n((i + 1) as Color, d));
    }
    let rest = if r == 0 { 1 } else { (r + 1) as Color };
    class_color.resize(p - 1, rest);

    let mut c = Coloring::uniform(p, t, 1)?;
    for (class, &col) in fact.classes.iter().zip(&class_color) {
        for &(u, v) in class {
            c.set(u, v, col);
        }
    }
    let construction = if p == formulas::derived_quantities(params)?.x as usize {
        Construction::LowerStarEven
    } else {
        Construction::LowerStarParity
    };
    certify(c, params, construction)
}

/// `K_x`, `x` odd, `h >= 1`. Vertices sit on a cycle: `v_1` at position 0,
/// then the class members `u_ij` (color `j` has `x - m_j` of them) in
/// lexicographic `(i, j)` order, then `v_r, v_{r-1}, ..., v_2`. The matching
/// of `u_ij` is painted `j`; the matchings of `v_1` and `v_r` give each
/// `u_ij` one more edge of color `j` (lower endpoint wins in `v_1`'s, upper
/// in `v_r`'s). Every vertex ends with at least `x - m_i` edges of color `i`.
pub fn stars_case1_witness(params: &Parameters) -> Result<Coloring> {
    let stars = stars_only(params)?;
    let t = params.t();
    let d = formulas::derived_quantities(params)?;
    let x = d.x as usize;
    if t < 3 || x.is_multiple_of(2) || d.h == 0 || !counting_applies(stars)? {
        return Err(ConstructionError::Precondition(
            "needs t >= 3, x odd, h >= 1 and m_t <= R_{t-1} - 1",
        ));
    }
    if stars.iter().any(|&m| m > x as u64) {
        return Err(ConstructionError::Infeasible("some m_i exceeds x"));
    }
    let r = (d.sigma + t as u64 - (t as u64 - 1) * d.x) as usize;
    debug_assert_eq!(r as u64, d.h + 1);

    // color of each position's matching; 0 marks a v vertex
    let members = class_members(stars, x, 1);
    if members.len() + r != x {
        return Err(ConstructionError::Infeasible("class sizes do not fill K_x"));
    }
    let mut owner: Vec<Color> = vec![0; x];
    for (pos, &(_, j)) in members.iter().enumerate() {
        owner[pos + 1] = j;
    }
    let v_1 = 0;
    let v_r = members.len() + 1;

    let near = near_one_factorization(x).expect("x odd and >= 3");
    let mut c = Coloring::uniform(x, t, t as Color)?;
    for (center, class) in near.classes.iter().enumerate() {
        for &(a, b) in class {
            let col = if owner[center] != 0 {
                owner[center]
            } else if center == v_1 || center == v_r {
                // u-v edge: the u side; u-u edge: lower (v_1) or upper (v_r) position
                match (owner[a], owner[b]) {
                    (0, 0) => t as Color,
                    (ca, 0) => ca,
                    (0, cb) => cb,
                    (ca, cb) => {
                        if (a < b) == (center == v_1) {
                            ca
                        } else {
                            cb
                        }
                    }
                }
            } else {
                t as Color
            };
            c.set(a, b, col);
        }
    }
    certify(c, params, Construction::NearFactorSlack)
}

/// `(i, j)` pairs in lexicographic order where `u_ij` exists iff
/// `step * i <= x - m_j`.
fn class_members(stars: &[u64], x: usize, step: usize) -> Vec<(usize, Color)> {
    let max_class = (x - stars[0] as usize) / step;
    let mut out = Vec::new();
    for i in 1..=max_class {
        // sizes are sorted, so the members of class i are a prefix of colors
        let n_i = stars
            .iter()
            .rposition(|&m| step * i <= x - m as usize)
            .map_or(0, |k| k + 1);
        out.extend((1..=n_i).map(|j| (i, j as Color)));
    }
    out
}

/// `K_x`, `x` odd, `h = 0`, every `m_i` odd. `v_x` sits at position 0 with
/// the classes `T_i` on one side and their mirrors `T'_i` on the other, so
/// that `v_x`'s matching pairs `u_ij` with `u'_ij`; that edge and the
/// matchings of `u_ij`, `u'_ij` are painted `j`. Every vertex then has exactly
/// `x - m_i` edges of color `i`.
pub fn stars_case2_witness(params: &Parameters) -> Result<Coloring> {
    let stars = stars_only(params)?;
    let t = params.t();
    let d = formulas::derived_quantities(params)?;
    let x = d.x as usize;
    if t < 3
        || x.is_multiple_of(2)
        || d.h != 0
        || stars.iter().any(|m| m % 2 == 0)
        || !counting_applies(stars)?
    {
        return Err(ConstructionError::Precondition(
            "needs t >= 3, x odd, h = 0, every m_i odd and m_t <= R_{t-1} - 1",
        ));
    }
    if stars.iter().any(|&m| m > x as u64) {
        return Err(ConstructionError::Infeasible("some m_i exceeds x"));
    }
    let members = class_members(stars, x, 2);
    if 2 * members.len() + 1 != x {
        return Err(ConstructionError::Infeasible("class sizes do not fill K_x"));
    }
    let mut owner: Vec<Color> = vec![0; x];
    for (k, &(_, j)) in members.iter().enumerate() {
        owner[k + 1] = j;
        owner[x - 1 - k] = j;
    }
    let near = near_one_factorization(x).expect("x odd and >= 3");
    let mut c = Coloring::uniform(x, t, t as Color)?;
    for (center, class) in near.classes.iter().enumerate() {
        for &(a, b) in class {
            let col = if center == 0 {
                debug_assert_eq!(owner[a], owner[b]);
                owner[a]
            } else {
                owner[center]
            };
            c.set(a, b, col);
        }
    }
    certify(c, params, Construction::NearFactorExact)
}

/// Witness for sorted star sizes on `stars.len()` colors, with the
/// construction that produced it.
fn star_witness(stars: &[u64]) -> Result<(Coloring, Construction)> {
    let t = stars.len();
    if t == 2 {
        let c = two_star_coloring(stars[0], stars[1])?;
        let params = Parameters::sorted_stars(stars);
        return Ok((
            certify(c, &params, Construction::TwoStarCirculant)?,
            Construction::TwoStarCirculant,
        ));
    }
    let params = Parameters::sorted_stars(stars);
    if !reduction_gap(stars)?.is_some_and(|g| g > 0) {
        let (shorter, _) = star_witness(&stars[..t - 1])?;
        let c = shorter.with_palette(t)?;
        return Ok((
            certify(c, &params, Construction::Reduced)?,
            Construction::Reduced,
        ));
    }
    let (_, rule) = formulas::counting_value(stars)?;
    let x = formulas::derived_quantities(&params)?.x as usize;
    Ok(match rule {
        Rule::EvenX => (lowerstar_witness(&params, x)?, Construction::LowerStarEven),
        Rule::OddXSlack => (stars_case1_witness(&params)?, Construction::NearFactorSlack),
        Rule::OddXExact => (stars_case2_witness(&params)?, Construction::NearFactorExact),
        Rule::OddXParity => (
            lowerstar_witness(&params, x - 1)?,
            Construction::LowerStarParity,
        ),
        _ => unreachable!("counting_value returns a counting rule"),
    })
}

/// `K_{2s-1}` for `2s < R_{t-1}` and small `Σ`: the star witness for
/// `m_1..m_{t-1}` restricted to `2s - 1` vertices, color `t` unused. No
/// matching of size `s` fits on `2s - 1` vertices.
pub fn star_matching_2s_witness(params: &Parameters) -> Result<Coloring> {
    let (case, _, _) = formulas::matching_case(params)?;
    if case != MatchingCase::Double {
        return Err(ConstructionError::Precondition(
            "needs 2s < R_{t-1} and Σ < (2t-3)s - t + 2",
        ));
    }
    restricted_star_witness(params)
}

fn restricted_star_witness(params: &Parameters) -> Result<Coloring> {
    let s = params.matching().ok_or(ConstructionError::Precondition(
        "expected a matching instance",
    ))?;
    let (base, _) = star_witness(params.stars())?;
    let k = (2 * s - 1) as usize;
    if base.n() < k {
        return Err(ConstructionError::Infeasible(
            "star witness smaller than 2s-1",
        ));
    }
    let c = base.restrict(k).with_palette(params.t())?;
    certify(c, params, Construction::MatchingDouble)
}

/// `K_l`, `l = ceil((Σ + s)/(t-1))`, for `2s < R_{t-1}` and large `Σ`.
///
/// Classes `X_i` of size `n_i = l - m_i` come first, then the anchor `x`
/// (and `y` when `z = Σ n_i` is even), then the rest `X`. A grouped
/// 1-factorization on the classes plus anchors gives every vertex there
/// `n_i` edges of color `i`; edges from `X_i` to the non-anchor rest are
/// painted `i`; everything else, including `xy`, is painted `t`. The classes
/// cover every non-`t` edge, so those edges hold at most `z <= s - 1`
/// disjoint edges.
pub fn star_matching_partition_witness(params: &Parameters) -> Result<Coloring> {
    let s = params.matching().ok_or(ConstructionError::Precondition(
        "expected a matching instance",
    ))?;
    let (case, _, sigma) = formulas::matching_case(params)?;
    if case != MatchingCase::Ceiling {
        return Err(ConstructionError::Precondition(
            "needs 2s < R_{t-1}, Σ >= (2t-3)s - t + 2 and every m_i <= l",
        ));
    }
    let l = (sigma + s).div_ceil(params.t() as u64 - 1) as usize;
    partition_coloring(params, l)
}

/// Witness when the largest star exceeds `l`. Stars larger than the order
/// get empty classes, so with `P = min(R_{t-1}, max(2s, L))` either
/// `P = 2s` and the restricted star witness works, or `K_{P-1}` takes the
/// partition layout with `n_i = max(0, P - 1 - m_i)`, which sum to at most
/// `s - 1` because `P - 1 < L`.
pub fn star_matching_clamped_witness(params: &Parameters) -> Result<(Coloring, Construction)> {
    let s = params.matching().ok_or(ConstructionError::Precondition(
        "expected a matching instance",
    ))?;
    let (case, _, _) = formulas::matching_case(params)?;
    if case != MatchingCase::Clamped {
        return Err(ConstructionError::Precondition(
            "needs 2s < R_{t-1}, Σ >= (2t-3)s - t + 2 and some m_i > l",
        ));
    }
    let (value, _) = formulas::star_matching_ramsey(params)?;
    if value == 2 * s {
        Ok((
            restricted_star_witness(params)?,
            Construction::MatchingDouble,
        ))
    } else {
        let c = partition_coloring(params, (value - 1) as usize)?;
        Ok((c, Construction::MatchingPartition))
    }
}

fn partition_coloring(params: &Parameters, l: usize) -> Result<Coloring> {
    let s = params.matching().expect("matching instance") as usize;
    let t = params.t();
    let stars = params.stars();
    let sizes: Vec<usize> = stars
        .iter()
        .map(|&m| l.saturating_sub(m as usize))
        .collect();
    let z: usize = sizes.iter().sum();
    if z >= s {
        return Err(ConstructionError::Infeasible(
            "classes too large for the matching bound",
        ));
    }
    let anchors = if z % 2 == 1 { 1 } else { 2 };
    let core_order = z + anchors;
    if core_order > l {
        return Err(ConstructionError::Infeasible(
            "not enough vertices for the anchors",
        ));
    }

    // class of each vertex: Some(i) for X_i, None for anchors and the rest
    let mut class: Vec<Option<usize>> = vec![None; l];
    let mut pos = 0;
    for (i, &size) in sizes.iter().enumerate() {
        class[pos..pos + size].fill(Some(i));
        pos += size;
    }

    let mut c = Coloring::uniform(l, t, t as Color)?;
    let fact = one_factorization(core_order).expect("core order even and >= 2");
    let mut order: Vec<usize> = (0..fact.classes.len()).collect();
    let mut demands = sizes.clone();
    if anchors == 2 {
        // the class holding xy goes to color 1, which takes one extra class
        let xy = fact.class_of(z, z + 1).expect("edge present");
        order.retain(|&k| k != xy);
        order.insert(0, xy);
        demands[0] += 1;
    }
    let mut colors = Vec::with_capacity(order.len());
    for (i, &d) in demands.iter().enumerate() {
        colors.extend(core::iter::repeat_n((i + 1) as Color, d));
    }
    debug_assert_eq!(colors.len(), order.len());
    for (&k, &col) in order.iter().zip(&colors) {
        for &(u, v) in &fact.classes[k] {
            c.set(u, v, col);
        }
    }
    if anchors == 2 {
        c.set(z, z + 1, t as Color);
    }
    for (u, &i) in class.iter().enumerate().take(z) {
        let i = i.expect("class vertex");
        for w in core_order..l {
            c.set(u, w, (i + 1) as Color);
        }
    }
    certify(c, params, Construction::MatchingPartition)
}

/// Builds and certifies a coloring of `K_{R-1}` for any valid instance.
pub fn build_witness(params: &Parameters) -> Result<Witness> {
    let (value, _) = formulas::ramsey_value(params)?;
    let t = params.t();
    let (coloring, construction) = match params.matching() {
        None => {
            let (c, how) = star_witness(params.stars())?;
            (c.with_palette(t)?, how)
        }
        Some(_) => match formulas::matching_case(params)?.0 {
            MatchingCase::Reduce => {
                let (c, _) = star_witness(params.stars())?;
                (c.with_palette(t)?, Construction::MatchingReduced)
            }
            MatchingCase::Double => (
                star_matching_2s_witness(params)?,
                Construction::MatchingDouble,
            ),
            MatchingCase::Ceiling => (
                star_matching_partition_witness(params)?,
                Construction::MatchingPartition,
            ),
            MatchingCase::Clamped => star_matching_clamped_witness(params)?,
        },
    };
    let coloring = certify(coloring, params, construction)?;
    if coloring.n() as u64 + 1 != value {
        return Err(ConstructionError::WrongOrder {
            construction,
            expected: (value - 1) as usize,
            found: coloring.n(),
        });
    }
    Ok(Witness {
        coloring,
        construction,
        value,
    })
}
