//! Derivation traces: the chain of rule applications behind a computed value.
//!
//! Each [`Step`] names the rule that fired and the quantities it was fired
//! with. [`DerivationTrace::replay`] recomputes every step from its recorded
//! inputs alone, so a trace read back from text can be re-checked without the
//! formula engine.

use alloc::vec::Vec;
use core::fmt;

/// Which closed form produced a value. Labels are stable; they appear in
/// traces and tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Two stars: `m1 + m2 - eps`, eps = 1 iff both sizes are even.
    TwoStarBase,
    /// The last star is at least as large as the value for the shorter
    /// family, so the value carries over unchanged.
    ReduceEquality,
    /// `x` even: value `x + 1`.
    EvenX,
    /// `x` odd, `h >= 1`: value `x + 1`.
    OddXSlack,
    /// `x` odd, `h = 0`, every size odd: value `x + 1`.
    OddXExact,
    /// `x` odd, `h = 0`, some size even: value `x`.
    OddXParity,
    /// Matching with `2s >= R_{t-1}`: value `R_{t-1}`.
    MatchingReduce,
    /// Matching, small `Σ`: value `2s`.
    MatchingDouble,
    /// Matching, large `Σ`: value `ceil((Σ + s) / (t - 1)) + 1`.
    MatchingCeiling,
    /// Matching, large `Σ`, but some `m_i > ceil((Σ + s) / (t - 1))`:
    /// value `min(R_{t-1}, max(2s, L))` with `L` the least `p` such that
    /// `Σ max(0, p - m_i) >= s`.
    MatchingClamped,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::TwoStarBase,
        Rule::ReduceEquality,
        Rule::EvenX,
        Rule::OddXSlack,
        Rule::OddXExact,
        Rule::OddXParity,
        Rule::MatchingReduce,
        Rule::MatchingDouble,
        Rule::MatchingCeiling,
        Rule::MatchingClamped,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Rule::TwoStarBase => "two-star-base",
            Rule::ReduceEquality => "reduce-equality",
            Rule::EvenX => "even-x",
            Rule::OddXSlack => "odd-x-slack",
            Rule::OddXExact => "odd-x-exact",
            Rule::OddXParity => "odd-x-parity",
            Rule::MatchingReduce => "matching-reduce",
            Rule::MatchingDouble => "matching-double",
            Rule::MatchingCeiling => "matching-ceiling",
            Rule::MatchingClamped => "matching-clamped",
        }
    }

    pub fn from_label(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.label() == s)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub bindings: Vec<(&'static str, u64)>,
    pub value: u64,
}

impl Step {
    pub fn get(&self, name: &str) -> Option<u64> {
        self.bindings
            .iter()
            .find(|(k, _)| *k == name)
            .map(|&(_, v)| v)
    }

    /// Every value bound to `name`, in order (star sizes repeat `"m"`).
    pub fn get_all<'a>(&'a self, name: &'a str) -> impl Iterator<Item = u64> + 'a {
        self.bindings
            .iter()
            .filter(move |(k, _)| *k == name)
            .map(|&(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace {
    pub steps: Vec<Step>,
    pub result: u64,
}

impl DerivationTrace {
    pub(crate) fn new() -> Self {
        DerivationTrace {
            steps: Vec::new(),
            result: 0,
        }
    }

    pub(crate) fn push(&mut self, rule: Rule, bindings: &[(&'static str, u64)], value: u64) {
        self.steps.push(Step {
            rule,
            bindings: bindings.to_vec(),
            value,
        });
        self.result = value;
    }

    /// The rule of the final step, i.e. the one that decided the value.
    pub fn final_rule(&self) -> Option<Rule> {
        self.steps.last().map(|s| s.rule)
    }

    /// Recomputes every step from its bindings and the value of the step
    /// before it. Returns the final value, or `None` if any step disagrees
    /// with its inputs, its case condition, or the recorded result.
    pub fn replay(&self) -> Option<u64> {
        let mut prev: Option<u64> = None;
        for step in &self.steps {
            let v = replay_step(step, prev)?;
            if v != step.value {
                return None;
            }
            prev = Some(v);
        }
        prev.filter(|&v| v == self.result)
    }
}

fn replay_step(step: &Step, prev: Option<u64>) -> Option<u64> {
    let b = |k: &str| step.get(k);
    match step.rule {
        Rule::TwoStarBase => {
            let (m1, m2) = (b("m1")?, b("m2")?);
            let eps = u64::from(m1 % 2 == 0 && m2 % 2 == 0);
            (b("eps")? == eps && prev.is_none()).then(|| m1 + m2 - eps)
        }
        Rule::ReduceEquality => {
            let r_prev = prev?;
            (b("R_prev")? == r_prev && b("m_t")? + 1 >= r_prev).then_some(r_prev)
        }
        Rule::EvenX | Rule::OddXSlack | Rule::OddXExact | Rule::OddXParity => {
            let r_prev = prev?;
            let (sigma, t) = (b("sigma")?, b("t")?);
            if t < 3 || b("R_prev")? != r_prev || b("m_t")? + 1 >= r_prev {
                return None;
            }
            let x = (sigma + t - 1) / (t - 1);
            let h = sigma % (t - 1);
            if b("x")? != x || b("h")? != h {
                return None;
            }
            let some_even = b("some_even")? == 1;
            let ok = match step.rule {
                Rule::EvenX => x % 2 == 0,
                Rule::OddXSlack => x % 2 == 1 && h >= 1,
                Rule::OddXExact => x % 2 == 1 && h == 0 && !some_even,
                _ => x % 2 == 1 && h == 0 && some_even,
            };
            ok.then(|| {
                if step.rule == Rule::OddXParity {
                    x
                } else {
                    x + 1
                }
            })
        }
        Rule::MatchingReduce
        | Rule::MatchingDouble
        | Rule::MatchingCeiling
        | Rule::MatchingClamped => {
            let r_prev = prev?;
            let (sigma, s, t) = (b("sigma")?, b("s")?, b("t")?);
            if t < 3 || b("R_prev")? != r_prev {
                return None;
            }
            let reduce = 2 * s >= r_prev;
            let small = sigma + t < (2 * t - 3) * s + 2;
            let l = (sigma + s).div_ceil(t - 1);
            let largest = b("m_max")?;
            match step.rule {
                Rule::MatchingReduce => reduce.then_some(r_prev),
                Rule::MatchingDouble => (!reduce && small).then_some(2 * s),
                Rule::MatchingCeiling => (!reduce && !small && largest <= l).then_some(l + 1),
                _ => {
                    let stars: Vec<u64> = step.get_all("m").collect();
                    let ok =
                        !reduce && !small && largest > l && stars.iter().max() == Some(&largest);
                    ok.then(|| {
                        let floor = crate::formulas::least_covering_order(&stars, s);
                        r_prev.min((2 * s).max(floor))
                    })
                }
            }
        }
    }
}
