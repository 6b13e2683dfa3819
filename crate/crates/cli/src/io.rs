//! Text formats: coloring certificates, DOT export, derivation traces and
//! sweep tables.
//!
//! Certificate layout:
//!
//! ```text
//! ramsey-coloring v1
//! n=3 t=2
//! 0 1 1
//! 0 2 2
//! 1 2 1
//! ```
//!
//! One `u v c` line per edge of `K_n`, `u < v`, in lexicographic order.
//! Colors run over `1..=t`. Blank lines and trailing whitespace are not
//! accepted, so a file that reads back writes out byte-identical.

use std::fmt::{self, Write as _};

use ramsey_core::coloring::{edge_count, lex_edges, MAX_COLORS};
use ramsey_core::trace::Step;
use ramsey_core::{Color, Coloring, DerivationTrace, Rule};

pub const HEADER: &str = "ramsey-coloring v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReadError {
    /// The text does not follow the format. Lines count from 1.
    Parse { line: usize, message: String },
    /// Well-formed text describing an invalid coloring.
    Validation {
        line: usize,
        invariant: &'static str,
    },
}

impl fmt::Display for ReadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReadError::Parse { line, message } => {
                write!(f, "parse error at line {line}: {message}")
            }
            ReadError::Validation { line, invariant } => {
                write!(f, "invalid coloring at line {line}: violates {invariant}")
            }
        }
    }
}

impl std::error::Error for ReadError {}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = String::with_capacity(16 + 10 * edge_count(c.n()));
    out.push_str(HEADER);
    out.push('\n');
    writeln!(out, "n={} t={}", c.n(), c.t()).unwrap();
    for (u, v, col) in c.edges() {
        writeln!(out, "{u} {v} {col}").unwrap();
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> ReadError {
    ReadError::Parse {
        line,
        message: message.into(),
    }
}

fn field(line: usize, tok: Option<&str>, key: &str) -> Result<usize, ReadError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {key}=")))?;
    let value = tok
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected {key}=<int>, found {tok:?}")))?;
    value.parse().map_err(|_| {
        parse_err(
            line,
            format!("{key} is not a non-negative integer: {value:?}"),
        )
    })
}

/// Parses a certificate. Nothing is built until every line has been checked.
pub fn read_coloring(text: &str) -> Result<Coloring, ReadError> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| parse_err(text.lines().count().max(1), "missing final newline"))?;
    let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));

    match lines.next() {
        Some((_, HEADER)) => {}
        Some((l, other)) => {
            return Err(parse_err(
                l,
                format!("expected {HEADER:?}, found {other:?}"),
            ))
        }
        None => return Err(parse_err(1, "empty file")),
    }
    let (l, dims) = lines
        .next()
        .ok_or_else(|| parse_err(2, "missing n=<n> t=<t> line"))?;
    let mut toks = dims.split(' ');
    let n = field(l, toks.next(), "n")?;
    let t = field(l, toks.next(), "t")?;
    if toks.next().is_some() {
        return Err(parse_err(l, "trailing fields after t="));
    }
    if n == 0 {
        return Err(ReadError::Validation {
            line: l,
            invariant: "n >= 1",
        });
    }
    if !(1..=MAX_COLORS).contains(&t) {
        return Err(ReadError::Validation {
            line: l,
            invariant: "1 <= t <= 64",
        });
    }

    let mut colors: Vec<Color> = Vec::with_capacity(edge_count(n));
    let mut expected = lex_edges(n);
    for (l, text) in lines.by_ref() {
        let Some((eu, ev)) = expected.next() else {
            return Err(parse_err(
                l,
                format!("extra line {text:?} after the last edge"),
            ));
        };
        let nums: Vec<&str> = text.split(' ').collect();
        let [u, v, c] = nums[..] else {
            return Err(parse_err(l, format!("expected `u v c`, found {text:?}")));
        };
        let num = |s: &str| -> Result<usize, ReadError> {
            if s.len() > 1 && s.starts_with('0') {
                return Err(parse_err(l, format!("leading zero in {s:?}")));
            }
            s.parse()
                .map_err(|_| parse_err(l, format!("not a non-negative integer: {s:?}")))
        };
        let (u, v, c) = (num(u)?, num(v)?, num(c)?);
        if (u, v) != (eu, ev) {
            let what = if u >= n || v >= n {
                "vertex out of range"
            } else if u >= v {
                "edge not written as u < v"
            } else if (u, v) < (eu, ev) {
                "duplicate or out-of-order edge"
            } else {
                "gap in edge list"
            };
            return Err(parse_err(
                l,
                format!("{what}: expected edge ({eu},{ev}), found ({u},{v})"),
            ));
        }
        if c == 0 || c > t {
            return Err(ReadError::Validation {
                line: l,
                invariant: "every color lies in 1..=t",
            });
        }
        colors.push(c as Color);
    }
    if let Some((eu, ev)) = expected.next() {
        let last = body.split('\n').count();
        return Err(parse_err(last + 1, format!("missing edge ({eu},{ev})")));
    }
    Coloring::from_lex_colors(n, t, colors).map_err(|_| ReadError::Validation {
        line: 2,
        invariant: "edge count n(n-1)/2",
    })
}

/// DOT edge colors by color index: 1 red, 2 blue, 3 green, 4 orange,
/// 5 purple, 6 brown, 7 magenta, 8 cyan. Higher indices reuse the list
/// with `style=dashed` (9..16), then `style=dotted` (17..).
pub const DOT_PALETTE: [&str; 8] = [
    "red", "blue", "green", "orange", "purple", "brown", "magenta", "cyan",
];

fn dot_style(c: Color) -> (&'static str, &'static str) {
    let i = c as usize - 1;
    let style = match i / DOT_PALETTE.len() {
        0 => "solid",
        1 => "dashed",
        _ => "dotted",
    };
    (DOT_PALETTE[i % DOT_PALETTE.len()], style)
}

pub fn export_dot(c: &Coloring) -> String {
    let mut out = String::new();
    writeln!(out, "graph K{} {{", c.n()).unwrap();
    for v in 0..c.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v, col) in c.edges() {
        let (color, style) = dot_style(col);
        writeln!(
            out,
            "  {u} -- {v} [color={color}, style={style}, label=\"{col}\"];"
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// One line per step: the quoted rule label, then `name=value` bindings,
/// then `=> value`.
///
/// ```text
/// step "two-star-base" m1=3 m2=3 eps=0 => 6
/// step "even-x" t=3 R_prev=6 m_t=3 sigma=6 x=4 h=0 q=3 some_even=0 => 5
/// result 5
/// ```
pub fn write_trace(trace: &DerivationTrace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        write!(out, "step \"{}\"", step.rule.label()).unwrap();
        for (k, v) in &step.bindings {
            write!(out, " {k}={v}").unwrap();
        }
        writeln!(out, " => {}", step.value).unwrap();
    }
    writeln!(out, "result {}", trace.result).unwrap();
    out
}

const BINDING_NAMES: [&str; 14] = [
    "m1",
    "m2",
    "eps",
    "t",
    "R_prev",
    "m_t",
    "sigma",
    "x",
    "h",
    "q",
    "some_even",
    "s",
    "m_max",
    "m",
];

pub fn read_trace(text: &str) -> Result<DerivationTrace, ReadError> {
    let mut steps = Vec::new();
    let mut result = None;
    for (i, line) in text.lines().enumerate() {
        let l = i + 1;
        if result.is_some() {
            return Err(parse_err(l, "line after result"));
        }
        if let Some(r) = line.strip_prefix("result ") {
            result = Some(r.parse().map_err(|_| parse_err(l, "bad result value"))?);
            continue;
        }
        let rest = line
            .strip_prefix("step \"")
            .ok_or_else(|| parse_err(l, "expected `step` or `result`"))?;
        let (label, rest) = rest
            .split_once('"')
            .ok_or_else(|| parse_err(l, "unterminated rule label"))?;
        let rule = Rule::from_label(label)
            .ok_or_else(|| parse_err(l, format!("unknown rule {label:?}")))?;
        let (binds, value) = rest
            .rsplit_once(" => ")
            .ok_or_else(|| parse_err(l, "missing `=> value`"))?;
        let value = value.parse().map_err(|_| parse_err(l, "bad step value"))?;
        let mut bindings = Vec::new();
        for tok in binds.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(l, format!("bad binding {tok:?}")))?;
            let k = BINDING_NAMES
                .iter()
                .find(|&&n| n == k)
                .ok_or_else(|| parse_err(l, format!("unknown binding {k:?}")))?;
            let v = v
                .parse()
                .map_err(|_| parse_err(l, format!("bad value in {tok:?}")))?;
            bindings.push((*k, v));
        }
        steps.push(Step {
            rule,
            bindings,
            value,
        });
    }
    let result =
        result.ok_or_else(|| parse_err(text.lines().count() + 1, "missing result line"))?;
    Ok(DerivationTrace { steps, result })
}

/// Agreement column of a sweep table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleCheck {
    Unchecked,
    Ok,
    Mismatch,
    /// The oracle stopped at its cap or budget before deciding.
    Inexact,
}

impl OracleCheck {
    pub fn label(self) -> &'static str {
        match self {
            OracleCheck::Unchecked => "unchecked",
            OracleCheck::Ok => "ok",
            OracleCheck::Mismatch => "mismatch",
            OracleCheck::Inexact => "inexact",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub t: usize,
    pub stars: Vec<u64>,
    pub matching: Option<u64>,
    pub value: u64,
    pub rule: Rule,
    pub oracle: OracleCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmptyTable;

impl fmt::Display for EmptyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("empty sweep: no instances in range")
    }
}

impl std::error::Error for EmptyTable {}

pub const TABLE_HEADER: &str = "t,stars,s,R,rule,oracle";

/// CSV, `,`-delimited, unquoted. Stars are joined with `:` and a missing
/// matching is written `-`.
pub fn emit_table(rows: &[TableRow]) -> Result<String, EmptyTable> {
    if rows.is_empty() {
        return Err(EmptyTable);
    }
    let mut out = String::new();
    out.push_str(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        let stars: Vec<String> = r.stars.iter().map(u64::to_string).collect();
        let s = r
            .matching
            .map_or_else(|| "-".to_string(), |s| s.to_string());
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.t,
            stars.join(":"),
            s,
            r.value,
            r.rule.label(),
            r.oracle.label()
        )
        .unwrap();
    }
    Ok(out)
}
