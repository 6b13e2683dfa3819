use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Edge colors are 1-based; `0` never appears in a finished coloring.
pub type Color = u8;

/// Largest palette a [`Coloring`] or [`ColorSet`] can carry.
pub const MAX_COLORS: usize = 64;

/// A set of colors drawn from `1..=MAX_COLORS`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const fn empty() -> Self {
        ColorSet(0)
    }

    /// All colors `1..=t`.
    pub fn full(t: usize) -> Self {
        assert!(t <= MAX_COLORS);
        if t == MAX_COLORS {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << t) - 1)
        }
    }

    /// All colors `1..=t` except `missing`.
    pub fn all_but(t: usize, missing: Color) -> Self {
        Self::full(t).without(missing)
    }

    pub fn with(self, c: Color) -> Self {
        debug_assert!(c >= 1 && (c as usize) <= MAX_COLORS);
        ColorSet(self.0 | (1u64 << (c - 1)))
    }

    pub fn without(self, c: Color) -> Self {
        if c == 0 || c as usize > MAX_COLORS {
            return self;
        }
        ColorSet(self.0 & !(1u64 << (c - 1)))
    }

    #[inline]
    pub fn contains(self, c: Color) -> bool {
        c >= 1 && (c as usize) <= MAX_COLORS && self.0 & (1u64 << (c - 1)) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        (1..=MAX_COLORS as u16)
            .map(|c| c as Color)
            .filter(move |&c| self.contains(c))
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        iter.into_iter().fold(ColorSet::empty(), ColorSet::with)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringError {
    PaletteSize(usize),
    ColorOutOfRange { u: usize, v: usize, color: Color },
    EdgeCount { expected: usize, found: usize },
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::PaletteSize(t) => {
                write!(f, "palette size {t} outside 1..={MAX_COLORS}")
            }
            ColoringError::ColorOutOfRange { u, v, color } => {
                write!(f, "edge ({u},{v}) has color {color} outside the palette")
            }
            ColoringError::EdgeCount { expected, found } => {
                write!(f, "expected {expected} edge colors, found {found}")
            }
        }
    }
}

impl core::error::Error for ColoringError {}

/// Number of edges of `K_n`.
#[inline]
pub const fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `{u, v}` in lexicographic edge order `(0,1), (0,2), ..., (n-2,n-1)`.
#[inline]
pub fn edge_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    debug_assert!(a != b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Every edge of `K_n` in lexicographic order.
pub fn lex_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// A total assignment of colors `1..=t` to the edges of `K_n`.
///
/// Colors are kept in an upper-triangular array indexed in lexicographic
/// edge order, which is also the order of the certificate format.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    t: usize,
    colors: Vec<Color>,
}

impl Coloring {
    /// `K_n` with every edge painted `fill`.
    pub fn uniform(n: usize, t: usize, fill: Color) -> Result<Self, ColoringError> {
        Self::from_fn(n, t, |_, _| fill)
    }

    pub fn from_fn<F>(n: usize, t: usize, mut color: F) -> Result<Self, ColoringError>
    where
        F: FnMut(usize, usize) -> Color,
    {
        let colors = lex_edges(n).map(|(u, v)| color(u, v)).collect();
        Self::from_lex_colors(n, t, colors)
    }

    /// Builds a coloring from colors listed in lexicographic edge order.
    pub fn from_lex_colors(n: usize, t: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if t == 0 || t > MAX_COLORS {
            return Err(ColoringError::PaletteSize(t));
        }
        if colors.len() != edge_count(n) {
            return Err(ColoringError::EdgeCount {
                expected: edge_count(n),
                found: colors.len(),
            });
        }
        if let Some(((u, v), &color)) = lex_edges(n)
            .zip(colors.iter())
            .find(|(_, &c)| c == 0 || c as usize > t)
        {
            return Err(ColoringError::ColorOutOfRange { u, v, color });
        }
        Ok(Coloring { n, t, colors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Palette size; some colors may be unused.
    pub fn t(&self) -> usize {
        self.t
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        self.colors[edge_index(self.n, u, v)]
    }

    pub fn set(&mut self, u: usize, v: usize, c: Color) {
        assert!(
            c >= 1 && c as usize <= self.t,
            "color {c} outside 1..={}",
            self.t
        );
        let i = edge_index(self.n, u, v);
        self.colors[i] = c;
    }

    /// Colors in lexicographic edge order.
    pub fn lex_colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        lex_edges(self.n)
            .zip(self.colors.iter())
            .map(|((u, v), &c)| (u, v, c))
    }

    /// Number of edges at `v` whose color lies in `allowed`.
    pub fn degree_in(&self, v: usize, allowed: ColorSet) -> usize {
        (0..self.n)
            .filter(|&w| w != v && allowed.contains(self.color(v, w)))
            .count()
    }

    /// `counts[v][c]` is the number of edges of color `c` at `v` (index 0 unused).
    pub fn color_degrees(&self) -> Vec<Vec<usize>> {
        let mut counts = vec![vec![0usize; self.t + 1]; self.n];
        for (u, v, c) in self.edges() {
            counts[u][c as usize] += 1;
            counts[v][c as usize] += 1;
        }
        counts
    }

    /// Same edge colors read against a palette of `t` colors.
    pub fn with_palette(&self, t: usize) -> Result<Self, ColoringError> {
        Self::from_lex_colors(self.n, t, self.colors.clone())
    }

    /// Induced coloring on vertices `0..k`.
    pub fn restrict(&self, k: usize) -> Self {
        assert!(k <= self.n);
        let colors = lex_edges(k).map(|(u, v)| self.color(u, v)).collect();
        Coloring {
            n: k,
            t: self.t,
            colors,
        }
    }

    /// Applies `map` to every edge color. The result must stay inside `1..=t`.
    pub fn recolor<F>(&self, t: usize, mut map: F) -> Result<Self, ColoringError>
    where
        F: FnMut(Color) -> Color,
    {
        Self::from_lex_colors(self.n, t, self.colors.iter().map(|&c| map(c)).collect())
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring(n={}, t={}, ", self.n, self.t)?;
        for (u, v, c) in self.edges() {
            write!(f, "{u}{v}:{c} ")?;
        }
        write!(f, ")")
    }
}
