//! Step words, base paths and the geometric predicates built on them.
//!
//! Heights are compared through a [`HeightProfile`]: one doubled-integer
//! sample per half-integer horizontal position. A diagonal step over column
//! `x` starting at height `y` contributes `2y + 1` at position `x + 1/2`, so
//! a diagonal step sitting in the square under a peak of the base path is
//! exactly half a unit below it and fails the small-path test while passing
//! the large-path test.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// A unit step of a lattice path.
///
/// The variant order (`D < E < N`) is the canonical alphabet order used by
/// every enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// Diagonal step `(1, 1)`.
    D,
    /// East step `(1, 0)`.
    E,
    /// North step `(0, 1)`.
    N,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::D, Step::E, Step::N];

    pub fn displacement(self) -> (usize, usize) {
        match self {
            Step::D => (1, 1),
            Step::E => (1, 0),
            Step::N => (0, 1),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::D => 'D',
            Step::E => 'E',
            Step::N => 'N',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c.to_ascii_uppercase() {
            'D' => Some(Step::D),
            'E' => Some(Step::E),
            'N' => Some(Step::N),
            _ => None,
        }
    }

    /// True for the steps that advance horizontally.
    pub fn is_horizontal(self) -> bool {
        matches!(self, Step::E | Step::D)
    }
}

/// A lattice point; ordered row-major (by `y`, then `x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPoint {
    pub x: usize,
    pub y: usize,
}

impl GridPoint {
    pub const fn new(x: usize, y: usize) -> Self {
        GridPoint { x, y }
    }
}

impl Ord for GridPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for GridPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(usize, usize)> for GridPoint {
    fn from((x, y): (usize, usize)) -> Self {
        GridPoint { x, y }
    }
}

/// A finite word over `{N, E, D}`, read as a path from the origin.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StepWord(Vec<Step>);

impl StepWord {
    pub fn new(steps: Vec<Step>) -> Self {
        StepWord(steps)
    }

    pub fn empty() -> Self {
        StepWord(Vec::new())
    }

    /// `N^a E^b`.
    pub fn top_path(a: usize, b: usize) -> Self {
        let mut steps = vec![Step::N; a];
        steps.extend(std::iter::repeat_n(Step::E, b));
        StepWord(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of north plus diagonal steps.
    pub fn height(&self) -> usize {
        self.0.iter().filter(|s| matches!(s, Step::N | Step::D)).count()
    }

    /// Number of east plus diagonal steps.
    pub fn width(&self) -> usize {
        self.0.iter().filter(|s| s.is_horizontal()).count()
    }

    pub fn endpoint(&self) -> GridPoint {
        GridPoint::new(self.width(), self.height())
    }

    pub fn diag_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == Step::D).count()
    }

    pub fn has_diagonal(&self) -> bool {
        self.0.contains(&Step::D)
    }

    /// The `len + 1` lattice points visited, starting at the origin.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let (mut x, mut y) = (0, 0);
        out.push(GridPoint::new(x, y));
        for s in &self.0 {
            let (dx, dy) = s.displacement();
            x += dx;
            y += dy;
            out.push(GridPoint::new(x, y));
        }
        out
    }

    /// Apex of every consecutive `NE` pair.
    pub fn peaks(&self) -> Vec<GridPoint> {
        self.pairs(Step::N, Step::E)
    }

    /// Corner of every consecutive `EN` pair.
    pub fn valleys(&self) -> Vec<GridPoint> {
        self.pairs(Step::E, Step::N)
    }

    /// Index of the `E` step of every valley.
    pub fn valley_indices(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Step::E && w[1] == Step::N)
            .map(|(i, _)| i)
            .collect()
    }

    fn pairs(&self, first: Step, second: Step) -> Vec<GridPoint> {
        let pts = self.points();
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == first && w[1] == second)
            .map(|(i, _)| pts[i + 1])
            .collect()
    }

    /// Builds the word visiting the given points in order; consecutive points
    /// must differ by a single step displacement.
    pub fn from_points(points: &[GridPoint]) -> Result<StepWord> {
        let mut steps = Vec::with_capacity(points.len().saturating_sub(1));
        for w in points.windows(2) {
            let (p, q) = (w[0], w[1]);
            let step = match (q.x.checked_sub(p.x), q.y.checked_sub(p.y)) {
                (Some(0), Some(1)) => Step::N,
                (Some(1), Some(0)) => Step::E,
                (Some(1), Some(1)) => Step::D,
                _ => return domain(format!("points {p} and {q} are not one step apart")),
            };
            steps.push(step);
        }
        Ok(StepWord(steps))
    }
}

impl fmt::Display for StepWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for StepWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_word(text)
    }
}

impl Serialize for StepWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StepWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_word(&text).map_err(serde::de::Error::custom)
    }
}

/// Parses a word over `{N, E, D}` (case-insensitive). Error positions are 1-based.
pub fn parse_word(text: &str) -> Result<StepWord> {
    text.chars()
        .enumerate()
        .map(|(i, c)| Step::from_char(c).ok_or(Error::Parse { position: i + 1, found: c }))
        .collect::<Result<Vec<_>>>()
        .map(StepWord)
}

/// Doubled heights sampled at `x = 0, 1/2, 1, ..., b`.
///
/// At an integer position the sample is the height at which the path leaves
/// that vertical line (the top of its vertical run there).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightProfile {
    samples: Vec<usize>,
}

impl HeightProfile {
    pub fn of(word: &StepWord) -> Self {
        let b = word.width();
        let mut samples = vec![0; 2 * b + 1];
        let (mut x, mut y) = (0usize, 0usize);
        for &s in word.steps() {
            match s {
                Step::N => y += 1,
                Step::E => {
                    samples[2 * x] = 2 * y;
                    samples[2 * x + 1] = 2 * y;
                    x += 1;
                }
                Step::D => {
                    samples[2 * x] = 2 * y;
                    samples[2 * x + 1] = 2 * y + 1;
                    x += 1;
                    y += 1;
                }
            }
        }
        samples[2 * b] = 2 * y;
        HeightProfile { samples }
    }

    pub fn samples(&self) -> &[usize] {
        &self.samples
    }

    /// Doubled height over the middle of column `x`.
    pub fn column_mid(&self, x: usize) -> usize {
        self.samples[2 * x + 1]
    }

    pub fn width(&self) -> usize {
        self.samples.len() / 2
    }

    /// Pointwise dominance.
    pub fn dominates(&self, other: &HeightProfile) -> bool {
        self.samples.len() == other.samples.len()
            && self.samples.iter().zip(&other.samples).all(|(u, l)| u >= l)
    }
}

pub fn height_profile(word: &StepWord) -> HeightProfile {
    HeightProfile::of(word)
}

fn check_endpoints(u: &StepWord, l: &StepWord) -> Result<()> {
    let (pu, pl) = (u.endpoint(), l.endpoint());
    if pu != pl {
        return Err(Error::EndpointMismatch(pu.x, pu.y, pl.x, pl.y));
    }
    Ok(())
}

/// True iff `upper` never dips below `lower`. Both must end at the same point.
pub fn weakly_above(upper: &StepWord, lower: &StepWord) -> Result<bool> {
    check_endpoints(upper, lower)?;
    Ok(HeightProfile::of(upper).dominates(&HeightProfile::of(lower)))
}

/// A north/east path `ν` bounding every object from below.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasePath {
    word: StepWord,
    // leftmost / rightmost x of the path on each row 0..=a
    row_start: Vec<usize>,
    row_end: Vec<usize>,
}

impl BasePath {
    pub fn new(word: StepWord) -> Result<Self> {
        if word.has_diagonal() {
            return domain(format!("base path {word} contains a diagonal step"));
        }
        let a = word.height();
        let mut row_start = vec![usize::MAX; a + 1];
        let mut row_end = vec![0; a + 1];
        for p in word.points() {
            row_start[p.y] = row_start[p.y].min(p.x);
            row_end[p.y] = row_end[p.y].max(p.x);
        }
        Ok(BasePath { word, row_start, row_end })
    }

    /// Lowest north/east path from `(0,0)` to `(b,a)` weakly above the
    /// straight segment joining them.
    pub fn rational(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return domain("rational base path needs a >= 1 and b >= 1");
        }
        let mut steps = Vec::with_capacity(a + b);
        let mut y = 0;
        for k in 0..b {
            // column k must sit at height >= (k+1)a/b
            let h = ((k + 1) * a).div_ceil(b);
            while y < h {
                steps.push(Step::N);
                y += 1;
            }
            steps.push(Step::E);
        }
        while y < a {
            steps.push(Step::N);
            y += 1;
        }
        BasePath::new(StepWord(steps))
    }

    /// Parses either a raw N/E word or a rational shorthand `a/b`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some((a, b)) = spec.split_once('/') {
            let a: usize = a.trim().parse().map_err(|_| Error::BadSpecifier(spec.into()))?;
            let b: usize = b.trim().parse().map_err(|_| Error::BadSpecifier(spec.into()))?;
            return BasePath::rational(a, b);
        }
        BasePath::new(parse_word(spec)?)
    }

    pub fn word(&self) -> &StepWord {
        &self.word
    }

    /// Number of north steps.
    pub fn a(&self) -> usize {
        self.row_start.len() - 1
    }

    /// Number of east steps.
    pub fn b(&self) -> usize {
        self.word.len() - self.a()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn starts_north_ends_east(&self) -> bool {
        matches!(self.word.steps().first(), Some(Step::N))
            && matches!(self.word.steps().last(), Some(Step::E))
    }

    /// Rightmost x of the region above `ν` on row `y`.
    pub fn row_end(&self, y: usize) -> usize {
        self.row_end[y]
    }

    /// Leftmost x of `ν` itself on row `y`.
    pub fn row_start(&self, y: usize) -> usize {
        self.row_start[y]
    }

    /// Membership of a lattice point in the region `R_ν` weakly above `ν`.
    pub fn contains(&self, p: GridPoint) -> bool {
        p.y <= self.a() && p.x <= self.row_end[p.y]
    }

    /// True iff `p` is strictly above `ν` (above the top of `ν`'s run at `p.x`).
    pub fn strictly_above(&self, p: GridPoint) -> bool {
        p.y <= self.a() && p.x < self.row_start[p.y]
    }

    /// Number of lattice points of `R_ν` on row `y`.
    pub fn row_len(&self, y: usize) -> usize {
        self.row_end[y] + 1
    }

    /// All lattice points of `R_ν`, row-major.
    pub fn region_points(&self) -> Vec<GridPoint> {
        (0..=self.a())
            .flat_map(|y| (0..=self.row_end[y]).map(move |x| GridPoint::new(x, y)))
            .collect()
    }

    pub fn peaks(&self) -> Vec<GridPoint> {
        self.word.peaks()
    }

    pub fn valleys(&self) -> Vec<GridPoint> {
        self.word.valleys()
    }

    /// Whether `p` is the apex of a peak of `ν`.
    pub fn is_peak(&self, p: GridPoint) -> bool {
        p.y >= 1 && p.y <= self.a() && self.row_start[p.y] == p.x && self.row_end[p.y] > p.x
    }

    /// Lower-left corners of the squares directly under the peaks of `ν`.
    pub fn diagonal_squares(&self) -> Vec<GridPoint> {
        self.peaks().into_iter().map(|p| GridPoint::new(p.x, p.y - 1)).collect()
    }

    /// Whether the unit square with lower-left corner `c` lies on the ν-diagonal.
    pub fn is_diagonal_square(&self, c: GridPoint) -> bool {
        self.is_peak(GridPoint::new(c.x, c.y + 1))
    }

    /// The word `μ` obtained by replacing every `NE` pair of `ν` with `D`.
    pub fn large_base(&self) -> StepWord {
        let steps = self.word.steps();
        let mut out = Vec::with_capacity(steps.len());
        let mut i = 0;
        while i < steps.len() {
            if steps[i] == Step::N && steps.get(i + 1) == Some(&Step::E) {
                out.push(Step::D);
                i += 2;
            } else {
                out.push(steps[i]);
                i += 1;
            }
        }
        StepWord(out)
    }

    pub fn is_small(&self, w: &StepWord) -> Result<bool> {
        weakly_above(w, &self.word)
    }

    pub fn is_large(&self, w: &StepWord) -> Result<bool> {
        weakly_above(w, &self.large_base())
    }

    /// A north/east word weakly above `ν`.
    pub fn is_dyck(&self, w: &StepWord) -> Result<bool> {
        Ok(!w.has_diagonal() && self.is_small(w)?)
    }

    /// Peaks of a ν-Dyck path lying strictly above `ν`.
    pub fn high_peaks(&self, d: &StepWord) -> Result<Vec<GridPoint>> {
        if !self.is_dyck(d)? {
            return domain(format!("{d} is not a Dyck path over {}", self.word));
        }
        Ok(d.peaks().into_iter().filter(|&p| self.strictly_above(p)).collect())
    }

    /// Twice the signed area between `w` and `ν`; nonnegative for small paths.
    pub fn area2(&self, w: &StepWord) -> Result<i64> {
        if !self.is_large(w)? {
            return domain(format!("{w} dips below the large base path of {}", self.word));
        }
        let (pw, pn) = (HeightProfile::of(w), HeightProfile::of(&self.word));
        Ok((0..self.b())
            .map(|x| pw.column_mid(x) as i64 - pn.column_mid(x) as i64)
            .sum())
    }

    /// Longest east run from `p` staying weakly above `ν`.
    pub fn horiz(&self, p: GridPoint) -> Result<usize> {
        if !self.contains(p) {
            return Err(Error::BelowBase(p));
        }
        Ok(self.row_end[p.y] - p.x)
    }
}

impl fmt::Display for BasePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

impl FromStr for BasePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BasePath::parse_spec(s)
    }
}

pub fn rational_base(a: usize, b: usize) -> Result<BasePath> {
    BasePath::rational(a, b)
}

/// All north/east words of length `len`, in canonical order (`E < N`).
pub fn all_base_words(len: usize) -> impl Iterator<Item = BasePath> {
    (0u64..(1u64 << len)).map(move |bits| {
        let steps = (0..len)
            .map(|i| if bits >> (len - 1 - i) & 1 == 1 { Step::N } else { Step::E })
            .collect();
        BasePath::new(StepWord(steps)).expect("north/east word")
    })
}

/// Every base path of length at most `max_len`.
pub fn all_base_paths_up_to(max_len: usize) -> impl Iterator<Item = BasePath> {
    (0..=max_len).flat_map(all_base_words)
}
