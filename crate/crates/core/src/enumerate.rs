//! Enumeration and exact counting of ν-Dyck and ν-Schröder paths, plus the
//! rational closed forms.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::path::{BasePath, HeightProfile, Step, StepWord};

/// Exact counts indexed by a statistic (diagonal steps, valleys, ...).
///
/// Trailing zeros are trimmed; the all-zero vector is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountVector(Vec<BigUint>);

impl CountVector {
    pub fn new(mut counts: Vec<BigUint>) -> Self {
        while counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        CountVector(counts)
    }

    pub fn from_u64s(counts: &[u64]) -> Self {
        CountVector::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn get(&self, i: usize) -> BigUint {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    /// `Σ (-1)^i c_i`.
    pub fn alternating_sum(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = BigInt::from(c.clone());
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Evaluates the generating polynomial at `x`.
    pub fn evaluate(&self, x: u64) -> BigUint {
        self.0.iter().rev().fold(BigUint::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients of `p(x + 1)` where `p` has these coefficients.
    pub fn shift_by_one(&self) -> CountVector {
        let n = self.0.len();
        let out = (0..n)
            .map(|i| {
                (i..n)
                    .map(|j| &self.0[j] * num_integer::binomial(BigUint::from(j), BigUint::from(i)))
                    .sum()
            })
            .collect();
        CountVector::new(out)
    }

    /// Lossy view for small instances; panics if an entry exceeds `u64`.
    pub fn to_u64s(&self) -> Vec<u64> {
        self.0
            .iter()
            .map(|c| u64::try_from(c).expect("count fits in u64"))
            .collect()
    }
}

impl Serialize for CountVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&crate::schema::big_number(c))?;
        }
        seq.end()
    }
}

/// Which paths are admitted by the enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathClass {
    Dyck,
    Small,
    Large,
}

impl PathClass {
    fn allows_diagonal(self) -> bool {
        !matches!(self, PathClass::Dyck)
    }

    fn lower_word(self, nu: &BasePath) -> StepWord {
        match self {
            PathClass::Large => nu.large_base(),
            _ => nu.word().clone(),
        }
    }
}

// Doubled lower-bound height over the middle of each column. Dominating
// these midpoints is equivalent to dominating the full profile.
fn lower_mids(nu: &BasePath, class: PathClass) -> Vec<usize> {
    let profile = HeightProfile::of(&class.lower_word(nu));
    (0..nu.b()).map(|x| profile.column_mid(x)).collect()
}

/// Depth-first enumerator yielding words in lexicographic order (`D < E < N`).
///
/// Every admissible prefix extends to a full path (go north to the top, then
/// east), so the search never backtracks out of a dead end.
pub struct PathEnumerator {
    a: usize,
    b: usize,
    mids: Vec<usize>,
    diag: bool,
    prefix: Vec<Step>,
    // per prefix position: the next step kind to try (0 = D, 1 = E, 2 = N, 3 = exhausted)
    cursor: Vec<u8>,
    x: usize,
    y: usize,
    started: bool,
}

impl PathEnumerator {
    pub fn new(nu: &BasePath, class: PathClass) -> Self {
        PathEnumerator {
            a: nu.a(),
            b: nu.b(),
            mids: lower_mids(nu, class),
            diag: class.allows_diagonal(),
            prefix: Vec::new(),
            cursor: vec![0],
            x: 0,
            y: 0,
            started: false,
        }
    }

    fn admissible(&self, s: Step) -> bool {
        let (x, y) = (self.x, self.y);
        match s {
            Step::D => self.diag && x < self.b && y < self.a && 2 * y + 1 >= self.mids[x],
            Step::E => x < self.b && 2 * y >= self.mids[x],
            Step::N => y < self.a,
        }
    }

    fn push(&mut self, s: Step) {
        let (dx, dy) = s.displacement();
        self.x += dx;
        self.y += dy;
        self.prefix.push(s);
        self.cursor.push(0);
    }

    fn pop(&mut self) {
        self.cursor.pop();
        let s = self.prefix.pop().expect("nonempty prefix");
        let (dx, dy) = s.displacement();
        self.x -= dx;
        self.y -= dy;
    }
}

impl Iterator for PathEnumerator {
    type Item = StepWord;

    fn next(&mut self) -> Option<StepWord> {
        if self.started {
            if self.prefix.is_empty() && self.x == self.b && self.y == self.a {
                // the empty word was the only path
                return None;
            }
            self.pop();
        }
        self.started = true;
        loop {
            if self.x == self.b && self.y == self.a {
                return Some(StepWord::new(self.prefix.clone()));
            }
            let depth = self.cursor.len() - 1;
            let c = self.cursor[depth];
            if c >= 3 {
                if self.prefix.is_empty() {
                    return None;
                }
                self.pop();
                continue;
            }
            self.cursor[depth] = c + 1;
            let s = Step::ALL[c as usize];
            if self.admissible(s) {
                self.push(s);
            }
        }
    }
}

pub fn enumerate(nu: &BasePath, class: PathClass) -> Vec<StepWord> {
    PathEnumerator::new(nu, class).collect()
}

/// North/east paths weakly above ν.
pub fn enum_dyck(nu: &BasePath) -> Vec<StepWord> {
    enumerate(nu, PathClass::Dyck)
}

/// Small ν-Schröder paths.
pub fn enum_small(nu: &BasePath) -> Vec<StepWord> {
    enumerate(nu, PathClass::Small)
}

/// Large ν-Schröder paths.
pub fn enum_large(nu: &BasePath) -> Vec<StepWord> {
    enumerate(nu, PathClass::Large)
}

/// Counts paths of the given class by number of diagonal steps, by dynamic
/// programming over lattice points.
pub fn counts_by_diagonals(nu: &BasePath, class: PathClass) -> CountVector {
    let (a, b) = (nu.a(), nu.b());
    let mids = lower_mids(nu, class);
    let diag = class.allows_diagonal();
    // table[x][y][d]
    let mut table: Vec<Vec<Vec<BigUint>>> = vec![vec![Vec::new(); a + 1]; b + 1];
    table[0][0] = vec![BigUint::one()];
    for x in 0..=b {
        for y in 0..=a {
            let here = std::mem::take(&mut table[x][y]);
            if here.is_empty() {
                continue;
            }
            let add = |tx: usize, ty: usize, shift: usize, table: &mut Vec<Vec<Vec<BigUint>>>| {
                let cell = &mut table[tx][ty];
                if cell.len() < here.len() + shift {
                    cell.resize(here.len() + shift, BigUint::zero());
                }
                for (d, c) in here.iter().enumerate() {
                    cell[d + shift] += c;
                }
            };
            if y < a {
                add(x, y + 1, 0, &mut table);
            }
            if x < b && 2 * y >= mids[x] {
                add(x + 1, y, 0, &mut table);
            }
            if diag && x < b && y < a && 2 * y + 1 >= mids[x] {
                add(x + 1, y + 1, 1, &mut table);
            }
            table[x][y] = here;
        }
    }
    CountVector::new(std::mem::take(&mut table[b][a]))
}

/// Small ν-Schröder paths counted by number of diagonal steps.
pub fn sch_counts(nu: &BasePath) -> CountVector {
    counts_by_diagonals(nu, PathClass::Small)
}

/// Large ν-Schröder paths counted by number of diagonal steps.
pub fn large_counts(nu: &BasePath) -> CountVector {
    counts_by_diagonals(nu, PathClass::Large)
}

/// ν-Dyck paths counted by number of valleys.
pub fn narayana_counts(nu: &BasePath) -> CountVector {
    let (a, b) = (nu.a(), nu.b());
    let mids = lower_mids(nu, PathClass::Dyck);
    // state: (x, y, last step was E); values indexed by valley count
    let idx = |x: usize, y: usize, e: bool| ((x * (a + 1)) + y) * 2 + e as usize;
    let mut table: Vec<Vec<BigUint>> = vec![Vec::new(); (a + 1) * (b + 1) * 2];
    table[idx(0, 0, false)] = vec![BigUint::one()];
    for x in 0..=b {
        for y in 0..=a {
            for last_e in [false, true] {
                let here = std::mem::take(&mut table[idx(x, y, last_e)]);
                if here.is_empty() {
                    continue;
                }
                let mut add = |to: usize, shift: usize| {
                    let cell = &mut table[to];
                    if cell.len() < here.len() + shift {
                        cell.resize(here.len() + shift, BigUint::zero());
                    }
                    for (v, c) in here.iter().enumerate() {
                        cell[v + shift] += c;
                    }
                };
                if y < a {
                    add(idx(x, y + 1, false), usize::from(last_e));
                }
                if x < b && 2 * y >= mids[x] {
                    add(idx(x + 1, y, true), 0);
                }
                table[idx(x, y, last_e)] = here;
            }
        }
    }
    let mut total: Vec<BigUint> = Vec::new();
    for last_e in [false, true] {
        for (v, c) in table[idx(b, a, last_e)].iter().enumerate() {
            if total.len() <= v {
                total.resize(v + 1, BigUint::zero());
            }
            total[v] += c;
        }
    }
    CountVector::new(total)
}

/// Whether the Narayana polynomial evaluated at `x + 1` has the small
/// Schröder counts as coefficients.
pub fn narayana_shift_check(nu: &BasePath) -> bool {
    narayana_counts(nu).shift_by_one() == sch_counts(nu)
}

pub fn total_small(nu: &BasePath) -> BigUint {
    sch_counts(nu).total()
}

pub fn euler_alternating(nu: &BasePath) -> BigInt {
    sch_counts(nu).alternating_sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingReport {
    pub large: BigUint,
    pub small: BigUint,
    pub equality: bool,
}

pub fn doubling_check(nu: &BasePath) -> DoublingReport {
    let large = large_counts(nu).total();
    let small = total_small(nu);
    let equality = large == &small * 2u32;
    DoublingReport { large, small, equality }
}

fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

fn exact_div(num: BigUint, den: usize) -> Result<BigUint> {
    let (q, r) = num.div_rem(&BigUint::from(den));
    if !r.is_zero() {
        return domain(format!("closed form is not integral (remainder {r} mod {den})"));
    }
    Ok(q)
}

fn require_coprime(a: usize, b: usize) -> Result<()> {
    if a == 0 || b == 0 {
        return domain("rational counts need a >= 1 and b >= 1");
    }
    if a.gcd(&b) != 1 {
        return domain(format!("({a},{b}) is not a coprime pair"));
    }
    Ok(())
}

/// `Cat(a,b) = C(a+b, a) / (a+b)`.
pub fn rational_catalan(a: usize, b: usize) -> Result<BigUint> {
    require_coprime(a, b)?;
    exact_div(binom(a + b, a), a + b)
}

/// `Nar(a,b,i) = C(a,i) C(b-1,b-i) / a`: rational Dyck paths with `i` peaks.
pub fn rational_narayana(a: usize, b: usize, i: usize) -> Result<BigUint> {
    require_coprime(a, b)?;
    if i > a {
        return domain(format!("index {i} exceeds a = {a}"));
    }
    if i > b {
        return Ok(BigUint::zero());
    }
    exact_div(binom(a, i) * binom(b - 1, b - i), a)
}

/// `Sch(a,b,i) = C(a,i) C(a+b-1-i, b-i) / a`: large paths with `i` diagonals.
pub fn rational_large_count(a: usize, b: usize, i: usize) -> Result<BigUint> {
    require_coprime(a, b)?;
    if i > a {
        return domain(format!("index {i} exceeds a = {a}"));
    }
    if i > b {
        return Ok(BigUint::zero());
    }
    exact_div(binom(a, i) * binom(a + b - 1 - i, b - i), a)
}

/// `sch(a,b,i) = C(b-1,i) C(a+b-1-i, b) / a`: small paths with `i` diagonals.
pub fn rational_small_count(a: usize, b: usize, i: usize) -> Result<BigUint> {
    require_coprime(a, b)?;
    if i >= a {
        return domain(format!("index {i} must be below a = {a}"));
    }
    exact_div(binom(b - 1, i) * binom(a + b - 1 - i, b), a)
}
