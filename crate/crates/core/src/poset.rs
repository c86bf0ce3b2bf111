//! Face posets of paths, trees and forests, and the structural checks run on them.

use std::collections::HashMap;
use std::fmt::{Display, Write as _};
use std::hash::Hash;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::bijection::right_flush;
use crate::enumerate::{enum_small, CountVector};
use crate::error::{domain, Result};
use crate::forest::{tree_to_forest, CoveringForest};
use crate::path::{BasePath, Step, StepWord};
use crate::tree::{ContractionKind, NuTree};

/// All single contractions of a small path.
pub fn path_contractions(w: &StepWord, nu: &BasePath) -> Result<Vec<(ContractionKind, StepWord)>> {
    if !nu.is_small(w)? {
        return domain(format!("{w} is not a small path over {nu}"));
    }
    let steps = w.steps();
    let pts = w.points();
    let horiz = |k: usize| nu.horiz(pts[k]).expect("small paths stay in the region");
    // Scanning back from `j`, the first step whose initial point has horiz at
    // most `h` must be an N with horiz exactly `h`; everything strictly in
    // between sits further from the boundary.
    let matching_north = |j: usize, h: usize| {
        let i = (0..j).rev().find(|&i| horiz(i) <= h)?;
        (steps[i] == Step::N && horiz(i) == h).then_some(i)
    };
    let splice = |i: usize, j: usize| {
        let mut out = steps[..i].to_vec();
        out.push(Step::D);
        out.extend_from_slice(&steps[i + 1..j]);
        out.extend_from_slice(&steps[j + 1..]);
        StepWord::new(out)
    };

    let mut out = Vec::new();
    for i in w.valley_indices() {
        let mut s = steps[..i].to_vec();
        s.push(Step::D);
        s.extend_from_slice(&steps[i + 2..]);
        out.push((ContractionKind::Right, StepWord::new(s)));
    }
    for j in (0..steps.len()).filter(|&j| steps[j] == Step::E) {
        if let Some(i) = matching_north(j, horiz(j)) {
            out.push((ContractionKind::Left, splice(i, j)));
        }
    }
    for j in (0..steps.len()).filter(|&j| steps[j] == Step::E && steps.get(j + 1) == Some(&Step::D)) {
        if let Some(i) = matching_north(j, horiz(j + 1)) {
            out.push((ContractionKind::Diagonal, splice(i, j)));
        }
    }
    debug_assert!(out.iter().all(|(_, c)| nu.is_small(c).unwrap_or(false)));
    Ok(out)
}

/// A finite ranked poset given by its elements and cover relations.
///
/// Elements are sorted by `(rank, element)`; covers are sorted index pairs
/// `(lower, upper)`.
#[derive(Debug)]
pub struct FacePoset<T> {
    base: BasePath,
    elements: Vec<T>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
    up: OnceLock<Vec<FixedBitSet>>,
    down: OnceLock<Vec<FixedBitSet>>,
}

impl<T: Clone + Ord + Hash> FacePoset<T> {
    /// Builds the poset from its elements, a rank function and the elements
    /// covering each element.
    pub fn from_covers(
        base: BasePath,
        elements: Vec<T>,
        rank: impl Fn(&T) -> usize,
        covered_by: impl Fn(&T) -> Vec<T>,
    ) -> Result<Self> {
        let mut keyed: Vec<(usize, T)> = elements.into_iter().map(|e| (rank(&e), e)).collect();
        keyed.sort();
        keyed.dedup();
        let index: HashMap<&T, usize> = keyed.iter().enumerate().map(|(i, (_, e))| (e, i)).collect();
        let mut covers = Vec::new();
        for (i, (_, e)) in keyed.iter().enumerate() {
            for up in covered_by(e) {
                match index.get(&up) {
                    Some(&j) => covers.push((i, j)),
                    None => return domain("a cover leaves the element set"),
                }
            }
        }
        covers.sort_unstable();
        covers.dedup();
        let (ranks, elements) = keyed.into_iter().unzip();
        Ok(FacePoset { base, elements, ranks, covers, up: OnceLock::new(), down: OnceLock::new() })
    }

    pub fn index_of(&self, e: &T) -> Option<usize> {
        let r = self.elements.iter().position(|x| x == e)?;
        Some(r)
    }

    /// Index lookup table for repeated queries.
    pub fn index_map(&self) -> HashMap<T, usize> {
        self.elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()
    }
}

impl<T> FacePoset<T> {
    pub fn base(&self) -> &BasePath {
        &self.base
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `up_set(i)` holds every `j >= i`, including `i`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up.get_or_init(|| closure(self.len(), &self.covers, false))[i]
    }

    /// `down_set(i)` holds every `j <= i`, including `i`.
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down.get_or_init(|| closure(self.len(), &self.covers, true))[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up_set(i).contains(j)
    }

    pub fn f_vector(&self) -> CountVector {
        let mut counts = vec![0u64; self.ranks.iter().max().map_or(0, |r| r + 1)];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        CountVector::from_u64s(&counts)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().map(|&r| if r % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Whether every cover raises the rank by one and every minimal element
    /// has rank 0.
    pub fn is_graded(&self) -> bool {
        let mut has_lower = vec![false; self.len()];
        for &(lo, hi) in &self.covers {
            if self.ranks[hi] != self.ranks[lo] + 1 {
                return false;
            }
            has_lower[hi] = true;
        }
        (0..self.len()).all(|i| has_lower[i] || self.ranks[i] == 0)
    }
}

// Reflexive-transitive closure along covers (upward, or downward if `reverse`).
fn closure(n: usize, covers: &[(usize, usize)], reverse: bool) -> Vec<FixedBitSet> {
    let mut adj = vec![Vec::new(); n];
    for &(lo, hi) in covers {
        if reverse {
            adj[hi].push(lo);
        } else {
            adj[lo].push(hi);
        }
    }
    let mut sets: Vec<Option<FixedBitSet>> = vec![None; n];
    // iterative post-order DFS; covers form a DAG
    for start in 0..n {
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (v, ref mut k)) = stack.last_mut() {
            if sets[v].is_some() {
                stack.pop();
                continue;
            }
            if *k < adj[v].len() {
                let w = adj[v][*k];
                *k += 1;
                if sets[w].is_none() {
                    stack.push((w, 0));
                }
            } else {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(v);
                for &w in &adj[v] {
                    s.union_with(sets[w].as_ref().expect("child closed first"));
                }
                sets[v] = Some(s);
                stack.pop();
            }
        }
    }
    sets.into_iter().map(|s| s.expect("every vertex visited")).collect()
}

pub type PathPoset = FacePoset<StepWord>;
pub type TreePoset = FacePoset<NuTree>;
pub type ForestPoset = FacePoset<CoveringForest>;

/// Small ν-Schröder paths ordered by contraction.
pub fn build_path_poset(nu: &BasePath) -> PathPoset {
    FacePoset::from_covers(nu.clone(), enum_small(nu), StepWord::diag_count, |w| {
        path_contractions(w, nu)
            .expect("enumerated paths are small")
            .into_iter()
            .map(|(_, c)| c)
            .collect()
    })
    .expect("contractions of small paths are small")
}

/// ν-Schröder trees ordered by contraction.
pub fn build_tree_poset(nu: &BasePath) -> TreePoset {
    let trees = enum_small(nu)
        .iter()
        .map(|w| right_flush(w, nu).expect("small paths flush to trees"))
        .collect();
    FacePoset::from_covers(nu.clone(), trees, NuTree::rank, |t| {
        t.contractions().into_iter().map(|(_, _, c)| c).collect()
    })
    .expect("contractions of trees are trees")
}

/// Covering forests ordered by arc deletion.
pub fn build_forest_poset(nu: &BasePath) -> ForestPoset {
    let len = nu.len();
    let forests = enum_small(nu)
        .iter()
        .map(|w| tree_to_forest(&right_flush(w, nu).expect("small paths flush to trees")))
        .collect();
    FacePoset::from_covers(nu.clone(), forests, |f: &CoveringForest| len + 1 - f.arcs().len(), CoveringForest::covers)
        .expect("arc deletions of covering forests are covering forests")
}

// Checks that `map` is a bijection from `p` onto `q` carrying covers onto covers.
fn transports<S, T: Clone + Ord + Hash>(
    p: &FacePoset<S>,
    q: &FacePoset<T>,
    map: impl Fn(&S) -> T,
) -> std::result::Result<(), String> {
    if p.len() != q.len() {
        return Err(format!("sizes differ: {} vs {}", p.len(), q.len()));
    }
    let index = q.index_map();
    let mut image = vec![usize::MAX; p.len()];
    let mut hit = vec![false; q.len()];
    for (i, e) in p.elements().iter().enumerate() {
        let j = *index.get(&map(e)).ok_or_else(|| format!("element {i} maps outside the target"))?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(format!("element {i} collides with another preimage"));
        }
        image[i] = j;
    }
    let mut mapped: Vec<(usize, usize)> = p.covers().iter().map(|&(a, b)| (image[a], image[b])).collect();
    mapped.sort_unstable();
    if mapped != q.covers() {
        let missing = mapped.iter().find(|c| q.covers().binary_search(c).is_err());
        return Err(match missing {
            Some(c) => format!("cover {c:?} has no counterpart"),
            None => "target has extra covers".into(),
        });
    }
    Ok(())
}

/// Checks the path, tree and forest posets against each other through the
/// flushing and forest bijections; returns a description of the first defect.
pub fn isomorphism_defect(nu: &BasePath) -> Option<String> {
    let paths = build_path_poset(nu);
    let trees = build_tree_poset(nu);
    let forests = build_forest_poset(nu);
    if let Err(e) = transports(&paths, &trees, |w| right_flush(w, nu).expect("small path")) {
        return Some(format!("paths -> trees: {e}"));
    }
    if let Err(e) = transports(&trees, &forests, tree_to_forest) {
        return Some(format!("trees -> forests: {e}"));
    }
    None
}

pub fn check_isomorphism(nu: &BasePath) -> bool {
    isomorphism_defect(nu).is_none()
}

pub fn f_vector<T>(p: &FacePoset<T>) -> CountVector {
    p.f_vector()
}

pub fn euler_characteristic<T>(p: &FacePoset<T>) -> i64 {
    p.euler_characteristic()
}

/// A face poset with a bottom `0̂` (index `len`) and top `1̂` (index `len + 1`).
#[derive(Debug, Clone, Copy)]
pub struct BoundedPoset<'a, T> {
    inner: &'a FacePoset<T>,
}

pub fn adjoin_bounds<T>(p: &FacePoset<T>) -> BoundedPoset<'_, T> {
    BoundedPoset { inner: p }
}

impl<'a, T> BoundedPoset<'a, T> {
    pub fn inner(&self) -> &'a FacePoset<T> {
        self.inner
    }

    pub fn len(&self) -> usize {
        self.inner.len() + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        self.inner.len()
    }

    pub fn top(&self) -> usize {
        self.inner.len() + 1
    }

    /// Rank of an element: `-1` for `0̂`, undefined for `1̂`.
    pub fn rank(&self, i: usize) -> Option<i64> {
        if i == self.bottom() {
            Some(-1)
        } else if i == self.top() {
            None
        } else {
            Some(self.inner.rank(i) as i64)
        }
    }

    /// Every element `>= i`.
    pub fn up_set(&self, i: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        if i == self.bottom() {
            s.insert_range(..);
            return s;
        }
        if i != self.top() {
            s.union_with(self.inner.up_set(i));
        }
        s.insert(self.top());
        s
    }

    /// Every element `<= i`.
    pub fn down_set(&self, i: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        if i == self.top() {
            s.insert_range(..);
            return s;
        }
        if i != self.bottom() {
            s.union_with(self.inner.down_set(i));
        }
        s.insert(self.bottom());
        s
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == self.bottom() || j == self.top() || (i != self.top() && j != self.bottom() && self.inner.leq(i, j))
    }

    // element of `set` whose closure (`up` for least, `down` for greatest) contains all of `set`
    fn extremum(set: &FixedBitSet, closures: &[FixedBitSet]) -> Option<usize> {
        set.ones().find(|&z| set.is_subset(&closures[z]))
    }

    /// Join of two elements, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let ups: Vec<_> = (0..self.len()).map(|i| self.up_set(i)).collect();
        let mut u = ups[x].clone();
        u.intersect_with(&ups[y]);
        Self::extremum(&u, &ups)
    }

    /// Meet of two elements, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let downs: Vec<_> = (0..self.len()).map(|i| self.down_set(i)).collect();
        let mut d = downs[x].clone();
        d.intersect_with(&downs[y]);
        Self::extremum(&d, &downs)
    }

    /// First pair without a join or meet, if any.
    pub fn lattice_defect(&self) -> Option<(usize, usize, &'static str)> {
        let n = self.len();
        let ups: Vec<_> = (0..n).map(|i| self.up_set(i)).collect();
        let downs: Vec<_> = (0..n).map(|i| self.down_set(i)).collect();
        for x in 0..n {
            for y in x + 1..n {
                let mut u = ups[x].clone();
                u.intersect_with(&ups[y]);
                if Self::extremum(&u, &ups).is_none() {
                    return Some((x, y, "join"));
                }
                let mut d = downs[x].clone();
                d.intersect_with(&downs[y]);
                if Self::extremum(&d, &downs).is_none() {
                    return Some((x, y, "meet"));
                }
            }
        }
        None
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_defect().is_none()
    }

    /// First interval `[x, y]` with `x < y`, both below `1̂`, whose even- and
    /// odd-rank element counts differ; also fails if the inner poset is not
    /// graded.
    pub fn eulerian_defect(&self) -> Option<(usize, usize)> {
        if !self.inner.is_graded() {
            return Some((self.bottom(), self.bottom()));
        }
        let n = self.inner.len();
        let lower: Vec<usize> = (0..n).chain([self.bottom()]).collect();
        for &x in &lower {
            let up = self.up_set(x);
            for y in up.ones().filter(|&y| y != x && y != self.top()) {
                let mut interval = up.clone();
                interval.intersect_with(&self.down_set(y));
                let (mut even, mut odd) = (0usize, 0usize);
                for z in interval.ones() {
                    if self.rank(z).expect("ranked below the top").rem_euclid(2) == 0 {
                        even += 1;
                    } else {
                        odd += 1;
                    }
                }
                if even != odd {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn eulerian_intervals_check(&self) -> bool {
        self.eulerian_defect().is_none()
    }

    /// Möbius function `μ(x, y)` over all pairs (zero when `x ≰ y`).
    pub fn mobius(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let ups: Vec<_> = (0..n).map(|i| self.up_set(i)).collect();
        let downs: Vec<_> = (0..n).map(|i| self.down_set(i)).collect();
        // process y in an order compatible with the partial order: by |down set|
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| downs[i].count_ones(..));
        let mut mu = vec![vec![0i64; n]; n];
        for x in 0..n {
            mu[x][x] = 1;
            for &y in &order {
                if y == x || !ups[x].contains(y) {
                    continue;
                }
                let mut between = ups[x].clone();
                between.intersect_with(&downs[y]);
                between.set(y, false);
                mu[x][y] = -between.ones().map(|z| mu[x][z]).sum::<i64>();
            }
        }
        mu
    }
}

pub fn is_lattice<T>(b: &BoundedPoset<'_, T>) -> bool {
    b.is_lattice()
}

pub fn eulerian_intervals_check<T>(b: &BoundedPoset<'_, T>) -> bool {
    b.eulerian_intervals_check()
}

/// Graphviz Hasse diagram; `matching` edges are drawn blue and bold.
pub fn to_dot<T: Display>(p: &FacePoset<T>, matching: Option<&[(usize, usize)]>) -> String {
    let mut out = String::from("digraph face_poset {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, e) in p.elements().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{e}\"];");
    }
    for &(lo, hi) in p.covers() {
        let matched = matching.is_some_and(|m| m.contains(&(lo, hi)));
        if matched {
            let _ = writeln!(out, "  n{lo} -> n{hi} [color=blue, penwidth=2];");
        } else {
            let _ = writeln!(out, "  n{lo} -> n{hi};");
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetElementJson {
    pub id: usize,
    pub word: String,
    pub rank: usize,
}

/// JSON form: `{"nu", "elements": [{"id", "word", "rank"}], "covers"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetJson {
    pub nu: String,
    pub elements: Vec<PosetElementJson>,
    pub covers: Vec<[usize; 2]>,
}

impl From<&PathPoset> for PosetJson {
    fn from(p: &PathPoset) -> Self {
        PosetJson {
            nu: p.base().to_string(),
            elements: p
                .elements()
                .iter()
                .enumerate()
                .map(|(id, w)| PosetElementJson { id, word: w.to_string(), rank: p.rank(id) })
                .collect(),
            covers: p.covers().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}
