//! Explicit bijections: the small/large doubling map, high peaks to valleys,
//! and right/left flushing between paths and trees.

use std::collections::HashSet;

use crate::error::{domain, Result};
use crate::path::{BasePath, GridPoint, Step, StepWord};
use crate::tree::{NodeLabel, NuTree};

fn require_n_e(nu: &BasePath) -> Result<()> {
    if !nu.starts_north_ends_east() {
        return domain(format!("base path {nu} must begin with N and end with E"));
    }
    Ok(())
}

/// Sends a small path to a large path that is not small, by turning the
/// first `E` lying on the ν-diagonal into a `D` and dropping the leading `N`.
pub fn small_to_large(mu: &StepWord, nu: &BasePath) -> Result<StepWord> {
    require_n_e(nu)?;
    if !nu.is_small(mu)? {
        return domain(format!("{mu} is not a small path over {nu}"));
    }
    let steps = mu.steps();
    let pts = mu.points();
    let j = (0..steps.len())
        .find(|&i| steps[i] == Step::E && nu.is_peak(pts[i]))
        .ok_or_else(|| crate::Error::Domain(format!("{mu} has no east step on the diagonal")))?;
    let mut out = steps[1..j].to_vec();
    out.push(Step::D);
    out.extend_from_slice(&steps[j + 1..]);
    Ok(StepWord::new(out))
}

/// Inverse of [`small_to_large`]: splits at the last `D` on the ν-diagonal.
pub fn large_to_small(pi: &StepWord, nu: &BasePath) -> Result<StepWord> {
    require_n_e(nu)?;
    if !nu.is_large(pi)? {
        return domain(format!("{pi} is not a large path over {nu}"));
    }
    let steps = pi.steps();
    let pts = pi.points();
    let j = (0..steps.len())
        .rev()
        .find(|&i| steps[i] == Step::D && nu.is_diagonal_square(pts[i]))
        .ok_or_else(|| crate::Error::Domain(format!("{pi} has no diagonal step on the diagonal")))?;
    let mut out = vec![Step::N];
    out.extend_from_slice(&steps[..j]);
    out.push(Step::E);
    out.extend_from_slice(&steps[j + 1..]);
    Ok(StepWord::new(out))
}

/// The north/east path with exactly the given valleys (strictly increasing in
/// both coordinates), ending at `(b, a)`.
pub fn path_with_valleys(valleys: &[GridPoint], a: usize, b: usize) -> Result<StepWord> {
    let mut steps = Vec::with_capacity(a + b);
    let (mut x, mut y) = (0, 0);
    for (k, v) in valleys.iter().enumerate() {
        if v.x <= x || (k > 0 && v.y <= y) || v.x > b || v.y >= a {
            return domain(format!("valley {v} out of order or out of range"));
        }
        steps.extend(std::iter::repeat_n(Step::N, v.y - y));
        steps.extend(std::iter::repeat_n(Step::E, v.x - x));
        x = v.x;
        y = v.y;
    }
    steps.extend(std::iter::repeat_n(Step::N, a - y));
    steps.extend(std::iter::repeat_n(Step::E, b - x));
    Ok(StepWord::new(steps))
}

/// Maps a ν-Dyck path to the ν-Dyck path whose valleys sit diagonally below
/// and right of its high peaks.
pub fn highpeaks_to_valleys(d: &StepWord, nu: &BasePath) -> Result<StepWord> {
    require_n_e(nu)?;
    let valleys: Vec<GridPoint> = nu
        .high_peaks(d)?
        .into_iter()
        .map(|p| GridPoint::new(p.x + 1, p.y - 1))
        .collect();
    let out = path_with_valleys(&valleys, nu.a(), nu.b())?;
    debug_assert!(nu.is_dyck(&out).unwrap_or(false));
    Ok(out)
}

/// Inverse of [`highpeaks_to_valleys`].
pub fn valleys_to_highpeaks(v: &StepWord, nu: &BasePath) -> Result<StepWord> {
    require_n_e(nu)?;
    if !nu.is_dyck(v)? {
        return domain(format!("{v} is not a Dyck path over {nu}"));
    }
    let peaks: Vec<GridPoint> = v
        .valleys()
        .into_iter()
        .map(|p| GridPoint::new(p.x - 1, p.y + 1))
        .collect();
    let nu_mid = crate::path::HeightProfile::of(nu.word());
    let mut steps = Vec::with_capacity(v.len());
    let mut y = 0;
    for x in 0..nu.b() {
        let floor = nu_mid.column_mid(x) / 2;
        let lift = peaks.iter().filter(|p| p.x <= x).map(|p| p.y).max().unwrap_or(0);
        let h = floor.max(lift);
        steps.extend(std::iter::repeat_n(Step::N, h - y));
        steps.push(Step::E);
        y = h;
    }
    steps.extend(std::iter::repeat_n(Step::N, nu.a() - y));
    Ok(StepWord::new(steps))
}

/// Right-flushes the lattice points of a small path into a tree. Also returns
/// the node assigned to each path point.
pub fn right_flush_with_map(mu: &StepWord, nu: &BasePath) -> Result<(NuTree, Vec<GridPoint>)> {
    if !nu.is_small(mu)? {
        return domain(format!("{mu} is not a small path over {nu}"));
    }
    let pts = mu.points();
    let steps = mu.steps();
    let mut image = vec![GridPoint::new(0, 0); pts.len()];
    let mut forbidden: HashSet<usize> = HashSet::new();
    let mut i = 0;
    while i < pts.len() {
        let y = pts[i].y;
        let mut used: HashSet<usize> = HashSet::new();
        while i < pts.len() && pts[i].y == y {
            let x = (0..=nu.row_end(y))
                .rev()
                .find(|x| !forbidden.contains(x) && !used.contains(x))
                .ok_or_else(|| crate::Error::Domain(format!("no free slot on row {y}")))?;
            used.insert(x);
            image[i] = GridPoint::new(x, y);
            if steps.get(i).is_some_and(|s| s.is_horizontal()) {
                forbidden.insert(x);
            }
            i += 1;
        }
    }
    let tree = NuTree::new(nu.clone(), image.clone())?;
    Ok((tree, image))
}

pub fn right_flush(mu: &StepWord, nu: &BasePath) -> Result<NuTree> {
    right_flush_with_map(mu, nu).map(|(t, _)| t)
}

/// Reads a tree back as a path: its labels in counterclockwise post-order.
pub fn left_flush(t: &NuTree) -> StepWord {
    t.label_word()
}

/// Left-flushes the nodes row by row, then reads the flushed points as a path.
pub fn left_flush_by_flushing(t: &NuTree) -> Result<StepWord> {
    let labels = t.labels();
    let mut placed = Vec::with_capacity(t.len());
    let mut forbidden: HashSet<usize> = HashSet::new();
    for y in 0..=t.base().a() {
        let mut row: Vec<GridPoint> = t.nodes().iter().copied().filter(|p| p.y == y).collect();
        row.sort_by_key(|p| std::cmp::Reverse(p.x));
        let mut used: HashSet<usize> = HashSet::new();
        for p in row {
            let x = (0..)
                .find(|x| !forbidden.contains(x) && !used.contains(x))
                .expect("unbounded search");
            used.insert(x);
            if matches!(labels.get(&p), Some(NodeLabel::E | NodeLabel::D)) {
                forbidden.insert(x);
            }
            placed.push(GridPoint::new(x, y));
        }
    }
    placed.sort();
    StepWord::from_points(&placed)
}
