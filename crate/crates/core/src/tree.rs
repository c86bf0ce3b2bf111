//! ν-Schröder trees: compatible point sets in the region above ν.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::path::{BasePath, GridPoint, Step, StepWord};

/// Whether two points of `R_ν` are strictly southwest/northeast of each other
/// with their bounding rectangle inside `R_ν`.
pub fn incompatible(p: GridPoint, q: GridPoint, nu: &BasePath) -> Result<bool> {
    for r in [p, q] {
        if !nu.contains(r) {
            return Err(Error::BelowBase(r));
        }
    }
    Ok(incompatible_unchecked(p, q, nu))
}

// `R_ν` is closed under moving left or down, so a rectangle lies inside it
// exactly when its bottom-right corner does.
fn incompatible_unchecked(p: GridPoint, q: GridPoint, nu: &BasePath) -> bool {
    let ordered = (p.x < q.x && p.y < q.y) || (q.x < p.x && q.y < p.y);
    ordered && nu.contains(GridPoint::new(p.x.max(q.x), p.y.min(q.y)))
}

/// Checks the tree axioms and names the first violation.
pub fn validate_tree(nodes: &[GridPoint], nu: &BasePath) -> std::result::Result<(), String> {
    let (a, b) = (nu.a(), nu.b());
    if let Some(p) = nodes.iter().find(|p| !nu.contains(**p)) {
        return Err(format!("node {p} lies outside the region above the base path"));
    }
    let distinct: HashSet<_> = nodes.iter().collect();
    if distinct.len() != nodes.len() {
        return Err("repeated node".into());
    }
    if !distinct.contains(&GridPoint::new(0, a)) {
        return Err(format!("root (0,{a}) missing"));
    }
    let mut rows = vec![false; a + 1];
    let mut cols = vec![false; b + 1];
    for p in nodes {
        rows[p.y] = true;
        cols[p.x] = true;
    }
    if let Some(y) = rows.iter().position(|&r| !r) {
        return Err(format!("row {y} is empty"));
    }
    if let Some(x) = cols.iter().position(|&c| !c) {
        return Err(format!("column {x} is empty"));
    }
    for (i, &p) in nodes.iter().enumerate() {
        for &q in &nodes[i + 1..] {
            if incompatible_unchecked(p, q, nu) {
                return Err(format!("nodes {p} and {q} are incompatible"));
            }
        }
    }
    Ok(())
}

/// How a non-root node hangs from its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeLabel {
    /// Parent in the same column.
    N,
    /// Parent in the same row.
    E,
    /// Parent strictly northwest.
    D,
}

impl NodeLabel {
    pub fn step(self) -> Step {
        match self {
            NodeLabel::N => Step::N,
            NodeLabel::E => Step::E,
            NodeLabel::D => Step::D,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContractionKind {
    Right,
    Left,
    Diagonal,
}

impl fmt::Display for ContractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContractionKind::Right => "right",
            ContractionKind::Left => "left",
            ContractionKind::Diagonal => "diagonal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationDirection {
    Left,
    Right,
}

/// A ν-Schröder tree. Nodes are kept sorted row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NuTree {
    base: BasePath,
    nodes: Vec<GridPoint>,
}

impl NuTree {
    pub fn new(base: BasePath, mut nodes: Vec<GridPoint>) -> Result<Self> {
        nodes.sort();
        validate_tree(&nodes, &base).map_err(Error::InvalidTree)?;
        Ok(NuTree { base, nodes })
    }

    pub(crate) fn new_unchecked(base: BasePath, mut nodes: Vec<GridPoint>) -> Self {
        nodes.sort();
        debug_assert_eq!(validate_tree(&nodes, &base), Ok(()));
        NuTree { base, nodes }
    }

    pub fn base(&self) -> &BasePath {
        &self.base
    }

    pub fn nodes(&self) -> &[GridPoint] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> GridPoint {
        GridPoint::new(0, self.base.a())
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.nodes.binary_search(&p).is_ok()
    }

    /// Number of nodes missing relative to a ν-binary tree.
    pub fn rank(&self) -> usize {
        self.base.len() + 1 - self.nodes.len()
    }

    /// Whether no point of `R_ν` can be added.
    pub fn is_binary(&self) -> bool {
        self.base.region_points().into_iter().all(|p| {
            self.contains(p) || self.nodes.iter().any(|&q| incompatible_unchecked(p, q, &self.base))
        })
    }

    fn nearest_above(&self, p: GridPoint) -> Option<GridPoint> {
        self.nodes
            .iter()
            .filter(|q| q.x == p.x && q.y > p.y)
            .min_by_key(|q| q.y)
            .copied()
    }

    fn nearest_left(&self, p: GridPoint) -> Option<GridPoint> {
        self.nodes
            .iter()
            .filter(|q| q.y == p.y && q.x < p.x)
            .max_by_key(|q| q.x)
            .copied()
    }

    fn nearest_right(&self, p: GridPoint) -> Option<GridPoint> {
        self.nodes
            .iter()
            .filter(|q| q.y == p.y && q.x > p.x)
            .min_by_key(|q| q.x)
            .copied()
    }

    fn nearest_below(&self, p: GridPoint) -> Option<GridPoint> {
        self.nodes
            .iter()
            .filter(|q| q.x == p.x && q.y < p.y)
            .max_by_key(|q| q.y)
            .copied()
    }

    /// Nodes `q` strictly northwest of `p` whose box with `p` holds no other node.
    pub fn northwest_box_candidates(&self, p: GridPoint) -> Vec<GridPoint> {
        self.nodes
            .iter()
            .filter(|q| q.x < p.x && q.y > p.y)
            .filter(|&&q| {
                !self.nodes.iter().any(|&s| {
                    s != p
                        && s != q
                        && (q.x..=p.x).contains(&s.x)
                        && (p.y..=q.y).contains(&s.y)
                })
            })
            .copied()
            .collect()
    }

    /// Parent of a non-root node, with its label.
    pub fn parent_with_label(&self, p: GridPoint) -> Result<(GridPoint, NodeLabel)> {
        if !self.contains(p) {
            return domain(format!("{p} is not a node"));
        }
        if p == self.root() {
            return domain("the root has no parent");
        }
        if let Some(q) = self.nearest_above(p) {
            return Ok((q, NodeLabel::N));
        }
        if let Some(q) = self.nearest_left(p) {
            return Ok((q, NodeLabel::E));
        }
        match self.northwest_box_candidates(p).as_slice() {
            [q] => Ok((*q, NodeLabel::D)),
            other => Err(Error::InvalidTree(format!(
                "node {p} has {} northwest parent candidates",
                other.len()
            ))),
        }
    }

    pub fn parent(&self, p: GridPoint) -> Result<GridPoint> {
        self.parent_with_label(p).map(|(q, _)| q)
    }

    /// Label of every non-root node.
    pub fn labels(&self) -> BTreeMap<GridPoint, NodeLabel> {
        self.parent_map().into_iter().map(|(p, (_, l))| (p, l)).collect()
    }

    pub fn parent_map(&self) -> BTreeMap<GridPoint, (GridPoint, NodeLabel)> {
        let root = self.root();
        self.nodes
            .iter()
            .filter(|&&p| p != root)
            .map(|&p| (p, self.parent_with_label(p).expect("valid tree has parents")))
            .collect()
    }

    /// Children of every node, ordered counterclockwise starting from south.
    pub fn children(&self) -> BTreeMap<GridPoint, Vec<GridPoint>> {
        let mut out: BTreeMap<GridPoint, Vec<GridPoint>> =
            self.nodes.iter().map(|&p| (p, Vec::new())).collect();
        for (c, (p, _)) in self.parent_map() {
            out.get_mut(&p).expect("parent is a node").push(c);
        }
        for (p, cs) in out.iter_mut() {
            // slope dx / (-dy) increases counterclockwise from south to east
            cs.sort_by(|c1, c2| {
                let (dx1, dy1) = (c1.x - p.x, p.y - c1.y);
                let (dx2, dy2) = (c2.x - p.x, p.y - c2.y);
                (dx1 * dy2).cmp(&(dx2 * dy1))
            });
        }
        out
    }

    /// Non-root nodes without children.
    pub fn leaves(&self) -> Vec<GridPoint> {
        let root = self.root();
        self.children()
            .into_iter()
            .filter(|(p, cs)| *p != root && cs.is_empty())
            .map(|(p, _)| p)
            .collect()
    }

    /// Non-root nodes in counterclockwise post-order.
    pub fn post_order(&self) -> Vec<GridPoint> {
        let children = self.children();
        let root = self.root();
        let mut out = Vec::with_capacity(self.nodes.len());
        // explicit stack: (node, index of next child)
        let mut stack = vec![(root, 0usize)];
        while let Some((v, i)) = stack.pop() {
            let cs = &children[&v];
            if i < cs.len() {
                stack.push((v, i + 1));
                stack.push((cs[i], 0));
            } else if v != root {
                out.push(v);
            }
        }
        out
    }

    /// Labels read along the post-order.
    pub fn label_word(&self) -> StepWord {
        let labels = self.labels();
        StepWord::new(self.post_order().iter().map(|p| labels[p].step()).collect())
    }

    /// Number of `E`/`D`-labeled nodes on the path from `p` up to the root,
    /// counting `p` itself.
    pub fn hroot(&self, p: GridPoint) -> Result<usize> {
        if !self.contains(p) {
            return domain(format!("{p} is not a node"));
        }
        let parents = self.parent_map();
        let mut count = 0;
        let mut v = p;
        while let Some(&(q, label)) = parents.get(&v) {
            if label != NodeLabel::N {
                count += 1;
            }
            v = q;
        }
        Ok(count)
    }

    fn without(&self, p: GridPoint) -> Vec<GridPoint> {
        self.nodes.iter().copied().filter(|&q| q != p).collect()
    }

    /// Every contraction of the tree, by kind and removed node.
    pub fn contractions(&self) -> Vec<(ContractionKind, GridPoint, NuTree)> {
        let leaves: HashSet<_> = self.leaves().into_iter().collect();
        let mut out = Vec::new();
        for (q, label) in self.labels() {
            let kind = match label {
                NodeLabel::N if self.nearest_right(q).is_some() => ContractionKind::Right,
                NodeLabel::E if self.nearest_below(q).is_some() => ContractionKind::Left,
                NodeLabel::D if !leaves.contains(&q) => ContractionKind::Diagonal,
                _ => continue,
            };
            let rest = self.without(q);
            if validate_tree(&rest, &self.base).is_ok() {
                out.push((kind, q, NuTree { base: self.base.clone(), nodes: rest }));
            } else {
                debug_assert_eq!(kind, ContractionKind::Diagonal, "right/left contraction at {q} invalid");
            }
        }
        out
    }

    /// Moves `q` to the opposite corner of the box spanned by its parent and
    /// its first neighbour (right of `q` for a right rotation, below `q` for a
    /// left rotation).
    pub fn rotate(&self, q: GridPoint, direction: RotationDirection) -> Result<NuTree> {
        let (p, label) = self.parent_with_label(q)?;
        let target = match direction {
            RotationDirection::Right => {
                let r = self.nearest_right(q);
                match (label, r) {
                    (NodeLabel::N, Some(r)) => GridPoint::new(r.x, p.y),
                    _ => return domain(format!("no right rotation at {q}")),
                }
            }
            RotationDirection::Left => {
                let r = self.nearest_below(q);
                match (label, r) {
                    (NodeLabel::E, Some(r)) => GridPoint::new(p.x, r.y),
                    _ => return domain(format!("no left rotation at {q}")),
                }
            }
        };
        let mut nodes = self.without(q);
        if nodes.contains(&target) {
            return domain(format!("rotation target {target} is already a node"));
        }
        nodes.push(target);
        NuTree::new(self.base.clone(), nodes)
    }
}

/// Every ν-Schröder tree, by backtracking over pairwise compatible point sets.
pub fn enumerate_trees_direct(nu: &BasePath) -> Vec<NuTree> {
    let points = nu.region_points();
    let root = GridPoint::new(0, nu.a());
    let mut out = Vec::new();
    let mut chosen = vec![root];
    fn go(
        i: usize,
        points: &[GridPoint],
        nu: &BasePath,
        chosen: &mut Vec<GridPoint>,
        out: &mut Vec<NuTree>,
    ) {
        if i == points.len() {
            if validate_tree(chosen, nu).is_ok() {
                out.push(NuTree::new_unchecked(nu.clone(), chosen.clone()));
            }
            return;
        }
        let p = points[i];
        if p == GridPoint::new(0, nu.a()) {
            return go(i + 1, points, nu, chosen, out);
        }
        go(i + 1, points, nu, chosen, out);
        if chosen.iter().all(|&q| !incompatible_unchecked(p, q, nu)) {
            chosen.push(p);
            go(i + 1, points, nu, chosen, out);
            chosen.pop();
        }
    }
    go(0, &points, nu, &mut chosen, &mut out);
    out.sort();
    out
}
