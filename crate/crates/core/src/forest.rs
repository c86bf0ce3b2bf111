//! Covering `(I, J̄)`-forests and their correspondence with trees.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::path::{BasePath, GridPoint, Step, StepWord};
use crate::tree::NuTree;

/// A split of `[n]` into `I` (containing 1) and `J̄` (containing `n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    n: usize,
    i_set: Vec<usize>,
    j_set: Vec<usize>,
}

impl Bipartition {
    pub fn new(n: usize, mut i_set: Vec<usize>, mut j_set: Vec<usize>) -> Result<Self> {
        i_set.sort_unstable();
        j_set.sort_unstable();
        if n < 2 {
            return domain("a bipartition needs n >= 2");
        }
        let mut all: Vec<usize> = i_set.iter().chain(&j_set).copied().collect();
        all.sort_unstable();
        if all != (1..=n).collect::<Vec<_>>() {
            return domain(format!("I and J do not partition [1..{n}]"));
        }
        if i_set.first() != Some(&1) {
            return domain("1 must lie in I");
        }
        if j_set.last() != Some(&n) {
            return domain(format!("{n} must lie in J"));
        }
        Ok(Bipartition { n, i_set, j_set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i_set(&self) -> &[usize] {
        &self.i_set
    }

    pub fn j_set(&self) -> &[usize] {
        &self.j_set
    }

    pub fn in_i(&self, k: usize) -> bool {
        self.i_set.binary_search(&k).is_ok()
    }

    pub fn in_j(&self, k: usize) -> bool {
        self.j_set.binary_search(&k).is_ok()
    }
}

/// The bipartition read off ν: step `k` (0-based) labels element `k + 2`.
pub fn labels_of(nu: &BasePath) -> Bipartition {
    let n = nu.len() + 2;
    let mut i_set = vec![1];
    let mut j_set = Vec::new();
    for (k, s) in nu.word().steps().iter().enumerate() {
        match s {
            Step::E => i_set.push(k + 2),
            _ => j_set.push(k + 2),
        }
    }
    j_set.push(n);
    Bipartition { n, i_set, j_set }
}

/// Inverse of [`labels_of`].
pub fn base_path_of(bp: &Bipartition) -> BasePath {
    let steps = (2..bp.n)
        .map(|k| if bp.in_i(k) { Step::E } else { Step::N })
        .collect();
    BasePath::new(StepWord::new(steps)).expect("north/east word")
}

/// A covering forest: arcs `(i, j)` with `i ∈ I`, `j ∈ J̄`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoveringForest {
    bipartition: Bipartition,
    arcs: Vec<(usize, usize)>,
}

/// Checks the covering-forest axioms and names the first violation.
pub fn validate_forest(bp: &Bipartition, arcs: &[(usize, usize)]) -> std::result::Result<(), String> {
    for &(i, j) in arcs {
        if !bp.in_i(i) || !bp.in_j(j) {
            return Err(format!("arc ({i},{j}) does not join I to J"));
        }
        if i >= j {
            return Err(format!("arc ({i},{j}) is not increasing"));
        }
    }
    if arcs.iter().collect::<HashSet<_>>().len() != arcs.len() {
        return Err("repeated arc".into());
    }
    for &(i, j) in arcs {
        for &(k, l) in arcs {
            if i < k && k < j && j < l {
                return Err(format!("arcs ({i},{j}) and ({k},{l}) cross"));
            }
        }
    }
    if !arcs.contains(&(1, bp.n)) {
        return Err(format!("covering arc (1,{}) missing", bp.n));
    }
    let touched: HashSet<usize> = arcs.iter().flat_map(|&(i, j)| [i, j]).collect();
    if let Some(k) = (1..=bp.n).find(|k| !touched.contains(k)) {
        return Err(format!("element {k} is isolated"));
    }
    Ok(())
}

impl CoveringForest {
    pub fn new(bipartition: Bipartition, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        arcs.sort_unstable();
        validate_forest(&bipartition, &arcs).map_err(Error::InvalidForest)?;
        Ok(CoveringForest { bipartition, arcs })
    }

    pub fn bipartition(&self) -> &Bipartition {
        &self.bipartition
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn base(&self) -> BasePath {
        base_path_of(&self.bipartition)
    }

    /// Every valid forest with one arc fewer.
    pub fn covers(&self) -> Vec<CoveringForest> {
        (0..self.arcs.len())
            .filter_map(|k| {
                let mut rest = self.arcs.clone();
                rest.remove(k);
                validate_forest(&self.bipartition, &rest)
                    .ok()
                    .map(|()| CoveringForest { bipartition: self.bipartition.clone(), arcs: rest })
            })
            .collect()
    }
}

pub fn forest_covers(f: &CoveringForest) -> Vec<CoveringForest> {
    f.covers()
}

/// Node `(x, y)` corresponds to the arc from the `x`-th element of `I` to the
/// `y`-th element of `J̄`.
pub fn tree_to_forest(t: &NuTree) -> CoveringForest {
    let bp = labels_of(t.base());
    let arcs = t
        .nodes()
        .iter()
        .map(|p| (bp.i_set[p.x], bp.j_set[p.y]))
        .collect();
    CoveringForest::new(bp, arcs).expect("trees map to covering forests")
}

pub fn forest_to_tree(f: &CoveringForest) -> Result<NuTree> {
    let bp = &f.bipartition;
    let nodes = f
        .arcs
        .iter()
        .map(|&(i, j)| {
            let x = bp.i_set.binary_search(&i).expect("validated arc");
            let y = bp.j_set.binary_search(&j).expect("validated arc");
            GridPoint::new(x, y)
        })
        .collect();
    NuTree::new(f.base(), nodes)
}

/// Every covering forest over `bp`, by backtracking over non-crossing arc sets.
pub fn enumerate_forests_direct(bp: &Bipartition) -> Vec<CoveringForest> {
    let candidates: Vec<(usize, usize)> = bp
        .i_set
        .iter()
        .flat_map(|&i| bp.j_set.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
        .collect();
    let crosses = |(i, j): (usize, usize), (k, l): (usize, usize)| {
        (i < k && k < j && j < l) || (k < i && i < l && l < j)
    };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        idx: usize,
        cands: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        bp: &Bipartition,
        crosses: &dyn Fn((usize, usize), (usize, usize)) -> bool,
        out: &mut Vec<CoveringForest>,
    ) {
        if idx == cands.len() {
            if validate_forest(bp, chosen).is_ok() {
                let mut arcs = chosen.clone();
                arcs.sort_unstable();
                out.push(CoveringForest { bipartition: bp.clone(), arcs });
            }
            return;
        }
        go(idx + 1, cands, chosen, bp, crosses, out);
        let c = cands[idx];
        if chosen.iter().all(|&d| !crosses(c, d)) {
            chosen.push(c);
            go(idx + 1, cands, chosen, bp, crosses, out);
            chosen.pop();
        }
    }
    go(0, &candidates, &mut chosen, bp, &crosses, &mut out);
    out.sort();
    out
}

/// JSON form: `{"n", "I", "J", "arcs"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestJson {
    pub n: usize,
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    #[serde(rename = "J")]
    pub j_set: Vec<usize>,
    pub arcs: Vec<[usize; 2]>,
}

impl From<&CoveringForest> for ForestJson {
    fn from(f: &CoveringForest) -> Self {
        ForestJson {
            n: f.bipartition.n,
            i_set: f.bipartition.i_set.clone(),
            j_set: f.bipartition.j_set.clone(),
            arcs: f.arcs.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<ForestJson> for CoveringForest {
    type Error = Error;

    fn try_from(j: ForestJson) -> Result<Self> {
        let bp = Bipartition::new(j.n, j.i_set, j.j_set)?;
        CoveringForest::new(bp, j.arcs.into_iter().map(|[i, j]| (i, j)).collect())
    }
}
