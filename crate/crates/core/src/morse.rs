//! The acyclic matching on the path poset and its verification.

use std::collections::HashMap;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::enumerate::CountVector;
use crate::error::{domain, Error, Result};
use crate::path::{BasePath, Step, StepWord};
use crate::poset::{build_path_poset, PathPoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorseClass {
    /// Some `D` occurs before any valley.
    Upper,
    /// Not upper, and has a valley.
    Lower,
    /// Neither: the path `N^a E^b`.
    Critical,
}

fn first_diagonal(w: &StepWord) -> Option<usize> {
    w.steps().iter().position(|&s| s == Step::D)
}

fn first_valley(w: &StepWord) -> Option<usize> {
    w.valley_indices().first().copied()
}

pub fn classify(w: &StepWord, nu: &BasePath) -> Result<MorseClass> {
    if !nu.is_small(w)? {
        return domain(format!("{w} is not a small path over {nu}"));
    }
    Ok(match (first_diagonal(w), first_valley(w)) {
        (Some(d), Some(v)) if d < v => MorseClass::Upper,
        (Some(_), None) => MorseClass::Upper,
        (_, Some(_)) => MorseClass::Lower,
        (None, None) => MorseClass::Critical,
    })
}

/// Replaces the first `D` of an upper path by `EN`.
pub fn match_down(sigma: &StepWord, nu: &BasePath) -> Result<StepWord> {
    if classify(sigma, nu)? != MorseClass::Upper {
        return domain(format!("{sigma} is not an upper path"));
    }
    let d = first_diagonal(sigma).expect("upper paths have a diagonal");
    let s = sigma.steps();
    let mut out = s[..d].to_vec();
    out.extend([Step::E, Step::N]);
    out.extend_from_slice(&s[d + 1..]);
    Ok(StepWord::new(out))
}

/// Replaces the first valley of a lower path by `D`.
pub fn match_up(pi: &StepWord, nu: &BasePath) -> Result<StepWord> {
    if classify(pi, nu)? != MorseClass::Lower {
        return domain(format!("{pi} is not a lower path"));
    }
    let v = first_valley(pi).expect("lower paths have a valley");
    let s = pi.steps();
    let mut out = s[..v].to_vec();
    out.push(Step::D);
    out.extend_from_slice(&s[v + 2..]);
    Ok(StepWord::new(out))
}

/// Matched `(lower, upper)` index pairs and unmatched indices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct MorseMatching {
    pub pairs: Vec<(usize, usize)>,
    pub critical: Vec<usize>,
}

pub fn build_matching(p: &PathPoset) -> Result<MorseMatching> {
    let nu = p.base();
    let index: HashMap<&StepWord, usize> = p.elements().iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = MorseMatching::default();
    for (i, w) in p.elements().iter().enumerate() {
        match classify(w, nu)? {
            MorseClass::Upper => {
                let lower = match_down(w, nu)?;
                let &lo = index
                    .get(&lower)
                    .ok_or_else(|| Error::Verification(format!("{lower} is not an element")))?;
                m.pairs.push((lo, i));
            }
            MorseClass::Critical => m.critical.push(i),
            MorseClass::Lower => {}
        }
    }
    m.pairs.sort_unstable();
    Ok(m)
}

/// Checks that every pair is a cover, no element is used twice, and pairs
/// plus critical elements exhaust `0..len`.
pub fn verify_matching(len: usize, covers: &[(usize, usize)], m: &MorseMatching) -> std::result::Result<(), String> {
    let mut seen = vec![false; len];
    let mut mark = |i: usize| -> std::result::Result<(), String> {
        if i >= len {
            return Err(format!("index {i} out of range"));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(format!("element {i} used twice"));
        }
        Ok(())
    };
    for &(lo, hi) in &m.pairs {
        mark(lo)?;
        mark(hi)?;
        if !covers.contains(&(lo, hi)) {
            return Err(format!("pair ({lo},{hi}) is not a cover"));
        }
    }
    for &c in &m.critical {
        mark(c)?;
    }
    if let Some(i) = seen.iter().position(|&s| !s) {
        return Err(format!("element {i} is neither matched nor critical"));
    }
    Ok(())
}

/// Orients covers downward except matched ones (upward) and tests for a
/// directed cycle.
pub fn verify_acyclic(len: usize, covers: &[(usize, usize)], m: &MorseMatching) -> bool {
    let mut g = DiGraph::<(), ()>::with_capacity(len, covers.len());
    let nodes: Vec<_> = (0..len).map(|_| g.add_node(())).collect();
    for &(lo, hi) in covers {
        if m.pairs.contains(&(lo, hi)) {
            g.add_edge(nodes[lo], nodes[hi], ());
        } else {
            g.add_edge(nodes[hi], nodes[lo], ());
        }
    }
    !is_cyclic_directed(&g)
}

/// Searches directly for an alternating cycle `b1 ≻ d(b1) ≺ b2 ≻ d(b2) ≺ … ≺ b1`
/// among matched upper elements.
pub fn has_alternating_cycle(len: usize, covers: &[(usize, usize)], m: &MorseMatching) -> bool {
    let mut down_of = vec![None; len];
    for &(lo, hi) in &m.pairs {
        down_of[hi] = Some(lo);
    }
    let mut up_covers = vec![Vec::new(); len];
    for &(lo, hi) in covers {
        up_covers[lo].push(hi);
    }
    // edge b -> b' when d(b) is covered by a different matched upper b'
    let next = |b: usize| -> Vec<usize> {
        let d = down_of[b].expect("matched upper");
        up_covers[d].iter().copied().filter(|&c| c != b && down_of[c].is_some()).collect()
    };
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; len];
    for start in (0..len).filter(|&b| down_of[b].is_some()) {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, next(start), 0usize)];
        state[start] = 1;
        while let Some(top) = stack.last_mut() {
            if top.2 < top.1.len() {
                let w = top.1[top.2];
                top.2 += 1;
                match state[w] {
                    1 => return true,
                    0 => {
                        state[w] = 1;
                        stack.push((w, next(w), 0));
                    }
                    _ => {}
                }
            } else {
                state[top.0] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// Critical cells of a verified acyclic matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub critical_words: Vec<StepWord>,
    pub c_vector: CountVector,
}

impl Certificate {
    /// A single critical cell, of rank 0.
    pub fn certifies_contractible(&self) -> bool {
        self.c_vector == CountVector::from_u64s(&[1])
    }
}

pub fn contractibility_certificate(nu: &BasePath) -> Result<Certificate> {
    let p = build_path_poset(nu);
    let m = build_matching(&p)?;
    verify_matching(p.len(), p.covers(), &m)
        .map_err(|e| Error::Verification(format!("{nu}: matching invalid: {e}")))?;
    if !verify_acyclic(p.len(), p.covers(), &m) {
        return Err(Error::Verification(format!("{nu}: matching has a cycle")));
    }
    let mut counts = vec![0u64; nu.a() + 1];
    for &c in &m.critical {
        counts[p.rank(c)] += 1;
    }
    Ok(Certificate {
        critical_words: m.critical.iter().map(|&c| p.elements()[c].clone()).collect(),
        c_vector: CountVector::from_u64s(&counts),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> StepWord {
        s.parse().unwrap()
    }

    fn nu(s: &str) -> BasePath {
        BasePath::parse_spec(s).unwrap()
    }

    #[test]
    fn classify_examples() {
        let base = nu("3/5");
        assert_eq!(classify(&StepWord::top_path(3, 5), &base).unwrap(), MorseClass::Critical);
        assert_eq!(classify(&w("NDENEEE"), &base).unwrap(), MorseClass::Upper);
        assert_eq!(classify(&w("NNENEEEE"), &base).unwrap(), MorseClass::Lower);
        assert!(classify(&w("D"), &nu("NE")).is_err());
    }

    #[test]
    fn matching_moves() {
        let base = nu("3/5");
        assert_eq!(match_down(&w("NDENEEE"), &base).unwrap(), w("NENENEEE"));
        assert_eq!(match_up(&w("NNENEEEE"), &base).unwrap(), w("NNDEEEE"));
        assert_eq!(match_up(&w("NENENEEE"), &base).unwrap(), w("NDENEEE"));
        assert_eq!(match_down(&w("D"), &nu("EN")).unwrap(), w("EN"));
        assert!(match_up(&w("NDENEEE"), &base).is_err());
        assert!(match_down(&w("NNENEEEE"), &base).is_err());
    }

    #[test]
    fn rational_35_matching() {
        let p = build_path_poset(&nu("3/5"));
        let m = build_matching(&p).unwrap();
        assert_eq!(m.pairs.len(), 8);
        assert_eq!(m.critical.len(), 1);
        assert_eq!(p.elements()[m.critical[0]], StepWord::top_path(3, 5));
        assert_eq!(verify_matching(p.len(), p.covers(), &m), Ok(()));
        assert!(verify_acyclic(p.len(), p.covers(), &m));
        assert!(!has_alternating_cycle(p.len(), p.covers(), &m));
        assert!(verify_acyclic(p.len(), p.covers(), &MorseMatching::default()));
    }

    #[test]
    fn corrupted_matchings_rejected() {
        let p = build_path_poset(&nu("3/5"));
        let mut m = build_matching(&p).unwrap();
        let (lo, hi) = m.pairs[0];
        let mut bad = m.clone();
        // the critical element paired with a non-cover
        bad.pairs[0] = (m.critical[0], hi);
        bad.critical = vec![lo];
        assert!(verify_matching(p.len(), p.covers(), &bad).is_err());
        m.pairs.push(m.pairs[0]);
        assert!(verify_matching(p.len(), p.covers(), &m).unwrap_err().contains("twice"));
    }

    #[test]
    fn bowtie_has_cycle() {
        // a, b < c, d with a-c and b-d matched: c > a < d > b < c
        let covers = [(0, 2), (0, 3), (1, 2), (1, 3)];
        let m = MorseMatching { pairs: vec![(0, 2), (1, 3)], critical: vec![] };
        assert_eq!(verify_matching(4, &covers, &m), Ok(()));
        assert!(!verify_acyclic(4, &covers, &m));
        assert!(has_alternating_cycle(4, &covers, &m));
    }

    #[test]
    fn certificates() {
        let c = contractibility_certificate(&nu("3/5")).unwrap();
        assert_eq!(c.critical_words, vec![w("NNNEEEEE")]);
        assert!(c.certifies_contractible());
        assert!(contractibility_certificate(&nu("")).unwrap().certifies_contractible());
    }
}
