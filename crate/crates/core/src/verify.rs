//! The exhaustive invariant suite run by `nuschroder verify`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{
    highpeaks_to_valleys, large_to_small, left_flush, left_flush_by_flushing, right_flush_with_map,
    small_to_large, valleys_to_highpeaks,
};
use crate::enumerate::{
    doubling_check, enum_dyck, enum_large, enum_small, euler_alternating, narayana_shift_check, sch_counts,
};
use crate::forest::{forest_to_tree, tree_to_forest};
use crate::morse::{build_matching, contractibility_certificate, match_down, verify_acyclic, verify_matching};
use crate::path::{all_base_paths_up_to, BasePath, StepWord};
use crate::poset::{adjoin_bounds, build_path_poset, isomorphism_defect, path_contractions};
use crate::tree::ContractionKind;

/// A failed property with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub nu: String,
    pub property: &'static str,
    pub detail: String,
}

pub type Check = fn(&BasePath) -> Result<(), String>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

pub fn check_enumeration(nu: &BasePath) -> Result<(), String> {
    let small = enum_small(nu);
    let counts = sch_counts(nu);
    let mut by_d = vec![0u64; nu.a() + 1];
    for w in &small {
        ensure(nu.is_small(w).unwrap_or(false), || format!("{w} enumerated but not small"))?;
        ensure(nu.is_large(w).unwrap_or(false), || format!("{w} small but not large"))?;
        by_d[w.diag_count()] += 1;
    }
    ensure(counts == crate::enumerate::CountVector::from_u64s(&by_d), || {
        format!("enumeration {by_d:?} disagrees with counter {:?}", counts.to_u64s())
    })?;
    ensure(small.windows(2).all(|p| p[0] < p[1]), || "output not in canonical order".into())
}

pub fn check_euler(nu: &BasePath) -> Result<(), String> {
    let e = euler_alternating(nu);
    ensure(e == 1.into(), || format!("alternating sum {e}"))
}

pub fn check_narayana_shift(nu: &BasePath) -> Result<(), String> {
    ensure(narayana_shift_check(nu), || "shifted Narayana vector differs".into())
}

pub fn check_doubling(nu: &BasePath) -> Result<(), String> {
    let report = doubling_check(nu);
    let expected = nu.starts_north_ends_east();
    ensure(report.equality == expected, || {
        format!("large {} small {} but N...E is {expected}", report.large, report.small)
    })?;
    if !expected {
        return Ok(());
    }
    let small = enum_small(nu);
    let small_set: HashSet<&StepWord> = small.iter().collect();
    let large_only: HashSet<StepWord> = enum_large(nu).into_iter().filter(|w| !small_set.contains(w)).collect();
    let mut images = HashSet::new();
    for mu in &small {
        let pi = small_to_large(mu, nu).map_err(|e| format!("f({mu}): {e}"))?;
        ensure(large_only.contains(&pi), || format!("f({mu}) = {pi} is not large-only"))?;
        let back = large_to_small(&pi, nu).map_err(|e| format!("f^-1({pi}): {e}"))?;
        ensure(&back == mu, || format!("f^-1(f({mu})) = {back}"))?;
        images.insert(pi);
    }
    ensure(images == large_only, || "f is not onto the large-only paths".into())
}

pub fn check_high_peaks(nu: &BasePath) -> Result<(), String> {
    if !nu.starts_north_ends_east() {
        return Ok(());
    }
    let dyck = enum_dyck(nu);
    let mut images = HashSet::new();
    for d in &dyck {
        let v = highpeaks_to_valleys(d, nu).map_err(|e| format!("{d}: {e}"))?;
        ensure(nu.is_dyck(&v).unwrap_or(false), || format!("{d} maps to non-Dyck {v}"))?;
        let hp = nu.high_peaks(d).map_err(|e| e.to_string())?;
        ensure(v.valleys().len() == hp.len(), || format!("{d}: valley count mismatch"))?;
        let back = valleys_to_highpeaks(&v, nu).map_err(|e| e.to_string())?;
        ensure(&back == d, || format!("{d} -> {v} -> {back}"))?;
        images.insert(v);
    }
    ensure(images.len() == dyck.len(), || "high-peak map is not injective".into())
}

pub fn check_flushing(nu: &BasePath) -> Result<(), String> {
    let leaves = run_leaves(nu);
    for mu in enum_small(nu) {
        let (t, image) = right_flush_with_map(&mu, nu).map_err(|e| format!("R({mu}): {e}"))?;
        let back = left_flush(&t);
        ensure(back == mu, || format!("L(R({mu})) = {back}"))?;
        let by_flush = left_flush_by_flushing(&t).map_err(|e| e.to_string())?;
        ensure(by_flush == mu, || format!("row flushing of R({mu}) gives {by_flush}"))?;
        ensure(t.leaves() == leaves, || format!("leaves of R({mu}) differ from the run set"))?;
        for (p, q) in mu.points().into_iter().zip(image) {
            ensure(p.y == q.y, || format!("{p} moved to row {}", q.y))?;
            let (h, r) = (nu.horiz(p).map_err(|e| e.to_string())?, t.hroot(q).map_err(|e| e.to_string())?);
            ensure(h == r, || format!("{mu}: horiz {p} = {h} but hroot {q} = {r}"))?;
        }
        let f = tree_to_forest(&t);
        let t2 = forest_to_tree(&f).map_err(|e| e.to_string())?;
        ensure(t2 == t, || format!("forest roundtrip of R({mu}) fails"))?;
    }
    Ok(())
}

/// Starts of vertical runs and ends of horizontal runs of ν, below the root.
pub fn run_leaves(nu: &BasePath) -> Vec<crate::path::GridPoint> {
    use crate::path::{GridPoint, Step};
    let steps = nu.word().steps();
    let pts = nu.word().points();
    let mut out: Vec<GridPoint> = (0..steps.len())
        .filter(|&i| steps[i] == Step::N && (i == 0 || steps[i - 1] != Step::N))
        .map(|i| pts[i])
        .chain(
            (0..steps.len())
                .filter(|&i| steps[i] == Step::E && steps.get(i + 1) != Some(&Step::E))
                .map(|i| pts[i + 1]),
        )
        .filter(|&p| p != GridPoint::new(0, nu.a()))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn check_poset(nu: &BasePath) -> Result<(), String> {
    let p = build_path_poset(nu);
    ensure(p.f_vector() == sch_counts(nu), || "f-vector differs from the counts".into())?;
    ensure(p.euler_characteristic() == 1, || format!("Euler characteristic {}", p.euler_characteristic()))?;
    ensure(p.is_graded(), || "poset is not graded".into())?;
    for w in p.elements() {
        let a0 = nu.area2(w).map_err(|e| e.to_string())?;
        for (kind, c) in path_contractions(w, nu).map_err(|e| e.to_string())? {
            let a1 = nu.area2(&c).map_err(|e| e.to_string())?;
            let ok = match kind {
                ContractionKind::Right => a1 == a0 + 1,
                ContractionKind::Left | ContractionKind::Diagonal => a1 < a0,
            };
            ensure(ok, || format!("{kind} contraction {w} -> {c} changes area2 {a0} -> {a1}"))?;
        }
    }
    match isomorphism_defect(nu) {
        Some(d) => Err(d),
        None => Ok(()),
    }
}

pub fn check_lattice(nu: &BasePath) -> Result<(), String> {
    let p = build_path_poset(nu);
    let b = adjoin_bounds(&p);
    let name = |i: usize| match i {
        i if i == b.bottom() => "0".to_string(),
        i if i == b.top() => "1".to_string(),
        i => p.elements()[i].to_string(),
    };
    if let Some((x, y, what)) = b.lattice_defect() {
        return Err(format!("{} and {} have no {what}", name(x), name(y)));
    }
    if let Some((x, y)) = b.eulerian_defect() {
        return Err(format!("interval [{}, {}] is not Eulerian", name(x), name(y)));
    }
    Ok(())
}

pub fn check_morse(nu: &BasePath) -> Result<(), String> {
    let p = build_path_poset(nu);
    let m = build_matching(&p).map_err(|e| e.to_string())?;
    verify_matching(p.len(), p.covers(), &m)?;
    ensure(verify_acyclic(p.len(), p.covers(), &m), || "matching has a cycle".into())?;
    for &(lo, hi) in &m.pairs {
        let (l, u) = (&p.elements()[lo], &p.elements()[hi]);
        ensure(match_down(u, nu).ok().as_ref() == Some(l), || format!("{u} not matched with {l}"))?;
        let (al, au) = (nu.area2(l).map_err(|e| e.to_string())?, nu.area2(u).map_err(|e| e.to_string())?);
        ensure(au == al + 1, || format!("matched pair {l} < {u} has area2 {al}, {au}"))?;
    }
    let cert = contractibility_certificate(nu).map_err(|e| e.to_string())?;
    ensure(cert.certifies_contractible(), || format!("critical cells {:?}", cert.c_vector.to_u64s()))?;
    let top = StepWord::top_path(nu.a(), nu.b());
    ensure(cert.critical_words == [top.clone()], || format!("critical cell is not {top}"))
}

/// Every property of the suite, by name.
pub const SUITE: &[(&str, Check)] = &[
    ("enumeration", check_enumeration),
    ("euler-characteristic", check_euler),
    ("narayana-shift", check_narayana_shift),
    ("doubling", check_doubling),
    ("high-peaks-valleys", check_high_peaks),
    ("flushing", check_flushing),
    ("poset-isomorphism", check_poset),
    ("lattice-eulerian", check_lattice),
    ("morse-matching", check_morse),
];

/// Runs one property over every base path with at most `max_len` steps, in
/// parallel; witnesses come back in canonical order.
pub fn check_all(name: &'static str, check: Check, max_len: usize) -> Vec<Witness> {
    let bases: Vec<BasePath> = all_base_paths_up_to(max_len).collect();
    bases
        .par_iter()
        .filter_map(|nu| {
            check(nu).err().map(|detail| Witness { nu: nu.to_string(), property: name, detail })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub max_len: usize,
    pub base_paths: usize,
    pub properties: Vec<&'static str>,
    pub failures: Vec<Witness>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(max_len: usize) -> SuiteReport {
    let failures = SUITE
        .iter()
        .flat_map(|&(name, check)| check_all(name, check, max_len))
        .collect();
    SuiteReport {
        max_len,
        base_paths: all_base_paths_up_to(max_len).count(),
        properties: SUITE.iter().map(|(n, _)| *n).collect(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_small() {
        let report = run_suite(5);
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.base_paths, 63);
    }

    #[test]
    fn run_leaves_example() {
        let nu = BasePath::parse_spec("3/5").unwrap();
        let got: Vec<(usize, usize)> = run_leaves(&nu).iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(got, [(0, 0), (1, 1), (3, 2), (5, 3)]);
    }

    #[test]
    fn witness_reported() {
        fn always_fails(_: &BasePath) -> Result<(), String> {
            Err("boom".into())
        }
        let w = check_all("demo", always_fails, 1);
        assert_eq!(w.len(), 3);
        assert_eq!(w[0], Witness { nu: String::new(), property: "demo", detail: "boom".into() });
    }
}
