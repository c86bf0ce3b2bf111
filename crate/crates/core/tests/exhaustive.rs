//! Exhaustive invariant checks over every base path up to a fixed length.
//! Each check compares against a direct recomputation rather than the
//! library's own shortcuts wherever one is available.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use nuschroder::bijection::{left_flush, right_flush};
use nuschroder::enumerate::{
    enum_dyck, enum_large, enum_small, narayana_counts, rational_catalan, rational_large_count,
    rational_narayana, rational_small_count, sch_counts, total_small, CountVector,
};
use nuschroder::forest::{enumerate_forests_direct, forest_to_tree, labels_of, tree_to_forest};
use nuschroder::morse::{
    build_matching, classify, has_alternating_cycle, match_down, match_up, verify_acyclic, MorseClass,
};
use nuschroder::path::{all_base_paths_up_to, rational_base};
use nuschroder::poset::{adjoin_bounds, build_path_poset};
use nuschroder::tree::{enumerate_trees_direct, validate_tree, NodeLabel, NuTree, RotationDirection};
use nuschroder::verify::run_leaves;
use nuschroder::{weakly_above, BasePath, GridPoint, Step, StepWord};

fn bases(max_len: usize) -> impl Iterator<Item = BasePath> {
    all_base_paths_up_to(max_len)
}

fn counts_of(values: impl IntoIterator<Item = usize>) -> CountVector {
    let mut v: Vec<u64> = Vec::new();
    for i in values {
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] += 1;
    }
    CountVector::from_u64s(&v)
}

// Twice the area between the x-axis and the path.
fn area_under2(w: &StepWord) -> i64 {
    let mut y = 0i64;
    let mut total = 0;
    for s in w.steps() {
        match s {
            Step::N => y += 1,
            Step::E => total += 2 * y,
            Step::D => {
                total += 2 * y + 1;
                y += 1;
            }
        }
    }
    total
}

// Lowest point of ν in column x; a point is weakly above ν iff it is no lower.
fn lowest_in_column(nu: &BasePath, x: usize) -> usize {
    nu.word().points().into_iter().filter(|p| p.x == x).map(|p| p.y).min().unwrap()
}

mod paths {
    use super::*;

    #[test]
    fn enumerated_paths_satisfy_their_predicates() {
        for nu in bases(8) {
            let large = nu.large_base();
            for w in enum_small(&nu) {
                assert!(weakly_above(&w, nu.word()).unwrap(), "{w} over {nu}");
                assert!(nu.is_large(&w).unwrap());
            }
            for w in enum_large(&nu) {
                assert!(weakly_above(&w, &large).unwrap(), "{w} over {nu}");
                let small = weakly_above(&w, nu.word()).unwrap();
                assert_eq!(small, nu.is_small(&w).unwrap());
            }
            for w in enum_dyck(&nu) {
                assert!(!w.has_diagonal() && nu.is_small(&w).unwrap());
            }
        }
    }

    #[test]
    fn rational_base_is_the_unique_minimum() {
        for n in 2..=10 {
            for a in 1..n {
                let b = n - a;
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let nu = rational_base(a, b).unwrap();
                let dyck = enum_dyck(&nu);
                assert!(dyck.contains(nu.word()));
                for d in &dyck {
                    assert!(weakly_above(d, nu.word()).unwrap());
                    if d != nu.word() {
                        assert!(!weakly_above(nu.word(), d).unwrap(), "{d} is below ν({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn area_matches_shoelace() {
        for nu in bases(8) {
            let base_area = area_under2(nu.word());
            for w in enum_large(&nu) {
                assert_eq!(nu.area2(&w).unwrap(), area_under2(&w) - base_area, "{w} over {nu}");
            }
        }
    }

    #[test]
    fn no_high_peaks_on_base_and_no_valleys_on_top() {
        for nu in bases(9) {
            assert_eq!(nu.high_peaks(nu.word()).unwrap(), Vec::<GridPoint>::new());
            assert!(StepWord::top_path(nu.a(), nu.b()).valleys().is_empty());
        }
    }

    #[test]
    fn horiz_is_the_longest_run_above() {
        for nu in bases(8) {
            for p in nu.region_points() {
                let mut run = 0;
                while p.x + run < nu.b() && lowest_in_column(&nu, p.x + run + 1) <= p.y {
                    run += 1;
                }
                assert_eq!(nu.horiz(p).unwrap(), run, "{p} over {nu}");
                let blocked = p.x == nu.b() || lowest_in_column(&nu, p.x + 1) > p.y;
                assert_eq!(run == 0, blocked);
            }
        }
    }
}

mod counting {
    use super::*;

    #[test]
    fn enumeration_matches_counters() {
        for nu in bases(9) {
            let small = enum_small(&nu);
            assert_eq!(counts_of(small.iter().map(StepWord::diag_count)), sch_counts(&nu), "{nu}");
            let dyck = enum_dyck(&nu);
            assert_eq!(counts_of(dyck.iter().map(|d| d.valleys().len())), narayana_counts(&nu), "{nu}");
            assert_eq!(narayana_counts(&nu).shift_by_one(), sch_counts(&nu));
            assert_eq!(narayana_counts(&nu).evaluate(2), total_small(&nu));
        }
    }

    #[test]
    fn wrapping_in_north_east_keeps_the_total() {
        for nu in bases(8) {
            let mut steps = vec![Step::N];
            steps.extend_from_slice(nu.word().steps());
            steps.push(Step::E);
            let wrapped = BasePath::new(StepWord::new(steps)).unwrap();
            assert_eq!(total_small(&wrapped), total_small(&nu), "{nu}");
        }
    }

    #[test]
    fn rational_formulas_match_enumeration() {
        for n in 2..=11 {
            for a in 1..n {
                let b = n - a;
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let nu = rational_base(a, b).unwrap();
                let dyck = enum_dyck(&nu);
                let by_peaks = counts_of(dyck.iter().map(|d| d.peaks().len()));
                let small = counts_of(enum_small(&nu).iter().map(StepWord::diag_count));
                let large = counts_of(enum_large(&nu).iter().map(StepWord::diag_count));

                assert_eq!(rational_catalan(a, b).unwrap(), BigUint::from(dyck.len()), "Cat({a},{b})");
                for i in 0..=a {
                    assert_eq!(rational_narayana(a, b, i).unwrap(), by_peaks.get(i), "Nar({a},{b},{i})");
                    assert_eq!(rational_large_count(a, b, i).unwrap(), large.get(i), "Sch({a},{b},{i})");
                    let sch = |j: usize| rational_small_count(a, b, j).unwrap_or_default();
                    if i < a {
                        assert_eq!(sch(i), small.get(i), "sch({a},{b},{i})");
                    } else {
                        assert!(rational_small_count(a, b, i).is_err());
                        assert_eq!(small.get(i), BigUint::default());
                    }
                    let prev = if i == 0 { BigUint::default() } else { sch(i - 1) };
                    assert_eq!(rational_large_count(a, b, i).unwrap(), sch(i) + prev, "recurrence at {i}");
                }
            }
        }
        assert!(rational_catalan(2, 4).is_err());
    }
}

mod trees {
    use super::*;

    fn all_trees(nu: &BasePath) -> BTreeSet<NuTree> {
        enumerate_trees_direct(nu).into_iter().collect()
    }

    #[test]
    fn flushing_hits_every_tree() {
        for nu in bases(7) {
            let direct = all_trees(&nu);
            let flushed: BTreeSet<NuTree> = enum_small(&nu).iter().map(|w| right_flush(w, &nu).unwrap()).collect();
            assert_eq!(flushed, direct, "{nu}");
            for t in &direct {
                assert_eq!(right_flush(&left_flush(t), &nu).unwrap(), *t);
                assert_eq!(t.label_word(), left_flush(t));
            }
        }
    }

    #[test]
    fn contraction_closure_of_binary_trees_is_everything() {
        for nu in bases(7) {
            let direct = all_trees(&nu);
            let mut seen: BTreeSet<NuTree> = direct.iter().filter(|t| t.is_binary()).cloned().collect();
            let sizes: HashSet<usize> = seen.iter().map(NuTree::len).collect();
            assert_eq!(sizes, HashSet::from([nu.len() + 1]), "binary tree sizes over {nu}");
            let mut frontier: Vec<NuTree> = seen.iter().cloned().collect();
            while let Some(t) = frontier.pop() {
                for (_, _, c) in t.contractions() {
                    if seen.insert(c.clone()) {
                        frontier.push(c);
                    }
                }
            }
            assert_eq!(seen, direct, "{nu}");
        }
    }

    #[test]
    fn contractions_are_the_valid_single_removals() {
        for nu in bases(7) {
            let leaves = run_leaves(&nu);
            for t in all_trees(&nu) {
                assert_eq!(t.leaves(), leaves);
                let contracted: BTreeSet<NuTree> = t.contractions().into_iter().map(|(_, _, c)| c).collect();
                let removals: BTreeSet<NuTree> = t
                    .nodes()
                    .iter()
                    .filter_map(|&q| {
                        let rest: Vec<GridPoint> = t.nodes().iter().copied().filter(|&p| p != q).collect();
                        validate_tree(&rest, &nu).ok().map(|()| NuTree::new(nu.clone(), rest).unwrap())
                    })
                    .collect();
                assert_eq!(contracted, removals, "{nu}: {:?}", t.nodes());
                for c in &contracted {
                    assert_eq!(c.leaves(), leaves);
                    assert_eq!(c.rank(), t.rank() + 1);
                }
            }
        }
    }

    #[test]
    fn parent_rule_finds_a_unique_parent() {
        for nu in bases(7) {
            for t in all_trees(&nu) {
                let root = t.root();
                assert_eq!(root, GridPoint::new(0, nu.a()));
                for &q in t.nodes().iter().filter(|&&q| q != root) {
                    let (p, label) = t.parent_with_label(q).unwrap();
                    let expected = match (p.x == q.x, p.y == q.y) {
                        (true, false) => NodeLabel::N,
                        (false, true) => NodeLabel::E,
                        _ => NodeLabel::D,
                    };
                    assert_eq!(label, expected);
                    assert!(p.x <= q.x && p.y >= q.y && p != q);
                }
                let post = t.post_order();
                assert_eq!(post.len(), t.len() - 1);
            }
        }
    }

    #[test]
    fn rotations_are_inverse_pairs() {
        for nu in bases(6) {
            for t in all_trees(&nu).into_iter().filter(NuTree::is_binary) {
                for &q in t.nodes() {
                    let Ok(r) = t.rotate(q, RotationDirection::Right) else { continue };
                    assert!(r.is_binary());
                    assert_eq!(r.len(), t.len());
                    let moved = *r.nodes().iter().find(|p| !t.contains(**p)).unwrap();
                    assert_eq!(r.rotate(moved, RotationDirection::Left).unwrap(), t, "{nu} at {q}");
                }
            }
        }
    }
}

mod forests {
    use super::*;

    #[test]
    fn forests_correspond_to_trees() {
        for nu in bases(7) {
            let trees = enumerate_trees_direct(&nu);
            let mut transported: Vec<_> = trees.iter().map(tree_to_forest).collect();
            transported.sort();
            let direct = enumerate_forests_direct(&labels_of(&nu));
            assert_eq!(transported, direct, "{nu}");
            for (t, f) in trees.iter().zip(trees.iter().map(tree_to_forest)) {
                assert_eq!(&forest_to_tree(&f).unwrap(), t);
                assert_eq!(f.arcs().len(), t.len());
                assert_eq!(f.base(), nu);
            }
        }
    }

    #[test]
    fn arc_deletion_is_node_contraction() {
        for nu in bases(7) {
            for t in enumerate_trees_direct(&nu) {
                let via_trees: BTreeSet<_> = t.contractions().iter().map(|(_, _, c)| tree_to_forest(c)).collect();
                let via_forests: BTreeSet<_> = tree_to_forest(&t).covers().into_iter().collect();
                assert_eq!(via_trees, via_forests, "{nu}");
            }
        }
    }

    #[test]
    fn maximal_forests_have_constant_size() {
        for nu in bases(6) {
            let forests = enumerate_forests_direct(&labels_of(&nu));
            let max = forests.iter().map(|f| f.arcs().len()).max().unwrap();
            for f in &forests {
                let extendable = forests.iter().any(|g| {
                    g.arcs().len() == f.arcs().len() + 1 && f.arcs().iter().all(|a| g.arcs().contains(a))
                });
                assert!(extendable || f.arcs().len() == max, "{nu}: maximal forest of size {}", f.arcs().len());
            }
        }
    }
}

mod posets {
    use super::*;

    #[test]
    fn covers_are_the_transitive_reduction() {
        for nu in bases(7) {
            let p = build_path_poset(&nu);
            let covers: HashSet<(usize, usize)> = p.covers().iter().copied().collect();
            for i in 0..p.len() {
                for j in 0..p.len() {
                    if i == j || !p.leq(i, j) {
                        continue;
                    }
                    let between = (0..p.len()).any(|k| k != i && k != j && p.leq(i, k) && p.leq(k, j));
                    assert_eq!(covers.contains(&(i, j)), !between, "{nu}: {i} < {j}");
                    if covers.contains(&(i, j)) {
                        assert_eq!(p.rank(j), p.rank(i) + 1);
                    }
                }
            }
            let dyck: BTreeSet<&StepWord> = (0..p.len()).filter(|&i| p.rank(i) == 0).map(|i| &p.elements()[i]).collect();
            let expected = enum_dyck(&nu);
            assert_eq!(dyck, expected.iter().collect());
        }
    }

    #[test]
    fn f_vector_and_euler_characteristic() {
        for nu in bases(9) {
            let p = build_path_poset(&nu);
            assert_eq!(p.f_vector(), sch_counts(&nu), "{nu}");
            assert_eq!(p.euler_characteristic(), 1, "{nu}");
        }
    }

    #[test]
    fn mobius_agrees_with_rank_parity() {
        for nu in bases(6) {
            let p = build_path_poset(&nu);
            let b = adjoin_bounds(&p);
            let mu = b.mobius();
            let eulerian_by_mobius = (0..b.len()).filter(|&x| x != b.top()).all(|x| {
                (0..b.len()).filter(|&y| y != b.top() && b.leq(x, y)).all(|y| {
                    let d = b.rank(y).unwrap() - b.rank(x).unwrap();
                    mu[x][y] == if d % 2 == 0 { 1 } else { -1 }
                })
            });
            assert_eq!(eulerian_by_mobius, b.eulerian_intervals_check(), "{nu}");
            assert!(eulerian_by_mobius);
            assert_eq!(mu[b.bottom()][b.top()], 0, "{nu}");
        }
    }
}

mod matching {
    use super::*;

    #[test]
    fn classes_partition_and_moves_invert() {
        for nu in bases(9) {
            let top = StepWord::top_path(nu.a(), nu.b());
            for w in enum_small(&nu) {
                match classify(&w, &nu).unwrap() {
                    MorseClass::Critical => assert_eq!(w, top),
                    MorseClass::Upper => {
                        let lo = match_down(&w, &nu).unwrap();
                        assert_eq!(classify(&lo, &nu).unwrap(), MorseClass::Lower, "{w}");
                        assert_eq!(match_up(&lo, &nu).unwrap(), w);
                        assert_eq!(nu.area2(&w).unwrap(), nu.area2(&lo).unwrap() + 1);
                    }
                    MorseClass::Lower => {
                        let up = match_up(&w, &nu).unwrap();
                        assert_eq!(classify(&up, &nu).unwrap(), MorseClass::Upper, "{w}");
                        assert_eq!(match_down(&up, &nu).unwrap(), w);
                    }
                }
            }
        }
    }

    #[test]
    fn acyclicity_checks_agree() {
        for nu in bases(7) {
            let p = build_path_poset(&nu);
            let m = build_matching(&p).unwrap();
            assert!(verify_acyclic(p.len(), p.covers(), &m), "{nu}");
            assert!(!has_alternating_cycle(p.len(), p.covers(), &m), "{nu}");
        }
    }
}
