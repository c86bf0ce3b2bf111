//! Randomized properties over base paths longer than the exhaustive sweeps reach.

use proptest::prelude::*;

use nuschroder::bijection::{
    highpeaks_to_valleys, large_to_small, left_flush, left_flush_by_flushing, right_flush_with_map,
    small_to_large, valleys_to_highpeaks,
};
use nuschroder::enumerate::{enum_dyck, enum_small, sch_counts, CountVector};
use nuschroder::forest::{forest_to_tree, tree_to_forest, CoveringForest, ForestJson};
use nuschroder::morse::{classify, match_down, match_up, MorseClass};
use nuschroder::poset::path_contractions;
use nuschroder::tree::ContractionKind;
use nuschroder::{parse_word, weakly_above, BasePath, Error, Step, StepWord};

fn base_path(max_len: usize) -> impl Strategy<Value = BasePath> {
    prop::collection::vec(any::<bool>(), 0..=max_len).prop_map(|bits| {
        let steps = bits.into_iter().map(|n| if n { Step::N } else { Step::E }).collect();
        BasePath::new(StepWord::new(steps)).unwrap()
    })
}

/// A base path together with one of its small paths, chosen by index.
fn base_and_small(max_len: usize) -> impl Strategy<Value = (BasePath, StepWord)> {
    (base_path(max_len), any::<prop::sample::Index>()).prop_map(|(nu, ix)| {
        let all = enum_small(&nu);
        let w = ix.get(&all).clone();
        (nu, w)
    })
}

fn framed(max_len: usize) -> impl Strategy<Value = BasePath> {
    base_path(max_len).prop_map(|nu| {
        let mut steps = vec![Step::N];
        steps.extend_from_slice(nu.word().steps());
        steps.push(Step::E);
        BasePath::new(StepWord::new(steps)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_text_roundtrips(text in "[NEDned]{0,20}") {
        let w = parse_word(&text).unwrap();
        prop_assert_eq!(w.to_string(), text.to_uppercase());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<StepWord>(&json).unwrap(), w);
    }

    #[test]
    fn parse_reports_first_bad_character(prefix in "[NED]{0,8}", bad in "[a-bf-mo-zA-BF-MO-Z0-9]", rest in "[NEDX]{0,5}") {
        let text = format!("{prefix}{bad}{rest}");
        match parse_word(&text) {
            Err(Error::Parse { position, found }) => {
                prop_assert_eq!(position, prefix.len() + 1);
                prop_assert_eq!(found.to_string(), bad);
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn small_paths_are_above_themselves_and_the_base((nu, w) in base_and_small(11)) {
        prop_assert!(weakly_above(&w, &w).unwrap());
        prop_assert!(weakly_above(&w, nu.word()).unwrap());
        prop_assert!(nu.is_large(&w).unwrap());
        prop_assert!(nu.area2(&w).unwrap() >= 0);
        prop_assert_eq!(w.endpoint(), nu.word().endpoint());
    }

    #[test]
    fn flushing_roundtrips((nu, w) in base_and_small(11)) {
        let (t, image) = right_flush_with_map(&w, &nu).unwrap();
        prop_assert_eq!(left_flush(&t), w.clone());
        prop_assert_eq!(left_flush_by_flushing(&t).unwrap(), w.clone());
        prop_assert_eq!(t.label_word(), w.clone());
        for (p, q) in w.points().into_iter().zip(image) {
            prop_assert_eq!(p.y, q.y);
            prop_assert_eq!(nu.horiz(p).unwrap(), t.hroot(q).unwrap());
        }
        let f = tree_to_forest(&t);
        prop_assert_eq!(forest_to_tree(&f).unwrap(), t);
        let json = serde_json::to_string(&ForestJson::from(&f)).unwrap();
        let back: ForestJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(CoveringForest::try_from(back).unwrap(), f);
    }

    #[test]
    fn doubling_map_roundtrips(nu in framed(9), ix in any::<prop::sample::Index>()) {
        let small = enum_small(&nu);
        let mu = ix.get(&small);
        let pi = small_to_large(mu, &nu).unwrap();
        prop_assert!(nu.is_large(&pi).unwrap());
        prop_assert!(!nu.is_small(&pi).unwrap());
        prop_assert_eq!(&large_to_small(&pi, &nu).unwrap(), mu);
    }

    #[test]
    fn high_peak_map_roundtrips(nu in framed(9), ix in any::<prop::sample::Index>()) {
        let dyck = enum_dyck(&nu);
        let d = ix.get(&dyck);
        let v = highpeaks_to_valleys(d, &nu).unwrap();
        prop_assert_eq!(v.valleys().len(), nu.high_peaks(d).unwrap().len());
        prop_assert_eq!(&valleys_to_highpeaks(&v, &nu).unwrap(), d);
    }

    #[test]
    fn contractions_raise_rank_and_respect_area((nu, w) in base_and_small(11)) {
        let a0 = nu.area2(&w).unwrap();
        for (kind, c) in path_contractions(&w, &nu).unwrap() {
            prop_assert!(nu.is_small(&c).unwrap());
            prop_assert_eq!(c.diag_count(), w.diag_count() + 1);
            let a1 = nu.area2(&c).unwrap();
            match kind {
                ContractionKind::Right => prop_assert_eq!(a1, a0 + 1),
                _ => prop_assert!(a1 < a0),
            }
        }
    }

    #[test]
    fn matching_moves_invert((nu, w) in base_and_small(11)) {
        match classify(&w, &nu).unwrap() {
            MorseClass::Upper => prop_assert_eq!(match_up(&match_down(&w, &nu).unwrap(), &nu).unwrap(), w),
            MorseClass::Lower => prop_assert_eq!(match_down(&match_up(&w, &nu).unwrap(), &nu).unwrap(), w),
            MorseClass::Critical => prop_assert_eq!(w, StepWord::top_path(nu.a(), nu.b())),
        }
    }

    #[test]
    fn alternating_sum_is_one(nu in base_path(16)) {
        prop_assert_eq!(sch_counts(&nu).alternating_sum(), 1.into());
    }

    #[test]
    fn shift_evaluates_one_higher(v in prop::collection::vec(0u64..1000, 0..8), x in 0u64..5) {
        let c = CountVector::from_u64s(&v);
        prop_assert_eq!(c.shift_by_one().evaluate(x), c.evaluate(x + 1));
        prop_assert!(c.entries().last().is_none_or(|e| *e != 0u32.into()));
    }
}
