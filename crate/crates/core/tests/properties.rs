use proptest::prelude::*;

use cutseq::classify::{palindrome_check_star, relation_at, relation_sets};
use cutseq::gaps::{factor_gaps, gap_labels, reduce_product};
use cutseq::kernel::{envelope_word, is_factor, kernel_cmp, kernel_of, kernel_word, star_decompose};
use cutseq::oracle::{cutting_prefix, Scanner};
use cutseq::positions::{factor_gap_positional, factor_position};
use cutseq::word::{f_len, fdm, fixed_point_prefix, mirror, sub_apply};
use cutseq::{KernelIndex, RelationKind, SeqParams, SignedWord, Word};

fn params(d: u32) -> SeqParams {
    SeqParams::new(d).unwrap().with_cap(1 << 24)
}

fn ab_word(max: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('b')], 0..max)
        .prop_map(|v| Word::parse(&v.into_iter().collect::<String>()).unwrap())
}

/// A factor of `F_{d,∞}` cut from its first 20 000 letters.
fn factor() -> impl Strategy<Value = (u32, Word)> {
    (2u32..=5, 0usize..19_000, 1usize..=60).prop_map(|(d, start, len)| {
        let prefix = fixed_point_prefix(params(d), 20_000).unwrap();
        (d, prefix.slice(start + 1, start + len))
    })
}

fn signed() -> impl Strategy<Value = SignedWord> {
    (ab_word(8), any::<bool>()).prop_map(|(w, inv)| if inv { SignedWord::inverse(w) } else { SignedWord::positive(w) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mirror_is_an_involution(w in ab_word(40)) {
        prop_assert_eq!(mirror(&mirror(&w)), w.clone());
        prop_assert_eq!(w.is_palindrome(), mirror(&w) == w);
    }

    #[test]
    fn substitution_is_a_morphism(j in 0u32..6, u in ab_word(20), v in ab_word(20)) {
        prop_assert_eq!(sub_apply(j, &u.concat(&v)), sub_apply(j, &u).concat(&sub_apply(j, &v)));
    }

    #[test]
    fn prefix_is_fixed_by_the_substitution(d in 2u32..=6, n in 1u64..2000) {
        let w = fixed_point_prefix(params(d), n).unwrap();
        prop_assert!(sub_apply(d, &w).starts_with(&w));
        let longer = fixed_point_prefix(params(d), n + 37).unwrap();
        prop_assert!(longer.starts_with(&w));
    }

    #[test]
    fn standard_words_are_prefixes(d in 2u32..=6, m in 0i32..6) {
        let f = fdm(params(d), m).unwrap();
        prop_assert_eq!(f.len() as u64, f_len(params(d), m).unwrap());
        let prefix = fixed_point_prefix(params(d), f.len() as u64 + 5).unwrap();
        prop_assert!(prefix.starts_with(&f));
    }

    #[test]
    fn cutting_sequence_matches(d in 2u32..=12, n in 0u64..3000) {
        prop_assert_eq!(cutting_prefix(params(d), n).unwrap(), fixed_point_prefix(params(d), n).unwrap());
    }

    #[test]
    fn free_group_reduction(u in signed(), v in signed(), w in signed()) {
        // only positive or single-inverse results are representable; when every
        // intermediate is, both bracketings agree with the flat product
        let flat = reduce_product(&[&u, &v, &w]);
        if let (Ok(uv), Ok(vw)) = (reduce_product(&[&u, &v]), reduce_product(&[&v, &w])) {
            if let (Ok(l), Ok(r)) = (reduce_product(&[&uv, &w]), reduce_product(&[&u, &vw])) {
                prop_assert_eq!(&l, &r);
                prop_assert_eq!(Ok(l), flat);
            }
        }
        let inv = match u.sign() {
            cutseq::Sign::Positive => SignedWord::inverse(u.letters().clone()),
            _ => SignedWord::positive(u.letters().clone()),
        };
        prop_assert_eq!(reduce_product(&[&u, &inv]).unwrap(), SignedWord::empty());
    }

    #[test]
    fn membership_matches_scan(d in 2u32..=4, w in ab_word(12)) {
        prop_assume!(!w.is_empty());
        let prefix = fixed_point_prefix(params(d), 50_000).unwrap();
        prop_assert_eq!(is_factor(&w, params(d)).unwrap(), w.occurs_in(&prefix));
    }

    #[test]
    fn kernel_is_the_greatest_occurring((d, w) in factor()) {
        let p = params(d);
        let (k, pos) = kernel_of(&w, p).unwrap();
        let kw = kernel_word(k).unwrap();
        prop_assert_eq!(w.slice(pos as usize, pos as usize + kw.len() - 1), kw);
        for m in 0..=8u32 {
            for i in 0..d {
                let other = KernelIndex::new(p, m, i).unwrap();
                if kernel_cmp(other, k).unwrap().is_gt() && f_len(p, m as i32 - 1).unwrap() <= w.len() as u64 {
                    prop_assert!(!kernel_word(other).unwrap().occurs_in(&w), "{} occurs in {}", other, w);
                }
            }
        }
    }

    #[test]
    fn star_round_trip((d, w) in factor()) {
        let p = params(d);
        let star = star_decompose(&w, p).unwrap();
        prop_assert_eq!(star.reassemble().unwrap(), w.clone());
        let kw = kernel_word(star.kernel).unwrap();
        prop_assert_eq!(w.occurrences_in(&w).unwrap().len(), 1);
        prop_assert_eq!(kw.occurrences_in(&w).unwrap().len(), 1);
        prop_assert!(w.occurs_in(&envelope_word(star.kernel).unwrap()));
        prop_assert_eq!(palindrome_check_star(&w, p).unwrap(), w.is_palindrome());
    }

    #[test]
    fn mirror_of_a_factor_is_a_factor((d, w) in factor()) {
        prop_assert!(is_factor(&mirror(&w), params(d)).unwrap());
    }

    #[test]
    fn positions_and_gaps_match_scan((d, w) in factor(), count in 2usize..60) {
        let p = params(d);
        let report = Scanner::new(p).gaps(&w, count + 1).unwrap();
        let profile = factor_gaps(&w, p).unwrap();
        let i = star_decompose(&w, p).unwrap().kernel.i();
        let labels: Vec<_> = gap_labels(p, i).unwrap().take(count).collect();
        for q in 1..=count {
            prop_assert_eq!(factor_position(&w, p, q as u64).unwrap(), report.positions[q - 1]);
            let g = profile.gap(labels[q - 1]);
            prop_assert_eq!(g, &report.gaps[q - 1]);
            let rel: RelationKind = g.sign().into();
            prop_assert_eq!(relation_at(&w, p, q as u64).unwrap(), rel);
        }
        prop_assert_eq!(factor_gap_positional(&w, p, count as u64).unwrap(), report.gaps[count - 1].clone());
        let sets = relation_sets(&w, p).unwrap();
        for g in &report.gaps {
            let r: RelationKind = g.sign().into();
            let member = match r {
                RelationKind::Adjacent => sets.adjacent,
                RelationKind::Separated => sets.separated,
                RelationKind::Overlapped => sets.overlapped,
            };
            prop_assert!(member);
        }
    }

    #[test]
    fn non_factors_are_rejected(d in 2u32..=4, w in ab_word(14)) {
        prop_assume!(!w.is_empty() && !is_factor(&w, params(d)).unwrap());
        prop_assert!(star_decompose(&w, params(d)).is_err());
        prop_assert!(factor_gaps(&w, params(d)).is_err());
        prop_assert!(factor_position(&w, params(d), 1).is_err());
    }
}
