//! Property tests for the core invariants on arbitrary short words.

use proptest::prelude::*;
use tangram::codec::{decode, encode, CodecParams};
use tangram::cut::{cut_number, split_number, verify_cutting, CutOutcome, NodeBudget};
use tangram::gauss::min_gauss_pairs;
use tangram::word::{is_square, is_tangram, parity_vector, Letter, Word};

fn letters(alphabet: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0..alphabet as Letter, 0..=max_len)
}

/// A half followed by a shuffle of itself: always a tangram.
fn tangrams(alphabet: usize, max_half: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0..alphabet as Letter, 1..=max_half).prop_flat_map(|half| {
        (Just(half.clone()), Just(half).prop_shuffle()).prop_map(|(a, b)| {
            let mut t = a;
            t.extend(b);
            t
        })
    })
}

proptest! {
    #[test]
    fn parity_concatenation_is_xor(u in letters(4, 12), v in letters(4, 12)) {
        let wu = Word::new(u.clone(), 4).unwrap();
        let wv = Word::new(v.clone(), 4).unwrap();
        let uv = wu.concat(&wv);
        prop_assert_eq!(
            parity_vector(&uv).bits(),
            parity_vector(&wu).xor(&parity_vector(&wv)).bits()
        );
        prop_assert_eq!(is_tangram(&uv), parity_vector(&uv).is_zero());
    }

    #[test]
    fn cut_certificates_verify(ls in letters(3, 10)) {
        prop_assume!(!ls.is_empty());
        let w = Word::new(ls, 3).unwrap();
        match cut_number(&w, None, &mut NodeBudget::default()).unwrap() {
            CutOutcome::NotTangram => prop_assert!(!is_tangram(&w)),
            CutOutcome::Found { k, cutting } => {
                prop_assert!(is_tangram(&w));
                prop_assert_eq!(cutting.cuts.len(), k);
                prop_assert!(verify_cutting(&w, &cutting));
                // mu = 1 exactly for squares
                prop_assert_eq!(k == 1, is_square(&w));
            }
            CutOutcome::NotWithinMaxK => prop_assert!(false, "no cap was given"),
        }
    }

    #[test]
    fn split_number_below_cut_number(ls in tangrams(3, 5)) {
        let w = Word::new(ls, 3).unwrap();
        let mut budget = NodeBudget::default();
        let (alpha, cert) = split_number(&w, None, &mut budget).unwrap().unwrap();
        prop_assert_eq!(cert.cuts.len(), alpha);
        let mu = cut_number(&w, None, &mut budget).unwrap().found_k().unwrap();
        prop_assert!(alpha <= mu);
    }

    #[test]
    fn gauss_pairs_sandwich_cut_number(ls in tangrams(2, 5)) {
        let w = Word::new(ls, 2).unwrap();
        let mut budget = NodeBudget::default();
        let (s, g) = min_gauss_pairs(&w, None, &mut budget).unwrap().unwrap();
        prop_assert_eq!(g.pairs(), s);
        let mu = cut_number(&w, None, &mut budget).unwrap().found_k().unwrap();
        prop_assert!(s <= mu && mu <= 2 * s - 1);
    }

    #[test]
    fn codec_round_trips(ls in letters(3, 20), k in 1usize..=2) {
        let n = ls.len();
        let x = Word::new(ls, 3).unwrap();
        let p = CodecParams::new(3, k, 2 * k);
        let (s, log) = encode(&x, &p, &mut NodeBudget::default()).unwrap();
        prop_assert_eq!(s.len() + log.total_removed(), n);
        let back = decode(&s, &log, n, &p).unwrap();
        prop_assert_eq!(back.letters(), x.letters());
    }
}
