//! Cross-checks the production cut-number solver against a deliberately
//! naive oracle: enumerate every set of cut positions, every permutation of
//! the pieces, and every split point. No pruning, no memoization.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tangram::cut::{cut_number, verify_cutting, CutOutcome, NodeBudget};
use tangram::word::{is_tangram, Letter, Word};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn combinations(pool: usize, k: usize) -> Vec<Vec<usize>> {
    // k-subsets of 1..=pool
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, pool: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=pool {
            cur.push(v);
            rec(v + 1, pool, k, cur, out);
            cur.pop();
        }
    }
    rec(1, pool, k, &mut cur, &mut out);
    out
}

/// Least k admitting a valid cutting, by brute force. None for non-tangrams.
fn mu_oracle(letters: &[Letter]) -> Option<usize> {
    let n = letters.len();
    if n == 0 || !tangram::word::is_tangram_slice(letters) {
        return None;
    }
    for k in 1..n {
        for cuts in combinations(n - 1, k) {
            let mut bounds = vec![0];
            bounds.extend(cuts.iter().copied());
            bounds.push(n);
            let pieces: Vec<&[Letter]> = bounds.windows(2).map(|w| &letters[w[0]..w[1]]).collect();
            for perm in permutations(k + 1) {
                let arranged: Vec<Letter> =
                    perm.iter().flat_map(|&i| pieces[i].iter().copied()).collect();
                for j in 1..=k {
                    let split: usize = perm[..j].iter().map(|&i| pieces[i].len()).sum();
                    if 2 * split == n && arranged[..split] == arranged[split..] {
                        return Some(k);
                    }
                }
            }
        }
    }
    unreachable!("every tangram has a cutting into single letters");
}

fn solver_mu(letters: &[Letter], alphabet: usize) -> Option<usize> {
    let w = Word::new(letters.to_vec(), alphabet).unwrap();
    match cut_number(&w, None, &mut NodeBudget::default()).unwrap() {
        CutOutcome::NotTangram => None,
        CutOutcome::Found { k, cutting } => {
            assert!(verify_cutting(&w, &cutting), "invalid certificate for {w}");
            Some(k)
        }
        CutOutcome::NotWithinMaxK => panic!("unbounded search reported a cap"),
    }
}

#[test]
fn matches_oracle_on_all_binary_words_up_to_8() {
    for n in 1..=8usize {
        for code in 0..(1u32 << n) {
            let letters: Vec<Letter> = (0..n).map(|i| ((code >> i) & 1) as Letter).collect();
            assert_eq!(
                solver_mu(&letters, 2),
                mu_oracle(&letters),
                "disagreement on {letters:?}"
            );
        }
    }
}

#[test]
fn matches_oracle_on_random_longer_tangrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut checked = 0;
    while checked < 40 {
        let (n, q) = if checked % 2 == 0 { (10, 2) } else { (10, 3) };
        let letters: Vec<Letter> = (0..n).map(|_| rng.gen_range(0..q as Letter)).collect();
        if !is_tangram(&Word::new(letters.clone(), q).unwrap()) {
            continue;
        }
        assert_eq!(
            solver_mu(&letters, q),
            mu_oracle(&letters),
            "disagreement on {letters:?}"
        );
        checked += 1;
    }
}

#[test]
fn twelve_letter_spot_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    let mut checked = 0;
    while checked < 6 {
        let letters: Vec<Letter> = (0..12).map(|_| rng.gen_range(0..2)).collect();
        if !tangram::word::is_tangram_slice(&letters) {
            continue;
        }
        assert_eq!(solver_mu(&letters, 2), mu_oracle(&letters));
        checked += 1;
    }
}
