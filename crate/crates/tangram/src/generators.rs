//! Named word families: Zimin words, the periodic Zimin word, ternary
//! square-free words, the quaternary extremal prefix, Dejean words by
//! backtracking search, and the product construction.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cut::{NodeBudget, SolverError};
use crate::word::{is_square_free, Letter, Word, WordError, MAX_ALPHABET};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("zimin index {0} out of range 1..=26")]
    ZiminIndex(usize),
    #[error("periodic zimin word needs alphabet size >= 2, got {0}")]
    PeriodicAlphabet(usize),
    #[error("dejean search needs alphabet size >= 5, got {0}")]
    DejeanAlphabet(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// The n-th Zimin word over letters a_1..a_n: Z_1 = a, Z_n = Z_{n-1} a_n
/// Z_{n-1}. Length 2^n - 1; contains no tangram factor.
pub fn zimin(n: usize) -> Result<Word, GenError> {
    if n == 0 || n > 26 {
        return Err(GenError::ZiminIndex(n));
    }
    let mut z: Vec<Letter> = vec![0];
    for i in 1..n {
        let mut next = z.clone();
        next.push(i as Letter);
        next.extend_from_slice(&z);
        z = next;
    }
    Ok(Word::new(z, n)?)
}

/// Prefix of length `len` of the periodic word (Z_{q-1} a_q)^ω over an
/// alphabet of size q. Its shortest tangram factors have length exactly 2^q.
pub fn zimin_periodic_prefix(q: usize, len: usize) -> Result<Word, GenError> {
    if q < 2 {
        return Err(GenError::PeriodicAlphabet(q));
    }
    let mut period = zimin(q - 1)?.letters().to_vec();
    period.push((q - 1) as Letter);
    let letters: Vec<Letter> = period.iter().copied().cycle().take(len).collect();
    Ok(Word::new(letters, q)?)
}

/// A square-free word of length `len` over three letters: prefix of the
/// fixed point of the morphism a -> abc, b -> ac, c -> b, re-verified by the
/// square scanner.
pub fn ternary_square_free(len: usize) -> Word {
    let mut w: Vec<Letter> = vec![0];
    while w.len() < len.max(1) {
        let mut next = Vec::with_capacity(w.len() * 3);
        for &l in &w {
            match l {
                0 => next.extend_from_slice(&[0, 1, 2]),
                1 => next.extend_from_slice(&[0, 2]),
                _ => next.push(1),
            }
        }
        w = next;
    }
    w.truncate(len);
    let word = Word::new(w, 3).expect("morphism emits letters 0..3");
    assert!(is_square_free(&word), "square-free morphism output failed re-verification");
    word
}

/// The 28-letter prefix of the extremal quaternary word of Pansiot. Data,
/// not computation.
pub fn pansiot_prefix() -> Word {
    Word::from_letters("abcadbacdabcdacbdcadbacdabca").expect("constant is well-formed")
}

/// Repeat-distance threshold kept as a rational num/den: every repeated
/// factor F must sit at distance >= (num/den) * |F| from its previous
/// occurrence. Avoids floating-point comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub num: usize,
    pub den: usize,
}

impl Threshold {
    /// The Dejean threshold (r-1)|F| for alphabets of size r >= 5.
    pub fn dejean(r: usize) -> Self {
        Threshold { num: r - 1, den: 1 }
    }

    /// The extremal quaternary threshold (5/2)|F|.
    pub fn quaternary() -> Self {
        Threshold { num: 5, den: 2 }
    }

    /// The extremal ternary threshold (4/3)|F|.
    pub fn ternary() -> Self {
        Threshold { num: 4, den: 3 }
    }

    fn violated(&self, distance: usize, flen: usize) -> bool {
        distance * self.den < self.num * flen
    }
}

/// A repeated factor closer than the threshold allows: `f` occurs at 1-based
/// positions `i < j` with j - i below the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatViolation {
    pub factor: Word,
    pub first: usize,
    pub second: usize,
}

/// Checks the repeat-distance property for every factor. Only consecutive
/// occurrence pairs need checking: the minimum distance per factor is
/// attained there.
pub fn repeat_check(w: &Word, th: Threshold) -> Result<(), Box<RepeatViolation>> {
    let letters = w.letters();
    let n = letters.len();
    for m in 1..=n.saturating_sub(1) {
        let mut last: std::collections::HashMap<&[Letter], usize> = std::collections::HashMap::new();
        for i in 0..=n - m {
            let f = &letters[i..i + m];
            if let Some(&prev) = last.get(f) {
                if th.violated(i - prev, m) {
                    return Err(Box::new(RepeatViolation {
                        factor: Word::new(f.to_vec(), w.alphabet()).expect("letters from w"),
                        first: prev + 1,
                        second: i + 1,
                    }));
                }
            }
            last.insert(f, i);
        }
    }
    Ok(())
}

/// Dejean-word check at threshold (r-1)|F|.
pub fn dejean_check(w: &Word, r: usize) -> Result<(), Box<RepeatViolation>> {
    repeat_check(w, Threshold::dejean(r))
}

/// Outcome of a repeat-distance word search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepeatSearch {
    Found(Word),
    /// The whole tree was explored; no word of the requested length exists.
    Exhausted,
    BudgetExhausted,
}

impl RepeatSearch {
    pub fn word(self) -> Option<Word> {
        match self {
            RepeatSearch::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Lexicographically-least backtracking search for a word of length `len`
/// over r letters in which every repeated factor sits at distance at least
/// (r-1)|F|. Budget exhaustion is reported distinctly from nonexistence.
pub fn dejean_search(
    r: usize,
    len: usize,
    budget: &mut NodeBudget,
) -> Result<RepeatSearch, GenError> {
    if r < 5 {
        return Err(GenError::DejeanAlphabet(r));
    }
    search_repeat_free(r, len, Threshold::dejean(r), budget)
}

/// Generic threshold search; letters are tried ascending so the first
/// completion is the lexicographically least.
pub fn search_repeat_free(
    r: usize,
    len: usize,
    th: Threshold,
    budget: &mut NodeBudget,
) -> Result<RepeatSearch, GenError> {
    if r == 0 || r > MAX_ALPHABET {
        return Err(GenError::Word(WordError::BadAlphabet(r)));
    }
    let mut w: Vec<Letter> = Vec::with_capacity(len);
    match extend(&mut w, r, len, th, budget) {
        Ok(true) => Ok(RepeatSearch::Found(Word::new(w, r)?)),
        Ok(false) => Ok(RepeatSearch::Exhausted),
        Err(SolverError::BudgetExhausted) => Ok(RepeatSearch::BudgetExhausted),
        Err(e) => unreachable!("search does not raise {e}"),
    }
}

fn extend(
    w: &mut Vec<Letter>,
    r: usize,
    len: usize,
    th: Threshold,
    budget: &mut NodeBudget,
) -> Result<bool, SolverError> {
    if w.len() == len {
        return Ok(true);
    }
    budget.tick()?;
    for l in 0..r as Letter {
        w.push(l);
        if suffixes_ok(w, th) && extend(w, r, len, th, budget)? {
            return Ok(true);
        }
        w.pop();
    }
    Ok(false)
}

/// Only suffixes ending at the newly appended letter need rechecking.
fn suffixes_ok(w: &[Letter], th: Threshold) -> bool {
    let n = w.len();
    for m in 1..n {
        let start = n - m; // 0-based start of the suffix factor
        let f = &w[start..];
        // Any earlier occurrence at 0-based position j violates iff
        // start - j < (num/den) * m; scan only that window.
        let lowest = if th.num * m > start * th.den {
            0
        } else {
            // smallest j with start - j still violating, rounded to cover
            // the strict rational inequality
            start - (th.num * m + th.den - 1) / th.den + 1
        };
        for j in (lowest..start).rev() {
            if th.violated(start - j, m) && &w[j..j + m] == f {
                return false;
            }
        }
    }
    true
}

/// Product word over the alphabet A x B: letter i encodes (v_i, w_i).
pub fn product_word(v: &Word, w: &Word) -> Result<Word, WordError> {
    if v.len() != w.len() {
        return Err(WordError::LengthMismatch(v.len(), w.len()));
    }
    let q = v.alphabet() * w.alphabet();
    if q > MAX_ALPHABET {
        return Err(WordError::BadAlphabet(q));
    }
    let letters: Vec<Letter> = v
        .letters()
        .iter()
        .zip(w.letters())
        .map(|(&a, &b)| a * w.alphabet() as Letter + b)
        .collect();
    Word::new(letters, q)
}

/// Inverse of `product_word`: recovers the two coordinate words.
pub fn product_project(x: &Word, q_v: usize, q_w: usize) -> Result<(Word, Word), WordError> {
    let v: Vec<Letter> = x.letters().iter().map(|&l| l / q_w as Letter).collect();
    let w: Vec<Letter> = x.letters().iter().map(|&l| l % q_w as Letter).collect();
    let _ = q_v;
    Ok((Word::new(v, q_v)?, Word::new(w, q_w)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::{cut_number, CutOutcome, NodeBudget};
    use crate::word::{is_square_free, is_tangram};

    #[test]
    fn zimin_words() {
        assert_eq!(zimin(1).unwrap().to_string(), "a");
        assert_eq!(zimin(3).unwrap().to_string(), "abacaba");
        assert_eq!(zimin(5).unwrap().len(), 31);
        assert!(zimin(0).is_err());
        assert!(zimin(27).is_err());
    }

    #[test]
    fn zimin_has_no_tangram_factor() {
        for n in 1..=5 {
            let z = zimin(n).unwrap();
            let letters = z.letters();
            for i in 0..letters.len() {
                for j in i + 1..=letters.len() {
                    let f = Word::new(letters[i..j].to_vec(), z.alphabet()).unwrap();
                    assert!(!is_tangram(&f), "Z_{n} contains tangram {f}");
                }
            }
        }
    }

    #[test]
    fn periodic_prefixes() {
        assert_eq!(zimin_periodic_prefix(2, 6).unwrap().to_string(), "ababab");
        assert_eq!(zimin_periodic_prefix(3, 8).unwrap().to_string(), "abacabac");
        assert!(zimin_periodic_prefix(1, 4).is_err());
    }

    #[test]
    fn square_free_generator() {
        for len in [0, 1, 5, 100] {
            let w = ternary_square_free(len);
            assert_eq!(w.len(), len);
            assert!(is_square_free(&w));
        }
    }

    #[test]
    fn pansiot_prefix_facts() {
        let n = pansiot_prefix();
        assert_eq!(n.len(), 28);
        let f = n.factor(9, 8).unwrap();
        assert_eq!(f.to_string(), "dabcdacb");
        let mu = cut_number(&f, None, &mut NodeBudget::default())
            .unwrap()
            .found_k()
            .unwrap();
        assert_eq!(mu, 3);
        // The distance-form (5/2)|F| threshold fails on this finite prefix
        // ("cd" recurs at distance 4); only the factor claim is checkable.
        let v = repeat_check(&n, Threshold::quaternary()).unwrap_err();
        assert_eq!(v.factor.to_string(), "cd");
        assert_eq!((v.first, v.second), (8, 12));
    }

    #[test]
    fn dejean_check_examples() {
        let aa = Word::from_letters("aa").unwrap();
        let v = dejean_check(&aa, 5).unwrap_err();
        assert_eq!(v.factor.to_string(), "a");
        assert_eq!((v.first, v.second), (1, 2));
    }

    #[test]
    fn dejean_search_small() {
        let mut budget = NodeBudget::default();
        let w = dejean_search(5, 1, &mut budget).unwrap().word().unwrap();
        assert_eq!(w.to_string(), "a");

        let w = dejean_search(5, 30, &mut budget).unwrap().word().unwrap();
        assert!(dejean_check(&w, 5).is_ok());
    }

    #[test]
    fn products() {
        let v = Word::from_letters("ab").unwrap();
        let w = Word::from_letters("aba").unwrap();
        assert!(product_word(&v, &w).is_err());

        let w = Word::from_letters("ba").unwrap();
        let x = product_word(&v, &w).unwrap();
        assert_eq!(x.letters(), &[1, 2]);
        let (pv, pw) = product_project(&x, 2, 2).unwrap();
        assert_eq!(pv, v);
        assert_eq!(pw, w);
    }

    #[test]
    fn product_factor_projections_bound_mu() {
        // If a product factor has cut number at most k, so do both
        // projections at the same positions.
        let v = Word::from_digits("01020102").unwrap();
        let w = Word::from_digits("12121212").unwrap();
        let x = product_word(&v, &w).unwrap();
        let mut budget = NodeBudget::default();
        for start in 1..=x.len() {
            for len in 1..=x.len() - start + 1 {
                let f = x.factor(start, len).unwrap();
                if let CutOutcome::Found { k, .. } =
                    cut_number(&f, Some(2), &mut budget).unwrap()
                {
                    let fv = v.factor(start, len).unwrap();
                    let fw = w.factor(start, len).unwrap();
                    for p in [fv, fw] {
                        let pk = cut_number(&p, Some(k), &mut budget).unwrap();
                        assert!(matches!(pk, CutOutcome::Found { .. }), "projection of {f} exceeds k = {k}");
                    }
                }
            }
        }
    }
}
