//! Gauss factorizations, factorization patterns, the twin-distance theorem
//! machinery and the interval lemma verifier.
//!
//! A Gauss word has every letter occurring exactly twice. A Gauss
//! factorization of T is one whose 2s factors can be matched into s pairs of
//! equal words (twins); equivalently, every factor value occurs an even
//! number of times. (Requiring the value pattern itself to be a Gauss word
//! would be too strict: 0|0|0|1|1|0 pairs up as aabccb even though the value
//! "0" occurs four times, and some tangrams, such as 000110, admit no
//! factorization with each value appearing exactly twice.) Every tangram has
//! a Gauss factorization with s ≤ μ(T) pairs, and some twin pair must sit
//! within start-distance s|X|.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cut::{NodeBudget, SolverError};
use crate::word::{is_tangram, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaussError {
    #[error("boundaries do not induce nonempty factors of the word")]
    BadBoundaries,
    #[error("factors cannot be paired into twins: value {0} occurs {1} times")]
    NotGauss(usize, usize),
    #[error("segment endpoints are not a partition of [2n]")]
    BadSegments,
}

/// Canonical pattern of a factorization: symbols numbered by first
/// occurrence, with p_i = p_j iff F_i = F_j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationPattern {
    pub symbols: Vec<usize>,
}

impl FactorizationPattern {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// A Gauss pattern has every symbol occurring exactly twice.
    pub fn is_gauss(&self) -> bool {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &s in &self.symbols {
            *counts.entry(s).or_insert(0) += 1;
        }
        !self.symbols.is_empty() && counts.values().all(|&c| c == 2)
    }

    /// The factors can be matched into twin pairs iff every symbol occurs an
    /// even number of times.
    pub fn is_pairable(&self) -> bool {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &s in &self.symbols {
            *counts.entry(s).or_insert(0) += 1;
        }
        !self.symbols.is_empty() && counts.values().all(|&c| c % 2 == 0)
    }

    pub fn is_square(&self) -> bool {
        let n = self.symbols.len();
        n >= 2 && n % 2 == 0 && self.symbols[..n / 2] == self.symbols[n / 2..]
    }
}

/// Computes the canonical pattern of the factorization of `t` given 1-based
/// factor start positions (`boundaries[0]` must be 1).
pub fn pattern_of(t: &Word, boundaries: &[usize]) -> Result<FactorizationPattern, GaussError> {
    let factors = factors_from_boundaries(t, boundaries)?;
    let mut ids: HashMap<&[Letter], usize> = HashMap::new();
    let mut symbols = Vec::with_capacity(factors.len());
    for f in &factors {
        let next = ids.len();
        symbols.push(*ids.entry(f).or_insert(next));
    }
    Ok(FactorizationPattern { symbols })
}

fn factors_from_boundaries<'a>(
    t: &'a Word,
    boundaries: &[usize],
) -> Result<Vec<&'a [Letter]>, GaussError> {
    let n = t.len();
    if boundaries.is_empty() || boundaries[0] != 1 {
        return Err(GaussError::BadBoundaries);
    }
    if boundaries.windows(2).any(|w| w[0] >= w[1]) || *boundaries.last().unwrap() > n {
        return Err(GaussError::BadBoundaries);
    }
    let letters = t.letters();
    let mut out = Vec::with_capacity(boundaries.len());
    for (i, &b) in boundaries.iter().enumerate() {
        let end = if i + 1 < boundaries.len() {
            boundaries[i + 1] - 1
        } else {
            n
        };
        out.push(&letters[b - 1..end]);
    }
    Ok(out)
}

/// A factorization T = G_1 G_2 .. G_{2s} whose factors pair up into twins
/// (equal words). `boundaries` are 1-based factor start positions. Equal
/// factors are paired by consecutive occurrence (first with second, third
/// with fourth, and so on).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussFactorization {
    pub boundaries: Vec<usize>,
    pub factors: Vec<Word>,
    pub pattern: FactorizationPattern,
    /// s pairs (i, j) of 1-based factor indices with G_i = G_j.
    pub twins: Vec<(usize, usize)>,
}

impl GaussFactorization {
    pub fn from_boundaries(t: &Word, boundaries: &[usize]) -> Result<Self, GaussError> {
        let slices = factors_from_boundaries(t, boundaries)?;
        let pattern = pattern_of(t, boundaries)?;
        let mut occurs: HashMap<usize, usize> = HashMap::new();
        for &sym in &pattern.symbols {
            *occurs.entry(sym).or_insert(0) += 1;
        }
        if pattern.is_empty() {
            return Err(GaussError::NotGauss(0, 0));
        }
        if let Some((&sym, &c)) = occurs.iter().find(|&(_, &c)| c % 2 != 0) {
            return Err(GaussError::NotGauss(sym, c));
        }
        let mut first: HashMap<usize, usize> = HashMap::new();
        let mut twins = Vec::new();
        for (i, &sym) in pattern.symbols.iter().enumerate() {
            match first.remove(&sym) {
                Some(fi) => twins.push((fi + 1, i + 1)),
                None => {
                    first.insert(sym, i);
                }
            }
        }
        let factors = slices
            .iter()
            .map(|s| Word::new(s.to_vec(), t.alphabet()).expect("letters come from t"))
            .collect();
        twins.sort();
        Ok(GaussFactorization {
            boundaries: boundaries.to_vec(),
            factors,
            pattern,
            twins,
        })
    }

    /// Number of twin pairs s (the factorization has 2s factors).
    pub fn pairs(&self) -> usize {
        self.twins.len()
    }

    pub fn twin_word(&self, pair_index: usize) -> &Word {
        &self.factors[self.twins[pair_index].0 - 1]
    }

    /// Start-position distance of a twin pair.
    pub fn twin_distance(&self, pair_index: usize) -> usize {
        let (i, j) = self.twins[pair_index];
        self.boundaries[j - 1] - self.boundaries[i - 1]
    }

    pub fn all_factor_lengths_equal(&self) -> bool {
        let l = self.factors[0].len();
        self.factors.iter().all(|f| f.len() == l)
    }
}

/// A twin pair within the guaranteed distance bound s|X|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinWitness {
    pub pair_index: usize,
    pub distance: usize,
    pub bound: usize,
}

/// Finds a twin pair with start distance ≤ s|X|, preferring a strict one.
/// Such a pair always exists; equality can only remain when the pattern is a
/// square and all factors have equal length.
pub fn twin_distance_witness(g: &GaussFactorization) -> Option<TwinWitness> {
    let s = g.pairs();
    let mut tie: Option<TwinWitness> = None;
    for pi in 0..s {
        let distance = g.twin_distance(pi);
        let bound = s * g.twin_word(pi).len();
        if distance < bound {
            return Some(TwinWitness {
                pair_index: pi,
                distance,
                bound,
            });
        }
        if distance == bound && tie.is_none() {
            tie = Some(TwinWitness {
                pair_index: pi,
                distance,
                bound,
            });
        }
    }
    tie
}

/// Minimal s such that T admits a Gauss factorization into 2s factors.
/// `None` when T is not a tangram. Factor lengths are tried ascending, so the
/// reported factorization is deterministic.
pub fn min_gauss_pairs(
    t: &Word,
    max_s: Option<usize>,
    budget: &mut NodeBudget,
) -> Result<Option<(usize, GaussFactorization)>, SolverError> {
    if t.is_empty() {
        return Err(SolverError::EmptyWord);
    }
    if !is_tangram(t) {
        return Ok(None);
    }
    let n = t.len();
    let smax = max_s.unwrap_or((n + 1) / 2).min(n / 2);
    for s in 1..=smax {
        let mut boundaries: Vec<usize> = vec![1];
        if gauss_dfs(t.letters(), 0, 2 * s, &mut HashMap::new(), 0, &mut boundaries, budget)? {
            let g = GaussFactorization::from_boundaries(t, &boundaries)
                .expect("search only yields Gauss factorizations");
            return Ok(Some((s, g)));
        }
    }
    Ok(None)
}

/// Backtracking over factor boundaries with twin matching. `unmatched_len` is
/// the total length of factor values seen an odd number of times so far.
fn gauss_dfs<'a>(
    letters: &'a [Letter],
    pos: usize,
    parts_left: usize,
    counts: &mut HashMap<&'a [Letter], u8>,
    unmatched_len: usize,
    boundaries: &mut Vec<usize>,
    budget: &mut NodeBudget,
) -> Result<bool, SolverError> {
    budget.tick()?;
    let n = letters.len();
    if parts_left == 0 {
        return Ok(pos == n && unmatched_len == 0);
    }
    let remaining = n - pos;
    if remaining < parts_left {
        return Ok(false);
    }
    let unmatched_count = counts.values().filter(|&&c| c % 2 == 1).count();
    if unmatched_count > parts_left || unmatched_len > remaining {
        return Ok(false);
    }
    let max_len = remaining - (parts_left - 1);
    for len in 1..=max_len {
        let f = &letters[pos..pos + len];
        let c = *counts.get(f).unwrap_or(&0);
        *counts.entry(f).or_insert(0) += 1;
        let new_unmatched = if c % 2 == 0 {
            unmatched_len + len
        } else {
            unmatched_len - len
        };
        if pos + len < n {
            boundaries.push(pos + len + 1);
        }
        let ok = gauss_dfs(
            letters,
            pos + len,
            parts_left - 1,
            counts,
            new_unmatched,
            boundaries,
            budget,
        )?;
        if ok {
            return Ok(true);
        }
        if pos + len < n {
            boundaries.pop();
        }
        let e = counts.get_mut(f).unwrap();
        *e -= 1;
        if *e == 0 {
            counts.remove(f);
        }
    }
    Ok(false)
}

/// Enumerates every Gauss factorization of `t` (all values of s). Intended
/// for exhaustive checks on short words.
pub fn all_gauss_factorizations(t: &Word) -> Vec<GaussFactorization> {
    let n = t.len();
    let mut out = Vec::new();
    if n == 0 || !is_tangram(t) {
        return out;
    }
    // All factorizations correspond to subsets of interior cut points; keep
    // those whose factors pair up into twins.
    let letters = t.letters();
    let mut boundaries: Vec<usize> = vec![1];
    collect_all(letters, 0, &mut HashMap::new(), &mut boundaries, t, &mut out);
    out
}

fn collect_all<'a>(
    letters: &'a [Letter],
    pos: usize,
    counts: &mut HashMap<&'a [Letter], u8>,
    boundaries: &mut Vec<usize>,
    t: &Word,
    out: &mut Vec<GaussFactorization>,
) {
    let n = letters.len();
    if pos == n {
        if !counts.is_empty() && counts.values().all(|&c| c % 2 == 0) {
            out.push(
                GaussFactorization::from_boundaries(t, boundaries)
                    .expect("counts certify a twin pairing"),
            );
        }
        return;
    }
    for len in 1..=n - pos {
        let f = &letters[pos..pos + len];
        *counts.entry(f).or_insert(0) += 1;
        if pos + len < n {
            boundaries.push(pos + len + 1);
        }
        collect_all(letters, pos + len, counts, boundaries, t, out);
        if pos + len < n {
            boundaries.pop();
        }
        let e = counts.get_mut(f).unwrap();
        *e -= 1;
        if *e == 0 {
            counts.remove(f);
        }
    }
}

/// A family of n integer segments in [2n] whose 2n endpoints form a partition
/// of [2n].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentFamily {
    segments: Vec<(usize, usize)>,
}

impl SegmentFamily {
    pub fn new(segments: Vec<(usize, usize)>) -> Result<Self, GaussError> {
        let n = segments.len();
        if n == 0 {
            return Err(GaussError::BadSegments);
        }
        let mut seen = vec![false; 2 * n + 1];
        for &(a, b) in &segments {
            if a == 0 || b == 0 || a >= b || b > 2 * n {
                return Err(GaussError::BadSegments);
            }
            if seen[a] || seen[b] {
                return Err(GaussError::BadSegments);
            }
            seen[a] = true;
            seen[b] = true;
        }
        Ok(SegmentFamily { segments })
    }

    pub fn segments(&self) -> &[(usize, usize)] {
        &self.segments
    }

    /// Sum of geometric lengths l([a,b]) = b - a.
    pub fn interval_sum(&self) -> usize {
        self.segments.iter().map(|&(a, b)| b - a).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalLemmaResult {
    pub holds: bool,
    pub pairings: u64,
    pub equality_cases: u64,
}

/// Enumerates every partition of [2n] into n endpoint pairs ((2n-1)!! of
/// them) and checks that the geometric lengths sum to at most n².
pub fn verify_interval_lemma(n: usize) -> IntervalLemmaResult {
    let mut used = vec![false; 2 * n + 1];
    let mut res = IntervalLemmaResult {
        holds: true,
        pairings: 0,
        equality_cases: 0,
    };
    match_rec(n, &mut used, 0, &mut res);
    res
}

fn match_rec(n: usize, used: &mut Vec<bool>, sum: usize, res: &mut IntervalLemmaResult) {
    let first = (1..=2 * n).find(|&p| !used[p]);
    let a = match first {
        None => {
            res.pairings += 1;
            if sum > n * n {
                res.holds = false;
            }
            if sum == n * n {
                res.equality_cases += 1;
            }
            return;
        }
        Some(p) => p,
    };
    used[a] = true;
    for b in a + 1..=2 * n {
        if used[b] {
            continue;
        }
        used[b] = true;
        match_rec(n, used, sum + (b - a), res);
        used[b] = false;
    }
    used[a] = false;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::{cut_number, NodeBudget};
    use crate::word::Word;

    #[test]
    fn pattern_canonical_form() {
        let w = Word::from_chars("1234abcabcuv1234uv").unwrap();
        let p = pattern_of(&w, &[1, 5, 8, 11, 13, 17]).unwrap();
        assert_eq!(p.symbols, vec![0, 1, 1, 2, 0, 2]);
        assert!(p.is_gauss());
        assert!(!p.is_square());

        let w = Word::from_letters("abab").unwrap();
        let p = pattern_of(&w, &[1, 3]).unwrap();
        assert_eq!(p.symbols, vec![0, 0]);

        let p = pattern_of(&w, &[1]).unwrap();
        assert_eq!(p.symbols, vec![0]);
    }

    #[test]
    fn min_pairs_examples() {
        let mut budget = NodeBudget::default();

        let w = Word::from_letters("abab").unwrap();
        let (s, g) = min_gauss_pairs(&w, None, &mut budget).unwrap().unwrap();
        assert_eq!(s, 1);
        assert_eq!(g.pattern.symbols, vec![0, 0]);

        let w = Word::from_letters("aabb").unwrap();
        let (s, g) = min_gauss_pairs(&w, None, &mut budget).unwrap().unwrap();
        assert_eq!(s, 2);
        assert_eq!(g.pattern.symbols, vec![0, 0, 1, 1]);

        let w = Word::from_digits("0102").unwrap();
        assert_eq!(min_gauss_pairs(&w, None, &mut budget).unwrap(), None);
    }

    #[test]
    fn tuteurer_within_mu_pairs() {
        let w = Word::from_letters("tuteurer").unwrap();
        let mut budget = NodeBudget::default();
        let (s, _) = min_gauss_pairs(&w, None, &mut budget).unwrap().unwrap();
        let mu = cut_number(&w, None, &mut budget).unwrap().found_k().unwrap();
        assert!(s <= mu, "s = {s} > mu = {mu}");
    }

    #[test]
    fn twin_witness_examples() {
        // a|b|a|b: square pattern, all lengths 1, equality case.
        let w = Word::from_letters("abab").unwrap();
        let g = GaussFactorization::from_boundaries(&w, &[1, 2, 3, 4]).unwrap();
        let tw = twin_distance_witness(&g).unwrap();
        assert_eq!(tw.distance, 2);
        assert_eq!(tw.bound, 2);
        assert!(g.pattern.is_square() && g.all_factor_lengths_equal());

        // a|a|b|b: strict case.
        let w = Word::from_letters("aabb").unwrap();
        let g = GaussFactorization::from_boundaries(&w, &[1, 2, 3, 4]).unwrap();
        let tw = twin_distance_witness(&g).unwrap();
        assert_eq!(tw.distance, 1);
        assert!(tw.distance < tw.bound);
    }

    #[test]
    fn segment_families() {
        let f = SegmentFamily::new(vec![(1, 2), (3, 4)]).unwrap();
        assert_eq!(f.interval_sum(), 2);
        let f = SegmentFamily::new(vec![(1, 4), (2, 3)]).unwrap();
        assert_eq!(f.interval_sum(), 4);
        assert!(SegmentFamily::new(vec![(1, 2), (2, 4)]).is_err());
        assert!(SegmentFamily::new(vec![(1, 2), (3, 5)]).is_err());
    }

    #[test]
    fn interval_lemma_small() {
        let r = verify_interval_lemma(2);
        assert!(r.holds);
        assert_eq!(r.pairings, 3);
        assert!(r.equality_cases >= 1);

        let r = verify_interval_lemma(5);
        assert!(r.holds);
        assert_eq!(r.pairings, 945);
    }

    #[test]
    fn all_factorizations_of_square() {
        let w = Word::from_letters("abab").unwrap();
        let all = all_gauss_factorizations(&w);
        // ab|ab and a|b|a|b.
        assert_eq!(all.len(), 2);
        for g in &all {
            assert!(twin_distance_witness(g).is_some());
        }
    }
}
