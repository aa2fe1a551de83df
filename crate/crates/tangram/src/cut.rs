//! Exact cut-number computation with certificates, plus the split number.
//!
//! The cut number of a tangram T is the least k such that T cut into k+1
//! nonempty factors admits an arrangement F_{σ(1)}..F_{σ(j)} =
//! F_{σ(j+1)}..F_{σ(k+1)}. There is no known polynomial algorithm, so the
//! solver enumerates cut positions (k ascending, compositions in lex order)
//! and decides arrangeability with a memoized two-row builder: keep two
//! partial concatenations where one is a prefix of the other and always
//! extend the shorter row with an unused piece.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{is_tangram, Letter, Word};

/// Default node budget for solver invocations.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("empty word rejected")]
    EmptyWord,
    #[error("node budget exhausted")]
    BudgetExhausted,
}

/// Counts search states; exhaustion is an error distinct from a negative
/// answer, never silently conflated with it.
#[derive(Debug, Clone)]
pub struct NodeBudget {
    remaining: u64,
    spent: u64,
}

impl NodeBudget {
    pub fn new(nodes: u64) -> Self {
        NodeBudget {
            remaining: nodes,
            spent: 0,
        }
    }

    pub fn tick(&mut self) -> Result<(), SolverError> {
        if self.remaining == 0 {
            return Err(SolverError::BudgetExhausted);
        }
        self.remaining -= 1;
        self.spent += 1;
        Ok(())
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }
}

impl Default for NodeBudget {
    fn default() -> Self {
        NodeBudget::new(DEFAULT_NODE_BUDGET)
    }
}

/// Certificate for μ(T) ≤ k: cut positions (1-based, cut after position p),
/// a permutation σ of the k+1 factors (1-based indices) and the split index j
/// with F_{σ(1)}..F_{σ(j)} = F_{σ(j+1)}..F_{σ(k+1)}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cutting {
    pub cuts: Vec<usize>,
    pub sigma: Vec<usize>,
    pub split: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutOutcome {
    /// μ = ∞; represented as an absent value, never a sentinel integer.
    NotTangram,
    Found { k: usize, cutting: Cutting },
    /// Tangram, but no cutting with at most `max_k` cuts exists.
    NotWithinMaxK,
}

impl CutOutcome {
    pub fn found_k(&self) -> Option<usize> {
        match self {
            CutOutcome::Found { k, .. } => Some(*k),
            _ => None,
        }
    }
}

/// Splits `letters` at the 1-based cut positions.
pub(crate) fn pieces_of<'a>(letters: &'a [Letter], cuts: &[usize]) -> Vec<&'a [Letter]> {
    let mut pieces = Vec::with_capacity(cuts.len() + 1);
    let mut prev = 0usize;
    for &c in cuts {
        pieces.push(&letters[prev..c]);
        prev = c;
    }
    pieces.push(&letters[prev..]);
    pieces
}

/// Checks the arrangement equation for a claimed cutting.
pub fn verify_cutting(t: &Word, c: &Cutting) -> bool {
    let n = t.len();
    let k = c.cuts.len();
    if n == 0 || c.sigma.len() != k + 1 || c.split == 0 || c.split > k {
        return false;
    }
    if c.cuts.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    if c.cuts.iter().any(|&p| p == 0 || p >= n) {
        return false;
    }
    let mut seen = vec![false; k + 1];
    for &s in &c.sigma {
        if s == 0 || s > k + 1 || seen[s - 1] {
            return false;
        }
        seen[s - 1] = true;
    }
    let pieces = pieces_of(t.letters(), &c.cuts);
    let first: Vec<Letter> = c.sigma[..c.split]
        .iter()
        .flat_map(|&s| pieces[s - 1].iter().copied())
        .collect();
    let second: Vec<Letter> = c.sigma[c.split..]
        .iter()
        .flat_map(|&s| pieces[s - 1].iter().copied())
        .collect();
    !first.is_empty() && first == second
}

/// Computes μ(T) with a verifying certificate. Searches k = 1, 2, ... up to
/// `max_k` (default |T|-1, which always suffices for tangrams).
pub fn cut_number(
    t: &Word,
    max_k: Option<usize>,
    budget: &mut NodeBudget,
) -> Result<CutOutcome, SolverError> {
    if t.is_empty() {
        return Err(SolverError::EmptyWord);
    }
    if !is_tangram(t) {
        return Ok(CutOutcome::NotTangram);
    }
    let n = t.len();
    let kmax = max_k.unwrap_or(n - 1).min(n - 1);
    for k in 1..=kmax {
        if let Some(cutting) = search_k(t.letters(), k, budget)? {
            debug_assert!(verify_cutting(t, &cutting));
            return Ok(CutOutcome::Found { k, cutting });
        }
    }
    Ok(CutOutcome::NotWithinMaxK)
}

/// Searches all cuttings with exactly `k` cuts, in lexicographic order of the
/// cut position sets; first success wins.
fn search_k(
    letters: &[Letter],
    k: usize,
    budget: &mut NodeBudget,
) -> Result<Option<Cutting>, SolverError> {
    let n = letters.len();
    if k + 1 > n || n % 2 != 0 {
        return Ok(None);
    }
    let mut cuts: Vec<usize> = (1..=k).collect();
    loop {
        budget.tick()?;
        if half_length_reachable(letters, &cuts) {
            let pieces = pieces_of(letters, &cuts);
            if let Some((order, split)) = arrange(&pieces, budget)? {
                return Ok(Some(Cutting {
                    cuts: cuts.clone(),
                    sigma: order.iter().map(|&i| i + 1).collect(),
                    split,
                }));
            }
        }
        if !next_combination(&mut cuts, n - 1) {
            return Ok(None);
        }
    }
}

/// Advances `c` to the next k-combination of {1..max} in lex order.
fn next_combination(c: &mut [usize], max: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < max - (k - 1 - i) {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Cheap filter: some subset of piece lengths must reach exactly n/2.
fn half_length_reachable(letters: &[Letter], cuts: &[usize]) -> bool {
    let n = letters.len();
    let half = n / 2;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    let mut prev = 0;
    for &c in cuts.iter().chain(std::iter::once(&n)) {
        let len = c - prev;
        prev = c;
        if len <= half {
            for s in (0..=half - len).rev() {
                if reach[s] {
                    reach[s + len] = true;
                }
            }
        }
    }
    reach[half]
}

/// Two-row arrangement decision. Returns piece indices in arrangement order
/// (first group then second group) and the split j, or `None`.
fn arrange(
    pieces: &[&[Letter]],
    budget: &mut NodeBudget,
) -> Result<Option<(Vec<usize>, usize)>, SolverError> {
    if pieces.iter().any(|p| p.is_empty()) {
        return Ok(None);
    }
    // Group equal pieces; the builder works on classes, concrete indices are
    // assigned afterwards.
    let mut classes: Vec<&[Letter]> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, &p) in pieces.iter().enumerate() {
        match classes.iter().position(|&c| c == p) {
            Some(ci) => members[ci].push(i),
            None => {
                classes.push(p);
                members.push(vec![i]);
            }
        }
    }
    let mut st = ArrangeState {
        classes,
        counts: members.iter().map(|m| m.len() as u8).collect(),
        a_row: Vec::new(),
        b_row: Vec::new(),
        failed: HashSet::new(),
    };
    if !st.dfs(None, budget)? {
        return Ok(None);
    }
    // Map placed classes back to concrete piece indices, smallest first.
    let mut next: Vec<usize> = vec![0; members.len()];
    let mut order = Vec::with_capacity(pieces.len());
    for &c in st.a_row.iter().chain(st.b_row.iter()) {
        order.push(members[c][next[c]]);
        next[c] += 1;
    }
    let split = st.a_row.len();
    Ok(Some((order, split)))
}

struct ArrangeState<'a> {
    classes: Vec<&'a [Letter]>,
    counts: Vec<u8>,
    a_row: Vec<usize>,
    b_row: Vec<usize>,
    /// States proven infeasible: (remaining counts, overhang class, offset).
    failed: HashSet<(Vec<u8>, usize, usize)>,
}

impl<'a> ArrangeState<'a> {
    /// `overhang` is the suffix of `classes[c]` starting at the offset: the
    /// part of the longer row not yet matched by the shorter one. It is
    /// always a suffix of a single placed piece. `leader_is_a` says which row
    /// is ahead; it does not affect feasibility (rows are symmetric) so it is
    /// not part of the memo key.
    fn dfs(
        &mut self,
        overhang: Option<(usize, usize, bool)>,
        budget: &mut NodeBudget,
    ) -> Result<bool, SolverError> {
        budget.tick()?;
        if self.counts.iter().all(|&c| c == 0) {
            return Ok(overhang.is_none() && !self.b_row.is_empty());
        }
        let key = match overhang {
            None => (self.counts.clone(), usize::MAX, 0),
            Some((c, o, _)) => (self.counts.clone(), c, o),
        };
        if self.failed.contains(&key) {
            return Ok(false);
        }
        match overhang {
            None => {
                // Rows have equal content; extending row A first loses no
                // solutions by the row-swap symmetry.
                for c in 0..self.classes.len() {
                    if self.counts[c] == 0 {
                        continue;
                    }
                    self.counts[c] -= 1;
                    self.a_row.push(c);
                    if self.dfs(Some((c, 0, true)), budget)? {
                        return Ok(true);
                    }
                    self.a_row.pop();
                    self.counts[c] += 1;
                }
            }
            Some((oc, oo, leader_is_a)) => {
                let ov_len = self.classes[oc].len() - oo;
                for c in 0..self.classes.len() {
                    if self.counts[c] == 0 {
                        continue;
                    }
                    let p = self.classes[c];
                    let next = if p.len() <= ov_len {
                        if p != &self.classes[oc][oo..oo + p.len()] {
                            continue;
                        }
                        if p.len() == ov_len {
                            None
                        } else {
                            Some((oc, oo + p.len(), leader_is_a))
                        }
                    } else {
                        if &p[..ov_len] != &self.classes[oc][oo..] {
                            continue;
                        }
                        Some((c, ov_len, !leader_is_a))
                    };
                    self.counts[c] -= 1;
                    if leader_is_a {
                        self.b_row.push(c);
                    } else {
                        self.a_row.push(c);
                    }
                    if self.dfs(next, budget)? {
                        return Ok(true);
                    }
                    if leader_is_a {
                        self.b_row.pop();
                    } else {
                        self.a_row.pop();
                    }
                    self.counts[c] += 1;
                }
            }
        }
        self.failed.insert(key);
        Ok(false)
    }
}

/// Certificate for a split number: cuts plus the piece indices (1-based) of
/// one anagram group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    pub cuts: Vec<usize>,
    pub first_group: Vec<usize>,
}

/// Least number of cuts so the pieces split into two groups with equal letter
/// multisets. `None` when T is not a tangram.
pub fn split_number(
    t: &Word,
    max_k: Option<usize>,
    budget: &mut NodeBudget,
) -> Result<Option<(usize, SplitCertificate)>, SolverError> {
    if t.is_empty() {
        return Err(SolverError::EmptyWord);
    }
    if !is_tangram(t) {
        return Ok(None);
    }
    let n = t.len();
    let kmax = max_k.unwrap_or(n - 1).min(n - 1);
    for k in 1..=kmax {
        if k + 1 > n {
            break;
        }
        let mut cuts: Vec<usize> = (1..=k).collect();
        loop {
            budget.tick()?;
            if let Some(group) = anagram_bipartition(t, &cuts) {
                return Ok(Some((
                    k,
                    SplitCertificate {
                        cuts: cuts.clone(),
                        first_group: group,
                    },
                )));
            }
            if !next_combination(&mut cuts, n - 1) {
                break;
            }
        }
    }
    Ok(None)
}

fn anagram_bipartition(t: &Word, cuts: &[usize]) -> Option<Vec<usize>> {
    let q = t.alphabet();
    let pieces = pieces_of(t.letters(), cuts);
    let m = pieces.len();
    let counts: Vec<Vec<u32>> = pieces
        .iter()
        .map(|p| {
            let mut c = vec![0u32; q];
            for &l in *p {
                c[l as usize] += 1;
            }
            c
        })
        .collect();
    let mut total = vec![0u32; q];
    for c in &counts {
        for (t, v) in total.iter_mut().zip(c) {
            *t += v;
        }
    }
    if total.iter().any(|&v| v % 2 != 0) {
        return None;
    }
    let half: Vec<u32> = total.iter().map(|&v| v / 2).collect();
    // Pieces are few (k+1), subsets are cheap; pick the lexicographically
    // least index set containing piece 1 so the certificate is deterministic
    // and the two groups are distinguished.
    for mask in 1u32..(1 << m) {
        if mask & 1 == 0 {
            continue;
        }
        let mut sum = vec![0u32; q];
        for i in 0..m {
            if mask >> i & 1 == 1 {
                for (s, v) in sum.iter_mut().zip(&counts[i]) {
                    *s += v;
                }
            }
        }
        if sum == half && mask != (1 << m) - 1 {
            return Some((0..m).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect());
        }
    }
    None
}
