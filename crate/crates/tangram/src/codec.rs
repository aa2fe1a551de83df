//! The entropy-compression encoder and its inverse reconstruction.
//!
//! Encode scans the input once; after appending each letter it looks for a
//! suffix of the state of length at least `lmin` with cut number at most
//! `k`. When one exists the shortest such suffix is logged and removed. The
//! log entry keeps the removed suffix in factored form (cuts, permutation,
//! split, and the common half-word), which is exactly enough to reconstruct
//! it; decode replays the run backwards.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cut::{cut_number, pieces_of, verify_cutting, CutOutcome, Cutting, NodeBudget, SolverError};
use crate::word::{Letter, Word, WordError, MAX_ALPHABET};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("input letter outside the configured alphabet")]
    AlphabetMismatch,
    #[error("cut-number budget exhausted while encoding")]
    BudgetExhausted,
    #[error("inconsistent log entry at step {0}: {1}")]
    InconsistentEntry(usize, String),
    #[error("decode state underflow at step {0}")]
    StateUnderflow(usize),
    #[error("decode finished with letters left over")]
    LeftoverState,
    #[error("malformed serialized stream: {0}")]
    Malformed(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

impl From<SolverError> for CodecError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::BudgetExhausted => CodecError::BudgetExhausted,
            SolverError::EmptyWord => CodecError::Malformed("empty factor".into()),
        }
    }
}

/// Codec parameters: alphabet size, the cut bound k, and the removal length
/// threshold `lmin` (default ⌈k log2 k⌉, floored at 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodecParams {
    pub alphabet_size: usize,
    pub k: usize,
    pub lmin: usize,
}

impl CodecParams {
    pub fn new(alphabet_size: usize, k: usize, lmin: usize) -> Self {
        CodecParams {
            alphabet_size,
            k,
            lmin: lmin.max(2),
        }
    }

    /// `lmin` defaulted to ⌈k log2 k⌉.
    pub fn with_default_threshold(alphabet_size: usize, k: usize) -> Self {
        CodecParams::new(alphabet_size, k, default_threshold(k))
    }
}

/// ⌈k log2 k⌉, floored at 2 so a removal is always a nonempty tangram.
pub fn default_threshold(k: usize) -> usize {
    if k <= 1 {
        return 2;
    }
    let mut t = 0usize;
    // smallest t with 2^t >= k^k, i.e. t >= k log2 k
    let (mut pow, k_big) = (1u128, k as u128);
    let target = k_big.checked_pow(k as u32).expect("k is small");
    while pow < target {
        pow = pow.saturating_mul(2);
        t += 1;
    }
    t.max(2)
}

/// One removal record: the step, the removed length, and the five-item
/// factored form of the removed suffix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub step: usize,
    pub removed_length: usize,
    /// Cut positions (1-based, within the removed suffix).
    pub cuts: Vec<usize>,
    /// Permutation of the pieces, 1-based indices.
    pub sigma: Vec<usize>,
    pub split: usize,
    /// The common word U = F_{σ(1)}..F_{σ(j)}, of length removed_length/2.
    pub half: Vec<Letter>,
}

/// The log L: ordered removal records, steps strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncoderLog {
    pub entries: Vec<LogEntry>,
}

impl EncoderLog {
    pub fn total_removed(&self) -> usize {
        self.entries.iter().map(|e| e.removed_length).sum()
    }
}

/// Runs the encoding loop. Returns the residual state `s` and the log `L`.
/// The residual contains no factor of length ≥ `lmin` with cut number ≤ k.
pub fn encode(
    x: &Word,
    p: &CodecParams,
    budget: &mut NodeBudget,
) -> Result<(Word, EncoderLog), CodecError> {
    if x.letters().iter().any(|&l| (l as usize) >= p.alphabet_size) {
        return Err(CodecError::AlphabetMismatch);
    }
    let mut s: Vec<Letter> = Vec::new();
    let mut parity: Vec<u64> = vec![0];
    let mut log = EncoderLog::default();
    for (i, &xi) in x.letters().iter().enumerate() {
        s.push(xi);
        parity.push(parity[s.len() - 1] ^ (1u64 << xi));
        if let Some(entry) = qualifying_suffix(&s, &parity, i + 1, p, budget)? {
            let keep = s.len() - entry.removed_length;
            s.truncate(keep);
            parity.truncate(keep + 1);
            log.entries.push(entry);
        }
    }
    let alphabet = p.alphabet_size.min(MAX_ALPHABET).max(1);
    Ok((Word::new(s, alphabet)?, log))
}

/// Finds the shortest suffix of `s` with length ≥ lmin and cut number ≤ k
/// and builds its log entry. Suffix parities are read off the rolling prefix
/// parity; only zero-parity suffixes are candidates.
fn qualifying_suffix(
    s: &[Letter],
    parity: &[u64],
    step: usize,
    p: &CodecParams,
    budget: &mut NodeBudget,
) -> Result<Option<LogEntry>, CodecError> {
    let n = s.len();
    for len in p.lmin..=n {
        if parity[n] ^ parity[n - len] != 0 {
            continue;
        }
        let suffix = &s[n - len..];
        let f = Word::new(suffix.to_vec(), p.alphabet_size.min(MAX_ALPHABET).max(1))?;
        match cut_number(&f, Some(p.k), budget)? {
            CutOutcome::Found { k: found_k, cutting } => {
                let target_cuts = p.k.min(len - 1);
                let padded = pad_cutting(&f, &cutting, target_cuts);
                debug_assert!(verify_cutting(&f, &padded));
                let pieces = pieces_of(suffix, &padded.cuts);
                let half: Vec<Letter> = padded.sigma[..padded.split]
                    .iter()
                    .flat_map(|&s| pieces[s - 1].iter().copied())
                    .collect();
                debug_assert_eq!(half.len(), len / 2);
                let _ = found_k;
                return Ok(Some(LogEntry {
                    step,
                    removed_length: len,
                    cuts: padded.cuts,
                    sigma: padded.sigma,
                    split: padded.split,
                    half,
                }));
            }
            CutOutcome::NotWithinMaxK | CutOutcome::NotTangram => {}
        }
    }
    Ok(None)
}

/// Pads a certificate with m < target cuts up to exactly `target` cuts by
/// splitting pieces at their first interior positions; the arrangement is
/// rebuilt with each piece replaced by its sub-pieces in order.
fn pad_cutting(f: &Word, c: &Cutting, target: usize) -> Cutting {
    let m = c.cuts.len();
    if m >= target {
        return c.clone();
    }
    let n = f.len();
    let mut cuts = c.cuts.clone();
    let mut extra = target - m;
    let mut candidate = 1usize;
    while extra > 0 && candidate < n {
        if !cuts.contains(&candidate) {
            cuts.push(candidate);
            extra -= 1;
        }
        candidate += 1;
    }
    cuts.sort_unstable();
    // Map each old piece to its consecutive range of new piece indices.
    let old_bounds: Vec<(usize, usize)> = {
        let mut b = Vec::with_capacity(m + 1);
        let mut prev = 0;
        for &cut in c.cuts.iter().chain(std::iter::once(&n)) {
            b.push((prev, cut));
            prev = cut;
        }
        b
    };
    let new_starts: Vec<usize> = std::iter::once(0)
        .chain(cuts.iter().copied())
        .collect();
    let sub_indices = |old: usize| -> Vec<usize> {
        let (lo, hi) = old_bounds[old];
        new_starts
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s >= lo && s < hi)
            .map(|(i, _)| i + 1)
            .collect()
    };
    let mut sigma = Vec::with_capacity(cuts.len() + 1);
    let mut split = 0usize;
    for (pos, &old) in c.sigma.iter().enumerate() {
        let subs = sub_indices(old - 1);
        if pos < c.split {
            split += subs.len();
        }
        sigma.extend(subs);
    }
    Cutting { cuts, sigma, split }
}

/// Rebuilds the removed suffix from a log entry's factored form.
pub fn reconstruct_suffix(e: &LogEntry) -> Result<Vec<Letter>, CodecError> {
    let n = e.removed_length;
    let bad = |msg: &str| CodecError::InconsistentEntry(e.step, msg.to_string());
    if n < 2 || n % 2 != 0 || e.half.len() != n / 2 {
        return Err(bad("removed length and half-word disagree"));
    }
    let k = e.cuts.len();
    if e.sigma.len() != k + 1 || e.split == 0 || e.split > k {
        return Err(bad("permutation or split out of shape"));
    }
    if e.cuts.windows(2).any(|w| w[0] >= w[1]) || e.cuts.iter().any(|&c| c == 0 || c >= n) {
        return Err(bad("cut positions invalid"));
    }
    let mut lens = Vec::with_capacity(k + 1);
    let mut prev = 0;
    for &c in e.cuts.iter().chain(std::iter::once(&n)) {
        lens.push(c - prev);
        prev = c;
    }
    let mut seen = vec![false; k + 1];
    for &s in &e.sigma {
        if s == 0 || s > k + 1 || seen[s - 1] {
            return Err(bad("sigma is not a permutation"));
        }
        seen[s - 1] = true;
    }
    // Each arranged group spells out the half-word; read each piece at its
    // offset within its group.
    let mut piece_content: Vec<Option<&[Letter]>> = vec![None; k + 1];
    for (group, start) in [(&e.sigma[..e.split], 0), (&e.sigma[e.split..], 0)] {
        let mut off = start;
        for &s in group {
            let len = lens[s - 1];
            if off + len > e.half.len() {
                return Err(bad("group longer than half-word"));
            }
            piece_content[s - 1] = Some(&e.half[off..off + len]);
            off += len;
        }
        if off != e.half.len() {
            return Err(bad("group shorter than half-word"));
        }
    }
    let mut out = Vec::with_capacity(n);
    for content in piece_content {
        out.extend_from_slice(content.ok_or_else(|| bad("piece missing from arrangement"))?);
    }
    Ok(out)
}

/// Reverses `encode`: reconstructs the unique input of length `n` from the
/// residual and the log, by backwards induction over the steps.
pub fn decode(
    s: &Word,
    log: &EncoderLog,
    n: usize,
    p: &CodecParams,
) -> Result<Word, CodecError> {
    if log
        .entries
        .windows(2)
        .any(|w| w[0].step >= w[1].step)
    {
        return Err(CodecError::Malformed("log steps not increasing".into()));
    }
    let mut stack: Vec<Letter> = s.letters().to_vec();
    let mut entries = log.entries.iter().rev().peekable();
    let mut x = vec![0 as Letter; n];
    for j in (1..=n).rev() {
        if entries.peek().map(|e| e.step) == Some(j) {
            let e = entries.next().expect("peeked");
            let mut f = reconstruct_suffix(e)?;
            let last = f.pop().ok_or(CodecError::StateUnderflow(j))?;
            x[j - 1] = last;
            stack.extend_from_slice(&f);
        } else {
            x[j - 1] = stack.pop().ok_or(CodecError::StateUnderflow(j))?;
        }
    }
    if !stack.is_empty() || entries.next().is_some() {
        return Err(CodecError::LeftoverState);
    }
    let alphabet = p.alphabet_size.min(MAX_ALPHABET).max(1);
    Ok(Word::new(x, alphabet)?)
}

/// Deterministic, versioned, length-prefixed binary layout for (s, L) so
/// injectivity checks can compare bytes. Documented in docs/log-format.md.
pub fn serialize_output(
    s: &Word,
    log: &EncoderLog,
    n: usize,
    p: &CodecParams,
) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(b"TGLG");
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&(p.alphabet_size as u32).to_le_bytes());
    out.extend_from_slice(&(p.k as u16).to_le_bytes());
    out.extend_from_slice(&(p.lmin as u32).to_le_bytes());
    out.extend_from_slice(&(n as u64).to_le_bytes());
    out.extend_from_slice(&(s.len() as u64).to_le_bytes());
    out.extend_from_slice(s.letters());
    out.extend_from_slice(&(log.entries.len() as u64).to_le_bytes());
    for e in &log.entries {
        out.extend_from_slice(&(e.step as u64).to_le_bytes());
        out.extend_from_slice(&(e.removed_length as u32).to_le_bytes());
        out.extend_from_slice(&(e.cuts.len() as u16).to_le_bytes());
        for &c in &e.cuts {
            out.extend_from_slice(&(c as u32).to_le_bytes());
        }
        for &sgm in &e.sigma {
            out.extend_from_slice(&(sgm as u16).to_le_bytes());
        }
        out.extend_from_slice(&(e.split as u16).to_le_bytes());
        out.extend_from_slice(&e.half);
    }
    out
}

pub fn deserialize_output(bytes: &[u8]) -> Result<(Word, EncoderLog, usize, CodecParams), CodecError> {
    let mut r = Reader { bytes, pos: 0 };
    let magic = r.take(4)?;
    if magic != b"TGLG" {
        return Err(CodecError::Malformed("bad magic".into()));
    }
    let version = r.u16()?;
    if version != 1 {
        return Err(CodecError::Malformed(format!("unsupported version {version}")));
    }
    let alphabet_size = r.u32()? as usize;
    let k = r.u16()? as usize;
    let lmin = r.u32()? as usize;
    let n = r.u64()? as usize;
    let slen = r.u64()? as usize;
    let s_letters = r.take(slen)?.to_vec();
    let count = r.u64()? as usize;
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let step = r.u64()? as usize;
        let removed_length = r.u32()? as usize;
        let ncuts = r.u16()? as usize;
        let mut cuts = Vec::with_capacity(ncuts);
        for _ in 0..ncuts {
            cuts.push(r.u32()? as usize);
        }
        let mut sigma = Vec::with_capacity(ncuts + 1);
        for _ in 0..ncuts + 1 {
            sigma.push(r.u16()? as usize);
        }
        let split = r.u16()? as usize;
        if removed_length % 2 != 0 {
            return Err(CodecError::Malformed("odd removed length".into()));
        }
        let half = r.take(removed_length / 2)?.to_vec();
        entries.push(LogEntry {
            step,
            removed_length,
            cuts,
            sigma,
            split,
            half,
        });
    }
    if r.pos != bytes.len() {
        return Err(CodecError::Malformed("trailing bytes".into()));
    }
    let p = CodecParams::new(alphabet_size.max(1), k, lmin);
    let s = Word::new(s_letters, p.alphabet_size.min(MAX_ALPHABET).max(1))?;
    Ok((s, EncoderLog { entries }, n, p))
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], CodecError> {
        if self.pos + n > self.bytes.len() {
            return Err(CodecError::Malformed("truncated stream".into()));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u16(&mut self) -> Result<u16, CodecError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, CodecError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, CodecError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// f(1), ..., f(N): counts of nonempty words of length at most m over q
/// letters with no factor of length ≥ lmin and cut number ≤ k, by exhaustive
/// enumeration (the avoider property is prefix-closed, so the enumeration
/// prunes).
pub fn count_avoiders(
    q: usize,
    lmin: usize,
    k: usize,
    n: usize,
    budget: &mut NodeBudget,
) -> Result<Vec<u64>, SolverError> {
    let mut per_len = vec![0u64; n + 1];
    let mut stack: Vec<Letter> = Vec::new();
    count_rec(q, lmin, k, n, &mut stack, &mut per_len, budget)?;
    let mut cumulative = Vec::with_capacity(n);
    let mut acc = 0u64;
    for len in 1..=n {
        acc += per_len[len];
        cumulative.push(acc);
    }
    Ok(cumulative)
}

fn count_rec(
    q: usize,
    lmin: usize,
    k: usize,
    n: usize,
    stack: &mut Vec<Letter>,
    per_len: &mut [u64],
    budget: &mut NodeBudget,
) -> Result<(), SolverError> {
    if stack.len() == n {
        return Ok(());
    }
    budget.tick()?;
    for l in 0..q as Letter {
        stack.push(l);
        let m = stack.len();
        let mut ok = true;
        for len in lmin.max(2)..=m {
            let suffix = &stack[m - len..];
            if !crate::word::is_tangram_slice(suffix) {
                continue;
            }
            let f = Word::new(suffix.to_vec(), q).expect("letters below q");
            if let CutOutcome::Found { .. } = cut_number(&f, Some(k), budget)? {
                ok = false;
                break;
            }
        }
        if ok {
            per_len[m] += 1;
            count_rec(q, lmin, k, n, stack, per_len, budget)?;
        }
        stack.pop();
    }
    Ok(())
}
