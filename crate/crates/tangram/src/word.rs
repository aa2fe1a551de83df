//! Word representation and the parity/tangram primitives everything else
//! builds on.
//!
//! A word is a finite sequence of small integer letters together with an
//! alphabet size. A *tangram* is a word in which every letter occurs an even
//! number of times; tangram-ness is a statement about the parity vector in
//! Z_2^q, which we keep as a bitmask.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Letters are indices into the alphabet.
pub type Letter = u8;

/// Parity vectors are stored as a `u64` bitmask, so alphabets are capped.
pub const MAX_ALPHABET: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {0} out of range for alphabet of size {1}")]
    LetterOutOfRange(usize, usize),
    #[error("alphabet size {0} not in 1..={MAX_ALPHABET}")]
    BadAlphabet(usize),
    #[error("cannot parse {0:?} as a word")]
    Parse(String),
    #[error("factor at position {0} of length {1} does not fit in word of length {2}")]
    FactorOutOfRange(usize, usize, usize),
    #[error("words have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// A finite word over a fixed alphabet `{0, 1, ..., alphabet-1}`.
///
/// The empty word is permitted at this layer; the cut-number solver rejects
/// it separately.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: usize,
}

impl Word {
    pub fn new(letters: Vec<Letter>, alphabet: usize) -> Result<Self, WordError> {
        if alphabet == 0 || alphabet > MAX_ALPHABET {
            return Err(WordError::BadAlphabet(alphabet));
        }
        if let Some(&bad) = letters.iter().find(|&&l| (l as usize) >= alphabet) {
            return Err(WordError::LetterOutOfRange(bad as usize, alphabet));
        }
        Ok(Word { letters, alphabet })
    }

    pub fn empty(alphabet: usize) -> Self {
        Word::new(Vec::new(), alphabet).expect("alphabet validated by caller")
    }

    /// Parses lowercase ASCII letters, `a` mapping to 0.
    pub fn from_letters(s: &str) -> Result<Self, WordError> {
        let letters: Option<Vec<Letter>> = s
            .chars()
            .map(|c| c.is_ascii_lowercase().then(|| (c as u8) - b'a'))
            .collect();
        let letters = letters.ok_or_else(|| WordError::Parse(s.to_string()))?;
        let alphabet = letters.iter().map(|&l| l as usize + 1).max().unwrap_or(1);
        Word::new(letters, alphabet)
    }

    /// Parses ASCII digits, `0` mapping to 0.
    pub fn from_digits(s: &str) -> Result<Self, WordError> {
        let letters: Option<Vec<Letter>> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as Letter))
            .collect();
        let letters = letters.ok_or_else(|| WordError::Parse(s.to_string()))?;
        let alphabet = letters.iter().map(|&l| l as usize + 1).max().unwrap_or(1);
        Word::new(letters, alphabet)
    }

    /// Maps arbitrary characters to letters in order of first occurrence.
    /// Handy for words like `1234abcabcuv1234uv` where only the equality
    /// structure matters.
    pub fn from_chars(s: &str) -> Result<Self, WordError> {
        let mut ids: HashMap<char, Letter> = HashMap::new();
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            let next = ids.len() as Letter;
            let id = *ids.entry(c).or_insert(next);
            letters.push(id);
        }
        let alphabet = ids.len().max(1);
        if alphabet > MAX_ALPHABET {
            return Err(WordError::BadAlphabet(alphabet));
        }
        Word::new(letters, alphabet)
    }

    pub fn from_ints(values: &[usize]) -> Result<Self, WordError> {
        let alphabet = values.iter().map(|&v| v + 1).max().unwrap_or(1);
        if alphabet > MAX_ALPHABET {
            return Err(WordError::BadAlphabet(alphabet));
        }
        let letters = values.iter().map(|&v| v as Letter).collect();
        Word::new(letters, alphabet)
    }

    /// Shared CLI text format: comma-separated integers when `ints` is set,
    /// otherwise digits `0`-`9` (if the string is all digits) or letters
    /// `a`-`z`.
    pub fn parse_text(s: &str, ints: bool) -> Result<Self, WordError> {
        if ints {
            let values: Result<Vec<usize>, _> =
                s.split(',').map(|p| p.trim().parse::<usize>()).collect();
            let values = values.map_err(|_| WordError::Parse(s.to_string()))?;
            Word::from_ints(&values)
        } else if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) {
            Word::from_digits(s)
        } else {
            Word::from_letters(s)
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Factor starting at 1-based `position` with the given length.
    pub fn factor(&self, position: usize, length: usize) -> Result<Word, WordError> {
        if position == 0 || position + length - 1 > self.len() {
            return Err(WordError::FactorOutOfRange(position, length, self.len()));
        }
        Word::new(
            self.letters[position - 1..position - 1 + length].to_vec(),
            self.alphabet,
        )
    }

    pub fn factor_at(&self, occ: &Occurrence) -> Result<Word, WordError> {
        self.factor(occ.position, occ.length)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let alphabet = self.alphabet.max(other.alphabet);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters, alphabet }
    }

    /// Same letters, alphabet widened to `alphabet`.
    pub fn with_alphabet(&self, alphabet: usize) -> Result<Word, WordError> {
        if alphabet < self.alphabet {
            if let Some(&bad) = self.letters.iter().find(|&&l| (l as usize) >= alphabet) {
                return Err(WordError::LetterOutOfRange(bad as usize, alphabet));
            }
        }
        Word::new(self.letters.clone(), alphabet)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet <= 26 {
            for &l in &self.letters {
                write!(f, "{}", (b'a' + l) as char)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self}, q={})", self.alphabet)
    }
}

/// Per-letter occurrence parity, an element of Z_2^q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ParityVector {
    bits: u64,
    dim: usize,
}

impl ParityVector {
    pub fn zero(dim: usize) -> Self {
        ParityVector { bits: 0, dim }
    }

    pub fn bit(&self, letter: usize) -> bool {
        (self.bits >> letter) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn xor(&self, other: &ParityVector) -> ParityVector {
        ParityVector {
            bits: self.bits ^ other.bits,
            dim: self.dim.max(other.dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }
}

/// An occurrence of a factor: 1-based start position and length.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Occurrence {
    pub position: usize,
    pub length: usize,
}

pub fn parity_vector(w: &Word) -> ParityVector {
    ParityVector {
        bits: parity_bits(w.letters()),
        dim: w.alphabet(),
    }
}

pub(crate) fn parity_bits(letters: &[Letter]) -> u64 {
    letters.iter().fold(0u64, |acc, &l| acc ^ (1u64 << l))
}

pub fn is_tangram(w: &Word) -> bool {
    parity_bits(w.letters()) == 0
}

pub fn is_tangram_slice(letters: &[Letter]) -> bool {
    parity_bits(letters) == 0
}

/// Prefix-parity tangram finder. Walks prefix parity vectors and reports the
/// tangram `w[i+1..=j]` for the first collision (earliest end `j`, then the
/// latest matching start `i`). The pigeonhole over Z_2^q guarantees a hit
/// whenever `|w| >= 2^q`.
pub fn find_tangram_prefix_parity(w: &Word) -> Option<Occurrence> {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    seen.insert(0, 0);
    let mut parity = 0u64;
    for (j, &l) in w.letters().iter().enumerate() {
        parity ^= 1u64 << l;
        if let Some(&i) = seen.get(&parity) {
            return Some(Occurrence {
                position: i + 1,
                length: (j + 1) - i,
            });
        }
        // keep the latest index for each parity value
        seen.insert(parity, j + 1);
    }
    None
}

pub fn is_square(w: &Word) -> bool {
    is_square_slice(w.letters())
}

pub(crate) fn is_square_slice(letters: &[Letter]) -> bool {
    let n = letters.len();
    n >= 2 && n % 2 == 0 && letters[..n / 2] == letters[n / 2..]
}

pub fn is_square_free(w: &Word) -> bool {
    is_square_free_slice(w.letters())
}

pub(crate) fn is_square_free_slice(letters: &[Letter]) -> bool {
    let n = letters.len();
    for half in 1..=n / 2 {
        for start in 0..=n - 2 * half {
            if letters[start..start + half] == letters[start + half..start + 2 * half] {
                return false;
            }
        }
    }
    true
}

/// All 1-based start positions of `f` in `w`, in increasing order.
pub fn occurrences(w: &Word, f: &Word) -> Vec<usize> {
    let (wl, fl) = (w.letters(), f.letters());
    if fl.is_empty() || fl.len() > wl.len() {
        return Vec::new();
    }
    (0..=wl.len() - fl.len())
        .filter(|&i| &wl[i..i + fl.len()] == fl)
        .map(|i| i + 1)
        .collect()
}

/// Minimal distance between consecutive occurrences of `f` in `w`, or `None`
/// when `f` occurs fewer than twice.
pub fn min_repeat_distance(w: &Word, f: &Word) -> Option<usize> {
    let occ = occurrences(w, f);
    occ.windows(2).map(|p| p[1] - p[0]).min()
}
