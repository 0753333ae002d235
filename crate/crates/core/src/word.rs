//! Finite words over a binary or ternary alphabet, with the repetition
//! primitives (periods, exponents, squares) the rest of the crate builds on.
//!
//! Positions in reports are 1-based; the in-memory representation is a plain
//! 0-based letter vector.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Exponent;

/// A finite word over the alphabet `{0, .., sigma - 1}`, `sigma ∈ {2, 3}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
    sigma: u8,
}

impl Word {
    pub fn new(letters: Vec<u8>, sigma: u8) -> Result<Self> {
        if !(2..=3).contains(&sigma) {
            return Err(Error::UnsupportedAlphabet(sigma));
        }
        if let Some(&letter) = letters.iter().find(|&&a| a >= sigma) {
            return Err(Error::LetterOutOfRange { letter, sigma });
        }
        Ok(Word { letters, sigma })
    }

    /// Binary word; panics if a letter is not 0 or 1.
    pub fn binary(letters: impl Into<Vec<u8>>) -> Self {
        Self::new(letters.into(), 2).expect("binary letters")
    }

    pub fn empty(sigma: u8) -> Self {
        Word {
            letters: Vec::new(),
            sigma,
        }
    }

    /// Parses an ASCII digit string over an explicit alphabet.
    pub fn parse_with_alphabet(s: &str, sigma: u8) -> Result<Self> {
        let letters = s
            .bytes()
            .filter(|b| !b.is_ascii_whitespace())
            .map(|b| match b {
                b'0'..=b'9' => Ok(b - b'0'),
                _ => Err(Error::WordParse(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(letters, sigma)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn sigma(&self) -> u8 {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The letter `w[i]`, 1-based.
    pub fn at(&self, i: usize) -> u8 {
        self.letters[i - 1]
    }

    /// The factor `w[i..j]`, 1-based and inclusive.
    pub fn slice(&self, i: usize, j: usize) -> Word {
        Word {
            letters: self.letters[i - 1..j].to_vec(),
            sigma: self.sigma,
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word {
            letters: self.letters[..n.min(self.len())].to_vec(),
            sigma: self.sigma,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            sigma: self.sigma.max(other.sigma),
        }
    }

    pub fn contains_factor(&self, f: &Word) -> bool {
        f.is_empty()
            || self
                .letters
                .windows(f.len())
                .any(|win| win == f.letters.as_slice())
    }

    /// Letterwise flip of a binary word.
    pub fn negation(&self) -> Result<Word> {
        if self.sigma != 2 {
            return Err(Error::NotBinary(self.sigma));
        }
        Ok(Word {
            letters: self.letters.iter().map(|&a| 1 - a).collect(),
            sigma: 2,
        })
    }

    pub fn reversal(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().copied().collect(),
            sigma: self.sigma,
        }
    }

    /// Maximum exponent over all factors, with a witness factor.
    ///
    /// Ties are broken towards the longest factor, then the earliest start.
    pub fn max_exponent(&self) -> Option<RepetitionReport> {
        max_exponent(&self.letters)
    }

    pub fn is_cube_free(&self) -> bool {
        is_cube_free(&self.letters)
    }

    pub fn is_overlap_free(&self) -> bool {
        is_overlap_free(&self.letters)
    }

    /// Largest `|u|` over square factors `uu`; 0 for square-free words.
    pub fn largest_square_period(&self) -> usize {
        largest_square_period(&self.letters)
    }

    /// Distinct factors of length `n`.
    pub fn factors(&self, n: usize) -> BTreeSet<Word> {
        if n > self.len() {
            return BTreeSet::new();
        }
        if n == 0 {
            return std::iter::once(Word::empty(self.sigma)).collect();
        }
        self.letters
            .windows(n)
            .map(|w| Word {
                letters: w.to_vec(),
                sigma: self.sigma,
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.letters {
            write!(f, "{}", a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{}\")", self)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Infers the alphabet: binary unless a `2` occurs.
    fn from_str(s: &str) -> Result<Self> {
        let sigma = if s.contains('2') { 3 } else { 2 };
        Word::parse_with_alphabet(s, sigma)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Witness for [`Word::max_exponent`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepetitionReport {
    #[serde(serialize_with = "ser_ratio")]
    pub max_exponent: Exponent,
    pub period: usize,
    /// 1-based start of the witness factor.
    pub start: usize,
    /// 1-based inclusive end of the witness factor.
    pub end: usize,
}

fn ser_ratio<S: Serializer>(r: &Exponent, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// Calls `f(p, start, len)` for every maximal run of positions
/// `start..start+len` where `w[i] == w[i + p]`, for each `p` in `1..=max_p`.
pub(crate) fn for_each_run(w: &[u8], max_p: usize, mut f: impl FnMut(usize, usize, usize)) {
    let n = w.len();
    for p in 1..=max_p.min(n.saturating_sub(1)) {
        let mut i = 0;
        while i + p < n {
            if w[i] == w[i + p] {
                let start = i;
                while i + p < n && w[i] == w[i + p] {
                    i += 1;
                }
                f(p, start, i - start);
            } else {
                i += 1;
            }
        }
    }
}

/// Smallest period of `w` (its length when `w` is primitive-free of borders).
pub fn minimal_period(w: &[u8]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    // KMP failure function
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    n - fail[n - 1]
}

pub(crate) fn max_exponent(w: &[u8]) -> Option<RepetitionReport> {
    let n = w.len();
    if n == 0 {
        return None;
    }
    let p0 = minimal_period(w);
    let mut best = (Ratio::new(n, p0), n, 0usize, p0);
    for_each_run(w, n / 2, |p, start, len| {
        let flen = len + p;
        let e = Ratio::new(flen, p);
        let better = e > best.0
            || (e == best.0 && flen > best.1)
            || (e == best.0 && flen == best.1 && start < best.2);
        if better {
            best = (e, flen, start, p);
        }
    });
    let (max_exponent, flen, start, period) = best;
    Some(RepetitionReport {
        max_exponent,
        period,
        start: start + 1,
        end: start + flen,
    })
}

pub(crate) fn is_cube_free(w: &[u8]) -> bool {
    let mut ok = true;
    for_each_run(w, w.len() / 3, |p, _, len| {
        if len >= 2 * p {
            ok = false;
        }
    });
    ok
}

pub(crate) fn is_overlap_free(w: &[u8]) -> bool {
    let mut ok = true;
    for_each_run(w, w.len() / 2, |p, _, len| {
        if len > p {
            ok = false;
        }
    });
    ok
}

pub(crate) fn largest_square_period(w: &[u8]) -> usize {
    let mut best = 0;
    for_each_run(w, w.len() / 2, |p, _, len| {
        if len >= p && p > best {
            best = p;
        }
    });
    best
}

/// Parses the one-word-per-line text format: digits only, blank lines and
/// `#` comments ignored.
pub fn parse_word_list(text: &str, sigma: u8) -> Result<Vec<Word>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| Word::parse_with_alphabet(l, sigma))
        .collect()
}

pub fn write_word_list<'a>(words: impl IntoIterator<Item = &'a Word>) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

/// Prefix of the Thue-Morse word: letter `i` is the parity of the popcount of `i`.
pub fn thue_morse(n: usize) -> Word {
    Word::binary(
        (0..n)
            .map(|i| (i.count_ones() % 2) as u8)
            .collect::<Vec<u8>>(),
    )
}
