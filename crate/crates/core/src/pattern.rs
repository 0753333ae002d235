//! Patterns over the variables `x`, `y`, and the large-square family `S_t`.
//!
//! Binary patterns are stored normalized: the first variable read is always
//! `x`. Negating a pattern (swapping `x` and `y`) therefore leaves the stored
//! form unchanged, and two patterns compare equal iff they agree up to
//! variable renaming.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matching;
use crate::word::Word;

/// A pattern over at most two variables, stored normalized.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryPattern {
    symbols: Vec<u8>,
}

impl BinaryPattern {
    /// Builds a pattern from variable indices (0 = x, 1 = y), renaming so the
    /// first variable read is `x`.
    pub fn from_symbols(symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::PatternParse {
                input: String::new(),
                reason: "empty pattern".into(),
            });
        }
        if symbols.iter().any(|&s| s > 1) {
            return Err(Error::UnsupportedPattern(
                format!("{:?}", symbols),
                "only the variables x and y are supported".into(),
            ));
        }
        Ok(Self::normalized(symbols))
    }

    fn normalized(symbols: &[u8]) -> Self {
        let flip = symbols[0];
        BinaryPattern {
            symbols: symbols.iter().map(|&s| s ^ flip).collect(),
        }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of distinct variables (1 or 2).
    pub fn vars(&self) -> usize {
        if self.symbols.contains(&1) {
            2
        } else {
            1
        }
    }

    /// Occurrences of variable `v` (0 = x, 1 = y).
    pub fn count(&self, v: u8) -> usize {
        self.symbols.iter().filter(|&&s| s == v).count()
    }

    pub fn reversal(&self) -> Self {
        let rev: Vec<u8> = self.symbols.iter().rev().copied().collect();
        Self::normalized(&rev)
    }

    /// Swapping the variables; identical after normalization.
    pub fn negation(&self) -> Self {
        let neg: Vec<u8> = self.symbols.iter().map(|s| 1 - s).collect();
        Self::normalized(&neg)
    }

    /// Representative of the class under negation and reversal.
    pub fn canonical(&self) -> Result<Self> {
        if self.vars() != 2 {
            return Err(Error::UnsupportedPattern(
                self.to_string(),
                "canonical forms are defined for two-variable patterns".into(),
            ));
        }
        Ok(self.clone().min(self.reversal()))
    }

    /// The factor `symbols[i..j]`, renormalized.
    pub fn factor(&self, i: usize, j: usize) -> Self {
        Self::normalized(&self.symbols[i..j])
    }

    /// Whether `q` occurs as a factor up to variable renaming.
    pub fn contains_factor(&self, q: &BinaryPattern) -> bool {
        let m = q.len();
        m <= self.len() && (0..=self.len() - m).any(|i| self.factor(i, i + m) == *q)
    }

    /// Whether some factor has the form `QQQ`; such patterns are avoided by
    /// every cube-free word.
    pub fn contains_cube(&self) -> bool {
        let n = self.len();
        (1..=n / 3).any(|q| {
            (0..=n - 3 * q).any(|i| {
                self.symbols[i..i + q] == self.symbols[i + q..i + 2 * q]
                    && self.symbols[i..i + q] == self.symbols[i + 2 * q..i + 3 * q]
            })
        })
    }

    /// Square factors `QQ` as `(start, |Q|)`.
    pub fn square_factors(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for q in 1..=n / 2 {
            for i in 0..=n - 2 * q {
                if self.symbols[i..i + q] == self.symbols[i + q..i + 2 * q] {
                    out.push((i, q));
                }
            }
        }
        out
    }

    /// Image of the pattern under `x -> x_img`, `y -> y_img`.
    pub fn apply(&self, x_img: &[u8], y_img: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        for &s in &self.symbols {
            out.extend_from_slice(if s == 0 { x_img } else { y_img });
        }
        out
    }

    /// All normalized patterns of length `len` with both variables.
    pub fn all_of_length(len: usize) -> Vec<BinaryPattern> {
        if len < 2 {
            return Vec::new();
        }
        (0u64..1 << (len - 1))
            .map(|bits| {
                let mut symbols = vec![0u8];
                symbols.extend((0..len - 1).map(|k| ((bits >> (len - 2 - k)) & 1) as u8));
                BinaryPattern { symbols }
            })
            .filter(|p| p.vars() == 2)
            .collect()
    }
}

impl fmt::Display for BinaryPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            f.write_str(if s == 0 { "x" } else { "y" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for BinaryPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Pattern>()? {
            Pattern::Word(p) => Ok(p),
            Pattern::LargeSquare(_) => Err(Error::PatternParse {
                input: s.into(),
                reason: "expected a pattern over x and y".into(),
            }),
        }
    }
}

/// A pattern: a word over `x`, `y`, or the large-square pattern
/// `S_t = (x1 ... xt)^2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    Word(BinaryPattern),
    LargeSquare(usize),
}

impl Pattern {
    pub fn as_binary(&self) -> Option<&BinaryPattern> {
        match self {
            Pattern::Word(p) => Some(p),
            Pattern::LargeSquare(_) => None,
        }
    }

    /// Number of variables.
    pub fn vars(&self) -> usize {
        match self {
            Pattern::Word(p) => p.vars(),
            Pattern::LargeSquare(t) => *t,
        }
    }

    /// See [`BinaryPattern::canonical`]; rejects anything without exactly two
    /// variables.
    pub fn canonical(&self) -> Result<Pattern> {
        match self {
            Pattern::Word(p) => p.canonical().map(Pattern::Word),
            Pattern::LargeSquare(t) => Err(Error::UnsupportedPattern(
                self.to_string(),
                format!("{t}-variable patterns have no binary canonical form"),
            )),
        }
    }

    pub fn cube() -> Pattern {
        Pattern::Word(BinaryPattern { symbols: vec![0; 3] })
    }
}

impl From<BinaryPattern> for Pattern {
    fn from(p: BinaryPattern) -> Self {
        Pattern::Word(p)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Word(p) => p.fmt(f),
            Pattern::LargeSquare(t) => write!(f, "S{t}"),
        }
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = |reason: &str| Error::PatternParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if t.is_empty() {
            return Err(err("empty pattern"));
        }
        if let Some(rest) = t.strip_prefix(['S', 's']) {
            let n: usize = rest.parse().map_err(|_| err("expected S<t> with t >= 1"))?;
            if n == 0 {
                return Err(err("S_t needs t >= 1"));
            }
            return Ok(Pattern::LargeSquare(n));
        }
        let symbols = t
            .chars()
            .map(|c| match c.to_ascii_lowercase() {
                'x' => Ok(0u8),
                'y' => Ok(1u8),
                _ => Err(err(
                    "patterns are words over x and y; other variables are not supported",
                )),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Pattern::Word(BinaryPattern::normalized(&symbols)))
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for BinaryPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses a comma-separated pattern list such as `"xxx,xyyxxy"`.
pub fn parse_pattern_list(s: &str) -> Result<Vec<Pattern>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// An occurrence of a pattern image in a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchWitness {
    /// Variable name to its (non-empty) image.
    pub assignment: BTreeMap<String, Word>,
    /// 1-based start of the occurrence.
    pub start: usize,
    pub len: usize,
}

impl MatchWitness {
    /// Re-derives the occurrence by substitution and compares it with `w`.
    pub fn verifies(&self, w: &Word, p: &Pattern) -> bool {
        if self.assignment.values().any(Word::is_empty) {
            return false;
        }
        let image: Vec<u8> = match p {
            Pattern::Word(bp) => {
                let x = self.assignment.get("x").map(|w| w.letters().to_vec());
                let y = self.assignment.get("y").map(|w| w.letters().to_vec());
                match (x, y, bp.vars()) {
                    (Some(x), _, 1) => bp.apply(&x, &[]),
                    (Some(x), Some(y), 2) => bp.apply(&x, &y),
                    _ => return false,
                }
            }
            Pattern::LargeSquare(t) => {
                let mut half = Vec::new();
                for i in 1..=*t {
                    match self.assignment.get(&format!("x{i}")) {
                        Some(v) => half.extend_from_slice(v.letters()),
                        None => return false,
                    }
                }
                let mut sq = half.clone();
                sq.extend_from_slice(&half);
                sq
            }
        };
        image.len() == self.len
            && self.start >= 1
            && self.start - 1 + self.len <= w.len()
            && w.letters()[self.start - 1..self.start - 1 + self.len] == image[..]
    }
}

/// Finds an occurrence of a non-erasing image of `p` in `w`.
///
/// The returned witness has the smallest start, then the shortest image, then
/// the shortest image of `x`.
pub fn meets(w: &Word, p: &Pattern) -> Option<MatchWitness> {
    let letters = w.letters();
    let sigma = w.sigma();
    let sub = |a: usize, l: usize| Word::new(letters[a..a + l].to_vec(), sigma).unwrap();
    match p {
        Pattern::Word(bp) => {
            let (start, lx, ly) = matching::find_image(letters, bp)?;
            let mut assignment = BTreeMap::new();
            let first_y = bp.symbols().iter().position(|&s| s == 1);
            assignment.insert("x".to_string(), sub(start, lx));
            if let Some(j) = first_y {
                let off = j * lx; // every symbol before the first y is x
                assignment.insert("y".to_string(), sub(start + off, ly));
            }
            let len = bp.count(0) * lx + bp.count(1) * ly;
            Some(MatchWitness {
                assignment,
                start: start + 1,
                len,
            })
        }
        Pattern::LargeSquare(t) => {
            let (start, per) = matching::find_large_square(letters, *t)?;
            let mut assignment = BTreeMap::new();
            for i in 0..*t {
                let (a, l) = if i + 1 < *t {
                    (start + i, 1)
                } else {
                    (start + i, per - (*t - 1))
                };
                assignment.insert(format!("x{}", i + 1), sub(a, l));
            }
            Some(MatchWitness {
                assignment,
                start: start + 1,
                len: 2 * per,
            })
        }
    }
}

/// Whether `w` meets `S_t`, i.e. contains a square `uu` with `|u| >= t`.
pub fn meets_large_square(w: &Word, t: usize) -> bool {
    t >= 1 && w.largest_square_period() >= t
}

/// True iff `w` avoids every pattern in `ps`.
pub fn avoids_set(w: &Word, ps: &[Pattern]) -> bool {
    ps.iter().all(|p| meets(w, p).is_none())
}
