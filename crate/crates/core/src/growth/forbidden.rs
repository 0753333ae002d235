use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extend::{avoids, AvoidSet};
use crate::pattern::{BinaryPattern, Pattern};
use crate::word::Word;

/// Default resource guard on the cutoff.
pub const MAX_CUTOFF: usize = 40;

/// Minimal forbidden words of the language avoiding cubes and one pattern,
/// up to a length cutoff.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenSet {
    pub pattern: BinaryPattern,
    pub cutoff: usize,
    /// Sorted by length, then lexicographically.
    pub words: Vec<Word>,
}

impl ForbiddenSet {
    /// A set given explicitly; words that contain another word of the set
    /// are dropped.
    pub fn from_words(pattern: BinaryPattern, words: Vec<Word>) -> Self {
        let cutoff = words.iter().map(Word::len).max().unwrap_or(0);
        let mut sorted: Vec<Word> = words.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        sorted.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let mut kept: Vec<Word> = Vec::new();
        for w in sorted {
            if !kept.iter().any(|k| w.contains_factor(k)) {
                kept.push(w);
            }
        }
        ForbiddenSet {
            pattern,
            cutoff,
            words: kept,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// No word of the set is a factor of another.
    pub fn is_antichain(&self) -> bool {
        self.words.iter().enumerate().all(|(i, a)| {
            self.words
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !b.contains_factor(a))
        })
    }
}

fn images(sym: &[u8], cutoff: usize, out: &mut BTreeSet<Vec<u8>>) {
    let cx = sym.iter().filter(|&&s| s == 0).count();
    let cy = sym.len() - cx;
    for lx in 1..=cutoff / cx.max(1) {
        let ly_range = if cy == 0 { 0..=0 } else { 1..=(cutoff - cx * lx) / cy };
        for ly in ly_range {
            for xb in 0u64..1 << lx {
                for yb in 0u64..1 << ly {
                    let mut w = Vec::with_capacity(cx * lx + cy * ly);
                    for &s in sym {
                        let (bits, l) = if s == 0 { (xb, lx) } else { (yb, ly) };
                        w.extend((0..l).map(|i| ((bits >> (l - 1 - i)) & 1) as u8));
                    }
                    out.insert(w);
                }
            }
        }
    }
}

/// Minimal forbidden words of length at most `cutoff` for the language of
/// binary words avoiding `xxx` and `p`.
pub fn minimal_forbidden(p: &BinaryPattern, cutoff: usize) -> Result<ForbiddenSet> {
    minimal_forbidden_with_guard(p, cutoff, MAX_CUTOFF)
}

pub fn minimal_forbidden_with_guard(p: &BinaryPattern, cutoff: usize, guard: usize) -> Result<ForbiddenSet> {
    if cutoff > guard {
        return Err(Error::ResourceGuard(format!("cutoff {cutoff} > {guard}")));
    }
    let set = AvoidSet::new(&[Pattern::cube(), Pattern::Word(p.clone())]);
    let mut candidates = BTreeSet::new();
    images(&[0, 0, 0], cutoff, &mut candidates);
    images(p.symbols(), cutoff, &mut candidates);
    let mut words: Vec<Word> = candidates
        .into_iter()
        .filter(|w| avoids(&set, &w[..w.len() - 1]) && avoids(&set, &w[1..]))
        .map(Word::binary)
        .collect();
    words.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(ForbiddenSet {
        pattern: p.clone(),
        cutoff,
        words,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(m: &ForbiddenSet) -> Vec<String> {
        m.words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn short_cutoff() {
        let m = minimal_forbidden(&"xxyxxy".parse().unwrap(), 6).unwrap();
        assert_eq!(words(&m), ["000", "111", "001001", "010101", "101010", "110110"]);
        assert!(m.is_antichain());
    }

    #[test]
    fn guard_and_reduction() {
        let p: BinaryPattern = "xyxyxx".parse().unwrap();
        assert!(matches!(minimal_forbidden_with_guard(&p, 30, 20), Err(Error::ResourceGuard(_))));
        let m = ForbiddenSet::from_words(p, vec![Word::binary([0, 0]), Word::binary([1, 0, 0, 1])]);
        assert_eq!(words(&m), ["00"]);
        assert!(m.is_antichain());
    }
}
