//! Incremental avoidance checking for words grown one letter at a time.
//!
//! An [`Extender`] keeps, for every prefix length, the length of the current
//! periodic run for each period. From those rows it knows every square ending
//! at every position, which is all the suffix plans of the pattern matcher
//! need. Pushing a letter costs O(n); popping is O(1).

use crate::error::{Error, Result};
use crate::hash::PrefixHash;
use crate::matching::SuffixPlan;
use crate::pattern::{BinaryPattern, Pattern};

/// A finite set of patterns prepared for suffix checks.
#[derive(Debug, Clone)]
pub struct AvoidSet {
    cube: bool,
    overlaps_except_alternation: bool,
    large_square: Option<usize>,
    words: Vec<(BinaryPattern, SuffixPlan)>,
    source: Vec<Pattern>,
}

impl AvoidSet {
    pub fn new(ps: &[Pattern]) -> Self {
        let cube = Pattern::cube();
        let mut set = AvoidSet {
            cube: false,
            overlaps_except_alternation: false,
            large_square: None,
            words: Vec::new(),
            source: ps.to_vec(),
        };
        for p in ps {
            match p {
                _ if *p == cube => set.cube = true,
                Pattern::LargeSquare(t) => {
                    set.large_square = Some(set.large_square.map_or(*t, |s| s.min(*t)));
                }
                Pattern::Word(bp) => set.words.push((bp.clone(), SuffixPlan::new(bp))),
            }
        }
        set
    }

    /// Additionally forbids every overlap other than `01010` and `10101`.
    pub fn forbid_overlaps_except_alternation(mut self) -> Self {
        self.overlaps_except_alternation = true;
        self
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.source
    }
}

/// A word under construction that never contains an image of its set.
#[derive(Debug, Clone)]
pub struct Extender {
    set: AvoidSet,
    w: Vec<u8>,
    hash: PrefixHash,
    /// `rows[k][p-1]` is the length of the run of period `p` ending after
    /// `k` letters. Rows beyond the current length are stale buffers.
    rows: Vec<Vec<u32>>,
    squares: Vec<u32>,
    square_start: Vec<usize>,
}

impl Extender {
    pub fn new(set: AvoidSet) -> Self {
        Extender {
            set,
            w: Vec::new(),
            hash: PrefixHash::new(),
            rows: vec![Vec::new()],
            squares: Vec::new(),
            square_start: vec![0, 0],
        }
    }

    /// Builds an extender holding `letters`, or reports the 1-based position
    /// at which an image of the set first completes.
    pub fn from_letters(set: AvoidSet, letters: &[u8]) -> std::result::Result<Self, usize> {
        let mut e = Extender::new(set);
        for (i, &a) in letters.iter().enumerate() {
            if !e.try_push(a) {
                return Err(i + 1);
            }
        }
        Ok(e)
    }

    pub fn letters(&self) -> &[u8] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn set(&self) -> &AvoidSet {
        &self.set
    }

    /// Appends `a`; returns false (and leaves the word unchanged) if the
    /// longer word meets the set.
    pub fn try_push(&mut self, a: u8) -> bool {
        if self.push(a) {
            true
        } else {
            self.pop();
            false
        }
    }

    /// Appends `a` unconditionally; returns whether the result still avoids
    /// the set, assuming the word before the push did.
    pub fn push(&mut self, a: u8) -> bool {
        let n = self.w.len();
        if self.rows.len() <= n + 1 {
            self.rows.push(Vec::new());
        }
        let (old, new) = self.rows.split_at_mut(n + 1);
        let prev = &old[n];
        let new = &mut new[0];
        let w = &self.w;
        let mut ok = true;
        let last = n.saturating_sub(1);
        let mut rare = |p: usize, r: usize, squares: &mut Vec<u32>| {
            if r >= p {
                squares.push(p as u32);
                if self.set.cube && r >= 2 * p {
                    ok = false;
                }
                if self.set.large_square.is_some_and(|t| p >= t) {
                    ok = false;
                }
            }
            if self.set.overlaps_except_alternation && r > p && !(p == 2 && r == 3) {
                ok = false;
            }
        };
        new.clear();
        new.extend(prev.iter().zip(w.iter().rev()).map(|(&pr, &b)| if b == a { pr + 1 } else { 0 }));
        const CHUNK: usize = 32;
        for (c, chunk) in new[..last].chunks(CHUNK).enumerate() {
            let base_p = (c * CHUNK) as u32;
            let hit = chunk
                .iter()
                .zip(base_p..)
                .fold(false, |acc, (&r, i)| acc | (r > i));
            if hit {
                for (i, &r) in chunk.iter().enumerate() {
                    let i = c * CHUNK + i;
                    if r as usize > i {
                        rare(i + 1, r as usize, &mut self.squares);
                    }
                }
            }
        }
        if n > 0 {
            let r = u32::from(w[0] == a);
            new.push(r);
            if r as usize >= n {
                rare(n, r as usize, &mut self.squares);
            }
        }
        self.w.push(a);
        self.hash.push(a);
        self.square_start.push(self.squares.len());
        if ok {
            let end = n + 1;
            let squares = &self.squares;
            let square_start = &self.square_start;
            let ending = |e: usize| &squares[square_start[e]..square_start[e + 1]];
            for (bp, plan) in &self.set.words {
                if plan.suffix_meets(bp.symbols(), end, &self.hash, ending, &self.w) {
                    ok = false;
                    break;
                }
            }
        }
        ok
    }

    pub fn pop(&mut self) {
        if self.w.pop().is_none() {
            return;
        }
        self.hash.pop();
        let n = self.w.len();
        self.square_start.pop();
        self.squares.truncate(self.square_start[n + 1]);
    }

    pub fn truncate(&mut self, len: usize) {
        while self.w.len() > len {
            self.pop();
        }
    }

    /// Length in the high half, full prefix hash in the low half.
    pub(crate) fn fingerprint(&self) -> u128 {
        let n = self.w.len();
        ((n as u128) << 64) | u128::from(self.hash.get(0, n))
    }

    /// Periods of the squares ending at the current end of the word.
    pub fn squares_ending_here(&self) -> &[u32] {
        let n = self.w.len();
        &self.squares[self.square_start[n]..self.square_start[n + 1]]
    }
}

/// Whether `letters` avoids every pattern of `set`.
pub fn avoids(set: &AvoidSet, letters: &[u8]) -> bool {
    Extender::from_letters(set.clone(), letters).is_ok()
}

/// Parses and prepares a pattern list; rejects an empty list.
pub fn avoid_set_from_str(s: &str) -> Result<AvoidSet> {
    let ps = crate::pattern::parse_pattern_list(s)?;
    if ps.is_empty() {
        return Err(Error::PatternParse {
            input: s.into(),
            reason: "empty pattern list".into(),
        });
    }
    Ok(AvoidSet::new(&ps))
}
