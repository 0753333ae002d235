use std::collections::VecDeque;

use serde::Serialize;

use super::forbidden::ForbiddenSet;
use crate::error::{Error, Result};

/// Deterministic automaton over `{0, 1}` whose states are the proper
/// prefixes of the forbidden words; every state is accepting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorAutomaton {
    /// `delta[s][a]`, `None` where the transition completes a forbidden word
    /// (or leads to a removed state).
    pub delta: Vec<[Option<u32>; 2]>,
    /// `None` for the empty automaton.
    pub initial: Option<u32>,
    pub trimmed: bool,
}

impl FactorAutomaton {
    /// The untrimmed automaton: it accepts exactly the words containing no
    /// forbidden word.
    pub fn untrimmed(m: &ForbiddenSet) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::Precondition("forbidden set is empty".into()));
        }
        // trie
        let mut go: Vec<[Option<u32>; 2]> = vec![[None, None]];
        let mut terminal = vec![false];
        for w in &m.words {
            let mut s = 0usize;
            for &a in w.letters() {
                s = match go[s][a as usize] {
                    Some(t) => t as usize,
                    None => {
                        go.push([None, None]);
                        terminal.push(false);
                        let t = go.len() - 1;
                        go[s][a as usize] = Some(t as u32);
                        t
                    }
                };
            }
            terminal[s] = true;
        }
        // failure links, breadth first
        let n = go.len();
        let mut fail = vec![0u32; n];
        let mut full: Vec<[u32; 2]> = vec![[0, 0]; n];
        let mut bad = terminal.clone();
        let mut queue = VecDeque::new();
        for a in 0..2 {
            match go[0][a] {
                Some(t) => {
                    full[0][a] = t;
                    queue.push_back(t as usize);
                }
                None => full[0][a] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            bad[s] |= bad[fail[s] as usize];
            for a in 0..2 {
                match go[s][a] {
                    Some(t) => {
                        fail[t as usize] = if s == 0 { 0 } else { full[fail[s] as usize][a] };
                        full[s][a] = t;
                        queue.push_back(t as usize);
                    }
                    None => full[s][a] = full[fail[s] as usize][a],
                }
            }
        }
        // keep the non-forbidden states, renumbered in trie order
        let mut index = vec![u32::MAX; n];
        let mut next = 0u32;
        for s in 0..n {
            if !bad[s] {
                index[s] = next;
                next += 1;
            }
        }
        if bad[0] {
            return Ok(FactorAutomaton {
                delta: Vec::new(),
                initial: None,
                trimmed: false,
            });
        }
        let delta = (0..n)
            .filter(|&s| !bad[s])
            .map(|s| {
                let mut row = [None, None];
                for a in 0..2 {
                    let t = full[s][a] as usize;
                    if !bad[t] {
                        row[a] = Some(index[t]);
                    }
                }
                row
            })
            .collect();
        Ok(FactorAutomaton {
            delta,
            initial: Some(0),
            trimmed: false,
        })
    }

    /// Removes, until none is left, every state without an outgoing
    /// transition.
    pub fn trim(&self) -> Self {
        let n = self.delta.len();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut out = vec![0u8; n];
        for (s, row) in self.delta.iter().enumerate() {
            for t in row.iter().flatten() {
                preds[*t as usize].push(s as u32);
                out[s] += 1;
            }
        }
        let mut dead = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&s| out[s] == 0).collect();
        for &s in &stack {
            dead[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &p in &preds[s] {
                let p = p as usize;
                out[p] -= 1;
                if out[p] == 0 && !dead[p] {
                    dead[p] = true;
                    stack.push(p);
                }
            }
        }
        let mut index = vec![u32::MAX; n];
        let mut next = 0u32;
        for s in 0..n {
            if !dead[s] {
                index[s] = next;
                next += 1;
            }
        }
        let delta = (0..n)
            .filter(|&s| !dead[s])
            .map(|s| {
                let mut row = [None, None];
                for a in 0..2 {
                    if let Some(t) = self.delta[s][a] {
                        if !dead[t as usize] {
                            row[a] = Some(index[t as usize]);
                        }
                    }
                }
                row
            })
            .collect();
        let initial = self
            .initial
            .filter(|&s| !dead[s as usize])
            .map(|s| index[s as usize]);
        FactorAutomaton {
            delta,
            initial,
            trimmed: true,
        }
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn transitions(&self) -> usize {
        self.delta.iter().map(|r| r.iter().flatten().count()).sum()
    }

    /// Whether the automaton reads `w` from the initial state.
    pub fn accepts(&self, w: &[u8]) -> bool {
        let Some(mut s) = self.initial else {
            return w.is_empty();
        };
        for &a in w {
            match self.delta[s as usize][a as usize] {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    /// Number of words of each length `0..=nmax` read from the initial state.
    pub fn count_words(&self, nmax: usize) -> Vec<u64> {
        let mut counts = vec![0u64; nmax + 1];
        let Some(init) = self.initial else {
            counts[0] = 1;
            return counts;
        };
        let mut v = vec![0u64; self.states()];
        v[init as usize] = 1;
        counts[0] = 1;
        for c in counts.iter_mut().skip(1) {
            let mut next = vec![0u64; self.states()];
            for (s, row) in self.delta.iter().enumerate() {
                if v[s] == 0 {
                    continue;
                }
                for t in row.iter().flatten() {
                    next[*t as usize] += v[s];
                }
            }
            v = next;
            *c = v.iter().sum();
        }
        counts
    }
}

/// The trimmed automaton of the language avoiding `m`.
pub fn build_automaton(m: &ForbiddenSet) -> Result<FactorAutomaton> {
    Ok(FactorAutomaton::untrimmed(m)?.trim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn set(ws: &[&str]) -> ForbiddenSet {
        let words = ws.iter().map(|w| w.parse::<Word>().unwrap()).collect();
        ForbiddenSet::from_words("xx".parse().unwrap(), words)
    }

    #[test]
    fn runs_of_length_two() {
        let a = build_automaton(&set(&["000", "111"])).unwrap();
        assert_eq!(a.states(), 5);
        assert_eq!(a.transitions(), 8);
        assert!(a.accepts(&[0, 0, 1, 0, 1, 1, 0]));
        assert!(!a.accepts(&[0, 1, 1, 1]));
        assert_eq!(a.count_words(6), [1, 2, 4, 6, 10, 16, 26]);
    }

    #[test]
    fn trimming_removes_dead_ends() {
        let m = set(&["00", "11", "010"]);
        let raw = FactorAutomaton::untrimmed(&m).unwrap();
        assert_eq!(raw.count_words(4), [1, 2, 2, 1, 0]);
        let t = raw.trim();
        assert_eq!((t.states(), t.initial), (0, None));
        let t = build_automaton(&set(&["0", "1"])).unwrap();
        assert_eq!(t.states(), 0);
    }

    #[test]
    fn empty_set_is_rejected() {
        assert!(FactorAutomaton::untrimmed(&set(&[])).is_err());
    }
}
