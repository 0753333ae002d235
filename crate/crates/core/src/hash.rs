//! Polynomial prefix hashes modulo 2^61 - 1 for constant-time factor comparison.
//!
//! Equal factors always hash equal; unequal factors collide with negligible
//! probability. Callers that report a match confirm it letter by letter, so a
//! collision can only cost time, never correctness.

const MOD: u64 = (1 << 61) - 1;
const BASE: u64 = 0x5bd1_e995_1234_5677 % MOD;

#[inline]
fn mul(a: u64, b: u64) -> u64 {
    let p = (a as u128) * (b as u128);
    let lo = (p as u64) & MOD;
    let hi = (p >> 61) as u64;
    let s = lo + hi;
    if s >= MOD {
        s - MOD
    } else {
        s
    }
}

#[derive(Debug, Clone)]
pub(crate) struct PrefixHash {
    prefix: Vec<u64>,
    pow: Vec<u64>,
}

impl Default for PrefixHash {
    fn default() -> Self {
        Self::new()
    }
}

impl PrefixHash {
    pub fn new() -> Self {
        PrefixHash {
            prefix: vec![0],
            pow: vec![1],
        }
    }

    pub fn of(letters: &[u8]) -> Self {
        let mut h = Self::new();
        for &a in letters {
            h.push(a);
        }
        h
    }

    #[inline]
    pub fn push(&mut self, letter: u8) {
        let last = *self.prefix.last().unwrap();
        let v = mul(last, BASE) + letter as u64 + 1;
        self.prefix.push(if v >= MOD { v - MOD } else { v });
        if self.pow.len() < self.prefix.len() {
            let p = mul(*self.pow.last().unwrap(), BASE);
            self.pow.push(p);
        }
    }

    #[inline]
    pub fn pop(&mut self) {
        if self.prefix.len() > 1 {
            self.prefix.pop();
        }
    }

    /// Hash of the factor `[start, start + len)`.
    #[inline]
    pub fn get(&self, start: usize, len: usize) -> u64 {
        let a = self.prefix[start + len];
        let b = mul(self.prefix[start], self.pow[len]);
        if a >= b {
            a - b
        } else {
            a + MOD - b
        }
    }

    #[inline]
    pub fn eq(&self, a: usize, b: usize, len: usize) -> bool {
        a == b || self.get(a, len) == self.get(b, len)
    }
}
