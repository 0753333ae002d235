//! Bounded certificates that a D0L word avoids a binary pattern.
//!
//! For a cube-free, `n`-uniform, `k`-synchronizing binary morphism and a
//! pattern containing `xxyxyy` or `xyyxyx`, the fixed point meets the pattern
//! iff it contains an image with both variable images shorter than `k`. Such
//! images have length at most `B = (k-1)|P|`, so scanning the length-`B`
//! factors of the fixed point decides avoidance.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::{is_cube_free_morphism, sync_counterexample, Morphism};
use crate::pattern::{avoids_set, meets, BinaryPattern, MatchWitness, Pattern};
use crate::word::Word;

/// Iteration limit for factor-set stabilization.
pub const MAX_ITERATIONS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Avoids,
    Witness { factor: Word, witness: MatchWitness },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedVerdict {
    pub morphism: String,
    pub pattern: BinaryPattern,
    /// Factor of the pattern that licenses the reduction.
    pub license: BinaryPattern,
    pub sync_k: usize,
    pub bound: usize,
    /// Smallest `m` with the length-`bound` factors of `f^m(0)` and
    /// `f^{m+1}(0)` equal.
    pub iterate: usize,
    pub factors_scanned: usize,
    pub result: Verdict,
}

impl BoundedVerdict {
    pub fn avoids(&self) -> bool {
        self.result == Verdict::Avoids
    }
}

/// The factor (`xxyxyy` or `xyyxyx`, up to renaming) licensing the bounded
/// reduction for `p`.
pub fn reduction_license(p: &BinaryPattern) -> Option<BinaryPattern> {
    ["xxyxyy", "xyyxyx"]
        .iter()
        .map(|s| s.parse::<BinaryPattern>().unwrap())
        .find(|q| p.contains_factor(q))
}

fn factor_set(w: &[u8], len: usize) -> HashSet<&[u8]> {
    if w.len() < len {
        return (0..=w.len())
            .flat_map(|i| (i..=w.len()).map(move |j| &w[i..j]))
            .collect();
    }
    w.windows(len).collect()
}

/// Certifies (or refutes) that the fixed point of `f` at 0 avoids `p`.
pub fn bounded_pattern_check(f: &Morphism, p: &BinaryPattern, k: usize) -> Result<BoundedVerdict> {
    let license = reduction_license(p).ok_or_else(|| Error::ReductionNotApplicable(p.to_string()))?;
    if !is_cube_free_morphism(f)? {
        return Err(Error::NotCubeFree(f.name().to_string()));
    }
    if sync_counterexample(f, k)?.is_some() {
        return Err(Error::NotSynchronizing {
            name: f.name().to_string(),
            k,
        });
    }
    let bound = k.saturating_sub(1) * p.len();
    f.dol_prefix(0, 2)?;

    let mut cur = f.iterate(0, 1).into_letters();
    let mut iterate = 1;
    loop {
        let next = f.apply_letters(&cur);
        if next.len() >= bound && factor_set(&cur, bound) == factor_set(&next, bound) {
            break;
        }
        iterate += 1;
        if iterate > MAX_ITERATIONS {
            return Err(Error::NoStabilization(MAX_ITERATIONS));
        }
        cur = next;
    }

    let mut factors: Vec<&[u8]> = factor_set(&cur, bound).into_iter().collect();
    factors.sort_unstable();
    let pat = Pattern::Word(p.clone());
    let hit = factors
        .par_iter()
        .map(|fac| {
            let w = Word::binary(fac.to_vec());
            meets(&w, &pat).map(|wit| (w, wit))
        })
        .find_first(Option::is_some)
        .flatten();
    let result = match hit {
        None => Verdict::Avoids,
        Some((factor, witness)) => Verdict::Witness { factor, witness },
    };
    Ok(BoundedVerdict {
        morphism: f.name().to_string(),
        pattern: p.clone(),
        license,
        sync_k: k,
        bound,
        iterate,
        factors_scanned: factors.len(),
        result,
    })
}

/// Whether the length-`n` prefix of the fixed point of `f` at 0 avoids `ps`.
pub fn direct_prefix_check(f: &Morphism, ps: &[Pattern], n: usize) -> Result<bool> {
    let w = f.dol_prefix(0, n)?;
    Ok(avoids_set(&w, ps))
}
