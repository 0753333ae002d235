//! Exhaustive searches over binary words avoiding a pattern set.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::dolverify::{bounded_pattern_check, direct_prefix_check};
use crate::error::{Error, Result};
use crate::extend::{AvoidSet, Extender};
use crate::morphism::min_synchronizing;
use crate::pattern::{avoids_set, BinaryPattern, Pattern};
use crate::word::{thue_morse, Word};

/// Largest cutoff accepted by [`longest_avoider`].
pub const MAX_CUTOFF: usize = 500;
/// At most this many maximal witnesses are stored.
pub const WITNESS_CAP: usize = 32;
/// Default node budget for counting searches.
pub const DEFAULT_NODE_LIMIT: u64 = 500_000_000;

/// Canonical patterns whose avoidability (together with cubes) is the
/// avoidability of every pattern containing one of them.
pub const AVOIDABLE_CORE: [&str; 7] = [
    "xyxyx", "xxyxxy", "xxyxyy", "xxyyxx", "xxyyxyx", "xyxxyxy", "xyxxyyxy",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchVerdict {
    Finite,
    ExceedsCutoff,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub patterns: Vec<Pattern>,
    pub verdict: SearchVerdict,
    /// Longest avoiding length reached (the cutoff when it was reached).
    pub maxlen: usize,
    pub cutoff: usize,
    /// Maximal avoiding words in lexicographic order (at most
    /// [`WITNESS_CAP`]); for an exceeded cutoff, the first word reaching it.
    pub witnesses: Vec<Word>,
    pub witness_count: usize,
    pub nodes_explored: u64,
}

impl SearchOutcome {
    pub fn is_finite(&self) -> bool {
        self.verdict == SearchVerdict::Finite
    }
}

struct LongestDfs {
    ext: Extender,
    cutoff: usize,
    best: usize,
    witnesses: Vec<Word>,
    witness_count: usize,
    nodes: u64,
    reached: bool,
}

impl LongestDfs {
    fn run(&mut self) {
        let n = self.ext.len();
        if n > self.best {
            self.best = n;
            self.witnesses.clear();
            self.witness_count = 0;
        }
        if n == self.best {
            self.witness_count += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(Word::binary(self.ext.letters().to_vec()));
            }
        }
        if n == self.cutoff {
            self.reached = true;
            return;
        }
        for a in 0..2 {
            if self.ext.try_push(a) {
                self.nodes += 1;
                self.run();
                if self.reached {
                    return;
                }
                self.ext.pop();
            }
        }
    }
}

/// Depth-first search (0 before 1) for the longest binary word avoiding `ps`.
pub fn longest_avoider(ps: &[Pattern], cutoff: usize) -> Result<SearchOutcome> {
    if cutoff > MAX_CUTOFF {
        return Err(Error::ResourceGuard(format!(
            "cutoff {cutoff} exceeds {MAX_CUTOFF}"
        )));
    }
    let mut dfs = LongestDfs {
        ext: Extender::new(AvoidSet::new(ps)),
        cutoff,
        best: 0,
        witnesses: Vec::new(),
        witness_count: 0,
        nodes: 0,
        reached: false,
    };
    dfs.run();
    let verdict = if dfs.reached {
        dfs.witnesses = vec![Word::binary(dfs.ext.letters().to_vec())];
        dfs.witness_count = 1;
        SearchVerdict::ExceedsCutoff
    } else {
        SearchVerdict::Finite
    };
    Ok(SearchOutcome {
        patterns: ps.to_vec(),
        verdict,
        maxlen: dfs.best,
        cutoff,
        witnesses: dfs.witnesses,
        witness_count: dfs.witness_count,
        nodes_explored: dfs.nodes,
    })
}

/// Cubes plus the given pattern.
pub fn with_cubes(p: &BinaryPattern) -> Vec<Pattern> {
    vec![Pattern::cube(), Pattern::Word(p.clone())]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mechanism {
    /// A proper factor is already avoidable.
    ContainsAvoidable { factor: BinaryPattern },
    /// A Thue-Morse prefix of the given length avoids the pattern.
    ThueMorsePrefix { prefix_len: usize },
    /// Bounded certificate for a D0L word.
    BoundedCertificate {
        morphism: String,
        sync_k: usize,
        bound: usize,
        iterate: usize,
    },
    /// A prefix of a fixed point avoids cubes and the pattern.
    FixedPointPrefix { morphism: String, prefix_len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Avoidable {
        mechanism: Mechanism,
        /// No proper factor is avoidable.
        minimal: bool,
    },
    Unavoidable { maxlen: usize, witness: Word },
    /// The search reached its cutoff but no mechanism applied.
    Undetermined { cutoff: usize },
}

impl Status {
    pub fn is_avoidable(&self) -> bool {
        matches!(self, Status::Avoidable { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub pattern: BinaryPattern,
    pub length: usize,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub maxlen: usize,
    pub cutoff: usize,
    pub entries: Vec<ClassEntry>,
}

impl Classification {
    pub fn get(&self, p: &BinaryPattern) -> Option<&ClassEntry> {
        let key = p.canonical().ok()?;
        self.entries.iter().find(|e| e.pattern == key)
    }

    pub fn of_length(&self, len: usize) -> impl Iterator<Item = &ClassEntry> {
        self.entries.iter().filter(move |e| e.length == len)
    }
}

/// Canonical two-variable patterns of each length up to `maxlen` that do not
/// contain a cube `QQQ` of a pattern factor.
pub fn classification_universe(maxlen: usize) -> Vec<BinaryPattern> {
    let mut out = BTreeSet::new();
    for len in 2..=maxlen {
        for p in BinaryPattern::all_of_length(len) {
            if !p.contains_cube() {
                out.insert(p.canonical().unwrap());
            }
        }
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    v
}

/// Length of the Thue-Morse prefix used as avoidance evidence.
pub const TM_EVIDENCE_LEN: usize = 2048;
/// Length of the `μ` fixed-point prefix used as avoidance evidence.
pub const MU_EVIDENCE_LEN: usize = 729;
/// Default search cutoff for classification.
pub const CLASSIFY_CUTOFF: usize = 120;

fn avoidance_mechanism(p: &BinaryPattern) -> Result<Option<Mechanism>> {
    let ps = with_cubes(p);
    if avoids_set(&thue_morse(TM_EVIDENCE_LEN), &ps) {
        return Ok(Some(Mechanism::ThueMorsePrefix {
            prefix_len: TM_EVIDENCE_LEN,
        }));
    }
    if crate::dolverify::reduction_license(p).is_some() {
        for f in [catalog::h1(), catalog::h2(), catalog::h3()] {
            let Some(k) = min_synchronizing(&f, 64)? else {
                continue;
            };
            let v = bounded_pattern_check(&f, p, k)?;
            if v.avoids() {
                return Ok(Some(Mechanism::BoundedCertificate {
                    morphism: v.morphism,
                    sync_k: v.sync_k,
                    bound: v.bound,
                    iterate: v.iterate,
                }));
            }
        }
    }
    for f in [catalog::mu(), catalog::mu_prime()] {
        if direct_prefix_check(&f, &ps, MU_EVIDENCE_LEN)? {
            return Ok(Some(Mechanism::FixedPointPrefix {
                morphism: f.name().to_string(),
                prefix_len: MU_EVIDENCE_LEN,
            }));
        }
    }
    Ok(None)
}

/// Classifies every canonical binary pattern of length at most `maxlen`.
pub fn classify(maxlen: usize) -> Result<Classification> {
    classify_with_cutoff(maxlen, CLASSIFY_CUTOFF)
}

pub fn classify_with_cutoff(maxlen: usize, cutoff: usize) -> Result<Classification> {
    if maxlen > 8 {
        return Err(Error::Precondition(format!("maxlen {maxlen} > 8")));
    }
    let mut known: BTreeMap<BinaryPattern, bool> = BTreeMap::new();
    let mut entries = Vec::new();
    for p in classification_universe(maxlen) {
        let n = p.len();
        let avoidable_factor = (0..n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| j - i < n)
            .map(|(i, j)| p.factor(i, j))
            .filter(|q| q.vars() == 2)
            .map(|q| q.canonical().unwrap())
            .find(|q| known.get(q) == Some(&true));
        let status = if let Some(factor) = avoidable_factor {
            Status::Avoidable {
                mechanism: Mechanism::ContainsAvoidable { factor },
                minimal: false,
            }
        } else {
            let out = longest_avoider(&with_cubes(&p), cutoff)?;
            if out.is_finite() {
                Status::Unavoidable {
                    maxlen: out.maxlen,
                    witness: out.witnesses[0].clone(),
                }
            } else {
                match avoidance_mechanism(&p)? {
                    Some(mechanism) => Status::Avoidable {
                        mechanism,
                        minimal: true,
                    },
                    None => Status::Undetermined { cutoff },
                }
            }
        };
        known.insert(p.clone(), status.is_avoidable());
        entries.push(ClassEntry {
            pattern: p,
            length: n,
            status,
        });
    }
    Ok(Classification {
        maxlen,
        cutoff,
        entries,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CountSeries {
    pub patterns: Vec<Pattern>,
    /// `counts[n]` is the number of avoiding words of length `n`.
    pub counts: Vec<u64>,
}

fn count_from(ext: &mut Extender, nmax: usize, counts: &mut [u64], nodes: &mut u64, limit: u64) -> bool {
    counts[ext.len()] += 1;
    *nodes += 1;
    if *nodes > limit {
        return false;
    }
    if ext.len() == nmax {
        return true;
    }
    for a in 0..2 {
        if ext.try_push(a) {
            let ok = count_from(ext, nmax, counts, nodes, limit);
            ext.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Avoiding words of length exactly `len`, in lexicographic order.
pub fn enumerate_words(set: &AvoidSet, len: usize, limit: u64) -> Result<Vec<Vec<u8>>> {
    fn rec(ext: &mut Extender, len: usize, out: &mut Vec<Vec<u8>>, nodes: &mut u64, limit: u64) -> bool {
        *nodes += 1;
        if *nodes > limit {
            return false;
        }
        if ext.len() == len {
            out.push(ext.letters().to_vec());
            return true;
        }
        for a in 0..2 {
            if ext.try_push(a) {
                let ok = rec(ext, len, out, nodes, limit);
                ext.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut ext = Extender::new(set.clone());
    let mut out = Vec::new();
    let mut nodes = 0;
    if !rec(&mut ext, len, &mut out, &mut nodes, limit) {
        return Err(Error::ResourceGuard(format!(
            "more than {limit} search nodes enumerating length {len}"
        )));
    }
    Ok(out)
}

/// Exact number of words of each length up to `nmax` avoiding `ps`.
pub fn count_series(ps: &[Pattern], nmax: usize) -> Result<CountSeries> {
    count_series_with_limit(ps, nmax, DEFAULT_NODE_LIMIT)
}

pub fn count_series_with_limit(ps: &[Pattern], nmax: usize, node_limit: u64) -> Result<CountSeries> {
    let set = AvoidSet::new(ps);
    let split = nmax.min(6);
    let mut counts = vec![0u64; nmax + 1];
    let mut prefixes = Vec::new();
    for len in 0..=split {
        let words = enumerate_words(&set, len, node_limit)?;
        counts[len] = words.len() as u64;
        if len == split {
            prefixes = words;
        }
    }
    let shards: Vec<Option<Vec<u64>>> = prefixes
        .par_iter()
        .map(|pre| {
            let mut ext = Extender::from_letters(set.clone(), pre).ok()?;
            let mut local = vec![0u64; nmax + 1];
            let mut nodes = 0;
            count_from(&mut ext, nmax, &mut local, &mut nodes, node_limit).then_some(local)
        })
        .collect();
    for shard in shards {
        let shard = shard.ok_or_else(|| {
            Error::ResourceGuard(format!("more than {node_limit} nodes in one counting shard"))
        })?;
        for n in split + 1..=nmax {
            counts[n] += shard[n];
        }
    }
    Ok(CountSeries {
        patterns: ps.to_vec(),
        counts,
    })
}

/// Patterns of the polynomial-growth language probed by [`polynomial_probe`].
pub fn polynomial_language() -> Vec<Pattern> {
    crate::pattern::parse_pattern_list("xxx,xyxyxx,xxyxyx").unwrap()
}

/// Factors that no word of the polynomial-growth language contains
/// (together with their negations).
pub const POLY_FORBIDDEN: [&str; 6] = ["000", "010101", "010100", "11001001", "10010011", "010010010"];

#[derive(Debug, Clone, Serialize)]
pub struct ForbiddenCheck {
    pub factor: Word,
    pub forbidden: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeCheck {
    pub base: f64,
    pub n: usize,
    pub count: u64,
    pub envelope: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyProbeReport {
    pub nmax: usize,
    pub margin: usize,
    pub counts: Vec<u64>,
    pub ratios: Vec<f64>,
    /// Mean ratio over the last third of the series is below the mean over
    /// the middle third.
    pub ratios_declining: bool,
    pub forbidden_factors: Vec<ForbiddenCheck>,
    /// Number of margin-extendable words examined, by length.
    pub extendable_by_length: Vec<usize>,
    /// Extendable words that are not Thue-Morse factors.
    pub non_thue_morse: Vec<Word>,
    pub envelope: EnvelopeCheck,
}

impl PolyProbeReport {
    pub fn forbidden_ok(&self) -> bool {
        self.forbidden_factors.iter().all(|f| f.forbidden)
    }
    pub fn extendable_ok(&self) -> bool {
        self.non_thue_morse.is_empty()
    }
}

/// Growth envelope tested by the probe.
pub const ENVELOPE_BASE: f64 = 1.05;

/// Empirical probes of the language avoiding cubes, `xyxyxx` and `xxyxyx`.
pub fn polynomial_probe(nmax: usize, margin: usize) -> Result<PolyProbeReport> {
    if nmax > 40 || margin > 20 {
        return Err(Error::Precondition(format!(
            "nmax {nmax} > 40 or margin {margin} > 20"
        )));
    }
    let ps = polynomial_language();
    let set = AvoidSet::new(&ps);
    let counts = count_series(&ps, nmax)?.counts;
    let ratios: Vec<f64> = (1..counts.len())
        .map(|n| counts[n] as f64 / counts[n - 1].max(1) as f64)
        .collect();
    let third = ratios.len() / 3;
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len().max(1) as f64;
    let ratios_declining = third > 0 && mean(&ratios[2 * third..]) < mean(&ratios[third..2 * third]);

    let mut forbidden_factors = Vec::new();
    for f in POLY_FORBIDDEN {
        let w: Word = f.parse()?;
        for v in [w.clone(), w.negation()?] {
            forbidden_factors.push(ForbiddenCheck {
                forbidden: !avoids_set(&v, &ps),
                factor: v,
            });
        }
    }

    let tm = thue_morse(1 << 12);
    let mut extendable_by_length = Vec::new();
    let mut non_thue_morse = Vec::new();
    for len in 1..=nmax.saturating_sub(2 * margin) {
        let mut middles = BTreeSet::new();
        for w in enumerate_words(&set, len + 2 * margin, DEFAULT_NODE_LIMIT)? {
            middles.insert(w[margin..margin + len].to_vec());
        }
        let tm_factors = tm.factors(len);
        extendable_by_length.push(middles.len());
        for m in middles {
            let w = Word::binary(m);
            if !tm_factors.contains(&w) {
                non_thue_morse.push(w);
            }
        }
    }

    let n = nmax.min(30);
    let envelope = ENVELOPE_BASE.powi(n as i32) * counts[0] as f64;
    Ok(PolyProbeReport {
        nmax,
        margin,
        ratios,
        ratios_declining,
        forbidden_factors,
        extendable_by_length,
        non_thue_morse,
        envelope: EnvelopeCheck {
            base: ENVELOPE_BASE,
            n,
            count: counts[n],
            envelope,
            holds: (counts[n] as f64) < envelope,
        },
        counts,
    })
}

/// Whether `w` has the form `uvuvu` with `|uv| >= 4` and `|u| > 1`.
pub fn is_long_overlap(w: &[u8]) -> bool {
    let n = w.len();
    (4..=n / 2).any(|p| {
        let u = n - 2 * p;
        u >= 2 && u <= p && (p..n).all(|i| w[i] == w[i - p])
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OverlapReport {
    pub nmax: usize,
    pub overlaps_checked: usize,
    /// Overlaps with a surviving four-letter extension on some side.
    pub failures: Vec<Word>,
}

impl OverlapReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether some word of length `k` can be appended (or prepended) to `w`
/// within the language of `set`.
pub fn extends_by(set: &AvoidSet, w: &[u8], k: usize, left: bool) -> bool {
    // left extensions are checked on the reversal; the set must be closed under it
    let letters: Vec<u8> = if left {
        w.iter().rev().copied().collect()
    } else {
        w.to_vec()
    };
    let Ok(mut ext) = Extender::from_letters(set.clone(), &letters) else {
        return false;
    };
    fn go(ext: &mut Extender, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        for a in 0..2 {
            if ext.try_push(a) {
                let ok = go(ext, k - 1);
                ext.pop();
                if ok {
                    return true;
                }
            }
        }
        false
    }
    go(&mut ext, k)
}

/// Confirms that every long overlap of the polynomial-growth language with
/// length at most `nmax` extends by at most three letters on each side.
pub fn overlap_extension_check(nmax: usize) -> Result<OverlapReport> {
    if nmax > 30 {
        return Err(Error::Precondition(format!("nmax {nmax} > 30")));
    }
    let set = AvoidSet::new(&polynomial_language());
    let mut overlaps_checked = 0;
    let mut failures = Vec::new();
    for len in 10..=nmax {
        for w in enumerate_words(&set, len, DEFAULT_NODE_LIMIT)? {
            if !is_long_overlap(&w) {
                continue;
            }
            overlaps_checked += 1;
            if extends_by(&set, &w, 4, false) || extends_by(&set, &w, 4, true) {
                failures.push(Word::binary(w));
            }
        }
    }
    Ok(OverlapReport {
        nmax,
        overlaps_checked,
        failures,
    })
}
