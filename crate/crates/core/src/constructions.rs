//! Desk-scale checks of the exponential lower-bound constructions.
//!
//! Two families are covered. Insertion schemes distort blocks of a carrier
//! word (Thue-Morse or the `μ` fixed point) and every choice of distorted
//! blocks must still avoid the scheme's pattern set. Square-free mappings
//! send ternary square-free words to binary words avoiding cubes, a pattern
//! and all squares of period at least `t`.

use std::collections::HashSet;
use std::fmt;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::extend::{AvoidSet, Extender};
use crate::hash::PrefixHash;
use crate::morphism::{sync_counterexample, Morphism};
use crate::pattern::{BinaryPattern, Pattern};
use crate::search::{longest_avoider, SearchOutcome};
use crate::word::{thue_morse, Word};

/// Exhaustive verification refuses schemes with more sites than this.
pub const EXHAUSTIVE_SITE_LIMIT: usize = 24;
/// Default window width for windowed verification.
pub const DEFAULT_WINDOW: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Xyxyxx,
    Xxyxxy,
    Xxyyxx,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 3] = [SchemeKind::Xyxyxx, SchemeKind::Xxyxxy, SchemeKind::Xxyyxx];

    pub fn pattern(self) -> BinaryPattern {
        self.to_string().parse().unwrap()
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::Xyxyxx => "xyxyxx",
            SchemeKind::Xxyxxy => "xxyxxy",
            SchemeKind::Xxyyxx => "xxyyxx",
        })
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::UnsupportedPattern(s.into(), "no insertion scheme".into()))
    }
}

/// Word inserted by the `xxyxxy` scheme into `t_5`.
pub const XXYXXY_INSERT: &str = "01010011001011010010110";
/// Insert for the `xxyxxy` scheme that keeps the distorted blocks free of
/// cubes, `xxyxxy` and overlaps other than `01010` and `10101`; it differs
/// from [`XXYXXY_INSERT`] in its last eight letters.
pub const XXYXXY_INSERT_REPAIRED: &str = "01010011001011001101001";
/// Word attached after each `μ²(0)` block by the `xxyyxx` scheme.
pub const XXYYXX_INSERT: &str = "01010";

#[derive(Debug, Clone, Serialize)]
pub struct InsertionScheme {
    pub kind: SchemeKind,
    /// Morphism generating the carrier word.
    pub base: String,
    pub block_len: usize,
    /// Letters of a block preceding the insertion point.
    pub offset: usize,
    /// Each block variant with the word inserted into it.
    pub blocks: Vec<(Word, Word)>,
}

impl InsertionScheme {
    pub fn new(kind: SchemeKind) -> Self {
        let w = |s: &str| s.parse::<Word>().unwrap();
        match kind {
            SchemeKind::Xyxyxx | SchemeKind::Xxyxxy => {
                let t5 = catalog::theta().iterate(0, 5);
                let nt5 = t5.negation().unwrap();
                let (offset, ins) = if kind == SchemeKind::Xyxyxx {
                    (12, w("1"))
                } else {
                    (24, w(XXYXXY_INSERT))
                };
                let nins = ins.negation().unwrap();
                InsertionScheme {
                    kind,
                    base: "theta".into(),
                    block_len: 32,
                    offset,
                    blocks: vec![(t5, ins), (nt5, nins)],
                }
            }
            SchemeKind::Xxyyxx => InsertionScheme {
                kind,
                base: "mu".into(),
                block_len: 9,
                offset: 9,
                blocks: vec![(catalog::mu().iterate(0, 2), w(XXYYXX_INSERT))],
            },
        }
    }

    /// The same scheme with a different word inserted into the first block
    /// variant (and its negation into the second, if any).
    pub fn with_insert(mut self, insert: Word) -> Result<Self> {
        if insert.sigma() != 2 || insert.is_empty() {
            return Err(Error::Precondition("insert must be a non-empty binary word".into()));
        }
        let neg = insert.negation()?;
        for (i, block) in self.blocks.iter_mut().enumerate() {
            block.1 = if i == 0 { insert.clone() } else { neg.clone() };
        }
        Ok(self)
    }

    /// Carrier prefix of length `n`.
    pub fn carrier(&self, n: usize) -> Word {
        match self.kind {
            SchemeKind::Xxyyxx => catalog::mu().dol_prefix(0, n).unwrap(),
            _ => thue_morse(n),
        }
    }

    /// Cubes, the scheme pattern and, for `xxyxxy`, every overlap except
    /// `01010` and `10101`.
    pub fn avoid_set(&self) -> AvoidSet {
        let set = AvoidSet::new(&[Pattern::cube(), Pattern::Word(self.kind.pattern())]);
        if self.kind == SchemeKind::Xxyxxy {
            set.forbid_overlaps_except_alternation()
        } else {
            set
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Site {
    /// Carrier letters preceding the insertion.
    pub gap: usize,
    pub block_start: usize,
    pub insert: Word,
}

/// Every insertion site of the scheme inside the carrier prefix of length
/// `prefix_len`, ordered by position. A site is an occurrence of a block
/// lying entirely inside the prefix, wherever it starts.
pub fn insertion_sites(scheme: &InsertionScheme, prefix_len: usize) -> Result<Vec<Site>> {
    if prefix_len < 4 * scheme.block_len {
        return Err(Error::Precondition(format!(
            "prefix length {prefix_len} < {}",
            4 * scheme.block_len
        )));
    }
    let carrier = scheme.carrier(prefix_len);
    let c = carrier.letters();
    let mut sites = Vec::new();
    for start in 0..=prefix_len - scheme.block_len {
        let window = &c[start..start + scheme.block_len];
        for (block, insert) in &scheme.blocks {
            if window == block.letters() {
                sites.push(Site {
                    gap: start + scheme.offset,
                    block_start: start,
                    insert: insert.clone(),
                });
            }
        }
    }
    sites.sort_by_key(|s| s.gap);
    sites.dedup_by_key(|s| s.gap);
    Ok(sites)
}

fn assemble(carrier: &[u8], sites: &[Site], chosen: impl Fn(usize) -> bool) -> Vec<u8> {
    let mut out = Vec::with_capacity(carrier.len() + 32);
    let mut at = 0;
    for (i, s) in sites.iter().enumerate() {
        if chosen(i) {
            out.extend_from_slice(&carrier[at..s.gap]);
            out.extend_from_slice(s.insert.letters());
            at = s.gap;
        }
    }
    out.extend_from_slice(&carrier[at..]);
    out
}

/// The carrier prefix with the scheme's words inserted at the selected gaps.
pub fn generate_variants(scheme: &InsertionScheme, prefix_len: usize, selector: &[usize]) -> Result<Word> {
    let sites = insertion_sites(scheme, prefix_len)?;
    let mut chosen = vec![false; sites.len()];
    for &g in selector {
        let i = sites
            .iter()
            .position(|s| s.gap == g)
            .ok_or_else(|| Error::InvalidSelection(format!("{g} is not an insertion site")))?;
        if chosen[i] {
            return Err(Error::InvalidSelection(format!("site {g} selected twice")));
        }
        chosen[i] = true;
    }
    let carrier = scheme.carrier(prefix_len);
    Ok(Word::binary(assemble(carrier.letters(), &sites, |i| chosen[i])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum VerifyMode {
    /// Every subset of sites.
    Exhaustive,
    /// Uniformly random subsets.
    Sample { count: usize, seed: u64 },
    /// The empty selection plus, for every site `s`, all selections whose
    /// first chosen site is `s` and whose chosen sites lie among the `width`
    /// sites starting at `s`.
    Windowed { width: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeCounterexample {
    /// Gaps of the selected sites.
    pub selection: Vec<usize>,
    pub word: Word,
    /// 1-based position at which the first image completes.
    pub position: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeReport {
    pub scheme: SchemeKind,
    pub prefix_len: usize,
    #[serde(flatten)]
    pub mode: VerifyMode,
    pub sites: usize,
    pub variants_checked: u64,
    /// Number of distinct variant words, by length and prefix hash.
    pub distinct_variants: u64,
    pub counterexample: Option<SchemeCounterexample>,
}

impl SchemeReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.distinct_variants == self.variants_checked
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Choice {
    Off,
    On,
    Free,
}

struct Walk<'a> {
    carrier: &'a [u8],
    sites: &'a [Site],
    choice: &'a [Choice],
    ext: Extender,
    chosen: Vec<bool>,
    checked: u64,
    prints: HashSet<u128>,
    counterexample: Option<SchemeCounterexample>,
}

impl<'a> Walk<'a> {
    fn new(carrier: &'a [u8], sites: &'a [Site], choice: &'a [Choice], set: &AvoidSet) -> Self {
        Walk {
            carrier,
            sites,
            choice,
            ext: Extender::new(set.clone()),
            chosen: vec![false; sites.len()],
            checked: 0,
            prints: HashSet::new(),
            counterexample: None,
        }
    }

    fn gap(&self, i: usize) -> usize {
        self.sites.get(i).map_or(self.carrier.len(), |s| s.gap)
    }

    fn push_all(&mut self, letters: &[u8]) -> bool {
        for &a in letters {
            if !self.ext.push(a) {
                let position = self.ext.len();
                let word = assemble(self.carrier, self.sites, |j| self.chosen[j]);
                self.counterexample = Some(SchemeCounterexample {
                    selection: (0..self.sites.len())
                        .filter(|&j| self.chosen[j])
                        .map(|j| self.sites[j].gap)
                        .collect(),
                    word: Word::binary(word),
                    position,
                });
                return false;
            }
        }
        true
    }

    /// Pushes the carrier up to the first site and walks all decisions.
    fn start(&mut self) -> bool {
        let first = self.gap(0);
        self.push_all(&self.carrier[..first]) && self.step(0)
    }

    fn step(&mut self, i: usize) -> bool {
        if i == self.sites.len() {
            self.checked += 1;
            self.prints.insert(self.ext.fingerprint());
            return true;
        }
        let options: &[bool] = match self.choice[i] {
            Choice::Off => &[false],
            Choice::On => &[true],
            Choice::Free => &[false, true],
        };
        let (from, to) = (self.gap(i), self.gap(i + 1));
        let mark = self.ext.len();
        for &on in options {
            self.chosen[i] = on;
            let carrier = self.carrier;
            let insert = self.sites[i].insert.letters();
            if on && !self.push_all(insert) {
                return false;
            }
            if !self.push_all(&carrier[from..to]) || !self.step(i + 1) {
                return false;
            }
            self.ext.truncate(mark);
        }
        self.chosen[i] = false;
        true
    }
}

struct Tally {
    checked: u64,
    prints: HashSet<u128>,
    counterexample: Option<SchemeCounterexample>,
}

fn walk_all(carrier: &[u8], sites: &[Site], set: &AvoidSet, choices: Vec<Vec<Choice>>) -> Tally {
    let parts: Vec<Tally> = choices
        .into_par_iter()
        .map(|choice| {
            let mut walk = Walk::new(carrier, sites, &choice, set);
            walk.start();
            Tally {
                checked: walk.checked,
                prints: walk.prints,
                counterexample: walk.counterexample,
            }
        })
        .collect();
    let mut total = Tally {
        checked: 0,
        prints: HashSet::new(),
        counterexample: None,
    };
    for part in parts {
        total.checked += part.checked;
        total.prints.extend(part.prints);
        if total.counterexample.is_none() {
            total.counterexample = part.counterexample;
        }
    }
    total
}

/// Checks that every variant selected by `mode` avoids the scheme's set.
pub fn verify_scheme(scheme: &InsertionScheme, prefix_len: usize, mode: VerifyMode) -> Result<SchemeReport> {
    let sites = insertion_sites(scheme, prefix_len)?;
    let k = sites.len();
    let carrier = scheme.carrier(prefix_len);
    let c = carrier.letters();
    let set = scheme.avoid_set();
    let (checked, distinct, counterexample) = match mode {
        VerifyMode::Exhaustive => {
            if k > EXHAUSTIVE_SITE_LIMIT {
                return Err(Error::TooManySites {
                    sites: k,
                    limit: EXHAUSTIVE_SITE_LIMIT,
                });
            }
            let split = k.min(4);
            let choices = (0..1usize << split)
                .map(|bits| {
                    (0..k)
                        .map(|i| match i < split {
                            true if bits >> (split - 1 - i) & 1 == 1 => Choice::On,
                            true => Choice::Off,
                            false => Choice::Free,
                        })
                        .collect()
                })
                .collect();
            let t = walk_all(c, &sites, &set, choices);
            (t.checked, t.prints.len() as u64, t.counterexample)
        }
        VerifyMode::Windowed { width } => {
            if width == 0 {
                return Err(Error::Precondition("window width must be positive".into()));
            }
            let mut choices = vec![vec![Choice::Off; k]];
            for s in 0..k {
                choices.push(
                    (0..k)
                        .map(|i| match i {
                            _ if i == s => Choice::On,
                            _ if i > s && i < s + width => Choice::Free,
                            _ => Choice::Off,
                        })
                        .collect(),
                );
            }
            let t = walk_all(c, &sites, &set, choices);
            (t.checked, t.prints.len() as u64, t.counterexample)
        }
        VerifyMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = HashSet::new();
            let selections: Vec<Vec<bool>> = (0..count)
                .map(|_| (0..k).map(|_| rng.gen::<bool>()).collect::<Vec<_>>())
                .filter(|sel| seen.insert(sel.clone()))
                .collect();
            let results: Vec<(u128, Option<SchemeCounterexample>)> = selections
                .par_iter()
                .map(|sel| {
                    let word = assemble(c, &sites, |i| sel[i]);
                    let print = ((word.len() as u128) << 64) | u128::from(PrefixHash::of(&word).get(0, word.len()));
                    let bad = Extender::from_letters(set.clone(), &word).err().map(|position| {
                        SchemeCounterexample {
                            selection: (0..k).filter(|&i| sel[i]).map(|i| sites[i].gap).collect(),
                            word: Word::binary(word.clone()),
                            position,
                        }
                    });
                    (print, bad)
                })
                .collect();
            let prints: HashSet<u128> = results.iter().map(|r| r.0).collect();
            let cx = results.into_iter().find_map(|r| r.1);
            (selections.len() as u64, prints.len() as u64, cx)
        }
    };
    Ok(SchemeReport {
        scheme: scheme.kind,
        prefix_len,
        mode,
        sites: k,
        variants_checked: checked,
        distinct_variants: distinct,
        counterexample,
    })
}

/// A lower bound on a growth rate: `2^{1/d}` or `α^{1/n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "root", rename_all = "snake_case")]
pub enum RateKind {
    PowerOfTwo(u32),
    AlphaRoot(u32),
}

/// Published bounds on the growth rate of ternary square-free words.
pub const ALPHA_LO: f64 = 1.3017597;
pub const ALPHA_HI: f64 = 1.3017619;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateInterval<T> {
    pub lo: T,
    pub hi: T,
}

pub fn lower_bound_rate<T: Float>(kind: RateKind) -> Result<RateInterval<T>> {
    let root = |base: T, r: u32| base.powf(T::one() / T::from(r).unwrap());
    match kind {
        RateKind::PowerOfTwo(0) | RateKind::AlphaRoot(0) => {
            Err(Error::Precondition("root index must be at least 1".into()))
        }
        RateKind::PowerOfTwo(d) => {
            let v = root(T::from(2.0).unwrap(), d);
            Ok(RateInterval { lo: v, hi: v })
        }
        RateKind::AlphaRoot(n) => Ok(RateInterval {
            lo: root(T::from(ALPHA_LO).unwrap(), n),
            hi: root(T::from(ALPHA_HI).unwrap(), n),
        }),
    }
}

/// Lower bound proved for each exponentially growing pattern.
pub fn known_lower_bound(p: &BinaryPattern) -> Option<RateKind> {
    let key = p.canonical().ok()?.to_string();
    Some(match key.as_str() {
        "xxyxxy" | "xxyxyx" => RateKind::PowerOfTwo(24),
        "xxyyxx" => RateKind::PowerOfTwo(18),
        "xxyxyy" => RateKind::AlphaRoot(14),
        "xxyyxyx" | "xyxxyxy" => RateKind::AlphaRoot(13),
        "xyxxyyxy" => RateKind::AlphaRoot(10),
        _ => return None,
    })
}

fn has_square_suffix(w: &[u8]) -> bool {
    let n = w.len();
    (1..=n / 2).any(|p| w[n - 2 * p..n - p] == w[n - p..])
}

fn ternary_squarefree(len: usize, mut f: impl FnMut(&[u8])) {
    fn rec(w: &mut Vec<u8>, len: usize, f: &mut dyn FnMut(&[u8])) {
        if w.len() == len {
            f(w);
            return;
        }
        for a in 0..3 {
            w.push(a);
            if !has_square_suffix(w) {
                rec(w, len, f);
            }
            w.pop();
        }
    }
    rec(&mut Vec::with_capacity(len), len, &mut f);
}

/// All ternary square-free words of length `len` in lexicographic order.
pub fn squarefree_words(len: usize) -> Result<Vec<Word>> {
    if len > 30 {
        return Err(Error::ResourceGuard(format!("length {len} > 30")));
    }
    let mut out = Vec::new();
    ternary_squarefree(len, |w| out.push(Word::new(w.to_vec(), 3).unwrap()));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingFailure {
    pub source: Word,
    pub factor: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingCheck {
    pub passed: bool,
    pub checked: usize,
    pub failure: Option<MappingFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingChecks {
    pub short_images_clean: MappingCheck,
    pub synchronizing_2n: MappingCheck,
    pub no_square_in_len5_images: MappingCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingCertificate {
    pub morphism: String,
    pub pattern: BinaryPattern,
    pub t: usize,
    pub uniform_len: usize,
    pub checks: MappingChecks,
}

impl MappingCertificate {
    pub fn passed(&self) -> bool {
        let c = &self.checks;
        c.short_images_clean.passed && c.synchronizing_2n.passed && c.no_square_in_len5_images.passed
    }
}

fn mapping_set(p: &BinaryPattern, t: usize) -> Vec<Pattern> {
    vec![Pattern::cube(), Pattern::Word(p.clone()), Pattern::LargeSquare(t)]
}

/// Checks that `g` maps every ternary square-free word of length at most
/// `max_len` to a word avoiding cubes, `p` and `S_t`. A failure names the
/// source word and the shortest prefix of its image that meets the set.
pub fn images_avoid(g: &Morphism, p: &BinaryPattern, t: usize, max_len: usize) -> Result<MappingCheck> {
    let set = AvoidSet::new(&mapping_set(p, t));
    let mut checked = 0;
    let mut failure = None;
    for len in 1..=max_len {
        ternary_squarefree(len, |w| {
            if failure.is_some() {
                return;
            }
            checked += 1;
            let img = g.apply_letters(w);
            if let Err(pos) = Extender::from_letters(set.clone(), &img) {
                failure = Some(MappingFailure {
                    source: Word::new(w.to_vec(), 3).unwrap(),
                    factor: Word::binary(img[..pos].to_vec()),
                });
            }
        });
    }
    Ok(MappingCheck {
        passed: failure.is_none(),
        checked,
        failure,
    })
}

/// Certifies a ternary-to-binary uniform morphism against `{xxx, p, S_t}`.
pub fn verify_mapping(g: &Morphism, p: &BinaryPattern, t: usize) -> Result<MappingCertificate> {
    if g.source_sigma() != 3 || g.target_sigma() != 2 {
        return Err(Error::Precondition(format!("{} is not ternary-to-binary", g.name())));
    }
    let n = g.uniform_len().ok_or(Error::NotUniform)?;
    let short_images_clean = images_avoid(g, p, t, 5)?;

    let sync = sync_counterexample(g, 2 * n)?;
    let synchronizing_2n = MappingCheck {
        passed: sync.is_none(),
        checked: 1,
        failure: sync.map(|s| MappingFailure {
            source: s.source,
            factor: s.factor,
        }),
    };

    let mut checked = 0;
    let mut failure = None;
    ternary_squarefree(5, |w| {
        checked += 1;
        let img = Word::binary(g.apply_letters(w));
        if failure.is_none() && img.largest_square_period() >= t {
            failure = Some(MappingFailure {
                source: Word::new(w.to_vec(), 3).unwrap(),
                factor: img,
            });
        }
    });
    Ok(MappingCertificate {
        morphism: g.name().to_string(),
        pattern: p.clone(),
        t,
        uniform_len: n,
        checks: MappingChecks {
            short_images_clean,
            synchronizing_2n,
            no_square_in_len5_images: MappingCheck {
                passed: failure.is_none(),
                checked,
                failure,
            },
        },
    })
}

/// Longest binary word avoiding cubes, `p` and all squares of period at
/// least `t`.
pub fn unavoidable_with_squares(p: &BinaryPattern, t: usize, cutoff: usize) -> Result<SearchOutcome> {
    if cutoff > 200 {
        return Err(Error::ResourceGuard(format!("cutoff {cutoff} > 200")));
    }
    longest_avoider(&mapping_set(p, t), cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_names_round_trip() {
        for k in SchemeKind::ALL {
            assert_eq!(k.to_string().parse::<SchemeKind>().unwrap(), k);
            assert_eq!(k.pattern().to_string(), k.to_string());
        }
        assert!("xyxyx".parse::<SchemeKind>().is_err());
    }

    #[test]
    fn sites_of_a_short_prefix() {
        let s = InsertionScheme::new(SchemeKind::Xyxyxx);
        let sites = insertion_sites(&s, 128).unwrap();
        let gaps: Vec<usize> = sites.iter().map(|s| s.gap).collect();
        assert_eq!(gaps, [12, 44, 60, 76, 108]);
        let inserts: Vec<String> = sites.iter().map(|s| s.insert.to_string()).collect();
        assert_eq!(inserts, ["1", "0", "1", "0", "1"]);
        assert!(insertion_sites(&s, 100).is_err());
    }

    #[test]
    fn variants() {
        let s = InsertionScheme::new(SchemeKind::Xyxyxx);
        let carrier = s.carrier(128);
        assert_eq!(generate_variants(&s, 128, &[]).unwrap(), carrier);
        let v = generate_variants(&s, 128, &[44]).unwrap();
        assert_eq!(v.len(), 129);
        assert_eq!(v.at(45), 0);
        assert_eq!(v.prefix(44), carrier.prefix(44));
        assert_eq!(v.slice(46, 129), carrier.slice(45, 128));
        assert!(matches!(generate_variants(&s, 128, &[13]), Err(Error::InvalidSelection(_))));
        assert!(matches!(generate_variants(&s, 128, &[12, 12]), Err(Error::InvalidSelection(_))));
    }

    #[test]
    fn small_runs() {
        let s = InsertionScheme::new(SchemeKind::Xyxyxx);
        let r = verify_scheme(&s, 256, VerifyMode::Exhaustive).unwrap();
        assert!(r.passed());
        assert_eq!(r.variants_checked, 1 << r.sites);
        assert_eq!(r.distinct_variants, r.variants_checked);
        let a = verify_scheme(&s, 256, VerifyMode::Sample { count: 40, seed: 7 }).unwrap();
        let b = verify_scheme(&s, 256, VerifyMode::Sample { count: 40, seed: 7 }).unwrap();
        assert_eq!((a.variants_checked, a.distinct_variants), (b.variants_checked, b.distinct_variants));
        let bad = verify_scheme(&InsertionScheme::new(SchemeKind::Xxyxxy), 128, VerifyMode::Exhaustive).unwrap();
        let cx = bad.counterexample.expect("printed insert meets xxyxxy");
        assert!(!crate::extend::avoids(&InsertionScheme::new(SchemeKind::Xxyxxy).avoid_set(), cx.word.letters()));
    }

    #[test]
    fn rates() {
        let r = lower_bound_rate::<f64>(RateKind::PowerOfTwo(24)).unwrap();
        assert_eq!(r.lo, r.hi);
        assert!((r.lo - 1.0293).abs() < 5e-5);
        let r = lower_bound_rate::<f32>(RateKind::AlphaRoot(10)).unwrap();
        assert!(r.lo <= r.hi && (r.lo - 1.0267).abs() < 1e-4);
        assert!(lower_bound_rate::<f64>(RateKind::AlphaRoot(0)).is_err());
        assert_eq!(known_lower_bound(&"yxxyxx".parse().unwrap()), Some(RateKind::PowerOfTwo(24)));
        assert_eq!(known_lower_bound(&"xyxyx".parse().unwrap()), None);
    }

    #[test]
    fn squarefree_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| squarefree_words(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 3, 6, 12, 18, 30, 42, 60, 78, 108, 144]);
        assert!(squarefree_words(31).is_err());
    }

    #[test]
    fn mapping_checks() {
        let (p, t) = catalog::g_target(1);
        assert!(verify_mapping(&catalog::g(1), &p, t).unwrap().passed());
        let check = images_avoid(&catalog::g(1), &p, t - 1, 6).unwrap();
        assert!(!check.passed);
        assert!(check.failure.is_some());
    }
}
