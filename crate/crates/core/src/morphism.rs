//! Morphisms, fixed-point prefixes and the certified morphism tests.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::word::{self, Word};

/// A non-erasing morphism from a 2- or 3-letter alphabet into a 2- or 3-letter
/// alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    name: String,
    images: Vec<Vec<u8>>,
    target_sigma: u8,
}

impl Morphism {
    /// `images[a]` is the image of letter `a`; the source alphabet size is
    /// the number of images.
    pub fn new(name: impl Into<String>, images: Vec<Word>) -> Result<Self> {
        let name = name.into();
        let source = images.len();
        if !(2..=3).contains(&source) {
            return Err(Error::Morphism(format!(
                "{name}: expected images for 2 or 3 letters, got {source}"
            )));
        }
        if let Some(a) = images.iter().position(Word::is_empty) {
            return Err(Error::Morphism(format!("{name}: image of {a} is empty")));
        }
        let target_sigma = images.iter().map(Word::sigma).max().unwrap_or(2);
        Ok(Morphism {
            name,
            images: images.into_iter().map(Word::into_letters).collect(),
            target_sigma,
        })
    }

    /// Builds a morphism from digit strings such as `["01", "10"]`.
    pub fn from_strs(name: &str, images: &[&str]) -> Result<Self> {
        let words = images
            .iter()
            .map(|s| s.parse::<Word>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, words)
    }

    /// Parses lines of the form `0 -> 0110010`; `#` starts a comment.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut images: Vec<Option<Word>> = vec![None; 3];
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Morphism(format!("expected 'letter -> image', got {raw:?}")))?;
            let a: usize = lhs
                .trim()
                .parse()
                .ok()
                .filter(|&a: &usize| a < 3)
                .ok_or_else(|| Error::Morphism(format!("bad source letter {:?}", lhs.trim())))?;
            if images[a].is_some() {
                return Err(Error::Morphism(format!("letter {a} defined twice")));
            }
            images[a] = Some(rhs.trim().parse()?);
        }
        let source = images.iter().take_while(|i| i.is_some()).count();
        if images[source..].iter().any(Option::is_some) {
            return Err(Error::Morphism("source letters must be 0, 1[, 2]".into()));
        }
        Self::new(name, images.into_iter().flatten().collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source_sigma(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn target_sigma(&self) -> u8 {
        self.target_sigma
    }

    pub fn image(&self, a: u8) -> Word {
        Word::new(self.images[a as usize].clone(), self.target_sigma).unwrap()
    }

    pub(crate) fn image_letters(&self, a: u8) -> &[u8] {
        &self.images[a as usize]
    }

    /// Common image length when the morphism is uniform.
    pub fn uniform_len(&self) -> Option<usize> {
        let n = self.images[0].len();
        self.images.iter().all(|i| i.len() == n).then_some(n)
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform_len().is_some()
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if let Some(&a) = w.letters().iter().find(|&&a| a >= self.source_sigma()) {
            return Err(Error::LetterOutOfRange {
                letter: a,
                sigma: self.source_sigma(),
            });
        }
        Ok(Word::new(self.apply_letters(w.letters()), self.target_sigma).unwrap())
    }

    pub(crate) fn apply_letters(&self, w: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(w.len() * self.images[0].len());
        for &a in w {
            out.extend_from_slice(&self.images[a as usize]);
        }
        out
    }

    /// `f^m(a)`.
    pub fn iterate(&self, a: u8, m: usize) -> Word {
        let mut w = vec![a];
        for _ in 0..m {
            w = self.apply_letters(&w);
        }
        Word::new(w, self.target_sigma.max(self.source_sigma())).unwrap()
    }

    fn endo(&self) -> Result<()> {
        if self.target_sigma > self.source_sigma() {
            return Err(Error::Morphism(format!(
                "{} maps into a larger alphabet and cannot be iterated",
                self.name
            )));
        }
        Ok(())
    }

    /// The composition `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if other.target_sigma > self.source_sigma() {
            return Err(Error::Morphism("alphabets do not compose".into()));
        }
        let images = (0..other.source_sigma())
            .map(|a| Word::new(self.apply_letters(other.image_letters(a)), self.target_sigma))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(format!("{}∘{}", self.name, other.name), images)
    }

    /// Length-`n` prefix of the fixed point `f^∞(a)`.
    pub fn dol_prefix(&self, a: u8, n: usize) -> Result<Word> {
        self.endo()?;
        if a >= self.source_sigma() {
            return Err(Error::LetterOutOfRange {
                letter: a,
                sigma: self.source_sigma(),
            });
        }
        let img = &self.images[a as usize];
        if img[0] != a || img.len() < 2 {
            return Err(Error::NotProlongable(a));
        }
        let mut out = img.clone();
        let mut i = 1;
        while out.len() < n {
            let b = out[i];
            out.extend_from_slice(&self.images[b as usize]);
            i += 1;
        }
        out.truncate(n);
        Word::new(out, self.source_sigma())
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, img) in self.images.iter().enumerate() {
            let s: String = img.iter().map(|&b| char::from(b'0' + b)).collect();
            writeln!(f, "{a} -> {s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({}: ", self.name)?;
        for (a, img) in self.images.iter().enumerate() {
            let s: String = img.iter().map(|&b| char::from(b'0' + b)).collect();
            write!(f, "{a}->{s} ")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Morphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let images: Vec<String> = self
            .images
            .iter()
            .map(|img| img.iter().map(|&b| char::from(b'0' + b)).collect())
            .collect();
        let mut st = s.serialize_struct("Morphism", 2)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("images", &images)?;
        st.end()
    }
}

/// A binary morphism is cube-free iff its image of this word is cube-free.
pub const CUBE_FREE_TEST_WORD: &str = "001101011011001001010011";

/// SHA-256 of [`CUBE_FREE_TEST_WORD`].
pub const CUBE_FREE_TEST_WORD_SHA256: &str =
    "e8ae0175f5e31e434c522b1602dbf87ab78ecf3e3eec14ba9424b70d004a466f";

/// Hex SHA-256 of an ASCII word.
pub fn word_checksum(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

fn test_word() -> Result<Vec<u8>> {
    if word_checksum(CUBE_FREE_TEST_WORD) != CUBE_FREE_TEST_WORD_SHA256 {
        return Err(Error::Precondition(
            "the cube-freeness test word does not match its checksum".into(),
        ));
    }
    Ok(CUBE_FREE_TEST_WORD.bytes().map(|b| b - b'0').collect())
}

/// Decides cube-freeness of a binary endomorphism through its test-word image.
pub fn is_cube_free_morphism(f: &Morphism) -> Result<bool> {
    if f.source_sigma() != 2 || f.target_sigma() != 2 {
        return Err(Error::Morphism(format!(
            "{} is not a binary morphism",
            f.name()
        )));
    }
    let img = f.apply_letters(&test_word()?);
    Ok(word::is_cube_free(&img))
}

/// All words of length `len` over `{0, .., sigma-1}` accepted by `keep`,
/// in lexicographic order.
pub(crate) fn words_of_length(sigma: u8, len: usize, keep: impl Fn(&[u8]) -> bool) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(
        sigma: u8,
        len: usize,
        cur: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
        keep: &dyn Fn(&[u8]) -> bool,
    ) {
        if cur.len() == len {
            if keep(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..sigma {
            cur.push(a);
            rec(sigma, len, cur, out, keep);
            cur.pop();
        }
    }
    rec(sigma, len, &mut cur, &mut out, &keep);
    out
}

/// A length-`k` factor found at two positions that differ modulo the
/// uniform length, inside the image of `source`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyncWitness {
    pub factor: Word,
    pub source: Word,
    /// 0-based positions of the two occurrences in the image of `source`.
    pub positions: (usize, usize),
}

/// Synchronization over the images of the source words accepted by `keep`.
pub(crate) fn sync_counterexample_over(
    f: &Morphism,
    k: usize,
    keep: impl Fn(&[u8]) -> bool,
) -> Result<Option<SyncWitness>> {
    let n = f.uniform_len().ok_or(Error::NotUniform)?;
    if k == 0 {
        return Ok(None);
    }
    let len = k.div_ceil(n) + 2;
    let mut seen: HashMap<Vec<u8>, (Vec<u8>, usize)> = HashMap::new();
    for w in words_of_length(f.source_sigma(), len, keep) {
        let img = f.apply_letters(&w);
        for start in 0..img.len().saturating_sub(k - 1) {
            let factor = &img[start..start + k];
            match seen.get(factor) {
                Some((w0, p0)) if p0 % n != start % n => {
                    // both occurrences live in the image of w0 followed by w
                    let mut source = w0.clone();
                    source.extend_from_slice(&w);
                    return Ok(Some(SyncWitness {
                        factor: Word::new(factor.to_vec(), f.target_sigma())?,
                        source: Word::new(source, f.source_sigma())?,
                        positions: (*p0, w0.len() * n + start),
                    }));
                }
                Some(_) => {}
                None => {
                    seen.insert(factor.to_vec(), (w.clone(), start));
                }
            }
        }
    }
    Ok(None)
}

/// A factor of length `k` occurring at two residues modulo the uniform
/// length in one image, if any.
pub fn sync_counterexample(f: &Morphism, k: usize) -> Result<Option<SyncWitness>> {
    sync_counterexample_over(f, k, |_| true)
}

/// Whether every length-`k` factor of every image `f(w)` occurs only at
/// positions congruent modulo the uniform length of `f`.
pub fn is_k_synchronizing(f: &Morphism, k: usize) -> Result<bool> {
    Ok(sync_counterexample(f, k)?.is_none())
}

/// Smallest `k` for which `f` is `k`-synchronizing, searched up to `limit`.
pub fn min_synchronizing(f: &Morphism, limit: usize) -> Result<Option<usize>> {
    for k in 1..=limit {
        if is_k_synchronizing(f, k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// One clause of the structural report on the fixed point of `μ`.
#[derive(Debug, Clone, Serialize)]
pub struct ClauseOutcome {
    pub clause: u8,
    pub passed: bool,
    /// Number of individual facts checked.
    pub checked: usize,
    /// Highest scale `k` (block length `3^k`) examined.
    pub max_scale: u32,
    pub violation: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MuReport {
    pub prefix_len: usize,
    pub clauses: Vec<ClauseOutcome>,
    /// Distinct half-lengths of squares found in the prefix.
    pub square_root_lengths: BTreeSet<usize>,
}

impl MuReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }
}

fn pow3(k: u32) -> usize {
    3usize.pow(k)
}

/// Checks the five structural properties of `m = μ^∞(0)` on its prefix of
/// length `n`.
pub fn verify_mu_properties(n: usize) -> Result<MuReport> {
    if n < 27 {
        return Err(Error::Precondition(format!("prefix length {n} < 27")));
    }
    let mu = crate::catalog::mu();
    let m = mu.dol_prefix(0, n)?.into_letters();
    let mut clauses = Vec::new();

    // (1) m[3k+1] = 0 and m[3k+2] = 1
    let mut c = ClauseOutcome {
        clause: 1,
        passed: true,
        checked: 0,
        max_scale: 1,
        violation: None,
    };
    for i in (0..n).step_by(3) {
        for (off, want) in [(0, 0u8), (1, 1u8)] {
            if i + off < n {
                c.checked += 1;
                if m[i + off] != want && c.passed {
                    c.passed = false;
                    c.violation = Some(format!("m[{}] = {}", i + off + 1, m[i + off]));
                }
            }
        }
    }
    clauses.push(c);

    // (2) μ^k(0) and μ^k(1) differ exactly in their last letter, which is the seed
    let mut c = ClauseOutcome {
        clause: 2,
        passed: true,
        checked: 0,
        max_scale: 0,
        violation: None,
    };
    let mut k = 0;
    while pow3(k) <= n {
        let b0 = mu.iterate(0, k as usize).into_letters();
        let b1 = mu.iterate(1, k as usize).into_letters();
        let l = b0.len();
        c.checked += 1;
        c.max_scale = k;
        let ok = b0[l - 1] == 0 && b1[l - 1] == 1 && b0[..l - 1] == b1[..l - 1];
        if !ok && c.passed {
            c.passed = false;
            c.violation = Some(format!("blocks at scale {k} disagree"));
        }
        k += 1;
    }
    clauses.push(c);

    // (3) occurrences of length-3^k factors agree modulo 3^k
    let mut c = ClauseOutcome {
        clause: 3,
        passed: true,
        checked: 0,
        max_scale: 0,
        violation: None,
    };
    let mut k = 0;
    while pow3(k) <= n / 4 {
        let l = pow3(k);
        let mut first: HashMap<&[u8], usize> = HashMap::new();
        for s in 0..=n - l {
            let f = &m[s..s + l];
            c.checked += 1;
            match first.get(f) {
                Some(&r) if r != s % l => {
                    if c.passed {
                        c.passed = false;
                        c.violation = Some(format!(
                            "factor of length {l} at positions with residues {r} and {}",
                            s % l
                        ));
                    }
                }
                Some(_) => {}
                None => {
                    first.insert(f, s % l);
                }
            }
        }
        c.max_scale = k;
        k += 1;
    }
    clauses.push(c);

    // squares of the prefix, as (start, half-length)
    let mut squares = Vec::new();
    word::for_each_run(&m, n / 2, |p, start, len| {
        if len >= p {
            for s in start..=start + len - p {
                squares.push((s, p));
            }
        }
    });
    let roots: BTreeSet<usize> = squares.iter().map(|&(_, p)| p).collect();

    // (4) half-lengths lie in {3^k, 2·3^k}
    let mut c = ClauseOutcome {
        clause: 4,
        passed: true,
        checked: roots.len(),
        max_scale: 0,
        violation: None,
    };
    for &p in &roots {
        let mut k = 0;
        while pow3(k + 1) <= p {
            k += 1;
        }
        c.max_scale = c.max_scale.max(k);
        if p != pow3(k) && p != 2 * pow3(k) && c.passed {
            c.passed = false;
            c.violation = Some(format!("square with half-length {p}"));
        }
    }
    clauses.push(c);

    // (5) a square whose length is a multiple of 3^k stays a square when
    // shifted back to the preceding block boundary
    let mut c = ClauseOutcome {
        clause: 5,
        passed: true,
        checked: 0,
        max_scale: 0,
        violation: None,
    };
    for &(s, p) in &squares {
        let mut k = 0;
        while p % pow3(k) == 0 {
            let l = pow3(k);
            let shifted = s - s % l;
            c.checked += 1;
            c.max_scale = c.max_scale.max(k);
            let ok = m[shifted..shifted + p] == m[shifted + p..shifted + 2 * p];
            if !ok && c.passed {
                c.passed = false;
                c.violation = Some(format!(
                    "square at {} of half-length {p} does not shift to {}",
                    s + 1,
                    shifted + 1
                ));
            }
            k += 1;
        }
    }
    clauses.push(c);

    Ok(MuReport {
        prefix_len: n,
        clauses,
        square_root_lengths: roots,
    })
}
