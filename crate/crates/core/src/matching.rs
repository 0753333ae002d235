//! Pattern-image search.
//!
//! Every binary pattern of length at least 4 contains a square factor `QQ`,
//! so every image contains a square of the word at a position fixed by the
//! image lengths. The search enumerates the squares of the word (few, for the
//! repetition-poor words this crate works with) and derives candidate image
//! lengths from them, falling back to plain enumeration for short patterns.

use crate::hash::PrefixHash;
use crate::pattern::BinaryPattern;
use crate::word::for_each_run;

/// Square occurrences of a word, indexed by start and by (exclusive) end.
pub(crate) struct SquareIndex {
    pub by_start: Vec<Vec<u32>>,
    pub by_end: Vec<Vec<u32>>,
}

impl SquareIndex {
    pub fn new(w: &[u8]) -> Self {
        let n = w.len();
        let mut by_start = vec![Vec::new(); n + 1];
        let mut by_end = vec![Vec::new(); n + 1];
        for_each_run(w, n / 2, |p, start, len| {
            if len >= p {
                for s in start..=start + len - p {
                    by_start[s].push(p as u32);
                    by_end[s + 2 * p].push(p as u32);
                }
            }
        });
        SquareIndex { by_start, by_end }
    }
}

/// Whether `symbols` occurs at `start` with the given image lengths,
/// comparing factors by hash.
#[inline]
pub(crate) fn check_hashed(
    h: &PrefixHash,
    symbols: &[u8],
    start: usize,
    lx: usize,
    ly: usize,
) -> bool {
    let mut first = [usize::MAX; 2];
    let mut pos = start;
    for &s in symbols {
        let l = if s == 0 { lx } else { ly };
        let f = &mut first[s as usize];
        if *f == usize::MAX {
            *f = pos;
        } else if !h.eq(*f, pos, l) {
            return false;
        }
        pos += l;
    }
    true
}

/// Letter-by-letter confirmation of a hashed match.
pub(crate) fn check_exact(w: &[u8], symbols: &[u8], start: usize, lx: usize, ly: usize) -> bool {
    let mut first = [usize::MAX; 2];
    let mut pos = start;
    for &s in symbols {
        let l = if s == 0 { lx } else { ly };
        if l == 0 || pos + l > w.len() {
            return false;
        }
        let f = &mut first[s as usize];
        if *f == usize::MAX {
            *f = pos;
        } else if w[*f..*f + l] != w[pos..pos + l] {
            return false;
        }
        pos += l;
    }
    true
}

fn counts(symbols: &[u8]) -> (usize, usize) {
    let y = symbols.iter().filter(|&&s| s == 1).count();
    (symbols.len() - y, y)
}

/// How image lengths are recovered for a pattern.
#[derive(Debug, Clone)]
enum Plan {
    /// Single-variable pattern `x`.
    Letter,
    /// Square factor at `i` with half-length `q` using both variables.
    Mixed { i: usize, q: usize },
    /// Square factor of one variable `a` at `ia`, plus a square factor of the
    /// other variable whose position is fixed once `|a|` is known.
    Pair {
        a: u8,
        ia: usize,
        qa: usize,
        qb: usize,
        link: Link,
    },
    /// Single-variable square; the other variable (if any) is scanned.
    Scan { a: u8, ia: usize, qa: usize },
    Brute,
}

#[derive(Debug, Clone, Copy)]
enum Link {
    /// b-square image starts `k * |a|` after the a-square image starts.
    Start(usize),
    /// b-square image ends `k * |a|` before the a-square image starts.
    End(usize),
}

fn plan_for(p: &BinaryPattern) -> Plan {
    let sym = p.symbols();
    if sym.len() == 1 {
        return Plan::Letter;
    }
    let squares = p.square_factors();
    let uses_both = |i: usize, q: usize| {
        let (cx, cy) = counts(&sym[i..i + q]);
        cx > 0 && cy > 0
    };
    if let Some(&(i, q)) = squares.iter().find(|&&(i, q)| uses_both(i, q)) {
        return Plan::Mixed { i, q };
    }
    let single: Vec<(usize, usize, u8)> = squares
        .iter()
        .map(|&(i, q)| (i, q, sym[i]))
        .collect();
    if p.vars() == 2 {
        for &(ia, qa, a) in &single {
            for &(ib, qb, b) in &single {
                if a == b {
                    continue;
                }
                if ia < ib && sym[ia..ib].iter().all(|&s| s == a) {
                    return Plan::Pair {
                        a,
                        ia,
                        qa,
                        qb,
                        link: Link::Start(ib - ia),
                    };
                }
                if ib + 2 * qb <= ia && sym[ib + 2 * qb..ia].iter().all(|&s| s == a) {
                    return Plan::Pair {
                        a,
                        ia,
                        qa,
                        qb,
                        link: Link::End(ia - (ib + 2 * qb)),
                    };
                }
            }
        }
    }
    if let Some(&(ia, qa, a)) = single.first() {
        return Plan::Scan { a, ia, qa };
    }
    Plan::Brute
}

/// Image length of `symbols` under the given variable lengths.
#[inline]
fn img(symbols: &[u8], lx: usize, ly: usize) -> usize {
    let (cx, cy) = counts(symbols);
    cx * lx + cy * ly
}

/// Smallest `(start, total, lx)` occurrence of an image of `p` in `w`,
/// returned as `(start, lx, ly)` with `ly = 0` for one-variable patterns.
pub(crate) fn find_image(w: &[u8], p: &BinaryPattern) -> Option<(usize, usize, usize)> {
    let n = w.len();
    let sym = p.symbols();
    let (cx, cy) = counts(sym);
    if n < sym.len() {
        return None;
    }
    let plan = plan_for(p);
    if let Plan::Letter = plan {
        return Some((0, 1, 0));
    }
    let h = PrefixHash::of(w);
    let mut best: Option<(usize, usize, usize, usize)> = None;
    let mut consider = |start: usize, lx: usize, ly: usize| {
        if lx == 0 || (cy > 0 && ly == 0) {
            return;
        }
        let total = cx * lx + cy * ly;
        if start + total > n {
            return;
        }
        let key = (start, total, lx, ly);
        if best.is_some_and(|b| (b.0, b.1, b.2) <= (key.0, key.1, key.2)) {
            return;
        }
        if check_hashed(&h, sym, start, lx, ly) && check_exact(w, sym, start, lx, ly) {
            best = Some(key);
        }
    };
    match plan {
        Plan::Letter => unreachable!(),
        Plan::Brute => {
            for start in 0..n {
                for lx in 1..=n {
                    if start + cx * lx > n {
                        break;
                    }
                    if cy == 0 {
                        consider(start, lx, 0);
                        continue;
                    }
                    for ly in 1..=n {
                        if start + cx * lx + cy * ly > n {
                            break;
                        }
                        consider(start, lx, ly);
                    }
                }
            }
        }
        Plan::Mixed { i, q } => {
            let (qx, qy) = counts(&sym[i..i + q]);
            let idx = SquareIndex::new(w);
            for (pos, pers) in idx.by_start.iter().enumerate() {
                for &per in pers {
                    let per = per as usize;
                    let mut lx = 1;
                    while qx * lx < per {
                        let rem = per - qx * lx;
                        if rem % qy == 0 {
                            let ly = rem / qy;
                            let off = img(&sym[..i], lx, ly);
                            if off <= pos {
                                consider(pos - off, lx, ly);
                            }
                        }
                        lx += 1;
                    }
                }
            }
        }
        Plan::Pair {
            a,
            ia,
            qa,
            qb,
            link,
        } => {
            let idx = SquareIndex::new(w);
            for (pos, pers) in idx.by_start.iter().enumerate() {
                for &per in pers {
                    let per = per as usize;
                    if per % qa != 0 {
                        continue;
                    }
                    let la = per / qa;
                    let partners: &[u32] = match link {
                        Link::Start(k) => idx.by_start.get(pos + k * la).map_or(&[], |v| v),
                        Link::End(k) => {
                            if pos < k * la {
                                &[]
                            } else {
                                &idx.by_end[pos - k * la]
                            }
                        }
                    };
                    for &perb in partners {
                        let perb = perb as usize;
                        if perb % qb != 0 {
                            continue;
                        }
                        let lb = perb / qb;
                        let (lx, ly) = if a == 0 { (la, lb) } else { (lb, la) };
                        let off = img(&sym[..ia], lx, ly);
                        if off <= pos {
                            consider(pos - off, lx, ly);
                        }
                    }
                }
            }
        }
        Plan::Scan { a, ia, qa } => {
            let idx = SquareIndex::new(w);
            for (pos, pers) in idx.by_start.iter().enumerate() {
                for &per in pers {
                    let per = per as usize;
                    if per % qa != 0 {
                        continue;
                    }
                    let la = per / qa;
                    if cy == 0 {
                        let off = ia * la;
                        if off <= pos {
                            consider(pos - off, la, 0);
                        }
                        continue;
                    }
                    for lb in 1..=n {
                        let (lx, ly) = if a == 0 { (la, lb) } else { (lb, la) };
                        if cx * lx + cy * ly > n {
                            break;
                        }
                        let off = img(&sym[..ia], lx, ly);
                        if off <= pos {
                            consider(pos - off, lx, ly);
                        }
                    }
                }
            }
        }
    }
    best.map(|(s, _, lx, ly)| (s, lx, ly))
}

/// Leftmost (then shortest) square `uu` with `|u| >= t`, as `(start, |u|)`.
pub(crate) fn find_large_square(w: &[u8], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for_each_run(w, w.len() / 2, |p, start, len| {
        if p >= t && len >= p {
            let key = (start, p);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
    });
    best
}

/// Suffix search: how an image ending at the current end of a growing word is
/// recovered from the squares ending at known positions.
#[derive(Debug, Clone)]
pub(crate) enum SuffixPlan {
    /// Pattern ends with `QQ`, `Q` using both variables.
    Mixed { qx: usize, qy: usize },
    /// Pattern ends with a square of variable `a`; a square factor `QQ`
    /// using the other variable ends `tail` copies of `a` before the end.
    /// `Q` has `qb_a` copies of `a` and `qb_b` of the other variable.
    Pair {
        a: u8,
        qa: usize,
        qb_a: usize,
        qb_b: usize,
        tail: usize,
    },
    /// Pattern ends with a square of variable `a`; the other is scanned.
    Scan { a: u8, qa: usize },
    Brute,
}

impl SuffixPlan {
    pub fn new(p: &BinaryPattern) -> Self {
        let sym = p.symbols();
        let n = sym.len();
        let suffix_squares: Vec<usize> = (1..=n / 2)
            .filter(|&q| sym[n - 2 * q..n - q] == sym[n - q..])
            .collect();
        for &q in &suffix_squares {
            let (qx, qy) = counts(&sym[n - q..]);
            if qx > 0 && qy > 0 {
                return SuffixPlan::Mixed { qx, qy };
            }
        }
        if let Some(&qa) = suffix_squares.first() {
            let a = sym[n - 1];
            if p.vars() == 2 {
                for (ib, qb) in p.square_factors() {
                    let end = ib + 2 * qb;
                    let qb_a = sym[ib..ib + qb].iter().filter(|&&s| s == a).count();
                    if qb_a < qb && sym[end..].iter().all(|&s| s == a) {
                        return SuffixPlan::Pair {
                            a,
                            qa,
                            qb_a,
                            qb_b: qb - qb_a,
                            tail: n - end,
                        };
                    }
                }
            }
            return SuffixPlan::Scan { a, qa };
        }
        SuffixPlan::Brute
    }

    /// Whether an image of `sym` ends exactly at `end` (exclusive), given
    /// the hash of the word and the square periods ending at each position.
    pub fn suffix_meets<'a>(
        &self,
        sym: &[u8],
        end: usize,
        h: &PrefixHash,
        squares_ending: impl Fn(usize) -> &'a [u32],
        w: &[u8],
    ) -> bool {
        let (cx, cy) = counts(sym);
        let try_lengths = |lx: usize, ly: usize| -> bool {
            if lx == 0 || (cy > 0 && ly == 0) {
                return false;
            }
            let total = cx * lx + cy * ly;
            total <= end
                && check_hashed(h, sym, end - total, lx, ly)
                && check_exact(w, sym, end - total, lx, ly)
        };
        match *self {
            SuffixPlan::Mixed { qx, qy } => {
                for &per in squares_ending(end) {
                    let per = per as usize;
                    let mut lx = 1;
                    while qx * lx < per {
                        let rem = per - qx * lx;
                        if rem % qy == 0 && try_lengths(lx, rem / qy) {
                            return true;
                        }
                        lx += 1;
                    }
                }
                false
            }
            SuffixPlan::Pair {
                a,
                qa,
                qb_a,
                qb_b,
                tail,
            } => {
                for &per in squares_ending(end) {
                    let per = per as usize;
                    if per % qa != 0 {
                        continue;
                    }
                    let la = per / qa;
                    if tail * la > end {
                        continue;
                    }
                    for &perb in squares_ending(end - tail * la) {
                        let perb = perb as usize;
                        if perb <= qb_a * la || (perb - qb_a * la) % qb_b != 0 {
                            continue;
                        }
                        let lb = (perb - qb_a * la) / qb_b;
                        let (lx, ly) = if a == 0 { (la, lb) } else { (lb, la) };
                        if try_lengths(lx, ly) {
                            return true;
                        }
                    }
                }
                false
            }
            SuffixPlan::Scan { a, qa } => {
                for &per in squares_ending(end) {
                    let per = per as usize;
                    if per % qa != 0 {
                        continue;
                    }
                    let la = per / qa;
                    if cy == 0 {
                        if try_lengths(la, 0) {
                            return true;
                        }
                        continue;
                    }
                    for lb in 1..=end {
                        let (lx, ly) = if a == 0 { (la, lb) } else { (lb, la) };
                        if cx * lx + cy * ly > end {
                            break;
                        }
                        if try_lengths(lx, ly) {
                            return true;
                        }
                    }
                }
                false
            }
            SuffixPlan::Brute => {
                if sym.len() == 1 {
                    return end >= 1;
                }
                for lx in 1..=end {
                    if cx * lx > end {
                        break;
                    }
                    if cy == 0 {
                        if try_lengths(lx, 0) {
                            return true;
                        }
                        continue;
                    }
                    for ly in 1..=end {
                        if cx * lx + cy * ly > end {
                            break;
                        }
                        if try_lengths(lx, ly) {
                            return true;
                        }
                    }
                }
                false
            }
        }
    }
}
