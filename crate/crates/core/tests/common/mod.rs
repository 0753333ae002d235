//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

/// All binary words of length `n`, in lexicographic order.
pub fn binary_words(n: usize) -> Vec<Vec<u8>> {
    (0u64..1 << n)
        .map(|bits| (0..n).rev().map(|i| ((bits >> i) & 1) as u8).collect())
        .collect()
}

pub fn letters(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

pub fn text(w: &[u8]) -> String {
    w.iter().map(|&b| char::from(b'0' + b)).collect()
}

/// Whether `f` equals the image of the pattern `p` (letters `x`/`y`) under a
/// non-erasing assignment, by trying every split of `f` into `|p|` pieces.
pub fn is_image(f: &[u8], p: &str) -> bool {
    fn go(f: &[u8], p: &[u8], x: Option<&[u8]>, y: Option<&[u8]>) -> bool {
        let Some((&v, rest)) = p.split_first() else {
            return f.is_empty();
        };
        let bound = if v == b'x' { x } else { y };
        if let Some(img) = bound {
            return f.starts_with(img) && go(&f[img.len()..], rest, x, y);
        }
        (1..=f.len()).any(|l| {
            let img = &f[..l];
            if v == b'x' {
                go(&f[l..], rest, Some(img), y)
            } else {
                go(&f[l..], rest, x, Some(img))
            }
        })
    }
    go(f, p.as_bytes(), None, None)
}

/// Whether some factor of `w` is an image of `p`.
pub fn brute_meets(w: &[u8], p: &str) -> bool {
    (0..w.len()).any(|i| (i + p.len()..=w.len()).any(|j| is_image(&w[i..j], p)))
}

pub fn brute_avoids(w: &[u8], ps: &[&str]) -> bool {
    ps.iter().all(|p| !brute_meets(w, p))
}

/// Minimal period of `w` by direct comparison.
pub fn naive_period(w: &[u8]) -> usize {
    (1..=w.len())
        .find(|&p| (p..w.len()).all(|i| w[i] == w[i - p]))
        .unwrap_or(w.len())
}

/// Largest exponent over all factors, as a reduced `(num, den)`.
pub fn naive_max_exponent(w: &[u8]) -> (usize, usize) {
    let mut best = (0usize, 1usize);
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            let (n, d) = (j - i, naive_period(&w[i..j]));
            if n * best.1 > best.0 * d {
                best = (n, d);
            }
        }
    }
    let g = gcd(best.0, best.1);
    (best.0 / g, best.1 / g)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest period of a square factor of `w` (0 if none).
pub fn naive_square_period(w: &[u8]) -> usize {
    (1..=w.len() / 2)
        .rev()
        .find(|&p| (0..=w.len() - 2 * p).any(|i| w[i..i + p] == w[i + p..i + 2 * p]))
        .unwrap_or(0)
}

/// Minimal forbidden words of length at most `cutoff` for the binary
/// language avoiding `ps`, by classifying every binary word. A word avoids
/// the patterns iff both maximal proper factors do and the whole word is
/// not an image.
pub fn brute_minimal_forbidden(ps: &[&str], cutoff: usize) -> Vec<Vec<u8>> {
    let value = |w: &[u8]| w.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
    let mut avoid: Vec<Vec<bool>> = vec![vec![true]];
    let mut out = Vec::new();
    for n in 1..=cutoff {
        let mut row = vec![false; 1 << n];
        for (i, w) in binary_words(n).into_iter().enumerate() {
            let inner = avoid[n - 1][value(&w[1..])] && avoid[n - 1][value(&w[..n - 1])];
            let whole = ps.iter().any(|p| is_image(&w, p));
            row[i] = inner && !whole;
            if inner && whole {
                out.push(w);
            }
        }
        avoid.push(row);
    }
    out
}

/// Number of words of each length `0..=nmax` containing no word of `m`.
pub fn count_avoiding_factors(m: &[Vec<u8>], nmax: usize) -> Vec<u64> {
    let set: HashSet<&[u8]> = m.iter().map(Vec::as_slice).collect();
    let longest = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut counts = vec![0u64; nmax + 1];
    fn go(w: &mut Vec<u8>, set: &HashSet<&[u8]>, longest: usize, nmax: usize, counts: &mut [u64]) {
        counts[w.len()] += 1;
        if w.len() == nmax {
            return;
        }
        for a in 0..2 {
            w.push(a);
            let n = w.len();
            let ok = (n.saturating_sub(longest)..n).all(|i| !set.contains(&w[i..]));
            if ok {
                go(w, set, longest, nmax, counts);
            }
            w.pop();
        }
    }
    go(&mut Vec::new(), &set, longest, nmax, &mut counts);
    counts
}

/// Thue-Morse prefix by the parity of the binary digit sum.
pub fn thue_morse(n: usize) -> Vec<u8> {
    (0..n).map(|i| (i.count_ones() % 2) as u8).collect()
}

/// The seven patterns whose avoiding languages grow exponentially, with
/// their reference upper bounds.
pub const GROWTH_TABLE: [(&str, f64); 7] = [
    ("xxyxxy", 1.098891),
    ("xxyxyy", 1.226850),
    ("xyxyxx", 1.138449),
    ("xxyyxx", 1.322304),
    ("xxyyxyx", 1.310975),
    ("xyxxyxy", 1.281612),
    ("xyxxyyxy", 1.348932),
];

/// Longest cube-free words avoiding each unavoidable pattern of length 6
/// and 7.
pub const LONGEST_AVOIDERS: [(&str, &str); 5] = [
    ("xxyyxy", "010100101101001011010010011001100"),
    ("xyxxyx", "00110101100101001101011001001101100101001101011001010011"),
    ("xyxyyx", "001100100110110010011011001001011"),
    ("xyyxxy", "0011011010010100101101100"),
    ("xyxxyyx", "0011001100100101101001011010010100101101100"),
];

/// Patterns such that `{xxx, P}` is avoidable iff `P` contains one of them.
pub const AVOIDABLE_CORE: [&str; 7] = ["xyxyx", "xxyxxy", "xxyxyy", "xxyyxx", "xxyyxyx", "xyxxyxy", "xyxxyyxy"];
