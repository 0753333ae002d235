//! Named morphisms used by the constructions and certificates.

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::pattern::BinaryPattern;

/// Version tag of the builtin catalog, recorded in run manifests.
pub const CATALOG_VERSION: &str = "patlab-catalog-1";

fn build(name: &str, images: &[&str]) -> Morphism {
    Morphism::from_strs(name, images).expect("catalog images are valid")
}

/// Thue-Morse morphism.
pub fn theta() -> Morphism {
    build("theta", &["01", "10"])
}

pub fn mu() -> Morphism {
    build("mu", &["010", "011"])
}

pub fn mu_prime() -> Morphism {
    build("mu'", &["001", "011"])
}

pub fn h1() -> Morphism {
    build("h1", &["0110010", "1001101"])
}

pub fn h2() -> Morphism {
    build("h2", &["01001", "10110"])
}

pub fn h3() -> Morphism {
    build("h3", &["010011", "011001"])
}

const G: [(&str, [&str; 3]); 4] = [
    ("g1", ["01011001100101", "00110110010011", "00101001101011"]),
    ("g2", ["0100110011011", "0100101101001", "0011011001001"]),
    ("g3", ["0010110110011", "0010110011011", "0010011010011"]),
    ("g4", ["0101100110", "0101001011", "0100110010"]),
];

/// Ternary-to-binary morphism `g_i`, `i` in 1..=4.
pub fn g(i: usize) -> Morphism {
    let (name, images) = G[i - 1];
    build(name, &images)
}

/// Pattern avoided together with cubes by `g_i` images of square-free words,
/// and the square bound `t`.
pub fn g_target(i: usize) -> (BinaryPattern, usize) {
    let (p, t) = [("xxyxyy", 8), ("xxyyxyx", 9), ("xyxxyxy", 10), ("xyxxyyxy", 8)][i - 1];
    (p.parse().unwrap(), t)
}

/// Ternary-to-binary morphisms whose images of square-free words avoid
/// cubes, the keyed pattern and `S_t` with `t` minimal.
const TP: [(&str, usize, [&str; 3]); 7] = [
    (
        "xxyyxx",
        4,
        [
            "00100101101100101001101101001001101011001010011011001001101011",
            "00100101101100101001101100100110101100101001101101001001101011",
            "00100101101100101001101011001001101100101001101101001001101011",
        ],
    ),
    (
        "xxyxyy",
        5,
        [
            "0010011010110010100110011010110011001010011010110010011011001010011001101011001010011011",
            "0010011010110010100110011010110010011011001010011010110011001010011001101011001010011011",
            "0010011010110010100110011010110010011011001010011001101011001010011010110011001010011011",
        ],
    ),
    (
        "xyxxyxy",
        5,
        [
            "0011001011011001101001001100110101100101001101011",
            "0011001011011001101001001100101101100101001101011",
            "0011001011011001001101011001010011011001001101011",
        ],
    ),
    (
        "xxyyxyx",
        5,
        [
            "00100110110100100110011011010011",
            "00100101101001001101101001011011",
            "00100101100110110100100110011011",
        ],
    ),
    (
        "xyxxyyxy",
        5,
        [
            "0010010110100110011010110011",
            "0010010110100110010110110011",
            "0010010110011011010010110011",
        ],
    ),
    (
        "xxyxyx",
        7,
        [
            "00100110011010011001011001101001011011001101",
            "00100110010110110011001011001101001100101101",
            "00100110010110011010010110110011001011001101",
        ],
    ),
    (
        "xxyxxy",
        7,
        [
            "001010011001011001101001100101101001101011001101001100101001101011",
            "001010011001011001101001100101001101011001101001100101101001101011",
            "001010011001011001101001011001010011010110011010011001011001101011",
        ],
    ),
];

/// Patterns with a minimal square-bound morphism, with their bound `t(P)`.
pub fn tp_patterns() -> Vec<(BinaryPattern, usize)> {
    TP.iter().map(|(p, t, _)| (p.parse().unwrap(), *t)).collect()
}

/// The minimal square-bound morphism for `p` (any renaming or reversal).
pub fn tp(p: &BinaryPattern) -> Result<(Morphism, usize)> {
    let key = p.canonical()?;
    for (name, t, images) in TP {
        let q: BinaryPattern = name.parse().unwrap();
        if q.canonical()? == key {
            return Ok((build(&format!("tp:{name}"), &images), t));
        }
    }
    Err(Error::UnknownMorphism(format!("tp:{p}")))
}

/// All catalog names accepted by [`by_name`].
pub fn names() -> Vec<String> {
    let mut v: Vec<String> = ["theta", "mu", "mu'", "h1", "h2", "h3", "g1", "g2", "g3", "g4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    v.extend(TP.iter().map(|(p, _, _)| format!("tp:{p}")));
    v
}

/// Looks up a morphism by catalog name.
pub fn by_name(name: &str) -> Result<Morphism> {
    let lower = name.trim().to_ascii_lowercase();
    Ok(match lower.as_str() {
        "theta" | "tm" => theta(),
        "mu" => mu(),
        "mu'" | "muprime" | "mu-prime" => mu_prime(),
        "h1" => h1(),
        "h2" => h2(),
        "h3" => h3(),
        "g1" => g(1),
        "g2" => g(2),
        "g3" => g(3),
        "g4" => g(4),
        _ => {
            if let Some(p) = lower.strip_prefix("tp:") {
                let p: BinaryPattern = p
                    .parse()
                    .map_err(|_| Error::UnknownMorphism(name.to_string()))?;
                return tp(&p).map(|(m, _)| m);
            }
            return Err(Error::UnknownMorphism(name.to_string()));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_lengths() {
        let lens: Vec<usize> = TP
            .iter()
            .map(|(p, _, _)| by_name(&format!("tp:{p}")).unwrap().uniform_len().unwrap())
            .collect();
        assert_eq!(lens, vec![62, 88, 49, 32, 28, 44, 66]);
        let glens: Vec<usize> = (1..=4).map(|i| g(i).uniform_len().unwrap()).collect();
        assert_eq!(glens, vec![14, 13, 13, 10]);
        assert_eq!(h1().uniform_len(), Some(7));
    }

    #[test]
    fn lookup() {
        for n in names() {
            assert_eq!(by_name(&n).unwrap().name(), n);
        }
        assert!(by_name("nope").is_err());
        assert!(by_name("tp:xyxyx").is_err());
        assert_eq!(by_name("tp:xyxyxx").unwrap().name(), "tp:xxyxyx");
    }
}
