mod common;

use std::collections::BTreeSet;

use common::*;
use patlab::constructions::{
    generate_variants, images_avoid, insertion_sites, known_lower_bound, lower_bound_rate, InsertionScheme, SchemeKind,
};
use patlab::dolverify::{bounded_pattern_check, direct_prefix_check};
use patlab::growth::upper_bound_pipeline;
use patlab::pattern::parse_pattern_list;
use patlab::search::{classify, longest_avoider, with_cubes, Status};
use patlab::{catalog, BinaryPattern, Error, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bp(s: &str) -> BinaryPattern {
    s.parse().unwrap()
}

#[test]
fn thue_morse_factor_complexity_is_linear() {
    let t = thue_morse(1 << 13);
    let counts: Vec<usize> = (1..=64)
        .map(|n| t.windows(n).collect::<BTreeSet<_>>().len())
        .collect();
    assert!(counts.windows(2).all(|c| c[0] <= c[1]));
    for (i, &c) in counts.iter().enumerate() {
        let n = i + 1;
        assert!(c >= n && c <= 4 * n, "n = {n}: {c}");
    }
    assert_eq!(&counts[..8], &[2, 4, 6, 10, 12, 16, 20, 22]);
}

#[test]
fn thue_morse_squares_are_block_shaped() {
    let n = 1 << 14;
    let t = thue_morse(n);
    let block = |k: u32, a: u8| thue_morse(1 << k).iter().map(|b| b ^ a).collect::<Vec<u8>>();
    let mut seen = 0usize;
    for p in 1..=n / 2 {
        let mut run = 0usize;
        // run = number of consecutive i' >= i with t[i'] == t[i' + p]
        for i in (0..n - p).rev() {
            run = if t[i] == t[i + p] { run + 1 } else { 0 };
            if run < p {
                continue;
            }
            seen += 1;
            let v = &t[i..i + p];
            let k = p.trailing_zeros();
            let q = p >> k;
            let shape_ok = match q {
                1 => v == block(k, 0) || v == block(k, 1),
                3 => (0..2).any(|a| {
                    let b = block(k, a);
                    let c = block(k, 1 - a);
                    v == [b.as_slice(), &c, &b].concat()
                }),
                _ => false,
            };
            assert!(shape_ok, "square of period {p} at {}", i + 1);
            let end = i + 2 * p;
            assert!(end % (1 << k) == 0 && end % (1 << (k + 1)) != 0, "end {end} for period {p}");
        }
    }
    assert!(seen > 1000);
}

#[test]
fn equal_adjacent_blocks() {
    for e in 8..=13 {
        let n = 1usize << e;
        let t = thue_morse(n);
        for k in 0..=3u32 {
            let b = 1usize << k;
            let blocks: Vec<&[u8]> = t.chunks(b).collect();
            let pairs = blocks.windows(2).filter(|w| w[0] == w[1]).count() as f64;
            let expected = n as f64 / (3.0 * b as f64);
            assert!((pairs - expected).abs() <= 2.0, "n = {n}, k = {k}: {pairs} vs {expected}");
        }
    }
}

#[test]
fn fixed_point_prefix_checks() {
    let ps = |s: &str| parse_pattern_list(s).unwrap();
    assert!(direct_prefix_check(&catalog::mu_prime(), &ps("xxx,xxyyxx"), 729).unwrap());
    assert!(direct_prefix_check(&catalog::theta(), &ps("xxyxxy,xyxxyyxy"), 1 << 13).unwrap());
}

#[test]
fn longest_avoiders_round_trip() {
    for (p, w) in LONGEST_AVOIDERS {
        let ps = with_cubes(&bp(p));
        let word: Word = w.parse().unwrap();
        assert!(brute_avoids(word.letters(), &["xxx", p]), "{p}");
        assert!(patlab::avoids_set(&word, &ps));
        let r = longest_avoider(&ps, 200).unwrap();
        assert!(r.is_finite());
        assert_eq!(r.maxlen, w.len(), "{p}");
    }
    let (p, w) = LONGEST_AVOIDERS[1];
    for a in ["0", "1"] {
        let longer: Word = format!("{w}{a}").parse().unwrap();
        assert!(!patlab::avoids_set(&longer, &with_cubes(&bp(p))));
    }
}

fn in_core(p: &BinaryPattern) -> bool {
    AVOIDABLE_CORE.iter().any(|q| {
        let q = bp(q);
        p.contains_factor(&q) || p.contains_factor(&q.reversal())
    })
}

#[test]
fn classification_up_to_length_eight() {
    let c = classify(8).unwrap();
    for e in &c.entries {
        let avoidable = match &e.status {
            Status::Avoidable { .. } => true,
            Status::Unavoidable { .. } => false,
            Status::Undetermined { .. } => panic!("{} undetermined", e.pattern),
        };
        assert_eq!(avoidable, in_core(&e.pattern), "{}", e.pattern);
    }
    for len in 2..=8 {
        for p in BinaryPattern::all_of_length(len) {
            if p.contains_cube() {
                continue;
            }
            let direct = c.get(&p).expect("every cube-free pattern is classified");
            let neg = c.get(&p.negation()).unwrap();
            let rev = c.get(&p.reversal()).unwrap();
            assert_eq!(direct.pattern, neg.pattern);
            assert_eq!(direct.pattern, rev.pattern);
            assert_eq!(direct.status.is_avoidable(), in_core(&p), "{p}");
        }
    }
}

#[test]
fn certificate_factor_sets_grow_and_stabilize() {
    for (f, p, k) in [
        (catalog::h1(), "xxyxyy", 8),
        (catalog::h2(), "xxyyxyx", 6),
        (catalog::h3(), "xyxxyxy", 5),
    ] {
        let v = bounded_pattern_check(&f, &bp(p), k).unwrap();
        assert!(v.avoids());
        assert!(v.iterate <= 5);
        let mut prev: Option<BTreeSet<Word>> = None;
        for m in 1..=5 {
            let w = f.iterate(0, m);
            let cur = w.factors(v.bound);
            if let Some(prev) = &prev {
                assert!(prev.is_subset(&cur), "{} m = {m}", f.name());
            }
            prev = Some(cur);
        }
        assert!(direct_prefix_check(&f, &with_cubes(&bp(p)), 10_000).unwrap());
    }
    assert_eq!(
        bounded_pattern_check(&catalog::theta(), &bp("xyxyx"), 4),
        Err(Error::ReductionNotApplicable("xyxyx".into()))
    );
}

fn occurrences(w: &[u8], f: &str) -> Vec<usize> {
    let f = letters(f);
    w.windows(f.len())
        .enumerate()
        .filter(|(_, x)| *x == f.as_slice())
        .map(|(i, _)| i)
        .collect()
}

#[test]
fn indicators_mark_insertions() {
    let s = InsertionScheme::new(SchemeKind::Xyxyxx);
    let sites = insertion_sites(&s, 512).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for round in 0..64 {
        let chosen: Vec<usize> = if round == 0 {
            Vec::new()
        } else {
            sites.iter().map(|s| s.gap).filter(|_| rng.gen_bool(0.5)).collect()
        };
        let v = generate_variants(&s, 512, &chosen).unwrap().into_letters();
        let inserted: Vec<usize> = chosen.iter().enumerate().map(|(j, g)| g + j).collect();
        let mut marks: Vec<usize> = occurrences(&v, "11011")
            .into_iter()
            .chain(occurrences(&v, "00100"))
            .map(|i| i + 1)
            .collect();
        marks.sort_unstable();
        assert_eq!(marks, inserted, "selection {chosen:?}");
        let long: usize = ["00110011", "11001100"].iter().map(|f| occurrences(&v, f).len()).sum();
        assert!(long <= chosen.len());
    }
}

#[test]
fn mu_marker_absent_from_carrier() {
    let m = catalog::mu().dol_prefix(0, 2187).unwrap();
    assert!(occurrences(m.letters(), "0101").is_empty());
}

#[test]
fn mappings_hold_beyond_certified_radius() {
    for i in [1, 2, 4] {
        let (p, t) = catalog::g_target(i);
        assert!(images_avoid(&catalog::g(i), &p, t, 8).unwrap().passed, "g{i}");
    }
    for (p, _) in catalog::tp_patterns() {
        let (g, t) = catalog::tp(&p).unwrap();
        assert!(images_avoid(&g, &p, t, 8).unwrap().passed, "{p}");
    }
}

#[test]
fn growth_bounds_decrease_and_stay_above_lower_bounds() {
    for (p, _) in GROWTH_TABLE {
        let p = bp(p);
        let lower = lower_bound_rate::<f64>(known_lower_bound(&p).unwrap()).unwrap().hi;
        let mut prev = f64::INFINITY;
        for cutoff in [10, 12, 14, 16] {
            let r = upper_bound_pipeline(&p, cutoff, 1e-8).unwrap();
            assert!(r.upper <= prev + 1e-9, "{p} at {cutoff}");
            assert!(r.upper >= lower, "{p} at {cutoff}");
            prev = r.upper;
        }
    }
}
