mod common;

use common::*;
use patlab::growth::{build_automaton, minimal_forbidden, FactorAutomaton};
use patlab::pattern::parse_pattern_list;
use patlab::search::count_series;
use patlab::word::minimal_period;
use patlab::{meets, BinaryPattern, Pattern, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn short_patterns() -> Vec<BinaryPattern> {
    (2..=6).flat_map(BinaryPattern::all_of_length).collect()
}

#[test]
fn meets_agrees_with_factorization_oracle_on_all_short_words() {
    let ps = short_patterns();
    for n in 0..=11 {
        for w in binary_words(n) {
            let word = Word::binary(w.clone());
            for p in &ps {
                let fast = meets(&word, &Pattern::Word(p.clone()));
                assert_eq!(fast.is_some(), brute_meets(&w, &p.to_string()), "{} vs {p}", text(&w));
                if let Some(wit) = fast {
                    assert!(wit.verifies(&word, &Pattern::Word(p.clone())));
                }
            }
        }
    }
}

#[test]
fn meets_agrees_with_factorization_oracle_up_to_length_18() {
    let ps = short_patterns();
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..1500 {
        let n = rng.gen_range(12..=18);
        let w: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let word = Word::binary(w.clone());
        for p in &ps {
            let fast = meets(&word, &Pattern::Word(p.clone())).is_some();
            assert_eq!(fast, brute_meets(&w, &p.to_string()), "{} vs {p}", text(&w));
        }
    }
}

#[test]
fn large_square_matches_naive_square_period() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for _ in 0..400 {
        let n = rng.gen_range(0..=40);
        let w: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let word = Word::binary(w.clone());
        let q = naive_square_period(&w);
        assert_eq!(word.largest_square_period(), q);
        for t in 1..=10 {
            assert_eq!(meets(&word, &Pattern::LargeSquare(t)).is_some(), q >= t, "{} t={t}", text(&w));
        }
    }
}

#[test]
fn exponent_matches_naive_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for round in 0..60 {
        let n = if round < 50 { rng.gen_range(1..=60) } else { 200 };
        // bias towards repetitive words
        let period = rng.gen_range(1..=8);
        let base: Vec<u8> = (0..period).map(|_| rng.gen_range(0..2)).collect();
        let w: Vec<u8> = (0..n)
            .map(|i| if rng.gen_bool(0.1) { rng.gen_range(0..2) } else { base[i % period] })
            .collect();
        let r = Word::binary(w.clone()).max_exponent().unwrap();
        let (num, den) = naive_max_exponent(&w);
        assert_eq!((*r.max_exponent.numer(), *r.max_exponent.denom()), (num, den), "{}", text(&w));
        assert_eq!(minimal_period(&w), naive_period(&w));
    }
}

fn as_vecs(m: &patlab::growth::ForbiddenSet) -> Vec<Vec<u8>> {
    let mut v: Vec<Vec<u8>> = m.words.iter().map(|w| w.letters().to_vec()).collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    v
}

#[test]
fn minimal_forbidden_agrees_with_filter() {
    for (p, _) in GROWTH_TABLE {
        let bp: BinaryPattern = p.parse().unwrap();
        let brute = brute_minimal_forbidden(&["xxx", p], 12);
        for cutoff in [8, 10, 12] {
            let m = minimal_forbidden(&bp, cutoff).unwrap();
            let want: Vec<Vec<u8>> = brute.iter().filter(|w| w.len() <= cutoff).cloned().collect();
            assert_eq!(as_vecs(&m), want, "{p} at {cutoff}");
            assert!(m.is_antichain());
        }
    }
}

#[test]
fn automaton_counts_agree_with_enumeration() {
    for (p, _) in GROWTH_TABLE {
        let bp: BinaryPattern = p.parse().unwrap();
        for cutoff in [10, 12, 14] {
            let m = minimal_forbidden(&bp, cutoff).unwrap();
            let raw = FactorAutomaton::untrimmed(&m).unwrap();
            assert_eq!(raw.count_words(16), count_avoiding_factors(&as_vecs(&m), 16), "{p} at {cutoff}");
        }
    }
}

#[test]
fn automaton_counts_agree_with_count_series() {
    for (p, _) in GROWTH_TABLE {
        let bp: BinaryPattern = p.parse().unwrap();
        let m = minimal_forbidden(&bp, 14).unwrap();
        let raw = FactorAutomaton::untrimmed(&m).unwrap();
        let series = count_series(&parse_pattern_list(&format!("xxx,{p}")).unwrap(), 14).unwrap();
        assert_eq!(raw.count_words(14), series.counts, "{p}");
    }
}

#[test]
fn trimmed_automaton_accepts_only_extendable_prefixes() {
    let bp: BinaryPattern = "xxyyxx".parse().unwrap();
    let m = minimal_forbidden(&bp, 12).unwrap();
    let raw = FactorAutomaton::untrimmed(&m).unwrap();
    let trimmed = build_automaton(&m).unwrap();
    assert!(trimmed.states() <= raw.states());
    for w in binary_words(12) {
        if trimmed.accepts(&w) {
            assert!(raw.accepts(&w));
        }
    }
}
