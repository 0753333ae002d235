//! End-to-end acceptance run. Prints one line per criterion:
//!
//! ```text
//! cargo test --release --test acceptance -- --nocapture
//! ```

mod common;

use std::time::{Duration, Instant};

use common::*;
use patlab::constructions::{
    insertion_sites, lower_bound_rate, unavoidable_with_squares, verify_mapping, verify_scheme, InsertionScheme,
    RateKind, SchemeKind, VerifyMode, ALPHA_HI, ALPHA_LO,
};
use patlab::dolverify::{bounded_pattern_check, direct_prefix_check};
use patlab::growth::{minimal_forbidden, upper_bound_pipeline, FactorAutomaton};
use patlab::morphism::{is_cube_free_morphism, is_k_synchronizing, verify_mu_properties};
use patlab::pattern::parse_pattern_list;
use patlab::search::{
    classify, count_series, longest_avoider, overlap_extension_check, polynomial_probe, with_cubes, Mechanism, Status,
};
use patlab::{catalog, meets, BinaryPattern, Pattern, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, note: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(note.into());
        }
    }
}

fn bp(s: &str) -> BinaryPattern {
    s.parse().unwrap()
}

fn table_lengths() -> Outcome {
    let mut o = Outcome::new();
    for (p, w) in LONGEST_AVOIDERS {
        let r = longest_avoider(&with_cubes(&bp(p)), 200).unwrap();
        o.check(r.is_finite() && r.maxlen == w.len(), format!("{p}: maxlen {} vs {}", r.maxlen, w.len()));
        let word: Word = w.parse().unwrap();
        o.check(patlab::avoids_set(&word, &with_cubes(&bp(p))), format!("{p}: printed word meets the set"));
    }
    o
}

fn classification() -> Outcome {
    let mut o = Outcome::new();
    let c = classify(7).unwrap();
    for e in c.entries.iter().filter(|e| e.length <= 5) {
        let want = e.pattern.to_string() == "xyxyx";
        o.check(e.status.is_avoidable() == want, format!("{} at length {}", e.pattern, e.length));
    }
    let six: Vec<(String, bool)> = c
        .of_length(6)
        .map(|e| (e.pattern.to_string(), e.status.is_avoidable()))
        .collect();
    let expected: Vec<(String, bool)> = [
        ("xxyxxy", true),
        ("xxyxyx", true),
        ("xxyxyy", true),
        ("xxyyxx", true),
        ("xxyyxy", false),
        ("xyxxyx", false),
        ("xyxyyx", false),
        ("xyyxxy", false),
    ]
    .iter()
    .map(|(p, a)| (p.to_string(), *a))
    .collect();
    o.check(six == expected, format!("length-6 split {six:?}"));
    let bare: Vec<String> = c
        .of_length(7)
        .filter(|e| !matches!(e.status, Status::Avoidable { mechanism: Mechanism::ContainsAvoidable { .. }, .. }))
        .map(|e| e.pattern.to_string())
        .collect();
    o.check(bare == ["xxyyxyx", "xyxxyxy", "xyxxyyx"], format!("length-7 patterns without avoidable factors {bare:?}"));
    match &c.get(&bp("xyxxyyx")).unwrap().status {
        Status::Unavoidable { maxlen, .. } => o.check(*maxlen == 43, format!("xyxxyyx maxlen {maxlen}")),
        s => o.check(false, format!("xyxxyyx {s:?}")),
    }
    for p in ["xxyyxyx", "xyxxyxy"] {
        o.check(c.get(&bp(p)).unwrap().status.is_avoidable(), format!("{p} not avoidable"));
    }
    o
}

fn certificates() -> Outcome {
    let mut o = Outcome::new();
    for (f, p, k, bound, iterate) in [
        (catalog::h1(), "xxyxyy", 6, 30, 3),
        (catalog::h2(), "xxyyxyx", 6, 35, 4),
        (catalog::h3(), "xyxxyxy", 5, 28, 3),
    ] {
        o.check(is_cube_free_morphism(&f).unwrap(), format!("{} not cube-free", f.name()));
        o.check(
            is_k_synchronizing(&f, k).unwrap(),
            format!("{} is not {k}-synchronizing", f.name()),
        );
        match bounded_pattern_check(&f, &bp(p), k) {
            Ok(v) => {
                o.check(v.avoids(), format!("{} meets {p}", f.name()));
                o.check(v.bound == bound, format!("{} bound {}", f.name(), v.bound));
                o.check(v.iterate <= iterate, format!("{} stabilizes at {}", f.name(), v.iterate));
            }
            Err(e) => o.check(false, format!("{}: {e}", f.name())),
        }
    }
    o
}

fn mu_structure() -> Outcome {
    let mut o = Outcome::new();
    let r = verify_mu_properties(729).unwrap();
    for c in &r.clauses {
        o.check(c.passed, format!("clause {}: {:?}", c.clause, c.violation));
    }
    o.check(r.clauses.len() == 5, "five clauses");
    let ps = parse_pattern_list("xxx,xxyyxx").unwrap();
    for f in [catalog::mu(), catalog::mu_prime()] {
        o.check(direct_prefix_check(&f, &ps, 729).unwrap(), format!("{} prefix meets the set", f.name()));
    }
    o
}

fn insertions() -> Outcome {
    let mut o = Outcome::new();
    for (kind, n, per) in [
        (SchemeKind::Xyxyxx, 512, 24.0),
        (SchemeKind::Xxyxxy, 512, 24.0),
        (SchemeKind::Xxyyxx, 729, 18.0),
    ] {
        let s = InsertionScheme::new(kind);
        let sites = insertion_sites(&s, n).unwrap().len();
        let expected = n as f64 / per;
        o.check(
            (sites as f64 - expected).abs() <= 3.0,
            format!("{kind}: {sites} sites vs {expected:.1}"),
        );
        match verify_scheme(&s, n, VerifyMode::Exhaustive) {
            Ok(r) => {
                o.check(r.passed(), format!("{kind}: counterexample {:?}", r.counterexample.map(|c| c.selection)));
                o.check(r.distinct_variants == r.variants_checked, format!("{kind}: repeated variants"));
            }
            Err(e) => o.check(false, format!("{kind}: {e}")),
        }
    }
    o
}

fn mappings() -> Outcome {
    let mut o = Outcome::new();
    for (i, t) in [(1, 8), (2, 9), (3, 10), (4, 8)] {
        let (p, t0) = catalog::g_target(i);
        o.check(t0 == t, format!("g{i} target bound {t0}"));
        let c = verify_mapping(&catalog::g(i), &p, t).unwrap();
        let failure = [&c.checks.short_images_clean, &c.checks.synchronizing_2n, &c.checks.no_square_in_len5_images]
            .iter()
            .find_map(|k| k.failure.clone());
        o.check(c.passed(), format!("g{i} fails: {failure:?}"));
    }
    let bounds: Vec<usize> = catalog::tp_patterns().iter().map(|(_, t)| *t).collect();
    o.check(bounds == [4, 5, 5, 5, 5, 7, 7], format!("bounds {bounds:?}"));
    for (p, t) in catalog::tp_patterns() {
        let (g, _) = catalog::tp(&p).unwrap();
        let c = verify_mapping(&g, &p, t).unwrap();
        o.check(c.passed(), format!("{p} mapping fails"));
        let r = unavoidable_with_squares(&p, t - 1, 200).unwrap();
        o.check(r.is_finite(), format!("{p} with S_{} reaches the cutoff", t - 1));
    }
    o
}

fn lower_bounds() -> Outcome {
    let mut o = Outcome::new();
    o.check(ALPHA_LO < ALPHA_HI, "alpha interval");
    for (kind, want) in [
        (RateKind::PowerOfTwo(24), 1.0293),
        (RateKind::PowerOfTwo(18), 1.0392),
        (RateKind::AlphaRoot(14), 1.0190),
        (RateKind::AlphaRoot(13), 1.0205),
        (RateKind::AlphaRoot(10), 1.0267),
    ] {
        let r = lower_bound_rate::<f64>(kind).unwrap();
        let round = |x: f64| (x * 1e4).round() / 1e4;
        let trunc = |x: f64| (x * 1e4).trunc() / 1e4;
        let agrees = |x: f64| round(x) == want || trunc(x) == want;
        o.check(
            agrees(r.lo) && agrees(r.hi),
            format!("{kind:?}: [{}, {}]", r.lo, r.hi),
        );
    }
    o
}

fn growth_table() -> Outcome {
    let mut o = Outcome::new();
    for (p, reference) in GROWTH_TABLE {
        let bp = bp(p);
        let lower = lower_bound_rate::<f64>(patlab::constructions::known_lower_bound(&bp).unwrap())
            .unwrap()
            .hi;
        let mut prev = f64::INFINITY;
        for cutoff in [12, 14, 16, 18] {
            let r = upper_bound_pipeline(&bp, cutoff, 1e-6).unwrap();
            o.check(r.upper <= prev + 1e-9, format!("{p}: not monotone at {cutoff}"));
            o.check(r.upper > lower, format!("{p}: {} below lower bound {lower}", r.upper));
            prev = r.upper;
            if cutoff == 18 {
                o.check(
                    r.upper >= reference - 1e-6 && r.upper <= reference + 0.08,
                    format!("{p}: {} vs {reference}", r.upper),
                );
            }
        }
    }
    o
}

fn oracle_equivalences() -> Outcome {
    let mut o = Outcome::new();
    for (p, _) in GROWTH_TABLE {
        let bp = bp(p);
        let brute = brute_minimal_forbidden(&["xxx", p], 12);
        let m = minimal_forbidden(&bp, 12).unwrap();
        let mut got: Vec<Vec<u8>> = m.words.iter().map(|w| w.letters().to_vec()).collect();
        got.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        o.check(got == brute, format!("{p}: minimal forbidden words differ"));
        let m14 = minimal_forbidden(&bp, 14).unwrap();
        let counts = FactorAutomaton::untrimmed(&m14).unwrap().count_words(14);
        let series = count_series(&with_cubes(&bp), 14).unwrap();
        o.check(counts == series.counts, format!("{p}: automaton counts differ"));
    }
    let ps: Vec<BinaryPattern> = (2..=6).flat_map(BinaryPattern::all_of_length).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut words: Vec<Vec<u8>> = (0..=10).flat_map(binary_words).collect();
    words.extend((0..600).map(|_| {
        let n = rng.gen_range(11..=18);
        (0..n).map(|_| rng.gen_range(0..2)).collect()
    }));
    for w in &words {
        let word = Word::binary(w.clone());
        for p in &ps {
            let fast = meets(&word, &Pattern::Word(p.clone())).is_some();
            if fast != brute_meets(w, &p.to_string()) {
                o.check(false, format!("meets disagrees on {} / {p}", text(w)));
            }
        }
    }
    o
}

fn polynomial_language() -> Outcome {
    let mut o = Outcome::new();
    let r = polynomial_probe(32, 10).unwrap();
    o.check(r.forbidden_ok(), "forbidden factors");
    o.check(r.extendable_ok(), format!("non-Thue-Morse extendable words {:?}", r.non_thue_morse));
    o.check(
        r.envelope.holds,
        format!(
            "C({}) = {} vs {}^{}*C(0) = {:.2}",
            r.envelope.n, r.envelope.count, r.envelope.base, r.envelope.n, r.envelope.envelope
        ),
    );
    let ov = overlap_extension_check(24).unwrap();
    o.check(ov.passed(), format!("overlaps extending too far {:?}", ov.failures));
    o
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("longest avoiding words", Duration::from_secs(60), table_lengths),
        ("classification up to length 7", Duration::from_secs(300), classification),
        ("bounded certificates", Duration::from_secs(60), certificates),
        ("mu structure", Duration::from_secs(60), mu_structure),
        ("insertion constructions", Duration::from_secs(600), insertions),
        ("square-free mappings", Duration::from_secs(900), mappings),
        ("lower-bound arithmetic", Duration::from_secs(60), lower_bounds),
        ("growth upper bounds", Duration::from_secs(1800), growth_table),
        ("oracle equivalences", Duration::from_secs(600), oracle_equivalences),
        ("polynomial-growth probe", Duration::from_secs(600), polynomial_language),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        o.check(elapsed <= *budget, format!("took {elapsed:.1?}, budget {budget:?}"));
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {:>2} {verdict} {name} ({elapsed:.1?})", i + 1);
        if !o.notes.is_empty() {
            line.push_str(": ");
            line.push_str(&o.notes.join("; "));
        }
        println!("{line}");
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
