//! The `patlab` command line.
//!
//! [`dispatch`] parses an argument vector, runs one subcommand and writes a
//! single JSON (or CSV) document to `out`. Diagnostics go to `err`. Exit
//! codes: 0 when the check passes, 1 when a counterexample is found or the
//! check cannot be completed, 2 on usage errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::catalog::{self, CATALOG_VERSION};
use crate::constructions::{self, InsertionScheme, RateKind, SchemeKind, VerifyMode};
use crate::dolverify;
use crate::error::{Error, Result};
use crate::growth;
use crate::morphism::{self, Morphism};
use crate::pattern::{meets, parse_pattern_list, BinaryPattern, Pattern};
use crate::search;
use crate::word::Word;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the memory of enumerations, in bytes
/// (suffixes `K`, `M`, `G` accepted).
pub const MAX_MEM_VAR: &str = "PATLAB_MAX_MEM";

#[derive(Debug, Parser)]
#[command(name = "patlab", version, about = "Binary pattern avoidance workbench")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for shardable subcommands (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampling modes.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write a run manifest to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find an image of a pattern in a word.
    Meets {
        #[arg(long)]
        word: String,
        #[arg(long)]
        pattern: String,
    },
    /// Inspect catalog or user-supplied morphisms.
    #[command(subcommand)]
    Morphism(MorphismCmd),
    /// Bounded certificate that a fixed point avoids a pattern.
    Dolverify {
        #[command(flatten)]
        morphism: MorphismArg,
        #[arg(long)]
        pattern: String,
        /// Synchronization window.
        #[arg(long, alias = "sync")]
        k: usize,
    },
    /// Insertion constructions, square-free mappings and lower bounds.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Growth-rate upper bounds via forbidden factors.
    #[command(subcommand)]
    Growth(GrowthCmd),
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Re-run a manifest and compare digests.
    Replay {
        /// Manifest written by an earlier run.
        path: PathBuf,
    },
}

#[derive(Debug, Args)]
struct MorphismArg {
    /// Catalog name (theta, mu, mu', h1-h3, g1-g4, tp:<pattern>).
    #[arg(long, conflicts_with = "morphism_file", required_unless_present = "morphism_file")]
    morphism: Option<String>,
    /// File with lines `letter -> image`.
    #[arg(long)]
    morphism_file: Option<PathBuf>,
}

impl MorphismArg {
    fn load(&self) -> Result<Morphism> {
        match (&self.morphism, &self.morphism_file) {
            (Some(name), _) => catalog::by_name(name),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Morphism(format!("{}: {e}", path.display())))?;
                let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("file");
                Morphism::parse(name, &text)
            }
            (None, None) => Err(Error::Morphism("no morphism given".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
enum MorphismCmd {
    /// Images and a prefix of the fixed point.
    Show {
        #[command(flatten)]
        morphism: MorphismArg,
        /// Length of the fixed-point prefix to print.
        #[arg(long, default_value_t = 64)]
        prefix: usize,
    },
    /// Check k-synchronization.
    Sync {
        #[command(flatten)]
        morphism: MorphismArg,
        #[arg(long)]
        k: usize,
    },
    /// Check that a binary morphism is cube-free.
    Cubefree {
        #[command(flatten)]
        morphism: MorphismArg,
    },
    /// Structural properties of the mu fixed point.
    Mu {
        #[arg(long, default_value_t = 729)]
        prefix: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
    Windowed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RateArg {
    Pow2,
    Alpha,
}

#[derive(Debug, Subcommand)]
enum ConstructCmd {
    /// Insertion sites of a scheme.
    Sites {
        #[arg(long)]
        scheme: SchemeKind,
        #[arg(long)]
        prefix: usize,
    },
    /// Verify every (or a sample of) insertion variants.
    Verify {
        #[arg(long)]
        scheme: SchemeKind,
        #[arg(long)]
        prefix: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Variants drawn in sample mode.
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        /// Window width in windowed mode.
        #[arg(long, default_value_t = constructions::DEFAULT_WINDOW)]
        width: usize,
        /// Replacement insert word.
        #[arg(long)]
        insert: Option<String>,
    },
    /// Verify a ternary-to-binary square-free mapping.
    Mapping {
        #[command(flatten)]
        morphism: MorphismArg,
        /// Pattern (defaults to the catalog target of the morphism).
        #[arg(long)]
        pattern: Option<String>,
        /// Square bound (defaults to the catalog bound).
        #[arg(long)]
        t: Option<usize>,
    },
    /// Search for the longest word avoiding cubes, a pattern and S_t.
    Squares {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 200)]
        cutoff: usize,
    },
    /// Evaluate 2^(1/d) or alpha^(1/n).
    LowerBound {
        #[arg(long, value_enum)]
        kind: RateArg,
        #[arg(long)]
        root: u32,
    },
}

#[derive(Debug, Subcommand)]
enum GrowthCmd {
    /// Upper bound on the growth rate of {xxx, P}-avoiding words.
    Upper {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = growth::DEFAULT_CUTOFF)]
        cutoff: usize,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
    },
    /// Minimal forbidden words up to a length.
    Forbidden {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 12)]
        cutoff: usize,
    },
}

#[derive(Debug, Subcommand)]
enum SearchCmd {
    /// Longest binary word avoiding a pattern list.
    Longest {
        #[arg(long)]
        patterns: String,
        #[arg(long, default_value_t = 200)]
        cutoff: usize,
    },
    /// Classify binary patterns up to a length.
    Classify {
        #[arg(long, default_value_t = 7)]
        maxlen: usize,
    },
    /// Number of words of each length avoiding a pattern list.
    Count {
        #[arg(long)]
        patterns: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Probe of the language avoiding xxx, xyxyxx and xxyxyx.
    Polyprobe {
        #[arg(long, default_value_t = 32)]
        nmax: usize,
        #[arg(long, default_value_t = 10)]
        margin: usize,
    },
    /// Extension property of long overlaps.
    Overlaps {
        #[arg(long, default_value_t = 24)]
        nmax: usize,
    },
}

/// Record of one run, sufficient to reproduce its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Subcommand path, e.g. `growth upper`.
    pub command: String,
    /// Arguments after the program name, without `--manifest`.
    pub argv: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub catalog_version: String,
    /// Present when the run sampled.
    pub seed: Option<u64>,
    pub format: Format,
    pub wall_ms: u64,
    pub exit_code: i32,
    /// Hex SHA-256 of the bytes written to stdout.
    pub digest: String,
}

/// Hex SHA-256 of `bytes`.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses a byte count such as `512M`.
pub fn parse_mem(s: &str) -> Option<u64> {
    let s = s.trim();
    let (num, mult) = match s.chars().last()?.to_ascii_uppercase() {
        'K' => (&s[..s.len() - 1], 1u64 << 10),
        'M' => (&s[..s.len() - 1], 1 << 20),
        'G' => (&s[..s.len() - 1], 1 << 30),
        _ => (s, 1),
    };
    num.trim().parse::<u64>().ok()?.checked_mul(mult)
}

fn mem_cap() -> Option<u64> {
    std::env::var(MAX_MEM_VAR).ok().and_then(|v| parse_mem(&v))
}

fn guard_mem(what: &str, bytes: u64) -> Result<()> {
    match mem_cap() {
        Some(cap) if bytes > cap => Err(Error::ResourceGuard(format!(
            "{what} needs about {bytes} bytes, {MAX_MEM_VAR} allows {cap}"
        ))),
        _ => Ok(()),
    }
}

/// Rough upper bound on the bytes held by the candidate set of
/// [`growth::minimal_forbidden`].
fn forbidden_candidate_bytes(p: &BinaryPattern, cutoff: usize) -> u64 {
    let mut total = 0u64;
    for (cx, cy) in [(3usize, 0usize), (p.count(0), p.count(1))] {
        for a in 1..=cutoff {
            if a * cx > cutoff {
                break;
            }
            let bs: Box<dyn Iterator<Item = usize>> = if cy == 0 {
                Box::new(std::iter::once(0))
            } else {
                Box::new(1..=(cutoff - a * cx) / cy)
            };
            for b in bs {
                total = total.saturating_add(1u64 << (a + b).min(63));
            }
        }
    }
    total.saturating_mul(cutoff as u64 + 48)
}

struct Outcome {
    value: Value,
    code: i32,
    seed: Option<u64>,
}

impl Outcome {
    fn new<T: Serialize>(v: &T, pass: bool) -> Self {
        Outcome {
            value: serde_json::to_value(v).expect("report serializes"),
            code: if pass { EXIT_PASS } else { EXIT_FAIL },
            seed: None,
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnsupportedAlphabet(_)
            | Error::LetterOutOfRange { .. }
            | Error::WordParse(_)
            | Error::PatternParse { .. }
            | Error::UnsupportedPattern(..)
            | Error::Morphism(_)
            | Error::UnknownMorphism(_)
            | Error::InvalidSelection(_)
            | Error::Precondition(_)
    )
}

fn error_value(e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string();
    json!({ "error": { "kind": kind, "message": e.to_string() } })
}

fn binary_pattern(s: &str) -> Result<BinaryPattern> {
    s.parse()
}

fn run_command(cmd: &Command, seed: u64) -> Result<Outcome> {
    match cmd {
        Command::Meets { word, pattern } => {
            let w: Word = word.parse()?;
            let p: Pattern = pattern.parse()?;
            let wit = meets(&w, &p);
            Ok(Outcome::new(
                &json!({
                    "word": w,
                    "pattern": p,
                    "meets": wit.is_some(),
                    "witness": wit,
                }),
                true,
            ))
        }
        Command::Morphism(m) => run_morphism(m),
        Command::Dolverify { morphism, pattern, k } => {
            let f = morphism.load()?;
            let p = binary_pattern(pattern)?;
            let v = dolverify::bounded_pattern_check(&f, &p, *k)?;
            let pass = v.avoids();
            Ok(Outcome::new(&v, pass))
        }
        Command::Construct(c) => run_construct(c, seed),
        Command::Growth(g) => run_growth(g),
        Command::Search(s) => run_search(s),
        Command::Replay { .. } => unreachable!("replay is handled by dispatch"),
    }
}

fn run_morphism(cmd: &MorphismCmd) -> Result<Outcome> {
    match cmd {
        MorphismCmd::Show { morphism, prefix } => {
            let f = morphism.load()?;
            let fixed = f.dol_prefix(0, *prefix).ok();
            Ok(Outcome::new(
                &json!({
                    "morphism": f,
                    "uniform_len": f.uniform_len(),
                    "prefix_len": prefix,
                    "fixed_point_prefix": fixed,
                }),
                true,
            ))
        }
        MorphismCmd::Sync { morphism, k } => {
            let f = morphism.load()?;
            let wit = morphism::sync_counterexample(&f, *k)?;
            let pass = wit.is_none();
            Ok(Outcome::new(
                &json!({
                    "morphism": f.name(),
                    "k": k,
                    "synchronizing": pass,
                    "counterexample": wit,
                }),
                pass,
            ))
        }
        MorphismCmd::Cubefree { morphism } => {
            let f = morphism.load()?;
            let pass = morphism::is_cube_free_morphism(&f)?;
            Ok(Outcome::new(
                &json!({
                    "morphism": f.name(),
                    "test_word": morphism::CUBE_FREE_TEST_WORD,
                    "cube_free": pass,
                }),
                pass,
            ))
        }
        MorphismCmd::Mu { prefix } => {
            let r = morphism::verify_mu_properties(*prefix)?;
            let pass = r.all_pass();
            Ok(Outcome::new(&r, pass))
        }
    }
}

fn run_construct(cmd: &ConstructCmd, seed: u64) -> Result<Outcome> {
    match cmd {
        ConstructCmd::Sites { scheme, prefix } => {
            let s = InsertionScheme::new(*scheme);
            let sites = constructions::insertion_sites(&s, *prefix)?;
            Ok(Outcome::new(
                &json!({
                    "scheme": scheme,
                    "prefix_len": prefix,
                    "count": sites.len(),
                    "sites": sites,
                }),
                true,
            ))
        }
        ConstructCmd::Verify {
            scheme,
            prefix,
            mode,
            count,
            width,
            insert,
        } => {
            let mut s = InsertionScheme::new(*scheme);
            if let Some(ins) = insert {
                s = s.with_insert(ins.parse()?)?;
            }
            let (mode, sampled) = match mode {
                ModeArg::Exhaustive => {
                    let sites = constructions::insertion_sites(&s, *prefix)?.len();
                    if sites <= constructions::EXHAUSTIVE_SITE_LIMIT {
                        guard_mem("exhaustive fingerprint set", (1u64 << sites) * 32)?;
                    }
                    (VerifyMode::Exhaustive, false)
                }
                ModeArg::Sample => (VerifyMode::Sample { count: *count, seed }, true),
                ModeArg::Windowed => (VerifyMode::Windowed { width: *width }, false),
            };
            let r = constructions::verify_scheme(&s, *prefix, mode)?;
            let pass = r.passed();
            let mut out = Outcome::new(&r, pass);
            out.seed = sampled.then_some(seed);
            Ok(out)
        }
        ConstructCmd::Mapping { morphism, pattern, t } => {
            let g = morphism.load()?;
            let default = (1..=4)
                .find(|&i| catalog::g(i) == g)
                .map(catalog::g_target)
                .or_else(|| {
                    catalog::tp_patterns()
                        .into_iter()
                        .find(|(p, _)| catalog::tp(p).is_ok_and(|(m, _)| m == g))
                });
            let p = match (pattern, &default) {
                (Some(s), _) => binary_pattern(s)?,
                (None, Some((p, _))) => p.clone(),
                (None, None) => return Err(Error::Precondition("--pattern is required for this morphism".into())),
            };
            let t = match (t, &default) {
                (Some(t), _) => *t,
                (None, Some((_, t))) => *t,
                (None, None) => return Err(Error::Precondition("--t is required for this morphism".into())),
            };
            let c = constructions::verify_mapping(&g, &p, t)?;
            let pass = c.passed();
            Ok(Outcome::new(&c, pass))
        }
        ConstructCmd::Squares { pattern, t, cutoff } => {
            let p = binary_pattern(pattern)?;
            let r = constructions::unavoidable_with_squares(&p, *t, *cutoff)?;
            let pass = r.is_finite();
            Ok(Outcome::new(&r, pass))
        }
        ConstructCmd::LowerBound { kind, root } => {
            let kind = match kind {
                RateArg::Pow2 => RateKind::PowerOfTwo(*root),
                RateArg::Alpha => RateKind::AlphaRoot(*root),
            };
            let r = constructions::lower_bound_rate::<f64>(kind)?;
            Ok(Outcome::new(&json!({ "rate": kind, "lo": r.lo, "hi": r.hi }), true))
        }
    }
}

fn run_growth(cmd: &GrowthCmd) -> Result<Outcome> {
    match cmd {
        GrowthCmd::Upper { pattern, cutoff, eps } => {
            let p = binary_pattern(pattern)?;
            guard_mem("forbidden-word candidates", forbidden_candidate_bytes(&p, *cutoff))?;
            let r = growth::upper_bound_pipeline(&p, *cutoff, *eps)?;
            Ok(Outcome::new(&r, true))
        }
        GrowthCmd::Forbidden { pattern, cutoff } => {
            let p = binary_pattern(pattern)?;
            guard_mem("forbidden-word candidates", forbidden_candidate_bytes(&p, *cutoff))?;
            let m = growth::minimal_forbidden(&p, *cutoff)?;
            Ok(Outcome::new(
                &json!({
                    "pattern": m.pattern,
                    "cutoff": m.cutoff,
                    "count": m.len(),
                    "words": m.words,
                }),
                true,
            ))
        }
    }
}

fn pattern_list(s: &str) -> Result<Vec<Pattern>> {
    let ps = parse_pattern_list(s)?;
    if ps.is_empty() {
        return Err(Error::PatternParse {
            input: s.into(),
            reason: "empty pattern list".into(),
        });
    }
    Ok(ps)
}

fn run_search(cmd: &SearchCmd) -> Result<Outcome> {
    match cmd {
        SearchCmd::Longest { patterns, cutoff } => {
            let r = search::longest_avoider(&pattern_list(patterns)?, *cutoff)?;
            Ok(Outcome::new(&r, true))
        }
        SearchCmd::Classify { maxlen } => Ok(Outcome::new(&search::classify(*maxlen)?, true)),
        SearchCmd::Count { patterns, nmax } => {
            Ok(Outcome::new(&search::count_series(&pattern_list(patterns)?, *nmax)?, true))
        }
        SearchCmd::Polyprobe { nmax, margin } => {
            let r = search::polynomial_probe(*nmax, *margin)?;
            let pass = r.forbidden_ok() && r.extendable_ok() && r.envelope.holds;
            Ok(Outcome::new(&r, pass))
        }
        SearchCmd::Overlaps { nmax } => {
            let r = search::overlap_extension_check(*nmax)?;
            let pass = r.passed();
            Ok(Outcome::new(&r, pass))
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&key(k), x, rows);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, rows);
            }
        }
        Value::Object(_) | Value::Array(_) => rows.push((prefix.to_string(), String::new())),
        leaf => rows.push((prefix.to_string(), csv_cell(leaf))),
    }
}

/// Renders a JSON document as CSV. A flat object becomes one header row and
/// one value row; anything nested becomes `path,value` rows.
pub fn to_csv(v: &Value) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    match v {
        Value::Object(m) if m.values().all(|x| !x.is_object() && !x.is_array()) => {
            wtr.write_record(m.keys()).expect("in-memory write");
            wtr.write_record(m.values().map(csv_cell)).expect("in-memory write");
        }
        _ => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            wtr.write_record(["path", "value"]).expect("in-memory write");
            for (k, x) in rows {
                wtr.write_record([k, x]).expect("in-memory write");
            }
        }
    }
    String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("value serializes");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(v),
    }
}

/// Splits `argv` (without the program name) into the subcommand path and a
/// map of `--key value` parameters. The manifest flag is dropped.
fn describe(args: &[String]) -> (String, Vec<String>, BTreeMap<String, String>) {
    let mut path = Vec::new();
    let mut kept = Vec::new();
    let mut params = BTreeMap::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if let Some(flag) = a.strip_prefix("--") {
            let (k, v, consumed) = match flag.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string(), 1),
                None => match args.get(i + 1) {
                    Some(next) if !next.starts_with("--") => (flag.to_string(), next.clone(), 2),
                    _ => (flag.to_string(), "true".to_string(), 1),
                },
            };
            if k != "manifest" {
                kept.extend_from_slice(&args[i..i + consumed]);
                params.insert(k, v);
            }
            i += consumed;
        } else {
            if params.is_empty() {
                path.push(a.clone());
            } else {
                params.insert(format!("arg{}", path.len()), a.clone());
            }
            kept.push(a.clone());
            i += 1;
        }
    }
    (path.join(" "), kept, params)
}

fn with_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> std::result::Result<R, String> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err("--jobs must be at least 1".into()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| e.to_string()),
    }
}

/// Runs `patlab` on `argv` (including the program name). Returns the exit
/// code.
pub fn dispatch(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_PASS
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    if let Command::Replay { path } = &cli.command {
        return replay_path(path, cli.format, cli.seed, out, err);
    }

    let start = Instant::now();
    let result = with_pool(cli.jobs, || run_command(&cli.command, cli.seed.unwrap_or(0)));
    let (value, code, seed) = match result {
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Ok(Ok(o)) => (o.value, o.code, o.seed),
        Ok(Err(e)) => {
            let _ = writeln!(err, "error: {e}");
            let code = if is_usage_error(&e) { EXIT_USAGE } else { EXIT_FAIL };
            (error_value(&e), code, None)
        }
    };
    let text = render(&value, cli.format);
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_FAIL;
    }
    if let Some(path) = &cli.manifest {
        let (command, kept, params) = describe(&argv[1.min(argv.len())..]);
        let m = RunManifest {
            command,
            argv: kept,
            params,
            catalog_version: CATALOG_VERSION.to_string(),
            seed,
            format: cli.format,
            wall_ms: start.elapsed().as_millis() as u64,
            exit_code: code,
            digest: digest(text.as_bytes()),
        };
        let body = serde_json::to_string_pretty(&m).expect("manifest serializes");
        if let Err(e) = std::fs::write(path, body + "\n") {
            let _ = writeln!(err, "error: cannot write manifest {}: {e}", path.display());
            return EXIT_FAIL;
        }
    }
    code
}

/// Outcome of re-running a manifest.
#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub command: String,
    pub catalog_version: String,
    pub expected_digest: String,
    pub actual_digest: String,
    pub digest_equal: bool,
    /// The replay used a different seed than the recorded run.
    pub seed_altered: bool,
    pub exit_code: i32,
    pub recorded_exit_code: i32,
}

/// Re-runs `m`, optionally with another seed, and compares digests.
pub fn replay(m: &RunManifest, seed: Option<u64>) -> Result<(ReplayReport, String)> {
    if m.catalog_version != CATALOG_VERSION {
        return Err(Error::CatalogMismatch {
            expected: CATALOG_VERSION.to_string(),
            found: m.catalog_version.clone(),
        });
    }
    let mut argv = vec!["patlab".to_string()];
    let mut skip = false;
    for a in &m.argv {
        if skip {
            skip = false;
            continue;
        }
        if seed.is_some() && a == "--seed" {
            skip = true;
            continue;
        }
        if seed.is_some() && a.starts_with("--seed=") {
            continue;
        }
        argv.push(a.clone());
    }
    if let Some(s) = seed {
        argv.push("--seed".into());
        argv.push(s.to_string());
    }
    let mut buf = Vec::new();
    let mut sink = Vec::new();
    let code = dispatch(&argv, &mut buf, &mut sink);
    let actual = digest(&buf);
    let recorded_seed = m
        .seed
        .or_else(|| m.params.get("seed").and_then(|s| s.parse().ok()))
        .unwrap_or(0);
    let report = ReplayReport {
        command: m.command.clone(),
        catalog_version: m.catalog_version.clone(),
        expected_digest: m.digest.clone(),
        digest_equal: actual == m.digest,
        actual_digest: actual,
        seed_altered: seed.is_some_and(|s| s != recorded_seed),
        exit_code: code,
        recorded_exit_code: m.exit_code,
    };
    Ok((report, String::from_utf8_lossy(&buf).into_owned()))
}

fn replay_path(path: &PathBuf, format: Format, seed: Option<u64>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    let m: RunManifest = match serde_json::from_str(&text) {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(err, "error: invalid manifest: {e}");
            return EXIT_USAGE;
        }
    };
    let (value, code) = match replay(&m, seed) {
        Ok((r, _)) => {
            let code = if r.digest_equal { EXIT_PASS } else { EXIT_FAIL };
            (serde_json::to_value(&r).expect("report serializes"), code)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            (error_value(&e), EXIT_FAIL)
        }
    };
    let _ = out.write_all(render(&value, format).as_bytes());
    code
}

/// Schema of the JSON written by a subcommand path such as `growth upper`.
pub fn schema_for(command: &str) -> Option<&'static str> {
    Some(match command {
        "meets" => include_str!("../schemas/meets.json"),
        "morphism show" => include_str!("../schemas/morphism-show.json"),
        "morphism sync" => include_str!("../schemas/morphism-sync.json"),
        "morphism cubefree" => include_str!("../schemas/morphism-cubefree.json"),
        "morphism mu" => include_str!("../schemas/morphism-mu.json"),
        "dolverify" => include_str!("../schemas/dolverify.json"),
        "construct sites" => include_str!("../schemas/construct-sites.json"),
        "construct verify" => include_str!("../schemas/construct-verify.json"),
        "construct mapping" => include_str!("../schemas/construct-mapping.json"),
        "construct squares" | "search longest" => include_str!("../schemas/search-longest.json"),
        "construct lower-bound" => include_str!("../schemas/construct-lower-bound.json"),
        "growth upper" => include_str!("../schemas/growth-upper.json"),
        "growth forbidden" => include_str!("../schemas/growth-forbidden.json"),
        "search classify" => include_str!("../schemas/search-classify.json"),
        "search count" => include_str!("../schemas/search-count.json"),
        "search polyprobe" => include_str!("../schemas/search-polyprobe.json"),
        "search overlaps" => include_str!("../schemas/search-overlaps.json"),
        "replay" => include_str!("../schemas/replay.json"),
        "manifest" => include_str!("../schemas/manifest.json"),
        "error" => include_str!("../schemas/error.json"),
        _ => return None,
    })
}
