//! Command-line front end.
//!
//! Every subcommand writes one document: JSON
//! `{"m", "d", "poly", "kind", "entries": [{"value", "count"}], "meta": {...}}`
//! or CSV (`value,count` after `#`-prefixed header lines). Exit codes: 0 ok,
//! 1 verification failure, 2 usage or parameter error, 3 resource guard.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    coprime_exponents, designated_c, exponent_profile, mb_square_identities, scan_exponents,
    sextic_census, weighted_sum_check, ScanCheck,
};
use crate::code::{is_degenerate, weight_distribution};
use crate::error::Error;
use crate::field::{self, FieldCtx, DEFAULT_TABLE_CAP, MAX_DEGREE};
use crate::predict::{compare, predicted_spectrum, Theorem};
use crate::walsh::{subfield_sum_check, WalshTable};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const THREADS_ENV: &str = "WALSH_LAB_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "walsh-lab",
    version,
    about = "Walsh spectra of Tr(x^d) and weight distributions of two-nonzero cyclic codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Modulus override as a hex bitmask including the leading term, e.g. 0x43.
    #[arg(long, global = true, value_parser = parse_hex)]
    pub poly: Option<u64>,

    /// Worker threads for `scan` (default: $WALSH_LAB_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Build log tables only when 2^m is at most this many entries.
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_CAP)]
    pub table_cap: usize,

    /// Lift the m <= 16 guard of `identities`.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Walsh spectrum of Tr(x^d) over GF(2^m).
    Spectrum {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u64,
    },
    /// Weight distribution and minimum distance of C_d.
    Weights {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u64,
    },
    /// Compare the computed spectrum of d = 3 + 2^(t+1) with its closed form.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        t: u32,
    },
    /// Solution-count census of z^6 + z = w over GF(2^t).
    Census {
        #[arg(long)]
        t: u32,
    },
    /// Run a check over every exponent coprime to 2^m - 1.
    Scan {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        check: CheckArg,
        #[arg(long)]
        d_min: Option<u64>,
        #[arg(long)]
        d_max: Option<u64>,
        /// Check a seeded random sample of this many exponents instead.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Residuals of the Walsh sum identities and the M_b identities.
    Identities {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Todd,
    Teven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Sarwate,
    Bound,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s.trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(digits, 16).map_err(|e| format!("invalid hex modulus {s:?}: {e}"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub value: i64,
    pub count: u64,
}

/// The output record shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub m: u32,
    pub d: Option<u64>,
    pub poly: String,
    pub kind: String,
    pub entries: Vec<Entry>,
    pub meta: BTreeMap<String, Value>,
}

impl Document {
    fn new(ctx: &FieldCtx, d: Option<u64>, kind: &str) -> Self {
        let mut meta = BTreeMap::new();
        meta.insert("tool".to_string(), json!("walsh-lab"));
        meta.insert("version".to_string(), json!(VERSION));
        Document {
            m: ctx.m(),
            d,
            poly: format!("{:#x}", ctx.modulus()),
            kind: kind.to_string(),
            entries: Vec::new(),
            meta,
        }
    }

    fn with_entries<V: Into<i64> + Copy>(mut self, entries: &[(V, u64)]) -> Self {
        self.entries = entries
            .iter()
            .map(|&(v, n)| Entry {
                value: v.into(),
                count: n,
            })
            .collect();
        self
    }

    fn set(&mut self, key: &str, value: Value) {
        self.meta.insert(key.to_string(), value);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# walsh-lab {} kind={} m={} d={} poly={}\n",
            VERSION,
            self.kind,
            self.m,
            self.d.map_or_else(|| "-".to_string(), |d| d.to_string()),
            self.poly
        );
        out.push_str(&format!(
            "# meta={}\n",
            serde_json::to_string(&self.meta).expect("meta serializes")
        ));
        out.push_str("value,count\n");
        for e in &self.entries {
            out.push_str(&format!("{},{}\n", e.value, e.count));
        }
        out
    }
}

/// Failures that map onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::Resource(_)) => EXIT_RESOURCE,
            Failure::Usage(_) | Failure::Lib(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_VERIFICATION,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Lib(e) => e.kind(),
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(s) => s.clone(),
            Failure::Lib(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }
}

/// A finished command: the document plus whether every check passed.
struct Outcome {
    doc: Document,
    ok: bool,
}

fn field_for(cli: &Cli, m: u32) -> Result<FieldCtx, Failure> {
    if m > MAX_DEGREE {
        return Err(Error::Resource(format!(
            "m = {m} exceeds the supported maximum {MAX_DEGREE}"
        ))
        .into());
    }
    Ok(FieldCtx::with_options(m, cli.poly, cli.table_cap)?)
}

fn check_d(ctx: &FieldCtx, d: u64) -> Result<(), Failure> {
    if d == 0 || d >= ctx.group_order() {
        return Err(Failure::Usage(format!(
            "d = {d} not in [1, 2^{} - 2]",
            ctx.m()
        )));
    }
    Ok(())
}

fn cmd_spectrum(cli: &Cli, m: u32, d: u64) -> Result<Outcome, Failure> {
    let ctx = field_for(cli, m)?;
    check_d(&ctx, d)?;
    let spectrum = WalshTable::compute(&ctx, d)?.spectrum(&ctx);
    let (r1, r2) = spectrum.parseval_residuals();
    let mut doc = Document::new(&ctx, Some(d), "spectrum").with_entries(&spectrum.entries);
    doc.set("coprime", json!(spectrum.coprime));
    doc.set("sum_residual", json!(r1 as i64));
    doc.set("sum_squares_residual", json!(r2 as i64));
    doc.set(
        "profile",
        serde_json::to_value(exponent_profile(m, d)?).expect("profile serializes"),
    );
    Ok(Outcome { doc, ok: true })
}

fn cmd_weights(cli: &Cli, m: u32, d: u64) -> Result<Outcome, Failure> {
    let ctx = field_for(cli, m)?;
    check_d(&ctx, d)?;
    let wd = weight_distribution(&ctx, d)?;
    let entries: Vec<(i64, u64)> = wd.entries.iter().map(|&(w, n)| (w as i64, n)).collect();
    let mut doc = Document::new(&ctx, Some(d), "weights").with_entries(&entries);
    let min_distance = wd.min_distance();
    doc.set("min_distance", json!(min_distance));
    doc.set("degenerate_two_nonzeros", json!(wd.degenerate_two_nonzeros));
    doc.set("total", json!(wd.total_count()));
    if let Some(t) = ctx.t() {
        let conjectured = (1u64 << (m - 1)) - (1u64 << t);
        doc.set("conjecture_bound", json!(conjectured));
        doc.set(
            "meets_conjecture_bound",
            json!(min_distance.is_some_and(|w| w <= conjectured)),
        );
    }
    Ok(Outcome { doc, ok: true })
}

fn cmd_verify(cli: &Cli, theorem: TheoremArg, t: u32) -> Result<Outcome, Failure> {
    let theorem = match theorem {
        TheoremArg::Todd => Theorem::TOdd,
        TheoremArg::Teven => Theorem::TEven,
    };
    if theorem == Theorem::TEven && t == 2 {
        return verify_without_prediction(cli, theorem, t);
    }
    let predicted = predicted_spectrum(theorem, t)?;
    let ctx = field_for(cli, 2 * t)?;
    let actual = WalshTable::compute(&ctx, predicted.d)?.spectrum(&ctx);
    let report = compare(&actual, &predicted)?;
    let mut doc = Document::new(&ctx, Some(predicted.d), "verify").with_entries(&actual.entries);
    doc.set("theorem", json!(theorem.label()));
    doc.set("t", json!(t));
    doc.set(
        "predicted",
        json!(predicted
            .entries
            .iter()
            .map(|&(v, n)| json!({"value": v, "count": n}))
            .collect::<Vec<_>>()),
    );
    doc.set("equal", json!(report.equal));
    doc.set(
        "diffs",
        serde_json::to_value(&report.diffs).expect("diffs serialize"),
    );
    Ok(Outcome {
        doc,
        ok: report.equal,
    })
}

/// t = 2 lies outside the closed form; the actual spectrum is still reported.
fn verify_without_prediction(cli: &Cli, theorem: Theorem, t: u32) -> Result<Outcome, Failure> {
    let d = 3 + (1u64 << (t + 1));
    let ctx = field_for(cli, 2 * t)?;
    let actual = WalshTable::compute(&ctx, d)?.spectrum(&ctx);
    let mut doc = Document::new(&ctx, Some(d), "verify").with_entries(&actual.entries);
    doc.set("theorem", json!(theorem.label()));
    doc.set("t", json!(t));
    doc.set("predicted", Value::Null);
    doc.set("equal", Value::Null);
    doc.set("diffs", json!([]));
    Ok(Outcome { doc, ok: true })
}

fn cmd_census(cli: &Cli, t: u32) -> Result<Outcome, Failure> {
    let ctx = field_for(cli, t)?;
    let report = sextic_census(&ctx);
    let entries: Vec<(i64, u64)> = report.counts.iter().map(|(&k, &n)| (k as i64, n)).collect();
    let mut doc = Document::new(&ctx, None, "census").with_entries(&entries);
    let conserved =
        report.total() == ctx.size() as u64 && report.total_solutions() == ctx.size() as u64;
    let matches = report.matches_closed_form();
    doc.set("t", json!(t));
    doc.set("map", json!("z^6+z"));
    doc.set("t2_size", json!(report.t2_size));
    doc.set("t6_size", json!(report.t6_size));
    doc.set("conserved", json!(conserved));
    doc.set(
        "closed_form",
        serde_json::to_value(report.closed_form()).expect("closed form serializes"),
    );
    doc.set("matches_closed_form", json!(matches));
    let witnesses: BTreeMap<String, Value> = report
        .witnesses
        .iter()
        .map(|(k, (w, sols))| {
            (k.to_string(), json!({"w": w.to_string(), "solutions": sols.iter().map(|z| z.to_string()).collect::<Vec<_>>()}))
        })
        .collect();
    doc.set("witnesses", json!(witnesses));
    Ok(Outcome {
        doc,
        ok: conserved && matches != Some(false),
    })
}

fn thread_count(cli: &Cli) -> Result<Option<usize>, Failure> {
    if let Some(n) = cli.threads {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{THREADS_ENV}={s:?} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    cli: &Cli,
    m: u32,
    check: CheckArg,
    d_min: Option<u64>,
    d_max: Option<u64>,
    sample: Option<usize>,
    seed: u64,
) -> Result<Outcome, Failure> {
    let ctx = field_for(cli, m)?;
    if ctx.t().is_none() {
        return Err(Failure::Usage(format!("scan needs even m, got {m}")));
    }
    let mut exponents: Vec<u64> = coprime_exponents(&ctx)
        .into_iter()
        .filter(|&d| d_min.is_none_or(|lo| d >= lo) && d_max.is_none_or(|hi| d <= hi))
        .collect();
    if let Some(k) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        exponents = exponents.choose_multiple(&mut rng, k).copied().collect();
        exponents.sort_unstable();
    }
    let check = match check {
        CheckArg::Sarwate => ScanCheck::Sarwate,
        CheckArg::Bound => ScanCheck::Bound,
    };

    let threads = thread_count(cli)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    let verdicts = pool.install(|| scan_exponents(&ctx, &exponents, check))?;

    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    for v in &verdicts {
        *hist.entry(v.max_walsh).or_default() += 1;
    }
    let entries: Vec<(i64, u64)> = hist.into_iter().collect();
    let failures: Vec<u64> = verdicts.iter().filter(|v| !v.holds).map(|v| v.d).collect();
    let all_hold = failures.is_empty();

    let mut doc = Document::new(&ctx, None, "scan").with_entries(&entries);
    doc.set(
        "check",
        serde_json::to_value(check).expect("check serializes"),
    );
    doc.set("conjecture", json!(check == ScanCheck::Sarwate));
    doc.set("scanned", json!(verdicts.len()));
    doc.set("all_hold", json!(all_hold));
    doc.set("failures", json!(failures));
    doc.set("threads", json!(pool.current_num_threads()));
    if let Some(k) = sample {
        doc.set("sample", json!({"size": k, "seed": seed}));
    }
    doc.set(
        "verdicts",
        json!(verdicts
            .iter()
            .map(|v| json!({
                "d": v.d,
                "max_walsh": v.max_walsh,
                "witness": v.witness.to_string(),
                "threshold": v.threshold,
                "holds": v.holds,
                "degenerate": is_degenerate(&ctx, v.d),
            }))
            .collect::<Vec<_>>()),
    );
    Ok(Outcome { doc, ok: all_hold })
}

fn cmd_identities(cli: &Cli, m: u32, d: u64) -> Result<Outcome, Failure> {
    let ctx = field_for(cli, m)?;
    check_d(&ctx, d)?;
    let g = field::gcd(d, ctx.group_order());
    if g != 1 {
        return Err(Error::NotCoprime {
            value: d,
            modulus: ctx.group_order(),
            gcd: g,
        }
        .into());
    }
    let table = WalshTable::compute(&ctx, d)?;
    let spectrum = table.spectrum(&ctx);
    let (r1, r2) = spectrum.parseval_residuals();
    let mut residuals: BTreeMap<String, Value> = BTreeMap::new();
    residuals.insert("sum_w".into(), json!(r1 as i64));
    residuals.insert("sum_w_squared".into(), json!(r2 as i64));
    let mut all_zero = r1 == 0 && r2 == 0;

    if let Some(t) = ctx.t() {
        // The M_b second moment is the costly part; check the guard first.
        let moments = mb_square_identities(&ctx, d, cli.force)?;

        let q = 1i64 << m;
        let sub = ctx.subfield_elements()?;
        let c = designated_c(&ctx, (1u64 << t) + 1)?;
        let mut subfield_residual = 0i64;
        for &u in sub.iter().skip(1) {
            subfield_residual =
                subfield_residual.max((subfield_sum_check(&ctx, &table, u)? - q).abs());
            let coset = ctx.mul(u, c);
            subfield_residual =
                subfield_residual.max(subfield_sum_check(&ctx, &table, coset)?.abs());
        }
        let mut weighted_residual = 0i64;
        for &u in sub.iter().skip(1) {
            let r = weighted_sum_check(&ctx, &table, ctx.mul(u, c))?;
            weighted_residual = weighted_residual.max((r.lhs - r.rhs).abs());
        }
        residuals.insert("subfield_sum".into(), json!(subfield_residual));
        residuals.insert("weighted_subfield_sum".into(), json!(weighted_residual));
        residuals.insert("mb_second_moment".into(), json!(moments.total_residual()));
        residuals.insert(
            "mb_coset_second_moment".into(),
            json!(moments.coset_residual()),
        );
        all_zero &= subfield_residual == 0
            && weighted_residual == 0
            && moments.total_residual() == 0
            && moments.coset_residual() == 0;
    }

    let mut doc = Document::new(&ctx, Some(d), "identities").with_entries(&spectrum.entries);
    doc.set("residuals", json!(residuals));
    doc.set("all_zero", json!(all_zero));
    Ok(Outcome { doc, ok: all_zero })
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Spectrum { m, d } => cmd_spectrum(cli, m, d),
        Command::Weights { m, d } => cmd_weights(cli, m, d),
        Command::Verify { theorem, t } => cmd_verify(cli, theorem, t),
        Command::Census { t } => cmd_census(cli, t),
        Command::Scan {
            m,
            check,
            d_min,
            d_max,
            sample,
            seed,
        } => cmd_scan(cli, m, check, d_min, d_max, sample, seed),
        Command::Identities { m, d } => cmd_identities(cli, m, d),
    }
}

fn report_failure(stderr: &mut dyn Write, failure: &Failure) -> i32 {
    let code = failure.exit_code();
    let record = json!({"error": failure.kind(), "message": failure.message(), "exit_code": code});
    let _ = writeln!(stderr, "{record}");
    code
}

/// Parses `argv` (program name first), runs the command, and returns the exit code.
pub fn run_with_io<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{e}");
            return report_failure(stderr, &Failure::Usage(e.kind().to_string()));
        }
    };

    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(f) => return report_failure(stderr, &f),
    };
    let text = match cli.format {
        Format::Json => outcome.doc.to_json() + "\n",
        Format::Csv => outcome.doc.to_csv(),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return report_failure(stderr, &Failure::Io(e));
    }
    if outcome.ok {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Parse a modulus the way `--poly` does.
pub fn parse_modulus(s: &str) -> Result<u64, String> {
    parse_hex(s)
}
