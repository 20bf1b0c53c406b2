//! `mcurve`: decode, encode, validate, fuzz, enumerate and render multicurve
//! coordinates from the shell.
//!
//! Data goes to stdout and diagnostics to stderr. Exit codes: 0 success,
//! 1 invalid input, 2 unrealizable vector, 3 internal invariant failure,
//! 64 usage error.

use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use multicurve::decode::twist_magnitudes;
use multicurve::generate::{enumerate_small_vectors, roundtrip_fuzz, GenConfig, GenError};
use multicurve::render::{render_summary, render_svg, RenderSpec};
use multicurve::{
    consistency_check, decode, encode, validate_basic, CoordVector, Diagnostic, Diagnostics,
    MultiCurveCensus, Severity, Sign, SurfaceSig, TwistSigns, VectorDocument,
};

#[derive(Parser)]
#[command(
    name = "mcurve",
    version,
    about = "Exact multicurve coordinates on punctured surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode a coordinate vector into its component census.
    Decode(DecodeArgs),
    /// Encode a census back into a coordinate vector and twist signs.
    Encode(EncodeArgs),
    /// Check a vector and report every problem found.
    Validate(VectorArgs),
    /// Round-trip random censuses through encode and decode.
    Fuzz(FuzzArgs),
    /// List every small vector that decodes, with its signs.
    Enumerate(EnumerateArgs),
    /// Draw a census as SVG or summarise it as text.
    Render(RenderArgs),
}

#[derive(Args)]
struct Surface {
    /// Number of punctures.
    #[arg(short = 'n', long = "punctures")]
    n: Option<usize>,
    /// Genus.
    #[arg(short = 'g', long = "genus")]
    g: Option<usize>,
}

impl Surface {
    fn sig(&self) -> Result<SurfaceSig, Failure> {
        match (self.n, self.g) {
            (Some(n), Some(g)) => {
                SurfaceSig::new(n, g).map_err(|e| Failure::Invalid(e.to_string()))
            }
            _ => Err(Failure::Invalid(
                "-n and -g are required for a text vector".into(),
            )),
        }
    }
}

#[derive(Args)]
struct VectorArgs {
    #[command(flatten)]
    surface: Surface,
    /// Vector text, e.g. "(1,1; 2,2; 2; 0)".
    #[arg(long, conflicts_with = "input")]
    vector: Option<String>,
    /// File holding a vector in text or JSON form; "-" reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Twist signs for G_1..G_{g-1}, G*, e.g. "+,-,0".
    #[arg(long, allow_hyphen_values = true)]
    signs: Option<String>,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    vector: VectorArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct EncodeArgs {
    /// Census JSON file; stdin when omitted or "-".
    #[arg(long)]
    census: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct FuzzArgs {
    #[command(flatten)]
    surface: Surface,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Upper bound for each sampled component count.
    #[arg(long, default_value_t = 4)]
    max_count: u64,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    surface: Surface,
    /// Largest entry.
    #[arg(long, default_value_t = 2)]
    bound: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RenderArgs {
    /// Census JSON file; stdin when omitted or "-".
    #[arg(long)]
    census: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
    format: RenderFormat,
    #[arg(long, default_value_t = 960)]
    width: u32,
    #[arg(long, default_value_t = 360)]
    height: u32,
    #[arg(long, default_value_t = 6)]
    strand_spacing: u32,
    #[arg(long)]
    no_labels: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
    Text,
}

enum Failure {
    Invalid(String),
    InvalidDiagnostics(Diagnostics),
    Unrealizable(Diagnostics),
    Internal(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) | Failure::InvalidDiagnostics(_) => 1,
            Failure::Unrealizable(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(format!("{e:#}"))
    }
}

impl From<multicurve::ParseError> for Failure {
    fn from(e: multicurve::ParseError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

struct Reporter {
    color: bool,
}

impl Reporter {
    fn from_env() -> Self {
        let color = match std::env::var("MCURVE_COLOR").as_deref() {
            Ok("always") => true,
            Ok("never") => false,
            _ => io::stderr().is_terminal(),
        };
        Self { color }
    }

    fn line(&self, severity: Severity, text: &str) {
        let (label, paint) = match severity {
            Severity::Error => ("error", "\x1b[1;31m"),
            Severity::Warning => ("warning", "\x1b[1;33m"),
        };
        let rest = text.strip_prefix(label).unwrap_or(text);
        if self.color {
            eprintln!("{paint}{label}\x1b[0m{rest}");
        } else {
            eprintln!("{label}{rest}");
        }
    }

    fn diagnostic(&self, d: &Diagnostic) {
        self.line(d.severity, &d.to_string());
    }

    fn diagnostics(&self, ds: &Diagnostics) {
        for d in ds.iter() {
            self.diagnostic(d);
        }
    }

    fn error(&self, text: &str) {
        self.line(Severity::Error, &format!("error: {text}"));
    }

    fn warning(&self, text: &str) {
        self.line(Severity::Warning, &format!("warning: {text}"));
    }
}

fn read_source(path: Option<&PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .context("reading stdin")?;
            Ok(text)
        }
    }
}

fn read_vector(args: &VectorArgs) -> Result<(CoordVector, Option<TwistSigns>), Failure> {
    let text = match &args.vector {
        Some(v) => v.clone(),
        None => read_source(args.input.as_ref())?,
    };
    let (v, file_signs) = if text.trim_start().starts_with('{') {
        let doc: VectorDocument<i64> = serde_json::from_str(&text)
            .map_err(|e| Failure::Invalid(format!("vector JSON: {e}")))?;
        doc.into_parts()?
    } else {
        (CoordVector::parse(&text, args.surface.sig()?)?, None)
    };
    let signs = match &args.signs {
        Some(s) => Some(TwistSigns::parse(s, v.sig().g())?),
        None => file_signs,
    };
    Ok((v, signs))
}

/// Signs to decode with: the given ones, or `+` wherever the vector forces a
/// twist and `0` elsewhere.
fn resolve_signs(
    v: &CoordVector,
    signs: Option<TwistSigns>,
    report: &Reporter,
) -> Result<TwistSigns, Failure> {
    if let Some(s) = signs {
        return Ok(s);
    }
    let magnitudes = twist_magnitudes(v).map_err(|d| Failure::Unrealizable(d.into()))?;
    let guessed: Vec<Sign> = magnitudes
        .iter()
        .map(|t| if *t > 0 { Sign::Positive } else { Sign::Zero })
        .collect();
    let guessed = TwistSigns::new(guessed);
    if magnitudes.iter().any(|t| *t > 0) {
        report.warning(&format!("no --signs given; assuming {guessed}"));
    }
    Ok(guessed)
}

fn read_census(path: Option<&PathBuf>) -> Result<MultiCurveCensus, Failure> {
    let text = read_source(path)?;
    Ok(MultiCurveCensus::from_json(&text)?)
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Internal(format!("writing output: {e}")))
}

fn check_vector(v: &CoordVector) -> Result<(), Failure> {
    let basic = validate_basic(v);
    if basic.has_errors() {
        return Err(Failure::InvalidDiagnostics(basic));
    }
    Ok(())
}

fn run_decode(args: &DecodeArgs, report: &Reporter) -> Result<(), Failure> {
    let (v, signs) = read_vector(&args.vector)?;
    check_vector(&v)?;
    let signs = resolve_signs(&v, signs, report)?;
    let census = decode(&v, &signs).map_err(Failure::Unrealizable)?;
    match args.format {
        Format::Text => emit(&render_summary(&census)),
        Format::Json => emit(&format!("{}\n", census.to_json())),
    }
}

fn run_validate(args: &VectorArgs, report: &Reporter) -> Result<(), Failure> {
    let (v, signs) = read_vector(args)?;
    check_vector(&v)?;
    let signs = resolve_signs(&v, signs, report)?;
    decode(&v, &signs).map_err(Failure::Unrealizable)?;
    emit(&format!("valid with signs {signs}\n"))
}

fn run_encode(args: &EncodeArgs) -> Result<(), Failure> {
    let census = read_census(args.census.as_ref())?;
    let (v, signs) = encode(&census).map_err(Failure::InvalidDiagnostics)?;
    match args.format {
        Format::Json => {
            let doc = VectorDocument::from_vector(&v, Some(&signs));
            let json = serde_json::to_string_pretty(&doc)
                .map_err(|e| Failure::Internal(format!("serialising vector: {e}")))?;
            emit(&format!("{json}\n"))
        }
        Format::Text => emit(&format!("{v}\n{signs}\n")),
    }
}

fn gen_failure(e: GenError) -> Failure {
    Failure::Invalid(e.to_string())
}

fn run_fuzz(args: &FuzzArgs) -> Result<(), Failure> {
    let cfg =
        GenConfig::new(args.surface.sig()?, args.trials, args.seed).with_max_count(args.max_count);
    let report = roundtrip_fuzz(&cfg).map_err(gen_failure)?;
    emit(&format!("{}\n", report.to_json()))?;
    if report.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Internal(format!(
            "{} of {} trials failed",
            report.failures.len(),
            report.trials
        )))
    }
}

fn run_enumerate(args: &EnumerateArgs, report: &Reporter) -> Result<(), Failure> {
    let sig = args.surface.sig()?;
    let mut items = Vec::new();
    let mut broken = 0usize;
    for (v, signs) in enumerate_small_vectors(sig, args.bound) {
        let exact = decode(&v, &signs)
            .ok()
            .filter(|c| consistency_check(c).is_empty())
            .and_then(|c| encode(&c).ok())
            .is_some_and(|(w, s)| w == v && s == signs);
        if !exact {
            broken += 1;
            report.error(&format!("{v} with signs {signs} does not round-trip"));
        }
        items.push((v, signs));
    }
    let body = match args.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = items
                .iter()
                .map(
                    |(v, s)| serde_json::json!({ "vector": v.to_string(), "signs": s.to_string() }),
                )
                .collect();
            let doc = serde_json::json!({ "n": sig.n(), "g": sig.g(), "bound": args.bound, "vectors": rows });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("json values serialize")
            )
        }
        Format::Text => items.iter().map(|(v, s)| format!("{v}\t{s}\n")).collect(),
    };
    emit(&body)?;
    eprintln!("{} vector/sign pairs decode", items.len());
    if broken > 0 {
        return Err(Failure::Internal(format!(
            "{broken} enumerated vectors failed to round-trip"
        )));
    }
    Ok(())
}

fn run_render(args: &RenderArgs) -> Result<(), Failure> {
    let census = read_census(args.census.as_ref())?;
    match args.format {
        RenderFormat::Text => emit(&render_summary(&census)),
        RenderFormat::Svg => {
            let spec = RenderSpec {
                census: &census,
                width: args.width,
                height: args.height,
                show_labels: !args.no_labels,
                strand_spacing: args.strand_spacing,
            };
            let svg = render_svg(&spec).map_err(|e| match e {
                multicurve::render::RenderError::InconsistentCensus(d) => {
                    Failure::InvalidDiagnostics(d)
                }
                other => Failure::Invalid(other.to_string()),
            })?;
            emit(&svg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(64)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let report = Reporter::from_env();
    let outcome = match &cli.command {
        Command::Decode(a) => run_decode(a, &report),
        Command::Encode(a) => run_encode(a),
        Command::Validate(a) => run_validate(a, &report),
        Command::Fuzz(a) => run_fuzz(a),
        Command::Enumerate(a) => run_enumerate(a, &report),
        Command::Render(a) => run_render(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Invalid(msg) | Failure::Internal(msg) => report.error(msg),
                Failure::InvalidDiagnostics(d) | Failure::Unrealizable(d) => report.diagnostics(d),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
