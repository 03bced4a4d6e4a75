use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use goodpoly::family::{Family, Member};
use goodpoly::goodness::{self, DEFAULT_SLACK};
use goodpoly::lrc::{format_word, parse_word, LrcCode};
use goodpoly::polyring::canonical_cmp;
use goodpoly::verify::{self, Suite, VerifyConfig};
use goodpoly::{Error, FieldSpec, Poly};

/// Good polynomials over finite fields and the LRC codes built from them.
#[derive(Parser)]
#[command(name = "goodpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Seed for randomized factorization.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Width of the group-order window, in units of 1/sqrt(q).
    #[arg(long, default_value_t = DEFAULT_SLACK, global = true)]
    slack: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// G(f), the bound floor(q/n), full fibers and inferred group orders.
    Gamma(Target),
    /// The full-size fibers of f, one per line.
    Fibers(Target),
    /// G(f) for every member of a family, best first.
    Search(SearchArgs),
    /// Run a verification sweep.
    Verify(VerifyArgs),
    /// Build and exercise a locally recoverable code.
    #[command(subcommand)]
    Lrc(LrcCommand),
}

#[derive(Args)]
struct Target {
    /// Field: "13", "2^6" or "2^6:0x3" (modulus given by its low coefficients).
    #[arg(long)]
    field: String,
    /// Polynomial: coefficient list "0,0,0,1" or an expression "(T^4-T)^3".
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    poly: Option<String>,
    /// Family descriptor, e.g. "dickson:n=5,a=3".
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    /// Field: "13", "2^6" or "2^6:0x3".
    #[arg(long)]
    field: String,
    /// Family descriptor, e.g. "dickson:n=3..9" or "monomial:n=2..12".
    #[arg(long, conflicts_with = "exhaustive", required_unless_present = "exhaustive")]
    family: Option<String>,
    /// Exhaustive sweep, e.g. "max-degree=3".
    #[arg(long)]
    exhaustive: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of dickson-theorem, prop1-corollary, factor-divisibility,
    /// squares-lemma, linearized-bounds, oracle-equivalence.
    #[arg(long)]
    suite: String,
    /// Largest field order in the sweep (suite default when omitted).
    #[arg(long)]
    qmax: Option<u32>,
}

#[derive(Args)]
struct CodeArgs {
    /// Field: "13", "2^6" or "2^6:0x3".
    #[arg(long)]
    field: String,
    /// The good polynomial.
    #[arg(long)]
    poly: String,
    /// Code dimension; must be a multiple of deg f - 1.
    #[arg(long)]
    k: usize,
    /// Number of fibers to use (all full fibers when omitted).
    #[arg(long)]
    groups: Option<usize>,
}

#[derive(Subcommand)]
enum LrcCommand {
    /// Describe the code.
    Build(CodeArgs),
    /// Encode a message of k comma-separated symbols.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        msg: String,
    },
    /// Repair the first erased symbol ("_") from its group.
    Repair {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Recover the message from a word with erasures.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Minimum distance by enumeration (q^k <= 1e8).
    Distance(CodeArgs),
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    /// The command ran but reported a negative result.
    Negative,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Outcome = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Guard(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("GOODPOLY_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(1),
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    match &cli.command {
        Command::Gamma(t) => run_gamma(cli, t, out),
        Command::Fibers(t) => run_fibers(cli, t, out),
        Command::Search(s) => run_search(cli, s, out),
        Command::Verify(v) => run_verify(cli, v, out),
        Command::Lrc(cmd) => run_lrc(cmd, out),
    }
}

fn targets(t: &Target) -> Result<(FieldSpec, Vec<Member>), Error> {
    let field = FieldSpec::parse(&t.field)?;
    let members = match (&t.poly, &t.family) {
        (Some(p), _) => {
            let poly = Poly::parse(&field, p)?;
            if poly.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            vec![Member { params: Default::default(), poly }]
        }
        (None, Some(f)) => Family::parse(f)?.generate(&field)?,
        (None, None) => return Err(Error::Parse("need --poly or --family".into())),
    };
    Ok((field, members))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn json_line(out: &mut impl Write, value: &impl Serialize) -> Outcome {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::other)?;
    writeln!(out)?;
    Ok(())
}

fn run_gamma(cli: &Cli, t: &Target, out: &mut impl Write) -> Outcome {
    let (_, members) = targets(t)?;
    let reports = members
        .par_iter()
        .map(|m| goodness::report(&m.poly, cli.slack))
        .collect::<Result<Vec<_>, Error>>()?;
    match cli.format {
        Format::Json => {
            for r in &reports {
                json_line(out, r)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["q", "n", "gamma", "bound", "fibers", "inferred_orders", "constant_field_is_base"])?;
            for r in &reports {
                let fibers: Vec<String> =
                    r.fibers.iter().map(|f| format!("{}:{}", f.c, join(&f.members, " "))).collect();
                let cf = serde_json::to_value(r.constant_field_is_base).map_err(io::Error::other)?;
                w.write_record([
                    r.q.to_string(),
                    r.n.to_string(),
                    r.gamma.to_string(),
                    r.bound.to_string(),
                    fibers.join(";"),
                    join(&r.inferred_orders, " "),
                    cf.as_str().unwrap_or_default().to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn run_fibers(cli: &Cli, t: &Target, out: &mut impl Write) -> Outcome {
    let (_, members) = targets(t)?;
    let mut csv_out = (cli.format == Format::Csv).then(|| csv::Writer::from_writer(Vec::new()));
    if let Some(w) = csv_out.as_mut() {
        w.write_record(["poly", "c", "members"])?;
    }
    for m in &members {
        for fiber in goodness::fibers(&m.poly)? {
            match csv_out.as_mut() {
                Some(w) => w.write_record([m.poly.to_text(), fiber.c.to_string(), join(&fiber.members, " ")])?,
                None => json_line(out, &fiber)?,
            }
        }
    }
    if let Some(w) = csv_out {
        out.write_all(&w.into_inner().map_err(|e| io::Error::other(e.to_string()))?)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SearchRecord {
    poly: Vec<u32>,
    params: std::collections::BTreeMap<String, u64>,
    gamma: u64,
    bound: u64,
    inferred_orders: Vec<u64>,
}

fn run_search(cli: &Cli, s: &SearchArgs, out: &mut impl Write) -> Outcome {
    let field = FieldSpec::parse(&s.field)?;
    let family = match (&s.family, &s.exhaustive) {
        (Some(f), _) => Family::parse(f)?,
        (None, Some(e)) => Family::parse(&format!("exhaustive:{e}"))?,
        (None, None) => return Err(Error::Parse("need --family or --exhaustive".into()).into()),
    };
    let members = family.generate(&field)?;
    let mut records = members
        .into_par_iter()
        .map(|m| {
            let r = goodness::report(&m.poly, cli.slack)?;
            Ok((m.poly, SearchRecord {
                poly: Vec::new(),
                params: m.params,
                gamma: r.gamma,
                bound: r.bound,
                inferred_orders: r.inferred_orders,
            }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    records.sort_by(|(pa, a), (pb, b)| b.gamma.cmp(&a.gamma).then_with(|| canonical_cmp(pa, pb)));
    match cli.format {
        Format::Json => {
            for (poly, mut rec) in records {
                rec.poly = poly.coeffs().to_vec();
                json_line(out, &rec)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["poly", "params", "gamma", "bound", "inferred_orders"])?;
            for (poly, rec) in records {
                let params: Vec<String> = rec.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                w.write_record([
                    poly.to_text(),
                    params.join(";"),
                    rec.gamma.to_string(),
                    rec.bound.to_string(),
                    join(&rec.inferred_orders, " "),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn run_verify(cli: &Cli, v: &VerifyArgs, out: &mut impl Write) -> Outcome {
    let suite: Suite = v.suite.parse()?;
    let config = VerifyConfig { qmax: v.qmax.unwrap_or(suite.default_qmax()), seed: cli.seed };
    let records = verify::run(suite, &config)?;
    let summary = verify::summarize(suite, &records);
    match cli.format {
        Format::Json => {
            for r in &records {
                json_line(out, r)?;
            }
            json_line(out, &json!({ "summary": summary }))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["suite", "params", "expected", "actual", "pass"])?;
            for r in &records {
                w.write_record([
                    r.suite.to_string(),
                    r.params.to_string(),
                    r.expected.to_string(),
                    r.actual.to_string(),
                    r.pass.to_string(),
                ])?;
            }
            w.flush()?;
            drop(w);
            eprintln!("{}", json!({ "summary": summary }));
        }
    }
    if summary.failed > 0 {
        return Err(Failure::Negative);
    }
    Ok(())
}

fn build_code(args: &CodeArgs) -> Result<LrcCode, Error> {
    let field = FieldSpec::parse(&args.field)?;
    let f = Poly::parse(&field, &args.poly)?;
    LrcCode::build(&f, args.k, args.groups)
}

fn parse_message(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("symbol '{}': {e}", t.trim()))))
        .collect()
}

fn run_lrc(cmd: &LrcCommand, out: &mut impl Write) -> Outcome {
    match cmd {
        LrcCommand::Build(args) => {
            let code = build_code(args)?;
            json_line(
                out,
                &json!({
                    "field": code.field().to_string(),
                    "poly": code.polynomial().coeffs(),
                    "n": code.length(),
                    "k": code.dimension(),
                    "r": code.locality(),
                    "designed_distance": code.singleton_bound(),
                    "groups": code.groups(),
                    "points": code.points(),
                    "basis": code.basis(),
                }),
            )
        }
        LrcCommand::Encode { code, msg } => {
            let code = build_code(code)?;
            let word = code.encode(&parse_message(msg)?)?;
            let word: Vec<Option<u32>> = word.into_iter().map(Some).collect();
            json_line(out, &json!({ "codeword": format_word(&word) }))
        }
        LrcCommand::Repair { code, word } => {
            let code = build_code(code)?;
            let mut w = parse_word(word)?;
            let fix = code.local_repair(&w)?;
            w[fix.position] = Some(fix.value);
            json_line(
                out,
                &json!({
                    "position": fix.position,
                    "value": fix.value,
                    "reads": fix.reads,
                    "codeword": format_word(&w),
                }),
            )
        }
        LrcCommand::Decode { code, word } => {
            let code = build_code(code)?;
            let w = parse_word(word)?;
            match code.erasure_decode(&w) {
                Ok(message) => {
                    let full: Vec<Option<u32>> = code.encode(&message)?.into_iter().map(Some).collect();
                    json_line(out, &json!({ "decoded": true, "message": message, "codeword": format_word(&full) }))
                }
                Err(failure) => {
                    json_line(out, &json!({ "decoded": false, "reason": failure.to_string() }))?;
                    Err(Error::Precondition(failure.to_string()).into())
                }
            }
        }
        LrcCommand::Distance(args) => {
            let code = build_code(args)?;
            let d = code.min_distance_bruteforce()?;
            json_line(out, &json!({ "min_distance": d, "designed_distance": code.singleton_bound() }))
        }
    }
}
