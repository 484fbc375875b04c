use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chowring::classes;
use chowring::combinatorics::Partition;
use chowring::localization::{self, LocalizationError, TARGET_VAR};
use chowring::membership::{self, MembershipError, DEFAULT_SLICE_BOUND};
use chowring::presentation::{self, PresentationError};
use chowring::verify::{self, Status};
use chowring::{parse_polynomial, CoefficientRing, Integers, IntegersMod, Polynomial};

const MAX_N: usize = 4;
const MAX_D: u32 = 5;

#[derive(Parser)]
#[command(name = "chowring", version, about = "Exact Chow-ring computations for spaces of hypersurfaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Coefficient ring: Z, Q, Fp (with --modulus) or F7 / Z/7.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Prime modulus; shorthand for --ring Fp.
    #[arg(long, global = true)]
    modulus: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Lift the n <= 4, d <= 5 size guard.
    #[arg(long, global = true)]
    unsafe_sizes: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct Size {
    /// Number of homogeneous variables (hypersurfaces in P^(n-1)).
    #[arg(long)]
    n: usize,
    /// Degree of the hypersurfaces.
    #[arg(long)]
    d: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Print the alpha classes generating the singular-locus ideal.
    Alpha(Size),
    /// Print the class of the locus of forms factoring with degrees mu.
    Delta {
        #[command(flatten)]
        size: Size,
        /// Partition of d, e.g. `1,2`.
        #[arg(long)]
        mu: String,
    },
    /// Print the Chow-ring presentation for a supported (n, d).
    Presentation(Size),
    /// Decide membership of a polynomial in an ideal, with a certificate.
    Member {
        #[command(flatten)]
        size: Size,
        /// Target polynomial in h, c1..cn.
        #[arg(long)]
        target: String,
        /// `alpha`, `presentation`, or polynomials separated by `;`.
        #[arg(long, default_value = "alpha")]
        generators: String,
    },
    /// Run the self-check suite.
    Verify {
        /// Restrict to a group (e.g. main-theorem) or an id prefix.
        #[arg(long)]
        only: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Exactness(String),
    Verification,
}

impl From<LocalizationError> for Failure {
    fn from(e: LocalizationError) -> Self {
        if e.is_exactness_diagnostic() {
            Failure::Exactness(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<MembershipError> for Failure {
    fn from(e: MembershipError) -> Self {
        if e.is_exactness_diagnostic() {
            Failure::Exactness(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::Localization(l) => l.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Exactness(msg)) => {
            eprintln!("exactness diagnostic: {msg}");
            ExitCode::from(3)
        }
    }
}

fn coefficient_ring(cli: &Cli) -> Result<CoefficientRing, Failure> {
    let from_modulus = |p: u64| -> Result<CoefficientRing, Failure> {
        let r = IntegersMod::new(p).map_err(usage)?;
        if !r.is_field() {
            return Err(usage(format!("modulus {p} is not prime")));
        }
        Ok(CoefficientRing::IntegersMod(p))
    };
    match (cli.ring.as_deref(), cli.modulus) {
        (None, None) => Ok(CoefficientRing::Integers),
        (None | Some("Fp") | Some("F_p"), Some(p)) => from_modulus(p),
        (Some("Fp") | Some("F_p"), None) => Err(usage("--ring Fp needs --modulus")),
        (Some(r), m) => {
            let ring: CoefficientRing = r.parse().map_err(usage)?;
            match (ring, m) {
                (CoefficientRing::IntegersMod(p), _) => from_modulus(p),
                (_, Some(_)) => Err(usage("--modulus conflicts with --ring")),
                (ring, None) => Ok(ring),
            }
        }
    }
}

fn check_size(cli: &Cli, size: &Size) -> Result<(), Failure> {
    if size.n < 2 || size.d < 2 {
        return Err(usage("need n >= 2 and d >= 2"));
    }
    if !cli.unsafe_sizes && (size.n > MAX_N || size.d > MAX_D) {
        return Err(usage(format!(
            "n = {}, d = {} exceeds the default bounds n <= {MAX_N}, d <= {MAX_D}; pass --unsafe-sizes to continue",
            size.n, size.d
        )));
    }
    Ok(())
}

/// A polynomial rendered in the requested ring: integer classes are
/// reduced modulo p over F_p and unchanged over Q.
struct Rendered {
    text: String,
    latex: String,
    json: Value,
}

fn render(p: &Polynomial, ring: CoefficientRing) -> Rendered {
    let to_value = |j| serde_json::to_value(j).expect("serializable");
    match ring {
        CoefficientRing::IntegersMod(m) => {
            let q = p.to_modular(IntegersMod::new(m).expect("checked modulus"));
            Rendered {
                text: q.to_string(),
                latex: q.to_latex(),
                json: to_value(q.to_json()),
            }
        }
        CoefficientRing::Rationals => {
            let q = p.to_rationals();
            Rendered {
                text: q.to_string(),
                latex: q.to_latex(),
                json: to_value(q.to_json()),
            }
        }
        CoefficientRing::Integers => Rendered {
            text: p.to_string(),
            latex: p.to_latex(),
            json: to_value(p.to_json()),
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let ring = coefficient_ring(cli)?;
    match &cli.command {
        Command::Alpha(size) => {
            check_size(cli, size)?;
            let alphas = classes::alpha_generators(size.n, size.d, TARGET_VAR).map_err(usage)?;
            let rendered: Vec<Rendered> = alphas.iter().map(|a| render(a, ring)).collect();
            Ok(match cli.format {
                Format::Text => rendered
                    .iter()
                    .enumerate()
                    .map(|(i, r)| format!("alpha{} = {}\n", i + 1, r.text))
                    .collect(),
                Format::Latex => rendered
                    .iter()
                    .enumerate()
                    .map(|(i, r)| format!("\\alpha_{{{}}} = {}\n", i + 1, r.latex))
                    .collect(),
                Format::Json => pretty(&json!({
                    "schema": "chowring.alpha/1",
                    "n": size.n,
                    "d": size.d,
                    "ring": ring.to_string(),
                    "alpha": rendered.iter().map(|r| r.json.clone()).collect::<Vec<_>>(),
                })),
            })
        }
        Command::Delta { size, mu } => {
            check_size(cli, size)?;
            let mu: Partition = mu.parse().map_err(usage)?;
            let class = localization::delta_class(size.n, size.d, &mu)?;
            let r = render(&class.polynomial, ring);
            Ok(match cli.format {
                Format::Text => format!("delta{} = {}\n", mu, r.text),
                Format::Latex => format!("\\delta_{{{}}} = {}\n", mu.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(","), r.latex),
                Format::Json => pretty(&json!({
                    "schema": "chowring.delta/1",
                    "n": size.n,
                    "d": size.d,
                    "mu": mu.parts(),
                    "ring": ring.to_string(),
                    "fixed_points": class.summands,
                    "class": r.json,
                })),
            })
        }
        Command::Presentation(size) => {
            check_size(cli, size)?;
            let p = presentation::presentation(size.n, size.d)?;
            if ring != CoefficientRing::Integers {
                return Err(usage("presentations are integral; --ring and --modulus apply to alpha, delta and member"));
            }
            Ok(match cli.format {
                Format::Text => p.to_text(),
                Format::Latex => p.to_latex(),
                Format::Json => pretty(&serde_json::to_value(p.to_json()).expect("serializable")),
            })
        }
        Command::Member { size, target, generators } => {
            check_size(cli, size)?;
            let ctx = classes::c_context(&[TARGET_VAR], size.n);
            let target = parse_polynomial(target, &ctx, Integers).map_err(usage)?;
            let gens: Vec<Polynomial> = match generators.as_str() {
                "alpha" => classes::alpha_generators(size.n, size.d, TARGET_VAR).map_err(usage)?,
                "presentation" => presentation::presentation(size.n, size.d)?
                    .relations
                    .into_iter()
                    .map(|r| r.polynomial)
                    .collect(),
                list => list
                    .split(';')
                    .map(|g| parse_polynomial(g, &ctx, Integers))
                    .collect::<Result<_, _>>()
                    .map_err(usage)?,
            };
            let report = membership::membership_over(&target, &gens, ring, DEFAULT_SLICE_BOUND)?;
            Ok(match cli.format {
                Format::Json => pretty(&serde_json::to_value(&report).expect("serializable")),
                Format::Text | Format::Latex => {
                    let mut out = format!(
                        "{} over {} in degree {}\n",
                        report.verdict,
                        report.ring,
                        report.degree.map_or("-inf".into(), |d| d.to_string())
                    );
                    out.push_str(&format!(
                        "slice: {} monomials, {} generator multiples, rank {} (augmented {})\n",
                        report.basis_size, report.columns, report.rank, report.augmented_rank
                    ));
                    for (i, c) in report.cofactors.iter().enumerate() {
                        out.push_str(&format!("  cofactor {}: {c}\n", i + 1));
                    }
                    if let (Some(o), Some(w)) = (report.obstruction, &report.witness) {
                        out.push_str(&format!("  obstruction: {o:?}\n  witness: {}\n", w.text));
                    }
                    out
                }
            })
        }
        Command::Verify { only } => {
            if let Some(f) = only {
                if !verify::checks().iter().any(|c| c.matches(f)) {
                    return Err(usage(format!(
                        "no check matches `{f}`; groups are: {}",
                        verify::groups().join(", ")
                    )));
                }
            }
            let report = verify::run(only.as_deref());
            let out = match cli.format {
                Format::Json => pretty(&serde_json::to_value(&report).expect("serializable")),
                Format::Text => verify_text(&report),
                Format::Latex => verify_latex(&report),
            };
            if report.all_passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verification)
            }
        }
    }
}

fn verify_text(report: &verify::VerificationReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        out.push_str(&format!("[{tag}] {}  ({})\n", c.id, c.anchor));
        if c.status == Status::Fail {
            out.push_str(&format!("    computed: {}\n    expected: {}\n", c.computed, c.expected));
        }
    }
    out.push_str(&format!("{} passed, {} failed\n", report.passed, report.failed));
    out
}

fn verify_latex(report: &verify::VerificationReport) -> String {
    let mut out = String::from("\\begin{tabular}{lll}\ncheck & status & description \\\\\n\\hline\n");
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        out.push_str(&format!(
            "\\texttt{{{}}} & {status} & {} \\\\\n",
            c.id,
            c.anchor.replace('_', "\\_").replace('^', "\\^{}")
        ));
    }
    out.push_str("\\end{tabular}\n");
    out
}
