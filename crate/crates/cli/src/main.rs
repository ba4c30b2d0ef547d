//! `persalg`: barcodes, interval bifunctors, Künneth and universal-coefficient
//! checks, product filtrations and the oracle equivalence suite.
//!
//! Results go to standard output as JSON. Failures print
//! `{"error": kind, "message": text}` on standard error and exit with 1 for
//! malformed input, 2 for an unsupported interval shape and 3 when two
//! computations that must agree do not.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use persalg::check::{run_check, CheckConfig};
use persalg::complex::{chain_complex, coefficient_change, persistence, verify_kunneth, FilteredComplex, FreeChainComplex, ProductMode, Variance};
use persalg::interval::{self, parse_rational};
use persalg::oracle::{Fp, PRIME_ENV};
use persalg::{Bifunctor, Error, GradedBarcode, Interval, Mode};

const EXIT_PARSE: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

const OPS: [&str; 12] = [
    "gr_tensor",
    "sh_tensor",
    "underline_hom",
    "sheaf_hom",
    "hom_dim",
    "gr_tor1",
    "gr_ext1",
    "sh_ext1",
    "matlis_dual",
    "sheaf_dual",
    "classify",
    "translate",
];

#[derive(Parser, Debug)]
#[command(name = "persalg", version, about = "Homological algebra of persistence modules")]
struct Cli {
    /// Print barcodes as plain text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Persistent homology of a filtration file.
    Barcode { file: PathBuf },

    /// Evaluate an interval operation, e.g. `op gr_tensor "[0,2)" "[0,3)"`.
    Op {
        #[arg(value_parser = PossibleValuesParser::new(OPS))]
        name: String,
        /// Intervals, then a rational shift for `translate`.
        #[arg(allow_hyphen_values = true, num_args = 1..=2, required = true)]
        args: Vec<String>,
    },

    /// Compare the homology of a product against the Künneth prediction.
    Kunneth {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_parser = PossibleValuesParser::new(["graded", "sheaf"]))]
        mode: String,
    },

    /// Homology or cohomology with interval coefficients, by formula and directly.
    Uct {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        coef: String,
        #[arg(long, value_parser = PossibleValuesParser::new(["tensor", "hom"]))]
        variance: String,
        #[arg(long, value_parser = PossibleValuesParser::new(["graded", "sheaf"]))]
        mode: String,
    },

    /// Write the product filtration of two filtration files.
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_parser = PossibleValuesParser::new(["additive", "max"]))]
        mode: String,
        /// Destination file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },

    /// Closed forms against the grid oracle on random integer intervals.
    Check {
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Field prime; repeatable. Defaults to PERSALG_PRIME if set, else 2 and 5.
        #[arg(long = "prime")]
        primes: Vec<u32>,
    },
}

/// A failure together with the exit status it maps to.
struct Failure {
    code: u8,
    body: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedShape { .. } => EXIT_UNSUPPORTED,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            body: json!({ "error": e.kind(), "message": e.to_string() }),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_PARSE,
        body: json!({ "error": "io", "message": format!("{}: {e}", path.display()) }),
    }
}

fn mismatch(body: Value) -> Failure {
    Failure {
        code: EXIT_MISMATCH,
        body,
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let body = json!({ "error": "usage", "message": e.to_string().trim_end() });
            eprintln!("{body}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    match run(&cli) {
        Ok(out) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.body);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Barcode { file } => {
            let k = load(file, Fp::from_env()?)?;
            Ok(render(&persistence(&k), cli.pretty))
        }
        Command::Op { name, args } => op(name, args),
        Command::Kunneth { first, second, mode } => {
            let field = Fp::from_env()?;
            let (k, l) = (load(first, field)?, load(second, field)?);
            let report = verify_kunneth(&k, &l, mode.parse::<Mode>()?)?;
            let out = if cli.pretty {
                format!(
                    "product:   {}\npredicted: {}\nverdict:   {}",
                    report.product,
                    report.predicted,
                    report.verdict()
                )
            } else {
                report.to_json().to_string()
            };
            if report.verdict() {
                Ok(out)
            } else {
                Err(mismatch(report.to_json()))
            }
        }
        Command::Uct {
            file,
            coef,
            variance,
            mode,
        } => {
            let k = load(file, Fp::from_env()?)?;
            let a: Interval = coef.parse()?;
            let c = coefficient_change(&k, &a, variance.parse::<Variance>()?, mode.parse::<Mode>()?)?;
            let out = if cli.pretty {
                format!("formula: {}\ndirect:  {}\nagree:   {}", c.formula, c.direct, c.agree())
            } else {
                c.to_json().to_string()
            };
            if c.agree() {
                Ok(out)
            } else {
                Err(mismatch(c.to_json()))
            }
        }
        Command::Product {
            first,
            second,
            mode,
            output,
        } => {
            let (x, y) = (read_filtration(first)?, read_filtration(second)?);
            let text = x.product(&y, mode.parse::<ProductMode>()?).to_string();
            match output {
                Some(path) => {
                    fs::write(path, &text).map_err(|e| io_failure(path, e))?;
                    Ok(json!({ "written": path.display().to_string() }).to_string())
                }
                None => Ok(text.trim_end().to_string()),
            }
        }
        Command::Check { cases, seed, primes } => {
            let primes = if !primes.is_empty() {
                primes.clone()
            } else if std::env::var_os(PRIME_ENV).is_some() {
                vec![Fp::from_env()?.prime()]
            } else {
                vec![2, 5]
            };
            for &p in &primes {
                Fp::new(p)?;
            }
            let report = run_check(&CheckConfig::new(*cases, *seed, primes))?;
            if report.passed() {
                Ok(report.to_json().to_string())
            } else {
                Err(mismatch(report.to_json()))
            }
        }
    }
}

fn read_filtration(path: &Path) -> std::result::Result<FilteredComplex, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(text.parse()?)
}

fn load(path: &Path, field: Fp) -> std::result::Result<FreeChainComplex, Failure> {
    Ok(chain_complex(&read_filtration(path)?, field)?)
}

fn render(b: &GradedBarcode, pretty: bool) -> String {
    if !pretty {
        return b.to_json().to_string();
    }
    if b.is_empty() {
        return "(empty)".into();
    }
    b.degrees()
        .map(|(d, bars)| {
            let items: Vec<String> = bars.iter().map(ToString::to_string).collect();
            format!("H{d}: {}", items.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn op(name: &str, args: &[String]) -> Outcome {
    let arity = match name {
        "matlis_dual" | "sheaf_dual" | "classify" => 1,
        _ => 2,
    };
    if args.len() != arity {
        return Err(Failure::from(Error::Parse(format!(
            "{name} takes {arity} argument{}, got {}",
            if arity == 1 { "" } else { "s" },
            args.len()
        ))));
    }
    let i: Interval = args[0].parse()?;
    let second = || args[1].parse::<Interval>();
    Ok(match name {
        "matlis_dual" => interval::matlis_dual(&i).to_string(),
        "sheaf_dual" => interval::sheaf_dual(&i)?.to_string(),
        "classify" => {
            let c = interval::classify(&i);
            json!({ "injective": c.injective, "projective": c.projective, "flat": c.flat }).to_string()
        }
        "translate" => interval::translate(&i, parse_rational(&args[1])?).to_string(),
        "hom_dim" => interval::hom_dim(&i, &second()?)?.to_string(),
        _ => name.parse::<Bifunctor>()?.apply(&i, &second()?)?.to_string(),
    })
}
