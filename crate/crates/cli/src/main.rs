//! `cantor`: build, run and check Cantor-space automata stored as JSON.
//!
//! Exit codes: 0 success, 2 invalid parameters, letters or files,
//! 3 alphabet mismatch, 4 degenerate run, 5 empty emission blocking a
//! colouring, 6 automaton is not Mealy, 7 search space too large.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cantor_core::{
    build_a, build_b, build_c, check_short_map, colour_tree, decide, enumerate_and_decide, load,
    random_pairs, save, AsyncAutomaton, AutomatonMap, Error, EventuallyPeriodicWord, Property,
    ShortMapViolation, VerdictReport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "cantor",
    version,
    about = "Asynchronous and Mealy automata on Cantor spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an automaton and write it as JSON.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Run an automaton on a finite or eventually periodic word.
    Eval(EvalArgs),
    /// Colour the input tree down to a fixed depth.
    Colour {
        file: PathBuf,
        #[arg(long, default_value = "0")]
        state: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
        format: TreeFormat,
    },
    /// Decide or sample a property and print the verdict as JSON.
    Check {
        file: PathBuf,
        property: Property,
        #[arg(long, default_value = "0")]
        state: String,
        /// Number of sampled pairs (shortmap only).
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Sampler seed (shortmap only).
        #[arg(long, env = "CANTOR_SEED", default_value_t = 0)]
        seed: u64,
        /// Prefix length compared per pair (shortmap only).
        #[arg(long, default_value_t = 64)]
        take: usize,
    },
    /// Enumerate all small Mealy automata and count those with a property.
    Search {
        #[arg(long)]
        x: u32,
        #[arg(long)]
        y: u32,
        #[arg(long)]
        max_states: u32,
        #[arg(long)]
        property: Property,
    },
    /// Print an automaton as a Graphviz diagram.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// The one-state automaton A_n over {0..n}.
    A {
        #[arg(long)]
        n: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The m-state automaton B_m from {0,1} to {0..m}.
    B {
        #[arg(long)]
        m: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The reachable part C of A_n∘B_m.
    C {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The composition of two automaton files, first one applied first.
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EvalArgs {
    file: PathBuf,
    #[arg(long, default_value = "0")]
    state: String,
    /// Finite input word.
    #[arg(long, conflicts_with_all = ["preperiod", "period"])]
    word: Option<String>,
    #[arg(long, default_value = "")]
    preperiod: String,
    /// Period of an eventually periodic input.
    #[arg(long, required_unless_present = "word")]
    period: Option<String>,
    /// Output prefix length for an infinite input.
    #[arg(long, conflicts_with = "exact")]
    take: Option<usize>,
    /// Print the output as an exact eventually periodic word.
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::AlphabetMismatch { .. } => 3,
            Error::DegenerateRun(_) => 4,
            Error::EmptyEmission { .. } => 5,
            Error::NotMealy => 6,
            Error::SearchSpaceTooLarge { .. } => 7,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<AsyncAutomaton, Failure> {
    let bytes = fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    load(&bytes).map_err(|e| {
        let mut f = Failure::from(e);
        f.code = 2;
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn emit(bytes: &[u8], output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, bytes).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| usage(format!("stdout: {e}"))),
    }
}

fn json_line<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("report serializes");
    bytes.push(b'\n');
    bytes
}

fn build(kind: BuildKind) -> Result<(), Failure> {
    let (automaton, output) = match kind {
        BuildKind::A { n, output } => (build_a(n)?, output),
        BuildKind::B { m, output } => (build_b(m)?, output),
        BuildKind::C { n, m, output } => (build_c(n, m)?, output),
        BuildKind::Compose {
            first,
            second,
            output,
        } => (read(&first)?.compose(&read(&second)?)?, output),
    };
    emit(&save(&automaton), output.as_deref())
}

#[derive(Serialize)]
struct FiniteRun<'a> {
    end: &'a str,
    output: String,
}

#[derive(Serialize)]
struct ExactRun {
    preperiod: String,
    period: String,
}

fn or_epsilon(word: &str) -> &str {
    if word.is_empty() {
        "ε"
    } else {
        word
    }
}

fn eval(args: EvalArgs) -> Result<(), Failure> {
    let a = read(&args.file)?;
    let q = a.resolve_state(&args.state)?;
    let (x, y) = (a.input(), a.output());
    let text = if let Some(word) = &args.word {
        let run = a.run_finite(q, &x.parse(word)?)?;
        let report = FiniteRun {
            end: a.name(run.end_state),
            output: y.format(&run.output),
        };
        match args.format {
            TextFormat::Text => format!(
                "output: {}\nend: {}\n",
                or_epsilon(&report.output),
                report.end
            ),
            TextFormat::Json => String::from_utf8(json_line(&report)).expect("utf-8"),
        }
    } else {
        let period = args.period.as_deref().expect("required by clap");
        let w = EventuallyPeriodicWord::new(x.parse(&args.preperiod)?, x.parse(period)?)?;
        if args.exact {
            let out = a.run_omega_exact(q, &w)?;
            let report = ExactRun {
                preperiod: y.format(out.preperiod()),
                period: y.format(out.period()),
            };
            match args.format {
                TextFormat::Text => format!(
                    "preperiod: {}\nperiod: {}\n",
                    or_epsilon(&report.preperiod),
                    report.period
                ),
                TextFormat::Json => String::from_utf8(json_line(&report)).expect("utf-8"),
            }
        } else {
            let k = args
                .take
                .ok_or_else(|| usage("an infinite input needs --take K or --exact"))?;
            let out = y.format(&a.run_omega_prefix(q, &w, k)?);
            match args.format {
                TextFormat::Text => format!("{out}\n"),
                TextFormat::Json => String::from_utf8(json_line(&out)).expect("utf-8"),
            }
        }
    };
    emit(text.as_bytes(), None)
}

#[derive(Serialize)]
struct ShortMapCheck<'a> {
    property: Property,
    verdict: bool,
    witness: Option<&'a ShortMapViolation>,
    samples: usize,
    seed: u64,
    take: usize,
    violations: usize,
}

fn check(
    file: &Path,
    property: Property,
    state: &str,
    samples: usize,
    seed: u64,
    take: usize,
) -> Result<(), Failure> {
    let a = read(file)?;
    let q = a.resolve_state(state)?;
    if property != Property::Shortmap {
        let verdict = decide(&a, q, property)?;
        return emit(&json_line(&VerdictReport::new(property, &verdict)), None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = random_pairs(a.input(), samples, &mut rng);
    let map = AutomatonMap {
        automaton: &a,
        state: q,
    };
    let report = check_short_map(&pairs, &map, take)?;
    emit(
        &json_line(&ShortMapCheck {
            property,
            verdict: report.holds(),
            witness: report.violations.first(),
            samples,
            seed,
            take,
            violations: report.violations.len(),
        }),
        None,
    )
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { kind } => build(kind),
        Command::Eval(args) => eval(args),
        Command::Colour {
            file,
            state,
            depth,
            format,
        } => {
            let a = read(&file)?;
            let q = a.resolve_state(&state)?;
            let table = colour_tree(&a, q, depth)?;
            match format {
                TreeFormat::Json => emit(&json_line(&table), None),
                TreeFormat::Dot => emit(table.to_dot().as_bytes(), None),
            }
        }
        Command::Check {
            file,
            property,
            state,
            samples,
            seed,
            take,
        } => check(&file, property, &state, samples, seed, take),
        Command::Search {
            x,
            y,
            max_states,
            property,
        } => emit(
            &json_line(&enumerate_and_decide(x, y, max_states, property)?),
            None,
        ),
        Command::Export {
            file,
            format,
            output,
        } => {
            let a = read(&file)?;
            let bytes = match format {
                ExportFormat::Dot => a.to_dot().into_bytes(),
                ExportFormat::Json => save(&a),
            };
            emit(&bytes, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
