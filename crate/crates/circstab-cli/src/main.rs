use circstab::graph::{parse_elements, ConnectionSet};
use circstab::twofold::{classify, Mode};
use circstab::Error;
use circstab_cli::probe::conjecture_probe;
use circstab_cli::suites::{run_suite, Check};
use circstab_cli::survey::{candidate_sets, even_squarefree_upto, survey_sets, SetSelection, Summary};
use circstab_cli::{exit_code, node_budget_from_env, with_pool, EXIT_FALSIFIED, EXIT_OK};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "circstab", version, about = "Stability of circulant graphs Cay(Z_n, S)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Criteria,
    Oracle,
    CrossCheck,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Criteria => Mode::Criteria,
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::CrossCheck => Mode::CrossCheck,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Alpha,
    Chains,
    Replacement,
    Schur,
    Cohomology,
    All,
}

impl SuiteArg {
    fn name(self) -> &'static str {
        match self {
            SuiteArg::Alpha => "alpha",
            SuiteArg::Chains => "chains",
            SuiteArg::Replacement => "replacement",
            SuiteArg::Schur => "schur",
            SuiteArg::Cohomology => "cohomology",
            SuiteArg::All => "all",
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Selection {
    /// Every nonempty symmetric set.
    #[arg(long)]
    all_sets: bool,
    /// k distinct sets drawn uniformly.
    #[arg(long, value_name = "K")]
    sample: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one circulant; prints a JSON verdict.
    Classify {
        n: usize,
        /// Comma-separated connection set, e.g. 1,2,8,9.
        set: String,
        #[arg(long, value_enum, default_value = "cross-check")]
        mode: ModeArg,
    },
    /// Cross-check criteria against the oracle over many sets; JSON lines on stdout, summary on stderr.
    Survey {
        #[arg(long, required_unless_present = "even_squarefree_upto", conflicts_with = "even_squarefree_upto")]
        n: Option<usize>,
        /// Every even square-free n up to N.
        #[arg(long, value_name = "N")]
        even_squarefree_upto: Option<usize>,
        #[command(flatten)]
        selection: Selection,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        parallel: usize,
        /// Add elapsed_ms to each record (breaks byte-identical reruns).
        #[arg(long)]
        timing: bool,
    },
    /// Run verification suites; JSON lines on stdout, exit 3 on any failure.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        parallel: usize,
    },
    /// Look for unstable sets explained by neither criterion and test Cay(Z_n, S) ≅ Cay(Z_n, S + n/2).
    ConjectureProbe {
        /// Moduli n = 2m with m odd, comma-separated.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n: Vec<usize>,
        #[arg(long, value_name = "K")]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        parallel: usize,
    },
}

fn selection(all_sets: bool, sample: Option<usize>, seed: u64) -> SetSelection {
    match sample {
        Some(k) if !all_sets => SetSelection::Sample { k, seed },
        _ => SetSelection::All,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    node_budget_from_env()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let io_err = |e: io::Error| Error::Invalid(format!("write failed: {e}"));
    match cli.command {
        Command::Classify { n, set, mode } => {
            let s = ConnectionSet::new(n, parse_elements(&set)?)?;
            let verdict = classify(&s, mode.into())?;
            writeln!(out, "{}", serde_json::to_string(&verdict).expect("verdict serializes")).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Survey { n, even_squarefree_upto: upto, selection: sel, seed, parallel, timing } => {
            let moduli = match (n, upto) {
                (Some(n), _) => vec![n],
                (None, Some(u)) => even_squarefree_upto(u),
                (None, None) => unreachable!("clap requires one of --n, --even-squarefree-upto"),
            };
            let choice = selection(sel.all_sets, sel.sample, seed);
            let mut sets = Vec::new();
            for &n in &moduli {
                sets.extend(candidate_sets(n, choice)?);
            }
            let results = with_pool(parallel, || survey_sets(&sets, timing))?;
            let mut summary = Summary::default();
            let mut failure = None;
            for (s, r) in results {
                match r {
                    Ok(rec) => {
                        summary.add(&rec);
                        writeln!(out, "{}", serde_json::to_string(&rec).expect("record serializes")).map_err(io_err)?;
                    }
                    Err(e) => {
                        failure = Some((s, e));
                        break;
                    }
                }
            }
            out.flush().map_err(io_err)?;
            eprint!("{}", summary.table());
            match failure {
                Some((s, e)) => {
                    eprintln!("error at {s}: {e}");
                    Ok(exit_code(&e))
                }
                None => Ok(EXIT_OK),
            }
        }
        Command::Verify { suite, parallel } => {
            let checks: Vec<Check> = with_pool(parallel, || run_suite(suite.name()))??;
            let mut failed = 0;
            for c in &checks {
                failed += !c.passed as usize;
                writeln!(out, "{}", serde_json::to_string(c).expect("check serializes")).map_err(io_err)?;
            }
            out.flush().map_err(io_err)?;
            let mut suites: Vec<&str> = checks.iter().map(|c| c.suite.as_str()).collect();
            suites.dedup();
            eprintln!("{:<12}  {:>7}  {:>7}", "suite", "passed", "failed");
            for name in suites {
                let (p, f) = checks.iter().filter(|c| c.suite == name).fold((0, 0), |(p, f), c| if c.passed { (p + 1, f) } else { (p, f + 1) });
                eprintln!("{name:<12}  {p:>7}  {f:>7}");
            }
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FALSIFIED })
        }
        Command::ConjectureProbe { n, sample, seed, parallel } => {
            let report = with_pool(parallel, || conjecture_probe(&n, selection(false, sample, seed)))??;
            writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes")).map_err(io_err)?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
