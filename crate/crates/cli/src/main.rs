//! `ramsum`: Ramanujan-sum values and tables, identity verification suites,
//! truncated expansion convergence reports, and the sigma* mean-value check.
//!
//! Machine-readable output only: every stdout payload is JSON (or CSV for
//! `table --format csv`); diagnostics go to stderr. Exit codes: 0 success,
//! 1 domain/resource error, 2 usage error, 3 verification failure.

mod json;

use clap::{Parser, Subcommand, ValueEnum};
use json::JVal;
use ramsum_core::analytic::mean_value_sigma_star;
use ramsum_core::expand::{evaluate_expansion, ExpansionSpec, GChoice};
use ramsum_core::ramanujan::{c_value, SumFamily};
use ramsum_core::verify::{run_suites, Suite, SuiteReport};
use ramsum_core::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "ramsum", version, about = "Ramanujan sums, unitary variants, and their series expansions")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Classical c_q(n)
    C,
    /// Unitary c*_q(n)
    Cstar,
    /// Modified unitary c~_q(n)
    Ctilde,
    /// Bi-unitary c**_q(n)
    Cstarstar,
}

impl FamilyArg {
    fn to_family(self) -> SumFamily {
        match self {
            FamilyArg::C => SumFamily::Classical,
            FamilyArg::Cstar => SumFamily::Unitary,
            FamilyArg::Ctilde => SumFamily::ModifiedUnitary,
            FamilyArg::Cstarstar => SumFamily::BiUnitary,
        }
    }
    fn name(self) -> &'static str {
        match self {
            FamilyArg::C => "c",
            FamilyArg::Cstar => "cstar",
            FamilyArg::Ctilde => "ctilde",
            FamilyArg::Cstarstar => "cstarstar",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ExpFamilyArg {
    Modified,
    Unitary,
    Classical,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GArg {
    SigmaStar,
    PhiStar,
    OmegaPower,
    SigmaClassical,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Holder,
    DivisorSum,
    AbsIdentity,
    Recurrence,
    Multiplicativity,
    BiunitaryWitness,
    Coefficients,
    All,
}

impl SuiteArg {
    fn to_suite(self) -> Suite {
        match self {
            SuiteArg::Holder => Suite::Holder,
            SuiteArg::DivisorSum => Suite::DivisorSum,
            SuiteArg::AbsIdentity => Suite::AbsIdentity,
            SuiteArg::Recurrence => Suite::Recurrence,
            SuiteArg::Multiplicativity => Suite::Multiplicativity,
            SuiteArg::BiunitaryWitness => Suite::BiunitaryWitness,
            SuiteArg::Coefficients => Suite::Coefficients,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one Ramanujan sum and print the integer value
    Sum {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// Emit the value matrix over q <= q-max, n <= n-max
    Table {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long = "q-max")]
        q_max: u64,
        #[arg(long = "n-max")]
        n_max: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Evaluate a truncated expansion and report its convergence
    Expand {
        #[arg(long, value_enum, default_value = "sigma-star")]
        g: GArg,
        #[arg(long, value_enum, default_value = "modified")]
        family: ExpFamilyArg,
        /// Real order s for sigma-star / phi-star
        #[arg(long, allow_negative_numbers = true)]
        s: Option<f64>,
        /// Integer order m >= 2 for omega-power
        #[arg(long)]
        m: Option<u64>,
        /// Dimension; defaults to the length of --n
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated target tuple n1,...,nk
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long = "q-max")]
        q_max: u64,
        /// Include partial sums at q-max/4 and q-max/2
        #[arg(long)]
        checkpoints: bool,
        /// Parallel evaluation (deterministic only to ~1e-12 relative)
        #[arg(long)]
        parallel: bool,
        /// Include wall-clock timing in the report (breaks byte-for-byte
        /// reproducibility between runs)
        #[arg(long)]
        timing: bool,
    },
    /// Run identity suites; exit 0 iff everything passes
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 200)]
        bound: u64,
    },
    /// Exact partial sum of sigma* against its asymptotic main term
    Meanvalue {
        #[arg(long)]
        x: u64,
    },
}

fn envelope(command: &str, parameters: JVal, results: JVal, status: &str) -> String {
    let mut e = JVal::obj();
    e.push("command", command)
        .push("parameters", parameters)
        .push("results", results)
        .push("status", status)
        .push("version", VERSION);
    e.render()
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    match cli.cmd {
        Command::Sum { family, q, n } => {
            let v = c_value(family.to_family(), q, n)?;
            println!("{v}");
            Ok(0)
        }
        Command::Table {
            family,
            q_max,
            n_max,
            format,
        } => {
            if q_max == 0 || n_max == 0 {
                usage_error("table requires q-max >= 1 and n-max >= 1");
            }
            let fam = family.to_family();
            // Bi-unitary cells can be complex-valued; those render as null
            // (JSON) or an empty cell (CSV).
            let cell = |q: u64, n: u64| -> Result<Option<i128>, Error> {
                match c_value(fam, q, n) {
                    Ok(v) => Ok(Some(v)),
                    Err(Error::Precision(_)) => Ok(None),
                    Err(e) => Err(e),
                }
            };
            match format {
                FormatArg::Csv => {
                    let mut out = String::from("q");
                    for n in 1..=n_max {
                        out.push_str(&format!(",n={n}"));
                    }
                    out.push('\n');
                    for q in 1..=q_max {
                        out.push_str(&q.to_string());
                        for n in 1..=n_max {
                            match cell(q, n)? {
                                Some(v) => out.push_str(&format!(",{v}")),
                                None => out.push(','),
                            }
                        }
                        out.push('\n');
                    }
                    print!("{out}");
                }
                FormatArg::Json => {
                    let rows: Vec<JVal> = (1..=q_max)
                        .map(|q| {
                            (1..=n_max)
                                .map(|n| {
                                    Ok(match cell(q, n)? {
                                        Some(v) => JVal::Int(v),
                                        None => JVal::Null,
                                    })
                                })
                                .collect::<Result<Vec<JVal>, Error>>()
                                .map(JVal::Arr)
                        })
                        .collect::<Result<_, Error>>()?;
                    let mut params = JVal::obj();
                    params
                        .push("family", family.name())
                        .push("q_max", q_max)
                        .push("n_max", n_max);
                    let mut results = JVal::obj();
                    results.push("rows", rows);
                    println!("{}", envelope("table", params, results, "value"));
                }
            }
            Ok(0)
        }
        Command::Expand {
            g,
            family,
            s,
            m,
            k,
            n,
            q_max,
            checkpoints,
            parallel,
            timing,
        } => {
            if let Some(k) = k {
                if k != n.len() {
                    usage_error(&format!(
                        "--k {k} does not match the {} entries of --n",
                        n.len()
                    ));
                }
            }
            let g_choice = match g {
                GArg::SigmaStar => {
                    if m.is_some() {
                        usage_error("--m applies to omega-power only");
                    }
                    GChoice::SigmaStar { s: s.unwrap_or(1.0) }
                }
                GArg::PhiStar => {
                    if m.is_some() {
                        usage_error("--m applies to omega-power only");
                    }
                    GChoice::PhiStar { s: s.unwrap_or(1.0) }
                }
                GArg::OmegaPower => {
                    if s.is_some() {
                        usage_error("omega-power takes --m, not --s");
                    }
                    match m {
                        Some(m) => GChoice::OmegaPower { m },
                        None => usage_error("omega-power requires --m"),
                    }
                }
                GArg::SigmaClassical => {
                    if s.is_some() || m.is_some() {
                        usage_error("sigma-classical takes neither --s nor --m");
                    }
                    GChoice::SigmaClassical
                }
            };
            let fam = match family {
                ExpFamilyArg::Modified => SumFamily::ModifiedUnitary,
                ExpFamilyArg::Unitary => SumFamily::Unitary,
                ExpFamilyArg::Classical => SumFamily::Classical,
            };
            let mut spec = ExpansionSpec::new(fam, g_choice, n.clone(), q_max);
            spec.with_checkpoints = checkpoints;
            spec.parallel = parallel;
            let report = evaluate_expansion(&spec)?;

            let mut params = JVal::obj();
            params.push(
                "g",
                match g {
                    GArg::SigmaStar => "sigma-star",
                    GArg::PhiStar => "phi-star",
                    GArg::OmegaPower => "omega-power",
                    GArg::SigmaClassical => "sigma-classical",
                },
            );
            match g_choice {
                GChoice::SigmaStar { s } | GChoice::PhiStar { s } => {
                    params.push("s", s);
                }
                GChoice::OmegaPower { m } => {
                    params.push("m", m);
                }
                GChoice::SigmaClassical => {}
            }
            params
                .push(
                    "family",
                    match family {
                        ExpFamilyArg::Modified => "modified",
                        ExpFamilyArg::Unitary => "unitary",
                        ExpFamilyArg::Classical => "classical",
                    },
                )
                .push("k", spec.k)
                .push(
                    "n",
                    JVal::Arr(n.iter().map(|&v| JVal::from(v)).collect()),
                )
                .push("q_max", q_max)
                .push("checkpoints", checkpoints)
                .push("parallel", parallel);

            let mut results = JVal::obj();
            results.push(
                "determinism",
                if parallel {
                    "reproducible to ~1e-12 relative"
                } else {
                    "bitwise"
                },
            );
            results.push("lhs_exact", report.lhs_exact);
            let cps: Vec<JVal> = report
                .checkpoints
                .iter()
                .map(|c| {
                    let mut o = JVal::obj();
                    o.push("q_max", c.q_max)
                        .push("partial_sum", c.partial_sum)
                        .push("abs_error", c.abs_error);
                    o
                })
                .collect();
            results.push("checkpoints", cps);
            results.push(
                "tail_bound_k1",
                report.tail_bound_k1.map_or(JVal::Null, JVal::Float),
            );
            results.push(
                "doubling_estimate",
                report.doubling_estimate.map_or(JVal::Null, JVal::Float),
            );
            results.push("terms_evaluated", report.terms_evaluated);
            if timing {
                results.push(
                    "wall_time_ms",
                    report.wall_time.as_secs_f64() * 1e3,
                );
            }
            println!("{}", envelope("expand", params, results, "value"));
            Ok(0)
        }
        Command::Verify { suite, bound } => {
            let reports = run_suites(suite.to_suite(), bound)?;
            let all_passed = reports.iter().all(|r| r.passed);
            let mut params = JVal::obj();
            params
                .push("suite", suite.to_suite().name())
                .push("bound", bound);
            let mut results = JVal::obj();
            results.push(
                "suites",
                reports.iter().map(suite_to_json).collect::<Vec<JVal>>(),
            );
            println!(
                "{}",
                envelope(
                    "verify",
                    params,
                    results,
                    if all_passed { "pass" } else { "fail" }
                )
            );
            Ok(if all_passed { 0 } else { 3 })
        }
        Command::Meanvalue { x } => {
            let r = mean_value_sigma_star(x)?;
            let mut params = JVal::obj();
            params.push("x", x);
            let mut results = JVal::obj();
            results
                .push("partial_sum", r.partial_sum)
                .push("main_term", r.main_term)
                .push("ratio", r.ratio);
            println!("{}", envelope("meanvalue", params, results, "value"));
            Ok(0)
        }
    }
}

fn suite_to_json(r: &SuiteReport) -> JVal {
    let mut o = JVal::obj();
    o.push("suite", r.suite.as_str())
        .push("passed", r.passed)
        .push("checks", r.checks)
        .push(
            "first_counterexample",
            r.first_counterexample
                .as_ref()
                .map_or(JVal::Null, |s| JVal::from(s.as_str())),
        )
        .push(
            "notes",
            JVal::Arr(r.notes.iter().map(|s| JVal::from(s.as_str())).collect()),
        );
    o
}

fn usage_error(msg: &str) -> ! {
    eprintln!("usage error: {msg}");
    std::process::exit(2);
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
