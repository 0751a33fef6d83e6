//! Command-line surface: parse a problem file, run one computation, print
//! exact results as text or JSON.
//!
//! Exit codes: 0 success, 1 input error (bad file, bad flags, bad map),
//! 2 internal error.

mod problem;

use clap::{Parser, Subcommand, ValueEnum};
use heightgap_core::error::Error;
use heightgap_core::height::{canonical_height_interval, classify, HeightInterval, Verdict};
use heightgap_core::isotriviality::{isotriviality_verdict, multiplier_invariants, IsotrivialityVerdict};
use heightgap_core::rational::{format_decimal, format_exact, Rational};
use heightgap_core::scan::{scan, PointEnumSpec, ScanReport};
use problem::{parse_problem, ProblemFile};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "heightgap",
    about = "Certified canonical heights for endomorphisms of projective space over Q(t)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Add N-digit decimal renderings (marked with '~' when approximate).
    #[arg(long, global = true, value_name = "N")]
    decimal: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Naive heights of the points in the problem file.
    Height { file: PathBuf },
    /// Certified canonical-height intervals after --iters iterates.
    Hhat {
        file: PathBuf,
        #[arg(long)]
        iters: Option<usize>,
    },
    /// Classify points as preperiodic / positive / undecided.
    Classify {
        file: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Print the first --iters canonical orbit points.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        iters: Option<usize>,
    },
    /// Classify every point of bounded complexity and report gap data.
    #[command(name = "gap-scan")]
    GapScan {
        file: PathBuf,
        #[arg(long)]
        max_deg: Option<usize>,
        #[arg(long)]
        coeff_bound: Option<i64>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Multiplier invariants and the isotriviality verdict (k = 1).
    Isotrivial { file: PathBuf },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(if e.is_internal() { 2 } else { 1 });
        }
    }
}

fn load(path: &PathBuf) -> Result<ProblemFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::syntax(0, 0, format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text)
}

struct Printer {
    format: Format,
    decimal: Option<usize>,
}

impl Printer {
    fn rat(&self, x: &Rational) -> String {
        match self.decimal {
            Some(n) => format!("{} ({})", format_exact(x), format_decimal(x, n)),
            None => format_exact(x),
        }
    }

    fn interval(&self, iv: &HeightInterval) -> String {
        format!(
            "[{}, {}]  (n = {}, C = {})",
            self.rat(&iv.lo),
            self.rat(&iv.hi),
            iv.n_used,
            iv.defect_used
        )
    }

    fn verdict(&self, v: &Verdict) -> String {
        match v {
            Verdict::Preperiodic { tail, period } => {
                format!("preperiodic  tail = {tail}, period = {period}")
            }
            Verdict::PositiveCertified { lower, witness_n } => format!(
                "positive-certified  lower = {}, witness_n = {witness_n}",
                self.rat(lower)
            ),
            Verdict::Undecided { n_max, interval } => format!(
                "undecided  budget = {n_max}, hhat in {}",
                self.interval(interval)
            ),
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<(), Error> {
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| Error::Internal(format!("json: {e}")))?;
        println!("{text}");
        Ok(())
    }
}

#[derive(Serialize)]
struct NamedPointOut<T: Serialize> {
    name: String,
    point: Vec<String>,
    #[serde(flatten)]
    value: T,
}

#[derive(Serialize)]
struct HeightOut {
    height: usize,
}

#[derive(Serialize)]
struct IntervalOut {
    interval: HeightInterval,
}

#[derive(Serialize)]
struct VerdictOut {
    verdict: Verdict,
}

#[derive(Serialize)]
struct OrbitOut {
    points: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CommandOut<T: Serialize> {
    command: &'static str,
    #[serde(flatten)]
    params: T,
}

fn run(cli: &Cli) -> Result<(), Error> {
    let p = Printer {
        format: cli.format,
        decimal: cli.decimal,
    };
    match &cli.command {
        Command::Height { file } => {
            let problem = load(file)?;
            let results: Vec<NamedPointOut<HeightOut>> = problem
                .points
                .iter()
                .map(|(name, x)| NamedPointOut {
                    name: name.clone(),
                    point: x.coord_strings(),
                    value: HeightOut {
                        height: x.naive_height(),
                    },
                })
                .collect();
            match p.format {
                Format::Json => p.emit_json(&CommandOut {
                    command: "height",
                    params: serde_json::json!({ "results": results }),
                })?,
                Format::Text => {
                    for r in &results {
                        println!("{}: h = {}", r.name, r.value.height);
                    }
                }
            }
            Ok(())
        }
        Command::Hhat { file, iters } => {
            let problem = load(file)?;
            let n = iters.or(problem.options.iters).unwrap_or(8).max(1);
            let mut results = Vec::new();
            for (name, x) in &problem.points {
                let interval = canonical_height_interval(&problem.map, x, n)?;
                results.push(NamedPointOut {
                    name: name.clone(),
                    point: x.coord_strings(),
                    value: IntervalOut { interval },
                });
            }
            match p.format {
                Format::Json => p.emit_json(&CommandOut {
                    command: "hhat",
                    params: serde_json::json!({ "iters": n, "results": results }),
                })?,
                Format::Text => {
                    for r in &results {
                        println!("{}: hhat in {}", r.name, p.interval(&r.value.interval));
                    }
                }
            }
            Ok(())
        }
        Command::Classify { file, budget } => {
            let problem = load(file)?;
            let b = budget.or(problem.options.budget).unwrap_or(20).max(1);
            let mut results = Vec::new();
            for (name, x) in &problem.points {
                let verdict = classify(&problem.map, x, b)?;
                results.push(NamedPointOut {
                    name: name.clone(),
                    point: x.coord_strings(),
                    value: VerdictOut { verdict },
                });
            }
            match p.format {
                Format::Json => p.emit_json(&CommandOut {
                    command: "classify",
                    params: serde_json::json!({ "budget": b, "results": results }),
                })?,
                Format::Text => {
                    for r in &results {
                        println!("{}: {}", r.name, p.verdict(&r.value.verdict));
                    }
                }
            }
            Ok(())
        }
        Command::Orbit { file, iters } => {
            let problem = load(file)?;
            let n = iters.or(problem.options.iters).unwrap_or(5);
            let mut results = Vec::new();
            for (name, x) in &problem.points {
                let orbit = problem.map.orbit(x, n)?;
                results.push(NamedPointOut {
                    name: name.clone(),
                    point: x.coord_strings(),
                    value: OrbitOut {
                        points: orbit.iter().map(|y| y.coord_strings()).collect(),
                    },
                });
            }
            match p.format {
                Format::Json => p.emit_json(&CommandOut {
                    command: "orbit",
                    params: serde_json::json!({ "iters": n, "results": results }),
                })?,
                Format::Text => {
                    for r in &results {
                        for (i, pt) in r.value.points.iter().enumerate() {
                            let coords: Vec<String> =
                                pt.iter().map(|c| format!("\"{c}\"")).collect();
                            println!("{}[{}] = [{}]", r.name, i, coords.join(", "));
                        }
                    }
                }
            }
            Ok(())
        }
        Command::GapScan {
            file,
            max_deg,
            coeff_bound,
            budget,
            threads,
        } => {
            let problem = load(file)?;
            let spec = PointEnumSpec {
                k: problem.map.k(),
                max_deg: max_deg.or(problem.options.max_deg).unwrap_or(1),
                coeff_bound: coeff_bound.or(problem.options.coeff_bound).unwrap_or(1),
            };
            let b = budget.or(problem.options.budget).unwrap_or(20).max(1);
            let workers = threads.or(problem.options.threads).unwrap_or(1).max(1);
            let report = scan(&problem.map, &spec, b, workers)?;
            match p.format {
                Format::Json => p.emit_json(&CommandOut {
                    command: "gap-scan",
                    params: serde_json::json!({
                        "max_deg": spec.max_deg,
                        "coeff_bound": spec.coeff_bound,
                        "budget": b,
                        "report": report,
                    }),
                })?,
                Format::Text => print_report(&p, &spec, b, &report),
            }
            Ok(())
        }
        Command::Isotrivial { file } => {
            let problem = load(file)?;
            let verdict = isotriviality_verdict(&problem.map)?;
            let sigmas: Vec<String> = if problem.map.degree() == 2 {
                let inv = multiplier_invariants(&problem.map)?;
                vec![
                    inv.sigma1.to_string(),
                    inv.sigma2.to_string(),
                    inv.sigma3.to_string(),
                ]
            } else {
                Vec::new()
            };
            match p.format {
                Format::Json => {
                    let verdict_json = match &verdict {
                        IsotrivialityVerdict::Isotrivial => {
                            serde_json::json!({ "kind": "isotrivial" })
                        }
                        IsotrivialityVerdict::NonIsotrivial { witness } => serde_json::json!({
                            "kind": "non_isotrivial",
                            "witness": format!("sigma{witness}"),
                        }),
                        IsotrivialityVerdict::Inconclusive { reason } => serde_json::json!({
                            "kind": "inconclusive",
                            "reason": reason,
                        }),
                    };
                    p.emit_json(&CommandOut {
                        command: "isotrivial",
                        params: serde_json::json!({
                            "sigmas": sigmas,
                            "verdict": verdict_json,
                        }),
                    })?;
                }
                Format::Text => {
                    for (i, s) in sigmas.iter().enumerate() {
                        println!("sigma{} = {}", i + 1, s);
                    }
                    match &verdict {
                        IsotrivialityVerdict::Isotrivial => println!("verdict: isotrivial"),
                        IsotrivialityVerdict::NonIsotrivial { witness } => {
                            println!("verdict: non-isotrivial (witness sigma{witness})")
                        }
                        IsotrivialityVerdict::Inconclusive { reason } => {
                            println!("verdict: inconclusive ({reason})")
                        }
                    }
                }
            }
            Ok(())
        }
    }
}

fn print_report(p: &Printer, spec: &PointEnumSpec, budget: usize, report: &ScanReport) {
    println!(
        "scanned {} points (max_deg = {}, coeff_bound = {}, budget = {})",
        report.total, spec.max_deg, spec.coeff_bound, budget
    );
    println!("  preperiodic:        {}", report.preperiodic);
    println!("  positive-certified: {}", report.positive_certified);
    println!("  undecided:          {}", report.undecided);
    match &report.min_positive_lower {
        Some(m) => println!("  min positive lower bound: {}", p.rat(m)),
        None => println!("  min positive lower bound: (none certified)"),
    }
    for entry in &report.undecided_points {
        println!(
            "  undecided: {} with hhat in {}",
            entry.point,
            p.interval(&entry.interval)
        );
    }
    println!("  wall time: {} ms", report.wall_ms);
}
