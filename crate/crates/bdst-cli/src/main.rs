//! Command-line front end: generate the named point sets, build bounded
//! trees, query the exact solver, run structural checks on minimum spanning
//! trees, and reproduce the extremal ratio bounds.
//!
//! Reports go to standard output as JSON; figures are written as SVG when
//! requested. Exit code 1 flags check violations or a failed reproduction,
//! 2 flags parse and budget errors.

use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use bdst::checks::{
    check_angle_structure, check_chord_bound, check_empty_triangle, check_two_angle,
    verify_result, CheckReport,
};
use bdst::constructions::{ConstructionError, ConstructionName, NamedConstruction};
use bdst::io::{parse_points, print_points, render_svg, TreeReport};
use bdst::{
    bottleneck, compute_emst, degree2_path, degree3_transform, degree4_transform, enforce_degree5,
    exact_bottleneck_tree, ratio, root_at_leaf, BottleneckValue, PointSet,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bdst", version, about = "Bottleneck spanning trees with bounded degree")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write one of the named point sets
    Gen {
        /// square_center, pentagon_center, triangle_center, spider_beta2,
        /// hex_star, lower19 or random
        name: String,
        /// Uniform scale of the construction
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Point count (random only)
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Generator seed (random only)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file, '-' for standard output
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Report the minimum spanning tree of a point file
    Emst {
        /// Point file, '-' for standard input
        file: String,
        /// Also draw the tree to this SVG file
        #[arg(long)]
        svg: Option<String>,
    },
    /// Build a tree of max degree 2, 3 or 4 within the proven factor
    Tree {
        file: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        degree: u8,
        /// Draw the source tree and result as layered SVG
        #[arg(long)]
        svg: Option<String>,
    },
    /// Exact minimum-bottleneck tree under a degree cap (small sets)
    Exact {
        file: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
        degree: u8,
        /// Largest point count to attempt (default 20 for degree 2, else 12)
        #[arg(long)]
        max_exact_n: Option<usize>,
    },
    /// Exact optimum relative to the unconstrained tree bound
    Ratio {
        file: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
        degree: u8,
        #[arg(long)]
        max_exact_n: Option<usize>,
    },
    /// Structural checks on the minimum spanning tree of a point file
    Check {
        file: String,
        #[arg(long = "check", value_enum, default_value_t = CheckKind::All)]
        kind: CheckKind,
    },
    /// Recompute one of the known extremal bounds and compare
    Repro { target: ReproTarget },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Angles,
    Chords,
    TwoAngle,
    EmptyTriangle,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReproTarget {
    Beta2Sqrt7,
    Beta3Sqrt2,
    Beta4Pentagon,
    SpiderBeta2,
}

fn main() -> ExitCode {
    // Default SIGPIPE disposition: `bdst ... | head` should end quietly,
    // not panic on the closed pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Gen { name, radius, n, seed, output } => {
            let name: ConstructionName = name.parse().map_err(|e: ConstructionError| e.to_string())?;
            let gen = NamedConstruction { name, radius, n, seed };
            let ps = gen.generate().map_err(|e| e.to_string())?;
            write_out(&output, &print_points(&ps))?;
            Ok(0)
        }
        Cmd::Emst { file, svg } => {
            let ps = read_points(&file)?;
            let t = compute_emst(&ps).map_err(|e| e.to_string())?;
            let b = bottleneck(&t, &ps).0;
            print_json(&TreeReport::new(&t, &ps, None, b, 1.0))?;
            if let Some(path) = svg {
                write_out(&path, &render_svg(&ps, &[(&t, "#1f77b4")]))?;
            }
            Ok(0)
        }
        Cmd::Tree { file, degree, svg } => {
            let ps = read_points(&file)?;
            let base = enforce_degree5(&compute_emst(&ps).map_err(|e| e.to_string())?, &ps)
                .map_err(|e| e.to_string())?;
            let b = bottleneck(&base, &ps).0;
            let dbt = match degree {
                2 => degree2_path(&base, &ps),
                3 => {
                    let rt = root_at_leaf(&base, &ps, None).map_err(|e| e.to_string())?;
                    degree3_transform(&rt, &ps).map_err(|e| e.to_string())?
                }
                _ => {
                    let rt = root_at_leaf(&base, &ps, None).map_err(|e| e.to_string())?;
                    degree4_transform(&rt, &ps).map_err(|e| e.to_string())?
                }
            };
            let rep = verify_result(&ps, &dbt, BottleneckValue(b));
            if !rep.pass() {
                return Err(format!("internal contract violated: {:?}", rep.violations));
            }
            print_json(&TreeReport::new(&dbt.tree, &ps, Some(degree), b, dbt.guarantee))?;
            if let Some(path) = svg {
                let layers = [(&base, "#bbbbbb"), (&dbt.tree, "#d62728")];
                write_out(&path, &render_svg(&ps, &layers))?;
            }
            Ok(0)
        }
        Cmd::Exact { file, degree, max_exact_n } => {
            let ps = read_points(&file)?;
            enforce_budget(&ps, degree, max_exact_n)?;
            let res = exact_bottleneck_tree(&ps, degree).map_err(|e| e.to_string())?;
            print_json(&res)?;
            Ok(0)
        }
        Cmd::Ratio { file, degree, max_exact_n } => {
            let ps = read_points(&file)?;
            enforce_budget(&ps, degree, max_exact_n)?;
            let rep = ratio(&ps, degree).map_err(|e| e.to_string())?;
            print_json(&rep)?;
            Ok(0)
        }
        Cmd::Check { file, kind } => {
            let ps = read_points(&file)?;
            let t = compute_emst(&ps).map_err(|e| e.to_string())?;
            let mut reports: Vec<CheckReport> = Vec::new();
            if matches!(kind, CheckKind::Angles | CheckKind::All) {
                reports.push(check_angle_structure(&t, &ps));
            }
            if matches!(kind, CheckKind::Chords | CheckKind::All) {
                reports.push(check_chord_bound(&t, &ps));
            }
            if matches!(kind, CheckKind::TwoAngle | CheckKind::All) {
                reports.push(check_two_angle(&t, &ps));
            }
            if matches!(kind, CheckKind::EmptyTriangle | CheckKind::All) {
                reports.push(check_empty_triangle(&t, &ps));
            }
            let clean = reports.iter().all(CheckReport::pass);
            print_json(&reports)?;
            Ok(if clean { 0 } else { 1 })
        }
        Cmd::Repro { target } => repro(target),
    }
}

fn repro(target: ReproTarget) -> Result<u8, String> {
    let gen = |name| NamedConstruction::new(name).generate().map_err(|e: _| e.to_string());
    let ok = match target {
        ReproTarget::Beta2Sqrt7 => {
            let ps = gen(ConstructionName::Lower19)?;
            let t = compute_emst(&ps).map_err(|e| e.to_string())?;
            let base = repro_line("beta2-sqrt7 tree bottleneck", bottleneck(&t, &ps).0, 1.0);
            let res = exact_bottleneck_tree(&ps, 2).map_err(|e| e.to_string())?;
            repro_line("beta2-sqrt7 exact degree-2 value", res.value, 7f64.sqrt()) && base
        }
        ReproTarget::Beta3Sqrt2 => {
            let ps = gen(ConstructionName::SquareCenter)?;
            let rep = ratio(&ps, 3).map_err(|e| e.to_string())?;
            repro_line("beta3-sqrt2 exact degree-3 ratio", rep.ratio, std::f64::consts::SQRT_2)
        }
        ReproTarget::Beta4Pentagon => {
            let ps = gen(ConstructionName::PentagonCenter)?;
            let rep = ratio(&ps, 4).map_err(|e| e.to_string())?;
            repro_line(
                "beta4-pentagon exact degree-4 ratio",
                rep.ratio,
                2.0 * 36f64.to_radians().sin(),
            )
        }
        ReproTarget::SpiderBeta2 => {
            let ps = gen(ConstructionName::SpiderBeta2)?;
            let rep = ratio(&ps, 2).map_err(|e| e.to_string())?;
            repro_line("spider-beta2 exact degree-2 ratio", rep.ratio, 2.0)
        }
    };
    Ok(if ok { 0 } else { 1 })
}

fn repro_line(label: &str, measured: f64, expected: f64) -> bool {
    let ok = (measured - expected).abs() <= 1e-9;
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("{label}: measured {measured:.16e} expected {expected:.16e} {verdict}");
    ok
}

fn enforce_budget(ps: &PointSet, degree: u8, max_exact_n: Option<usize>) -> Result<(), String> {
    let limit = max_exact_n.unwrap_or(if degree == 2 { 20 } else { 12 });
    if ps.len() > limit {
        return Err(format!(
            "point set has {} points, over the limit {limit} for exact degree-{degree} search \
             (raise with --max-exact-n)",
            ps.len()
        ));
    }
    Ok(())
}

fn read_points(path: &str) -> Result<PointSet, String> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("reading stdin: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?
    };
    parse_points(&text).map_err(|e| e.to_string())
}

fn write_out(path: &str, content: &str) -> Result<(), String> {
    if path == "-" {
        print!("{content}");
        Ok(())
    } else {
        fs::write(path, content).map_err(|e| format!("writing {path}: {e}"))
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}
