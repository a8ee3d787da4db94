use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dyconvex::classify::DEFAULT_SEARCH_DEPTH;
use dyconvex::cli::report::{self, GensTarget, ReportDocument};
use dyconvex::cli::svg;
use dyconvex::cli::verify::{verify_example, EXAMPLES};
use dyconvex::cli::PointFile;
use dyconvex::groupoid::{ClosureOptions, GeneratorSet};
use dyconvex::hull::convex_hull;
use dyconvex::{DyadicPoint, Error};

const EXIT_YES: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY_FAILED: u8 = 2;
const EXIT_NO: u8 = 3;

/// Exact computations with convex sets of dyadic points.
///
/// Exit status: 0 yes, 3 no, 2 verification failure, 1 usage or parse error.
#[derive(Parser)]
#[command(name = "dyconvex", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a point is generated by a point file.
    Member {
        #[arg(long)]
        gens: PathBuf,
        /// Point literal, e.g. `3*2^-1,0` or `1/2,1/2`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// List the generated points with bounded denominators.
    Closure {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        exp_cap: u32,
        #[arg(long, default_value_t = 0)]
        slack: u32,
        /// Write an SVG drawing (dimension 1 or 2).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Interval type or triangle class.
    Classify {
        #[command(subcommand)]
        what: ClassifyCmd,
    },
    /// Synthesize a finite generating set.
    Gens(GensArgs),
    /// Run a worked-example regression bundle.
    Verify {
        /// One of the example names, or `all`.
        #[arg(long)]
        example: String,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    Interval {
        #[arg(long)]
        gens: PathBuf,
    },
    Triangle {
        /// Representative parameters `i,j,m,n`.
        #[arg(long, conflicts_with = "vertices", required_unless_present = "vertices")]
        params: Option<String>,
        /// Point file with three vertices.
        #[arg(long)]
        vertices: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_DEPTH)]
        depth: u32,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GensTargetArgs {
    #[arg(long)]
    polytope: Option<PathBuf>,
    #[arg(long)]
    semipolytope: Option<PathBuf>,
}

#[derive(Args)]
struct GensArgs {
    #[command(flatten)]
    target: GensTargetArgs,
    #[arg(long)]
    reduce: bool,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err((op, err)) => {
            println!("{}", ReportDocument::error(op, json!(null), &err).to_json());
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

type Outcome = std::result::Result<u8, (&'static str, Error)>;

fn tag<T>(op: &'static str, r: dyconvex::Result<T>) -> std::result::Result<T, (&'static str, Error)> {
    r.map_err(|e| (op, e))
}

fn write_file(path: &Path, text: &str) -> dyconvex::Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Member { gens, point } => {
            let op = "member";
            let pf = tag(op, PointFile::read(&gens))?;
            let p: DyadicPoint = tag(op, point.parse())?;
            let (doc, yes) = tag(op, report::member(&pf, &p))?;
            println!("{}", doc.to_json());
            Ok(if yes { EXIT_YES } else { EXIT_NO })
        }
        Command::Closure { gens, exp_cap, slack, svg: out } => {
            let op = "closure";
            let pf = tag(op, PointFile::read(&gens))?;
            let opts = tag(op, ClosureOptions::new(exp_cap, slack))?;
            let (doc, rep) = tag(op, report::closure(&pf, &opts))?;
            if let Some(path) = out {
                let hull = tag(op, convex_hull(&pf.points))?;
                let text = tag(op, svg::render(&hull, &pf.points, &rep.found))?;
                tag(op, write_file(&path, &text))?;
            }
            println!("{}", doc.to_json());
            Ok(EXIT_YES)
        }
        Command::Classify { what } => {
            let op = "classify";
            let doc = match what {
                ClassifyCmd::Interval { gens } => {
                    let pf = tag(op, PointFile::read(&gens))?;
                    tag(op, report::classify_interval(&pf))?
                }
                ClassifyCmd::Triangle { params: Some(s), .. } => {
                    let [i, j, m, n] = tag(op, parse_params(&s))?;
                    tag(op, report::classify_params(i, j, m, n))?
                }
                ClassifyCmd::Triangle { vertices: Some(path), depth, .. } => {
                    let pf = tag(op, PointFile::read(&path))?;
                    tag(op, report::classify_vertices(&pf, depth))?
                }
                ClassifyCmd::Triangle { .. } => unreachable!("clap requires one source"),
            };
            println!("{}", doc.to_json());
            Ok(EXIT_YES)
        }
        Command::Gens(args) => {
            let op = "gens";
            let target = match (args.target.polytope, args.target.semipolytope) {
                (Some(p), _) => GensTarget::Polytope(tag(op, PointFile::read(&p))?),
                (_, Some(p)) => GensTarget::Semipolytope(tag(op, PointFile::read(&p))?),
                _ => unreachable!("clap requires one target"),
            };
            let (doc, cert) = tag(op, report::gens(&target, args.reduce))?;
            if let Some(path) = args.svg {
                let x = tag(op, GeneratorSet::new(cert.produced.clone()))?;
                let text = tag(op, svg::render(x.hull(), &cert.produced, &[]))?;
                tag(op, write_file(&path, &text))?;
            }
            println!("{}", doc.to_json());
            let valid = doc.certificate["validated"] == json!(true);
            Ok(if valid { EXIT_YES } else { EXIT_VERIFY_FAILED })
        }
        Command::Verify { example } => {
            let op = "verify";
            let names: Vec<&str> = if example == "all" {
                EXAMPLES.to_vec()
            } else {
                vec![example.as_str()]
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for name in names {
                let r = tag(op, verify_example(name))?;
                for c in r.checks.iter().filter(|c| !c.pass) {
                    eprintln!("{name}: {}: expected {}, got {}", c.name, c.expected, c.actual);
                }
                all_pass &= r.passed;
                reports.push(r);
            }
            let doc = ReportDocument {
                op: "verify".into(),
                inputs: json!({ "example": example }),
                result: json!({ "passed": all_pass }),
                certificate: serde_json::Value::Null,
                evidence: serde_json::to_value(&reports).expect("reports serialize"),
            };
            println!("{}", doc.to_json());
            Ok(if all_pass { EXIT_YES } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn parse_params(s: &str) -> dyconvex::Result<[u64; 4]> {
    let v: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad parameter {t:?}"))))
        .collect::<dyconvex::Result<_>>()?;
    v.try_into()
        .map_err(|_| Error::Parse(format!("expected four parameters i,j,m,n, got {s:?}")))
}
