use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pbr_core::classical::{is_in_subcategory_e_hat, phi1, phi2, psi, DeformedPartition};
use pbr_core::factor::{is_left_polarized, is_pure, is_right_polarized};
use pbr_core::format::{
    deformed_to_json, factorization_to_json, parse_deformed, parse_partition, parse_pbr, parse_relation, pbr_to_json,
};
use pbr_core::oriented::{is_oriented_brauer, is_oriented_partial_brauer, is_planar};
use pbr_core::random::{run_experiment, write_csv, ExperimentConfig, Mode};
use pbr_core::{compose_all, compose_deformed, dot, factorize, Error, Pbr};
use serde::Serialize;

/// Partitioned binary relations from the command line.
///
/// Diagrams are JSON objects
/// `{"domain": [..], "codomain": [..], "edges": [[src, "d"|"c", dst, "d"|"c"], ..]}`.
#[derive(Parser)]
#[command(name = "pbr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compose diagrams. `pbr compose B A` is `B ∘ A` (A applied first).
    Compose {
        #[arg(num_args = 2.., required = true)]
        files: Vec<PathBuf>,
        /// Read the files in application order: `pbr compose --left-to-right A B` is `B ∘ A`.
        #[arg(long)]
        left_to_right: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Compose two diagrams carrying exponents, adding the frothy class count.
    DeformCompose {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        left_to_right: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Split a diagram into left polarized, pure and right polarized factors.
    Factor {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Relation JSON to its diagram with arrows into the codomain only.
    EmbedPhi1 {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Relation JSON to its symmetric diagram.
    EmbedPhi2 {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Partition JSON to its diagram; a nonzero exponent is carried over.
    EmbedPsi {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Test a property. Exits 0 when it holds, 1 when it does not.
    Check {
        #[command(flatten)]
        predicate: Predicate,
        file: PathBuf,
    },
    /// Emit a Graphviz digraph (codomain on the left, domain on the right).
    Render {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Estimate how often random products are full; writes CSV.
    Experiment {
        #[arg(long, default_value = "binary-pair")]
        mode: Mode,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Predicate {
    #[arg(long)]
    pure: bool,
    #[arg(long)]
    left_polarized: bool,
    #[arg(long)]
    right_polarized: bool,
    #[arg(long)]
    oriented_brauer: bool,
    #[arg(long)]
    oriented_partial_brauer: bool,
    #[arg(long)]
    planar: bool,
    #[arg(long)]
    in_e_hat_subcategory: bool,
}

type Test = fn(&Pbr) -> bool;

fn planar(p: &Pbr) -> bool {
    is_planar(p).unwrap_or(false)
}

impl Predicate {
    /// Name and test of the selected predicate.
    fn selected(&self) -> (&'static str, Test) {
        let table: [(bool, &'static str, Test); 7] = [
            (self.pure, "pure", is_pure),
            (self.left_polarized, "left-polarized", is_left_polarized),
            (self.right_polarized, "right-polarized", is_right_polarized),
            (self.oriented_brauer, "oriented-brauer", is_oriented_brauer),
            (
                self.oriented_partial_brauer,
                "oriented-partial-brauer",
                is_oriented_partial_brauer,
            ),
            (self.planar, "planar", planar),
            (
                self.in_e_hat_subcategory,
                "in-e-hat-subcategory",
                is_in_subcategory_e_hat,
            ),
        ];
        let (_, name, test) = table.into_iter().find(|t| t.0).expect("clap requires one predicate");
        (name, test)
    }
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, io::Error),
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Io(..) => "io",
            Failure::Usage(_) => "usage",
            Failure::Core(e) => match e {
                Error::Parse(_) => "parse",
                Error::DuplicateLabel { .. } => "duplicate_label",
                Error::DanglingEdgeEndpoint { .. } => "dangling_edge_endpoint",
                Error::DuplicateEdge { .. } => "duplicate_edge",
                Error::IncomposableShapes { .. } => "incomposable_shapes",
                Error::EmptySequence => "empty_sequence",
                Error::InvalidPartition(_) => "invalid_partition",
                Error::InvalidRelation(_) => "invalid_relation",
                Error::InvalidObject(_) => "invalid_object",
                Error::InvalidOMorphism(_) => "invalid_o_morphism",
                Error::NotABrauerDiagram => "not_a_brauer_diagram",
                Error::ClosureViolation(_) => "closure_violation",
                Error::AssertionFailure(_) => "assertion_failure",
                Error::InvalidConfig(_) => "invalid_config",
            },
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::IncomposableShapes { .. } | Error::EmptySequence) => 3,
            Failure::Core(Error::ClosureViolation(_) | Error::AssertionFailure(_)) => 1,
            _ => 2,
        }
    }

    fn detail(&self) -> String {
        match self {
            Failure::Io(path, e) => format!("{}: {e}", path.display()),
            Failure::Core(e) => e.to_string(),
            Failure::Usage(s) => s.clone(),
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    detail: String,
}

#[derive(Serialize)]
struct CheckReport {
    check: &'static str,
    holds: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn emit(out: &Output, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(path.clone(), e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io("<stdout>".into(), e)),
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Compose {
            files,
            left_to_right,
            out,
        } => {
            let mut pbrs = files
                .iter()
                .map(|f| Ok(parse_pbr(&read(f)?)?))
                .collect::<Result<Vec<_>, Failure>>()?;
            if !left_to_right {
                pbrs.reverse();
            }
            emit(&out, &pbr_to_json(&compose_all(&pbrs)?))?;
        }
        Command::DeformCompose {
            first,
            second,
            left_to_right,
            out,
        } => {
            let a = parse_deformed(&read(&first)?)?;
            let b = parse_deformed(&read(&second)?)?;
            let (outer, inner) = if left_to_right { (b, a) } else { (a, b) };
            emit(&out, &deformed_to_json(&compose_deformed(&outer, &inner)?))?;
        }
        Command::Factor { file, out } => {
            let p = parse_pbr(&read(&file)?)?;
            emit(&out, &factorization_to_json(&factorize(&p)))?;
        }
        Command::EmbedPhi1 { file, out } => emit(&out, &pbr_to_json(&phi1(&parse_relation(&read(&file)?)?)))?,
        Command::EmbedPhi2 { file, out } => emit(&out, &pbr_to_json(&phi2(&parse_relation(&read(&file)?)?)))?,
        Command::EmbedPsi { file, out } => {
            let (partition, exponent) = parse_partition(&read(&file)?)?;
            let text = if exponent == 0 {
                pbr_to_json(&psi(&partition))
            } else {
                deformed_to_json(&DeformedPartition::new(partition, exponent).psi_bar())
            };
            emit(&out, &text)?;
        }
        Command::Check { predicate, file } => {
            let p = parse_pbr(&read(&file)?)?;
            let (check, test) = predicate.selected();
            let holds = test(&p);
            let report = CheckReport { check, holds };
            println!("{}", serde_json::to_string(&report).expect("plain data serializes"));
            return Ok(if holds { 0 } else { 1 });
        }
        Command::Render { file, out } => emit(&out, &dot::render(&parse_pbr(&read(&file)?)?))?,
        Command::Experiment {
            mode,
            sizes,
            samples,
            seed,
            out,
        } => {
            let result = run_experiment(&ExperimentConfig {
                sizes,
                samples_per_size: samples,
                seed,
                mode,
            })?;
            let mut buf = Vec::new();
            write_csv(&result, &mut buf).map_err(|e| Failure::Io("<csv>".into(), e))?;
            emit(&out, &String::from_utf8(buf).expect("csv is utf-8"))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(Failure::Usage(e.to_string().trim_end().to_string())),
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    let r = ErrorReport {
        error: f.code(),
        detail: f.detail(),
    };
    eprintln!("{}", serde_json::to_string(&r).expect("plain data serializes"));
    ExitCode::from(f.exit_code())
}
