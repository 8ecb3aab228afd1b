//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O error, 2 unpackable / bound exceeded /
//! certificate violation, 3 malformed input, 4 internal stop.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tripack::certify::{validate_packing, verify_certificate};
use tripack::dispatch::{evaluate_case_lower_bound, DispatchError};
use tripack::exact::{parse_rational, QuadExt};
use tripack::gen::{gen_instance, Profile};
use tripack::io::{Instance, InstanceFamily, IoError, PackingFile};
use tripack::svg::write_svg;

const EXIT_IO: u8 = 1;
const EXIT_REJECTED: u8 = 2;
const EXIT_MALFORMED: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "tripack", version, about = "Exact parallel packing of triangles into a square")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pack an instance file and write the certified packing.
    Pack {
        /// Must agree with the instance file when given.
        #[arg(long)]
        family: Option<InstanceFamily>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Re-check a packing file from scratch.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Generate a seeded instance at a given density.
    Gen {
        #[arg(long)]
        family: InstanceFamily,
        #[arg(long)]
        density: String,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "uniform_split")]
        profile: Profile,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a case lower bound, e.g. `--case EQ/3 --t 2/5`.
    Bound {
        #[arg(long)]
        case: String,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<String>,
    },
    /// Draw a packing file as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = match e {
            IoError::Read { .. } | IoError::Write { .. } => EXIT_IO,
            IoError::BadCertificate => EXIT_REJECTED,
            IoError::Json(_) | IoError::NonPositiveSide(_) => EXIT_MALFORMED,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("tripack: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Pack { family, input, out, svg } => pack(family, &input, &out, svg.as_deref()),
        Command::Validate { input } => validate(&input),
        Command::Gen { family, density, count, seed, profile, out } => {
            let density = parse_rational(&density)
                .map_err(|e| Failure::new(EXIT_MALFORMED, format!("density: {e}")))?;
            let inst = gen_instance(family, &density, count, seed, profile)
                .map_err(|e| Failure::new(EXIT_MALFORMED, e.to_string()))?;
            inst.save(&out)?;
            Ok(())
        }
        Command::Bound { case, t } => {
            let ts = t
                .iter()
                .map(|s| parse_rational(s.trim()).map(QuadExt::rational))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::new(EXIT_MALFORMED, e.to_string()))?;
            let v = evaluate_case_lower_bound(&case, &ts).map_err(|e| Failure::new(EXIT_MALFORMED, e.to_string()))?;
            println!("{v}");
            println!("{:.15}", v.to_f64());
            Ok(())
        }
        Command::Render { input, out } => {
            let packing = PackingFile::load(&input)?;
            write_svg(&packing, &out)?;
            Ok(())
        }
    }
}

fn pack(
    family: Option<InstanceFamily>,
    input: &std::path::Path,
    out: &std::path::Path,
    svg: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let inst = Instance::load(input)?;
    if let Some(f) = family {
        if f != inst.family {
            return Err(Failure::new(
                EXIT_MALFORMED,
                format!("--family {} but the instance is {}", f.name(), inst.family.name()),
            ));
        }
    }
    let packing = inst.pack().map_err(|e| match e {
        DispatchError::Unpackable { .. } => Failure::new(EXIT_REJECTED, e.to_string()),
        DispatchError::AreaBoundExceeded { .. } => {
            Failure::new(EXIT_REJECTED, format!("area bound exceeded: {e}"))
        }
        DispatchError::BadInput(_) => Failure::new(EXIT_MALFORMED, e.to_string()),
        DispatchError::InternalStop { ref trace, .. } => {
            let trace = serde_json::to_string_pretty(trace).unwrap_or_default();
            Failure::new(EXIT_INTERNAL, format!("{e}\n{trace}"))
        }
    })?;
    packing.save(out)?;
    if let Some(svg) = svg {
        write_svg(&packing, svg)?;
    }
    Ok(())
}

fn validate(input: &std::path::Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", input.display())))?;
    let packing = PackingFile::from_json_unchecked(&text)?;
    match validate_packing(&packing.certificate.container, &packing.placements) {
        Ok(_) if verify_certificate(&packing.certificate, &packing.placements) => {
            println!("valid: {} triangles", packing.placements.len());
            Ok(())
        }
        Ok(_) => Err(Failure::new(EXIT_REJECTED, "stored certificate does not match the placements")),
        Err(v) => Err(Failure::new(EXIT_REJECTED, format!("violation: {v}"))),
    }
}
