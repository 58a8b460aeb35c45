mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use toric_core::catalog::{catalog_entry, CatalogError};
use toric_core::{
    contract_ray, enumerate_fano, factor_morphism, fan_isomorphism, parse_fan, serialize_fan,
    star_subdivide, validate_fan, FactorError, FactorOptions, Fan, FanError,
};

use report::Style;

const EXIT_PARSE: u8 = 1;
const EXIT_INVALID_FAN: u8 = 2;
const EXIT_NO_FACTORIZATION: u8 = 3;
const EXIT_NOT_REFINEMENT: u8 = 4;
const EXIT_BAD_ARGUMENT: u8 = 5;

#[derive(Parser)]
#[command(name = "toric", version, about = "Smooth complete toric fans: analysis, blow-ups and factorizations")]
struct Cli {
    /// Output style for reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Compact,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fan and report its relations, Mori cone and verdicts.
    Analyze {
        #[arg(default_value = "-")]
        fan: PathBuf,
    },
    /// Star-subdivide a cone and print the new fan.
    Blowup {
        #[arg(default_value = "-")]
        fan: PathBuf,
        /// Rays spanning the center, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        center: Vec<String>,
        /// Name for the new ray (defaults to the next free `eN`).
        #[arg(long)]
        name: Option<String>,
    },
    /// Contract a ray and print the resulting fan.
    Blowdown {
        #[arg(default_value = "-")]
        fan: PathBuf,
        #[arg(long)]
        ray: String,
        /// Primitive collection to contract along, when several relations target the ray.
        #[arg(long, value_delimiter = ',')]
        via: Option<Vec<String>>,
    },
    /// List blow-down candidates with their obstructions and verdicts.
    Blowdowns {
        #[arg(default_value = "-")]
        fan: PathBuf,
    },
    /// Factor the morphism from a refinement into smooth blow-ups.
    Factor {
        fine: PathBuf,
        coarse: PathBuf,
        /// Report every path rather than the first.
        #[arg(long)]
        all: bool,
        /// Only allow Fano intermediate fans.
        #[arg(long)]
        require_fano: bool,
    },
    /// Print a catalog fan (p1..p4, paper-X, paper-W, paper-Y).
    Example { key: String },
    /// Enumerate smooth toric Fano fans up to isomorphism.
    Enumerate {
        #[arg(long)]
        dim: usize,
        /// Write one file per fan into this directory instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two fans are isomorphic and print a lattice map.
    Isomorphic { a: PathBuf, b: PathBuf },
}

/// A failed command: exit code plus the lines for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_BAD_ARGUMENT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    let mut stdout = io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(EXIT_PARSE);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message.trim_end());
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli, out: &mut String) -> Outcome {
    let style = match cli.format {
        Format::Text => Style::Text,
        Format::Compact => Style::Compact,
    };
    match cli.command {
        Command::Analyze { fan } => {
            let fan = read_fan(&fan)?;
            let report = validate_fan(&fan);
            let valid = report.is_valid();
            report::analysis(&fan, &report, style, out).map_err(internal)?;
            if valid {
                Ok(())
            } else {
                Err(Failure::new(EXIT_INVALID_FAN, "error: the fan is not smooth and complete"))
            }
        }
        Command::Blowup { fan, center, name } => {
            let fan = read_valid_fan(&fan)?;
            let cone = fan.cone_by_names(&center).map_err(bad_argument)?;
            let result = star_subdivide(&fan, &cone, name.as_deref()).map_err(bad_argument)?;
            out.push_str(&serialize_fan(&result));
            Ok(())
        }
        Command::Blowdown { fan, ray, via } => {
            let fan = read_valid_fan(&fan)?;
            match contract_ray(&fan, &ray, via.as_deref()) {
                Ok(result) => {
                    out.push_str(&serialize_fan(&result));
                    Ok(())
                }
                Err(FanError::StarConditionViolated {
                    ray,
                    collection,
                    witnesses,
                    ..
                }) => {
                    let mut msg = format!("error: cannot contract {ray} along {collection}\n");
                    for w in witnesses {
                        msg.push_str(&format!("obstructed by cone {w}\n"));
                    }
                    Err(Failure::new(EXIT_BAD_ARGUMENT, msg))
                }
                Err(e) => Err(bad_argument(e)),
            }
        }
        Command::Blowdowns { fan } => {
            let fan = read_valid_fan(&fan)?;
            report::blowdowns(&fan, style, out).map_err(internal)
        }
        Command::Factor {
            fine,
            coarse,
            all,
            require_fano,
        } => {
            if fine == Path::new("-") && coarse == Path::new("-") {
                return Err(Failure::new(EXIT_BAD_ARGUMENT, "error: only one input can be standard input"));
            }
            let fine = read_valid_fan(&fine)?;
            let coarse = read_valid_fan(&coarse)?;
            let options = FactorOptions {
                require_fano,
                exhaustive: all,
            };
            let paths = match factor_morphism(&fine, &coarse, options) {
                Ok(p) => p,
                Err(FactorError::NotARefinement) => {
                    return Err(Failure::new(
                        EXIT_NOT_REFINEMENT,
                        "error: the fine fan does not refine the coarse fan, so there is no \
                         equivariant birational morphism between them",
                    ))
                }
                Err(FactorError::Fan(FanError::DimensionMismatch { expected, found })) => {
                    return Err(Failure::new(
                        EXIT_NOT_REFINEMENT,
                        format!("error: not a refinement: fans have dimensions {found} and {expected}"),
                    ))
                }
                Err(FactorError::Fan(e)) => return Err(internal(e)),
            };
            report::factorizations(&paths, style, out);
            if paths.is_empty() {
                let msg = if require_fano {
                    "no factorization with Fano intermediates"
                } else {
                    "no factorization into smooth blow-ups"
                };
                Err(Failure::new(EXIT_NO_FACTORIZATION, msg))
            } else {
                Ok(())
            }
        }
        Command::Example { key } => {
            let entry = catalog_entry(&key).map_err(|e| match e {
                CatalogError::UnknownKey(_) => bad_argument(e),
                other => internal(other),
            })?;
            out.push_str(&serialize_fan(&entry.fan));
            Ok(())
        }
        Command::Enumerate { dim, out: dir } => {
            let fans = enumerate_fano(dim).map_err(|e| match e {
                CatalogError::InvalidDimension(_) | CatalogError::UnsupportedDimension(_) => bad_argument(e),
                other => internal(other),
            })?;
            emit_fans(&fans, dir.as_deref(), out)
        }
        Command::Isomorphic { a, b } => {
            if a == Path::new("-") && b == Path::new("-") {
                return Err(Failure::new(EXIT_BAD_ARGUMENT, "error: only one input can be standard input"));
            }
            let a = read_valid_fan(&a)?;
            let b = read_valid_fan(&b)?;
            match fan_isomorphism(&a, &b).map_err(internal)? {
                Some(map) => {
                    out.push_str("isomorphic\n");
                    out.push_str(&map.to_string());
                }
                None => out.push_str("not isomorphic\n"),
            }
            Ok(())
        }
    }
}

fn emit_fans(fans: &[Fan], dir: Option<&Path>, out: &mut String) -> Outcome {
    match dir {
        None => {
            for (i, fan) in fans.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&format!("# fan {} of {}\n", i + 1, fans.len()));
                out.push_str(&serialize_fan(fan));
            }
        }
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("error: {}: {e}", dir.display())))?;
            for (i, fan) in fans.iter().enumerate() {
                let path = dir.join(format!("fano-{:02}.fan", i + 1));
                fs::write(&path, serialize_fan(fan))
                    .map_err(|e| Failure::new(EXIT_PARSE, format!("error: {}: {e}", path.display())))?;
                out.push_str(&format!("{}\n", path.display()));
            }
        }
    }
    Ok(())
}

fn read_fan(path: &Path) -> Result<Fan, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("error: standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("error: {}: {e}", path.display())))?
    };
    parse_fan(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("error: {}: {e}", path.display())))
}

fn read_valid_fan(path: &Path) -> Result<Fan, Failure> {
    let fan = read_fan(path)?;
    let report = validate_fan(&fan);
    if report.is_valid() {
        return Ok(fan);
    }
    let mut msg = format!("error: {}: not a smooth complete fan\n", path.display());
    for w in &report.witnesses {
        msg.push_str(&format!("  {w}\n"));
    }
    Err(Failure::new(EXIT_INVALID_FAN, msg))
}

fn bad_argument(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_BAD_ARGUMENT, format!("error: {e}"))
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_INVALID_FAN, format!("error: {e}"))
}
