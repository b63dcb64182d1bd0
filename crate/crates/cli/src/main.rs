use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use omega_lie::catalog::{self, CatalogLabel};
use omega_lie::classifier::{self, SearchConfig};
use omega_lie::families::FamilyLabel;
use omega_lie::{io, probe, Error, OmegaAlgebra, Scalar};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "omega-lie", version, about = "Exact tools for ω-Lie algebras over Q(i)")]
struct Cli {
    /// Warn about unknown keys instead of rejecting them.
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms; exit 1 on violations.
    Verify {
        #[arg(required_unless_present = "all")]
        file: Option<PathBuf>,
        /// Verify every `.json` file in a directory.
        #[arg(long, value_name = "DIR", conflicts_with = "file")]
        all: Option<PathBuf>,
    },
    /// Print the form forced by the bracket.
    RecoverOmega { file: PathBuf },
    /// Print the invariant fingerprint.
    Invariants { file: PathBuf },
    /// Match against the catalog.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = classifier::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = classifier::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Emit a catalog entry or a family member.
    Generate {
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        allow_dim4: bool,
    },
    /// Rewrite an algebra in the basis given by the columns of a matrix.
    Transform {
        file: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Decide which case of the trichotomy applies.
    Probe {
        file: PathBuf,
        #[arg(long)]
        hint: Option<PathBuf>,
    },
    /// List catalog entries.
    Catalog {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=4))]
        dim: Option<u64>,
    },
}

/// What went wrong, reported as JSON on stdout.
enum Failure {
    Error(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn error_value(e: &Error) -> Value {
    json!({ "error": e.kind(), "path": e.path(), "message": e.to_string() })
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn warn(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

struct Ctx {
    strict: bool,
}

impl Ctx {
    fn algebra(&self, path: &Path) -> Result<OmegaAlgebra, Failure> {
        let parsed = io::parse_algebra_with(&read(path)?, self.strict)?;
        warn(&parsed.warnings);
        Ok(parsed.value)
    }
}

fn print(value: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value).expect("serializable");
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn verify_one(ctx: &Ctx, path: &Path) -> Result<(Value, u8), Failure> {
    let alg = ctx.algebra(path)?;
    let report = alg.axiom_check();
    let code = if report.is_valid() { 0 } else { 1 };
    Ok((json!({ "valid": report.is_valid(), "report": report }), code))
}

fn verify_dir(ctx: &Ctx, dir: &Path) -> Result<u8, Failure> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut worst = 0;
    let mut reports = Vec::new();
    for file in files {
        let name = file.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let (mut value, code) = match verify_one(ctx, &file) {
            Ok(r) => r,
            Err(Failure::Error(e)) => (error_value(&e), if e.is_mathematical() { 1 } else { 2 }),
            Err(Failure::Usage(m)) => (json!({ "error": "IoError", "path": null, "message": m }), 2),
        };
        value["file"] = json!(name);
        worst = worst.max(code);
        reports.push(value);
    }
    print(&json!({ "reports": reports }));
    Ok(worst)
}

fn generate(label: &str, alpha: Option<&str>, params: Option<&Path>, allow_dim4: bool, strict: bool) -> Result<OmegaAlgebra, Failure> {
    if let Ok(family) = label.parse::<FamilyLabel>() {
        if alpha.is_some() {
            return Err(Error::UnexpectedParameter { label: label.into(), name: "alpha" }.into());
        }
        let Some(params) = params else {
            return Err(Error::MissingParameter { label: label.into(), name: "params" }.into());
        };
        let parsed = io::parse_params(&read(params)?, family, strict)?;
        warn(&parsed.warnings);
        return Ok(parsed.value.construct(allow_dim4)?);
    }
    let entry: CatalogLabel = label.parse()?;
    if params.is_some() {
        return Err(Error::UnexpectedParameter { label: label.into(), name: "params" }.into());
    }
    let alpha = alpha.map(str::parse::<Scalar>).transpose()?;
    Ok(catalog::construct(entry, alpha.as_ref())?)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let ctx = Ctx { strict: !cli.lenient };
    match cli.command {
        Command::Verify { file: Some(file), .. } => {
            let (value, code) = verify_one(&ctx, &file)?;
            print(&value);
            Ok(code)
        }
        Command::Verify { all: Some(dir), .. } => verify_dir(&ctx, &dir),
        Command::Verify { .. } => Err(Failure::Usage("verify needs FILE or --all DIR".into())),
        Command::RecoverOmega { file } => {
            let omega = ctx.algebra(&file)?.recover_omega()?;
            print(&io::matrix_value(&omega));
            Ok(0)
        }
        Command::Invariants { file } => {
            let fp = ctx.algebra(&file)?.fingerprint()?;
            print(&serde_json::to_value(fp).expect("serializable"));
            Ok(0)
        }
        Command::Classify { file, seed, budget } => {
            let alg = ctx.algebra(&file)?;
            let result = classifier::classify(&alg, &SearchConfig { budget, seed })?;
            let mut value = serde_json::to_value(&result).expect("serializable");
            if let Some(w) = &result.witness {
                value["witness"] = io::matrix_value(w);
            }
            for (c, v) in result.candidates.iter().zip(value["candidates"].as_array_mut().expect("list")) {
                if let Some(w) = &c.witness {
                    v["witness"] = io::matrix_value(w);
                }
            }
            print(&value);
            Ok(0)
        }
        Command::Generate { label, alpha, params, allow_dim4 } => {
            let alg = generate(&label, alpha.as_deref(), params.as_deref(), allow_dim4, ctx.strict)?;
            print(&io::algebra_value(&alg));
            Ok(0)
        }
        Command::Transform { file, matrix } => {
            let alg = ctx.algebra(&file)?;
            let parsed = io::parse_matrix_with(&read(&matrix)?, ctx.strict)?;
            warn(&parsed.warnings);
            print(&io::algebra_value(&alg.change_of_basis(&parsed.value)?));
            Ok(0)
        }
        Command::Probe { file, hint } => {
            let alg = ctx.algebra(&file)?;
            let hint = match hint {
                Some(path) => {
                    let parsed = io::parse_subspace_with(&read(&path)?, ctx.strict)?;
                    warn(&parsed.warnings);
                    Some(parsed.value)
                }
                None => None,
            };
            let report = probe::trichotomy_probe(&alg, hint.as_ref())?;
            print(&serde_json::to_value(report).expect("serializable"));
            Ok(0)
        }
        Command::Catalog { dim } => {
            let entries = catalog::catalog_list(dim.map(|d| d as usize));
            print(&serde_json::to_value(entries).expect("serializable"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Error(e)) => {
            print(&error_value(&e));
            ExitCode::from(if e.is_mathematical() { 1 } else { 2 })
        }
        Err(Failure::Usage(message)) => {
            print(&json!({ "error": "IoError", "path": null, "message": message }));
            ExitCode::from(2)
        }
    }
}
