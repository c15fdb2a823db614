use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use modform::cusps::representatives;
use modform::etacusp::EtaQuotient;
use modform::projection::{project, residual, EisCombination};
use modform::qseries::{eisenstein_qexp, QExpansion};
use modform::theta::QuadraticForm;
use modform::{DirichletCharacter, Error};
use modform_cli::fixtures::{run_suite, SUITES};

#[derive(Parser)]
#[command(name = "modform", version, about = "Exact Eisenstein parts of modular forms from cusp constant terms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eisenstein part of an eta quotient Π η(dz)^{r_d}.
    ProjectEta {
        #[arg(long)]
        level: u64,
        /// Exponents as "d:r,d:r,..."
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long, default_value_t = 20)]
        prec: usize,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Eisenstein part of the theta series of a positive definite form.
    ProjectTheta {
        /// File with the dimension on the first line, then the Gram rows.
        #[arg(long, conflicts_with = "diag", required_unless_present = "diag")]
        gram: Option<PathBuf>,
        /// Diagonal coefficients "a1,a2,..." of Σ a_j x_j².
        #[arg(long)]
        diag: Option<String>,
        #[arg(long, default_value_t = 20)]
        prec: usize,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// q-expansion of an eta quotient at i∞.
    QexpEta {
        #[arg(long)]
        level: u64,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long, default_value_t = 20)]
        prec: usize,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// q-expansion of E_k(ε, ψ; dz).
    QexpEisenstein {
        #[arg(long)]
        weight: u32,
        /// ε then ψ: Kronecker labels ("-4", "12") or "N:e1,e2,...".
        #[arg(long, num_args = 2, value_names = ["EPS", "PSI"], allow_hyphen_values = true)]
        char: Vec<String>,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value_t = 20)]
        prec: usize,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Run a fixture suite; exits 1 on any failure.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Capacity(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity(_) => Failure::Capacity(e.to_string()),
            Error::Inconsistent(_) => Failure::Verify(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn emit(value: &Value, path: &Option<PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(Failure::Input(format!("stdout: {e}")));
        }
    }
    if let Some(p) = path {
        std::fs::write(p, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn projection_record(comb: &EisCombination, f: &QExpansion) -> Result<Value, Failure> {
    let e = comb.to_qexp(f.truncation())?;
    let s = residual(comb, f)?;
    Ok(json!({
        "combination": to_value(comb),
        "eisenstein_part": to_value(&e),
        "residual": to_value(&s),
        "residual_is_zero": s.is_zero(),
    }))
}

fn project_eta_cmd(level: u64, spec: &str, prec: usize) -> Result<Value, Failure> {
    let eq = EtaQuotient::parse(level, spec)?;
    let (k, chi) = eq.weight_character()?;
    let cusps: Vec<Value> = representatives(level)
        .into_iter()
        .map(|c| Ok(json!({"cusp": c.to_string(), "value": to_value(&eq.constant_term(c)?)})))
        .collect::<Result<_, Error>>()?;
    let comb = project(k, level, &chi, &|c| eq.constant_term(c))?;
    let mut out = projection_record(&comb, &eq.qexp(prec)?)?;
    out["input"] = json!({"level": level, "eta": to_value(&eq.exponents()), "weight": k, "character": to_value(&chi)});
    out["cusp_constants"] = Value::Array(cusps);
    Ok(out)
}

fn project_theta_cmd(gram: Option<PathBuf>, diag: Option<String>, prec: usize) -> Result<Value, Failure> {
    let form = match (gram, diag) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            QuadraticForm::parse_gram(&text)?
        }
        (None, Some(d)) => QuadraticForm::parse_diagonal(&d)?,
        (None, None) => return Err(Failure::Input("give --gram or --diag".into())),
    };
    let k = form.weight();
    if k < 2 {
        return Err(Failure::Input(format!("weight {k} is not supported; need dimension ≥ 4")));
    }
    let (level, chi) = form.level_character()?;
    let comb = project(k, level, &chi, &|c| form.cusp_constant(c))?;
    let mut out = projection_record(&comb, &form.theta_qexp(prec))?;
    out["input"] = json!({
        "gram": form.gram(),
        "det": form.det().to_string(),
        "level": level,
        "weight": k,
        "character": to_value(&chi),
    });
    Ok(out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::ProjectEta { level, eta, prec, json_out } => emit(&project_eta_cmd(level, &eta, prec)?, &json_out),
        Command::ProjectTheta { gram, diag, prec, json_out } => {
            emit(&project_theta_cmd(gram, diag, prec)?, &json_out)
        }
        Command::QexpEta { level, eta, prec, json_out } => {
            let eq = EtaQuotient::parse(level, &eta)?;
            emit(&json!({"level": level, "qexp": to_value(&eq.qexp(prec)?)}), &json_out)
        }
        Command::QexpEisenstein { weight, char, d, prec, json_out } => {
            let eps = DirichletCharacter::parse(&char[0])?;
            let psi = DirichletCharacter::parse(&char[1])?;
            let e = eisenstein_qexp(weight, &eps, &psi, d, prec)?;
            emit(
                &json!({"weight": weight, "eps": to_value(&eps), "psi": to_value(&psi), "d": d, "qexp": to_value(&e)}),
                &json_out,
            )
        }
        Command::Verify { suite, json_out } => {
            let results = run_suite(&suite).ok_or_else(|| {
                Failure::Input(format!("unknown suite '{suite}'; available: {}, all", SUITES.join(", ")))
            })?;
            for r in &results {
                eprintln!(
                    "{} {} ({} ms): {}",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.name,
                    r.runtime_ms,
                    r.actual
                );
            }
            emit(&to_value(&results), &json_out)?;
            let failed = results.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(Failure::Verify(format!("{failed} of {} fixtures failed", results.len())));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
