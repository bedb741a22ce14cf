use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hplane_core::frontend::{parse, print, print_hat, Format};
use hplane_core::rewrite::DEFAULT_FUEL;
use hplane_core::star::{derive_phase_space, HPrimeMode, PhaseRelation};
use hplane_core::{build_c, run_suite, Error, Expr, GaussianRational, Param, ParamScalar, RuleTable, Rewriter, Specialization, Suite};

#[derive(Parser)]
#[command(name = "hplane", version, about = "Exact calculus on the quantum h-exterior plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression
    Normalize {
        expr: String,
        /// Parameter substitution, applied in order: h=hp, hp=-h, h=0 or hp=0
        #[arg(long = "subst", value_name = "RULE")]
        subst: Vec<String>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
        /// Replace rules of the standard table (`a*b -> rhs` per line)
        #[arg(long, value_name = "PATH")]
        rules_file: Option<String>,
    },
    /// Print the exchange matrix C(t); t = 0 gives R-hat
    Matrix {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Derive the relations of the hermitean operators
    Derive {
        target: Target,
        #[arg(long, default_value = "generic", allow_hyphen_values = true)]
        hprime: HPrimeMode,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    PhaseSpace,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn rewriter() -> Result<Rewriter, Failure> {
    let rw = Rewriter::default();
    match std::env::var("HPLANE_FUEL") {
        Ok(v) => v
            .parse::<u64>()
            .map(|fuel| rw.with_fuel(fuel))
            .map_err(|_| Failure::Usage(format!("HPLANE_FUEL must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(rw.with_fuel(DEFAULT_FUEL)),
    }
}

fn parse_subst(rules: &[String]) -> Result<Specialization, Failure> {
    let mut spec = Specialization::generic();
    for r in rules {
        let (target, repl) = match r.replace(' ', "").as_str() {
            "h=hp" => (Param::H, ParamScalar::hp()),
            "hp=h" => (Param::HPrime, ParamScalar::h()),
            "hp=-h" => (Param::HPrime, -ParamScalar::h()),
            "h=-hp" => (Param::H, -ParamScalar::hp()),
            "h=0" => (Param::H, ParamScalar::zero()),
            "hp=0" => (Param::HPrime, ParamScalar::zero()),
            other => return Err(Failure::Usage(format!("unsupported substitution `{other}`"))),
        };
        spec = spec.then(target, repl).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(spec)
}

fn parse_t(s: &str) -> Result<GaussianRational, Failure> {
    let e = parse(s).map_err(|e| Failure::Usage(format!("bad value for --t: {e}")))?;
    e.scalar_part()
        .as_constant()
        .filter(|_| e.words().all(|w| w.is_empty()))
        .ok_or_else(|| Failure::Usage(format!("--t must be a number, got `{s}`")))
}

fn relation_json(rel: &PhaseRelation) -> serde_json::Value {
    serde_json::json!({
        "name": rel.name(),
        "lhs": serde_json::from_str::<serde_json::Value>(&print(&Expr::word(rel.lhs.clone()), Format::Json)).expect("json"),
        "rhs": serde_json::from_str::<serde_json::Value>(&print(&rel.rhs, Format::Json)).expect("json"),
    })
}

/// Write to stdout; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Normalize { expr, subst, format } => {
            let spec = parse_subst(&subst)?;
            let rw = rewriter()?.specialized(spec);
            let e = parse(&expr).map_err(Error::from)?;
            let n = rw.normalize(&e).map_err(Error::from)?;
            emit(&format!("{}\n", print(&n, format)));
        }
        Command::Verify { suite, json, rules_file } => {
            let mut rw = rewriter()?;
            if let Some(path) = rules_file {
                let src = fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
                let table = RuleTable::standard().with_overrides(&src).map_err(Error::from)?;
                rw = rw.with_table(table);
            }
            let report = run_suite(suite, &rw);
            if json {
                emit(&format!("{}\n", report.to_json()));
            } else {
                emit(&report.to_text());
            }
            if !report.pass {
                return Err(Failure::Verification);
            }
        }
        Command::Matrix { t, format } => {
            emit(&format!("{}\n", build_c(&parse_t(&t)?).print(format)));
        }
        Command::Derive { target: Target::PhaseSpace, hprime, format } => {
            let rw = rewriter()?.specialized(hprime.specialization());
            let rels = derive_phase_space(&rw).map_err(Error::from)?;
            match format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "version": hplane_core::frontend::JSON_VERSION,
                        "hprime": hprime.name(),
                        "relations": rels.iter().map(relation_json).collect::<Vec<_>>(),
                    });
                    emit(&format!("{doc}\n"));
                }
                _ => {
                    for rel in rels {
                        let lhs = print_hat(&Expr::word(rel.lhs.clone()), format);
                        emit(&format!("{lhs} = {}\n", print_hat(&rel.rhs, format)));
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
