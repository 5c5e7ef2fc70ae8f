use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use sp2_brackets::identities::cmd_identities;
use sp2_brackets::json::parse_point_file;
use sp2_brackets::verify::{cmd_frame, cmd_special_sweep, cmd_standard_sphere, cmd_verify, Emit, RunConfig};
use sp2_brackets::{Backend, Error, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmitArg {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "sp2-verify", version, about = "Verify step-2 bracket-generating frames on Sp(2) quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, env = "SP2_BACKEND", default_value = "float")]
    backend: BackendArg,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value = "json")]
    emit: EmitArg,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Remove the frame entry with this label before checking (testing aid).
    #[arg(long, global = true, hide = true)]
    drop_entry: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random points: Haar on the float backend, rational Cayley points on the exact one.
    Verify,
    /// Deterministic grid through every case class.
    SpecialSweep,
    /// Closed-form conformance suite.
    Identities,
    /// Rank of the standard-sphere frame.
    StandardSphere,
    /// Frame report for the point in a JSON file.
    Frame { point_file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("sp2-verify: {e}");
            ExitCode::from(2)
        }
    }
}

fn config(cli: &Cli) -> RunConfig {
    RunConfig {
        seed: cli.seed,
        samples: cli.samples,
        backend: match cli.backend {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        },
        tol: cli.tol,
        jobs: cli.jobs,
        emit: match cli.emit {
            EmitArg::Json => Emit::Json,
            EmitArg::Text => Emit::Text,
        },
        out: cli.out.clone(),
        drop_entry: cli.drop_entry.clone(),
    }
}

fn emit(cfg: &RunConfig, json: Value, text: impl FnOnce() -> String) -> Result<(), Error> {
    let body = match cfg.emit {
        Emit::Json => serde_json::to_string_pretty(&json).expect("report serializes") + "\n",
        Emit::Text => text(),
    };
    match &cfg.out {
        Some(path) => fs::write(path, body).map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let cfg = config(cli);
    cfg.validate()?;
    match &cli.command {
        Command::Verify => {
            let r = cmd_verify(&cfg)?;
            emit(&cfg, r.to_json(), || r.to_text())?;
            Ok(r.exit_code() as u8)
        }
        Command::SpecialSweep => {
            let r = cmd_special_sweep(&cfg)?;
            emit(&cfg, r.to_json(), || r.to_text())?;
            Ok(r.exit_code() as u8)
        }
        Command::Identities => {
            let r = cmd_identities(cfg.seed, 200, 100, cfg.samples)?;
            emit(&cfg, serde_json::to_value(&r).expect("report serializes"), || r.to_text())?;
            Ok(r.exit_code() as u8)
        }
        Command::StandardSphere => {
            let r = cmd_standard_sphere();
            emit(&cfg, serde_json::to_value(&r).expect("report serializes"), || r.to_text())?;
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Frame { point_file } => {
            let text = fs::read_to_string(point_file).map_err(|e| Error::Parse(format!("{}: {e}", point_file.display())))?;
            let point = parse_point_file(&text, cfg.tol)?;
            let report = cmd_frame(&point, cfg.tol)?;
            let passed = report["passed"].as_bool().unwrap_or(false);
            emit(&cfg, report.clone(), || frame_text(&report))?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}

fn frame_text(r: &Value) -> String {
    let frame = &r["frame"];
    let mut s = format!("case {}  rank {}\n", frame["case"].as_str().unwrap_or("?"), frame["rank"]);
    for m in frame["matrices"].as_array().into_iter().flatten() {
        s += &format!("  {:<8} {:<28} {}\n", m["label"].as_str().unwrap_or(""), m["paper_eq"].as_str().unwrap_or(""), m["m"]);
    }
    for v in r["invariant_violations"].as_array().into_iter().flatten() {
        s += &format!("  violation: {}\n", v.as_str().unwrap_or(""));
    }
    s += if r["passed"].as_bool() == Some(true) { "PASS\n" } else { "FAIL\n" };
    s
}
