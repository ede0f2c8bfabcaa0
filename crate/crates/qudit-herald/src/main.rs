use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qudit_herald::metrics::{report, MetricsReport};
use qudit_herald::netlist::parse_netlist;
use qudit_herald::scattering::{
    reflection_coefficient, ReflectionCoefficients, ScatteringError, ScatteringParams,
};
use qudit_herald::schemes::{
    generate_entangled_at, generation_layout, ideal_state, x_gate_benchmark, SchemeSpec,
};
use qudit_herald::state::{dump_records, RegisterLayout, StateRecord};
use qudit_herald::sweep::{run_sweep, write_csv, write_json, SweepGrid, SweepTarget};
use qudit_herald::verify::{oracle_suite_with_reflection, run_suite, Suite};

/// Exact simulator of heralded photonic qudit entanglement circuits.
#[derive(Parser)]
#[command(name = "qudit-herald", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an entangled state and print it with its figures of merit.
    Generate(GenerateArgs),
    /// Benchmark the level-shift gate on a stored qudit of the standard state.
    Gate(GateArgs),
    /// Tabulate fidelity and efficiency over a Purcell and detuning grid.
    Sweep(SweepArgs),
    /// Run the built-in invariant suites.
    Verify(VerifyArgs),
    /// Parse and execute a netlist file.
    Run(RunArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Qudit dimension, a power of two starting at 4.
    #[arg(long)]
    d: usize,
    /// Total number of entangled qudits, photon included.
    #[arg(long)]
    n: usize,
    /// Base shift b of the target state.
    #[arg(long, default_value_t = 0)]
    b: usize,
    /// Phase index k applied to the photonic qudit.
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// Purcell factor of every emitter.
    #[arg(long, default_value_t = 40.0)]
    purcell: f64,
    /// Detuning in units of the waveguide decay rate.
    #[arg(long, default_value_t = 0.0)]
    detuning: f64,
    /// Emit the exact target state instead of the circuit output.
    #[arg(long)]
    ideal: bool,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GateArgs {
    /// Qudit to shift; the photon is qudit 1, so targets start at 3.
    #[arg(long)]
    target_qudit: usize,
    /// Shift amount, taken modulo 4.
    #[arg(long)]
    m: usize,
    /// Purcell factor of every emitter.
    #[arg(long, default_value_t = 40.0)]
    purcell: f64,
    /// Detuning in units of the waveguide decay rate.
    #[arg(long, default_value_t = 0.0)]
    detuning: f64,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Scheme identifier, e.g. d4n2b0, d4n3b1k2, table2_k1_p0_q3, xgate_m2.
    #[arg(long)]
    scheme: String,
    /// Output path; defaults to <scheme>_sweep.<format> in the working directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run: all, gates, table2, oracle, props, corpus.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Negative control: plant a sign error in the reflection model and
    /// prove the oracle suite goes red.
    #[arg(long, hide = true)]
    inject_r_sign_bug: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Netlist file to execute.
    netlist: PathBuf,
    /// Purcell factor of every emitter.
    #[arg(long, default_value_t = 40.0)]
    purcell: f64,
    /// Detuning in units of the waveguide decay rate.
    #[arg(long, default_value_t = 0.0)]
    detuning: f64,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

type CliError = Box<dyn std::error::Error>;

/// Heralded state plus metrics, the JSON envelope shared by generate,
/// gate, and run.
#[derive(Serialize)]
struct StateReport {
    source: String,
    purcell: f64,
    detuning: f64,
    state: Vec<StateRecord>,
    metrics: Option<MetricsReport>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Generate(args) => generate(args),
        Command::Gate(args) => gate(args),
        Command::Sweep(args) => sweep(args),
        Command::Verify(args) => verify(args),
        Command::Run(args) => run(args),
    }
}

fn coefficients(purcell: f64, detuning: f64) -> Result<ReflectionCoefficients, CliError> {
    let params = ScatteringParams::new(purcell, detuning)?;
    Ok(reflection_coefficient(&params)?)
}

/// Largest state vector the simulator will allocate.
const MAX_DIMENSION: u128 = 1 << 24;

fn guard_dimension(layout: &RegisterLayout) -> Result<(), CliError> {
    let bits = (layout.n_emitters() as u32).min(100);
    let dim = 2 * layout.n_paths() as u128 * 2u128.pow(bits);
    if dim > MAX_DIMENSION {
        return Err(format!(
            "state dimension {dim} exceeds the in-memory limit {MAX_DIMENSION}; choose a smaller d or n"
        )
        .into());
    }
    Ok(())
}

fn emit_json<T: Serialize>(doc: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    match out {
        None => io::stdout().write_all(text.as_bytes())?,
        Some(path) => fs::write(path, text)?,
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<ExitCode, CliError> {
    let spec = SchemeSpec::direct_with_phase(args.d, args.n, args.b, args.k)?;
    let layout = generation_layout(&spec)?;
    guard_dimension(&layout)?;
    let ideal = ideal_state(&spec)?;
    let state = if args.ideal {
        ideal.clone()
    } else {
        let coeffs = coefficients(args.purcell, args.detuning)?;
        generate_entangled_at(&spec, &coeffs)?
    };
    let metrics = report(&state, &ideal)?;
    let doc = StateReport {
        source: SweepTarget::Generate(spec).id(),
        purcell: args.purcell,
        detuning: args.detuning,
        state: dump_records(&state),
        metrics: Some(metrics),
    };
    emit_json(&doc, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn gate(args: GateArgs) -> Result<ExitCode, CliError> {
    let m = args.m % 4;
    let spec = SchemeSpec::direct(4, args.target_qudit.max(3), 0)?;
    let gated = generation_layout(&spec)?
        .with_extra_paths(vec!["a1x".to_string(), "a2x".to_string()])?;
    guard_dimension(&gated)?;
    let coeffs = coefficients(args.purcell, args.detuning)?;
    let (output, ideal) = x_gate_benchmark(args.target_qudit, m, &coeffs)?;
    let metrics = report(&output, &ideal)?;
    let doc = StateReport {
        source: SweepTarget::XGate {
            target_qudit: args.target_qudit,
            m,
        }
        .id(),
        purcell: args.purcell,
        detuning: args.detuning,
        state: dump_records(&output),
        metrics: Some(metrics),
    };
    emit_json(&doc, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: SweepArgs) -> Result<ExitCode, CliError> {
    let target = SweepTarget::parse(&args.scheme)?;
    let rows = run_sweep(&target, &SweepGrid::default_grid())?;
    let ext = match args.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let path = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{}_sweep.{ext}", target.id())));
    let mut writer = io::BufWriter::new(fs::File::create(&path)?);
    match args.format {
        Format::Csv => write_csv(&rows, &mut writer)?,
        Format::Json => write_json(&rows, &mut writer)?,
    }
    writer.flush()?;
    println!("wrote {} rows to {}", rows.len(), path.display());
    Ok(ExitCode::SUCCESS)
}

fn sign_flipped_reflection(
    params: &ScatteringParams,
) -> Result<ReflectionCoefficients, ScatteringError> {
    let truth = reflection_coefficient(params)?;
    Ok(ReflectionCoefficients::from_reflection(-truth.r))
}

fn verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let suite: Suite = args.suite.parse()?;
    let reports = if args.inject_r_sign_bug {
        vec![oracle_suite_with_reflection(sign_flipped_reflection)]
    } else {
        run_suite(suite)
    };
    for rep in &reports {
        print!("{rep}");
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification failed");
        Ok(ExitCode::from(2))
    }
}

fn run(args: RunArgs) -> Result<ExitCode, CliError> {
    let text = fs::read_to_string(&args.netlist)
        .map_err(|e| format!("{}: {e}", args.netlist.display()))?;
    let doc = parse_netlist(&text)?;
    guard_dimension(doc.layout())?;
    let coeffs = coefficients(args.purcell, args.detuning)?;
    let (state, metrics) = doc.execute(&coeffs)?;
    let out = StateReport {
        source: args.netlist.display().to_string(),
        purcell: args.purcell,
        detuning: args.detuning,
        state: dump_records(&state),
        metrics,
    };
    emit_json(&out, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
