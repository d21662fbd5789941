use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use superspace_delta::bound_state::{
    bound_state_energy, build_wavefunction_at, energy_for_dimension, normalize, self_consistency_residual,
    validate_wavefunction, CONSISTENCY_TOL, VALIDATION_TOL,
};
use superspace_delta::fermionic::{build_hamiltonian, characteristic_polynomial_exact, radial_levels, spectrum, SPECTRUM_REL_TOL};
use superspace_delta::output::{fmt12, json_document, Metadata};
use superspace_delta::superspace::squared_norm;
use superspace_delta::verify::{run_suite, Level, VerifyOptions, ASYMPTOTE_REL_TOL, TRANSFORM_REL_TOL};
use superspace_delta::{Error, ModelParams};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "superspace-delta", version, about = "Delta-potential bound states on superspace R^{m|2n}")]
struct Cli {
    /// Write output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Add a Unix timestamp to the output metadata.
    #[arg(long, global = true)]
    timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound-state energy for (m, n) or for a super-dimension M.
    Energy(EnergyArgs),
    /// CSV table of energies against super-dimension.
    Table(TableArgs),
    /// Explicit m = 1 wave function with validation.
    Wavefunction(WaveArgs),
    /// Spectrum of the purely fermionic Hamiltonian.
    Fermionic(FermionicArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EnergyArgs {
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Super-dimension M = m - 2n.
    #[arg(long = "M", allow_negative_numbers = true)]
    super_dimension: Option<i64>,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Comma-separated super-dimensions.
    #[arg(long = "M-list", default_value = "1,0,-1,-2,-3,-1000", allow_hyphen_values = true)]
    m_list: String,
}

#[derive(Args)]
struct WaveArgs {
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Number of grid points for the sampled body.
    #[arg(long, default_value_t = 201)]
    samples: usize,
    /// Grid covers [-xmax, xmax].
    #[arg(long, default_value_t = 5.0)]
    xmax: f64,
    /// Scale to unit squared norm.
    #[arg(long)]
    normalize: bool,
    #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
    perturb_energy: f64,
}

#[derive(Args)]
struct FermionicArgs {
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
    level: LevelArg,
    /// Relative shift of the binding energy used for the wave-function
    /// checks; for exercising the failure path.
    #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
    perturb_energy: f64,
}

/// Text to emit plus whether every requested check passed.
struct Outcome {
    text: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match &cli.command {
        Command::Energy(args) => cmd_energy(args, cli.timestamp),
        Command::Table(args) => cmd_table(args, cli.timestamp),
        Command::Wavefunction(args) => cmd_wavefunction(args, cli.timestamp),
        Command::Fermionic(args) => cmd_fermionic(args, cli.timestamp),
        Command::Verify(args) => Ok(cmd_verify(args, cli.timestamp)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    if let Err(e) = emit(&outcome.text, cli.out.as_ref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::EigenNoConvergence { .. } | Error::QuadratureFailed { .. } | Error::ZeroNorm => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn resolve_params(args: &EnergyArgs) -> Result<ModelParams, Error> {
    match (args.m, args.n, args.super_dimension) {
        (Some(m), Some(n), dim) => {
            let p = ModelParams::new(m, n, args.a)?;
            if let Some(d) = dim {
                if d != p.super_dimension() {
                    return Err(Error::InvalidArgument(format!("--M {d} disagrees with m - 2n = {}", p.super_dimension())));
                }
            }
            Ok(p)
        }
        (None, None, Some(d)) => ModelParams::from_super_dimension(d, args.a),
        _ => Err(Error::InvalidArgument("give both --m and --n, or --M".into())),
    }
}

fn cmd_energy(args: &EnergyArgs, timestamp: bool) -> Result<Outcome, Error> {
    let p = resolve_params(args)?;
    let energy = bound_state_energy(&p)?;
    let residual = self_consistency_residual(&p, -energy)?;
    let passed = residual.abs() <= CONSISTENCY_TOL;
    let meta = Metadata::new(timestamp)
        .param("m", p.m)
        .param("n", p.n)
        .param("a", p.a)
        .param("M", p.super_dimension())
        .tolerance("self_consistency", CONSISTENCY_TOL);
    let body = json!({
        "M": p.super_dimension(),
        "E": energy,
        "E_tilde": -energy,
        "self_consistency_residual": residual,
        "self_consistent": passed,
    });
    Ok(Outcome { text: json_document(&meta, body), passed })
}

fn cmd_table(args: &TableArgs, timestamp: bool) -> Result<Outcome, Error> {
    let dims = args
        .m_list
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad entry in --M-list: {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = String::from("M,E\n");
    for m in dims {
        rows.push_str(&format!("{},{}\n", fmt12(m), fmt12(energy_for_dimension(m, args.a)?)));
    }
    let meta = Metadata::new(timestamp).param("a", args.a).param("M_list", args.m_list.clone());
    Ok(Outcome { text: meta.csv_comment() + &rows, passed: true })
}

#[derive(Serialize)]
struct TermOut {
    power: u32,
    coeff: f64,
}

#[derive(Serialize)]
struct ComponentOut {
    k: usize,
    /// The component multiplies `X̂^{xhat_power}`.
    xhat_power: usize,
    decay: f64,
    terms: Vec<TermOut>,
}

#[derive(Serialize)]
struct SampleOut {
    x: f64,
    body: f64,
}

fn cmd_wavefunction(args: &WaveArgs, timestamp: bool) -> Result<Outcome, Error> {
    if args.samples < 2 || !(args.xmax.is_finite() && args.xmax > 0.0) {
        return Err(Error::InvalidArgument("need --samples >= 2 and a positive --xmax".into()));
    }
    let p = ModelParams::new(1, args.n, args.a)?;
    let energy = bound_state_energy(&p)?;
    let mut psi = build_wavefunction_at(&p, -energy * (1.0 + args.perturb_energy))?;
    if args.normalize {
        psi = normalize(&psi)?;
    }
    let report = validate_wavefunction(&psi, &p)?;
    let n = psi.n_pairs();
    let components: Vec<ComponentOut> = psi
        .components()
        .map(|(k, f)| ComponentOut {
            k,
            xhat_power: 2 * (n - k),
            decay: *f.decay(),
            terms: f.terms().map(|(power, c)| TermOut { power, coeff: *c }).collect(),
        })
        .collect();
    let step = 2.0 * args.xmax / (args.samples - 1) as f64;
    let samples: Vec<SampleOut> = (0..args.samples)
        .map(|i| {
            let x = if 2 * i + 1 == args.samples { 0.0 } else { -args.xmax + step * i as f64 };
            SampleOut { x, body: psi.body_at(x) }
        })
        .collect();
    let meta = Metadata::new(timestamp)
        .param("m", 1)
        .param("n", p.n)
        .param("a", p.a)
        .param("M", p.super_dimension())
        .tolerance("validation", VALIDATION_TOL);
    let body = json!({
        "E": energy,
        "E_tilde": -energy,
        "decay": psi.decay(),
        "psi0": psi.psi0(),
        "normalized": args.normalize,
        "squared_norm": squared_norm(&psi),
        "components": components,
        "samples": samples,
        "validation": report,
        "validation_passed": report.passed(),
    });
    Ok(Outcome { text: json_document(&meta, body), passed: report.passed() })
}

fn cmd_fermionic(args: &FermionicArgs, timestamp: bool) -> Result<Outcome, Error> {
    let h = build_hamiltonian(args.n, args.a)?;
    let report = spectrum(&h)?;
    let charpoly: Vec<String> = characteristic_polynomial_exact(args.n)?.iter().map(|c| c.to_string()).collect();
    let levels: Vec<_> = radial_levels(args.n, args.a)?.iter().map(|z| json!({"re": z.re, "im": z.im})).collect();
    let meta = Metadata::new(timestamp)
        .param("m", 0)
        .param("n", args.n)
        .param("a", args.a)
        .param("M", -2 * args.n as i64)
        .tolerance("cluster_and_rank_relative", SPECTRUM_REL_TOL);
    let body = json!({
        "spectrum": report,
        "radial_characteristic_polynomial": charpoly,
        "radial_levels": levels,
    });
    Ok(Outcome { text: json_document(&meta, body), passed: true })
}

fn cmd_verify(args: &VerifyArgs, timestamp: bool) -> Outcome {
    let level = match args.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let checks = run_suite(level, VerifyOptions { energy_perturbation: args.perturb_energy });
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    for c in &failed {
        eprintln!("FAIL [{}] {}: residual {} (tolerance {})", c.module, c.check, fmt12(c.residual), fmt12(c.tolerance));
    }
    let passed = failed.is_empty();
    let meta = Metadata::new(timestamp)
        .param("level", if matches!(level, Level::Quick) { "quick" } else { "full" })
        .tolerance("transform_relative", TRANSFORM_REL_TOL)
        .tolerance("wavefunction", VALIDATION_TOL)
        .tolerance("self_consistency", CONSISTENCY_TOL)
        .tolerance("asymptote_relative", ASYMPTOTE_REL_TOL)
        .tolerance("spectrum_relative", SPECTRUM_REL_TOL);
    let body = json!({
        "passed": passed,
        "total": checks.len(),
        "failed": failed.len(),
        "checks": checks,
    });
    Outcome { text: json_document(&meta, body), passed }
}
