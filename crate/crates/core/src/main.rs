use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use scspdc::config::expand_args;
use scspdc::fock::{fidelity, TwoModeState};
use scspdc::pdc::{choose_cutoff, evolve_analytic, evolve_numeric};
use scspdc::scs::{build_scs, g_deform};
use scspdc::sweep::{
    figure_data, run_sweep, Axis, Column, FigureId, FixedParams, SweepConfig, FIGURE_MAX_PAIRS,
};
use scspdc::verify::{verify_suite, VerifyOptions};
use scspdc::{Error, PdcParams, Result, ScsParams, TruncationPolicy};

const SUBCOMMANDS: [&str; 5] = ["state", "evolve", "sweep", "figure", "verify"];

#[derive(Debug, Parser)]
#[command(
    name = "scspdc",
    version,
    about = "Stimulated down-conversion seeded with two-mode sphere coherent states",
    args_override_self = true
)]
struct Cli {
    /// Largest neglected probability in the pair expansion.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tail_tol: f64,

    /// Cap on created pairs (default 200; 20000 for `figure`).
    #[arg(long, global = true)]
    max_pairs: Option<usize>,

    /// Output file, or directory for `figure`. Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker threads for sweeps and verification.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Flat `key = value` file of flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Analytic,
    Numeric,
    Both,
}

#[derive(Debug, clap::Args)]
struct SeedArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long = "M")]
    photons: usize,
    #[arg(long, default_value_t = 1.0)]
    z_re: f64,
    #[arg(long, default_value_t = 0.0)]
    z_im: f64,
}

impl SeedArgs {
    fn params(&self) -> Result<ScsParams> {
        ScsParams::new(self.lambda, self.photons, Complex64::new(self.z_re, self.z_im))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a two-mode sphere coherent state.
    State(SeedArgs),
    /// Evolve a seed through the down-converter.
    Evolve {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
    },
    /// Sweep one or two of lambda, r, z and tabulate the observables.
    Sweep {
        /// `name:start:stop:steps`, name one of lambda, r, z. Give once or twice.
        #[arg(long, required = true)]
        axis: Vec<String>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long = "M")]
        photons: Option<usize>,
        #[arg(long)]
        z_re: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        z_im: f64,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Comma-separated subset of S, ns, ni, Qs, Qi, g2, leakage.
        #[arg(long, value_delimiter = ',')]
        observables: Option<Vec<String>>,
    },
    /// Write the data behind a figure (fig1..fig7, or `all`).
    Figure { id: String },
    /// Run the self-verification suite.
    Verify {
        /// Corrupt the deformation function on the closed-form side.
        #[arg(long, hide = true)]
        corrupt_g: bool,
    },
}

fn policy(cli: &Cli, default_pairs: usize) -> Result<TruncationPolicy> {
    TruncationPolicy::new(cli.tail_tol, cli.max_pairs.unwrap_or(default_pairs))
        .map_err(|e| Error::InvalidConfig(e.to_string()))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn amplitude_csv(state: &TwoModeState) -> String {
    let mut out = String::from("n_s,n_i,re,im\n");
    for (k, a) in state.iter() {
        out.push_str(&format!("{},{},{:.16e},{:.16e}\n", k.n_s, k.n_i, a.re, a.im));
    }
    out
}

#[derive(Serialize)]
struct Metadata {
    method: Method,
    cutoff: usize,
    leakage: f64,
    fidelity_between_methods: Option<f64>,
}

fn evolve(cli: &Cli, seed: &SeedArgs, r: f64, theta: f64, method: Method) -> Result<String> {
    let seed = seed.params()?;
    let pdc = PdcParams::new(r, theta)?;
    let policy = policy(cli, TruncationPolicy::default().max_pairs)?;
    let numeric = |cutoff| evolve_numeric(&build_scs(&seed), &pdc, cutoff, &policy);
    let (state, meta) = match method {
        Method::Analytic => {
            let a = evolve_analytic(&seed, &pdc, &policy)?;
            let meta = Metadata {
                method,
                cutoff: a.cutoff,
                leakage: a.norm_deficit,
                fidelity_between_methods: None,
            };
            (a.state, meta)
        }
        Method::Numeric => {
            let n = numeric(choose_cutoff(seed.photons, &pdc, &policy)?)?;
            let meta = Metadata {
                method,
                cutoff: n.cutoff,
                leakage: n.leakage,
                fidelity_between_methods: None,
            };
            (n.state, meta)
        }
        Method::Both => {
            let a = evolve_analytic(&seed, &pdc, &policy)?;
            let n = numeric(a.cutoff)?;
            let meta = Metadata {
                method,
                cutoff: a.cutoff,
                leakage: a.norm_deficit.max(n.leakage),
                fidelity_between_methods: Some(fidelity(&a.state, &n.state)),
            };
            (a.state, meta)
        }
    };
    Ok(match cli.format {
        Format::Json => format!(
            "{{\"state\":{},\"metadata\":{}}}\n",
            state.to_json(),
            serde_json::to_string(&meta)?
        ),
        Format::Csv => amplitude_csv(&state),
    })
}

fn sweep_config(cli: &Cli) -> Result<SweepConfig> {
    let Command::Sweep {
        axis,
        lambda,
        photons,
        z_re,
        z_im,
        r,
        theta,
        observables,
    } = &cli.command
    else {
        unreachable!("called for the sweep subcommand only");
    };
    let axes = axis.iter().map(|a| Axis::parse(a)).collect::<Result<Vec<_>>>()?;
    let observables = match observables {
        Some(names) => names.iter().map(|n| n.trim().parse()).collect::<Result<Vec<Column>>>()?,
        None => Column::ALL.to_vec(),
    };
    Ok(SweepConfig {
        axes,
        fixed: FixedParams {
            lambda: *lambda,
            photons: *photons,
            z: z_re.map(|re| Complex64::new(re, *z_im)),
            r: *r,
            theta: Some(*theta),
        },
        observables,
        policy: policy(cli, TruncationPolicy::default().max_pairs)?,
        threads: cli.threads,
    })
}

fn corrupted_g(lambda: f64, m: usize, photons: usize) -> f64 {
    g_deform(lambda, m, photons) * (1.0 + 0.05 * m as f64)
}

/// Returns the process exit code on success paths (1 on failed checks).
fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::State(seed) => {
            let state = build_scs(&seed.params()?);
            let text = match cli.format {
                Format::Json => state.to_json() + "\n",
                Format::Csv => amplitude_csv(&state),
            };
            emit(cli, &text)?;
        }
        Command::Evolve {
            seed,
            r,
            theta,
            method,
        } => emit(cli, &evolve(cli, seed, *r, *theta, *method)?)?,
        Command::Sweep { .. } => {
            let table = run_sweep(&sweep_config(cli)?)?;
            let text = match cli.format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json() + "\n",
            };
            emit(cli, &text)?;
        }
        Command::Figure { id } => {
            let ids = if id == "all" {
                FigureId::ALL.to_vec()
            } else {
                vec![id.parse()?]
            };
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
            let policy = policy(cli, FIGURE_MAX_PAIRS)?;
            for f in ids {
                for path in figure_data(f, &dir, &policy, cli.threads)? {
                    println!("{}", path.display());
                }
            }
        }
        Command::Verify { corrupt_g } => {
            let opts = VerifyOptions {
                tail_tol: cli.tail_tol,
                deformation: corrupt_g.then_some(corrupted_g as fn(f64, usize, usize) -> f64),
                threads: cli.threads,
            };
            let report = verify_suite(&opts)?;
            for c in &report.checks {
                eprintln!(
                    "{} [{:>2}] {:<34} measured {:.3e} bound {:.3e}  {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.criterion,
                    c.name,
                    c.measured,
                    c.bound,
                    c.detail
                );
            }
            emit(cli, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            if !report.passed {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let args = match expand_args(std::env::args().collect(), &SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let cli = Cli::parse_from(args);
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be >= 1");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
