//! Command-line interface for the Klein-Gordon scattering engine.
//!
//! Subcommands: `sweep` (R/T spectrum over an energy grid), `point` (one
//! energy), `compare` (numeric vs closed-form tanh spectrum), `regimes`
//! (spectral band table), `converge` (RK4 order measurement), and
//! `plot-potential` (profile plot).
//!
//! Exit codes: 0 on success, 1 on usage or tolerance failures, 2 on I/O
//! failures.

mod output;
mod plot;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgscatter::{
    compare_with_oracle, convergence_gate, regime_report, run_sweep, solve_point, PotentialKind,
    PotentialSpec, ScatteringProblem, SweepConfig, DEFAULT_STEP_COUNT,
};

use output::{point_to_json, points_to_csv, sweep_to_json, write_output};
use plot::{line_plot, PlotConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] kgscatter::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Parser)]
#[command(
    name = "kgscatter",
    version,
    about = "Reflection and transmission spectra of the stationary 1D Klein-Gordon equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep an energy grid and emit the reflection/transmission spectrum.
    Sweep(SweepArgs),
    /// Solve a single energy.
    Point(PointArgs),
    /// Check the numeric spectrum against the closed-form tanh coefficients.
    Compare(CompareArgs),
    /// Print the spectral band table for a potential.
    Regimes(RegimesArgs),
    /// Measure the integrator's convergence order at sample energies.
    Converge(ConvergeArgs),
    /// Render the potential profile itself as an SVG.
    PlotPotential(PlotPotentialArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PotentialChoice {
    /// V(x) = a tanh(b x)
    Tanh,
    /// V(x) = a exp(-b tanh(c x))
    Alpha,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coefficient {
    R,
    T,
}

#[derive(Args)]
struct PotentialArgs {
    /// Potential family.
    #[arg(long, value_enum, default_value_t = PotentialChoice::Tanh)]
    potential: PotentialChoice,
    /// Amplitude; defaults to 5 (tanh) or -5 (alpha).
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Steepness (tanh) or exponent amplitude (alpha); defaults to 1.
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    /// Alpha-attractor steepness; required for --potential alpha.
    #[arg(long)]
    c: Option<f64>,
    /// Scalar mass (must be positive).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mass: f64,
}

impl PotentialArgs {
    fn resolve(&self) -> Result<(PotentialSpec, f64), CliError> {
        if !self.mass.is_finite() || self.mass <= 0.0 {
            return Err(CliError::Usage(format!(
                "--mass must be positive, got {}",
                self.mass
            )));
        }
        let spec = match self.potential {
            PotentialChoice::Tanh => {
                if self.c.is_some() {
                    return Err(CliError::Usage(
                        "--c applies only to --potential alpha".to_string(),
                    ));
                }
                PotentialSpec::hyperbolic_tangent(self.a.unwrap_or(5.0), self.b.unwrap_or(1.0))?
            }
            PotentialChoice::Alpha => {
                let c = self.c.ok_or_else(|| {
                    CliError::Usage("--c is required for --potential alpha".to_string())
                })?;
                PotentialSpec::alpha_attractor(self.a.unwrap_or(-5.0), self.b.unwrap_or(1.0), c)?
            }
        };
        Ok((spec, self.mass))
    }
}

#[derive(Args)]
struct DomainArgs {
    /// Left edge of the integration domain; defaults to -L at saturation.
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    /// Right edge of the integration domain; defaults to +L at saturation.
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    /// RK4 steps across the domain.
    #[arg(long, default_value_t = DEFAULT_STEP_COUNT)]
    steps: usize,
    /// Permit fewer than 1000 steps (for experiments; accuracy suffers).
    #[arg(long)]
    allow_coarse: bool,
}

impl DomainArgs {
    fn problem(&self, potential: PotentialSpec, mass: f64) -> Result<ScatteringProblem, CliError> {
        if self.steps < 1000 && !self.allow_coarse {
            return Err(CliError::Usage(format!(
                "--steps {} is below the production floor of 1000; pass --allow-coarse to override",
                self.steps
            )));
        }
        let l = potential.saturation_half_width();
        Ok(ScatteringProblem::new(
            potential,
            mass,
            self.xmin.unwrap_or(-l),
            self.xmax.unwrap_or(l),
            self.steps,
        )?)
    }
}

#[derive(Args)]
struct GridArgs {
    /// Lowest sweep energy; defaults to two units below the lowest threshold.
    #[arg(long, allow_negative_numbers = true)]
    emin: Option<f64>,
    /// Highest sweep energy; defaults to six (tanh) or two (alpha) units
    /// above the highest threshold.
    #[arg(long, allow_negative_numbers = true)]
    emax: Option<f64>,
    /// Number of grid energies.
    #[arg(long, default_value_t = 2000)]
    n_energies: usize,
    /// Solve grid points across threads (output is identical either way).
    #[arg(long)]
    parallel: bool,
}

impl GridArgs {
    fn sweep_config(&self, problem: ScatteringProblem) -> SweepConfig {
        let sorted = problem.thresholds().sorted();
        let headroom = match problem.potential.kind {
            PotentialKind::HyperbolicTangent => 6.0,
            PotentialKind::AlphaAttractor => 2.0,
        };
        SweepConfig {
            problem,
            e_min: self.emin.unwrap_or(sorted[0] - 2.0),
            e_max: self.emax.unwrap_or(sorted[3] + headroom),
            n_energies: self.n_energies,
            parallel: self.parallel,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also render the spectrum to this SVG path.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Which coefficient the plot shows.
    #[arg(long, value_enum, default_value_t = Coefficient::R)]
    plot_coefficient: Coefficient,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    #[command(flatten)]
    domain: DomainArgs,
    /// Energy to solve.
    #[arg(long, allow_negative_numbers = true)]
    e: f64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Largest acceptable absolute error in R.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Args)]
struct RegimesArgs {
    #[command(flatten)]
    potential: PotentialArgs,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// Left edge of the integration domain; defaults to -L at saturation.
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    /// Right edge of the integration domain; defaults to +L at saturation.
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    /// Base step count N of the N, 2N, 4N Richardson ladder. The default is
    /// deliberately coarse so the deltas sit far above the roundoff floor.
    #[arg(long, default_value_t = 2500)]
    steps: usize,
    /// Sample energies (comma-separated; at least three).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true,
          default_values_t = vec![-2.0, 0.0, 8.0])]
    energies: Vec<f64>,
}

#[derive(Args)]
struct PlotPotentialArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// Left edge of the plotted range; defaults to -L at saturation.
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    /// Right edge of the plotted range; defaults to +L at saturation.
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    /// SVG output path.
    #[arg(long)]
    out: PathBuf,
}

fn describe(potential: &PotentialSpec, mass: f64) -> String {
    match potential.kind {
        PotentialKind::HyperbolicTangent => {
            format!("tanh a={} b={}, m={mass}", potential.a, potential.b)
        }
        PotentialKind::AlphaAttractor => format!(
            "alpha a={} b={} c={}, m={mass}",
            potential.a,
            potential.b,
            potential.c.unwrap_or(f64::NAN)
        ),
    }
}

fn edge(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{v}")
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<i32, CliError> {
    let (potential, mass) = args.potential.resolve()?;
    let problem = args.domain.problem(potential, mass)?;
    let config = args.grid.sweep_config(problem);
    let result = run_sweep(&config)?;
    let content = match args.format {
        Format::Csv => points_to_csv(&result.points),
        Format::Json => sweep_to_json(&result),
    };
    write_output(args.out.as_deref(), &content)?;
    if let Some(plot_path) = &args.plot {
        let xs: Vec<f64> = result.points.iter().map(|p| p.e).collect();
        let (ys, y_label, reference): (Vec<f64>, &str, f64) = match args.plot_coefficient {
            Coefficient::R => (result.points.iter().map(|p| p.big_r).collect(), "R", 1.0),
            Coefficient::T => (result.points.iter().map(|p| p.big_t).collect(), "T", 0.0),
        };
        let thresholds = potential.thresholds(mass).sorted();
        let svg = line_plot(
            &PlotConfig {
                title: &format!("{y_label} spectrum: {}", describe(&potential, mass)),
                x_label: "E",
                y_label,
                v_lines: &thresholds,
                h_lines: &[reference],
            },
            &xs,
            &ys,
        );
        write_output(Some(plot_path), &svg)?;
    }
    Ok(0)
}

fn cmd_point(args: PointArgs) -> Result<i32, CliError> {
    let (potential, mass) = args.potential.resolve()?;
    let problem = args.domain.problem(potential, mass)?;
    let point = solve_point(&problem, args.e)?;
    let content = match args.format {
        Format::Csv => points_to_csv(&[point]),
        Format::Json => point_to_json(&point),
    };
    write_output(None, &content)?;
    Ok(0)
}

fn cmd_compare(args: CompareArgs) -> Result<i32, CliError> {
    let (potential, mass) = args.potential.resolve()?;
    if potential.kind != PotentialKind::HyperbolicTangent {
        return Err(CliError::Usage(
            "compare requires --potential tanh; the closed form exists only there".to_string(),
        ));
    }
    let problem = args.domain.problem(potential, mass)?;
    let config = args.grid.sweep_config(problem);
    let comparison = compare_with_oracle(&config)?;
    println!("comparing numeric sweep against the closed-form spectrum");
    println!("  potential: {}", describe(&potential, mass));
    println!(
        "  grid: {} energies in [{}, {}]; {} steps over [{}, {}]",
        config.n_energies,
        config.e_min,
        config.e_max,
        config.problem.step_count,
        config.problem.x_min,
        config.problem.x_max
    );
    println!(
        "  compared {} propagating-incidence points",
        comparison.n_compared
    );
    println!(
        "  {:<8} {:>8} {:>13} {:>13}",
        "band", "points", "max |dR|", "max |dT|"
    );
    for band in &comparison.bands {
        println!(
            "  {:<8} {:>8} {:>13.3e} {:>13.3e}",
            band.regime.csv_label(),
            band.n_points,
            band.max_abs_err_r,
            band.max_abs_err_t
        );
    }
    println!(
        "  max |dR| = {:.3e} at E = {:.6} (tolerance {:e})",
        comparison.max_abs_err_r, comparison.worst_energy, args.tol
    );
    let pass = comparison.max_abs_err_r <= args.tol;
    println!("result: {}", if pass { "PASS" } else { "FAIL" });
    Ok(i32::from(!pass))
}

fn cmd_regimes(args: RegimesArgs) -> Result<i32, CliError> {
    let (potential, mass) = args.potential.resolve()?;
    let thresholds = potential.thresholds(mass).sorted();
    println!("regime bands: {}", describe(&potential, mass));
    println!(
        "  thresholds: {}",
        thresholds.map(|t| format!("{t}")).join(", ")
    );
    println!("  {:<8} {:<34} expected", "band", "range");
    for row in regime_report(&potential, mass) {
        let open = if row.e_min == f64::NEG_INFINITY {
            "("
        } else {
            "["
        };
        let range = format!("{open}{}, {})", edge(row.e_min), edge(row.e_max));
        println!(
            "  {:<8} {:<34} {}",
            row.regime.csv_label(),
            range,
            row.expectation
        );
    }
    Ok(0)
}

fn cmd_converge(args: ConvergeArgs) -> Result<i32, CliError> {
    let (potential, mass) = args.potential.resolve()?;
    let l = potential.saturation_half_width();
    let problem = ScatteringProblem::new(
        potential,
        mass,
        args.xmin.unwrap_or(-l),
        args.xmax.unwrap_or(l),
        args.steps,
    )?;
    let report = convergence_gate(&problem, &args.energies)?;
    println!(
        "convergence gate: {} (step counts {}, {}, {})",
        describe(&potential, mass),
        report.base_step_count,
        report.base_step_count * 2,
        report.base_step_count * 4
    );
    for sample in &report.samples {
        match sample.order {
            Some(order) => println!(
                "  E = {}: |y_N - y_2N| = {:.3e}, |y_2N - y_4N| = {:.3e}, order {order:.3}",
                sample.e, sample.delta_coarse, sample.delta_fine
            ),
            None => println!(
                "  E = {}: deltas {:.3e}, {:.3e} at the roundoff floor",
                sample.e, sample.delta_coarse, sample.delta_fine
            ),
        }
    }
    if let Some(note) = &report.note {
        println!("  note: {note}");
    }
    match report.order_estimate {
        Some(order) => println!("  mean order estimate: {order:.3} (window [3.5, 4.5])"),
        None => println!("  every delta sits at the roundoff floor; order not measurable"),
    }
    println!("result: {}", if report.pass { "PASS" } else { "FAIL" });
    Ok(i32::from(!report.pass))
}

fn cmd_plot_potential(args: PlotPotentialArgs) -> Result<i32, CliError> {
    let (potential, mass) = args.potential.resolve()?;
    let l = potential.saturation_half_width();
    let (x_lo, x_hi) = (args.xmin.unwrap_or(-l), args.xmax.unwrap_or(l));
    if !x_lo.is_finite() || !x_hi.is_finite() || x_lo >= x_hi {
        return Err(CliError::Usage(format!(
            "plot range must satisfy xmin < xmax, got [{x_lo}, {x_hi}]"
        )));
    }
    let n = 800;
    let xs: Vec<f64> = (0..=n)
        .map(|i| x_lo + (x_hi - x_lo) * (i as f64 / n as f64))
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&x| potential.evaluate(x)).collect();
    let (v_l, v_r) = potential.asymptotic_limits();
    let svg = line_plot(
        &PlotConfig {
            title: &format!("potential: {}", describe(&potential, mass)),
            x_label: "x",
            y_label: "V(x)",
            v_lines: &[],
            h_lines: &[v_l, v_r],
        },
        &xs,
        &ys,
    );
    write_output(Some(&args.out), &svg)?;
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::Point(args) => cmd_point(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Regimes(args) => cmd_regimes(args),
        Command::Converge(args) => cmd_converge(args),
        Command::PlotPotential(args) => cmd_plot_potential(args),
    }
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                CliError::Io { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn main() {
    std::process::exit(run());
}
