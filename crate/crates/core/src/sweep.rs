//! Energy sweeps and the reports built on top of them.
//!
//! A sweep solves every energy of a uniform grid against one shared
//! potential table. Grid points that land within `1e-9 m` of a regime
//! boundary are nudged just above it, so the solver's near-threshold guard
//! never trips on a default grid. Individual point failures are tolerated up
//! to 0.1% of the grid and recorded in the sweep metadata; beyond that the
//! sweep itself fails.
//!
//! On top of [`run_sweep`] sit three reports: [`compare_with_oracle`] checks
//! the propagator against the closed-form tanh coefficients,
//! [`convergence_gate`] measures the RK4 order through Richardson ratios of
//! the left-edge log-derivative, and [`regime_report`] tabulates the
//! spectral bands.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::analytic_coefficients;
use crate::channels::{superradiant_band_exists, EnergyRegime};
use crate::error::{Error, Result};
use crate::potential::{PotentialKind, PotentialSpec};
use crate::propagator::{
    log_derivative_at_left, solve_point_with_table, PotentialTable, ScatteringProblem,
    SpectrumPoint, THRESHOLD_EPSILON_SCALE,
};

/// A sweep: one scattering problem evaluated over a uniform energy grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepConfig {
    pub problem: ScatteringProblem,
    pub e_min: f64,
    pub e_max: f64,
    pub n_energies: usize,
    /// Solve grid points across threads. The output is identical either way;
    /// points are collected in grid order and each solve is independent.
    pub parallel: bool,
}

/// A grid point that failed to solve, kept in the sweep metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailedPoint {
    pub e: f64,
    pub message: String,
}

/// Provenance of a sweep: the problem echoed back, plus wall time and any
/// dropped points.
#[derive(Debug, Clone, Serialize)]
pub struct SweepMeta {
    pub potential: PotentialSpec,
    pub mass: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub step_count: usize,
    pub e_min: f64,
    pub e_max: f64,
    pub n_energies: usize,
    pub failed: Vec<FailedPoint>,
    /// Not serialized: keeps repeated runs byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

/// The spectrum produced by [`run_sweep`], in strictly increasing energy
/// order.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub meta: SweepMeta,
    pub points: Vec<SpectrumPoint>,
}

fn validate(config: &SweepConfig) -> Result<()> {
    if !config.e_min.is_finite() || !config.e_max.is_finite() || config.e_min >= config.e_max {
        return Err(Error::InvalidConfig(format!(
            "energy range must satisfy e_min < e_max, got [{}, {}]",
            config.e_min, config.e_max
        )));
    }
    if config.n_energies < 2 {
        return Err(Error::InvalidConfig("n_energies must be at least 2".into()));
    }
    Ok(())
}

/// The uniform grid of the sweep, with points nudged to sit exactly
/// `1e-9 m` above any regime boundary they would otherwise touch.
pub fn energy_grid(config: &SweepConfig) -> Vec<f64> {
    let epsilon = THRESHOLD_EPSILON_SCALE * config.problem.mass;
    let thresholds = config.problem.thresholds().sorted();
    let span = config.e_max - config.e_min;
    let last = (config.n_energies - 1) as f64;
    (0..config.n_energies)
        .map(|i| {
            let mut e = config.e_min + span * (i as f64 / last);
            for t in thresholds {
                if (e - t).abs() < epsilon {
                    e = t + epsilon;
                }
            }
            e
        })
        .collect()
}

/// Runs the sweep.
///
/// # Errors
///
/// [`Error::InvalidConfig`] for a bad grid specification, and
/// [`Error::SweepFailed`] when more than 0.1% of the grid points error out.
/// Failures within that budget are dropped from `points` and recorded in
/// `meta.failed`.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    validate(config)?;
    let started = Instant::now();
    let grid = energy_grid(config);
    let table = PotentialTable::for_problem(&config.problem);
    let solve = |e: &f64| solve_point_with_table(&config.problem, *e, Some(&table));
    let outcomes: Vec<Result<SpectrumPoint>> = if config.parallel {
        grid.par_iter().map(solve).collect()
    } else {
        grid.iter().map(solve).collect()
    };

    let mut points = Vec::with_capacity(outcomes.len());
    let mut failed = Vec::new();
    for (e, outcome) in grid.iter().zip(outcomes) {
        match outcome {
            Ok(point) => points.push(point),
            Err(err) => failed.push(FailedPoint {
                e: *e,
                message: err.to_string(),
            }),
        }
    }
    if failed.len() * 1000 > grid.len() {
        return Err(Error::SweepFailed {
            failed: failed.len(),
            total: grid.len(),
            first: failed[0].message.clone(),
        });
    }
    Ok(SweepResult {
        meta: SweepMeta {
            potential: config.problem.potential,
            mass: config.problem.mass,
            x_min: config.problem.x_min,
            x_max: config.problem.x_max,
            step_count: config.problem.step_count,
            e_min: config.e_min,
            e_max: config.e_max,
            n_energies: config.n_energies,
            failed,
            wall_time: started.elapsed(),
        },
        points,
    })
}

/// Per-regime error maxima from an oracle comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandComparison {
    pub regime: EnergyRegime,
    pub n_points: usize,
    pub max_abs_err_r: f64,
    pub max_abs_err_t: f64,
}

/// Result of checking a numeric sweep against the closed-form coefficients.
#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub n_compared: usize,
    pub max_abs_err_r: f64,
    pub max_abs_err_t: f64,
    /// Energy at which `max_abs_err_r` occurred.
    pub worst_energy: f64,
    pub bands: Vec<BandComparison>,
}

/// Sweeps numerically and compares every propagating-incidence point with
/// the closed-form tanh coefficients.
///
/// # Errors
///
/// [`Error::WrongPotential`] for non-tanh potentials, plus anything
/// [`run_sweep`] or the closed form can raise.
pub fn compare_with_oracle(config: &SweepConfig) -> Result<OracleComparison> {
    if config.problem.potential.kind != PotentialKind::HyperbolicTangent {
        return Err(Error::WrongPotential);
    }
    let sweep = run_sweep(config)?;
    let mut max_r = 0.0f64;
    let mut max_t = 0.0f64;
    let mut worst_energy = f64::NAN;
    let mut n_compared = 0;
    let order = [
        EnergyRegime::AbovePositiveThreshold,
        EnergyRegime::RightEvanescent,
        EnergyRegime::Superradiant,
        EnergyRegime::BelowNegativeThreshold,
    ];
    let mut bands: Vec<BandComparison> = order
        .iter()
        .map(|&regime| BandComparison {
            regime,
            n_points: 0,
            max_abs_err_r: 0.0,
            max_abs_err_t: 0.0,
        })
        .collect();
    for point in &sweep.points {
        if point.conventional {
            continue;
        }
        let (r, t) =
            analytic_coefficients(&config.problem.potential, config.problem.mass, point.e)?;
        let dr = (point.big_r - r).abs();
        let dt = (point.big_t - t).abs();
        n_compared += 1;
        if dr > max_r {
            max_r = dr;
            worst_energy = point.e;
        }
        max_t = max_t.max(dt);
        if let Some(band) = bands.iter_mut().find(|b| b.regime == point.regime) {
            band.n_points += 1;
            band.max_abs_err_r = band.max_abs_err_r.max(dr);
            band.max_abs_err_t = band.max_abs_err_t.max(dt);
        }
    }
    bands.retain(|b| b.n_points > 0);
    Ok(OracleComparison {
        n_compared,
        max_abs_err_r: max_r,
        max_abs_err_t: max_t,
        worst_energy,
        bands,
    })
}

/// One energy of a convergence study: Richardson deltas of the left-edge
/// log-derivative at step counts `N`, `2N`, `4N`, and the order they imply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceSample {
    pub e: f64,
    pub delta_coarse: f64,
    pub delta_fine: f64,
    /// `log2(delta_coarse / delta_fine)`; `None` when the deltas sit at the
    /// roundoff floor and the ratio is meaningless.
    pub order: Option<f64>,
}

/// Result of [`convergence_gate`].
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub base_step_count: usize,
    pub samples: Vec<ConvergenceSample>,
    /// Mean of the per-energy orders, when any survive the roundoff filter.
    pub order_estimate: Option<f64>,
    pub pass: bool,
    pub note: Option<String>,
}

/// Floor below which Richardson deltas are treated as roundoff noise.
const ROUNDOFF_FLOOR: f64 = 1e-12;

/// Measures the integrator's convergence order by Richardson ratios at step
/// counts `N`, `2N`, `4N`, where `N` is the problem's step count. The gate
/// passes when the mean order lands in `[3.5, 4.5]`, or when the deltas are
/// already at the roundoff floor (reported in `note`).
///
/// # Errors
///
/// [`Error::InvalidConfig`] for fewer than three sample energies, plus
/// anything the propagation itself can raise.
pub fn convergence_gate(
    problem: &ScatteringProblem,
    energies: &[f64],
) -> Result<ConvergenceReport> {
    if energies.len() < 3 {
        return Err(Error::InvalidConfig(
            "convergence gate needs at least three sample energies".into(),
        ));
    }
    let mut samples = Vec::with_capacity(energies.len());
    for &e in energies {
        let mut edge_values = [crate::ComplexScalar::new(0.0, 0.0); 3];
        for (slot, multiplier) in edge_values.iter_mut().zip([1usize, 2, 4]) {
            let refined = ScatteringProblem {
                step_count: problem.step_count * multiplier,
                ..*problem
            };
            *slot = log_derivative_at_left(&refined, e)?;
        }
        let delta_coarse = (edge_values[0] - edge_values[1]).norm();
        let delta_fine = (edge_values[1] - edge_values[2]).norm();
        let order = if delta_coarse < ROUNDOFF_FLOOR || delta_fine < ROUNDOFF_FLOOR {
            None
        } else {
            Some((delta_coarse / delta_fine).log2())
        };
        samples.push(ConvergenceSample {
            e,
            delta_coarse,
            delta_fine,
            order,
        });
    }
    let orders: Vec<f64> = samples.iter().filter_map(|s| s.order).collect();
    let order_estimate = if orders.is_empty() {
        None
    } else {
        Some(orders.iter().sum::<f64>() / orders.len() as f64)
    };
    let pass = match order_estimate {
        Some(order) => (3.5..=4.5).contains(&order),
        None => true,
    };
    let note = if orders.len() < samples.len() {
        Some(format!(
            "{} of {} sample energies had Richardson deltas below {ROUNDOFF_FLOOR:e} \
             and were excluded as roundoff",
            samples.len() - orders.len(),
            samples.len()
        ))
    } else {
        None
    };
    Ok(ConvergenceReport {
        base_step_count: problem.step_count,
        samples,
        order_estimate,
        pass,
        note,
    })
}

/// One row of the regime table: a spectral band and the reflection behavior
/// expected throughout it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeBand {
    pub regime: EnergyRegime,
    /// Band edges; the outermost rows extend to the infinities.
    pub e_min: f64,
    pub e_max: f64,
    pub expectation: &'static str,
}

/// Tabulates the spectral bands in descending energy order: five rows, or
/// four when the superradiant band is empty and the middle slot collapses
/// into the left-evanescent row.
pub fn regime_report(potential: &PotentialSpec, mass: f64) -> Vec<RegimeBand> {
    let thresholds = potential.thresholds(mass);
    let [t1, t2, t3, t4] = thresholds.sorted();
    let row = |regime: EnergyRegime, e_min: f64, e_max: f64| RegimeBand {
        regime,
        e_min,
        e_max,
        expectation: regime.expectation(),
    };
    let mut rows = vec![
        row(EnergyRegime::AbovePositiveThreshold, t4, f64::INFINITY),
        row(EnergyRegime::RightEvanescent, t3, t4),
    ];
    if superradiant_band_exists(&thresholds) {
        rows.push(row(EnergyRegime::Superradiant, t2, t3));
        rows.push(row(EnergyRegime::LeftEvanescent, t1, t2));
    } else {
        rows.push(row(EnergyRegime::LeftEvanescent, t1, t3));
    }
    rows.push(row(
        EnergyRegime::BelowNegativeThreshold,
        f64::NEG_INFINITY,
        t1,
    ));
    rows
}
