//! Classical fourth-order Runge-Kutta for complex scalar first-order ODEs.
//!
//! The propagator integrates right to left, so the step is signed and nothing
//! here assumes a direction. Grid positions are computed as
//! `x_start + i * h` rather than accumulated, which keeps runs bitwise
//! reproducible regardless of how the steps are scheduled.

use crate::error::{Error, Result};
use crate::ComplexScalar;

/// Fixed-step integration schedule: `step_count` steps of signed width
/// `signed_step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rk4Config {
    pub step_count: usize,
    pub signed_step: f64,
}

impl Rk4Config {
    /// Builds a schedule from an explicit step count and signed step width.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidConfig`] if `step_count` is zero or `signed_step` is
    /// zero or non-finite.
    pub fn new(step_count: usize, signed_step: f64) -> Result<Self> {
        if step_count == 0 {
            return Err(Error::InvalidConfig("step_count must be at least 1".into()));
        }
        if !signed_step.is_finite() || signed_step == 0.0 {
            return Err(Error::InvalidConfig(format!(
                "signed_step must be finite and non-zero, got {signed_step}"
            )));
        }
        Ok(Self {
            step_count,
            signed_step,
        })
    }

    /// Builds the schedule that covers `[x_start, x_end]` in `step_count`
    /// equal steps; the step is negative when `x_end < x_start`.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidConfig`] under the same conditions as [`Rk4Config::new`].
    pub fn over_interval(x_start: f64, x_end: f64, step_count: usize) -> Result<Self> {
        if step_count == 0 {
            return Err(Error::InvalidConfig("step_count must be at least 1".into()));
        }
        Self::new(step_count, (x_end - x_start) / step_count as f64)
    }
}

/// One classical RK4 step of width `h` from `(x, y)`.
#[inline]
pub fn rk4_step(
    rhs: &mut impl FnMut(f64, ComplexScalar) -> ComplexScalar,
    x: f64,
    y: ComplexScalar,
    h: f64,
) -> ComplexScalar {
    let k1 = rhs(x, y);
    let k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1);
    let k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2);
    let k4 = rhs(x + h, y + h * k3);
    y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrates `y' = rhs(x, y)` from `(x_start, y_start)` across the whole
/// schedule and returns the final state.
///
/// # Errors
///
/// [`Error::NonFiniteState`] as soon as a step produces a non-finite value,
/// reporting the position and step index at which it happened.
pub fn rk4_integrate(
    mut rhs: impl FnMut(f64, ComplexScalar) -> ComplexScalar,
    y_start: ComplexScalar,
    x_start: f64,
    config: &Rk4Config,
) -> Result<ComplexScalar> {
    let h = config.signed_step;
    let mut y = y_start;
    for i in 0..config.step_count {
        let x = x_start + i as f64 * h;
        y = rk4_step(&mut rhs, x, y, h);
        if !y.is_finite() {
            return Err(Error::NonFiniteState {
                x: x + h,
                step: i + 1,
                attempts: 1,
            });
        }
    }
    Ok(y)
}
