//! Closed-form scattering coefficients for the hyperbolic tangent step.
//!
//! For `V(x) = a tanh(b x)` the mode equation maps onto the hypergeometric
//! equation, and the connection coefficients between the left and right
//! plane-wave bases are ratios of Gamma functions. With
//!
//! ```text
//! nu = k_L / (2b),    mu = k_R / (2b),
//! lambda = (b + sqrt(b^2 - 4 a^2)) / (2b),
//! ```
//!
//! where `k_L`, `k_R` are the signed (or evanescent, positive-imaginary)
//! channel wavenumbers, the incident and reflected amplitudes of the
//! transmitted-wave solution are
//!
//! ```text
//! A = Gamma(1 - 2 i mu) Gamma(-2 i nu)
//!     / [ Gamma(lambda - i nu - i mu) Gamma(1 - lambda - i nu - i mu) ],
//!
//! B = Gamma(1 - 2 i mu) Gamma(2 i nu)
//!     / [ Gamma(lambda + i nu - i mu) Gamma(1 - lambda + i nu - i mu) ],
//! ```
//!
//! giving `R = |B|^2 / |A|^2` and `T = Re(mu / nu) / |A|^2`. Everything is
//! evaluated in log space, and a Gamma pole in a denominator sends the
//! corresponding amplitude to its correct limit, zero.

use crate::channels::channel_state;
use crate::error::{Error, Result};
use crate::potential::{PotentialKind, PotentialSpec};
use crate::special::{branch_sqrt, log_gamma};
use crate::ComplexScalar;

/// The three parameters of the closed-form solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TanhAnalyticParams {
    pub nu: ComplexScalar,
    pub mu: ComplexScalar,
    pub lambda: ComplexScalar,
}

/// Computes `nu`, `mu`, `lambda` for the tanh step at energy `e`.
///
/// # Errors
///
/// [`Error::WrongPotential`] for any other potential family.
pub fn analytic_params(potential: &PotentialSpec, mass: f64, e: f64) -> Result<TanhAnalyticParams> {
    if potential.kind != PotentialKind::HyperbolicTangent {
        return Err(Error::WrongPotential);
    }
    let (v_l, v_r) = potential.asymptotic_limits();
    let b = potential.b;
    let k_l = channel_state(e, v_l, mass).wavenumber();
    let k_r = channel_state(e, v_r, mass).wavenumber();
    let disc = ComplexScalar::new(b * b - 4.0 * potential.a * potential.a, 0.0);
    Ok(TanhAnalyticParams {
        nu: k_l / (2.0 * b),
        mu: k_r / (2.0 * b),
        lambda: (b + branch_sqrt(disc)) / (2.0 * b),
    })
}

/// Log of a `Gamma Gamma / (Gamma Gamma)` product, or `None` when a
/// denominator factor sits on a pole and the product is exactly zero.
fn log_gamma_ratio(
    numerators: [ComplexScalar; 2],
    denominators: [ComplexScalar; 2],
) -> Result<Option<ComplexScalar>> {
    let mut total = log_gamma(numerators[0])? + log_gamma(numerators[1])?;
    for d in denominators {
        match log_gamma(d) {
            Ok(lg) => total -= lg,
            Err(Error::GammaPole(_)) => return Ok(None),
            Err(other) => return Err(other),
        }
    }
    Ok(Some(total))
}

fn log_amplitudes(
    params: &TanhAnalyticParams,
) -> Result<(Option<ComplexScalar>, Option<ComplexScalar>)> {
    let i = ComplexScalar::new(0.0, 1.0);
    let TanhAnalyticParams { nu, mu, lambda } = *params;
    let log_a = log_gamma_ratio(
        [1.0 - 2.0 * i * mu, -2.0 * i * nu],
        [lambda - i * nu - i * mu, 1.0 - lambda - i * nu - i * mu],
    )?;
    let log_b = log_gamma_ratio(
        [1.0 - 2.0 * i * mu, 2.0 * i * nu],
        [lambda + i * nu - i * mu, 1.0 - lambda + i * nu - i * mu],
    )?;
    Ok((log_a, log_b))
}

/// The incident and reflected amplitudes `(A, B)`.
///
/// # Errors
///
/// [`Error::GammaPole`] if a numerator factor sits on a Gamma pole (this
/// happens only on the measure-zero threshold set where a channel wavenumber
/// vanishes). Denominator poles are regular and return a zero amplitude.
pub fn analytic_amplitudes(params: &TanhAnalyticParams) -> Result<(ComplexScalar, ComplexScalar)> {
    let zero = ComplexScalar::new(0.0, 0.0);
    let (log_a, log_b) = log_amplitudes(params)?;
    Ok((
        log_a.map_or(zero, ComplexScalar::exp),
        log_b.map_or(zero, ComplexScalar::exp),
    ))
}

/// Closed-form `(R, T)` for the tanh step at energy `e`.
///
/// `R = |B|^2 / |A|^2` and `T = Re(mu / nu) / |A|^2`, both formed from log
/// magnitudes so that no intermediate value overflows.
///
/// # Errors
///
/// [`Error::WrongPotential`] for non-tanh potentials,
/// [`Error::LeftChannelEvanescent`] when there is no propagating incident
/// wave, [`Error::GammaPole`] on the threshold set itself.
pub fn analytic_coefficients(potential: &PotentialSpec, mass: f64, e: f64) -> Result<(f64, f64)> {
    let params = analytic_params(potential, mass, e)?;
    let (v_l, _) = potential.asymptotic_limits();
    if !channel_state(e, v_l, mass).propagating {
        return Err(Error::LeftChannelEvanescent(e));
    }
    let (log_a, log_b) = log_amplitudes(&params)?;
    let Some(log_a) = log_a else {
        return Err(Error::InvalidConfig(format!(
            "incident amplitude vanished at E = {e}; not a scattering state"
        )));
    };
    let big_r = match log_b {
        Some(log_b) => (2.0 * (log_b.re - log_a.re)).exp(),
        None => 0.0,
    };
    let flux_ratio = (params.mu / params.nu).re;
    let big_t = flux_ratio * (-2.0 * log_a.re).exp();
    Ok((big_r, big_t))
}
