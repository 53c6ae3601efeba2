//! Complex special functions: principal-branch log-Gamma and a
//! branch-normalized square root.
//!
//! The Gamma evaluations feed the closed-form scattering amplitudes, whose
//! arguments wander over the complex plane as the energy sweeps through the
//! spectrum. Everything is kept in log space so that amplitude ratios can be
//! formed as `exp(sum of logs - sum of logs)` without overflow.

use crate::error::{Error, Result};
use crate::ComplexScalar;

/// Lanczos parameter `g = 7` paired with the nine-term coefficient set below.
const LANCZOS_G: f64 = 7.0;

/// Nine-term Lanczos coefficients for `g = 7`, accurate to about fifteen
/// significant digits over the right half-plane.
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln(2 pi) / 2`.
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_74;

/// Complex arguments closer than this to a non-positive integer are treated
/// as sitting on a Gamma pole.
pub const GAMMA_POLE_TOLERANCE: f64 = 1e-12;

/// Returns the non-positive integer that `z` sits on, if it is within
/// [`GAMMA_POLE_TOLERANCE`] of one.
fn gamma_pole_at(z: ComplexScalar) -> Option<f64> {
    let nearest = z.re.round();
    if nearest <= 0.0 && (z.re - nearest).hypot(z.im) <= GAMMA_POLE_TOLERANCE {
        Some(nearest)
    } else {
        None
    }
}

/// `log(sin(pi z))` evaluated without forming `sin(pi z)` itself, which
/// overflows once `|Im z|` exceeds about 230.
///
/// The dominant exponential is factored out, so only `log1p`-sized terms are
/// computed. The imaginary part may differ from the principal value by a
/// multiple of `2 pi`; callers only ever exponentiate sums of these logs, so
/// the offset is immaterial.
fn log_sin_pi(z: ComplexScalar) -> ComplexScalar {
    if z.im < 0.0 {
        return log_sin_pi(z.conj()).conj();
    }
    // For Im z >= 0: sin(pi z) = exp(-i pi z) * (1 - exp(2 i pi z)) * (i / 2).
    let q = (ComplexScalar::new(0.0, 2.0 * std::f64::consts::PI) * z).exp();
    let log_i_half = ComplexScalar::new(-std::f64::consts::LN_2, std::f64::consts::FRAC_PI_2);
    ComplexScalar::new(0.0, -std::f64::consts::PI) * z
        + (ComplexScalar::new(1.0, 0.0) - q).ln()
        + log_i_half
}

/// Lanczos evaluation of `log Gamma(z)` for `Re z >= 0.5`.
fn log_gamma_lanczos(z: ComplexScalar) -> ComplexScalar {
    let zz = z - 1.0;
    let mut acc = ComplexScalar::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (zz + i as f64);
    }
    let t = zz + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (zz + 0.5) * t.ln() - t + acc.ln()
}

/// `log Gamma(z)` on the principal branch of each intermediate logarithm.
///
/// Uses the Lanczos series for `Re z >= 0.5` and the reflection formula
/// `Gamma(z) Gamma(1 - z) = pi / sin(pi z)` otherwise. The imaginary part may
/// carry a `2 pi` branch offset in the reflected region; `exp(log_gamma(z))`
/// is always correct.
///
/// # Errors
///
/// [`Error::GammaPole`] if `z` is within [`GAMMA_POLE_TOLERANCE`] of a
/// non-positive integer.
pub fn log_gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if gamma_pole_at(z).is_some() {
        return Err(Error::GammaPole(z));
    }
    if z.re >= 0.5 {
        Ok(log_gamma_lanczos(z))
    } else {
        let ln_pi = ComplexScalar::new(std::f64::consts::PI.ln(), 0.0);
        Ok(ln_pi - log_sin_pi(z) - log_gamma_lanczos(1.0 - z))
    }
}

/// `Gamma(z)` as `exp(log_gamma(z))`.
///
/// # Errors
///
/// Same as [`log_gamma`].
pub fn gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    log_gamma(z).map(|lg| lg.exp())
}

/// Principal square root normalized onto the physical branch: the result has
/// `Re >= 0`, and a purely imaginary result has `Im >= 0`.
///
/// Channel wavenumbers are built from this, so evanescent channels always
/// decay (positive imaginary part) rather than blow up.
pub fn branch_sqrt(w: ComplexScalar) -> ComplexScalar {
    let r = w.sqrt();
    if r.re < 0.0 {
        -r
    } else if r.re == 0.0 {
        ComplexScalar::new(0.0, r.im.abs())
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn rel_err(got: ComplexScalar, want: ComplexScalar) -> f64 {
        (got - want).norm() / want.norm()
    }

    #[test]
    fn log_gamma_at_one_and_two_is_zero() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = gamma(c(0.5, 0.0)).unwrap();
        assert!((g.re - std::f64::consts::PI.sqrt()).abs() <= 1e-12);
        assert!(g.im.abs() <= 1e-12);
    }

    #[test]
    fn log_gamma_matches_reference_at_one_plus_i() {
        let got = log_gamma(c(1.0, 1.0)).unwrap();
        let want = c(-0.650_923_199_301_856_34, -0.301_640_320_467_533_2);
        assert!((got - want).norm() < 1e-13, "got {got}");
    }

    #[test]
    fn log_gamma_matches_reference_in_left_half_plane() {
        // Gamma(-2.5) = -8 sqrt(pi) / 15.
        let got = gamma(c(-2.5, 0.0)).unwrap();
        let want = -8.0 * std::f64::consts::PI.sqrt() / 15.0;
        assert!((got.re - want).abs() < 1e-13 * want.abs());
        assert!(got.im.abs() < 1e-13);
    }

    #[test]
    fn poles_are_rejected() {
        for z in [
            c(0.0, 0.0),
            c(-3.0, 0.0),
            c(-7.0, 5e-13),
            c(-1.0 + 4e-13, 0.0),
        ] {
            assert!(matches!(log_gamma(z), Err(Error::GammaPole(_))), "z = {z}");
        }
        // Just off the pole is fine.
        assert!(log_gamma(c(-3.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn recurrence_and_reflection_hold_over_random_samples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_cafe);
        let mut checked = 0;
        while checked < 200 {
            let z = c(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            let (Ok(g), Ok(g1)) = (gamma(z), gamma(z + 1.0)) else {
                continue;
            };
            // Gamma(z + 1) = z Gamma(z).
            assert!(rel_err(g1, z * g) <= 1e-11, "recurrence at z = {z}");
            // Gamma(z) Gamma(1 - z) = pi / sin(pi z), with |Im z| small enough
            // that the right side is representable directly.
            if z.im.abs() < 100.0 {
                let Ok(gr) = gamma(1.0 - z) else { continue };
                let sin_pi_z = (std::f64::consts::PI * z).sin();
                if sin_pi_z.norm() > 1e-8 {
                    let lhs = g * gr;
                    let rhs = std::f64::consts::PI / sin_pi_z;
                    assert!(rel_err(lhs, rhs) <= 1e-10, "reflection at z = {z}");
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn log_gamma_handles_large_imaginary_parts() {
        // |Gamma(i t)|^2 = pi / (t sinh(pi t)); compare log magnitudes at
        // t = 300, far beyond where sin(pi z) itself would overflow.
        let t: f64 = 300.0;
        let lg = log_gamma(c(0.0, t)).unwrap();
        let ln_sinh = std::f64::consts::PI * t - std::f64::consts::LN_2;
        let want = 0.5 * (std::f64::consts::PI.ln() - t.ln() - ln_sinh);
        assert!(
            (lg.re - want).abs() <= 1e-10 * want.abs(),
            "got {} want {want}",
            lg.re
        );
    }

    #[test]
    fn branch_sqrt_reference_points() {
        assert_eq!(branch_sqrt(c(4.0, 0.0)), c(2.0, 0.0));
        let i = branch_sqrt(c(-1.0, 0.0));
        assert!((i - c(0.0, 1.0)).norm() < 1e-15);
        let r = branch_sqrt(c(-99.0, 0.0));
        assert!((r - c(0.0, 9.949_874_371_066_199_5)).norm() < 1e-12);
        // Just below the cut still lands on the positive imaginary axis.
        let below = branch_sqrt(c(-4.0, -0.0));
        assert!(below.re == 0.0 && below.im > 0.0);
    }

    proptest::proptest! {
        #[test]
        fn branch_sqrt_squares_back(re in -1e3f64..1e3, im in -1e3f64..1e3) {
            let w = c(re, im);
            proptest::prop_assume!(w.norm() > 1e-6);
            let r = branch_sqrt(w);
            proptest::prop_assert!(r.re >= 0.0);
            if r.re == 0.0 {
                proptest::prop_assert!(r.im >= 0.0);
            }
            let back = r * r;
            proptest::prop_assert!((back - w).norm() <= 1e-14 * w.norm().max(1.0));
        }
    }
}
