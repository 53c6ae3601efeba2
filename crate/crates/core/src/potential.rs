//! Electrostatic potential profiles with flat asymptotics.
//!
//! Two families are built in. The hyperbolic tangent step
//!
//! ```text
//! V(x) = a tanh(b x)
//! ```
//!
//! rises monotonically from `-a` to `a` and admits closed-form scattering
//! amplitudes. The alpha-attractor profile
//!
//! ```text
//! V(x) = a exp(-b tanh(c x))
//! ```
//!
//! interpolates between `a e^b` and `a e^(-b)` and is only accessible to the
//! numerical propagator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The built-in potential families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    /// `V(x) = a tanh(b x)`.
    HyperbolicTangent,
    /// `V(x) = a exp(-b tanh(c x))`.
    AlphaAttractor,
}

/// A concrete potential profile.
///
/// Construct through [`PotentialSpec::hyperbolic_tangent`] or
/// [`PotentialSpec::alpha_attractor`]; the constructors enforce the parameter
/// ranges each family needs for well-defined asymptotics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    /// Amplitude (tanh) or overall scale (alpha-attractor).
    pub a: f64,
    /// Steepness (tanh) or exponent amplitude (alpha-attractor).
    pub b: f64,
    /// Steepness of the alpha-attractor; absent for the tanh profile.
    pub c: Option<f64>,
}

/// The four regime boundaries `V_L -+ m` and `V_R -+ m` for a given mass,
/// together with the asymptotic levels that generate them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub v_l: f64,
    pub v_r: f64,
    pub e_vl_minus: f64,
    pub e_vl_plus: f64,
    pub e_vr_minus: f64,
    pub e_vr_plus: f64,
}

impl Thresholds {
    /// The four boundaries in ascending order.
    pub fn sorted(&self) -> [f64; 4] {
        let mut t = [
            self.e_vl_minus,
            self.e_vl_plus,
            self.e_vr_minus,
            self.e_vr_plus,
        ];
        t.sort_by(f64::total_cmp);
        t
    }
}

impl PotentialSpec {
    /// `V(x) = a tanh(b x)`.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidConfig`] unless `b > 0` and both parameters are finite.
    pub fn hyperbolic_tangent(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || b <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tanh potential requires finite a and b > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(Self {
            kind: PotentialKind::HyperbolicTangent,
            a,
            b,
            c: None,
        })
    }

    /// `V(x) = a exp(-b tanh(c x))`.
    ///
    /// `b = 0` is permitted and degenerates to the flat potential `V = a`.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidConfig`] unless `c > 0` and all parameters are finite.
    pub fn alpha_attractor(a: f64, b: f64, c: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !c.is_finite() || c <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "alpha-attractor potential requires finite a, b and c > 0, got a = {a}, b = {b}, c = {c}"
            )));
        }
        Ok(Self {
            kind: PotentialKind::AlphaAttractor,
            a,
            b,
            c: Some(c),
        })
    }

    /// Evaluates `V(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        match self.kind {
            PotentialKind::HyperbolicTangent => self.a * (self.b * x).tanh(),
            PotentialKind::AlphaAttractor => {
                let c = self.c.expect("alpha-attractor carries c");
                self.a * (-self.b * (c * x).tanh()).exp()
            }
        }
    }

    /// The asymptotic levels `(V_L, V_R)` at `x -> -inf` and `x -> +inf`.
    pub fn asymptotic_limits(&self) -> (f64, f64) {
        match self.kind {
            PotentialKind::HyperbolicTangent => (-self.a, self.a),
            PotentialKind::AlphaAttractor => ((self.a * self.b.exp()), (self.a * (-self.b).exp())),
        }
    }

    /// The four regime boundaries for mass `m`.
    ///
    /// Requires `m > 0`.
    pub fn thresholds(&self, m: f64) -> Thresholds {
        assert!(
            m > 0.0 && m.is_finite(),
            "mass must be positive and finite, got {m}"
        );
        let (v_l, v_r) = self.asymptotic_limits();
        Thresholds {
            v_l,
            v_r,
            e_vl_minus: v_l - m,
            e_vl_plus: v_l + m,
            e_vr_minus: v_r - m,
            e_vr_plus: v_r + m,
        }
    }

    /// Half-width `L` of the default integration domain `[-L, L]`: the point
    /// where the profile's tanh argument reaches 15, beyond which the
    /// potential is saturated to near machine precision.
    pub fn saturation_half_width(&self) -> f64 {
        match self.kind {
            PotentialKind::HyperbolicTangent => 15.0 / self.b,
            PotentialKind::AlphaAttractor => 15.0 / self.c.expect("alpha-attractor carries c"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_profile_evaluates_and_saturates() {
        let v = PotentialSpec::hyperbolic_tangent(5.0, 1.0).unwrap();
        assert_eq!(v.evaluate(0.0), 0.0);
        assert!((v.evaluate(1.0) - 5.0 * 1f64.tanh()).abs() < 1e-15);
        assert_eq!(v.asymptotic_limits(), (-5.0, 5.0));
        let l = v.saturation_half_width();
        assert_eq!(l, 15.0);
        assert!((v.evaluate(-l) - -5.0).abs() <= 5.0 * 1e-10);
        assert!((v.evaluate(l) - 5.0).abs() <= 5.0 * 1e-10);
    }

    #[test]
    fn alpha_profile_evaluates_and_saturates() {
        let v = PotentialSpec::alpha_attractor(-5.0, 1.0, 1.0).unwrap();
        let (v_l, v_r) = v.asymptotic_limits();
        assert!((v_l - -5.0 * 1f64.exp()).abs() < 1e-12);
        assert!((v_r - -5.0 * (-1f64).exp()).abs() < 1e-12);
        assert!((v.evaluate(0.0) - -5.0).abs() < 1e-15);
        let l = v.saturation_half_width();
        assert!((v.evaluate(-l) - v_l).abs() <= 5.0 * 1e-10);
        assert!((v.evaluate(l) - v_r).abs() <= 5.0 * 1e-10);
    }

    #[test]
    fn alpha_profile_with_zero_exponent_is_flat() {
        let v = PotentialSpec::alpha_attractor(1.0, 0.0, 1.0).unwrap();
        assert_eq!(v.asymptotic_limits(), (1.0, 1.0));
        assert_eq!(v.evaluate(-3.0), 1.0);
        assert_eq!(v.evaluate(2.0), 1.0);
    }

    #[test]
    fn thresholds_are_the_four_regime_boundaries() {
        let v = PotentialSpec::hyperbolic_tangent(5.0, 1.0).unwrap();
        let t = v.thresholds(1.0);
        assert_eq!((t.v_l, t.v_r), (-5.0, 5.0));
        assert_eq!(t.sorted(), [-6.0, -4.0, 4.0, 6.0]);

        let alpha = PotentialSpec::alpha_attractor(-5.0, 1.0, 1.0).unwrap();
        let t = alpha.thresholds(1.0);
        assert!((t.v_l - -13.591_409_142_295_225).abs() < 1e-12);
        assert!((t.v_r - -1.839_397_205_857_211_7).abs() < 1e-12);
        let s = t.sorted();
        assert!((s[0] - (t.v_l - 1.0)).abs() < 1e-12);
        assert!((s[3] - (t.v_r + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(PotentialSpec::hyperbolic_tangent(5.0, 0.0).is_err());
        assert!(PotentialSpec::hyperbolic_tangent(5.0, -1.0).is_err());
        assert!(PotentialSpec::hyperbolic_tangent(f64::NAN, 1.0).is_err());
        assert!(PotentialSpec::alpha_attractor(-5.0, 1.0, 0.0).is_err());
        assert!(PotentialSpec::alpha_attractor(-5.0, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn mirrored_tanh_swaps_the_asymptotes() {
        let v = PotentialSpec::hyperbolic_tangent(-5.0, 1.0).unwrap();
        assert_eq!(v.asymptotic_limits(), (5.0, -5.0));
        let t = v.thresholds(1.0);
        assert_eq!(t.sorted(), [-6.0, -4.0, 4.0, 6.0]);
    }

    proptest::proptest! {
        #[test]
        fn tanh_is_odd_and_monotone(a in 0.1f64..10.0, b in 0.1f64..4.0, x in -20.0f64..20.0) {
            let v = PotentialSpec::hyperbolic_tangent(a, b).unwrap();
            proptest::prop_assert!((v.evaluate(-x) + v.evaluate(x)).abs() <= 1e-12 * a);
            proptest::prop_assert!(v.evaluate(x) <= v.evaluate(x + 0.5));
        }
    }
}
