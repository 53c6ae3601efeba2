//! Asymptotic channel states and energy regime classification.
//!
//! Far from the interaction region the mode equation reduces to
//! `phi'' + k^2 phi = 0` with `k^2 = (E - V)^2 - m^2` evaluated at the
//! asymptotic level `V`. A channel propagates when `|E - V| > m` and is
//! evanescent otherwise, so the four energies `V_L -+ m`, `V_R -+ m` split
//! the spectrum into five regimes.

use serde::{Deserialize, Serialize};

use crate::potential::Thresholds;
use crate::ComplexScalar;

/// The asymptotic state of one channel at a given energy.
///
/// For a propagating channel `k_signed` carries the sign of `E - V`, which
/// selects the root with positive group velocity for the transmitted wave.
/// For an evanescent channel `kappa > 0` is the decay rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelState {
    pub propagating: bool,
    pub k_signed: f64,
    pub kappa: f64,
    pub e_minus_v: f64,
}

impl ChannelState {
    /// The channel wavenumber as a complex number: `k_signed` when
    /// propagating, `i kappa` when evanescent.
    pub fn wavenumber(&self) -> ComplexScalar {
        if self.propagating {
            ComplexScalar::new(self.k_signed, 0.0)
        } else {
            ComplexScalar::new(0.0, self.kappa)
        }
    }
}

/// Classifies the channel with asymptotic level `v` at energy `e` for mass
/// `m`. Exactly at threshold (`|e - v| = m`) the channel counts as
/// propagating with `k_signed = 0`.
pub fn channel_state(e: f64, v: f64, m: f64) -> ChannelState {
    let d = e - v;
    let s = d * d - m * m;
    if s >= 0.0 {
        ChannelState {
            propagating: true,
            k_signed: d.signum() * s.sqrt(),
            kappa: 0.0,
            e_minus_v: d,
        }
    } else {
        ChannelState {
            propagating: false,
            k_signed: 0.0,
            kappa: (-s).sqrt(),
            e_minus_v: d,
        }
    }
}

/// The five spectral regimes, in descending energy order for a rising
/// potential step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnergyRegime {
    /// Both channels propagate with `E - V > 0` on each side: ordinary
    /// partial reflection.
    #[serde(rename = "above+")]
    AbovePositiveThreshold,
    /// The channel on the higher plateau is evanescent: total reflection.
    #[serde(rename = "evanR")]
    RightEvanescent,
    /// Both channels propagate but `E - V` changes sign across the step:
    /// the transmitted flux is negative and the reflection exceeds one.
    #[serde(rename = "super")]
    Superradiant,
    /// The incident-side channel is evanescent: no propagating incident
    /// wave exists and the point is reported as `R = 1` by convention.
    #[serde(rename = "evanL")]
    LeftEvanescent,
    /// Both channels propagate with `E - V < 0` on each side.
    #[serde(rename = "below-")]
    BelowNegativeThreshold,
}

impl EnergyRegime {
    /// Short label used in CSV output.
    pub fn csv_label(&self) -> &'static str {
        match self {
            EnergyRegime::AbovePositiveThreshold => "above+",
            EnergyRegime::RightEvanescent => "evanR",
            EnergyRegime::Superradiant => "super",
            EnergyRegime::LeftEvanescent => "evanL",
            EnergyRegime::BelowNegativeThreshold => "below-",
        }
    }

    /// The reflection behavior expected throughout the regime.
    pub fn expectation(&self) -> &'static str {
        match self {
            EnergyRegime::AbovePositiveThreshold => "R<1",
            EnergyRegime::RightEvanescent => "R=1",
            EnergyRegime::Superradiant => "R>1",
            EnergyRegime::LeftEvanescent => "R=1 (conv)",
            EnergyRegime::BelowNegativeThreshold => "R<1",
        }
    }
}

impl std::fmt::Display for EnergyRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.csv_label())
    }
}

/// Whether the thresholds leave room for a superradiant band, i.e. whether
/// the two propagating-channel windows overlap with opposite signs of
/// `E - V`.
pub fn superradiant_band_exists(thresholds: &Thresholds) -> bool {
    let lo = thresholds.v_l.min(thresholds.v_r);
    let hi = thresholds.v_l.max(thresholds.v_r);
    // Band (lo + m, hi - m) is non-empty exactly when the plateaus differ by
    // more than 2m; m is recoverable from any threshold pair.
    let m = thresholds.e_vl_plus - thresholds.v_l;
    lo + m < hi - m
}

/// Assigns `e` to its regime. Energies exactly on a boundary belong to the
/// band above it. The same slot structure applies to a falling step after
/// sorting the boundaries, and when the superradiant band is empty the
/// middle slot (both channels evanescent) reports [`EnergyRegime::LeftEvanescent`].
pub fn classify(e: f64, thresholds: &Thresholds) -> EnergyRegime {
    let [t1, t2, t3, t4] = thresholds.sorted();
    if e >= t4 {
        EnergyRegime::AbovePositiveThreshold
    } else if e >= t3 {
        EnergyRegime::RightEvanescent
    } else if e >= t2 {
        if superradiant_band_exists(thresholds) {
            EnergyRegime::Superradiant
        } else {
            EnergyRegime::LeftEvanescent
        }
    } else if e >= t1 {
        EnergyRegime::LeftEvanescent
    } else {
        EnergyRegime::BelowNegativeThreshold
    }
}
