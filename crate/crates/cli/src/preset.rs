//! Named experiment presets.
//!
//! A preset pins the quantities that define an experiment — geometry, surface
//! size, and the structural-scattering design/evaluation modes — while the
//! scenario file keeps control of powers, noise, distances, grid resolution,
//! and seed. Sweep presets scan the uplink-user angle over `[0, π]`; beam
//! presets fix two uplink-user placements and scan a probe angle instead.

use std::f64::consts::PI;

use bdris_core::channel::ScenarioConfig;

/// What a preset sweeps and which panels its report shows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PresetKind {
    /// Beam patterns at fixed uplink-user placements (probe-angle sweep).
    Beams { phi_itu_panels: [f64; 2] },
    /// Normalized channel strengths versus the uplink-user angle.
    Strength,
    /// Achievable rates versus the uplink-user angle.
    Rates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// 16-element beam patterns, structural scattering ignored end to end.
    BeamsNoSs,
    /// 16-element beam patterns with structural scattering.
    BeamsSs,
    /// Strength sweep, design and evaluation without structural scattering.
    StrengthNoSs,
    /// Strength sweep with structural scattering, downlink user at π/2.
    StrengthSs,
    /// Strength sweep with structural scattering, downlink user at 5π/6.
    StrengthSsAlt,
    /// Designed without structural scattering, evaluated with it; π/2.
    StrengthCross,
    /// Designed without structural scattering, evaluated with it; 5π/6.
    StrengthCrossAlt,
    /// Rate sweep without structural scattering.
    RatesNoSs,
    /// Rate sweep with structural scattering, downlink user at π/2.
    RatesSs,
    /// Rate sweep with structural scattering, downlink user at 5π/6.
    RatesSsAlt,
}

impl Preset {
    pub const ALL: [Preset; 10] = [
        Preset::BeamsNoSs,
        Preset::BeamsSs,
        Preset::StrengthNoSs,
        Preset::StrengthSs,
        Preset::StrengthSsAlt,
        Preset::StrengthCross,
        Preset::StrengthCrossAlt,
        Preset::RatesNoSs,
        Preset::RatesSs,
        Preset::RatesSsAlt,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::BeamsNoSs => "beams-noss",
            Preset::BeamsSs => "beams-ss",
            Preset::StrengthNoSs => "strength-noss",
            Preset::StrengthSs => "strength-ss",
            Preset::StrengthSsAlt => "strength-ss-alt",
            Preset::StrengthCross => "strength-cross",
            Preset::StrengthCrossAlt => "strength-cross-alt",
            Preset::RatesNoSs => "rates-noss",
            Preset::RatesSs => "rates-ss",
            Preset::RatesSsAlt => "rates-ss-alt",
        }
    }

    pub fn from_name(name: &str) -> Option<Preset> {
        Preset::ALL.iter().copied().find(|p| p.name() == name)
    }

    pub fn kind(&self) -> PresetKind {
        match self {
            Preset::BeamsNoSs | Preset::BeamsSs => {
                PresetKind::Beams { phi_itu_panels: [2.0 * PI / 3.0, PI / 2.0] }
            }
            Preset::StrengthNoSs
            | Preset::StrengthSs
            | Preset::StrengthSsAlt
            | Preset::StrengthCross
            | Preset::StrengthCrossAlt => PresetKind::Strength,
            Preset::RatesNoSs | Preset::RatesSs | Preset::RatesSsAlt => PresetKind::Rates,
        }
    }

    pub fn design_with_ss(&self) -> bool {
        matches!(
            self,
            Preset::BeamsSs | Preset::StrengthSs | Preset::StrengthSsAlt | Preset::RatesSs | Preset::RatesSsAlt
        )
    }

    pub fn eval_with_ss(&self) -> bool {
        self.design_with_ss() || matches!(self, Preset::StrengthCross | Preset::StrengthCrossAlt)
    }

    /// Pins the preset's geometry, surface size, and mode switches onto a
    /// scenario. Powers, noise, distances, resolution, and seed pass through.
    pub fn apply(&self, cfg: &mut ScenarioConfig<f64>) {
        cfg.phi_bi = PI / 6.0;
        cfg.phi_rdi = match self {
            Preset::StrengthSsAlt | Preset::StrengthCrossAlt | Preset::RatesSsAlt => 5.0 * PI / 6.0,
            _ => PI / 2.0,
        };
        cfg.n_i = match self.kind() {
            PresetKind::Beams { .. } => 16,
            _ => 64,
        };
        cfg.design_with_ss = self.design_with_ss();
        cfg.eval_with_ss = self.eval_with_ss();
    }

    pub fn describe(&self) -> String {
        let (d, e) = (self.design_with_ss(), self.eval_with_ss());
        let kind = match self.kind() {
            PresetKind::Beams { .. } => "beam patterns",
            PresetKind::Strength => "normalized channel strength sweep",
            PresetKind::Rates => "rate sweep",
        };
        format!("{kind}, design {} structural scattering, evaluated {} it", on_off(d), on_off(e))
    }
}

fn on_off(with: bool) -> &'static str {
    if with {
        "with"
    } else {
        "without"
    }
}
