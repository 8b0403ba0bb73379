//! Sweep execution: design both schemes at every grid point and evaluate.

use bdris_core::channel::{build_channels, ScenarioConfig};
use bdris_core::metrics::{beam_patterns, rates, BeamPatternSet};
use bdris_core::ris::{build_projection_targets, procrustes_unitary, reciprocal_closed_form};

use crate::preset::{Preset, PresetKind};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Reciprocal,
    NonReciprocal,
}

impl Scheme {
    pub fn label(&self) -> &'static str {
        match self {
            Scheme::Reciprocal => "reciprocal",
            Scheme::NonReciprocal => "non-reciprocal",
        }
    }
}

/// One grid point of a sweep. `residual` and `sigma_trace` are projection
/// diagnostics and only defined for the non-reciprocal scheme (NaN
/// otherwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub phi_itu: f64,
    pub p_u_norm: f64,
    pub p_d_norm: f64,
    pub r_u: f64,
    pub r_d: f64,
    pub residual: f64,
    pub sigma_trace: f64,
}

/// A full sweep for one scheme, rows ascending in `phi_itu`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub scheme: Scheme,
    pub design_with_ss: bool,
    pub eval_with_ss: bool,
    pub rows: Vec<SweepRow>,
}

/// Beam patterns for one scheme at one uplink-user placement.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamSweep {
    pub scheme: Scheme,
    pub design_with_ss: bool,
    pub eval_with_ss: bool,
    pub phi_itu: f64,
    pub patterns: BeamPatternSet<f64>,
}

/// Sweeps the uplink-user angle over the scenario grid, designing the
/// reciprocal (uplink-optimal closed form) and non-reciprocal (unitary
/// projection) configurations at each point in the preset's design mode and
/// evaluating them in its evaluation mode. Deterministic.
pub fn run_sweep(cfg: &ScenarioConfig<f64>, preset: Preset) -> Result<Vec<SweepResult>, CliError> {
    let mut cfg = cfg.clone();
    preset.apply(&mut cfg);
    cfg.validate()?;

    let grid = cfg.sweep_grid();
    let mut rec_rows = Vec::with_capacity(grid.len());
    let mut nr_rows = Vec::with_capacity(grid.len());
    for phi_itu in grid {
        let mut point = cfg.clone();
        point.phi_itu = phi_itu;
        let ch = build_channels(&point)?;
        let targets = build_projection_targets(&ch, point.design_with_ss);

        let rec = reciprocal_closed_form(point.phi_bi, phi_itu, point.n_i, targets.alpha_u, point.design_with_ss);
        let lm = rates(&ch, &rec.theta, &point, point.eval_with_ss);
        rec_rows.push(SweepRow {
            phi_itu,
            p_u_norm: lm.p_u_norm,
            p_d_norm: lm.p_d_norm,
            r_u: lm.r_u,
            r_d: lm.r_d,
            residual: f64::NAN,
            sigma_trace: f64::NAN,
        });

        let nr = procrustes_unitary(&targets);
        let diag = nr.diagnostics.expect("projection solutions carry diagnostics");
        let lm = rates(&ch, &nr.theta, &point, point.eval_with_ss);
        nr_rows.push(SweepRow {
            phi_itu,
            p_u_norm: lm.p_u_norm,
            p_d_norm: lm.p_d_norm,
            r_u: lm.r_u,
            r_d: lm.r_d,
            residual: diag.residual,
            sigma_trace: diag.sigma_trace,
        });
    }
    Ok(vec![
        SweepResult {
            scheme: Scheme::Reciprocal,
            design_with_ss: cfg.design_with_ss,
            eval_with_ss: cfg.eval_with_ss,
            rows: rec_rows,
        },
        SweepResult {
            scheme: Scheme::NonReciprocal,
            design_with_ss: cfg.design_with_ss,
            eval_with_ss: cfg.eval_with_ss,
            rows: nr_rows,
        },
    ])
}

/// Computes beam patterns for a beam preset: both schemes at each of the
/// preset's uplink-user placements, probed over the scenario grid.
pub fn run_beams(cfg: &ScenarioConfig<f64>, preset: Preset) -> Result<Vec<BeamSweep>, CliError> {
    let PresetKind::Beams { phi_itu_panels } = preset.kind() else {
        return Err(CliError::Validation {
            field: "preset".to_string(),
            message: format!("{} is not a beam-pattern preset", preset.name()),
        });
    };
    let mut cfg = cfg.clone();
    preset.apply(&mut cfg);
    cfg.validate()?;
    let grid = cfg.sweep_grid();

    let mut out = Vec::with_capacity(2 * phi_itu_panels.len());
    for phi_itu in phi_itu_panels {
        let mut point = cfg.clone();
        point.phi_itu = phi_itu;
        let ch = build_channels(&point)?;
        let targets = build_projection_targets(&ch, point.design_with_ss);

        let rec = reciprocal_closed_form(point.phi_bi, phi_itu, point.n_i, targets.alpha_u, point.design_with_ss);
        out.push(BeamSweep {
            scheme: Scheme::Reciprocal,
            design_with_ss: point.design_with_ss,
            eval_with_ss: point.eval_with_ss,
            phi_itu,
            patterns: beam_patterns(&ch, &rec.theta, point.eval_with_ss, &grid),
        });

        let nr = procrustes_unitary(&targets);
        out.push(BeamSweep {
            scheme: Scheme::NonReciprocal,
            design_with_ss: point.design_with_ss,
            eval_with_ss: point.eval_with_ss,
            phi_itu,
            patterns: beam_patterns(&ch, &nr.theta, point.eval_with_ss, &grid),
        });
    }
    Ok(out)
}
