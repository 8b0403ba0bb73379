//! Flat key-value scenario files.
//!
//! One `key = value` pair per line; `#` starts a comment. Keys match the
//! scenario fields; missing keys keep the baseline defaults and unknown keys
//! are errors so experiment typos surface immediately. Noise can be given
//! directly in watts (`sigma_d2`, `sigma_u2`) or in dBm (`sigma_d2_dbm`,
//! `sigma_u2_dbm`); dB quantities are converted to linear here, once.

use std::fs;
use std::path::Path;

use bdris_core::channel::{dbm_to_watts, ScenarioConfig};

use crate::CliError;

pub const KNOWN_KEYS: [&str; 20] = [
    "n_i",
    "phi_bi",
    "phi_rdi",
    "phi_itu",
    "d_bi",
    "d_rdi",
    "d_itu",
    "zeta0_db",
    "d0",
    "epsilon",
    "p_d",
    "p_u",
    "sigma_d2",
    "sigma_u2",
    "sigma_d2_dbm",
    "sigma_u2_dbm",
    "design_with_ss",
    "eval_with_ss",
    "sweep_points",
    "seed",
];

pub fn parse_config(path: &Path) -> Result<ScenarioConfig<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<ScenarioConfig<f64>, CliError> {
    let mut cfg = ScenarioConfig::<f64>::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| CliError::Parse { line, message: format!("expected `key = value`, got {body:?}") })?;
        let key = key.trim();
        let value = value.trim();
        apply_key(&mut cfg, key, value, line)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn apply_key(cfg: &mut ScenarioConfig<f64>, key: &str, value: &str, line: usize) -> Result<(), CliError> {
    let bad = |kind: &str| CliError::Parse {
        line,
        message: format!("key {key}: {value:?} is not a valid {kind}"),
    };
    let as_f64 = || value.parse::<f64>().map_err(|_| bad("number"));
    let as_usize = || value.parse::<usize>().map_err(|_| bad("non-negative integer"));
    let as_u64 = || value.parse::<u64>().map_err(|_| bad("non-negative integer"));
    let as_bool = || match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(bad("boolean (true/false)")),
    };
    match key {
        "n_i" => cfg.n_i = as_usize()?,
        "phi_bi" => cfg.phi_bi = as_f64()?,
        "phi_rdi" => cfg.phi_rdi = as_f64()?,
        "phi_itu" => cfg.phi_itu = as_f64()?,
        "d_bi" => cfg.d_bi = as_f64()?,
        "d_rdi" => cfg.d_rdi = as_f64()?,
        "d_itu" => cfg.d_itu = as_f64()?,
        "zeta0_db" => cfg.zeta0_db = as_f64()?,
        "d0" => cfg.d0 = as_f64()?,
        "epsilon" => cfg.epsilon = as_f64()?,
        "p_d" => cfg.p_d = as_f64()?,
        "p_u" => cfg.p_u = as_f64()?,
        "sigma_d2" => cfg.sigma_d2 = as_f64()?,
        "sigma_u2" => cfg.sigma_u2 = as_f64()?,
        "sigma_d2_dbm" => cfg.sigma_d2 = dbm_to_watts(as_f64()?),
        "sigma_u2_dbm" => cfg.sigma_u2 = dbm_to_watts(as_f64()?),
        "design_with_ss" => cfg.design_with_ss = as_bool()?,
        "eval_with_ss" => cfg.eval_with_ss = as_bool()?,
        "sweep_points" => cfg.sweep_points = as_usize()?,
        "seed" => cfg.seed = as_u64()?,
        _ => {
            return Err(CliError::Parse { line, message: format!("unknown key {key:?}") });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_the_defaults() {
        let cfg = parse_config_str("").unwrap();
        assert_eq!(cfg, ScenarioConfig::<f64>::default());
        assert_eq!(cfg.n_i, 64);
        assert!((cfg.d_bi - 30.0).abs() < 1e-12);
        assert!((cfg.sigma_d2 - 1e-11).abs() < 1e-24);
        assert!((cfg.p_d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let cfg = parse_config_str("# scenario\n\nn_i = 8 # small surface\n").unwrap();
        assert_eq!(cfg.n_i, 8);
    }

    #[test]
    fn db_keys_convert_to_linear() {
        let cfg = parse_config_str("zeta0_db = -30\nsigma_d2_dbm = -80\n").unwrap();
        assert!((cfg.zeta0_linear() - 1e-3).abs() < 1e-15);
        assert!((cfg.sigma_d2 - 1e-11).abs() < 1e-24);
    }

    #[test]
    fn out_of_range_angle_is_a_validation_error() {
        match parse_config_str("phi_bi = 4.0\n") {
            Err(CliError::Validation { field, .. }) => assert_eq!(field, "phi_bi"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_key_is_an_error_with_its_line() {
        match parse_config_str("n_i = 4\nphi_bx = 1.0\n") {
            Err(CliError::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("phi_bx"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_line_reports_position() {
        match parse_config_str("n_i: 4\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_number_names_the_key() {
        match parse_config_str("p_d = half\n") {
            Err(CliError::Parse { message, .. }) => assert!(message.contains("p_d")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
