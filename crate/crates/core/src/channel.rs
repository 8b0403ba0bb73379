//! Line-of-sight channel synthesis for the single-antenna full-duplex case.
//!
//! The RIS is a uniform linear array with half-wavelength spacing. Three
//! channel vectors describe the link: base station to RIS (`bi`), RIS to the
//! downlink user (`rdi`), and uplink user to RIS (`itu`). The base station
//! shares one antenna for transmit and receive, so the same `bi` vector serves
//! both directions.

use std::fmt;

use num_complex::Complex;

use crate::matrix::{bilinear, CMat};
use crate::Scalar;

/// Errors from channel construction and configuration validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChannelError {
    InvalidArgument { what: String },
    /// A `ScenarioConfig` field violates its range; names the field.
    InvalidConfig { field: &'static str, reason: String },
}

impl fmt::Display for ChannelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidArgument { what } => write!(f, "invalid argument: {what}"),
            Self::InvalidConfig { field, reason } => write!(f, "invalid config field {field}: {reason}"),
        }
    }
}

impl std::error::Error for ChannelError {}

/// Scenario description: geometry, propagation constants, powers, and the
/// structural-scattering mode switches.
///
/// Angles are radians in `[0, π]`, distances meters, powers and noise watts.
/// `design_with_ss` selects whether solvers account for structural scattering;
/// `eval_with_ss` selects the evaluation model; the two are independent so a
/// configuration designed under one model can be scored under the other.
/// The `seed` only feeds randomized validation oracles — the line-of-sight
/// channels themselves are deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig<T> {
    pub n_i: usize,
    pub phi_bi: T,
    pub phi_rdi: T,
    pub phi_itu: T,
    pub d_bi: T,
    pub d_rdi: T,
    pub d_itu: T,
    /// Reference attenuation in dB (converted once via [`Self::zeta0_linear`]).
    pub zeta0_db: T,
    pub d0: T,
    pub epsilon: T,
    pub p_d: T,
    pub p_u: T,
    pub sigma_d2: T,
    pub sigma_u2: T,
    pub design_with_ss: bool,
    pub eval_with_ss: bool,
    pub sweep_points: usize,
    pub seed: u64,
}

impl<T: Scalar> Default for ScenarioConfig<T> {
    /// Baseline deployment: 64-element RIS, base station at π/6 and 30 m,
    /// users at 5 m, −30 dB reference attenuation at 1 m, exponent 2,
    /// 500 mW per link, −80 dBm noise.
    fn default() -> Self {
        let pi = T::PI();
        Self {
            n_i: 64,
            phi_bi: pi / T::of(6.0),
            phi_rdi: pi / T::of(2.0),
            phi_itu: T::of(2.0) * pi / T::of(3.0),
            d_bi: T::of(30.0),
            d_rdi: T::of(5.0),
            d_itu: T::of(5.0),
            zeta0_db: T::of(-30.0),
            d0: T::one(),
            epsilon: T::of(2.0),
            p_d: T::of(0.5),
            p_u: T::of(0.5),
            sigma_d2: dbm_to_watts(T::of(-80.0)),
            sigma_u2: dbm_to_watts(T::of(-80.0)),
            design_with_ss: true,
            eval_with_ss: true,
            sweep_points: 721,
            seed: 1,
        }
    }
}

impl<T: Scalar> ScenarioConfig<T> {
    /// Reference attenuation as a linear power gain.
    pub fn zeta0_linear(&self) -> T {
        db_to_linear(self.zeta0_db)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        let angle = |field: &'static str, v: T| {
            if v < T::zero() || v > T::PI() {
                Err(ChannelError::InvalidConfig { field, reason: format!("{v} is outside [0, pi]") })
            } else {
                Ok(())
            }
        };
        let positive = |field: &'static str, v: T| {
            if v <= T::zero() {
                Err(ChannelError::InvalidConfig { field, reason: format!("{v} must be > 0") })
            } else {
                Ok(())
            }
        };
        if self.n_i < 1 {
            return Err(ChannelError::InvalidConfig { field: "n_i", reason: "need at least one element".into() });
        }
        angle("phi_bi", self.phi_bi)?;
        angle("phi_rdi", self.phi_rdi)?;
        angle("phi_itu", self.phi_itu)?;
        positive("d_bi", self.d_bi)?;
        positive("d_rdi", self.d_rdi)?;
        positive("d_itu", self.d_itu)?;
        positive("d0", self.d0)?;
        positive("p_d", self.p_d)?;
        positive("p_u", self.p_u)?;
        positive("sigma_d2", self.sigma_d2)?;
        positive("sigma_u2", self.sigma_u2)?;
        if self.sweep_points < 2 {
            return Err(ChannelError::InvalidConfig { field: "sweep_points", reason: "need at least 2 grid points".into() });
        }
        Ok(())
    }

    /// Uniform angle grid over `[0, π]` with `sweep_points` entries.
    pub fn sweep_grid(&self) -> Vec<T> {
        let n = self.sweep_points;
        let step = T::PI() / T::from_usize(n - 1).unwrap();
        (0..n).map(|k| T::from_usize(k).unwrap() * step).collect()
    }
}

/// dB power value to linear.
pub fn db_to_linear<T: Scalar>(db: T) -> T {
    T::of(10.0).powf(db / T::of(10.0))
}

/// dBm power value to watts.
pub fn dbm_to_watts<T: Scalar>(dbm: T) -> T {
    T::of(10.0).powf((dbm - T::of(30.0)) / T::of(10.0))
}

/// The three line-of-sight channel vectors with their large-scale gains and
/// unit-norm small-scale parts (`h = √ζ · h̄`).
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet<T> {
    pub h_bi: Vec<Complex<T>>,
    pub h_rdi: Vec<Complex<T>>,
    pub h_itu: Vec<Complex<T>>,
    pub hbar_bi: Vec<Complex<T>>,
    pub hbar_rdi: Vec<Complex<T>>,
    pub hbar_itu: Vec<Complex<T>>,
    pub zeta_bi: T,
    pub zeta_rdi: T,
    pub zeta_itu: T,
}

impl<T> ChannelSet<T> {
    pub fn n_i(&self) -> usize {
        self.h_bi.len()
    }
}

/// Unit-norm steering vector of a half-wavelength uniform linear array:
/// entry `k` (0-based) is `exp(jπk·cosφ)/√n_i`.
pub fn steering_vector<T: Scalar>(phi: T, n_i: usize) -> Vec<Complex<T>> {
    assert!(n_i >= 1, "steering vector needs at least one element");
    let scale = T::one() / T::from_usize(n_i).unwrap().sqrt();
    let step = T::PI() * phi.cos();
    (0..n_i)
        .map(|k| {
            let phase = step * T::from_usize(k).unwrap();
            Complex::from_polar(scale, phase)
        })
        .collect()
}

/// Distance-power law `ζ = ζ0 · (d/d0)^(−ε)` with linear `ζ0`.
pub fn path_loss<T: Scalar>(d: T, zeta0: T, d0: T, epsilon: T) -> Result<T, ChannelError> {
    if d <= T::zero() || d0 <= T::zero() {
        return Err(ChannelError::InvalidArgument { what: format!("distances must be positive (d={d}, d0={d0})") });
    }
    Ok(zeta0 * (d / d0).powf(-epsilon))
}

/// Builds the three channel vectors of a scenario. Deterministic: the line of
/// sight model has no fading randomness.
pub fn build_channels<T: Scalar>(cfg: &ScenarioConfig<T>) -> Result<ChannelSet<T>, ChannelError> {
    cfg.validate()?;
    let zeta0 = cfg.zeta0_linear();
    let zeta_bi = path_loss(cfg.d_bi, zeta0, cfg.d0, cfg.epsilon)?;
    let zeta_rdi = path_loss(cfg.d_rdi, zeta0, cfg.d0, cfg.epsilon)?;
    let zeta_itu = path_loss(cfg.d_itu, zeta0, cfg.d0, cfg.epsilon)?;
    let hbar_bi = steering_vector(cfg.phi_bi, cfg.n_i);
    let hbar_rdi = steering_vector(cfg.phi_rdi, cfg.n_i);
    let hbar_itu = steering_vector(cfg.phi_itu, cfg.n_i);
    let with_gain = |hbar: &[Complex<T>], zeta: T| -> Vec<Complex<T>> {
        let g = zeta.sqrt();
        hbar.iter().map(|&h| h * g).collect()
    };
    Ok(ChannelSet {
        h_bi: with_gain(&hbar_bi, zeta_bi),
        h_rdi: with_gain(&hbar_rdi, zeta_rdi),
        h_itu: with_gain(&hbar_itu, zeta_itu),
        hbar_bi,
        hbar_rdi,
        hbar_itu,
        zeta_bi,
        zeta_rdi,
        zeta_itu,
    })
}

/// End-to-end 2x2 full-duplex channel matrix.
///
/// Row 1 is the base-station receive side, row 2 the downlink user; column 1
/// is the base-station transmit side, column 2 the uplink user. Entry (1,1)
/// is therefore the loop-interference channel, (2,2) the user-to-user
/// channel. With `with_ss` the surface acts as `Θ − I` (structural scattering
/// kept); without, as `Θ`.
pub fn fd_channel_matrix<T: Scalar>(
    ch: &ChannelSet<T>,
    theta: &CMat<T>,
    with_ss: bool,
) -> Result<CMat<T>, ChannelError> {
    let n = ch.n_i();
    if (theta.rows(), theta.cols()) != (n, n) {
        return Err(ChannelError::InvalidArgument {
            what: format!("theta is {}x{}, expected {n}x{n}", theta.rows(), theta.cols()),
        });
    }
    let m = if with_ss { theta - &CMat::identity(n) } else { theta.clone() };
    let mut h = CMat::zeros(2, 2);
    h[(0, 0)] = bilinear(&ch.h_bi, &m, &ch.h_bi);
    h[(0, 1)] = bilinear(&ch.h_bi, &m, &ch.h_itu);
    h[(1, 0)] = bilinear(&ch.h_rdi, &m, &ch.h_bi);
    h[(1, 1)] = bilinear(&ch.h_rdi, &m, &ch.h_itu);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::norm2;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn broadside_steering_is_constant() {
        let v = steering_vector(PI / 2.0, 4);
        for e in &v {
            assert!((e - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn endfire_steering_alternates_sign() {
        let v = steering_vector(0.0, 4);
        let expected = [0.5, -0.5, 0.5, -0.5];
        for (e, want) in v.iter().zip(expected) {
            assert!((e - Complex64::new(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn steering_is_unit_norm() {
        for phi in [0.0, 0.31, 1.2, 2.9, PI] {
            let v = steering_vector(phi, 64);
            assert!((norm2(&v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn path_loss_reference_point_and_defaults() {
        assert!((path_loss(1.0_f64, 1e-3, 1.0, 2.0).unwrap() - 1e-3).abs() < 1e-18);
        assert!((path_loss(30.0_f64, 1e-3, 1.0, 2.0).unwrap() - 1e-3 / 900.0).abs() < 1e-18);
        assert!((path_loss(5.0_f64, 1e-3, 1.0, 2.0).unwrap() - 4e-5).abs() < 1e-18);
        assert!(path_loss(-1.0_f64, 1e-3, 1.0, 2.0).is_err());
    }

    #[test]
    fn channel_norm_equals_large_scale_gain() {
        let cfg = ScenarioConfig::<f64>::default();
        let ch = build_channels(&cfg).unwrap();
        assert!((norm2(&ch.h_bi).powi(2) - ch.zeta_bi).abs() < 1e-12 * ch.zeta_bi);
        assert!((norm2(&ch.hbar_bi) - 1.0).abs() < 1e-12);
        assert!((norm2(&ch.hbar_rdi) - 1.0).abs() < 1e-12);
        assert!((norm2(&ch.hbar_itu) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn seed_does_not_affect_channels() {
        let mut a = ScenarioConfig::<f64>::default();
        let mut b = a.clone();
        a.seed = 1;
        b.seed = 999;
        assert_eq!(build_channels(&a).unwrap(), build_channels(&b).unwrap());
    }

    #[test]
    fn equal_angles_share_small_scale_fading() {
        let mut cfg = ScenarioConfig::<f64>::default();
        cfg.phi_itu = cfg.phi_rdi;
        let ch = build_channels(&cfg).unwrap();
        assert_eq!(ch.hbar_itu, ch.hbar_rdi);
    }

    #[test]
    fn config_validation_names_the_field() {
        let mut cfg = ScenarioConfig::<f64>::default();
        cfg.phi_bi = 4.0;
        match cfg.validate() {
            Err(ChannelError::InvalidConfig { field, .. }) => assert_eq!(field, "phi_bi"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn identity_surface_cancels_ss_channel() {
        let cfg = ScenarioConfig::<f64> { n_i: 8, ..Default::default() };
        let ch = build_channels(&cfg).unwrap();
        let h = fd_channel_matrix(&ch, &CMat::identity(8), true).unwrap();
        assert!(h.max_abs() < 1e-15);
        let h = fd_channel_matrix(&ch, &CMat::zeros(8, 8), false).unwrap();
        assert!(h.max_abs() < 1e-15);
    }

    #[test]
    fn channel_entry_matches_direct_recomputation() {
        use crate::matrix::dotu;
        let cfg = ScenarioConfig::<f64> { n_i: 6, ..Default::default() };
        let ch = build_channels(&cfg).unwrap();
        // a fixed non-symmetric unitary: permutation with phases
        let mut theta = CMat::<f64>::zeros(6, 6);
        for k in 0..6 {
            theta[(k, (k + 1) % 6)] = Complex64::from_polar(1.0, 0.41 * k as f64);
        }
        let h = fd_channel_matrix(&ch, &theta, true).unwrap();
        let m = &theta - &CMat::identity(6);
        let mut row = vec![Complex64::new(0.0, 0.0); 6];
        for j in 0..6 {
            for i in 0..6 {
                row[j] += ch.h_rdi[i] * m[(i, j)];
            }
        }
        let expected = dotu(&row, &ch.h_bi);
        assert!((h[(1, 0)] - expected).norm() < 1e-15);
    }

    #[test]
    fn structural_correction_is_theta_independent() {
        let cfg = ScenarioConfig::<f64> { n_i: 5, ..Default::default() };
        let ch = build_channels(&cfg).unwrap();
        let mut theta = CMat::<f64>::zeros(5, 5);
        for k in 0..5 {
            theta[(k, (k + 2) % 5)] = Complex64::from_polar(1.0, -0.7 * k as f64);
        }
        let with_ss = fd_channel_matrix(&ch, &theta, true).unwrap();
        let without = fd_channel_matrix(&ch, &theta, false).unwrap();
        let diff = &with_ss - &without;
        let pairs: [(&[Complex64], &[Complex64]); 4] = [
            (&ch.h_bi, &ch.h_bi),
            (&ch.h_bi, &ch.h_itu),
            (&ch.h_rdi, &ch.h_bi),
            (&ch.h_rdi, &ch.h_itu),
        ];
        for (idx, (row, col)) in pairs.iter().enumerate() {
            let expected = -crate::matrix::dotu(row, col);
            let got = diff[(idx / 2, idx % 2)];
            assert!((got - expected).norm() < 1e-15);
        }
    }
}
