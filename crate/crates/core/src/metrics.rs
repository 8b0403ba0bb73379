//! Evaluation functionals: beam patterns, normalized channel strengths, and
//! uplink/downlink achievable rates.
//!
//! Every functional takes an `eval_with_ss` switch selecting whether the
//! surface is scored as `Θ − I` (structural scattering kept) or as `Θ`
//! (ignored), independently of how `Θ` was designed. Strengths and beam
//! patterns are normalized so that the structural-scattering model tops out
//! at 4 and the simplified model at 1.

use crate::channel::{steering_vector, ChannelSet, ScenarioConfig};
use crate::matrix::{bilinear, dotu, mat_vec, vec_mat, CMat};
use crate::Scalar;

/// Impinging and reflected beam patterns for each link over an angle grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamPatternSet<T> {
    pub grid: Vec<T>,
    pub p_d_imp: Vec<T>,
    pub p_d_ref: Vec<T>,
    pub p_u_imp: Vec<T>,
    pub p_u_ref: Vec<T>,
}

/// Link-level metrics at one configuration: normalized strengths, rates in
/// bits/s/Hz, and plain signal-to-interference ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkMetrics<T> {
    pub p_u_norm: T,
    pub p_d_norm: T,
    pub r_u: T,
    pub r_d: T,
    pub sir_u: T,
    pub sir_d: T,
}

fn surface_response<T: Scalar>(theta: &CMat<T>, with_ss: bool) -> CMat<T> {
    if with_ss {
        theta - &CMat::identity(theta.rows())
    } else {
        theta.clone()
    }
}

/// Beam patterns probed with a unit steering vector `ā(φ)` over `grid`.
///
/// Four patterns are produced: downlink impinging `|h̄_rdiᵀ M ā(φ)|²`,
/// downlink reflected `|ā(φ)ᵀ M h̄_bi|²`, uplink impinging
/// `|h̄_biᵀ M ā(φ)|²`, uplink reflected `|ā(φ)ᵀ M h̄_itu|²`, with `M` the
/// evaluated surface response. In the structural-scattering model all four
/// are divided by the uplink bound `(|h̄_ituᵀ h̄_bi| + 1)²`.
pub fn beam_patterns<T: Scalar>(
    ch: &ChannelSet<T>,
    theta: &CMat<T>,
    eval_with_ss: bool,
    grid: &[T],
) -> BeamPatternSet<T> {
    let n = ch.n_i();
    assert_eq!((theta.rows(), theta.cols()), (n, n), "theta does not match the channel set");
    let m = surface_response(theta, eval_with_ss);
    let denom = if eval_with_ss {
        (dotu(&ch.hbar_itu, &ch.hbar_bi).norm() + T::one()).powi(2)
    } else {
        T::one()
    };

    // fixed sides of each bilinear form, precomputed once
    let left_d = vec_mat(&ch.hbar_rdi, &m); // h̄_rdiᵀ M
    let left_u = vec_mat(&ch.hbar_bi, &m); // h̄_biᵀ M
    let right_d = mat_vec(&m, &ch.hbar_bi); // M h̄_bi
    let right_u = mat_vec(&m, &ch.hbar_itu); // M h̄_itu

    let mut out = BeamPatternSet {
        grid: grid.to_vec(),
        p_d_imp: Vec::with_capacity(grid.len()),
        p_d_ref: Vec::with_capacity(grid.len()),
        p_u_imp: Vec::with_capacity(grid.len()),
        p_u_ref: Vec::with_capacity(grid.len()),
    };
    for &phi in grid {
        let probe = steering_vector(phi, n);
        out.p_d_imp.push(dotu(&left_d, &probe).norm_sqr() / denom);
        out.p_d_ref.push(dotu(&probe, &right_d).norm_sqr() / denom);
        out.p_u_imp.push(dotu(&left_u, &probe).norm_sqr() / denom);
        out.p_u_ref.push(dotu(&probe, &right_u).norm_sqr() / denom);
    }
    out
}

/// Normalized channel strengths `(uplink, downlink)` built from unit-norm
/// channel directions: `|h̄_biᵀ M h̄_itu|²` and `|h̄_rdiᵀ M h̄_bi|²`.
pub fn normalized_strengths<T: Scalar>(ch: &ChannelSet<T>, theta: &CMat<T>, eval_with_ss: bool) -> (T, T) {
    let m = surface_response(theta, eval_with_ss);
    let p_u = bilinear(&ch.hbar_bi, &m, &ch.hbar_itu).norm_sqr();
    let p_d = bilinear(&ch.hbar_rdi, &m, &ch.hbar_bi).norm_sqr();
    (p_u, p_d)
}

/// Uplink/downlink rates and interference ratios of the full-duplex link.
///
/// Uses the gain-scaled channels. The downlink SINR is
/// `P_D·S_D / (P_U·I_D + σ_D²)` with `S_D = |h_rdiᵀ M h_bi|²` and
/// `I_D = |h_rdiᵀ M h_itu|²`; the uplink mirrors it with the
/// loop-interference term `I_U = |h_biᵀ M h_bi|²` in the denominator.
/// `sir_*` are the plain signal-to-interference ratios without noise.
pub fn rates<T: Scalar>(
    ch: &ChannelSet<T>,
    theta: &CMat<T>,
    cfg: &ScenarioConfig<T>,
    eval_with_ss: bool,
) -> LinkMetrics<T> {
    let m = surface_response(theta, eval_with_ss);
    let s_d = bilinear(&ch.h_rdi, &m, &ch.h_bi).norm_sqr();
    let i_d = bilinear(&ch.h_rdi, &m, &ch.h_itu).norm_sqr();
    let s_u = bilinear(&ch.h_bi, &m, &ch.h_itu).norm_sqr();
    let i_u = bilinear(&ch.h_bi, &m, &ch.h_bi).norm_sqr();

    let sinr_d = cfg.p_d * s_d / (cfg.p_u * i_d + cfg.sigma_d2);
    let sinr_u = cfg.p_u * s_u / (cfg.p_d * i_u + cfg.sigma_u2);
    let (p_u_norm, p_d_norm) = normalized_strengths(ch, theta, eval_with_ss);
    LinkMetrics {
        p_u_norm,
        p_d_norm,
        r_d: (T::one() + sinr_d).log2(),
        r_u: (T::one() + sinr_u).log2(),
        sir_d: cfg.p_d * s_d / (cfg.p_u * i_d),
        sir_u: cfg.p_u * s_u / (cfg.p_d * i_u),
    }
}
