//! RIS configuration solvers.
//!
//! Two families of scattering matrices are produced here. Reciprocal
//! configurations (`Θ = Θᵀ`, realizable with passive reconfigurable impedance
//! networks) use the closed-form diagonal phase profile that is optimal for
//! line-of-sight uplink strength. Non-reciprocal configurations relax the
//! symmetry constraint and are obtained by projecting onto the unitary group:
//! find the unitary `Θ` minimizing `‖X − ΘY‖_F²`, where the columns of `Y`
//! hold the incoming channel directions and the columns of `X` the wanted
//! outgoing ones.
//!
//! The projection is the unitary Procrustes problem, solved through the SVD
//! of `XYᴴ`. Since `X` and `Y` have two columns, `XYᴴ` has rank at most two
//! and the SVD is assembled from thin QR factors and a closed-form 2x2 core
//! decomposition — no general complex SVD is needed.

use num_complex::Complex;

use crate::channel::ChannelSet;
use crate::matrix::{dotu, norm2, orthonormalize_against, CMat};
use crate::Scalar;

/// Second singular value below this fraction of the first is treated as a
/// rank-1 degeneracy; the second singular pair then comes from the
/// deterministic completion.
const RANK_RTOL: f64 = 1e-10;

/// Standard-basis candidates whose Gram-Schmidt residual falls below this are
/// skipped during unitary completion.
const COMPLETION_TOL: f64 = 1e-8;

/// A configured RIS scattering matrix with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct RisSolution<T> {
    pub theta: CMat<T>,
    /// True when `theta` is symmetric by construction.
    pub reciprocal: bool,
    /// Whether the design accounted for structural scattering.
    pub design_with_ss: bool,
    /// Projection diagnostics; present for non-reciprocal solutions.
    pub diagnostics: Option<ProcrustesDiag<T>>,
}

/// Targets of the unitary projection: map the columns of `y` onto the columns
/// of `x`. Columns are unit vectors built from small-scale channel directions;
/// `alpha_d`/`alpha_u` are the unimodular phases that align the reflected and
/// structural paths (both 1 when structural scattering is ignored).
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionTargets<T> {
    pub x: CMat<T>,
    pub y: CMat<T>,
    pub alpha_d: Complex<T>,
    pub alpha_u: Complex<T>,
    /// Set when the defining inner product was exactly zero and the phase
    /// defaulted to 1.
    pub alpha_d_defaulted: bool,
    pub alpha_u_defaulted: bool,
    pub with_ss: bool,
}

/// Diagnostics of the unitary projection.
///
/// `sigma_trace` is the trace of the singular values of `XYᴴ`; `residual` is
/// `‖X − ΘY‖_F²`; `sv_x`/`sv_y` are the singular values of `X` and `Yᴴ` in
/// descending order. For the optimal unitary the residual equals
/// `4 − 2·sigma_trace`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcrustesDiag<T> {
    pub sigma_trace: T,
    pub residual: T,
    pub sv_x: (T, T),
    pub sv_y: (T, T),
}

/// Closed-form reciprocal (diagonal) configuration for line-of-sight links.
///
/// Element `n` (0-based) gets phase `∠α_U − πn(cosφ_BI + cosφ_ITU)` when
/// structural scattering is accounted for, and `−πn(cosφ_BI + cosφ_ITU)`
/// when it is ignored. Both profiles maximize the uplink channel strength of
/// their respective model over all diagonal unimodular configurations.
pub fn reciprocal_closed_form<T: Scalar>(
    phi_bi: T,
    phi_itu: T,
    n_i: usize,
    alpha_u: Complex<T>,
    with_ss: bool,
) -> RisSolution<T> {
    let slope = T::PI() * (phi_bi.cos() + phi_itu.cos());
    let offset = if with_ss { alpha_u.arg() } else { T::zero() };
    let diag: Vec<Complex<T>> = (0..n_i)
        .map(|n| Complex::from_polar(T::one(), offset - slope * T::from_usize(n).unwrap()))
        .collect();
    RisSolution {
        theta: CMat::from_diagonal(&diag),
        reciprocal: true,
        design_with_ss: with_ss,
        diagnostics: None,
    }
}

/// Unimodular phase aligning a reflected path against the structural one:
/// `e^{j∠(−g)}` for inner product `g`, defaulting to 1 when `g` is zero.
fn alignment_phase<T: Scalar>(g: Complex<T>) -> (Complex<T>, bool) {
    let mag = g.norm();
    if mag == T::zero() {
        (Complex::new(T::one(), T::zero()), true)
    } else {
        (-g / mag, false)
    }
}

/// Builds the projection targets from a channel set.
///
/// `X = [α_D h̄*_rdi, α_U h̄*_bi]` and `Y = [h̄_bi, h̄_itu]` when structural
/// scattering is accounted for; without it the `α` factors are 1 and
/// `X = [h̄*_rdi, h̄*_bi]`.
pub fn build_projection_targets<T: Scalar>(ch: &ChannelSet<T>, with_ss: bool) -> ProjectionTargets<T> {
    let conj = |v: &[Complex<T>]| -> Vec<Complex<T>> { v.iter().map(|c| c.conj()).collect() };
    let (alpha_d, alpha_u, d_defaulted, u_defaulted) = if with_ss {
        let (ad, df) = alignment_phase(dotu(&ch.hbar_rdi, &ch.hbar_bi));
        let (au, uf) = alignment_phase(dotu(&ch.hbar_bi, &ch.hbar_itu));
        (ad, au, df, uf)
    } else {
        let one = Complex::new(T::one(), T::zero());
        (one, one, false, false)
    };
    let scale = |v: Vec<Complex<T>>, a: Complex<T>| -> Vec<Complex<T>> {
        v.into_iter().map(|c| c * a).collect()
    };
    let x = CMat::from_columns(&[
        scale(conj(&ch.hbar_rdi), alpha_d),
        scale(conj(&ch.hbar_bi), alpha_u),
    ]);
    let y = CMat::from_columns(&[ch.hbar_bi.clone(), ch.hbar_itu.clone()]);
    ProjectionTargets { x, y, alpha_d, alpha_u, alpha_d_defaulted: d_defaulted, alpha_u_defaulted: u_defaulted, with_ss }
}

/// Thin QR of an N x 2 matrix by modified Gram-Schmidt with
/// re-orthogonalization. Returns two orthonormal columns and the upper
/// triangular factor (diagonal real and nonnegative). A rank-deficient second
/// column is replaced by a deterministic completion vector.
fn thin_qr_2<T: Scalar>(m: &CMat<T>) -> ([Vec<Complex<T>>; 2], [[Complex<T>; 2]; 2]) {
    assert_eq!(m.cols(), 2, "thin_qr_2 expects two columns");
    let zero = Complex::new(T::zero(), T::zero());
    let x1 = m.col(0);
    let x2 = m.col(1);
    let n1 = norm2(&x1);
    assert!(n1 > T::zero(), "zero column in projection target");
    let q1: Vec<Complex<T>> = x1.iter().map(|&c| c / n1).collect();

    let mut v = x2.clone();
    let r01 = {
        // two Gram-Schmidt passes; accumulate the coefficient
        let mut acc = zero;
        for _ in 0..2 {
            let c = crate::matrix::dotc(&q1, &v);
            for (vi, qi) in v.iter_mut().zip(&q1) {
                *vi = *vi - c * qi;
            }
            acc = acc + c;
        }
        acc
    };
    let r11 = norm2(&v);
    let q2 = if r11 > T::of(RANK_RTOL) * norm2(&x2) {
        v.iter().map(|&c| c / r11).collect()
    } else {
        // collinear columns: any unit vector orthogonal to q1 completes the basis
        let mut q2 = vec![zero; x2.len()];
        let basis = [q1.clone()];
        for idx in 0..x2.len() {
            q2.iter_mut().for_each(|c| *c = zero);
            q2[idx] = Complex::new(T::one(), T::zero());
            if orthonormalize_against(&mut q2, &basis) >= T::of(COMPLETION_TOL) {
                break;
            }
        }
        q2
    };
    let r = [
        [Complex::new(n1, T::zero()), r01],
        [zero, Complex::new(r11, T::zero())],
    ];
    ([q1, q2], r)
}

/// Closed-form SVD of a 2x2 complex matrix, `c = u · diag(s) · vᴴ`, singular
/// values descending. Built from the eigendecomposition of the Gram matrix
/// `cᴴc`.
fn svd_2x2<T: Scalar>(c: &[[Complex<T>; 2]; 2]) -> ([[Complex<T>; 2]; 2], [T; 2], [[Complex<T>; 2]; 2]) {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let g11 = c[0][0].norm_sqr() + c[1][0].norm_sqr();
    let g22 = c[0][1].norm_sqr() + c[1][1].norm_sqr();
    let g12 = c[0][0].conj() * c[0][1] + c[1][0].conj() * c[1][1];

    let half = T::of(0.5);
    let mean = (g11 + g22) * half;
    let disc = (((g11 - g22) * half).powi(2) + g12.norm_sqr()).sqrt();
    let l1 = (mean + disc).max(T::zero());
    let s1 = l1.sqrt();
    // The small eigenvalue of the Gram matrix drowns in round-off when the
    // singular values are far apart; recover the small singular value from
    // the determinant instead (σ1·σ2 = |det c|).
    let det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
    let s2 = if s1 > T::zero() { (det.norm() / s1).min(s1) } else { T::zero() };
    let s = [s1, s2];

    // right singular vectors (columns v1, v2), branch chosen for stability
    let v1: [Complex<T>; 2] = if g12.norm_sqr() == T::zero() {
        if g11 >= g22 {
            [one, zero]
        } else {
            [zero, one]
        }
    } else {
        let raw = if g11 >= g22 {
            [Complex::new(l1 - g22, T::zero()), g12.conj()]
        } else {
            [g12, Complex::new(l1 - g11, T::zero())]
        };
        let n = (raw[0].norm_sqr() + raw[1].norm_sqr()).sqrt();
        [raw[0] / n, raw[1] / n]
    };
    let v2 = [-v1[1].conj(), v1[0].conj()];

    let apply = |v: &[Complex<T>; 2]| -> [Complex<T>; 2] {
        [c[0][0] * v[0] + c[0][1] * v[1], c[1][0] * v[0] + c[1][1] * v[1]]
    };
    let u1: [Complex<T>; 2] = if s[0] > T::zero() {
        let w = apply(&v1);
        let n = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
        [w[0] / n, w[1] / n]
    } else {
        [one, zero]
    };
    let u2: [Complex<T>; 2] = if s[1] > T::of(RANK_RTOL) * s[0] {
        let mut w = apply(&v2);
        // re-orthogonalize against u1 before normalizing
        for _ in 0..2 {
            let proj = u1[0].conj() * w[0] + u1[1].conj() * w[1];
            w[0] = w[0] - proj * u1[0];
            w[1] = w[1] - proj * u1[1];
        }
        let n = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
        if n > T::zero() {
            [w[0] / n, w[1] / n]
        } else {
            [-u1[1].conj(), u1[0].conj()]
        }
    } else {
        [-u1[1].conj(), u1[0].conj()]
    };

    ([[u1[0], u2[0]], [u1[1], u2[1]]], s, [[v1[0], v2[0]], [v1[1], v2[1]]])
}

/// Singular values of a 2x2 matrix, descending.
fn singular_values_2x2<T: Scalar>(c: &[[Complex<T>; 2]; 2]) -> (T, T) {
    let (_, s, _) = svd_2x2(c);
    (s[0], s[1])
}

struct TargetSvd<T> {
    /// Left singular directions of `XYᴴ` (two N-vectors).
    u_thin: [Vec<Complex<T>>; 2],
    /// Right singular directions of `XYᴴ`.
    v_thin: [Vec<Complex<T>>; 2],
    /// Nonzero singular values of `XYᴴ` (rank ≤ 2).
    sigma: [T; 2],
    sv_x: (T, T),
    sv_y: (T, T),
}

/// SVD of the rank-≤2 product `XYᴴ` through thin QR factors and the 2x2 core
/// `R_X R_Yᴴ`.
fn target_svd<T: Scalar>(x: &CMat<T>, y: &CMat<T>) -> TargetSvd<T> {
    let (qx, rx) = thin_qr_2(x);
    let (qy, ry) = thin_qr_2(y);
    // core = R_X R_Yᴴ
    let mut core = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                core[i][j] = core[i][j] + rx[i][k] * ry[j][k].conj();
            }
        }
    }
    let (u2, sigma, v2) = svd_2x2(&core);
    let combine = |q: &[Vec<Complex<T>>; 2], w: &[[Complex<T>; 2]; 2], col: usize| -> Vec<Complex<T>> {
        q[0].iter()
            .zip(&q[1])
            .map(|(&a, &b)| a * w[0][col] + b * w[1][col])
            .collect()
    };
    TargetSvd {
        u_thin: [combine(&qx, &u2, 0), combine(&qx, &u2, 1)],
        v_thin: [combine(&qy, &v2, 0), combine(&qy, &v2, 1)],
        sigma,
        sv_x: singular_values_2x2(&rx),
        sv_y: singular_values_2x2(&ry),
    }
}

/// Extends orthonormal columns to a full orthonormal basis of dimension `n`
/// by Gram-Schmidt over standard basis vectors, taken in index order
/// (reversed when `reverse` is set; any completion yields the same projection
/// residual).
fn complete_basis<T: Scalar>(
    mut cols: Vec<Vec<Complex<T>>>,
    n: usize,
    reverse: bool,
) -> Vec<Vec<Complex<T>>> {
    let zero = Complex::new(T::zero(), T::zero());
    let indices: Vec<usize> = if reverse { (0..n).rev().collect() } else { (0..n).collect() };
    for idx in indices {
        if cols.len() == n {
            break;
        }
        let mut e = vec![zero; n];
        e[idx] = Complex::new(T::one(), T::zero());
        if orthonormalize_against(&mut e, &cols) >= T::of(COMPLETION_TOL) {
            cols.push(e);
        }
    }
    assert_eq!(cols.len(), n, "unitary completion exhausted the standard basis");
    cols
}

/// `‖X − ΘY‖_F²`.
fn projection_residual<T: Scalar>(x: &CMat<T>, y: &CMat<T>, theta: &CMat<T>) -> T {
    (x - &(theta * y)).frobenius_norm().powi(2)
}

fn assemble_from_bases<T: Scalar>(u: &[Vec<Complex<T>>], v: &[Vec<Complex<T>>], n: usize) -> CMat<T> {
    // Θ = Σ_k u_k v_kᴴ
    let mut theta = CMat::zeros(n, n);
    for k in 0..n {
        for i in 0..n {
            let ui = u[k][i];
            if ui.norm_sqr() == T::zero() {
                continue;
            }
            for j in 0..n {
                let update = ui * v[k][j].conj();
                theta[(i, j)] = theta[(i, j)] + update;
            }
        }
    }
    theta
}

fn procrustes_core<T: Scalar>(t: &ProjectionTargets<T>, reverse_completion: bool) -> (CMat<T>, ProcrustesDiag<T>) {
    let n = t.x.rows();
    assert_eq!(t.x.cols(), 2, "projection targets must have two columns");
    assert_eq!((t.y.rows(), t.y.cols()), (n, 2), "target shapes disagree");
    let svd = target_svd(&t.x, &t.y);
    let u_full = complete_basis(svd.u_thin.to_vec(), n, reverse_completion);
    let v_full = complete_basis(svd.v_thin.to_vec(), n, reverse_completion);
    let theta = assemble_from_bases(&u_full, &v_full, n);
    let diag = ProcrustesDiag {
        sigma_trace: svd.sigma[0] + svd.sigma[1],
        residual: projection_residual(&t.x, &t.y, &theta),
        sv_x: svd.sv_x,
        sv_y: svd.sv_y,
    };
    (theta, diag)
}

/// Solves the unitary Procrustes problem `min ‖X − ΘY‖_F²` over unitary `Θ`.
///
/// The minimizer is `UVᴴ` for the SVD `XYᴴ = UΣVᴴ`; the returned matrix is
/// generally non-symmetric, i.e. a non-reciprocal configuration. The attained
/// residual equals `4 − 2·Tr(Σ)`.
pub fn procrustes_unitary<T: Scalar>(t: &ProjectionTargets<T>) -> RisSolution<T> {
    let (theta, diag) = procrustes_core(t, false);
    RisSolution { theta, reciprocal: false, design_with_ss: t.with_ss, diagnostics: Some(diag) }
}

/// Projection diagnostics for any unitary `theta` against the given targets.
///
/// The `sigma_trace` and singular-value fields depend only on the targets;
/// `residual` is evaluated for the supplied matrix, so for suboptimal `theta`
/// it exceeds `4 − 2·sigma_trace`.
pub fn projection_diagnostics<T: Scalar>(t: &ProjectionTargets<T>, theta: &CMat<T>) -> ProcrustesDiag<T> {
    let svd = target_svd(&t.x, &t.y);
    let diag = ProcrustesDiag {
        sigma_trace: svd.sigma[0] + svd.sigma[1],
        residual: projection_residual(&t.x, &t.y, theta),
        sv_x: svd.sv_x,
        sv_y: svd.sv_y,
    };
    let tol = T::of(1e-9);
    let cross = diag.sv_x.0 * diag.sv_y.0 + diag.sv_x.1 * diag.sv_y.1;
    debug_assert!(diag.sigma_trace <= cross + tol, "singular-value trace bound violated");
    debug_assert!(
        cross >= T::of(std::f64::consts::SQRT_2) - tol && cross <= T::of(2.0) + tol,
        "cross singular-value product out of range"
    );
    debug_assert!(diag.residual + tol >= T::of(4.0) - T::of(2.0) * diag.sigma_trace, "residual below global minimum");
    diag
}

/// Channel-strength upper bounds `(downlink, uplink)` over all unitary `Θ`.
///
/// With structural scattering: `(|hᵀh'| + ‖h‖‖h'‖)²` per link; without:
/// `‖h‖²‖h'‖²`.
pub fn strength_upper_bounds<T: Scalar>(ch: &ChannelSet<T>, with_ss: bool) -> (T, T) {
    let bound = |a: &[Complex<T>], b: &[Complex<T>]| -> T {
        if with_ss {
            (dotu(a, b).norm() + norm2(a) * norm2(b)).powi(2)
        } else {
            norm2(a).powi(2) * norm2(b).powi(2)
        }
    };
    (bound(&ch.h_rdi, &ch.h_bi), bound(&ch.h_itu, &ch.h_bi))
}
