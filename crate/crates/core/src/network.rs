//! Multiport network algebra for RIS aided full-duplex links.
//!
//! The whole link — base-station transmit/receive antennas, RIS elements, and
//! user antennas — is one N-port network described by its impedance matrix `Z`
//! or scattering matrix `S`, with ports ordered as transmitters (base station,
//! then uplink user), RIS elements, receivers (base station, then downlink
//! user). Terminating the transmitter ports with sources, the RIS ports with
//! the reconfigurable impedance network, and the receiver ports with loads
//! yields the end-to-end voltage-transfer channel.
//!
//! Two reductions of the terminated-network channel are provided: one for the
//! matched, unilateral regime that keeps the receive-to-transmit coupling
//! inside the full-duplex base station (self-interference), and the fully
//! decoupled cascade that remains once that coupling is suppressed.

use std::fmt;

use num_complex::Complex;

use crate::matrix::{CMat, SingularMatrix};
use crate::Scalar;

/// Shape tolerance (relative to the reference impedance) used when checking
/// that impedance blocks honor the matched, unilateral assumptions.
const SHAPE_RTOL: f64 = 1e-9;

/// Errors from network-model operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetworkError {
    /// An inverse failed; `what` names the matrix expression.
    Singular { what: String },
    /// Impedance blocks do not have the matched, unilateral shape.
    AssumptionViolated { what: String },
    /// Operand dimensions are inconsistent.
    DimensionMismatch { what: String },
}

impl fmt::Display for NetworkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Singular { what } => write!(f, "singular matrix in {what}"),
            Self::AssumptionViolated { what } => write!(f, "assumption violated: {what}"),
            Self::DimensionMismatch { what } => write!(f, "dimension mismatch: {what}"),
        }
    }
}

impl std::error::Error for NetworkError {}

impl From<SingularMatrix> for NetworkError {
    fn from(e: SingularMatrix) -> Self {
        Self::Singular { what: e.context }
    }
}

/// Port counts partitioning the N-port network.
///
/// `n_tb`/`n_rb` are the base-station transmit/receive antennas, `n_tu` the
/// uplink-user transmit antennas, `n_rd` the downlink-user receive antennas,
/// and `n_i` the RIS elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PortLayout {
    pub n_tb: usize,
    pub n_tu: usize,
    pub n_i: usize,
    pub n_rb: usize,
    pub n_rd: usize,
}

impl PortLayout {
    pub fn new(n_tb: usize, n_tu: usize, n_i: usize, n_rb: usize, n_rd: usize) -> Self {
        assert!(n_i >= 1, "a RIS needs at least one element");
        Self { n_tb, n_tu, n_i, n_rb, n_rd }
    }

    /// Single-antenna full-duplex case: one TX and one RX antenna at the base
    /// station, single-antenna users, `n_i` RIS elements.
    pub fn single_antenna(n_i: usize) -> Self {
        Self::new(1, 1, n_i, 1, 1)
    }

    /// Total transmitter ports.
    pub fn n_t(&self) -> usize {
        self.n_tb + self.n_tu
    }

    /// Total receiver ports.
    pub fn n_r(&self) -> usize {
        self.n_rb + self.n_rd
    }

    /// Total ports.
    pub fn n(&self) -> usize {
        self.n_t() + self.n_i + self.n_r()
    }
}

/// Impedance blocks of the N-port network in transmitter/RIS/receiver order.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpedanceBlocks<T> {
    pub z_tt: CMat<T>,
    pub z_ti: CMat<T>,
    pub z_tr: CMat<T>,
    pub z_it: CMat<T>,
    pub z_ii: CMat<T>,
    pub z_ir: CMat<T>,
    pub z_rt: CMat<T>,
    pub z_ri: CMat<T>,
    pub z_rr: CMat<T>,
    /// Reference impedance in ohms.
    pub z0: T,
}

impl<T: Scalar> ImpedanceBlocks<T> {
    /// Builds the matched, unilateral impedance shape: diagonal self blocks
    /// `z0·I`, no receiver-to-RIS or RIS-to-transmitter coupling, and an
    /// optional base-station receive-to-transmit block (the self-interference
    /// path kept inside the full-duplex device).
    pub fn unilateral(
        layout: &PortLayout,
        z_it: CMat<T>,
        z_ri: CMat<T>,
        z_rt: CMat<T>,
        z_tbrb: Option<&CMat<T>>,
        z0: T,
    ) -> Self {
        let z0c = Complex::new(z0, T::zero());
        let mut z_tr = CMat::zeros(layout.n_t(), layout.n_r());
        if let Some(block) = z_tbrb {
            assert_eq!((block.rows(), block.cols()), (layout.n_tb, layout.n_rb));
            z_tr.set_block(0, 0, block);
        }
        Self {
            z_tt: CMat::scaled_identity(layout.n_t(), z0c),
            z_ti: CMat::zeros(layout.n_t(), layout.n_i),
            z_tr,
            z_it,
            z_ii: CMat::scaled_identity(layout.n_i, z0c),
            z_ir: CMat::zeros(layout.n_i, layout.n_r()),
            z_rt,
            z_ri,
            z_rr: CMat::scaled_identity(layout.n_r(), z0c),
            z0,
        }
    }

    pub fn validate(&self, layout: &PortLayout) -> Result<(), NetworkError> {
        let (nt, ni, nr) = (layout.n_t(), layout.n_i, layout.n_r());
        let dims: [(&CMat<T>, &str, usize, usize); 9] = [
            (&self.z_tt, "z_tt", nt, nt),
            (&self.z_ti, "z_ti", nt, ni),
            (&self.z_tr, "z_tr", nt, nr),
            (&self.z_it, "z_it", ni, nt),
            (&self.z_ii, "z_ii", ni, ni),
            (&self.z_ir, "z_ir", ni, nr),
            (&self.z_rt, "z_rt", nr, nt),
            (&self.z_ri, "z_ri", nr, ni),
            (&self.z_rr, "z_rr", nr, nr),
        ];
        for (m, name, r, c) in dims {
            if (m.rows(), m.cols()) != (r, c) {
                return Err(NetworkError::DimensionMismatch {
                    what: format!("{name} is {}x{}, expected {r}x{c}", m.rows(), m.cols()),
                });
            }
        }
        if !(self.z0 > T::zero()) {
            return Err(NetworkError::DimensionMismatch { what: "z0 must be real and positive".into() });
        }
        Ok(())
    }

    /// Assembles the full N x N impedance matrix.
    pub fn assemble(&self, layout: &PortLayout) -> Result<CMat<T>, NetworkError> {
        self.validate(layout)?;
        let (nt, ni) = (layout.n_t(), layout.n_i);
        let mut z = CMat::zeros(layout.n(), layout.n());
        z.set_block(0, 0, &self.z_tt);
        z.set_block(0, nt, &self.z_ti);
        z.set_block(0, nt + ni, &self.z_tr);
        z.set_block(nt, 0, &self.z_it);
        z.set_block(nt, nt, &self.z_ii);
        z.set_block(nt, nt + ni, &self.z_ir);
        z.set_block(nt + ni, 0, &self.z_rt);
        z.set_block(nt + ni, nt, &self.z_ri);
        z.set_block(nt + ni, nt + ni, &self.z_rr);
        Ok(z)
    }
}

/// Scattering blocks derived from a matched, unilateral impedance description,
/// together with the intermediates of the reduction.
///
/// `b` is the receiver-side Schur complement; `a_*` are the blocks of its
/// propagated inverse acting on `[z_it; z_rt]`-type stacks.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedScattering<T> {
    pub s_tt: CMat<T>,
    pub s_ti: CMat<T>,
    pub s_it: CMat<T>,
    pub s_ii: CMat<T>,
    pub s_rt: CMat<T>,
    pub s_ri: CMat<T>,
    pub a_ii: CMat<T>,
    pub a_ir: CMat<T>,
    pub a_ri: CMat<T>,
    pub a_rr: CMat<T>,
    pub b: CMat<T>,
}

/// Terminations of the N-port network: source reflection `gamma_t`, load
/// reflection `gamma_r`, and the RIS scattering matrix `theta`.
///
/// Spectral-radius conditions on the terminations are the caller's
/// responsibility.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminationSpec<T> {
    pub gamma_t: CMat<T>,
    pub gamma_r: CMat<T>,
    pub theta: CMat<T>,
}

impl<T: Scalar> TerminationSpec<T> {
    /// Matched sources and loads (zero reflection) around a given RIS matrix.
    pub fn matched(layout: &PortLayout, theta: CMat<T>) -> Self {
        assert_eq!((theta.rows(), theta.cols()), (layout.n_i, layout.n_i));
        Self {
            gamma_t: CMat::zeros(layout.n_t(), layout.n_t()),
            gamma_r: CMat::zeros(layout.n_r(), layout.n_r()),
            theta,
        }
    }
}

/// Impedance-to-scattering conversion `S = (Z + z0·I)⁻¹ (Z − z0·I)`.
pub fn z_to_s<T: Scalar>(z: &CMat<T>, z0: T) -> Result<CMat<T>, NetworkError> {
    assert!(z.is_square(), "impedance matrix must be square");
    let z0c = CMat::scaled_identity(z.rows(), Complex::new(z0, T::zero()));
    (&(z + &z0c)).solve(&(z - &z0c)).map_err(|e| e.in_context("Z + z0*I").into())
}

/// Scattering-to-impedance conversion `Z = z0 · (I − S)⁻¹ (I + S)`.
pub fn s_to_z<T: Scalar>(s: &CMat<T>, z0: T) -> Result<CMat<T>, NetworkError> {
    assert!(s.is_square(), "scattering matrix must be square");
    let eye = CMat::identity(s.rows());
    let sum = (&eye + s).scale_real(z0);
    (&eye - s).solve(&sum).map_err(|e| e.in_context("I - S").into())
}

/// End-to-end channel of the terminated N-port network.
///
/// With `T = S (I − ΓS)⁻¹` and `Γ = blkdiag(Γ_T, Θ, Γ_R)`, the receiver
/// voltages relate to the transmitter voltages through
/// `H = (Γ_R + I) T_RT (I + Γ_T T_TT + T_TT)⁻¹`.
pub fn general_channel<T: Scalar>(
    s: &CMat<T>,
    term: &TerminationSpec<T>,
    layout: &PortLayout,
) -> Result<CMat<T>, NetworkError> {
    let (nt, ni, nr, n) = (layout.n_t(), layout.n_i, layout.n_r(), layout.n());
    if (s.rows(), s.cols()) != (n, n) {
        return Err(NetworkError::DimensionMismatch {
            what: format!("S is {}x{}, expected {n}x{n}", s.rows(), s.cols()),
        });
    }
    if (term.gamma_t.rows(), term.gamma_t.cols()) != (nt, nt)
        || (term.gamma_r.rows(), term.gamma_r.cols()) != (nr, nr)
        || (term.theta.rows(), term.theta.cols()) != (ni, ni)
    {
        return Err(NetworkError::DimensionMismatch { what: "termination blocks do not match layout".into() });
    }

    let gamma = CMat::block_diag(&[&term.gamma_t, &term.theta, &term.gamma_r]);
    let resolvent = (&CMat::identity(n) - &(&gamma * s))
        .solve(&CMat::identity(n))
        .map_err(|e| NetworkError::from(e.in_context("I_N - Gamma*S")))?;
    let t = s * &resolvent;
    let t_rt = t.block(nt + ni, 0, nr, nt);
    let t_tt = t.block(0, 0, nt, nt);

    let inner = &(&CMat::identity(nt) + &(&term.gamma_t * &t_tt)) + &t_tt;
    let inner_inv = inner
        .inverse()
        .map_err(|e| NetworkError::from(e.in_context("I_NT + Gamma_T*T_TT + T_TT")))?;
    let left = &(&term.gamma_r + &CMat::identity(nr)) * &t_rt;
    Ok(&left * &inner_inv)
}

fn require_shape<T: Scalar>(
    actual: &CMat<T>,
    expected: &CMat<T>,
    what: &str,
    tol: T,
) -> Result<(), NetworkError> {
    if (actual - expected).max_abs() > tol {
        return Err(NetworkError::AssumptionViolated { what: what.into() });
    }
    Ok(())
}

/// Derives the scattering blocks of a matched, unilateral network directly
/// from its impedance blocks.
///
/// Requires the matched, unilateral impedance shape: `z_tt`, `z_ii`, `z_rr`
/// equal to `z0·I`; `z_ti` and `z_ir` zero; `z_tr` zero except for its
/// base-station receive-to-transmit corner (the in-device self-interference
/// path).
pub fn scattering_from_unilateral_impedance<T: Scalar>(
    zb: &ImpedanceBlocks<T>,
    layout: &PortLayout,
) -> Result<DerivedScattering<T>, NetworkError> {
    zb.validate(layout)?;
    let z0 = zb.z0;
    let tol = T::of(SHAPE_RTOL) * z0;
    let z0c = Complex::new(z0, T::zero());
    let (nt, ni, nr) = (layout.n_t(), layout.n_i, layout.n_r());

    require_shape(&zb.z_tt, &CMat::scaled_identity(nt, z0c), "z_tt must equal z0*I", tol)?;
    require_shape(&zb.z_ii, &CMat::scaled_identity(ni, z0c), "z_ii must equal z0*I", tol)?;
    require_shape(&zb.z_rr, &CMat::scaled_identity(nr, z0c), "z_rr must equal z0*I", tol)?;
    require_shape(&zb.z_ti, &CMat::zeros(nt, ni), "z_ti must be zero", tol)?;
    require_shape(&zb.z_ir, &CMat::zeros(ni, nr), "z_ir must be zero", tol)?;
    // Only the base-station receive-to-transmit corner of z_tr may be nonzero.
    let mut z_tr_shape = CMat::zeros(nt, nr);
    z_tr_shape.set_block(0, 0, &zb.z_tr.block(0, 0, layout.n_tb, layout.n_rb));
    require_shape(&zb.z_tr, &z_tr_shape, "z_tr may only couple the base-station receive ports", tol)?;

    let half = T::of(0.5) / z0; // 1/(2 z0)
    let quarter = half * half; // 1/(4 z0^2)
    let eighth = half * quarter; // 1/(8 z0^3)

    let b = {
        let two_z0 = CMat::scaled_identity(nr, Complex::new(T::of(2.0) * z0, T::zero()));
        let rt_tr = (&zb.z_rt * &zb.z_tr).scale_real(half);
        let ri_it_tr = (&(&zb.z_ri * &zb.z_it) * &zb.z_tr).scale_real(quarter);
        &(&two_z0 - &rt_tr) + &ri_it_tr
    };
    let b_inv = b.inverse().map_err(|e| NetworkError::from(e.in_context("B")))?;

    let a_rr = b_inv.clone();
    let a_ri = (&b_inv * &zb.z_ri).scale_real(-half);
    let it_tr = &zb.z_it * &zb.z_tr;
    let a_ir = (&it_tr * &b_inv).scale_real(quarter);
    let a_ii = {
        let correction = (&(&it_tr * &b_inv) * &zb.z_ri).scale_real(eighth);
        &CMat::scaled_identity(ni, Complex::new(half, T::zero())) - &correction
    };

    let s_it = &(&a_ii * &zb.z_it) + &(&a_ir * &zb.z_rt);
    let s_ii = &a_ir * &zb.z_ri;
    let s_rt = &(&a_ri * &zb.z_it) + &(&a_rr * &zb.z_rt);
    let s_ri = &a_rr * &zb.z_ri;
    let s_tt = (&zb.z_tr * &s_rt).scale_real(-half);
    let s_ti = (&zb.z_tr * &s_ri).scale_real(-half);

    Ok(DerivedScattering { s_tt, s_ti, s_it, s_ii, s_rt, s_ri, a_ii, a_ir, a_ri, a_rr, b })
}

/// Channel of the matched, unilateral network with in-device coupling.
///
/// `H = (S_RT + S_RI (I − Θ S_II)⁻¹ Θ S_IT) ·
///      (I + S_TT + S_TI (I − Θ S_II)⁻¹ Θ S_IT)⁻¹`
pub fn channel_from_scattering<T: Scalar>(
    ds: &DerivedScattering<T>,
    theta: &CMat<T>,
) -> Result<CMat<T>, NetworkError> {
    let ni = ds.s_ii.rows();
    if (theta.rows(), theta.cols()) != (ni, ni) {
        return Err(NetworkError::DimensionMismatch {
            what: format!("theta is {}x{}, expected {ni}x{ni}", theta.rows(), theta.cols()),
        });
    }
    let theta_s_it = &(theta * &ds.s_it);
    let k = (&CMat::identity(ni) - &(theta * &ds.s_ii))
        .solve(theta_s_it)
        .map_err(|e| NetworkError::from(e.in_context("I - Theta*S_II")))?;
    let numerator = &ds.s_rt + &(&ds.s_ri * &k);
    let nt = ds.s_tt.rows();
    let denominator = &(&CMat::identity(nt) + &ds.s_tt) + &(&ds.s_ti * &k);
    let denominator_inv = denominator
        .inverse()
        .map_err(|e| NetworkError::from(e.in_context("I_NT + S_TT + S_TI*(I - Theta*S_II)^-1*Theta*S_IT")))?;
    Ok(&numerator * &denominator_inv)
}

/// Fully decoupled cascaded channel `H = H_RT + H_RI (Θ − I) H_IT`.
///
/// The `−I` term is the structural scattering: the surface re-radiates even
/// when all of its ports are matched (`Θ = 0`), leaving the residual link
/// `−H_RI H_IT`.
pub fn cascaded_channel<T: Scalar>(
    h_rt: &CMat<T>,
    h_ri: &CMat<T>,
    h_it: &CMat<T>,
    theta: &CMat<T>,
) -> Result<CMat<T>, NetworkError> {
    let ni = h_ri.cols();
    if h_it.rows() != ni || (theta.rows(), theta.cols()) != (ni, ni) {
        return Err(NetworkError::DimensionMismatch { what: "RIS dimensions disagree".into() });
    }
    if h_rt.rows() != h_ri.rows() || h_rt.cols() != h_it.cols() {
        return Err(NetworkError::DimensionMismatch { what: "direct and cascaded blocks disagree".into() });
    }
    let reflect = theta - &CMat::identity(ni);
    Ok(h_rt + &(&(h_ri * &reflect) * h_it))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gaussian_mat(rows: usize, cols: usize, scale: f64, rng: &mut ChaCha8Rng) -> CMat<f64> {
        CMat::from_fn(rows, cols, |_, _| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            c(re * scale, im * scale)
        })
    }

    #[test]
    fn matched_load_reflects_nothing() {
        let z = CMat::scaled_identity(4, c(50.0, 0.0));
        let s = z_to_s(&z, 50.0).unwrap();
        assert!(s.max_abs() < 1e-15);
    }

    #[test]
    fn real_mismatch_reflection_coefficient() {
        let z = CMat::scaled_identity(2, c(150.0, 0.0));
        let s = z_to_s(&z, 50.0).unwrap();
        assert!((&s - &CMat::scaled_identity(2, c(0.5, 0.0))).max_abs() < 1e-14);
    }

    #[test]
    fn s_to_z_inverts_the_trivial_cases() {
        let z = s_to_z(&CMat::<f64>::zeros(3, 3), 50.0).unwrap();
        assert!((&z - &CMat::scaled_identity(3, c(50.0, 0.0))).max_abs() < 1e-12);
        let z = s_to_z(&CMat::scaled_identity(2, c(0.5, 0.0)), 50.0).unwrap();
        assert!((&z - &CMat::scaled_identity(2, c(150.0, 0.0))).max_abs() < 1e-12);
    }

    #[test]
    fn purely_imaginary_impedance_gives_unitary_symmetric_s() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // symmetric purely imaginary 8x8
        let mut x = gaussian_mat(8, 8, 30.0, &mut rng);
        x = (&x + &x.transpose()).scale_real(0.5);
        let z = CMat::from_fn(8, 8, |i, j| c(0.0, x[(i, j)].re));
        let s = z_to_s(&z, 50.0).unwrap();
        assert!(s.unitarity_defect() < 1e-10);
        assert!(s.symmetry_defect() < 1e-10);
    }

    #[test]
    fn isolated_network_has_zero_channel() {
        let layout = PortLayout::single_antenna(3);
        let s = CMat::<f64>::zeros(layout.n(), layout.n());
        let term = TerminationSpec::matched(&layout, CMat::identity(3));
        let h = general_channel(&s, &term, &layout).unwrap();
        assert!(h.max_abs() == 0.0);
    }

    #[test]
    fn singular_resolvent_is_named() {
        let layout = PortLayout::single_antenna(2);
        // S = I with theta = I makes I - Gamma*S singular on the RIS block.
        let s = CMat::<f64>::identity(layout.n());
        let term = TerminationSpec::matched(&layout, CMat::identity(2));
        match general_channel(&s, &term, &layout) {
            Err(NetworkError::Singular { what }) => assert!(what.contains("Gamma")),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn shape_violation_is_an_assumption_error() {
        let layout = PortLayout::single_antenna(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut zb = ImpedanceBlocks::unilateral(
            &layout,
            gaussian_mat(2, 2, 0.05, &mut rng),
            gaussian_mat(2, 2, 0.05, &mut rng),
            gaussian_mat(2, 2, 0.05, &mut rng),
            None,
            50.0,
        );
        zb.z_ti[(0, 0)] = c(1.0, 0.0);
        match scattering_from_unilateral_impedance(&zb, &layout) {
            Err(NetworkError::AssumptionViolated { what }) => assert!(what.contains("z_ti")),
            other => panic!("expected assumption error, got {other:?}"),
        }
    }

    #[test]
    fn no_coupling_through_z_tr_reduces_to_direct_mappings() {
        let layout = PortLayout::single_antenna(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let z_it = gaussian_mat(3, 2, 0.05, &mut rng);
        let z_ri = gaussian_mat(2, 3, 0.05, &mut rng);
        let z_rt = gaussian_mat(2, 2, 0.05, &mut rng);
        let z0 = 50.0;
        let zb = ImpedanceBlocks::unilateral(&layout, z_it.clone(), z_ri.clone(), z_rt.clone(), None, z0);
        let ds = scattering_from_unilateral_impedance(&zb, &layout).unwrap();

        assert!(ds.s_tt.max_abs() < 1e-15);
        assert!(ds.s_ti.max_abs() < 1e-15);
        assert!(ds.s_ii.max_abs() < 1e-15);
        assert!((&ds.s_it - &z_it.scale_real(1.0 / (2.0 * z0))).max_abs() < 1e-15);
        assert!((&ds.s_ri - &z_ri.scale_real(1.0 / (2.0 * z0))).max_abs() < 1e-15);
        let expected_s_rt = &z_rt.scale_real(1.0 / (2.0 * z0))
            - &(&z_ri * &z_it).scale_real(1.0 / (4.0 * z0 * z0));
        assert!((&ds.s_rt - &expected_s_rt).max_abs() < 1e-15);
    }

    #[test]
    fn coupling_blocks_scale_linearly() {
        let layout = PortLayout::single_antenna(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let z_it = gaussian_mat(2, 2, 0.05, &mut rng);
        let z_ri = gaussian_mat(2, 2, 0.05, &mut rng);
        let z_rt = gaussian_mat(2, 2, 0.05, &mut rng);
        let zb = ImpedanceBlocks::unilateral(&layout, z_it.clone(), z_ri.clone(), z_rt.clone(), None, 50.0);
        let zb2 = ImpedanceBlocks::unilateral(
            &layout,
            z_it.scale_real(2.0),
            z_ri.scale_real(2.0),
            z_rt.scale_real(2.0),
            None,
            50.0,
        );
        let ds = scattering_from_unilateral_impedance(&zb, &layout).unwrap();
        let ds2 = scattering_from_unilateral_impedance(&zb2, &layout).unwrap();
        assert!((&ds2.s_it - &ds.s_it.scale_real(2.0)).max_abs() < 1e-15);
        assert!((&ds2.s_ri - &ds.s_ri.scale_real(2.0)).max_abs() < 1e-15);
    }

    #[test]
    fn decoupled_channel_blocks_compose_as_written() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let h_rt = gaussian_mat(2, 2, 1.0, &mut rng);
        let h_ri = gaussian_mat(2, 4, 1.0, &mut rng);
        let h_it = gaussian_mat(4, 2, 1.0, &mut rng);

        // Theta = I cancels the structural scattering entirely.
        let h = cascaded_channel(&h_rt, &h_ri, &h_it, &CMat::identity(4)).unwrap();
        assert!((&h - &h_rt).max_abs() < 1e-15);

        // Theta = 0 leaves the virtual direct link -H_RI H_IT.
        let h = cascaded_channel(&CMat::zeros(2, 2), &h_ri, &h_it, &CMat::zeros(4, 4)).unwrap();
        assert!((&h - &(&h_ri * &h_it).scale_real(-1.0)).max_abs() < 1e-14);
    }

    #[test]
    fn cascaded_channel_rejects_bad_dimensions() {
        let h_rt = CMat::<f64>::zeros(2, 2);
        let h_ri = CMat::<f64>::zeros(2, 4);
        let h_it = CMat::<f64>::zeros(3, 2);
        assert!(matches!(
            cascaded_channel(&h_rt, &h_ri, &h_it, &CMat::identity(4)),
            Err(NetworkError::DimensionMismatch { .. })
        ));
    }
}
