//! Modeling and solver library for BD-RIS aided full-duplex links.
//!
//! A beyond-diagonal reconfigurable intelligent surface (BD-RIS) terminates the
//! elements of a scattering surface with a reconfigurable multiport impedance
//! network, so its scattering matrix is a general unitary matrix rather than a
//! diagonal phase-shift matrix. This crate models such a surface inside a
//! full-duplex link — one base station transmitting and receiving at once, one
//! uplink user, one downlink user — and provides the solvers that configure it:
//!
//! - [`matrix`]: dense complex matrices with LU solves and Gram-Schmidt
//!   orthonormalization, sized for multiport work (dimensions up to a few
//!   hundred);
//! - [`network`]: impedance/scattering parameter conversion, the terminated
//!   N-port channel, and its reductions under matched, unilateral coupling;
//! - [`channel`]: line-of-sight channel synthesis for the single-antenna case
//!   study (steering vectors, path loss, end-to-end 2x2 channels);
//! - [`ris`]: closed-form reciprocal (diagonal) configurations and the
//!   non-reciprocal unitary Procrustes projection with its diagnostics;
//! - [`metrics`]: beam patterns, normalized channel strengths, and
//!   uplink/downlink achievable rates;
//! - [`oracle`]: seeded brute-force searches used to validate the solvers.
//!
//! All numeric code is generic over the real scalar type through [`Scalar`]
//! (`f32` or `f64`); concrete `f64` aliases are exported at the crate root.

use std::fmt;
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub mod channel;
pub mod matrix;
pub mod metrics;
pub mod network;
pub mod oracle;
pub mod ris;

pub use channel::{build_channels, ChannelSet, ScenarioConfig};
pub use matrix::CMat;
pub use metrics::{BeamPatternSet, LinkMetrics};
pub use network::PortLayout;
pub use ris::{ProcrustesDiag, ProjectionTargets, RisSolution};

/// Real scalar type underlying all complex arithmetic in this crate.
///
/// Implemented for `f32` and `f64`. `of` converts `f64` constants (tolerances,
/// unit conversions) into the working precision.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + fmt::Debug + fmt::Display + 'static
{
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Sum + fmt::Debug + fmt::Display + 'static
{
}

/// Double-precision complex scalar.
pub type C64 = Complex<f64>;
/// Single-precision complex scalar.
pub type C32 = Complex<f32>;
/// Double-precision complex matrix.
pub type Mat64 = CMat<f64>;
/// Single-precision complex matrix.
pub type Mat32 = CMat<f32>;
