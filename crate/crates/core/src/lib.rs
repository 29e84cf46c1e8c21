//! Quantization of two identical spin-zero particles on `ℝP² × ℝ₊`.
//!
//! The crate builds every object from first principles: the double cover
//! `SU(2) → SO(3)`, the two complex line bundles over `ℝP²`, the induced
//! representations on their sections, the canonical group
//! `W* ⋊ (SU(2) × ℝ₊)`, a grid model of the Weyl/Heisenberg relations on the
//! line, and transported spin frames on the sphere.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`). The aliases
//! below fix `f64`, which is what the verification tolerances are tuned for.

pub mod berry_robbins;
pub mod bundles;
pub mod classical;
pub mod error;
pub mod finite_diff;
pub mod groups;
pub mod harmonics;
pub mod heisenberg;
pub mod linalg;
pub mod manifold;
pub mod representation;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type SU2 = groups::SU2Element<f64>;
pub type SO3 = groups::SO3Matrix<f64>;
pub type H = groups::HElement<f64>;
pub type SpherePoint = groups::SpherePoint<f64>;
pub type RP2Point = groups::RP2Point<f64>;
pub type MomentPoint = manifold::MomentPoint<f64>;
pub type WFunctional = manifold::WFunctional<f64>;
pub type QuadratureGrid = manifold::QuadratureGrid<f64>;
pub type HarmonicCoeffs = harmonics::HarmonicCoeffs<f64>;
pub type WignerD = harmonics::wigner::WignerD<f64>;
pub type SpinMatrices = harmonics::wigner::SpinMatrices<f64>;
pub type AssocElement = bundles::AssocElement<f64>;
pub type LMinusElement = bundles::LMinusElement<f64>;
pub type Section = representation::Section<f64>;
pub type FullSection = representation::canonical::FullSection<f64>;
pub type RadialGrid = representation::canonical::RadialGrid<f64>;
pub type PhasePoint = classical::PhasePoint<f64>;
pub type SemidirectLieElement = classical::SemidirectLieElement<f64>;
pub type GridWavefunction = heisenberg::GridWavefunction<f64>;
pub type HeisenbergElement = heisenberg::HeisenbergElement<f64>;
pub type TransportFrame = berry_robbins::TransportFrame<f64>;
pub type BRState = berry_robbins::BRState<f64>;
