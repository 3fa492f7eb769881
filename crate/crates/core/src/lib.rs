//! Numerical workbench for two-dimensional acoustic scattering by sound-hard
//! obstacles and screens.
//!
//! The library solves the Helmholtz equation `Δu + k²u = 0` outside a compact
//! scatterer with a homogeneous Neumann (sound-hard) condition on the boundary
//! and an outgoing radiation condition at infinity, realized as a truncated
//! Dirichlet-to-Neumann map on a circle. Alongside the scattering solver it
//! carries the machinery needed to study how solutions behave under
//! perturbations of the scatterer:
//!
//! * [`geometry`] — piecewise-linear scatterers, Hausdorff distance, the
//!   normal-offset thickening `K_h` with its pseudo-distance, admissibility
//!   checks, and the JSON geometry format.
//! * [`specfun`] — integer-order Bessel/Hankel functions and the analytic
//!   series solution for the sound-hard disk used as a validation oracle.
//! * [`mesh`] — constrained Delaunay triangulation of the truncated exterior
//!   domain with Ruppert refinement and point location.
//! * [`solver`] — P1 finite elements for the coercive Neumann problem
//!   `-Δu + u = f` and for Helmholtz scattering with the DtN closure.
//! * [`scattering`] — plane waves, far-field patterns, exterior evaluation and
//!   decay measurements.
//! * [`experiments`] — batch studies: solution-convergence diagnostics under
//!   scatterer perturbation, screen-thickening ladders, uniform-bound sweeps
//!   and decay-uniformity surveys.

pub mod experiments;
pub mod geometry;
pub mod mesh;
pub mod scattering;
pub mod solver;
pub mod specfun;

pub use geometry::{Point2, PolyChain, Scatterer};
pub use mesh::{DomainSpec, TriMesh};
pub use scattering::{FarFieldPattern, PlaneWave};
pub use solver::{ComplexField, DtnOperator};
