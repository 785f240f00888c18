//! Desk-scale spectral geometry on finite metric measure spaces.

pub mod cheeger;
pub mod eigensolver;
pub mod error;
pub mod functionals;
pub mod generators;
pub mod mmspace;
pub mod oracles;

pub use cheeger::{cheeger, exact_cheeger, minkowski_boundary, sweep_cheeger, CutMethod, CutResult};
pub use eigensolver::{solve, solve_p2_exact, sweep_p, SolveOptions, SolveStatus, SpectralResult};
pub use error::{Error, Result};
pub use functionals::{centered_norm, rayleigh_p, CenteredNorm};
pub use generators::{generate, load_space, save_space, ModelKind, ModelSpec, DEFAULT_SEED};
pub use mmspace::{FiniteMetricMeasureSpace, ScalarField};
