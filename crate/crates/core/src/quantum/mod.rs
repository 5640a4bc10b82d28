//! Bipartite pure states, projective measurements and the Born rule.

mod builtin;
pub mod eigen;
pub mod format;
pub mod linalg;
pub mod random;
mod strategy;

pub use builtin::{builtin_strategy, fourier_basis, real_plane_strategy, BUILTIN_STRATEGIES};
pub use builtin::{GAME1_ALICE_ANGLES, GAME1_BOB_ANGLES, GAME2_ALICE_SHIFTS, GAME2_BOB_SHIFTS, GAME3_ALICE_ANGLES, GAME3_BOB_ANGLES};
pub use eigen::{hermitian_eigen, hermitian_principal_eigenvector};
pub use linalg::{ComplexMatrix, C64};
pub use strategy::{outcome_of, ProjectiveMeasurement, QuantumStrategy, StateVector, NORM_TOL, ORTHO_TOL};
