//! Reference strategies reaching the quantum values of the builtin games.
//!
//! Game 1 and game 3 use real qubit bases on `(|00> + |11>)/sqrt 2`, where
//! the correlator of bases at angles `s` and `t` is `cos 2(s - t)`. Game 2
//! uses phased Fourier bases on the maximally entangled qutrit pair.

use super::linalg::C64;
use super::strategy::{ProjectiveMeasurement, QuantumStrategy, StateVector};
use crate::error::{Error, Result};
use std::f64::consts::PI;

pub const BUILTIN_STRATEGIES: [&str; 3] = ["game1", "game2", "game3"];

/// Game 1 basis angles. Correlators `E11 = 1/sqrt 2`, `E12 = E21 = E22 = -1/sqrt 2`.
pub const GAME1_ALICE_ANGLES: [f64; 2] = [0.0, -PI / 4.0];
pub const GAME1_BOB_ANGLES: [f64; 2] = [PI / 8.0, 3.0 * PI / 8.0];

/// Game 2 Fourier phase shifts: Alice's vector `k` for input `x` has
/// components `exp(2 pi i j (k + s_x) / 3) / sqrt 3`, Bob's the conjugate
/// phase with his shift.
pub const GAME2_ALICE_SHIFTS: [f64; 2] = [0.0, 0.5];
pub const GAME2_BOB_SHIFTS: [f64; 2] = [-0.25, 0.25];

/// Game 3 basis angles. Consecutive links of the chain differ by `pi/12`,
/// so five correlators equal `cos(pi/6)` and `E13 = -cos(pi/6)`.
pub const GAME3_ALICE_ANGLES: [f64; 3] = [0.0, PI / 6.0, PI / 3.0];
pub const GAME3_BOB_ANGLES: [f64; 3] = [PI / 12.0, PI / 4.0, 5.0 * PI / 12.0];

pub fn builtin_strategy(name: &str) -> Result<QuantumStrategy> {
    match name {
        "game1" => real_plane_strategy(&GAME1_ALICE_ANGLES, &GAME1_BOB_ANGLES),
        "game2" => {
            let alice = GAME2_ALICE_SHIFTS.iter().map(|&s| fourier_basis(3, s, 1.0)).collect::<Result<_>>()?;
            let bob = GAME2_BOB_SHIFTS.iter().map(|&s| fourier_basis(3, s, -1.0)).collect::<Result<_>>()?;
            QuantumStrategy::new(StateVector::max_entangled(3)?, alice, bob)
        }
        "game3" => real_plane_strategy(&GAME3_ALICE_ANGLES, &GAME3_BOB_ANGLES),
        other => Err(Error::NotFound(format!(
            "unknown builtin strategy '{other}' (expected one of {})",
            BUILTIN_STRATEGIES.join(", ")
        ))),
    }
}

pub fn real_plane_strategy(alice: &[f64], bob: &[f64]) -> Result<QuantumStrategy> {
    QuantumStrategy::new(
        StateVector::max_entangled(2)?,
        alice.iter().map(|&t| ProjectiveMeasurement::real_plane(t)).collect(),
        bob.iter().map(|&t| ProjectiveMeasurement::real_plane(t)).collect(),
    )
}

/// Columns `exp(sign * 2 pi i j (k + shift) / d) / sqrt d`.
pub fn fourier_basis(d: usize, shift: f64, sign: f64) -> Result<ProjectiveMeasurement> {
    let norm = 1.0 / (d as f64).sqrt();
    let basis = (0..d)
        .map(|k| {
            (0..d)
                .map(|j| C64::from_polar(norm, sign * 2.0 * PI * j as f64 * (k as f64 + shift) / d as f64))
                .collect()
        })
        .collect();
    ProjectiveMeasurement::new(basis)
}
