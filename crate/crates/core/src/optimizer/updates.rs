//! Single see-saw steps. Each returns a candidate that never lowers the
//! objective relative to the strategy it was given.

use crate::bell::BellFunctional;
use crate::error::{Error, Result};
use crate::quantum::linalg::{inner, kron_vec, orthonormalize, ComplexMatrix, C64};
use crate::quantum::{hermitian_principal_eigenvector, outcome_of, ProjectiveMeasurement, QuantumStrategy, StateVector};
use crate::Player;

const SWEEP_LIMIT: usize = 200;
const SWEEP_TOL: f64 = 1e-14;

/// `evaluate(f, born(qs))`, failing on non-finite values.
pub fn objective(f: &BellFunctional, qs: &QuantumStrategy) -> Result<f64> {
    let v = f.evaluate(&qs.behavior(f.dims())?)?;
    if !v.is_finite() {
        return Err(Error::Integrity("objective is not finite".into()));
    }
    Ok(v)
}

/// Effective operators `M_o` for one input of `player`: the objective
/// restricted to that input is `sum_k <v_k| M_{outcome(k)} |v_k>`.
fn effective_operators(f: &BellFunctional, qs: &QuantumStrategy, player: Player, input: usize) -> Vec<ComplexMatrix> {
    let d = f.dims();
    let coeff = f.real_coefficients();
    let phi = qs.state.coefficient_matrix();
    let (da, db) = (qs.state.dim_a(), qs.state.dim_b());
    match player {
        Player::Alice => {
            let mut ops = vec![ComplexMatrix::zeros(da, da); d.na];
            for (y, mb) in qs.bob.iter().enumerate() {
                for (l, beta) in mb.basis().iter().enumerate() {
                    let b = outcome_of(l, d.nb);
                    // u = Phi conj(beta)
                    let u: Vec<C64> = (0..da).map(|a| (0..db).map(|j| phi[(a, j)] * beta[j].conj()).sum()).collect();
                    for (o, op) in ops.iter_mut().enumerate() {
                        let c = coeff[d.index(input, y, o, b)];
                        if c != 0.0 {
                            op.add_outer(c, &u);
                        }
                    }
                }
            }
            ops
        }
        Player::Bob => {
            let mut ops = vec![ComplexMatrix::zeros(db, db); d.nb];
            for (x, ma) in qs.alice.iter().enumerate() {
                for (k, alpha) in ma.basis().iter().enumerate() {
                    let a = outcome_of(k, d.na);
                    // u = Phi^T conj(alpha)
                    let u: Vec<C64> = (0..db).map(|b| (0..da).map(|i| phi[(i, b)] * alpha[i].conj()).sum()).collect();
                    for (o, op) in ops.iter_mut().enumerate() {
                        let c = coeff[d.index(x, input, a, o)];
                        if c != 0.0 {
                            op.add_outer(c, &u);
                        }
                    }
                }
            }
            ops
        }
    }
}

fn local_value(ops: &[ComplexMatrix], basis: &[Vec<C64>]) -> f64 {
    basis
        .iter()
        .enumerate()
        .map(|(k, v)| ops[outcome_of(k, ops.len())].expectation(v))
        .sum()
}

/// Best basis for 2 outcomes in dimension 2: outcome 0 projects onto the
/// top eigenvector of `M_0 - M_1`.
fn binary_optimum(ops: &[ComplexMatrix]) -> Result<Vec<Vec<C64>>> {
    let diff = ops[0].add(&ops[1].scale(C64::new(-1.0, 0.0)));
    let (_, v) = hermitian_principal_eigenvector(&diff)?;
    let w = vec![-v[1].conj(), v[0].conj()];
    Ok(vec![v, w])
}

/// Pairwise ascent: each `(p, q)` rotation is solved exactly over angle and phase.
fn givens_ascent(ops: &[ComplexMatrix], mut basis: Vec<Vec<C64>>) -> Vec<Vec<C64>> {
    let n_out = ops.len();
    let dim = basis.len();
    for _ in 0..SWEEP_LIMIT {
        let mut gained = 0.0;
        for p in 0..dim {
            for q in p + 1..dim {
                let (op, oq) = (&ops[outcome_of(p, n_out)], &ops[outcome_of(q, n_out)]);
                if std::ptr::eq(op, oq) {
                    continue;
                }
                let (vp, vq) = (&basis[p], &basis[q]);
                let mp_vq = op.mul_vec(vq);
                let mq_vq = oq.mul_vec(vq);
                let mp_pp = op.expectation(vp);
                let mq_qq = inner(vq, &mq_vq).re;
                let mp_qq = inner(vq, &mp_vq).re;
                let mq_pp = oq.expectation(vp);
                let a = 0.5 * (mp_pp + mq_qq - mp_qq - mq_pp);
                let delta = inner(vp, &mp_vq) - inner(vp, &mq_vq);
                let r = delta.norm();
                let gain = (a * a + r * r).sqrt() - a;
                if gain <= SWEEP_TOL || r == 0.0 {
                    continue;
                }
                let two_theta = r.atan2(a);
                let (s, c) = (0.5 * two_theta).sin_cos();
                let e = (delta / r).conj(); // e^{i psi}, psi = -arg(delta)
                let new_p: Vec<C64> = vp.iter().zip(vq).map(|(x, y)| x * c + e * s * y).collect();
                let new_q: Vec<C64> = vp.iter().zip(vq).map(|(x, y)| -e.conj() * s * x + y * c).collect();
                basis[p] = new_p;
                basis[q] = new_q;
                gained += gain;
            }
        }
        if gained <= SWEEP_TOL {
            break;
        }
    }
    orthonormalize(&mut basis);
    basis
}

/// Improves one measurement of `player` with everything else held fixed.
pub fn measurement_update(
    f: &BellFunctional,
    qs: &QuantumStrategy,
    player: Player,
    input: usize,
) -> Result<ProjectiveMeasurement> {
    let (current, n_out) = match player {
        Player::Alice => (qs.alice.get(input), f.dims().na),
        Player::Bob => (qs.bob.get(input), f.dims().nb),
    };
    let current = current.ok_or_else(|| Error::Dimension(format!("{player:?} has no input {}", input + 1)))?;
    qs.check_compatible(f.dims())?;
    let ops = effective_operators(f, qs, player, input);
    let before = local_value(&ops, current.basis());
    let candidate = if current.dim() == 2 && n_out == 2 {
        binary_optimum(&ops)?
    } else {
        givens_ascent(&ops, current.basis().to_vec())
    };
    if local_value(&ops, &candidate) > before {
        if let Ok(m) = ProjectiveMeasurement::new(candidate) {
            return Ok(m);
        }
    }
    Ok(current.clone())
}

/// Game operator `G = sum c(x,y,a,b) Pi^x_a ⊗ Pi^y_b` for fixed measurements.
pub fn game_operator(f: &BellFunctional, qs: &QuantumStrategy) -> ComplexMatrix {
    let d = f.dims();
    let coeff = f.real_coefficients();
    let n = qs.state.dim_a() * qs.state.dim_b();
    let mut g = ComplexMatrix::zeros(n, n);
    for (x, ma) in qs.alice.iter().enumerate() {
        for (y, mb) in qs.bob.iter().enumerate() {
            for (k, alpha) in ma.basis().iter().enumerate() {
                for (l, beta) in mb.basis().iter().enumerate() {
                    let c = coeff[d.index(x, y, outcome_of(k, d.na), outcome_of(l, d.nb))];
                    if c != 0.0 {
                        g.add_outer(c, &kron_vec(alpha, beta));
                    }
                }
            }
        }
    }
    g
}

/// Principal eigenvector of the game operator, kept only if it does not
/// lower the objective.
pub fn state_update(f: &BellFunctional, qs: &QuantumStrategy) -> Result<StateVector> {
    qs.check_compatible(f.dims())?;
    let g = game_operator(f, qs);
    let (_, v) = hermitian_principal_eigenvector(&g).map_err(|e| match e {
        Error::Integrity(m) => Error::Integrity(m),
        other => Error::Integrity(format!("state update eigensolver failed: {other}")),
    })?;
    let before = g.expectation(qs.state.amplitudes());
    let after = g.expectation(&v);
    if after > before {
        if let Ok(s) = StateVector::normalized(qs.state.dim_a(), qs.state.dim_b(), v) {
            return Ok(s);
        }
    }
    Ok(qs.state.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameSpec;
    use crate::quantum::random::{random_basis, random_real_basis, random_unit_vector};
    use crate::quantum::{builtin_strategy, real_plane_strategy};
    use crate::rational::int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_strategy(rng: &mut ChaCha8Rng, f: &BellFunctional, dim: usize, real: bool) -> QuantumStrategy {
        let d = f.dims();
        let basis = |rng: &mut ChaCha8Rng| {
            if real {
                random_real_basis(dim, rng)
            } else {
                random_basis(dim, rng)
            }
        };
        let amp = if real {
            random_real_basis(dim * dim, rng).swap_remove(0)
        } else {
            random_unit_vector(dim * dim, rng)
        };
        QuantumStrategy::new(
            StateVector::normalized(dim, dim, amp).unwrap(),
            (0..d.nx).map(|_| ProjectiveMeasurement::new(basis(rng)).unwrap()).collect(),
            (0..d.ny).map(|_| ProjectiveMeasurement::new(basis(rng)).unwrap()).collect(),
        )
        .unwrap()
    }

    fn with_alice(qs: &QuantumStrategy, x: usize, m: ProjectiveMeasurement) -> QuantumStrategy {
        let mut out = qs.clone();
        out.alice[x] = m;
        out
    }

    fn functionals() -> Vec<(BellFunctional, usize)> {
        vec![
            (BellFunctional::from_game(&GameSpec::builtin("game1").unwrap(), int(1), int(1)), 2),
            (BellFunctional::from_game(&GameSpec::builtin("game2").unwrap(), int(1), int(0)), 3),
            (BellFunctional::from_game(&GameSpec::builtin("game3").unwrap(), int(0), int(1)), 2),
            (BellFunctional::builtin("chsh").unwrap(), 3),
        ]
    }

    #[test]
    fn measurement_update_never_decreases() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for case in 0..100 {
            let fs = functionals();
            let (f, dim) = &fs[case % fs.len()];
            let qs = random_strategy(&mut rng, f, *dim, false);
            let before = objective(f, &qs).unwrap();
            let x = rng.random_range(0..f.dims().nx);
            let m = measurement_update(f, &qs, Player::Alice, x).unwrap();
            let after = objective(f, &with_alice(&qs, x, m)).unwrap();
            assert!(after >= before - 1e-12, "case {case}: {before} -> {after}");
            let y = rng.random_range(0..f.dims().ny);
            let m = measurement_update(f, &qs, Player::Bob, y).unwrap();
            let mut moved = qs.clone();
            moved.bob[y] = m;
            assert!(objective(f, &moved).unwrap() >= before - 1e-12);
        }
    }

    #[test]
    fn binary_update_matches_angle_scan() {
        // Real qubit instances: scan Alice's planar basis angle in 0.001 steps.
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for name in ["game1", "game3"] {
            let f = BellFunctional::from_game(&GameSpec::builtin(name).unwrap(), int(1), int(1));
            for _ in 0..5 {
                let qs = random_strategy(&mut rng, &f, 2, true);
                let m = measurement_update(&f, &qs, Player::Alice, 0).unwrap();
                let updated = objective(&f, &with_alice(&qs, 0, m)).unwrap();
                let steps = (PI / 0.001).ceil() as usize;
                let scanned = (0..=steps)
                    .map(|i| {
                        let t = i as f64 * 0.001;
                        objective(&f, &with_alice(&qs, 0, ProjectiveMeasurement::real_plane(t))).unwrap()
                    })
                    .fold(f64::MIN, f64::max);
                assert!(updated >= scanned - 1e-6, "{name}: update {updated} < scan {scanned}");
                assert!(updated <= scanned + 1e-6, "{name}: update {updated} > scan {scanned}");
            }
        }
    }

    #[test]
    fn optimal_basis_is_fixed_point() {
        let f = BellFunctional::from_game(&GameSpec::builtin("game1").unwrap(), int(1), int(1));
        let qs = builtin_strategy("game1").unwrap();
        let before = objective(&f, &qs).unwrap();
        for x in 0..2 {
            let m = measurement_update(&f, &qs, Player::Alice, x).unwrap();
            let after = objective(&f, &with_alice(&qs, x, m)).unwrap();
            assert!((after - before).abs() < 1e-12);
        }
    }

    #[test]
    fn state_update_monotone_and_chsh_fixture() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for case in 0..100 {
            let fs = functionals();
            let (f, dim) = &fs[case % fs.len()];
            let qs = random_strategy(&mut rng, f, *dim, false);
            let before = objective(f, &qs).unwrap();
            let mut moved = qs.clone();
            moved.state = state_update(f, &qs).unwrap();
            assert!(objective(f, &moved).unwrap() >= before - 1e-12);
        }

        // Optimal CHSH angles for (|00>+|11>)/sqrt 2, starting from a product state.
        let chsh = BellFunctional::builtin("chsh").unwrap();
        let mut qs = real_plane_strategy(&[0.0, PI / 4.0], &[PI / 8.0, -PI / 8.0]).unwrap();
        assert!((objective(&chsh, &qs).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        qs.state = StateVector::product_basis(2, 2, 0, 0).unwrap();
        qs.state = state_update(&chsh, &qs).unwrap();
        assert!((objective(&chsh, &qs).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-9);
        let phi_plus = StateVector::max_entangled(2).unwrap();
        assert!((inner(phi_plus.amplitudes(), qs.state.amplitudes()).norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_operator_gives_zero() {
        let d = crate::dims::Dims::new(2, 2, 2, 2).unwrap();
        let f = BellFunctional::new("zero", d, vec![int(0); d.len()], int(0)).unwrap();
        let qs = builtin_strategy("game1").unwrap();
        let mut moved = qs.clone();
        moved.state = state_update(&f, &qs).unwrap();
        assert_eq!(objective(&f, &moved).unwrap(), 0.0);
    }
}
