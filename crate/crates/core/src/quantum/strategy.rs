use super::linalg::{inner, norm, ComplexMatrix, C64, ONE, ZERO};
use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::game::{Behavior, GameSpec};

/// Tolerance on unit norms at construction.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance on pairwise overlaps of basis vectors.
pub const ORTHO_TOL: f64 = 1e-10;

/// Pure bipartite state on `C^dA ⊗ C^dB`, amplitude index `a * dB + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    d_a: usize,
    d_b: usize,
    amp: Vec<C64>,
}

impl StateVector {
    pub fn new(d_a: usize, d_b: usize, amp: Vec<C64>) -> Result<Self> {
        if d_a == 0 || d_b == 0 || amp.len() != d_a * d_b {
            return Err(Error::Dimension(format!(
                "state on {d_a}x{d_b} needs {} amplitudes, got {}",
                d_a * d_b,
                amp.len()
            )));
        }
        if amp.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation("state has non-finite amplitudes".into()));
        }
        let n = norm(&amp);
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::Validation(format!("state norm is {n}, expected 1")));
        }
        Ok(StateVector { d_a, d_b, amp })
    }

    /// Rescales `amp` to unit norm before validating.
    pub fn normalized(d_a: usize, d_b: usize, mut amp: Vec<C64>) -> Result<Self> {
        let n = norm(&amp);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Validation("cannot normalize a zero or non-finite state".into()));
        }
        amp.iter_mut().for_each(|z| *z /= n);
        Self::new(d_a, d_b, amp)
    }

    /// `(1/sqrt d) sum_k |k k>`.
    pub fn max_entangled(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Validation(format!("maximally entangled state needs d >= 2, got {d}")));
        }
        let w = C64::new(1.0 / (d as f64).sqrt(), 0.0);
        let amp = (0..d * d).map(|i| if i / d == i % d { w } else { ZERO }).collect();
        Ok(StateVector { d_a: d, d_b: d, amp })
    }

    /// `|i>|j>`.
    pub fn product_basis(d_a: usize, d_b: usize, i: usize, j: usize) -> Result<Self> {
        let mut amp = vec![ZERO; d_a * d_b];
        *amp.get_mut(i * d_b + j).ok_or_else(|| Error::Dimension("basis index out of range".into()))? = ONE;
        Self::new(d_a, d_b, amp)
    }

    pub fn dim_a(&self) -> usize {
        self.d_a
    }

    pub fn dim_b(&self) -> usize {
        self.d_b
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amp
    }

    /// `(U ⊗ V)|phi>`.
    pub fn apply_local(&self, u: &ComplexMatrix, v: &ComplexMatrix) -> Result<Self> {
        Self::normalized(self.d_a, self.d_b, u.kron(v).mul_vec(&self.amp))
    }

    /// Coefficient matrix `Phi[a][b]`.
    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.d_a, self.d_b, |a, b| self.amp[a * self.d_b + b])
    }
}

/// Rank-1 projective measurement given by an orthonormal basis.
///
/// Basis vector `k` reports outcome `min(k, n_outcomes - 1)`, so a basis
/// larger than the outcome alphabet lumps its trailing vectors into the last
/// outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    basis: Vec<Vec<C64>>,
}

impl ProjectiveMeasurement {
    pub fn new(basis: Vec<Vec<C64>>) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 || basis.iter().any(|v| v.len() != dim) {
            return Err(Error::Dimension("measurement basis must be a square set of vectors".into()));
        }
        for (k, v) in basis.iter().enumerate() {
            if (norm(v) - 1.0).abs() > NORM_TOL {
                return Err(Error::Validation(format!("basis vector {k} has norm {}", norm(v))));
            }
            for (l, w) in basis.iter().enumerate().skip(k + 1) {
                let o = inner(v, w).norm();
                if o > ORTHO_TOL {
                    return Err(Error::Validation(format!("basis vectors {k} and {l} overlap by {o}")));
                }
            }
        }
        Ok(ProjectiveMeasurement { basis })
    }

    pub fn computational(dim: usize) -> Self {
        let basis = (0..dim).map(|k| (0..dim).map(|i| if i == k { ONE } else { ZERO }).collect()).collect();
        ProjectiveMeasurement { basis }
    }

    /// Real qubit basis `{(cos t, sin t), (-sin t, cos t)}`.
    pub fn real_plane(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        ProjectiveMeasurement {
            basis: vec![vec![C64::new(c, 0.0), C64::new(s, 0.0)], vec![C64::new(-s, 0.0), C64::new(c, 0.0)]],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    pub fn vector(&self, k: usize) -> &[C64] {
        &self.basis[k]
    }

    /// `U|v_k>` for every basis vector.
    pub fn transformed(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(self.basis.iter().map(|v| u.mul_vec(v)).collect())
    }

    /// Projector onto the span of the basis vectors reporting `outcome`.
    pub fn projector(&self, outcome: usize, n_outcomes: usize) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.dim(), self.dim());
        for (k, v) in self.basis.iter().enumerate() {
            if outcome_of(k, n_outcomes) == outcome {
                p.add_outer(1.0, v);
            }
        }
        p
    }
}

#[inline]
pub fn outcome_of(k: usize, n_outcomes: usize) -> usize {
    k.min(n_outcomes - 1)
}

/// Shared state plus one measurement per input for each player.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumStrategy {
    pub state: StateVector,
    pub alice: Vec<ProjectiveMeasurement>,
    pub bob: Vec<ProjectiveMeasurement>,
}

impl QuantumStrategy {
    pub fn new(state: StateVector, alice: Vec<ProjectiveMeasurement>, bob: Vec<ProjectiveMeasurement>) -> Result<Self> {
        if alice.is_empty() || bob.is_empty() {
            return Err(Error::Dimension("each player needs at least one measurement".into()));
        }
        if let Some(m) = alice.iter().find(|m| m.dim() != state.dim_a()) {
            return Err(Error::Dimension(format!("Alice measurement of dim {} on a dA={} state", m.dim(), state.dim_a())));
        }
        if let Some(m) = bob.iter().find(|m| m.dim() != state.dim_b()) {
            return Err(Error::Dimension(format!("Bob measurement of dim {} on a dB={} state", m.dim(), state.dim_b())));
        }
        Ok(QuantumStrategy { state, alice, bob })
    }

    /// Checks input counts and that each local dimension can host the outcomes.
    pub fn check_compatible(&self, dims: &Dims) -> Result<()> {
        if self.alice.len() != dims.nx || self.bob.len() != dims.ny {
            return Err(Error::Dimension(format!(
                "strategy has {}+{} measurements, scenario {dims} needs {}+{}",
                self.alice.len(),
                self.bob.len(),
                dims.nx,
                dims.ny
            )));
        }
        if self.state.dim_a() < dims.na || self.state.dim_b() < dims.nb {
            return Err(Error::Dimension(format!(
                "local dimensions {}x{} cannot host {}x{} outcomes",
                self.state.dim_a(),
                self.state.dim_b(),
                dims.na,
                dims.nb
            )));
        }
        Ok(())
    }

    /// Born rule: `P(k, l | i, j) = |<alpha^i_k ⊗ beta^j_l | phi>|^2`.
    pub fn behavior(&self, dims: &Dims) -> Result<Behavior> {
        self.check_compatible(dims)?;
        let (da, db) = (self.state.dim_a(), self.state.dim_b());
        let phi = self.state.amplitudes();
        let mut probs = vec![0.0; dims.len()];
        for (x, ma) in self.alice.iter().enumerate() {
            // w_k[b] = sum_a conj(alpha_k[a]) phi[a, b]
            let partial: Vec<Vec<C64>> = ma
                .basis()
                .iter()
                .map(|alpha| {
                    (0..db)
                        .map(|b| (0..da).map(|a| alpha[a].conj() * phi[a * db + b]).sum())
                        .collect()
                })
                .collect();
            for (y, mb) in self.bob.iter().enumerate() {
                for (k, w) in partial.iter().enumerate() {
                    let a = outcome_of(k, dims.na);
                    for (l, beta) in mb.basis().iter().enumerate() {
                        let b = outcome_of(l, dims.nb);
                        probs[dims.index(x, y, a, b)] += inner(beta, w).norm_sqr();
                    }
                }
            }
        }
        Behavior::new(*dims, probs)
    }
}

impl GameSpec {
    pub fn behavior_from_quantum(&self, strategy: &QuantumStrategy) -> Result<Behavior> {
        strategy.behavior(self.dims())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_entangled_states() {
        let s2 = StateVector::max_entangled(2).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let expect = [h, 0.0, 0.0, h];
        for (z, e) in s2.amplitudes().iter().zip(expect) {
            assert!((z.re - e).abs() < 1e-15 && z.im == 0.0);
        }
        let s3 = StateVector::max_entangled(3).unwrap();
        let w = 1.0 / 3f64.sqrt();
        for (i, z) in s3.amplitudes().iter().enumerate() {
            let e = if i == 0 || i == 4 || i == 8 { w } else { 0.0 };
            assert!((z.re - e).abs() < 1e-15);
        }
        for d in 2..=5 {
            assert!((norm(StateVector::max_entangled(d).unwrap().amplitudes()) - 1.0).abs() < 1e-12);
        }
        assert!(matches!(StateVector::max_entangled(1), Err(Error::Validation(_))));
    }

    #[test]
    fn product_state_computational_basis() {
        let d = Dims::new(2, 2, 2, 2).unwrap();
        let s = QuantumStrategy::new(
            StateVector::product_basis(2, 2, 0, 0).unwrap(),
            vec![ProjectiveMeasurement::computational(2); 2],
            vec![ProjectiveMeasurement::computational(2); 2],
        )
        .unwrap();
        let beh = s.behavior(&d).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(beh.get(x, y, 0, 0), 1.0);
            }
        }
    }

    #[test]
    fn real_plane_correlations() {
        // P(0,0) = cos^2(ta - tb) / 2 on the maximally entangled qubit pair.
        let d = Dims::new(1, 1, 2, 2).unwrap();
        let s = QuantumStrategy::new(
            StateVector::max_entangled(2).unwrap(),
            vec![ProjectiveMeasurement::real_plane(0.3)],
            vec![ProjectiveMeasurement::real_plane(-0.2)],
        )
        .unwrap();
        let beh = s.behavior(&d).unwrap();
        assert!((beh.get(0, 0, 0, 0) - 0.5f64.cos().powi(2) / 2.0).abs() < 1e-15);
        assert!((beh.get(0, 0, 0, 1) - 0.5f64.sin().powi(2) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_measurements() {
        let bad = vec![vec![ONE, ZERO], vec![C64::new(0.6, 0.0), C64::new(0.8, 0.0)]];
        assert!(matches!(ProjectiveMeasurement::new(bad), Err(Error::Validation(_))));
        let short = vec![vec![C64::new(0.5, 0.0), ZERO], vec![ZERO, ONE]];
        assert!(matches!(ProjectiveMeasurement::new(short), Err(Error::Validation(_))));
        let s = StateVector::max_entangled(2).unwrap();
        assert!(matches!(
            QuantumStrategy::new(s, vec![ProjectiveMeasurement::computational(3)], vec![ProjectiveMeasurement::computational(2)]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn incompatible_scenario() {
        let s = QuantumStrategy::new(
            StateVector::max_entangled(2).unwrap(),
            vec![ProjectiveMeasurement::computational(2); 2],
            vec![ProjectiveMeasurement::computational(2); 2],
        )
        .unwrap();
        assert!(matches!(s.behavior(&Dims::new(2, 2, 3, 3).unwrap()), Err(Error::Dimension(_))));
        assert!(matches!(s.behavior(&Dims::new(3, 2, 2, 2).unwrap()), Err(Error::Dimension(_))));
    }

    #[test]
    fn coarse_graining_lumps_trailing_vectors() {
        let d = Dims::new(1, 1, 2, 2).unwrap();
        let s = QuantumStrategy::new(
            StateVector::max_entangled(3).unwrap(),
            vec![ProjectiveMeasurement::computational(3)],
            vec![ProjectiveMeasurement::computational(3)],
        )
        .unwrap();
        let beh = s.behavior(&d).unwrap();
        assert!((beh.get(0, 0, 0, 0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((beh.get(0, 0, 1, 1) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn state_validation() {
        assert!(matches!(StateVector::new(2, 2, vec![ONE; 4]), Err(Error::Validation(_))));
        assert!(matches!(StateVector::new(2, 2, vec![ONE; 3]), Err(Error::Dimension(_))));
        assert!(StateVector::normalized(2, 2, vec![ONE; 4]).is_ok());
    }
}
