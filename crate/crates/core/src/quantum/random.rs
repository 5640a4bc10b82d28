//! Random states, bases and Hermitian matrices from complex Gaussians.

use super::linalg::{normalize, orthonormalize, ComplexMatrix, C64};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Unit vector distributed uniformly on the complex sphere.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        if normalize(&mut v) > 1e-6 {
            return v;
        }
    }
}

/// Orthonormal basis from Gram-Schmidt on Gaussian columns (Haar measure).
pub fn random_basis<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vec<C64>> {
    loop {
        let mut cols: Vec<Vec<C64>> = (0..n).map(|_| (0..n).map(|_| gaussian(rng)).collect()).collect();
        if orthonormalize(&mut cols) {
            return cols;
        }
    }
}

/// Random real-valued orthonormal basis (rotation or reflection of the axes).
pub fn random_real_basis<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vec<C64>> {
    loop {
        let mut cols: Vec<Vec<C64>> = (0..n)
            .map(|_| (0..n).map(|_| C64::new(rng.sample(StandardNormal), 0.0)).collect())
            .collect();
        if orthonormalize(&mut cols) {
            return cols;
        }
    }
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = gaussian(rng);
        }
    }
    g.add(&g.adjoint()).scale(C64::new(0.5, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bases_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            assert!(ComplexMatrix::from_columns(&random_basis(n, &mut rng)).is_unitary(1e-12));
            assert!(ComplexMatrix::from_columns(&random_real_basis(n, &mut rng)).is_unitary(1e-12));
        }
    }
}
