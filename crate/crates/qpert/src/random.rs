//! Random system generators for property tests and CLI diagnostics.
//!
//! Everything is driven by a caller-supplied RNG so runs are reproducible
//! from a seed.

use rand::Rng;
use rand_distr::StandardNormal;

use num_complex::Complex64;

use crate::adiabatic::SpecialClassParams;
use crate::linalg::{ComplexMatrix, Tolerances};
use crate::qsys::PhysicalRealization;

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn gaussian_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data: Vec<Complex64> = (0..rows * cols)
        .map(|_| {
            Complex64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        })
        .collect();
    ComplexMatrix::from_row_slice(rows, cols, &data).expect("gaussian entries are finite")
}

/// Haar-ish random unitary: QR of a complex Gaussian matrix with the phases
/// of the R diagonal absorbed into Q.
pub fn unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = gaussian_matrix(rng, n, n);
    let qr = a.inner().clone().qr();
    let q = qr.q();
    let r = qr.r();
    let phases = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    &ComplexMatrix::from_inner(q) * &phases
}

/// Random Hermitian matrix (Gaussian symmetrized).
pub fn hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    gaussian_matrix(rng, n, n).hermitian_part()
}

/// Random Hermitian positive-definite matrix Θ = AA† + δI.
pub fn positive_definite<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = gaussian_matrix(rng, n, n);
    &(&a * &a.dagger()) + &ComplexMatrix::identity(n).scale_real(0.1)
}

/// Random valid physical parameters (Θ = AA† + δI, unitary S, Hermitian M,
/// Gaussian Λ).
pub fn physical_realization<R: Rng>(
    rng: &mut R,
    modes: usize,
    inputs: usize,
    tol: &Tolerances,
) -> PhysicalRealization {
    PhysicalRealization::new(
        positive_definite(rng, modes),
        unitary(rng, inputs),
        gaussian_matrix(rng, inputs, modes),
        hermitian(rng, modes),
        tol,
    )
    .expect("generated parameters satisfy the invariants")
}

/// Random valid special-class parameters with a generic (nonzero) fast
/// Hamiltonian block; resamples until the fast coupling operator
/// ½Λ₂†Λ₂ + iM₂₂ is comfortably nonsingular.
pub fn special_class_params<R: Rng>(
    rng: &mut R,
    n1: usize,
    n2: usize,
    inputs: usize,
) -> SpecialClassParams {
    loop {
        let params = SpecialClassParams::new(
            gaussian_matrix(rng, inputs, n1),
            gaussian_matrix(rng, inputs, n2),
            hermitian(rng, n1),
            gaussian_matrix(rng, n1, n2),
            hermitian(rng, n2),
            unitary(rng, inputs),
            &Tolerances::default(),
        )
        .expect("generated parameters satisfy the invariants");
        let a = params.fast_operator();
        if a.smallest_singular_value() > 1e-3 * (1.0 + a.norm()) {
            return params;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4 {
            let u = unitary(&mut rng, n);
            let defect = (&(&u.dagger() * &u) - &ComplexMatrix::identity(n)).norm();
            assert!(defect < 1e-12, "n = {n}: defect {defect:.2e}");
        }
    }

    #[test]
    fn generators_are_seed_reproducible() {
        let a = gaussian_matrix(&mut ChaCha8Rng::seed_from_u64(9), 3, 2);
        let b = gaussian_matrix(&mut ChaCha8Rng::seed_from_u64(9), 3, 2);
        assert_eq!(a.max_abs_diff(&b), 0.0);
    }
}
