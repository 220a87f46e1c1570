//! The special perturbation class and closed-form adiabatic elimination.
//!
//! The class fixes Θ = I and scales one block of the physical parameters,
//!
//! ```text
//! Λ = [Λ₁  (1/√ε)Λ₂],    M = [[M₁₁,        (1/√ε)M₁₂],
//!                              [(1/√ε)M₁₂†, (1/ε)M₂₂ ]],
//! ```
//!
//! which is physically realizable with commutation matrix I for every ε > 0.
//! Normalizing the fast modes (a₂ → a₂/√ε) puts the family into the standard
//! singularly perturbed block form handled by [`crate::singular`]; the
//! normalization rescales the commutation matrix to diag(I, I/ε).
//!
//! When the fast coupling operator A = ½Λ₂†Λ₂ + iM₂₂ is nonsingular the fast
//! modes can be eliminated in closed form ([`eliminate`]): with B = A†,
//!
//! ```text
//! Λ̃ = Λ₁ − Λ₂A⁻¹(½Λ₂†Λ₁ + iM₁₂†)
//! S̃ = S − Λ₂A⁻¹Λ₂†S
//! M̃ = M₁₁ + ¼Λ₁†Λ₂·A⁻¹M₂₂B⁻¹·Λ₂†Λ₁ − M₁₂·A⁻¹M₂₂B⁻¹·M₁₂†
//!        − ¼M₁₂·A⁻¹(Λ₂†Λ₂)B⁻¹·Λ₂†Λ₁ − ¼Λ₁†Λ₂·A⁻¹(Λ₂†Λ₂)B⁻¹·M₁₂†
//! ```
//!
//! S̃ is unitary and M̃ Hermitian, so the reduced system built from
//! (Θ = I, S̃, Λ̃, M̃) is physically realizable by construction, and it equals
//! the slow subsystem produced by [`crate::singular::reduce_slow`]. The two
//! routes are implemented independently and cross-validate each other.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerances};
use crate::qsys::{
    find_commutation_matrix, frequency_response, realize_from_physical, FrequencyGrid,
    PhysicalRealization, QuantumLinearSystem,
};
use crate::singular::{assemble_full, reduce_slow, PartitionedSystem};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Hermitian-defect bound on the raw reduced Hamiltonian: above this the
/// elimination fails instead of silently averaging.
const ELIMINATION_HERMITIAN_TOL: f64 = 1e-8;

/// Parameters (Λ₁, Λ₂, M₁₁, M₁₂, M₂₂, S) of the special perturbation family.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialClassParams {
    lambda1: ComplexMatrix,
    lambda2: ComplexMatrix,
    m11: ComplexMatrix,
    m12: ComplexMatrix,
    m22: ComplexMatrix,
    s: ComplexMatrix,
}

impl SpecialClassParams {
    /// Validated constructor: M₁₁ and M₂₂ Hermitian within
    /// `residual_tol · (1 + ‖·‖)`, S unitary within `residual_tol · m`,
    /// consistent shapes.
    pub fn new(
        lambda1: ComplexMatrix,
        lambda2: ComplexMatrix,
        m11: ComplexMatrix,
        m12: ComplexMatrix,
        m22: ComplexMatrix,
        s: ComplexMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        if !m11.is_square() || !m22.is_square() || !s.is_square() {
            return Err(Error::Dimension("M11, M22 and S must be square".into()));
        }
        let (n1, n2, m) = (m11.rows(), m22.rows(), s.rows());
        for (name, mat, er, ec) in [
            ("Lambda1", &lambda1, m, n1),
            ("Lambda2", &lambda2, m, n2),
            ("M12", &m12, n1, n2),
        ] {
            if mat.rows() != er || mat.cols() != ec {
                return Err(Error::Dimension(format!(
                    "{name} must be {er}×{ec}, got {}×{}",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        for (name, mat) in [("M11", &m11), ("M22", &m22)] {
            let defect = (mat - &mat.dagger()).norm();
            if defect > tol.residual_tol * (1.0 + mat.norm()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be Hermitian (defect {defect:.3e})"
                )));
            }
        }
        let s_defect = (&(&s.dagger() * &s) - &ComplexMatrix::identity(m)).norm();
        if s_defect > tol.residual_tol * m as f64 {
            return Err(Error::InvalidParameter(format!(
                "S must be unitary (defect {s_defect:.3e})"
            )));
        }
        Ok(Self {
            lambda1,
            lambda2,
            m11,
            m12,
            m22,
            s,
        })
    }

    pub fn lambda1(&self) -> &ComplexMatrix {
        &self.lambda1
    }
    pub fn lambda2(&self) -> &ComplexMatrix {
        &self.lambda2
    }
    pub fn m11(&self) -> &ComplexMatrix {
        &self.m11
    }
    pub fn m12(&self) -> &ComplexMatrix {
        &self.m12
    }
    pub fn m22(&self) -> &ComplexMatrix {
        &self.m22
    }
    pub fn scattering(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn n1(&self) -> usize {
        self.m11.rows()
    }
    pub fn n2(&self) -> usize {
        self.m22.rows()
    }
    pub fn inputs(&self) -> usize {
        self.s.rows()
    }

    /// The fast coupling operator A = ½Λ₂†Λ₂ + iM₂₂ whose invertibility the
    /// elimination requires.
    pub fn fast_operator(&self) -> ComplexMatrix {
        let l2l2 = &self.lambda2.dagger() * &self.lambda2;
        &l2l2.scale_real(0.5) + &self.m22.scale(I)
    }
}

/// Blocks of the normalized (a₂ → a₂/√ε) family:
///
/// ```text
/// F₁₁ = −(½Λ₁†Λ₁ + iM₁₁)   F₁₂ = −(½Λ₁†Λ₂ + iM₁₂)
/// F₂₁ = −(½Λ₂†Λ₁ + iM₁₂†)  F₂₂ = −(½Λ₂†Λ₂ + iM₂₂)
/// G₁ = −Λ₁†S   G₂ = −Λ₂†S   H₁ = Λ₁   H₂ = Λ₂   K = S
/// ```
pub fn build_special(params: &SpecialClassParams) -> PartitionedSystem {
    let l1d = params.lambda1.dagger();
    let l2d = params.lambda2.dagger();
    let f11 = -&(&(&l1d * &params.lambda1).scale_real(0.5) + &params.m11.scale(I));
    let f12 = -&(&(&l1d * &params.lambda2).scale_real(0.5) + &params.m12.scale(I));
    let f21 = -&(&(&l2d * &params.lambda1).scale_real(0.5) + &params.m12.dagger().scale(I));
    let f22 = -&params.fast_operator();
    let g1 = -&(&l1d * &params.s);
    let g2 = -&(&l2d * &params.s);
    PartitionedSystem::new(
        f11,
        f12,
        f21,
        f22,
        g1,
        g2,
        params.lambda1.clone(),
        params.lambda2.clone(),
        params.s.clone(),
    )
    .expect("block dimensions are consistent by construction")
}

/// The family member at a fixed ε in its original (un-normalized) variables,
/// with couplings scaled by 1/√ε and the fast Hamiltonian block by 1/ε.
/// This form carries commutation matrix I for every ε; it relates to
/// `assemble_full(build_special(params), ε)` by the fast-mode scaling
/// a₂ → a₂/√ε, under which the commutation matrix becomes diag(I, I/ε).
pub fn family_member(params: &SpecialClassParams, epsilon: f64) -> Result<QuantumLinearSystem> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be strictly positive and finite, got {epsilon}"
        )));
    }
    let rs = 1.0 / epsilon.sqrt();
    let p = build_special(params);
    let f = ComplexMatrix::block_2x2(
        p.f11(),
        &p.f12().scale_real(rs),
        &p.f21().scale_real(rs),
        &p.f22().scale_real(1.0 / epsilon),
    );
    let g = ComplexMatrix::vstack(&[p.g1(), &p.g2().scale_real(rs)]);
    let h = ComplexMatrix::hstack(&[p.h1(), &p.h2().scale_real(rs)]);
    QuantumLinearSystem::new(f, g, h, p.k().clone())
}

/// Closed-form elimination of the fast modes.
#[derive(Debug, Clone)]
pub struct EliminationResult {
    /// Reduced coupling matrix Λ̃.
    pub lambda_t: ComplexMatrix,
    /// Reduced scattering matrix S̃ (unitary).
    pub s_t: ComplexMatrix,
    /// Reduced Hamiltonian matrix M̃ (Hermitian).
    pub m_t: ComplexMatrix,
    /// The reduced system realized from (Θ = I, S̃, Λ̃, M̃).
    pub reduced: QuantumLinearSystem,
    /// Hermitian defect of the raw M̃ before symmetrization.
    pub m_asymmetry: f64,
}

/// Eliminate the fast modes of the special family. Fails when the fast
/// coupling operator ½Λ₂†Λ₂ + iM₂₂ is singular, or when the reduced
/// Hamiltonian comes out measurably non-Hermitian.
pub fn eliminate(params: &SpecialClassParams, tol: &Tolerances) -> Result<EliminationResult> {
    let a = params.fast_operator();
    let sv_min = a.smallest_singular_value();
    if sv_min <= tol.definiteness_tol * (1.0 + a.norm()) {
        return Err(Error::EliminationUndefined {
            smallest_singular_value: sv_min,
        });
    }
    let a_inv = a.try_inverse()?;
    let b_inv = a.dagger().try_inverse()?;

    let l1 = &params.lambda1;
    let l2 = &params.lambda2;
    let l1d_l2 = &l1.dagger() * l2;
    let l2d_l1 = &l2.dagger() * l1;
    let l2d_l2 = &l2.dagger() * l2;

    let lambda_t =
        l1 - &(&(l2 * &a_inv) * &(&l2d_l1.scale_real(0.5) + &params.m12.dagger().scale(I)));
    let s_t = &params.s - &(&(&(l2 * &a_inv) * &l2.dagger()) * &params.s);

    // middle resolvent sandwiches, shared by the Hamiltonian terms
    let core_m22 = &(&a_inv * &params.m22) * &b_inv;
    let core_l2l2 = &(&a_inv * &l2d_l2) * &b_inv;

    let term2 = (&(&l1d_l2 * &core_m22) * &l2d_l1).scale_real(0.25);
    let term3 = -&(&(&params.m12 * &core_m22) * &params.m12.dagger());
    let term4 = (&(&params.m12 * &core_l2l2) * &l2d_l1).scale_real(-0.25);
    let term5 = (&(&l1d_l2 * &core_l2l2) * &params.m12.dagger()).scale_real(-0.25);
    let m_raw = &(&(&params.m11 + &term2) + &term3) + &(&term4 + &term5);

    let m_asymmetry = (&m_raw - &m_raw.dagger()).norm();
    if m_asymmetry > ELIMINATION_HERMITIAN_TOL * (1.0 + m_raw.norm()) {
        return Err(Error::Numeric(format!(
            "eliminated Hamiltonian is not Hermitian (defect {m_asymmetry:.3e})"
        )));
    }
    let m_t = m_raw.hermitian_part();

    let physical = PhysicalRealization::new(
        ComplexMatrix::identity(params.n1()),
        s_t.clone(),
        lambda_t.clone(),
        m_t.clone(),
        tol,
    )?;
    let reduced = realize_from_physical(&physical);

    Ok(EliminationResult {
        lambda_t,
        s_t,
        m_t,
        reduced,
        m_asymmetry,
    })
}

/// Realizability of the family and agreement of the two reduction routes.
#[derive(Debug, Clone)]
pub struct ReductionGuaranteeReport {
    /// Per swept ε: is `assemble_full(build_special(params), ε)` realizable?
    pub premise: Vec<(f64, bool)>,
    /// Is the eliminated reduced system realizable?
    pub reduced_realizable: bool,
    /// max over the grid of ‖Φ_slow(iω) − Φ_eliminated(iω)‖.
    pub transfer_distance: f64,
    /// max spectral distance over the four matrices of the two reduced
    /// quadruples.
    pub quadruple_distance: f64,
}

/// Check the guaranteed-realizability statement on a concrete family: the
/// assembled members are realizable for the sampled ε, the eliminated system
/// is realizable, and the elimination agrees with the slow reduction both as
/// a quadruple and on the frequency grid.
pub fn verify_reduction_guarantee(
    params: &SpecialClassParams,
    epsilons: &[f64],
    grid: &FrequencyGrid,
    tol: &Tolerances,
) -> Result<ReductionGuaranteeReport> {
    let p = build_special(params);
    let mut premise = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let sys = assemble_full(&p, eps)?;
        let report = find_commutation_matrix(&sys, tol)?;
        premise.push((eps, report.realizable));
    }

    let elim = eliminate(params, tol)?;
    let reduced_realizable = find_commutation_matrix(&elim.reduced, tol)?.realizable;

    let slow = reduce_slow(&p, tol)?;
    let quadruple_distance = [
        (slow.f(), elim.reduced.f()),
        (slow.g(), elim.reduced.g()),
        (slow.h(), elim.reduced.h()),
        (slow.k(), elim.reduced.k()),
    ]
    .iter()
    .map(|(a, b)| (*a - *b).norm())
    .fold(0.0, f64::max);

    let phi_slow = frequency_response(&slow, grid, tol)?;
    let phi_elim = frequency_response(&elim.reduced, grid, tol)?;
    let transfer_distance = phi_slow
        .iter()
        .zip(phi_elim.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    Ok(ReductionGuaranteeReport {
        premise,
        reduced_realizable,
        transfer_distance,
        quadruple_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsys::{minimality_check, MinimalityVerdict};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    /// Cascade parameters. `internal_sign` is the sign convention of the
    /// internal coupling M12 = ±(i/2)(√K1 − √K2); both produce the same
    /// transfer functions, with Λ̃ = ∓(√K1 − √K2).
    pub(crate) fn cascade_params(k1: f64, k2: f64, internal_sign: f64) -> SpecialClassParams {
        let d = k1.sqrt() - k2.sqrt();
        SpecialClassParams::new(
            ComplexMatrix::real_scalar(k1.sqrt() + k2.sqrt()),
            ComplexMatrix::real_scalar(1.0),
            ComplexMatrix::real_scalar(0.0),
            ComplexMatrix::scalar(c(0.0, internal_sign * 0.5 * d)),
            ComplexMatrix::real_scalar(0.0),
            ComplexMatrix::real_scalar(1.0),
            &tol(),
        )
        .unwrap()
    }

    /// A fixed two-mode / two-mode family with a nonzero, noncommuting fast
    /// Hamiltonian block; exercises every term of the elimination formula.
    pub(crate) fn dense_params() -> SpecialClassParams {
        let lambda1 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.8, 0.1), c(-0.3, 0.4), c(0.2, -0.7), c(1.1, 0.0)],
        )
        .unwrap();
        let lambda2 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.5, -0.2), c(0.9, 0.3), c(-0.4, 0.1), c(0.6, 0.5)],
        )
        .unwrap();
        let m11 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.7, 0.0), c(0.2, 0.5), c(0.2, -0.5), c(-0.3, 0.0)],
        )
        .unwrap();
        let m12 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.1, 0.6), c(-0.8, 0.2), c(0.3, 0.0), c(0.0, -0.4)],
        )
        .unwrap();
        let m22 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.2, 0.0), c(-0.1, 0.9), c(-0.1, -0.9), c(0.4, 0.0)],
        )
        .unwrap();
        SpecialClassParams::new(
            lambda1,
            lambda2,
            m11,
            m12,
            m22,
            ComplexMatrix::identity(2),
            &tol(),
        )
        .unwrap()
    }

    #[test]
    fn build_special_decoupled_fast_block() {
        // Λ₂ = 0, M₁₂ = 0, M₂₂ = I: the fast block is a bare oscillator.
        let params = SpecialClassParams::new(
            ComplexMatrix::real_scalar(1.0),
            ComplexMatrix::real_scalar(0.0),
            ComplexMatrix::real_scalar(0.0),
            ComplexMatrix::real_scalar(0.0),
            ComplexMatrix::real_scalar(1.0),
            ComplexMatrix::real_scalar(1.0),
            &tol(),
        )
        .unwrap();
        let p = build_special(&params);
        assert_eq!(p.f12().max_abs(), 0.0);
        assert_eq!(p.f21().max_abs(), 0.0);
        assert!((p.f22().get(0, 0) - c(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(p.g2().max_abs(), 0.0);
        assert_eq!(p.h2().max_abs(), 0.0);
    }

    #[test]
    fn build_special_cascade_blocks_match_both_conventions() {
        // internal_sign = −1 reproduces the cascade block form with
        // F12 = −√K1, F21 = −√K2; internal_sign = +1 swaps them.
        let p = build_special(&cascade_params(4.0, 1.0, -1.0));
        assert!((p.f11().get(0, 0) - c(-4.5, 0.0)).norm() < 1e-14);
        assert!((p.f12().get(0, 0) - c(-2.0, 0.0)).norm() < 1e-14);
        assert!((p.f21().get(0, 0) - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((p.f22().get(0, 0) - c(-0.5, 0.0)).norm() < 1e-14);
        assert!((p.g1().get(0, 0) - c(-3.0, 0.0)).norm() < 1e-14);
        assert!((p.g2().get(0, 0) - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((p.h1().get(0, 0) - c(3.0, 0.0)).norm() < 1e-14);
        assert!((p.h2().get(0, 0) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((p.k().get(0, 0) - c(1.0, 0.0)).norm() < 1e-14);

        let q = build_special(&cascade_params(4.0, 1.0, 1.0));
        assert!((q.f12().get(0, 0) - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((q.f21().get(0, 0) - c(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn special_family_realizability_witnesses() {
        let params = dense_params();
        let t = tol();
        // assembled (normalized) member at ε = 1: witness I
        let sys1 = assemble_full(&build_special(&params), 1.0).unwrap();
        let rep1 = find_commutation_matrix(&sys1, &t).unwrap();
        assert!(rep1.realizable, "{:?}", rep1.failure_reason);
        let id4 = ComplexMatrix::identity(4);
        assert!(rep1.witness.unwrap().theta().max_abs_diff(&id4) < 1e-9);

        // un-normalized member at ε = 0.31: witness I for every ε
        let eps = 0.31;
        let sys2 = family_member(&params, eps).unwrap();
        let rep2 = find_commutation_matrix(&sys2, &t).unwrap();
        assert!(rep2.realizable, "{:?}", rep2.failure_reason);
        assert!(rep2.witness.unwrap().theta().max_abs_diff(&id4) < 1e-9);

        // normalized member at the same ε: witness diag(I, I/ε)
        let sys3 = assemble_full(&build_special(&params), eps).unwrap();
        let rep3 = find_commutation_matrix(&sys3, &t).unwrap();
        assert!(rep3.realizable, "{:?}", rep3.failure_reason);
        let expected = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 1.0 / eps, 1.0 / eps]);
        assert!(rep3.witness.unwrap().theta().max_abs_diff(&expected) < 1e-8);
    }

    #[test]
    fn eliminate_cascade() {
        for sign in [-1.0, 1.0] {
            let params = cascade_params(4.0, 1.0, sign);
            let elim = eliminate(&params, &tol()).unwrap();
            assert!((elim.s_t.get(0, 0) - c(-1.0, 0.0)).norm() < 1e-14);
            assert!(elim.m_t.max_abs() < 1e-12);
            assert!((elim.lambda_t.get(0, 0).norm() - 1.0).abs() < 1e-14);
            // the coupling convention fixes the sign of Λ̃
            let expected_sign = -sign;
            assert!((elim.lambda_t.get(0, 0) - c(expected_sign, 0.0)).norm() < 1e-14);
            assert!((elim.reduced.f().get(0, 0) - c(-0.5, 0.0)).norm() < 1e-14);
            assert!((elim.reduced.k().get(0, 0) - c(-1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn eliminate_identity_fast_coupling() {
        // Λ₂ = I, M₂₂ = 0, M₁₂ = 0: S̃ = −S, Λ̃ = 0, M̃ = M₁₁.
        let m11 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.3, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(-0.5, 0.0)],
        )
        .unwrap();
        let params = SpecialClassParams::new(
            ComplexMatrix::from_row_slice(
                2,
                2,
                &[c(0.7, 0.2), c(-0.1, 0.0), c(0.4, -0.3), c(0.9, 0.1)],
            )
            .unwrap(),
            ComplexMatrix::identity(2),
            m11.clone(),
            ComplexMatrix::zeros(2, 2),
            ComplexMatrix::zeros(2, 2),
            ComplexMatrix::identity(2),
            &tol(),
        )
        .unwrap();
        let elim = eliminate(&params, &tol()).unwrap();
        let minus_s = ComplexMatrix::identity(2).scale_real(-1.0);
        assert!(elim.s_t.max_abs_diff(&minus_s) < 1e-14);
        assert!(elim.lambda_t.max_abs() < 1e-14);
        assert!(elim.m_t.max_abs_diff(&m11) < 1e-14);
    }

    #[test]
    fn eliminate_zero_fast_hamiltonian_two_term_oracle() {
        // With M₂₂ = 0 only the two Λ₂†Λ₂-bearing terms survive:
        // M̃ = M₁₁ − ¼(M₁₂C⁻¹(Λ₂†Λ₂)C⁻¹Λ₂†Λ₁ + h.c.), C = ½Λ₂†Λ₂.
        let lambda1 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.9, -0.1), c(0.2, 0.3), c(-0.6, 0.0), c(0.4, 0.8)],
        )
        .unwrap();
        let lambda2 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.1, 0.0), c(0.3, -0.4), c(0.0, 0.5), c(0.8, 0.2)],
        )
        .unwrap();
        let m12 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.2, 0.1), c(-0.5, 0.0), c(0.0, 0.7), c(0.3, -0.3)],
        )
        .unwrap();
        let m11 = ComplexMatrix::zeros(2, 2);
        let params = SpecialClassParams::new(
            lambda1.clone(),
            lambda2.clone(),
            m11,
            m12.clone(),
            ComplexMatrix::zeros(2, 2),
            ComplexMatrix::identity(2),
            &tol(),
        )
        .unwrap();
        let elim = eliminate(&params, &tol()).unwrap();

        let l2l2 = &lambda2.dagger() * &lambda2;
        let c_inv = l2l2.scale_real(0.5).try_inverse().unwrap();
        let sandwich = &(&c_inv * &l2l2) * &c_inv;
        let half = &(&m12 * &sandwich) * &(&lambda2.dagger() * &lambda1);
        let oracle = -&(&half + &half.dagger()).scale_real(0.25);
        assert!(elim.m_t.max_abs_diff(&oracle) < 1e-12);
    }

    #[test]
    fn eliminate_decoupled_fast_block_is_identity_map() {
        // Λ₂ = 0 with nonsingular M₂₂: Λ̃ = Λ₁, S̃ = S, M̃ = M₁₁ exactly.
        let m11 = ComplexMatrix::from_real_diagonal(&[0.4, -0.9]);
        let params = SpecialClassParams::new(
            ComplexMatrix::from_real_row_slice(1, 2, &[0.6, -0.2]).unwrap(),
            ComplexMatrix::from_real_row_slice(1, 2, &[0.0, 0.0]).unwrap(),
            m11.clone(),
            ComplexMatrix::zeros(2, 2),
            ComplexMatrix::from_real_diagonal(&[1.0, 2.0]),
            ComplexMatrix::real_scalar(1.0),
            &tol(),
        )
        .unwrap();
        let elim = eliminate(&params, &tol()).unwrap();
        assert!(elim.lambda_t.max_abs_diff(params.lambda1()) < 1e-15);
        assert!(elim.s_t.max_abs_diff(params.scattering()) < 1e-15);
        assert!(elim.m_t.max_abs_diff(&m11) < 1e-15);
    }

    #[test]
    fn eliminate_rejects_singular_fast_operator() {
        let params = SpecialClassParams::new(
            ComplexMatrix::real_scalar(1.0),
            ComplexMatrix::real_scalar(0.0),
            ComplexMatrix::real_scalar(0.0),
            ComplexMatrix::real_scalar(0.0),
            ComplexMatrix::real_scalar(0.0),
            ComplexMatrix::real_scalar(1.0),
            &tol(),
        )
        .unwrap();
        assert!(matches!(
            eliminate(&params, &tol()),
            Err(Error::EliminationUndefined { .. })
        ));
    }

    #[test]
    fn elimination_matches_slow_reduction_with_dense_fast_hamiltonian() {
        let params = dense_params();
        let t = tol();
        let elim = eliminate(&params, &t).unwrap();
        let slow = reduce_slow(&build_special(&params), &t).unwrap();
        for (a, b) in [
            (slow.f(), elim.reduced.f()),
            (slow.g(), elim.reduced.g()),
            (slow.h(), elim.reduced.h()),
            (slow.k(), elim.reduced.k()),
        ] {
            assert!(
                (a - b).norm() < 1e-9 * (1.0 + a.norm()),
                "route mismatch:\n{a}\nvs\n{b}"
            );
        }
        assert!(elim.m_asymmetry < 1e-10);
    }

    #[test]
    fn reduction_guarantee_cascade_report() {
        let params = cascade_params(4.0, 1.0, -1.0);
        let grid = FrequencyGrid::default_grid();
        let report = verify_reduction_guarantee(&params, &[1.0, 0.1, 0.01], &grid, &tol()).unwrap();
        assert!(report.premise.iter().all(|(_, ok)| *ok));
        assert!(report.reduced_realizable);
        assert!(report.transfer_distance <= 1e-9);
        assert!(report.quadruple_distance <= 1e-9);
    }

    #[test]
    fn equal_couplings_reduced_is_degenerate_but_realizable() {
        let params = cascade_params(1.0, 1.0, -1.0);
        let t = tol();
        let elim = eliminate(&params, &t).unwrap();
        assert!(
            find_commutation_matrix(&elim.reduced, &t)
                .unwrap()
                .realizable
        );
        let minrep = minimality_check(&elim.reduced, &t).unwrap();
        assert_eq!(minrep.verdict, MinimalityVerdict::Both);
        assert!(minrep.uncontrollable_eigenvalues[0].norm() < 1e-12);
    }
}
