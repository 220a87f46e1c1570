//! Singularly perturbed system families and slow-subsystem reduction.
//!
//! A [`PartitionedSystem`] holds the ε-independent blocks of the family
//!
//! ```text
//! da₁ = F₁₁ a₁ dt + F₁₂ a₂ dt + G₁ du
//! da₂ = (1/ε)(F₂₁ a₁ + F₂₂ a₂) dt + (1/ε) G₂ du
//! dy  = H₁ a₁ dt + H₂ a₂ dt + K du
//! ```
//!
//! ε itself is a parameter of [`assemble_full`], not part of the datum: the
//! family is quantified over all ε > 0. When F₂₂ is nonsingular, formally
//! setting ε = 0 eliminates the fast block and leaves the slow subsystem
//!
//! ```text
//! F₀ = F₁₁ − F₁₂F₂₂⁻¹F₂₁   G₀ = G₁ − F₁₂F₂₂⁻¹G₂
//! H₀ = H₁ − H₂F₂₂⁻¹F₂₁    K₀ = K − H₂F₂₂⁻¹G₂
//! ```
//!
//! [`convergence_study`] measures sup_ω ‖Φ_ε(iω) − Φ₀(iω)‖ over an ε sweep
//! and fits the log–log slope; to first order the gap is
//! ε·s·(H₀(sI−F₀)⁻¹F₁₂ + H₂F₂₂⁻¹)F₂₂⁻¹(F₂₁(sI−F₀)⁻¹G₀ + G₂), whose grid
//! supremum the report carries as `first_order_coefficient_norm`.

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, Tolerances};
use crate::qsys::{frequency_response, FrequencyGrid, QuantumLinearSystem};

/// Below this sup-error the ε-sweep is numerically flat (the fast block is
/// disconnected) and no slope is fitted.
const SLOPE_FLOOR: f64 = 1e-12;

/// Block form of the singularly perturbed family. The fast dimension n₂ may
/// be zero (see [`PartitionedSystem::without_fast_block`]); all other blocks
/// are nonempty.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedSystem {
    f11: ComplexMatrix,
    f12: ComplexMatrix,
    f21: ComplexMatrix,
    f22: ComplexMatrix,
    g1: ComplexMatrix,
    g2: ComplexMatrix,
    h1: ComplexMatrix,
    h2: ComplexMatrix,
    k: ComplexMatrix,
}

impl PartitionedSystem {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        f11: ComplexMatrix,
        f12: ComplexMatrix,
        f21: ComplexMatrix,
        f22: ComplexMatrix,
        g1: ComplexMatrix,
        g2: ComplexMatrix,
        h1: ComplexMatrix,
        h2: ComplexMatrix,
        k: ComplexMatrix,
    ) -> Result<Self> {
        if !f11.is_square() || !f22.is_square() || !k.is_square() {
            return Err(Error::Dimension("F11, F22 and K must be square".into()));
        }
        let (n1, n2, m) = (f11.rows(), f22.rows(), k.rows());
        let checks = [
            ("F12", f12.rows(), n1, f12.cols(), n2),
            ("F21", f21.rows(), n2, f21.cols(), n1),
            ("G1", g1.rows(), n1, g1.cols(), m),
            ("G2", g2.rows(), n2, g2.cols(), m),
            ("H1", h1.rows(), m, h1.cols(), n1),
            ("H2", h2.rows(), m, h2.cols(), n2),
        ];
        for (name, r, er, c, ec) in checks {
            if r != er || c != ec {
                return Err(Error::Dimension(format!(
                    "{name} must be {er}×{ec}, got {r}×{c}"
                )));
            }
        }
        Ok(Self {
            f11,
            f12,
            f21,
            f22,
            g1,
            g2,
            h1,
            h2,
            k,
        })
    }

    /// Family with an empty fast block (n₂ = 0): assembly and reduction both
    /// return the slow system (F₁₁, G₁, H₁, K) unchanged.
    pub fn without_fast_block(
        f11: ComplexMatrix,
        g1: ComplexMatrix,
        h1: ComplexMatrix,
        k: ComplexMatrix,
    ) -> Result<Self> {
        // Dimension checks happen on the slow system itself.
        let slow = QuantumLinearSystem::new(f11, g1, h1, k)?;
        let (n1, m) = (slow.modes(), slow.inputs());
        Ok(Self {
            f11: slow.f().clone(),
            f12: ComplexMatrix::empty(n1, 0),
            f21: ComplexMatrix::empty(0, n1),
            f22: ComplexMatrix::empty(0, 0),
            g1: slow.g().clone(),
            g2: ComplexMatrix::empty(0, m),
            h1: slow.h().clone(),
            h2: ComplexMatrix::empty(m, 0),
            k: slow.k().clone(),
        })
    }

    pub fn f11(&self) -> &ComplexMatrix {
        &self.f11
    }
    pub fn f12(&self) -> &ComplexMatrix {
        &self.f12
    }
    pub fn f21(&self) -> &ComplexMatrix {
        &self.f21
    }
    pub fn f22(&self) -> &ComplexMatrix {
        &self.f22
    }
    pub fn g1(&self) -> &ComplexMatrix {
        &self.g1
    }
    pub fn g2(&self) -> &ComplexMatrix {
        &self.g2
    }
    pub fn h1(&self) -> &ComplexMatrix {
        &self.h1
    }
    pub fn h2(&self) -> &ComplexMatrix {
        &self.h2
    }
    pub fn k(&self) -> &ComplexMatrix {
        &self.k
    }

    pub fn n1(&self) -> usize {
        self.f11.rows()
    }
    pub fn n2(&self) -> usize {
        self.f22.rows()
    }
    pub fn inputs(&self) -> usize {
        self.k.rows()
    }

    /// Fast-state transformation a₂ → T a₂ of the family blocks. The slow
    /// reduction is invariant under this map when T is invertible.
    pub fn fast_block_transform(&self, t: &ComplexMatrix) -> Result<Self> {
        if !t.is_square() || t.rows() != self.n2() {
            return Err(Error::Dimension(format!(
                "fast-block transformation must be {0}×{0}",
                self.n2()
            )));
        }
        let t_inv = t.try_inverse()?;
        Ok(Self {
            f11: self.f11.clone(),
            f12: &self.f12 * &t_inv,
            f21: t * &self.f21,
            f22: &(t * &self.f22) * &t_inv,
            g1: self.g1.clone(),
            g2: t * &self.g2,
            h1: self.h1.clone(),
            h2: &self.h2 * &t_inv,
            k: self.k.clone(),
        })
    }
}

/// Assemble the family member at a fixed ε > 0:
/// F = [[F₁₁, F₁₂], [F₂₁/ε, F₂₂/ε]], G = [G₁; G₂/ε], H = [H₁ H₂], K.
pub fn assemble_full(p: &PartitionedSystem, epsilon: f64) -> Result<QuantumLinearSystem> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be strictly positive and finite, got {epsilon}"
        )));
    }
    let inv = 1.0 / epsilon;
    let f = ComplexMatrix::block_2x2(
        &p.f11,
        &p.f12,
        &p.f21.scale_real(inv),
        &p.f22.scale_real(inv),
    );
    let g = ComplexMatrix::vstack(&[&p.g1, &p.g2.scale_real(inv)]);
    let h = ComplexMatrix::hstack(&[&p.h1, &p.h2]);
    QuantumLinearSystem::new(f, g, h, p.k.clone())
}

/// Slow-subsystem reduction (formally ε = 0). Requires the fast block F₂₂ to
/// be nonsingular: smallest singular value above `definiteness_tol · ‖F₂₂‖`.
pub fn reduce_slow(p: &PartitionedSystem, tol: &Tolerances) -> Result<QuantumLinearSystem> {
    if p.n2() == 0 {
        return QuantumLinearSystem::new(p.f11.clone(), p.g1.clone(), p.h1.clone(), p.k.clone());
    }
    let sv_min = p.f22.smallest_singular_value();
    if sv_min <= tol.definiteness_tol * p.f22.norm() {
        return Err(Error::ReductionUndefined {
            smallest_singular_value: sv_min,
        });
    }
    let x_f21 = p.f22.solve(&p.f21)?; // F22⁻¹ F21
    let x_g2 = p.f22.solve(&p.g2)?; // F22⁻¹ G2
    QuantumLinearSystem::new(
        &p.f11 - &(&p.f12 * &x_f21),
        &p.g1 - &(&p.f12 * &x_g2),
        &p.h1 - &(&p.h2 * &x_f21),
        &p.k - &(&p.h2 * &x_g2),
    )
}

/// Result of an ε-sweep of the frequency-domain reduction error.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Strictly decreasing ε values.
    pub epsilons: Vec<f64>,
    /// sup over the grid of ‖Φ_ε(iω) − Φ₀(iω)‖, per ε.
    pub sup_errors: Vec<f64>,
    /// Least-squares slope of log(sup_error) against log(ε); `None` when the
    /// errors sit at the numerical floor (disconnected fast block).
    pub fitted_slope: Option<f64>,
    /// sup over the grid of the first-order error coefficient
    /// ‖ω·(H₀(iωI−F₀)⁻¹F₁₂ + H₂F₂₂⁻¹)F₂₂⁻¹(F₂₁(iωI−F₀)⁻¹G₀ + G₂)‖.
    pub first_order_coefficient_norm: f64,
}

/// Sweep the reduction error over ε and fit its order. Needs at least three
/// distinct ε values; they are sorted into decreasing order.
pub fn convergence_study(
    p: &PartitionedSystem,
    epsilons: &[f64],
    grid: &FrequencyGrid,
    tol: &Tolerances,
) -> Result<ConvergenceReport> {
    let mut eps: Vec<f64> = epsilons.to_vec();
    if eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::InvalidParameter(
            "epsilons must be strictly positive and finite".into(),
        ));
    }
    eps.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eps.dedup();
    if eps.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "convergence study needs at least 3 distinct epsilons, got {}",
            eps.len()
        )));
    }

    let reduced = reduce_slow(p, tol)?;
    let phi0 = frequency_response(&reduced, grid, tol)?;

    let mut sup_errors = Vec::with_capacity(eps.len());
    for &e in &eps {
        let full = assemble_full(p, e)?;
        let phi_e = frequency_response(&full, grid, tol)?;
        let sup = phi_e
            .iter()
            .zip(phi0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        sup_errors.push(sup);
    }

    let fitted_slope = if sup_errors.iter().copied().fold(0.0, f64::max) <= SLOPE_FLOOR {
        None
    } else {
        let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
        let ys: Vec<f64> = sup_errors
            .iter()
            .map(|s| s.max(f64::MIN_POSITIVE).ln())
            .collect();
        let xbar = xs.iter().sum::<f64>() / xs.len() as f64;
        let ybar = ys.iter().sum::<f64>() / ys.len() as f64;
        let num: f64 = xs
            .iter()
            .zip(ys.iter())
            .map(|(x, y)| (x - xbar) * (y - ybar))
            .sum();
        let den: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
        Some(num / den)
    };

    let first_order_coefficient_norm = first_order_coefficient_norm(p, &reduced, grid)?;

    Ok(ConvergenceReport {
        epsilons: eps,
        sup_errors,
        fitted_slope,
        first_order_coefficient_norm,
    })
}

/// Grid supremum of the first-order (in ε) error coefficient of Φ_ε − Φ₀.
fn first_order_coefficient_norm(
    p: &PartitionedSystem,
    reduced: &QuantumLinearSystem,
    grid: &FrequencyGrid,
) -> Result<f64> {
    if p.n2() == 0 {
        return Ok(0.0);
    }
    let f22_inv = p.f22.try_inverse()?;
    let h2_f22inv = &p.h2 * &f22_inv;
    let n1 = p.n1();
    let mut sup: f64 = 0.0;
    for &w in grid.omegas() {
        if w == 0.0 {
            continue; // the coefficient carries a factor ω
        }
        let s = Complex64::new(0.0, w);
        let a = &ComplexMatrix::identity(n1).scale(s) - reduced.f();
        let r_f12 = a.solve(&p.f12)?; // (sI − F0)⁻¹ F12
        let r_g0 = a.solve(reduced.g())?; // (sI − F0)⁻¹ G0
        let left = &(reduced.h() * &r_f12) + &h2_f22inv;
        let right = &(&p.f21 * &r_g0) + &p.g2;
        let coeff = (&(&left * &f22_inv) * &right).norm() * w.abs();
        sup = sup.max(coeff);
    }
    Ok(sup)
}
