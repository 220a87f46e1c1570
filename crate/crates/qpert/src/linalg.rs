//! Dense complex linear-algebra kernel: eigenvalues, linear solves,
//! Sylvester/Lyapunov solves via Kronecker vectorization, SVD-based rank,
//! Hermitian/definiteness predicates and norms.
//!
//! Everything is dense and double-precision; the systems this crate targets
//! have a handful of modes, so an O((pq)³) vectorized Sylvester solve and
//! SVD-backed norms are both trivially affordable and easy to verify.
//! Factorizations are delegated to `nalgebra`; the contracts (tolerances,
//! error reporting, residual guarantees) live here.

use nalgebra::DMatrix;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub use num_complex::Complex64;

/// Iteration cap for the QR eigenvalue iteration. Far beyond what any
/// well-posed matrix of the supported size (n ≤ 128) needs; hitting it is
/// reported as a numeric error, never silently truncated.
const EIG_MAX_ITER: usize = 100_000;

/// Largest supported eigenproblem.
pub const EIG_MAX_DIM: usize = 128;

/// Tolerances shared by every numeric decision in the crate.
///
/// All comparisons against `residual_tol` and `definiteness_tol` are scaled
/// relative to the operands (`tol · (1 + ‖·‖)`) so they behave sanely near
/// zero matrices; `rank_rel_tol` is relative to the largest singular value;
/// `hurwitz_margin` is the strict/closed half-plane margin on Re λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub residual_tol: f64,
    pub definiteness_tol: f64,
    pub rank_rel_tol: f64,
    pub hurwitz_margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual_tol: 1e-9,
            definiteness_tol: 1e-10,
            rank_rel_tol: 1e-10,
            hurwitz_margin: 1e-9,
        }
    }
}

impl Tolerances {
    /// Validated constructor: every field must be strictly positive and finite.
    pub fn new(
        residual_tol: f64,
        definiteness_tol: f64,
        rank_rel_tol: f64,
        hurwitz_margin: f64,
    ) -> Result<Self> {
        let t = Self {
            residual_tol,
            definiteness_tol,
            rank_rel_tol,
            hurwitz_margin,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("residual_tol", self.residual_tol),
            ("definiteness_tol", self.definiteness_tol),
            ("rank_rel_tol", self.rank_rel_tol),
            ("hurwitz_margin", self.hurwitz_margin),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Copy with a different `residual_tol` (the CLI `--tol` override).
    pub fn with_residual_tol(mut self, residual_tol: f64) -> Result<Self> {
        self.residual_tol = residual_tol;
        self.validate()?;
        Ok(self)
    }
}

/// Verdict of [`posdef_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
    NotHermitian,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Definiteness::PositiveDefinite => "positive definite",
            Definiteness::PositiveSemidefinite => "positive semidefinite",
            Definiteness::Indefinite => "indefinite",
            Definiteness::NotHermitian => "not Hermitian",
        };
        f.write_str(s)
    }
}

/// Dense complex matrix with row-major construction semantics.
///
/// Public constructors enforce the type invariants: at least one row and one
/// column, and every entry finite. Zero-dimension matrices exist only
/// internally, to represent systems whose fast block is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    fn validated(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(Error::Dimension(
                "matrix must have at least one row and one column".into(),
            ));
        }
        for j in 0..inner.ncols() {
            for i in 0..inner.nrows() {
                let z = inner[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { inner })
    }

    pub(crate) fn from_inner(inner: DMatrix<Complex64>) -> Self {
        Self { inner }
    }

    pub(crate) fn inner(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    /// Zero-dimension matrix. Crate-internal: carries empty fast blocks.
    pub(crate) fn empty(rows: usize, cols: usize) -> Self {
        Self {
            inner: DMatrix::zeros(rows, cols),
        }
    }

    /// Build from nested rows; all rows must have equal, nonzero length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Dimension(
                "matrix must have at least one row and one column".into(),
            ));
        }
        let cols = rows[0].len();
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let flat: Vec<Complex64> = rows.iter().flatten().copied().collect();
        Self::validated(DMatrix::from_row_slice(rows.len(), cols, &flat))
    }

    /// Build from a row-major slice of complex entries.
    pub fn from_row_slice(rows: usize, cols: usize, data: &[Complex64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {rows}×{cols} = {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Self::validated(DMatrix::from_row_slice(rows, cols, data))
    }

    /// Build from a row-major slice of real entries.
    pub fn from_real_row_slice(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        let cdata: Vec<Complex64> = data.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_row_slice(rows, cols, &cdata)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "zero-dimension matrix");
        Self {
            inner: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "zero-dimension identity");
        Self {
            inner: DMatrix::identity(n, n),
        }
    }

    /// 1×1 matrix.
    pub fn scalar(z: Complex64) -> Self {
        Self {
            inner: DMatrix::from_element(1, 1, z),
        }
    }

    /// 1×1 real matrix.
    pub fn real_scalar(x: f64) -> Self {
        Self::scalar(Complex64::new(x, 0.0))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        assert!(!diag.is_empty(), "zero-dimension diagonal");
        let mut m = DMatrix::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        Self { inner: m }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let cdiag: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&cdiag)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        assert!(rows >= 1 && cols >= 1, "zero-dimension matrix");
        Self {
            inner: DMatrix::from_fn(rows, cols, f),
        }
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.rows() == 0 || self.cols() == 0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    /// Entries as nested rows (row-major), the file-format layout.
    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.inner[(i, j)]).collect())
            .collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            inner: self.inner.transpose(),
        }
    }

    pub fn conjugate(&self) -> Self {
        Self {
            inner: self.inner.map(|z| z.conj()),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.diagonal().iter().sum()
    }

    /// Hermitian part (A + A†)/2.
    pub fn hermitian_part(&self) -> Self {
        Self {
            inner: (&self.inner + self.inner.adjoint()).scale(0.5),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            inner: self.inner.map(|z| z * factor),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Spectral norm (largest singular value). Zero for empty matrices.
    pub fn norm(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Frobenius norm.
    pub fn norm_fro(&self) -> f64 {
        self.inner.norm()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference |a_ij − b_ij|. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.rows(), other.rows(), "max_abs_diff: row mismatch");
        assert_eq!(self.cols(), other.cols(), "max_abs_diff: col mismatch");
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut sv: Vec<f64> = self
            .inner
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }

    pub fn smallest_singular_value(&self) -> f64 {
        self.singular_values().last().copied().unwrap_or(0.0)
    }

    /// Solve `self · X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "solve requires a square matrix, got {}×{}",
                self.rows(),
                self.cols()
            )));
        }
        if self.rows() != rhs.rows() {
            return Err(Error::Dimension(format!(
                "solve: lhs is {}×{} but rhs has {} rows",
                self.rows(),
                self.cols(),
                rhs.rows()
            )));
        }
        if self.is_empty() {
            return Ok(Self::empty(self.rows(), rhs.cols()));
        }
        self.inner
            .clone()
            .lu()
            .solve(&rhs.inner)
            .map(Self::from_inner)
            .ok_or_else(|| Error::SingularMatrix {
                context: format!("{}×{} linear solve", self.rows(), self.cols()),
            })
    }

    /// Explicit inverse; prefer [`ComplexMatrix::solve`] where possible.
    pub fn try_inverse(&self) -> Result<Self> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        self.inner
            .clone()
            .try_inverse()
            .map(Self::from_inner)
            .ok_or_else(|| Error::SingularMatrix {
                context: format!("{}×{} inverse", self.rows(), self.cols()),
            })
    }

    pub fn determinant(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "determinant requires a square matrix".into(),
            ));
        }
        Ok(self.inner.clone().lu().determinant())
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.kronecker(&other.inner),
        }
    }

    /// Horizontal concatenation; empty (zero-column) blocks are skipped.
    pub fn hstack(blocks: &[&Self]) -> Self {
        let parts: Vec<&Self> = blocks.iter().copied().filter(|b| b.cols() > 0).collect();
        assert!(!parts.is_empty(), "hstack of empty blocks");
        let rows = parts[0].rows();
        assert!(
            parts.iter().all(|b| b.rows() == rows),
            "hstack: row mismatch"
        );
        let cols: usize = parts.iter().map(|b| b.cols()).sum();
        let mut m = DMatrix::zeros(rows, cols);
        let mut off = 0;
        for b in parts {
            m.view_mut((0, off), (rows, b.cols())).copy_from(&b.inner);
            off += b.cols();
        }
        Self { inner: m }
    }

    /// Vertical concatenation; empty (zero-row) blocks are skipped.
    pub fn vstack(blocks: &[&Self]) -> Self {
        let parts: Vec<&Self> = blocks.iter().copied().filter(|b| b.rows() > 0).collect();
        assert!(!parts.is_empty(), "vstack of empty blocks");
        let cols = parts[0].cols();
        assert!(
            parts.iter().all(|b| b.cols() == cols),
            "vstack: col mismatch"
        );
        let rows: usize = parts.iter().map(|b| b.rows()).sum();
        let mut m = DMatrix::zeros(rows, cols);
        let mut off = 0;
        for b in parts {
            m.view_mut((off, 0), (b.rows(), cols)).copy_from(&b.inner);
            off += b.rows();
        }
        Self { inner: m }
    }

    /// 2×2 block assembly `[[a, b], [c, d]]`, tolerant of empty blocks.
    pub fn block_2x2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (r1, r2) = (a.rows(), c.rows());
        let (c1, c2) = (a.cols(), b.cols());
        assert_eq!(b.rows(), r1, "block_2x2: top row height mismatch");
        assert_eq!(d.rows(), r2, "block_2x2: bottom row height mismatch");
        assert_eq!(c.cols(), c1, "block_2x2: left column width mismatch");
        assert_eq!(d.cols(), c2, "block_2x2: right column width mismatch");
        let mut m = DMatrix::zeros(r1 + r2, c1 + c2);
        m.view_mut((0, 0), (r1, c1)).copy_from(&a.inner);
        m.view_mut((0, c1), (r1, c2)).copy_from(&b.inner);
        m.view_mut((r1, 0), (r2, c1)).copy_from(&c.inner);
        m.view_mut((r1, c1), (r2, c2)).copy_from(&d.inner);
        Self { inner: m }
    }

    /// Rectangular sub-block copy.
    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self {
            inner: self.inner.view((row0, col0), (rows, cols)).into_owned(),
        }
    }

    /// Real eigenvalues of a Hermitian matrix, ascending. The caller asserts
    /// Hermiticity; only the Hermitian part is consumed.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        assert!(self.is_square(), "hermitian_eigenvalues: non-square");
        if self.is_empty() {
            return Vec::new();
        }
        let mut ev: Vec<f64> = self
            .hermitian_part()
            .inner
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.inner[idx]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix {
            inner: -&self.inner,
        }
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            write!(f, "[")?;
            for j in 0..self.cols() {
                let z = self.inner[(i, j)];
                if j > 0 {
                    write!(f, ", ")?;
                }
                if z.im == 0.0 {
                    write!(f, "{:.6}", z.re)?;
                } else {
                    write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
                }
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Eigenvalues (with multiplicity) of a general square complex matrix,
/// via the complex Schur decomposition.
///
/// Post-condition (covered by the property suite): the eigenvalue sum matches
/// `trace(A)` and the product matches `det(A)`, both within
/// `residual_tol · (1 + ‖A‖)`. Non-convergence of the QR iteration is a
/// reported error.
pub fn eig(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eig requires a square matrix, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.rows() > EIG_MAX_DIM {
        return Err(Error::Dimension(format!(
            "eig supports matrices up to {EIG_MAX_DIM}×{EIG_MAX_DIM}, got {}",
            a.rows()
        )));
    }
    let schur = a
        .inner
        .clone()
        .try_schur(f64::EPSILON, EIG_MAX_ITER)
        .ok_or_else(|| {
            Error::Numeric(format!(
                "QR eigenvalue iteration did not converge within {EIG_MAX_ITER} iterations \
                 for a {}×{} matrix",
                a.rows(),
                a.cols()
            ))
        })?;
    schur
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
        .ok_or_else(|| Error::Numeric("Schur form left an unresolved diagonal block".into()))
}

/// Largest real part over the spectrum.
pub fn max_re_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    Ok(eig(a)?
        .iter()
        .map(|l| l.re)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Whether the Sylvester operator X ↦ AX + XB is invertible, decided from
/// the spectra: singular iff α_i + β_j = 0 for some eigenvalues α of A and
/// β of B.
pub fn sylvester_operator_wellposed(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<bool> {
    let alphas = eig(a)?;
    let betas = eig(b)?;
    let scale = 1.0 + a.norm() + b.norm();
    let min_gap = alphas
        .iter()
        .flat_map(|al| betas.iter().map(move |be| (al + be).norm()))
        .fold(f64::INFINITY, f64::min);
    Ok(min_gap > tol.definiteness_tol * scale)
}

/// Solve the Sylvester equation `AX + XB = C` by vectorization: with
/// column-stacked vec, `(I_q ⊗ A + Bᵀ ⊗ I_p) vec(X) = vec(C)`.
///
/// Requires the spectra of A and −B to be disjoint (checked via [`eig`]);
/// otherwise reports the smallest singular value of the vectorized operator.
/// The returned solution satisfies `‖AX + XB − C‖ ≤ residual_tol · (1 + ‖C‖)`.
pub fn sylvester_solve(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::Dimension(
            "sylvester_solve: A and B must be square".into(),
        ));
    }
    let (p, q) = (a.rows(), b.rows());
    if c.rows() != p || c.cols() != q {
        return Err(Error::Dimension(format!(
            "sylvester_solve: C must be {p}×{q}, got {}×{}",
            c.rows(),
            c.cols()
        )));
    }
    let operator = || {
        let iq = DMatrix::<Complex64>::identity(q, q);
        let ip = DMatrix::<Complex64>::identity(p, p);
        iq.kronecker(a.inner()) + b.inner().transpose().kronecker(&ip)
    };
    if !sylvester_operator_wellposed(a, b, tol)? {
        let sv = ComplexMatrix::from_inner(operator()).smallest_singular_value();
        return Err(Error::NoUniqueSolution {
            smallest_singular_value: sv,
        });
    }
    let big = operator();
    let rhs = DMatrix::from_column_slice(p * q, 1, c.inner().as_slice());
    let x = big.lu().solve(&rhs).ok_or_else(|| {
        let sv = ComplexMatrix::from_inner(operator()).smallest_singular_value();
        Error::NoUniqueSolution {
            smallest_singular_value: sv,
        }
    })?;
    let x = ComplexMatrix::from_inner(DMatrix::from_column_slice(p, q, x.as_slice()));
    let residual = (&(&(a * &x) + &(&x * b)) - c).norm();
    if residual > tol.residual_tol * (1.0 + c.norm()) {
        return Err(Error::Numeric(format!(
            "sylvester residual {residual:.3e} exceeds tolerance {:.3e}",
            tol.residual_tol * (1.0 + c.norm())
        )));
    }
    Ok(x)
}

/// Number of singular values above `rank_rel_tol` times the largest one.
/// Rank 0 iff the matrix is zero.
pub fn numerical_rank(a: &ComplexMatrix, rank_rel_tol: f64) -> usize {
    let sv = a.singular_values();
    let largest = sv.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_rel_tol * largest).count()
}

/// Classify a square matrix: Hermitian within `definiteness_tol · (1 + ‖A‖)`,
/// then positive definite / semidefinite / indefinite by the minimum
/// eigenvalue of the Hermitian part against ±`definiteness_tol`.
pub fn posdef_check(a: &ComplexMatrix, definiteness_tol: f64) -> Result<Definiteness> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "posdef_check requires a square matrix, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    let herm_defect = (a - &a.dagger()).norm();
    if herm_defect > definiteness_tol * (1.0 + a.norm()) {
        return Ok(Definiteness::NotHermitian);
    }
    let min_eig = a
        .hermitian_eigenvalues()
        .first()
        .copied()
        .unwrap_or(f64::INFINITY);
    Ok(if min_eig > definiteness_tol {
        Definiteness::PositiveDefinite
    } else if min_eig >= -definiteness_tol {
        Definiteness::PositiveSemidefinite
    } else {
        Definiteness::Indefinite
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Roots of a monic polynomial via its companion matrix — the
    /// independent oracle for eigenvalue tests.
    fn companion_roots(monic_coeffs: &[f64]) -> Vec<Complex64> {
        let n = monic_coeffs.len() - 1;
        assert!((monic_coeffs[0] - 1.0).abs() < 1e-14);
        let comp = ComplexMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 {
                c(-monic_coeffs[n - i], 0.0)
            } else if i == j + 1 {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        eig(&comp).unwrap()
    }

    /// Multiset comparison by greedy nearest matching (conjugate pairs with
    /// equal real parts defeat lexicographic sorting).
    fn assert_spectra_close(a: Vec<Complex64>, mut b: Vec<Complex64>, tol: f64) {
        assert_eq!(a.len(), b.len());
        for x in a {
            let (idx, dist) = b
                .iter()
                .enumerate()
                .map(|(i, y)| (i, (x - y).norm()))
                .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
                .unwrap();
            assert!(dist < tol, "{x} unmatched (closest at distance {dist:.2e})");
            b.swap_remove(idx);
        }
    }

    fn pathological_f_eps(eps: f64) -> ComplexMatrix {
        let e = 1.0 / eps;
        ComplexMatrix::from_real_row_slice(
            4,
            4,
            &[
                -0.5,
                1.0,
                1.0,
                0.0, //
                -1.0,
                -0.5,
                0.0,
                1.0, //
                0.5 * e,
                0.0,
                -e,
                0.0, //
                0.0,
                0.5 * e,
                0.0,
                -e,
            ],
        )
        .unwrap()
    }

    #[test]
    fn eig_diagonal() {
        let a = ComplexMatrix::from_diagonal(&[c(2.0, 0.0), c(-3.0, 1.0)]);
        assert_spectra_close(eig(&a).unwrap(), vec![c(2.0, 0.0), c(-3.0, 1.0)], 1e-14);
    }

    #[test]
    fn eig_rotation_generator_is_purely_imaginary() {
        let a = ComplexMatrix::from_real_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        assert_spectra_close(eig(&a).unwrap(), vec![c(0.0, 1.0), c(0.0, -1.0)], 1e-13);
    }

    #[test]
    fn eig_matches_companion_oracle_on_assembled_family() {
        // char poly of the assembled family at eps = 1 is
        // s^4 + 3 s^3 + 13/4 s^2 + 2 s + 1.
        let expected = companion_roots(&[1.0, 3.0, 13.0 / 4.0, 2.0, 1.0]);
        let got = eig(&pathological_f_eps(1.0)).unwrap();
        assert_spectra_close(got, expected, 1e-10);
    }

    #[test]
    fn eig_rejects_nonsquare_and_oversize() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(eig(&a), Err(Error::Dimension(_))));
        let b = ComplexMatrix::identity(EIG_MAX_DIM + 1);
        assert!(matches!(eig(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn sylvester_scalar() {
        let tol = Tolerances::default();
        let a = ComplexMatrix::real_scalar(-1.0);
        let b = ComplexMatrix::real_scalar(-1.0);
        let cm = ComplexMatrix::real_scalar(-2.0);
        let x = sylvester_solve(&a, &b, &cm, &tol).unwrap();
        assert!((x.get(0, 0) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn sylvester_lyapunov_certificate_of_assembled_family() {
        // The unique Lyapunov certificate of the assembled family at eps = 1
        // is diag(1, 1, 1/2, 1/2): the fast block scales with 1/(2 eps).
        let tol = Tolerances::default();
        let f = pathological_f_eps(1.0);
        let g =
            ComplexMatrix::from_real_row_slice(4, 2, &[-1.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0, 1.0])
                .unwrap();
        let gg = &g * &g.dagger();
        let x = sylvester_solve(&f, &f.dagger(), &(-&gg), &tol).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 0.5, 0.5]);
        assert!(x.max_abs_diff(&expected) < 1e-12, "got\n{x}");
    }

    #[test]
    fn sylvester_hermitian_psd_solution_and_residual() {
        let tol = Tolerances::default();
        // fixed "random" stable A and factor Q
        let a = ComplexMatrix::from_row_slice(
            3,
            3,
            &[
                c(-2.0, 0.3),
                c(0.4, -0.1),
                c(0.0, 0.5),
                c(-0.2, 0.0),
                c(-1.5, -0.4),
                c(0.3, 0.0),
                c(0.1, 0.1),
                c(0.0, -0.2),
                c(-3.0, 0.8),
            ],
        )
        .unwrap();
        let q = ComplexMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(0.2, 0.7),
                c(-0.3, 0.0),
                c(0.0, -0.5),
                c(2.0, 0.0),
                c(0.4, 0.1),
                c(0.6, 0.2),
                c(-0.1, 0.0),
                c(0.5, -0.9),
            ],
        )
        .unwrap();
        let qq = &q * &q.dagger();
        let x = sylvester_solve(&a, &a.dagger(), &(-&qq), &tol).unwrap();
        // direct substitution
        let residual = (&(&(&a * &x) + &(&x * &a.dagger())) + &qq).norm();
        assert!(residual <= tol.residual_tol * (1.0 + qq.norm()));
        assert!(matches!(
            posdef_check(&x, tol.definiteness_tol).unwrap(),
            Definiteness::PositiveDefinite | Definiteness::PositiveSemidefinite
        ));
    }

    #[test]
    fn sylvester_reports_spectrum_overlap() {
        let tol = Tolerances::default();
        // A = 1, B = -1: operator X -> X - X = 0 is singular.
        let a = ComplexMatrix::real_scalar(1.0);
        let b = ComplexMatrix::real_scalar(-1.0);
        let cm = ComplexMatrix::real_scalar(1.0);
        match sylvester_solve(&a, &b, &cm, &tol) {
            Err(Error::NoUniqueSolution {
                smallest_singular_value,
            }) => assert!(smallest_singular_value < 1e-14),
            other => panic!("expected NoUniqueSolution, got {other:?}"),
        }
    }

    #[test]
    fn rank_zero_and_identity() {
        let tol = Tolerances::default();
        assert_eq!(
            numerical_rank(&ComplexMatrix::zeros(2, 3), tol.rank_rel_tol),
            0
        );
        assert_eq!(
            numerical_rank(&ComplexMatrix::identity(4), tol.rank_rel_tol),
            4
        );
    }

    #[test]
    fn rank_detects_uncontrollable_mode() {
        // [λI − F0 | G0] at λ = i with F0 = [[0,1],[-1,0]], G0 = 0:
        // the pencil loses rank at the eigenvalue.
        let tol = Tolerances::default();
        let pencil = ComplexMatrix::from_row_slice(
            2,
            4,
            &[
                c(0.0, 1.0),
                c(-1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 1.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
            ],
        )
        .unwrap();
        assert_eq!(numerical_rank(&pencil, tol.rank_rel_tol), 1);
    }

    #[test]
    fn posdef_examples() {
        let tol = Tolerances::default();
        assert_eq!(
            posdef_check(&ComplexMatrix::identity(3), tol.definiteness_tol).unwrap(),
            Definiteness::PositiveDefinite
        );
        assert_eq!(
            posdef_check(
                &ComplexMatrix::from_real_diagonal(&[1.0, 0.0]),
                tol.definiteness_tol
            )
            .unwrap(),
            Definiteness::PositiveSemidefinite
        );
        // commutation-matrix witness of the assembled family at eps = 0.1
        assert_eq!(
            posdef_check(
                &ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 10.0, 10.0]),
                tol.definiteness_tol
            )
            .unwrap(),
            Definiteness::PositiveDefinite
        );
        assert_eq!(
            posdef_check(
                &ComplexMatrix::from_real_diagonal(&[1.0, -2.0]),
                tol.definiteness_tol
            )
            .unwrap(),
            Definiteness::Indefinite
        );
        let skew = ComplexMatrix::from_real_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        assert_eq!(
            posdef_check(&skew, tol.definiteness_tol).unwrap(),
            Definiteness::NotHermitian
        );
    }

    #[test]
    fn constructors_enforce_invariants() {
        assert!(ComplexMatrix::from_rows(&[]).is_err());
        assert!(ComplexMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![]]).is_err());
        assert!(matches!(
            ComplexMatrix::from_row_slice(1, 1, &[c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { .. })
        ));
        assert!(matches!(
            ComplexMatrix::from_row_slice(2, 2, &[c(1.0, 0.0)]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn block_assembly_round_trip() {
        let a = ComplexMatrix::from_real_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = ComplexMatrix::from_real_row_slice(2, 1, &[5.0, 6.0]).unwrap();
        let cm = ComplexMatrix::from_real_row_slice(1, 2, &[7.0, 8.0]).unwrap();
        let d = ComplexMatrix::from_real_row_slice(1, 1, &[9.0]).unwrap();
        let m = ComplexMatrix::block_2x2(&a, &b, &cm, &d);
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 3);
        assert_eq!(m.get(0, 2), c(5.0, 0.0));
        assert_eq!(m.get(2, 0), c(7.0, 0.0));
        assert_eq!(m.get(2, 2), c(9.0, 0.0));
        assert_eq!(m.block(0, 0, 2, 2).max_abs_diff(&a), 0.0);
    }

    #[test]
    fn empty_blocks_collapse_naturally() {
        let a = ComplexMatrix::from_real_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]).unwrap();
        let e_col = ComplexMatrix::empty(2, 0);
        let e_row = ComplexMatrix::empty(0, 2);
        let e_sq = ComplexMatrix::empty(0, 0);
        let m = ComplexMatrix::block_2x2(&a, &e_col, &e_row, &e_sq);
        assert_eq!(m.rows(), 2);
        assert_eq!(m.max_abs_diff(&a), 0.0);
        assert_eq!((&e_col * &e_row).rows(), 2);
        assert_eq!((&e_col * &e_row).norm(), 0.0);
    }
}
