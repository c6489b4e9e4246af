// Copyright 2026 The distinguish Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense complex linear algebra for the small Hermitian problems that show up
//! in state discrimination: Gram matrices, frame operators, POVM elements and
//! density operators. Dimensions stay in the tens, so everything is dense.
//!
//! The eigen-solver itself is nalgebra's Hermitian tridiagonal QR; this module
//! wraps it with the symmetry checks, ordering and tolerance handling the rest
//! of the crate relies on.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Default threshold for entry-wise equality checks.
pub const DEFAULT_EQUALITY_EPS: f64 = 1e-10;
/// Default floor below which a minimum eigenvalue counts as negative.
pub const DEFAULT_PSD_FLOOR: f64 = -1e-10;

const EIG_MAX_ITERATIONS: usize = 10_000;

/// Numerical thresholds used by Hermiticity, positivity and null-space checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Minimum eigenvalue a positive semidefinite operator may have.
    pub psd_floor: f64,
    /// Entry-wise equality threshold; eigenvalues with magnitude below this
    /// are treated as numerically zero.
    pub equality_eps: f64,
}

impl Tolerance {
    pub fn new(psd_floor: f64, equality_eps: f64) -> Result<Self> {
        if !(psd_floor <= 0.0) {
            return Err(Error::InvalidTolerance(format!(
                "psd_floor must be <= 0, got {psd_floor}"
            )));
        }
        if !(equality_eps > 0.0) || !equality_eps.is_finite() {
            return Err(Error::InvalidTolerance(format!(
                "equality_eps must be positive, got {equality_eps}"
            )));
        }
        Ok(Self {
            psd_floor,
            equality_eps,
        })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            psd_floor: DEFAULT_PSD_FLOOR,
            equality_eps: DEFAULT_EQUALITY_EPS,
        }
    }
}

/// Dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, entries))
    }

    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        for col in 0..m.ncols() {
            for row in 0..m.nrows() {
                let z = m[(row, col)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        Self::from_dmatrix(DMatrix::from_fn(rows, cols, f))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Self(DMatrix::from_diagonal(&v))
    }

    /// The projector-like outer product `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        Self(DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj()))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        self.0.transpose().iter().copied().collect()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `<u| A |v>`.
    pub fn sandwich(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        inner(u, &self.apply(v))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry-wise modulus of `A - A^H`.
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(A + A^H) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()).map(|z| z * 0.5))
    }

    fn check_hermitian(&self, eps: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let err = self.hermiticity_error();
        if err > eps {
            return Err(Error::NotHermitian(err));
        }
        Ok(())
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

/// How a matrix function treats numerically zero eigenvalues when the scalar
/// function is singular there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullPolicy {
    Reject,
    /// Pseudo-function: the numerical null space is mapped to zero.
    MapZeroToZero,
}

/// `A = V diag(eigenvalues) V^H` with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.0.column(k).iter().copied().collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_values(|&x| x)
    }

    fn map_values(&self, mut g: impl FnMut(&f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors.0;
        let d = DVector::from_iterator(
            self.dim(),
            self.eigenvalues.iter().map(|x| Complex64::new(g(x), 0.0)),
        );
        let scaled = DMatrix::from_fn(self.dim(), self.dim(), |i, j| v[(i, j)] * d[j]);
        ComplexMatrix(scaled * v.adjoint())
    }

    /// `V f(Λ) V^H`. Eigenvalues with `|λ| < eps` are evaluated as `f(0)` when
    /// that is finite, and otherwise handled according to `policy`.
    pub fn apply(
        &self,
        f: impl Fn(f64) -> f64,
        policy: NullPolicy,
        eps: f64,
    ) -> Result<ComplexMatrix> {
        let at_zero = f(0.0);
        let mut mapped = Vec::with_capacity(self.dim());
        for &lambda in &self.eigenvalues {
            let value = if lambda.abs() < eps {
                if at_zero.is_finite() {
                    at_zero
                } else {
                    match policy {
                        NullPolicy::Reject => return Err(Error::SingularInput(lambda)),
                        NullPolicy::MapZeroToZero => 0.0,
                    }
                }
            } else {
                f(lambda)
            };
            if !value.is_finite() {
                return Err(Error::NonFiniteFunction(lambda));
            }
            mapped.push(value);
        }
        let mut it = mapped.into_iter();
        Ok(self.map_values(|_| it.next().unwrap_or(0.0)).hermitian_part())
    }

    /// Orthogonal projector onto the span of eigenvectors with `|λ| < eps`.
    pub fn null_projector(&self, eps: f64) -> ComplexMatrix {
        self.map_values(|&x| if x.abs() < eps { 1.0 } else { 0.0 })
            .hermitian_part()
    }
}

/// Eigen-decomposition of a Hermitian matrix using the default tolerance.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigenDecomposition> {
    hermitian_eig_with(a, &Tolerance::default())
}

pub fn hermitian_eig_with(a: &ComplexMatrix, tol: &Tolerance) -> Result<HermitianEigenDecomposition> {
    a.check_hermitian(tol.equality_eps)?;
    let n = a.rows();
    if n == 0 {
        return Ok(HermitianEigenDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: ComplexMatrix::zeros(0),
        });
    }
    let sym = a.hermitian_part();
    let eig = SymmetricEigen::try_new(sym.0, f64::EPSILON, EIG_MAX_ITERATIONS)
        .ok_or(Error::NumericalFailure)?;
    if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::NumericalFailure);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianEigenDecomposition {
        eigenvalues,
        eigenvectors: ComplexMatrix(eigenvectors),
    })
}

/// `f(A)` for Hermitian `A`, computed spectrally.
pub fn matrix_function(
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    null_policy: NullPolicy,
) -> Result<ComplexMatrix> {
    matrix_function_with(a, f, null_policy, &Tolerance::default())
}

pub fn matrix_function_with(
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    null_policy: NullPolicy,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    hermitian_eig_with(a, tol)?.apply(f, null_policy, tol.equality_eps)
}

pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    min_eigenvalue_with(a, &Tolerance::default())
}

pub fn min_eigenvalue_with(a: &ComplexMatrix, tol: &Tolerance) -> Result<f64> {
    Ok(hermitian_eig_with(a, tol)?.min_eigenvalue())
}

/// Euclidean norm of a complex vector.
pub fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `<u|v>`, conjugate-linear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_eigenpairs() {
        let eig = hermitian_eig(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(eig.eigenvalues.len(), 2);
        for &x in &eig.eigenvalues {
            assert!((x - 1.0).abs() < 1e-14);
        }
        assert!(eig.eigenvectors.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn diagonal_sorted_ascending() {
        let eig = hermitian_eig(&ComplexMatrix::from_diagonal(&[3.0, -1.0])).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_x() {
        let x = ComplexMatrix::from_row_major(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
            .unwrap();
        let eig = hermitian_eig(&x).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(eig.reconstruct().max_abs_diff(&x) < 1e-14);
    }

    #[test]
    fn pauli_y_complex_entries() {
        let y = ComplexMatrix::from_row_major(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
            .unwrap();
        let eig = hermitian_eig(&y).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!(eig.reconstruct().max_abs_diff(&y) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_row_major(2, 2, &[c(0., 0.), c(1., 0.), c(2., 0.), c(0., 0.)])
            .unwrap();
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian(_))));
        assert!(matches!(min_eigenvalue(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        let a = ComplexMatrix::from_row_major(1, 2, &[c(0., 0.), c(1., 0.)]).unwrap();
        assert!(matches!(hermitian_eig(&a), Err(Error::NotSquare { .. })));
        assert!(matches!(
            ComplexMatrix::from_row_major(1, 1, &[c(f64::NAN, 0.)]),
            Err(Error::NonFinite { .. })
        ));
        assert!(matches!(
            ComplexMatrix::from_row_major(2, 2, &[c(1., 0.)]),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn identity_function_is_identity() {
        let a = ComplexMatrix::from_row_major(2, 2, &[c(2., 0.), c(0.5, 0.3), c(0.5, -0.3), c(-1., 0.)])
            .unwrap();
        let fa = matrix_function(&a, |x| x, NullPolicy::Reject).unwrap();
        assert!(fa.max_abs_diff(&a) < 1e-10);
    }

    #[test]
    fn inverse_sqrt_of_diagonal() {
        let a = ComplexMatrix::from_diagonal(&[4.0, 1.0]);
        let fa = matrix_function(&a, |x| x.powf(-0.5), NullPolicy::Reject).unwrap();
        assert!(fa.max_abs_diff(&ComplexMatrix::from_diagonal(&[0.5, 1.0])) < 1e-12);
    }

    #[test]
    fn null_policy_on_singular_function() {
        let a = ComplexMatrix::from_diagonal(&[4.0, 0.0]);
        assert!(matches!(
            matrix_function(&a, |x| x.powf(-0.5), NullPolicy::Reject),
            Err(Error::SingularInput(_))
        ));
        let fa = matrix_function(&a, |x| x.powf(-0.5), NullPolicy::MapZeroToZero).unwrap();
        assert!(fa.max_abs_diff(&ComplexMatrix::from_diagonal(&[0.5, 0.0])) < 1e-12);
        // sqrt is finite at zero, so a tiny negative eigenvalue is mapped to sqrt(0)
        let b = ComplexMatrix::from_diagonal(&[1.0, -1e-14]);
        let sb = matrix_function(&b, f64::sqrt, NullPolicy::Reject).unwrap();
        assert!(sb.max_abs_diff(&ComplexMatrix::from_diagonal(&[1.0, 0.0])) < 1e-12);
    }

    #[test]
    fn min_eigenvalue_examples() {
        assert!((min_eigenvalue(&ComplexMatrix::identity(3)).unwrap() - 1.0).abs() < 1e-14);
        let d = ComplexMatrix::from_diagonal(&[0.3, -0.2]);
        assert!((min_eigenvalue(&d).unwrap() + 0.2).abs() < 1e-14);
        let p = ComplexMatrix::outer(&[c(1., 0.), c(0., 0.)]);
        assert!(min_eigenvalue(&p).unwrap().abs() < 1e-14);
    }

    #[test]
    fn null_projector_of_rank_one() {
        let p = ComplexMatrix::outer(&[c(0.6, 0.), c(0., 0.8)]);
        let eig = hermitian_eig(&p).unwrap();
        let q = eig.null_projector(1e-10);
        assert!((&p + &q).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(-1e-10, 1e-10).is_ok());
        assert!(Tolerance::new(1e-3, 1e-10).is_err());
        assert!(Tolerance::new(0.0, 0.0).is_err());
    }

    #[test]
    fn row_major_round_trip() {
        let entries = [c(1., 0.), c(2., 1.), c(3., -1.), c(4., 0.), c(5., 2.), c(6., 0.)];
        let m = ComplexMatrix::from_row_major(2, 3, &entries).unwrap();
        assert_eq!(m.get(0, 1), c(2., 1.));
        assert_eq!(m.get(1, 0), c(4., 0.));
        assert_eq!(m.to_row_major(), entries.to_vec());
    }
}
