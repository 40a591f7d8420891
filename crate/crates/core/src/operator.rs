//! Dense complex-Hermitian linear algebra: validated matrix newtypes,
//! eigendecomposition, unitary exponentials, and similarity transforms.
//!
//! Everything here is pure and deterministic on a fixed platform; callers may
//! freely share values across threads.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for Hermiticity / anti-Hermiticity / unitarity checks.
const SYMMETRY_TOL: f64 = 1e-12;

/// A square complex matrix validated to be Hermitian.
///
/// Entries are in angular-frequency units (hbar = 1). Row-major indexing via
/// [`HermitianMatrix::entry`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Validates Hermiticity within `1e-12 * max|entry|` and wraps the matrix.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                left: m.nrows(),
                right: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimension must be >= 1".into(),
            ));
        }
        let max_abs = m.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
        let tolerance = SYMMETRY_TOL * max_abs;
        let mut violation = 0.0_f64;
        for i in 0..m.nrows() {
            for j in i..m.ncols() {
                violation = violation.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if violation > tolerance {
            return Err(Error::NotHermitian {
                violation,
                tolerance,
            });
        }
        Ok(Self { inner: m })
    }

    /// Builds the matrix entry-wise and validates it.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        Self::new(DMatrix::from_fn(dim, dim, f))
    }

    /// Builds a real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        Self {
            inner: DMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    Complex64::new(diag[i], 0.0)
                } else {
                    Complex64::ZERO
                }
            }),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.inner
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }

    /// Real part of the trace (the imaginary part is zero for Hermitian input).
    pub fn trace(&self) -> f64 {
        self.inner.trace().re
    }
}

/// A square complex matrix validated to be unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    inner: DMatrix<Complex64>,
}

impl UnitaryMatrix {
    /// Validates `|U^dag U - I|_F < 1e-12 * dim` and wraps the matrix.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                left: m.nrows(),
                right: m.ncols(),
            });
        }
        let dim = m.nrows();
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimension must be >= 1".into(),
            ));
        }
        let gram = m.adjoint() * &m;
        let violation = (gram - DMatrix::<Complex64>::identity(dim, dim)).norm();
        let tolerance = SYMMETRY_TOL * dim as f64;
        if violation > tolerance {
            return Err(Error::NotUnitary {
                violation,
                tolerance,
            });
        }
        Ok(Self { inner: m })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn adjoint(&self) -> DMatrix<Complex64> {
        self.inner.adjoint()
    }
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Reassembles `V diag(lambda) V^dag`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let lam = DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            if i == j {
                Complex64::new(self.eigenvalues[i], 0.0)
            } else {
                Complex64::ZERO
            }
        });
        &self.eigenvectors * lam * self.eigenvectors.adjoint()
    }
}

/// Eigendecomposition with eigenvalues sorted ascending.
///
/// Deterministic on a fixed platform: the underlying tridiagonalization and
/// the sort ordering are fixed. Degenerate subspaces come back in an
/// arbitrary (but reproducible) orthonormal basis.
pub fn eig_hermitian(h: &HermitianMatrix) -> Spectrum {
    let se = h.as_matrix().clone().symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[a]
            .partial_cmp(&se.eigenvalues[b])
            .expect("eigenvalues are finite")
            .then(a.cmp(&b))
    });
    let eigenvalues = DVector::from_fn(n, |i, _| se.eigenvalues[order[i]]);
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &se.eigenvectors.column(src));
    }
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}

/// Exponential `exp(M)` of an anti-Hermitian matrix, computed through the
/// spectral decomposition of the Hermitian matrix `iM`.
pub fn expm_antihermitian(m: &DMatrix<Complex64>) -> Result<UnitaryMatrix> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            left: m.nrows(),
            right: m.ncols(),
        });
    }
    let norm = m.norm();
    let violation = (m + m.adjoint()).norm();
    let tolerance = SYMMETRY_TOL * norm;
    if violation > tolerance {
        return Err(Error::NotAntiHermitian {
            violation,
            tolerance,
        });
    }
    let i_m = m.map(|z| z * Complex64::i());
    let herm = HermitianMatrix::new(i_m).expect("iM is Hermitian when M is anti-Hermitian");
    let spec = eig_hermitian(&herm);
    // exp(M) = exp(-i (iM)) = V exp(-i lambda) V^dag
    let n = herm.dim();
    let phases = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, -spec.eigenvalues[i])
        } else {
            Complex64::ZERO
        }
    });
    let u = spec.eigenvectors() * phases * spec.eigenvectors().adjoint();
    UnitaryMatrix::new(u)
}

/// Computes `U^dag H U`. Trace and eigenvalue multiset are preserved.
pub fn similarity_transform(h: &HermitianMatrix, u: &UnitaryMatrix) -> Result<HermitianMatrix> {
    if h.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: u.dim(),
        });
    }
    let raw = u.adjoint() * h.as_matrix() * u.as_matrix();
    // Roundoff makes the product Hermitian only to machine precision;
    // averaging with the adjoint restores the invariant exactly.
    let sym = (&raw + raw.adjoint()).scale(0.5);
    HermitianMatrix::new(sym)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Term-by-term series oracle for the matrix exponential.
    fn expm_series(m: &DMatrix<Complex64>, terms: usize) -> DMatrix<Complex64> {
        let n = m.nrows();
        let mut acc = DMatrix::<Complex64>::identity(n, n);
        let mut power = DMatrix::<Complex64>::identity(n, n);
        for k in 1..=terms {
            power = &power * m / Complex64::new(k as f64, 0.0);
            acc += &power;
        }
        acc
    }

    #[test]
    fn rejects_non_hermitian() {
        let m =
            DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)]);
        match HermitianMatrix::new(m) {
            Err(Error::NotHermitian { violation, .. }) => {
                assert_abs_diff_eq!(violation, 0.5, epsilon = 1e-15);
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn identity_eigenvalues() {
        let h = HermitianMatrix::identity(2);
        let spec = eig_hermitian(&h);
        assert_abs_diff_eq!(spec.eigenvalues()[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(spec.eigenvalues()[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let h = HermitianMatrix::from_fn(2, |i, j| if i != j { c(1.0, 0.0) } else { c(0.0, 0.0) })
            .unwrap();
        let spec = eig_hermitian(&h);
        assert_abs_diff_eq!(spec.eigenvalues()[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(spec.eigenvalues()[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn two_resonator_star_matches_bright_dark_reduction() {
        // omega_r = 5, omega_a = 5.5, f = 0.1 (2pi GHz). The symmetric
        // resonator combination couples to the ancilla with sqrt(2) f; the
        // antisymmetric one is dark. Exact levels:
        //   omega_r - omega_a/2         (dark)
        //   omega_r/2 +- sqrt(delta^2 + 8 f^2)/2
        let (omega_r, omega_a, f) = (5.0, 5.5, 0.1);
        let h = HermitianMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 0) | (1, 1) => c(omega_r - omega_a / 2.0, 0.0),
            (2, 2) => c(omega_a / 2.0, 0.0),
            (0, 2) | (2, 0) | (1, 2) | (2, 1) => c(-f, 0.0),
            _ => c(0.0, 0.0),
        })
        .unwrap();
        let delta: f64 = omega_a - omega_r;
        let split = (delta * delta + 8.0 * f * f).sqrt();
        let mut expected = [
            omega_r - omega_a / 2.0,
            omega_r / 2.0 - split / 2.0,
            omega_r / 2.0 + split / 2.0,
        ];
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let spec = eig_hermitian(&h);
        for (got, want) in spec.eigenvalues().iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn expm_zero_is_identity() {
        let m = DMatrix::<Complex64>::zeros(3, 3);
        let u = expm_antihermitian(&m).unwrap();
        assert!((u.as_matrix() - DMatrix::<Complex64>::identity(3, 3)).norm() < 1e-14);
    }

    #[test]
    fn expm_planar_rotation() {
        let theta = 0.3_f64;
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(theta, 0.0), c(-theta, 0.0), c(0.0, 0.0)],
        );
        let u = expm_antihermitian(&m).unwrap();
        assert_abs_diff_eq!(u.entry(0, 0).re, theta.cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(u.entry(0, 1).re, theta.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(u.entry(1, 0).re, -theta.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(u.entry(1, 1).re, theta.cos(), epsilon = 1e-14);
    }

    #[test]
    fn expm_matches_series_oracle() {
        // Star-transform generator shape for a few (n, theta) pairs.
        for n in 1..=5usize {
            for &theta in &[0.1, 0.45, -0.3] {
                let dim = n + 1;
                let m = DMatrix::from_fn(dim, dim, |i, j| {
                    if j == n && i < n {
                        c(-theta, 0.0)
                    } else if i == n && j < n {
                        c(theta, 0.0)
                    } else {
                        c(0.0, 0.0)
                    }
                });
                let u = expm_antihermitian(&m).unwrap();
                let oracle = expm_series(&m, 30);
                assert!(
                    (u.as_matrix() - &oracle).norm() < 1e-12,
                    "n={n} theta={theta}"
                );
            }
        }
    }

    #[test]
    fn expm_rejects_non_antihermitian() {
        let m =
            DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            expm_antihermitian(&m),
            Err(Error::NotAntiHermitian { .. })
        ));
    }

    #[test]
    fn similarity_identity_cases() {
        let h = HermitianMatrix::from_fn(3, |i, j| c((i + j) as f64, 0.0)).unwrap();
        let got = similarity_transform(&h, &UnitaryMatrix::identity(3)).unwrap();
        assert!((got.as_matrix() - h.as_matrix()).norm() < 1e-14);

        let theta = 0.7_f64;
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(theta, 0.0), c(-theta, 0.0), c(0.0, 0.0)],
        );
        let u = expm_antihermitian(&m).unwrap();
        let id = HermitianMatrix::identity(2);
        let got = similarity_transform(&id, &u).unwrap();
        assert!((got.as_matrix() - id.as_matrix()).norm() < 1e-13);
    }

    #[test]
    fn similarity_dimension_mismatch() {
        let h = HermitianMatrix::identity(3);
        let u = UnitaryMatrix::identity(2);
        assert!(matches!(
            similarity_transform(&h, &u),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn spectrum_reconstructs_input() {
        let dim = 6;
        // Fixed pseudo-random Hermitian matrix.
        let mut seed = 0x2545f4914f6cdd1d_u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = DMatrix::from_fn(dim, dim, |_, _| c(next(), next()));
        let h = HermitianMatrix::new((&a + a.adjoint()).scale(0.5)).unwrap();
        let spec = eig_hermitian(&h);
        let err = (spec.reconstruct() - h.as_matrix()).norm();
        assert!(err < 1e-10 * h.frobenius_norm().max(1.0));
        // Residual per eigenpair.
        for i in 0..dim {
            let v = spec.eigenvectors().column(i);
            let residual =
                (h.as_matrix() * v - v.scale(1.0) * c(spec.eigenvalues()[i], 0.0)).norm();
            assert!(residual < 1e-10 * h.frobenius_norm());
        }
    }
}
