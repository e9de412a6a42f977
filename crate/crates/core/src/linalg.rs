//! Small dense complex matrices and a Hermitian Jacobi eigensolver.
//!
//! Sizes are const generics; the crate only ever uses 2×2, 4×4, 8×8 and the
//! 8×2 cloning isometry, so everything is stack-allocated and `Copy`.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Sweep cap for the Jacobi eigensolver.
pub const MAX_JACOBI_SWEEPS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<T, const R: usize, const C: usize> {
    data: [[Complex<T>; C]; R],
}

pub type Mat2<T> = Matrix<T, 2, 2>;
pub type Mat4<T> = Matrix<T, 4, 4>;
pub type Mat8<T> = Matrix<T, 8, 8>;

impl<T: Real, const R: usize, const C: usize> Matrix<T, R, C> {
    pub fn zeros() -> Self {
        Self {
            data: [[Complex::zero(); C]; R],
        }
    }

    pub fn from_rows(data: [[Complex<T>; C]; R]) -> Self {
        Self { data }
    }

    /// Builds a real-valued matrix.
    pub fn from_real(rows: [[T; C]; R]) -> Self {
        Self::from_fn(|i, j| Complex::new(rows[i][j], T::zero()))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros();
        for i in 0..R {
            for j in 0..C {
                m.data[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> &[[Complex<T>; C]; R] {
        &self.data
    }

    pub fn adjoint(&self) -> Matrix<T, C, R> {
        Matrix::from_fn(|i, j| self.data[j][i].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.data[i][j].conj())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.data[i][j] * s)
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        Self::from_fn(|i, j| self.data[i][j] * s)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm())
            .fold(T::zero(), T::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .flat_map(|row| row.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn column(&self, j: usize) -> [Complex<T>; R] {
        std::array::from_fn(|i| self.data[i][j])
    }
}

impl<T: Real, const N: usize> Matrix<T, N, N> {
    pub fn identity() -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Complex::one()
            } else {
                Complex::zero()
            }
        })
    }

    pub fn diag(values: [T; N]) -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Complex::new(values[i], T::zero())
            } else {
                Complex::zero()
            }
        })
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N)
            .map(|i| self.data[i][i])
            .fold(Complex::zero(), |a, b| a + b)
    }

    /// max |a_ij − conj(a_ji)|.
    pub fn hermitian_residual(&self) -> T {
        let mut r = T::zero();
        for i in 0..N {
            for j in i..N {
                r = r.max((self.data[i][j] - self.data[j][i].conj()).norm());
            }
        }
        r
    }

    /// (A + A†)/2.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(|i, j| (self.data[i][j] + self.data[j][i].conj()) * half)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }
}

impl<T, const R: usize, const C: usize> Index<(usize, usize)> for Matrix<T, R, C> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i][j]
    }
}

impl<T, const R: usize, const C: usize> IndexMut<(usize, usize)> for Matrix<T, R, C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i][j]
    }
}

impl<T: Real, const R: usize, const K: usize, const C: usize> Mul<Matrix<T, K, C>>
    for Matrix<T, R, K>
{
    type Output = Matrix<T, R, C>;
    fn mul(self, rhs: Matrix<T, K, C>) -> Matrix<T, R, C> {
        Matrix::from_fn(|i, j| {
            (0..K)
                .map(|k| self.data[i][k] * rhs.data[k][j])
                .fold(Complex::zero(), |a, b| a + b)
        })
    }
}

impl<T: Real, const R: usize, const C: usize> Add for Matrix<T, R, C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.data[i][j] + rhs.data[i][j])
    }
}

impl<T: Real, const R: usize, const C: usize> Sub for Matrix<T, R, C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.data[i][j] - rhs.data[i][j])
    }
}

impl<T: Real, const R: usize, const C: usize> Neg for Matrix<T, R, C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.data[i][j])
    }
}

/// Rows of `[re, im]` pairs.
impl<T: Real, const R: usize, const C: usize> Serialize for Matrix<T, R, C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(R))?;
        for row in &self.data {
            let pairs: Vec<[T; 2]> = row.iter().map(|z| [z.re, z.im]).collect();
            rows.serialize_element(&pairs)?;
        }
        rows.end()
    }
}

/// Kronecker product of two 2×2 matrices; `a` is the left (most significant) factor.
pub fn kron2<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat4<T> {
    Matrix::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// Kronecker product of a 4×4 and a 2×2 matrix.
pub fn kron4x2<T: Real>(a: &Mat4<T>, b: &Mat2<T>) -> Mat8<T> {
    Matrix::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// Half the trace norm of a Hermitian matrix, ½·Σ|λ|.
pub fn half_trace_norm<T: Real, const N: usize>(m: &Matrix<T, N, N>) -> Result<T> {
    let eig = hermitian_eigen(m)?;
    Ok(T::lit(0.5) * eig.values.iter().map(|v| v.abs()).sum::<T>())
}

/// Eigen-decomposition of a Hermitian matrix. Values are in descending order and
/// column `k` of `vectors` is the eigenvector for `values[k]`.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen<T, const N: usize> {
    pub values: [T; N],
    pub vectors: Matrix<T, N, N>,
}

impl<T: Real, const N: usize> HermitianEigen<T, N> {
    /// Σ_k f(λ_k) |v_k⟩⟨v_k|.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> T) -> Matrix<T, N, N> {
        let mut out = Matrix::zeros();
        for k in 0..N {
            let w = f(self.values[k]);
            if w == T::zero() {
                continue;
            }
            for i in 0..N {
                for j in 0..N {
                    out[(i, j)] =
                        out[(i, j)] + self.vectors[(i, k)] * self.vectors[(j, k)].conj() * w;
                }
            }
        }
        out
    }
}

fn off_diagonal_norm<T: Real, const N: usize>(a: &Matrix<T, N, N>) -> T {
    let mut s = T::zero();
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation. Iterates until
/// the off-diagonal Frobenius norm falls below `jacobi_tol · max(1, ‖A‖_F)`.
pub fn hermitian_eigen<T: Real, const N: usize>(
    m: &Matrix<T, N, N>,
) -> Result<HermitianEigen<T, N>> {
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix"));
    }
    let scale = T::one().max(m.frobenius_norm());
    let residual = m.hermitian_residual();
    if residual > T::state_tol() * scale {
        return Err(Error::NotHermitian {
            residual: residual.as_f64(),
        });
    }

    let mut a = m.hermitian_part();
    let mut v = Matrix::<T, N, N>::identity();
    let threshold = T::jacobi_tol() * scale;
    let mut converged = false;

    for _ in 0..MAX_JACOBI_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == T::zero() {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;

                // tan θ for the 2×2 real problem [[app, r], [r, aqq]], small-angle root.
                let zeta = (aqq - app) / (r + r);
                let tan = if zeta == T::zero() {
                    T::one()
                } else {
                    zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let c = T::one() / (T::one() + tan * tan).sqrt();
                let s = tan * c;

                // U = diag(1, e^{-iφ}) · [[c, s], [-s, c]] embedded at (p, q).
                let e = phase.conj();
                let mut u = Matrix::<T, N, N>::identity();
                u[(p, p)] = Complex::new(c, T::zero());
                u[(p, q)] = Complex::new(s, T::zero());
                u[(q, p)] = e * (-s);
                u[(q, q)] = e * c;

                a = u.adjoint() * a * u;
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                v = v * u;
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::NoConvergence {
            sweeps: MAX_JACOBI_SWEEPS,
        });
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .re
            .partial_cmp(&a[(i, i)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let values = std::array::from_fn(|k| a[(order[k], order[k])].re);
    let vectors = Matrix::from_fn(|i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn diagonal_input_returns_sorted_diagonal_exactly() {
        let m = Mat4::<f64>::diag([0.0, 2.0 / 3.0, 0.0, 1.0 / 3.0]);
        let eig = hermitian_eigen(&m).unwrap();
        assert_eq!(eig.values, [2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0]);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut m = Mat2::<f64>::identity();
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            hermitian_eigen(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn non_finite_is_rejected() {
        let mut m = Mat2::<f64>::identity();
        m[(0, 0)] = c(f64::NAN, 0.0);
        assert_eq!(hermitian_eigen(&m).unwrap_err(), Error::NonFinite("matrix"));
    }

    #[test]
    fn eigenvectors_diagonalize_complex_hermitian() {
        let m = Mat4::<f64>::from_rows([
            [c(1.0, 0.0), c(0.5, 0.3), c(0.0, -0.2), c(0.1, 0.0)],
            [c(0.5, -0.3), c(-0.4, 0.0), c(0.7, 0.7), c(0.0, 0.25)],
            [c(0.0, 0.2), c(0.7, -0.7), c(0.2, 0.0), c(-0.3, 0.1)],
            [c(0.1, 0.0), c(0.0, -0.25), c(-0.3, -0.1), c(0.9, 0.0)],
        ]);
        let eig = hermitian_eigen(&m).unwrap();
        let d = eig.vectors.adjoint() * m * eig.vectors;
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { eig.values[i] } else { 0.0 };
                assert_abs_diff_eq!(d[(i, j)].re, expected, epsilon = 1e-12);
                assert_abs_diff_eq!(d[(i, j)].im, 0.0, epsilon = 1e-12);
            }
        }
        let unitarity = (eig.vectors.adjoint() * eig.vectors - Mat4::identity()).max_abs();
        assert!(unitarity < 1e-12);
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        assert_abs_diff_eq!(
            eig.values.iter().sum::<f64>(),
            m.trace().re,
            epsilon = 1e-12
        );
    }

    #[test]
    fn degenerate_spectrum_converges() {
        // σx ⊗ σx + σy ⊗ σy has eigenvalues (2, 0, 0, -2).
        let m = Mat4::<f64>::from_real([
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 2.0, 0.0],
            [0.0, 2.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        let eig = hermitian_eigen(&m).unwrap();
        assert_abs_diff_eq!(eig.values[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[3], -2.0, epsilon = 1e-14);
    }

    #[test]
    fn f32_solver_works() {
        let m = Mat2::<f32>::from_real([[2.0, 1.0], [1.0, 2.0]]);
        let eig = hermitian_eigen(&m).unwrap();
        assert!((eig.values[0] - 3.0).abs() < 1e-5);
        assert!((eig.values[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn kron_ordering_puts_first_factor_most_significant() {
        let z = Mat2::<f64>::diag([1.0, -1.0]);
        let id = Mat2::<f64>::identity();
        let zi = kron2(&z, &id);
        let diag: Vec<f64> = (0..4).map(|i| zi[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn serializes_as_re_im_pairs() {
        let m = Mat2::<f64>::from_rows([[c(1.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.5, 0.0)]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[[1.0,0.0],[0.0,-1.0]],[[0.0,1.0],[0.5,0.0]]]");
    }
}
