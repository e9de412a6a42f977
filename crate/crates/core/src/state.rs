//! Bloch vectors and validated one- and two-qubit density matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{half_trace_norm, hermitian_eigen, Mat2, Mat4, Matrix};
use crate::pauli::{pauli_matrix, sigma_dot, sigmas, Pauli, PauliCoefficients};
use crate::scalar::Real;

/// Real 3-vector parameterizing a qubit state as (𝟙 + m·σ)/2.
///
/// Serialized as `[x, y, z]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[T; 3]", into = "[T; 3]")]
#[serde(bound = "T: Real")]
pub struct BlochVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> From<[T; 3]> for BlochVector<T> {
    fn from([x, y, z]: [T; 3]) -> Self {
        Self { x, y, z }
    }
}

impl<T> From<BlochVector<T>> for [T; 3] {
    fn from(v: BlochVector<T>) -> Self {
        [v.x, v.y, v.z]
    }
}

impl<T: Real> BlochVector<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn unit_x() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn unit_y() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn unit_z() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn to_array(self) -> [T; 3] {
        self.into()
    }

    pub fn norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn scaled(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Fails unless |m| ≤ 1 + tol.
    pub fn require_physical(self) -> Result<Self> {
        let norm = self.norm();
        if !self.is_finite() || norm > T::one() + T::state_tol() {
            return Err(Error::InvalidBloch {
                norm: norm.as_f64(),
                expected: "at most 1",
            });
        }
        Ok(self)
    }

    /// Fails unless |m| = 1 within tol. Pure-state directions only.
    pub fn require_unit(self) -> Result<Self> {
        let norm = self.norm();
        if !self.is_finite() || (norm - T::one()).abs() > T::state_tol() {
            return Err(Error::InvalidBloch {
                norm: norm.as_f64(),
                expected: "unit norm",
            });
        }
        Ok(self)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl<T: Real> std::ops::Neg for BlochVector<T> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scaled(-T::one())
    }
}

/// Validated qubit density matrix: Hermitian, unit trace, positive (all within tol).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
#[serde(bound = "T: Real")]
pub struct OneQubitState<T: Real> {
    matrix: Mat2<T>,
}

impl<T: Real> OneQubitState<T> {
    pub fn new(matrix: Mat2<T>) -> Result<Self> {
        check_hermitian_unit_trace(&matrix)?;
        let min = hermitian_eigen(&matrix)?.values[1];
        if min < -T::state_tol() {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:e}",
                min.as_f64()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.matrix
    }

    pub fn bloch(&self) -> BlochVector<T> {
        density_to_bloch(self)
    }

    pub fn purity(&self) -> T {
        (self.matrix * self.matrix).trace().re
    }
}

/// Two-qubit Hermitian unit-trace operator. Positivity is deliberately not
/// required: the cloner family is explored across its non-positive members.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
#[serde(bound = "T: Real")]
pub struct TwoQubitState<T: Real> {
    matrix: Mat4<T>,
}

impl<T: Real> TwoQubitState<T> {
    pub fn new(matrix: Mat4<T>) -> Result<Self> {
        check_hermitian_unit_trace(&matrix)?;
        Ok(Self { matrix })
    }

    /// Product state ρ ⊗ σ.
    pub fn product(first: &OneQubitState<T>, second: &OneQubitState<T>) -> Self {
        Self {
            matrix: crate::pauli::tensor(first.matrix(), second.matrix()),
        }
    }

    /// Pure state from a normalized 4-component amplitude vector.
    pub fn pure(amplitudes: [num_complex::Complex<T>; 4]) -> Result<Self> {
        Self::new(Matrix::from_fn(|i, j| amplitudes[i] * amplitudes[j].conj()))
    }

    pub(crate) fn from_matrix_unchecked(matrix: Mat4<T>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> [T; 4] {
        hermitian_eigenvalues4(&self.matrix).expect("validated state is finite and Hermitian")
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues()[3]
    }

    pub fn is_positive(&self) -> bool {
        self.min_eigenvalue() >= -T::feasibility_tol()
    }

    pub fn pauli(&self) -> PauliCoefficients<T> {
        pauli_decompose(self)
    }

    pub fn partial_trace(&self, keep: Qubit) -> Result<OneQubitState<T>> {
        partial_trace(self, keep)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.matrix - other.matrix).max_abs()
    }
}

fn check_hermitian_unit_trace<T: Real, const N: usize>(m: &Matrix<T, N, N>) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::NonFinite("density matrix"));
    }
    let herm = m.hermitian_residual();
    if herm > T::state_tol() {
        return Err(Error::InvalidState(format!(
            "not Hermitian (residual {:e})",
            herm.as_f64()
        )));
    }
    let tr = m.trace();
    if (tr.re - T::one()).abs() > T::state_tol() || tr.im.abs() > T::state_tol() {
        return Err(Error::InvalidState(format!(
            "trace {} + {}i is not 1",
            tr.re, tr.im
        )));
    }
    Ok(())
}

/// (𝟙 + m·σ)/2.
pub fn bloch_to_density<T: Real>(m: BlochVector<T>) -> Result<OneQubitState<T>> {
    let m = m.require_physical()?;
    let half = T::lit(0.5);
    let matrix = (pauli_matrix::<T>(Pauli::I) + sigma_dot(m.to_array())).scale(half);
    Ok(OneQubitState { matrix })
}

/// m_j = Tr(ρ σ_j).
pub fn density_to_bloch<T: Real>(rho: &OneQubitState<T>) -> BlochVector<T> {
    let [x, y, z] = sigmas::<T>().map(|s| (*rho.matrix() * s).trace().re);
    BlochVector::new(x, y, z)
}

pub fn pauli_decompose<T: Real>(rho: &TwoQubitState<T>) -> PauliCoefficients<T> {
    PauliCoefficients::decompose(rho.matrix())
}

/// Inverse of [`pauli_decompose`]. Fails if the coefficients do not describe a
/// unit-trace operator (`c00 ≠ 1`).
pub fn pauli_reconstruct<T: Real>(coeffs: &PauliCoefficients<T>) -> Result<TwoQubitState<T>> {
    TwoQubitState::new(coeffs.to_matrix())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Qubit {
    First,
    Second,
}

/// Reduced state of one qubit. Errors only when the input is non-positive in a
/// way that makes the reduced operator non-positive too.
pub fn partial_trace<T: Real>(rho: &TwoQubitState<T>, keep: Qubit) -> Result<OneQubitState<T>> {
    OneQubitState::new(partial_trace_matrix(rho.matrix(), keep))
}

pub(crate) fn partial_trace_matrix<T: Real>(m: &Mat4<T>, keep: Qubit) -> Mat2<T> {
    // Basis index = 2·(qubit 1) + (qubit 2).
    Matrix::from_fn(|i, j| match keep {
        Qubit::First => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
        Qubit::Second => m[(i, j)] + m[(i + 2, j + 2)],
    })
}

/// Four eigenvalues of a Hermitian 4×4 matrix, descending.
pub fn hermitian_eigenvalues4<T: Real>(m: &Mat4<T>) -> Result<[T; 4]> {
    Ok(hermitian_eigen(m)?.values)
}

/// Tr(ρ_in · clone) for a pure input.
pub fn overlap_fidelity<T: Real>(rho_in: &OneQubitState<T>, clone: &OneQubitState<T>) -> Result<T> {
    let norm = rho_in.bloch().norm();
    if (norm - T::one()).abs() > T::state_tol() {
        return Err(Error::RequiresPureInput {
            norm: norm.as_f64(),
        });
    }
    Ok((*rho_in.matrix() * *clone.matrix()).trace().re)
}

/// ½ Σ |λ(ρ − σ)|.
pub fn trace_distance<T: Real>(rho: &TwoQubitState<T>, sigma: &TwoQubitState<T>) -> T {
    half_trace_norm(&(*rho.matrix() - *sigma.matrix()))
        .expect("difference of validated states is finite and Hermitian")
}
