//! The Bužek–Hillery universal symmetric 1→2 qubit cloner.
//!
//! Realized as an isometry V from the input qubit into clone 1 ⊗ clone 2 ⊗
//! ancilla (ancilla last, least significant). On the computational basis:
//!
//! ```text
//! V|0⟩ = √(2/3)|00⟩|0⟩ + √(1/6)(|01⟩ + |10⟩)|1⟩
//! V|1⟩ = √(2/3)|11⟩|1⟩ + √(1/6)(|01⟩ + |10⟩)|0⟩
//! ```
//!
//! Equivalently V = √(4/3)·(Π_sym ⊗ 𝟙)(𝟙 ⊗ |Φ⁺⟩), with Π_sym the projector on
//! the symmetric subspace of the clones and |Φ⁺⟩ = (|00⟩+|11⟩)/√2 shared
//! between clone 2 and the ancilla. Since (U⊗Ū)|Φ⁺⟩ = |Φ⁺⟩, the machine is
//! covariant: (U⊗U⊗Ū)V = VU. The ancilla ends up holding the anti-clone and is
//! traced out immediately.

use num_complex::Complex;

use crate::cloner::{covariance_constraint_residual, ClonerParams};
use crate::error::{Error, Result};
use crate::linalg::{Mat4, Mat8, Matrix};
use crate::scalar::Real;
use crate::state::{bloch_to_density, BlochVector, OneQubitState, TwoQubitState};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CloneIsometry<T> {
    pub matrix: Matrix<T, 8, 2>,
}

impl<T: Real> CloneIsometry<T> {
    /// ‖V†V − 𝟙₂‖_max.
    pub fn isometry_residual(&self) -> T {
        (self.matrix.adjoint() * self.matrix - Matrix::<T, 2, 2>::identity()).max_abs()
    }

    /// V|ψ⟩ for a two-component amplitude vector.
    pub fn apply(&self, psi: [Complex<T>; 2]) -> [Complex<T>; 8] {
        std::array::from_fn(|i| self.matrix[(i, 0)] * psi[0] + self.matrix[(i, 1)] * psi[1])
    }
}

pub fn bh_isometry<T: Real>() -> CloneIsometry<T> {
    let big = T::lit(2.0 / 3.0).sqrt();
    let small = T::lit(1.0 / 6.0).sqrt();
    let mut m = Matrix::<T, 8, 2>::zeros();
    let re = |v: T| Complex::new(v, T::zero());
    // Row index = 4·clone1 + 2·clone2 + ancilla.
    m[(0b000, 0)] = re(big);
    m[(0b011, 0)] = re(small);
    m[(0b101, 0)] = re(small);
    m[(0b111, 1)] = re(big);
    m[(0b010, 1)] = re(small);
    m[(0b100, 1)] = re(small);
    CloneIsometry { matrix: m }
}

/// Traces out the last (least significant) qubit of an 8×8 operator.
pub(crate) fn trace_out_ancilla<T: Real>(m: &Mat8<T>) -> Mat4<T> {
    Matrix::from_fn(|i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)])
}

/// Tr_ancilla(V ρ V†).
pub fn bh_clone<T: Real>(rho_in: &OneQubitState<T>) -> TwoQubitState<T> {
    let v = bh_isometry::<T>().matrix;
    let full: Mat8<T> = v * *rho_in.matrix() * v.adjoint();
    TwoQubitState::from_matrix_unchecked(trace_out_ancilla(&full).hermitian_part())
}

/// Reads `(η, t, t_xy)` off the Pauli decomposition of `bh_clone(|↑⟩)`,
/// failing if any coefficient outside the constrained family is non-zero.
pub fn bh_family_point<T: Real>() -> Result<ClonerParams<T>> {
    let up = bloch_to_density(BlochVector::unit_z())?;
    let c = bh_clone(&up).pauli();
    let t = c.t;
    let residual = [
        c.a[0],
        c.a[1],
        c.b[0],
        c.b[1],
        c.a[2] - c.b[2],
        c.c00 - T::one(),
        t[2][2] - t[0][0],
        covariance_constraint_residual(&t),
    ]
    .into_iter()
    .map(T::abs)
    .fold(T::zero(), T::max);
    if residual > T::exact_tol() {
        return Err(Error::NotInFamily {
            residual: residual.as_f64(),
        });
    }
    ClonerParams::new(c.a[2], t[2][2], t[0][1])
}
