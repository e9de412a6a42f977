//! Pauli matrices and the Pauli-basis view of two-qubit operators.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::linalg::{kron2, Mat2, Mat4, Matrix};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// x, y, z in that order.
    pub const XYZ: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];
}

pub fn pauli_matrix<T: Real>(index: Pauli) -> Mat2<T> {
    let o = T::zero();
    let l = T::one();
    let c = Complex::new;
    match index {
        Pauli::I => Matrix::from_rows([[c(l, o), c(o, o)], [c(o, o), c(l, o)]]),
        Pauli::X => Matrix::from_rows([[c(o, o), c(l, o)], [c(l, o), c(o, o)]]),
        Pauli::Y => Matrix::from_rows([[c(o, o), c(o, -l)], [c(o, l), c(o, o)]]),
        Pauli::Z => Matrix::from_rows([[c(l, o), c(o, o)], [c(o, o), c(-l, o)]]),
    }
}

/// σ_x, σ_y, σ_z.
pub fn sigmas<T: Real>() -> [Mat2<T>; 3] {
    Pauli::XYZ.map(pauli_matrix)
}

/// m·σ for a real 3-vector.
pub fn sigma_dot<T: Real>(m: [T; 3]) -> Mat2<T> {
    let [sx, sy, sz] = sigmas::<T>();
    sx.scale(m[0]) + sy.scale(m[1]) + sz.scale(m[2])
}

/// Kronecker product; `a` acts on qubit 1, the leftmost factor.
pub fn tensor<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat4<T> {
    kron2(a, b)
}

/// Real coefficients of a Hermitian 4×4 operator in the two-qubit Pauli basis:
///
/// ρ = ¼ (c00·𝟙⊗𝟙 + Σ_j a_j σ_j⊗𝟙 + Σ_k b_k 𝟙⊗σ_k + Σ_jk t_jk σ_j⊗σ_k)
///
/// The ¼ is kept outside, so every coefficient is an expectation value
/// (`t_jk = Tr(ρ σ_j⊗σ_k)`) and `c00 = Tr ρ = 1` for states. With this
/// normalization a symmetric cloner output has `a = b = η·m`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliCoefficients<T> {
    pub c00: T,
    pub a: [T; 3],
    pub b: [T; 3],
    pub t: [[T; 3]; 3],
}

impl<T: Real> PauliCoefficients<T> {
    pub fn decompose(rho: &Mat4<T>) -> Self {
        let id = pauli_matrix::<T>(Pauli::I);
        let s = sigmas::<T>();
        let expect = |op: Mat4<T>| (*rho * op).trace().re;
        Self {
            c00: expect(tensor(&id, &id)),
            a: std::array::from_fn(|j| expect(tensor(&s[j], &id))),
            b: std::array::from_fn(|k| expect(tensor(&id, &s[k]))),
            t: std::array::from_fn(|j| std::array::from_fn(|k| expect(tensor(&s[j], &s[k])))),
        }
    }

    pub fn to_matrix(&self) -> Mat4<T> {
        let id = pauli_matrix::<T>(Pauli::I);
        let s = sigmas::<T>();
        let mut m = tensor(&id, &id).scale(self.c00);
        for j in 0..3 {
            m = m + tensor(&s[j], &id).scale(self.a[j]);
            m = m + tensor(&id, &s[j]).scale(self.b[j]);
            for k in 0..3 {
                m = m + tensor(&s[j], &s[k]).scale(self.t[j][k]);
            }
        }
        m.scale(T::lit(0.25))
    }

    /// Largest absolute difference to another coefficient set.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut d = (self.c00 - other.c00).abs();
        for j in 0..3 {
            d = d.max((self.a[j] - other.a[j]).abs());
            d = d.max((self.b[j] - other.b[j]).abs());
            for k in 0..3 {
                d = d.max((self.t[j][k] - other.t[j][k]).abs());
            }
        }
        d
    }
}

impl<T: Real> Default for PauliCoefficients<T> {
    fn default() -> Self {
        Self {
            c00: T::zero(),
            a: [T::zero(); 3],
            b: [T::zero(); 3],
            t: [[T::zero(); 3]; 3],
        }
    }
}

/// Complex scalar `i`.
pub(crate) fn imag_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}
