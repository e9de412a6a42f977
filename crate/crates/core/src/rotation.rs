//! SU(2) unitaries and the rotations they induce on Bloch vectors.
//!
//! The sign convention is fixed by `R_jk = ½ Tr(σ_j U σ_k U†)`, so that
//! `U (m·σ) U† = (R m)·σ`. With this convention `exp(-iθ n·σ/2)` rotates
//! Bloch vectors by `+θ` about `n` (right-handed).

use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::linalg::Mat2;
use crate::pauli::{imag_unit, pauli_matrix, sigma_dot, sigmas, Pauli};
use crate::scalar::Real;
use crate::state::BlochVector;

/// A qubit unitary together with its Bloch-sphere rotation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct Rotation<T: Real> {
    pub unitary: Mat2<T>,
    pub matrix: [[T; 3]; 3],
}

impl<T: Real> Rotation<T> {
    pub fn identity() -> Self {
        Self::from_unitary(Mat2::identity())
    }

    /// Derives the SO(3) matrix of a 2×2 unitary.
    pub fn from_unitary(unitary: Mat2<T>) -> Self {
        let s = sigmas::<T>();
        let udag = unitary.adjoint();
        let half = T::lit(0.5);
        let matrix = std::array::from_fn(|j| {
            std::array::from_fn(|k| (s[j] * unitary * s[k] * udag).trace().re * half)
        });
        Self { unitary, matrix }
    }

    /// `exp(-iθ n·σ/2)`; `axis` must be a unit vector.
    pub fn about_axis(axis: BlochVector<T>, angle: T) -> Self {
        let half = angle * T::lit(0.5);
        let generator = sigma_dot(axis.to_array());
        let u = pauli_matrix::<T>(Pauli::I).scale(half.cos())
            - generator.scale_complex(imag_unit::<T>() * half.sin());
        Self::from_unitary(u)
    }

    /// The rotation taking ẑ to the unit vector `m` along the shortest geodesic:
    /// axis ẑ×m, angle arccos(m_z). For m = −ẑ the axis is x̂ (angle π).
    pub fn taking_z_to(m: BlochVector<T>) -> Self {
        let s = (m.x * m.x + m.y * m.y).sqrt();
        if s <= T::epsilon() {
            return if m.z > T::zero() {
                Self::identity()
            } else {
                Self::about_axis(BlochVector::unit_x(), T::PI())
            };
        }
        let axis = BlochVector::new(-m.y / s, m.x / s, T::zero());
        Self::about_axis(axis, s.atan2(m.z))
    }

    pub fn apply(&self, v: BlochVector<T>) -> BlochVector<T> {
        let v = v.to_array();
        let r = &self.matrix;
        let [x, y, z] = std::array::from_fn(|j| r[j][0] * v[0] + r[j][1] * v[1] + r[j][2] * v[2]);
        BlochVector::new(x, y, z)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::from_unitary(self.unitary * other.unitary)
    }

    /// R t Rᵀ, the action on a two-qubit correlation tensor under U⊗U.
    pub fn conjugate_tensor(&self, t: &[[T; 3]; 3]) -> [[T; 3]; 3] {
        let r = &self.matrix;
        std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                let mut acc = T::zero();
                for j in 0..3 {
                    for k in 0..3 {
                        acc = acc + r[a][j] * t[j][k] * r[b][k];
                    }
                }
                acc
            })
        })
    }
}

/// Haar-random SU(2) element: four standard normals normalized to a unit
/// quaternion q, mapped to `q0·𝟙 + i(q1 σx + q2 σy + q3 σz)`.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Mat2<T> {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n < 1e-12 {
            continue;
        }
        let [a, b, c, d] = q.map(|v| T::lit(v / n));
        return Mat2::from_rows([
            [Complex::new(a, d), Complex::new(c, b)],
            [Complex::new(-c, b), Complex::new(a, -d)],
        ]);
    }
}

/// Haar-random rotation, a pure function of `seed` (ChaCha8 stream).
pub fn random_rotation<T: Real>(seed: u64) -> Rotation<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Rotation::from_unitary(haar_unitary(&mut rng))
}

/// Haar-random point on the unit sphere, via a Haar rotation of ẑ.
pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(rng: &mut R) -> BlochVector<T> {
    Rotation::from_unitary(haar_unitary::<T, R>(rng)).apply(BlochVector::unit_z())
}
