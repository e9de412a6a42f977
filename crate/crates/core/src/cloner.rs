//! The covariant family of symmetric 1→2 cloner output states.
//!
//! For a pure input with Bloch vector `m`, a symmetric cloner whose clones are
//! both shrunk by `η` produces
//!
//! ```text
//! ρ_out(m) = ¼ (𝟙 + η (m·σ ⊗ 𝟙 + 𝟙 ⊗ m·σ) + Σ_jk t_jk σ_j ⊗ σ_k)
//! ```
//!
//! Covariance under U⊗U reduces the correlation tensor for `m = ẑ` to
//! `t_xx = t_yy`, `t_xy = −t_yx`, no xz/yz couplings; requiring the ẑ and x̂
//! mixtures to produce the same average output then forces `t_zz = t_xx`.
//! What remains is [`ClonerParams`]: `(η, t, t_xy)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{half_trace_norm, Mat4};
use crate::pauli::{imag_unit, pauli_matrix, sigma_dot, tensor, Pauli, PauliCoefficients};
use crate::rotation::Rotation;
use crate::scalar::Real;
use crate::state::{BlochVector, TwoQubitState};

/// Default number of equally spaced angles for the axial-symmetry check.
pub const DEFAULT_AXIAL_ANGLES: usize = 32;

/// Unconstrained output-state parameters: shrink factor and the full 3×3
/// correlation tensor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct GeneralClonerParams<T> {
    pub eta: T,
    pub t: [[T; 3]; 3],
}

impl<T: Real> GeneralClonerParams<T> {
    pub fn new(eta: T, t: [[T; 3]; 3]) -> Result<Self> {
        Self { eta, t }.validated()
    }

    pub fn diagonal(eta: T, diag: [T; 3]) -> Result<Self> {
        let mut t = [[T::zero(); 3]; 3];
        for (j, d) in diag.into_iter().enumerate() {
            t[j][j] = d;
        }
        Self::new(eta, t)
    }

    /// Checks finiteness and |η|, |t_jk| ≤ 1.
    pub fn validated(self) -> Result<Self> {
        let entries = std::iter::once(self.eta).chain(self.t.iter().flatten().copied());
        for v in entries {
            if !v.is_finite() {
                return Err(Error::NonFinite("cloner parameters"));
            }
            if v.abs() > T::one() + T::exact_tol() {
                return Err(Error::InvalidParams(format!(
                    "|{}| exceeds 1 (eta and every t_jk must lie in [-1, 1])",
                    v
                )));
            }
        }
        Ok(self)
    }
}

/// The covariant, no-signaling family: `t_xx = t_yy = t_zz = t`,
/// `t_xy = −t_yx`, all other couplings zero (in the frame where m = ẑ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ClonerParams<T> {
    pub eta: T,
    pub t: T,
    pub t_xy: T,
}

impl<T: Real> ClonerParams<T> {
    pub fn new(eta: T, t: T, t_xy: T) -> Result<Self> {
        Self { eta, t, t_xy }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if [self.eta, self.t, self.t_xy].iter().all(|v| v.is_finite()) {
            Ok(self)
        } else {
            Err(Error::NonFinite("cloner parameters"))
        }
    }

    /// Correlation tensor of ρ_out(m): `t·𝟙 + t_xy·[m]_×`, where
    /// `([m]_×)_jk = ε_jkl m_l`. For m = ẑ this is the familiar
    /// `[[t, t_xy, 0], [−t_xy, t, 0], [0, 0, t]]`.
    pub fn correlation_tensor(&self, m: BlochVector<T>) -> [[T; 3]; 3] {
        let (t, k) = (self.t, self.t_xy);
        [
            [t, k * m.z, -k * m.y],
            [-k * m.z, t, k * m.x],
            [k * m.y, -k * m.x, t],
        ]
    }

    /// The general-parameter view of this family member for input `m`.
    pub fn embed(&self, m: BlochVector<T>) -> GeneralClonerParams<T> {
        GeneralClonerParams {
            eta: self.eta,
            t: self.correlation_tensor(m),
        }
    }
}

/// Anything that defines ρ_out(ẑ); outputs for other inputs follow by covariance.
pub trait CovariantCloner<T: Real> {
    fn output_z(&self) -> Result<TwoQubitState<T>>;

    fn eta(&self) -> T;

    /// ρ_out(m) = U⊗U ρ_out(ẑ) U†⊗U† with U from [`Rotation::taking_z_to`].
    fn output(&self, m: BlochVector<T>) -> Result<TwoQubitState<T>> {
        rotate_output(&self.output_z()?, m)
    }
}

impl<T: Real> CovariantCloner<T> for ClonerParams<T> {
    fn output_z(&self) -> Result<TwoQubitState<T>> {
        Ok(output_state_z(self))
    }

    fn eta(&self) -> T {
        self.eta
    }
}

impl<T: Real> CovariantCloner<T> for GeneralClonerParams<T> {
    /// `t` is read as the correlation tensor of ρ_out(ẑ).
    fn output_z(&self) -> Result<TwoQubitState<T>> {
        general_output_state(self, BlochVector::unit_z())
    }

    fn eta(&self) -> T {
        self.eta
    }
}

/// Either parameterization. JSON: `{"eta", "t", "t_xy"}` with scalar `t`, or
/// `{"eta", "t"}` with a 3×3 `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, bound = "T: Real")]
pub enum AnyClonerParams<T> {
    Family(ClonerParams<T>),
    General(GeneralClonerParams<T>),
}

impl<T: Real> AnyClonerParams<T> {
    pub fn validated(self) -> Result<Self> {
        Ok(match self {
            Self::Family(p) => Self::Family(p.validated()?),
            Self::General(p) => Self::General(p.validated()?),
        })
    }

    /// Correlation tensor of ρ_out(ẑ).
    pub fn correlation_tensor_z(&self) -> [[T; 3]; 3] {
        match self {
            Self::Family(p) => p.correlation_tensor(BlochVector::unit_z()),
            Self::General(p) => p.t,
        }
    }
}

impl<T: Real> CovariantCloner<T> for AnyClonerParams<T> {
    fn output_z(&self) -> Result<TwoQubitState<T>> {
        match self {
            Self::Family(p) => p.output_z(),
            Self::General(p) => p.output_z(),
        }
    }

    fn eta(&self) -> T {
        match self {
            Self::Family(p) => p.eta,
            Self::General(p) => p.eta,
        }
    }
}

/// ¼ (𝟙 + η(m·σ⊗𝟙 + 𝟙⊗m·σ) + Σ t_jk σ_j⊗σ_k) for a unit `m`, with `t` taken
/// in the lab frame as given.
pub fn general_output_state<T: Real>(
    p: &GeneralClonerParams<T>,
    m: BlochVector<T>,
) -> Result<TwoQubitState<T>> {
    let m = m.require_unit()?;
    let shrunk = m.scaled(p.eta).to_array();
    let coeffs = PauliCoefficients {
        c00: T::one(),
        a: shrunk,
        b: shrunk,
        t: p.t,
    };
    TwoQubitState::new(coeffs.to_matrix())
}

/// The explicit 4×4 matrix of ρ_out(↑) for the constrained family, basis order
/// |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩:
///
/// ```text
/// ¼ [ 1+2η+t      0            0         0      ]
///   [   0        1−t      2t+2i·t_xy     0      ]
///   [   0     2t−2i·t_xy     1−t         0      ]
///   [   0         0            0      1−2η+t    ]
/// ```
pub fn output_state_z<T: Real>(p: &ClonerParams<T>) -> TwoQubitState<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let (eta, t, txy) = (p.eta, p.t, p.t_xy);
    let re = |v: T| Complex::new(v, T::zero());
    let mut m = Mat4::<T>::zeros();
    m[(0, 0)] = re(one + two * eta + t);
    m[(1, 1)] = re(one - t);
    m[(2, 2)] = re(one - t);
    m[(3, 3)] = re(one - two * eta + t);
    m[(1, 2)] = Complex::new(two * t, two * txy);
    m[(2, 1)] = Complex::new(two * t, -two * txy);
    TwoQubitState::from_matrix_unchecked(m.scale(T::lit(0.25)))
}

/// Conjugates a ρ_out(ẑ) by U⊗U, where U takes ẑ to `m`.
pub fn rotate_output<T: Real>(
    rho_z: &TwoQubitState<T>,
    m: BlochVector<T>,
) -> Result<TwoQubitState<T>> {
    let m = m.require_unit()?;
    let u = Rotation::taking_z_to(m).unitary;
    let uu = tensor(&u, &u);
    TwoQubitState::new(uu * *rho_z.matrix() * uu.adjoint())
}

/// max over α_k = 2πk/n of ‖[e^{iα m·σ} ⊗ e^{iα m·σ}, ρ]‖_F.
pub fn axial_covariance_residual<T: Real>(
    rho: &TwoQubitState<T>,
    m: BlochVector<T>,
    n_angles: usize,
) -> T {
    let n = n_angles.max(1);
    let generator = sigma_dot(m.to_array());
    let id = pauli_matrix::<T>(Pauli::I);
    (0..n)
        .map(|k| {
            let alpha = T::TAU() * T::lit(k as f64) / T::lit(n as f64);
            let w = id.scale(alpha.cos()) + generator.scale_complex(imag_unit::<T>() * alpha.sin());
            tensor(&w, &w).commutator(rho.matrix()).frobenius_norm()
        })
        .fold(T::zero(), T::max)
}

/// Deviation of a correlation tensor (for m = ẑ) from the axially covariant
/// form: max of |t_xx − t_yy|, |t_xy + t_yx|, |t_xz|, |t_zx|, |t_yz|, |t_zy|.
pub fn covariance_constraint_residual<T: Real>(t: &[[T; 3]; 3]) -> T {
    [
        t[0][0] - t[1][1],
        t[0][1] + t[1][0],
        t[0][2],
        t[2][0],
        t[1][2],
        t[2][1],
    ]
    .into_iter()
    .map(T::abs)
    .fold(T::zero(), T::max)
}

/// Trace distance between the two sides of
/// `ρ_out(a) + ρ_out(−a) = ρ_out(b) + ρ_out(−b)`.
///
/// The sides are the unnormalized sums (trace 2), so the value equals the
/// trace norm of the difference of the two averaged outputs. For a diagonal
/// tensor and axes (ẑ, x̂) it is `|t_zz − t_xx|`.
pub fn no_signaling_residual<T: Real, C: CovariantCloner<T> + ?Sized>(
    p: &C,
    axis_a: BlochVector<T>,
    axis_b: BlochVector<T>,
) -> Result<T> {
    let a = axis_a.require_unit()?;
    let b = axis_b.require_unit()?;
    let rho_z = p.output_z()?;
    let side = |m: BlochVector<T>| -> Result<Mat4<T>> {
        Ok(*rotate_output(&rho_z, m)?.matrix() + *rotate_output(&rho_z, -m)?.matrix())
    };
    half_trace_norm(&(side(a)? - side(b)?))
}

/// Largest [`no_signaling_residual`] over the given axis pairs.
pub fn max_no_signaling_residual<T: Real, C: CovariantCloner<T> + ?Sized>(
    p: &C,
    pairs: &[(BlochVector<T>, BlochVector<T>)],
) -> Result<T> {
    pairs.iter().try_fold(T::zero(), |acc, &(a, b)| {
        Ok(acc.max(no_signaling_residual(p, a, b)?))
    })
}

/// The four eigenvalues of ρ_out(↑) in closed form, in the order
/// `(1+2η+t)/4, (1−2η+t)/4, (1−t+2√(t²+t_xy²))/4, (1−t−2√(t²+t_xy²))/4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct PositivityEigenvalues<T> {
    pub lam1: T,
    pub lam2: T,
    pub lam3: T,
    pub lam4: T,
}

impl<T: Real> PositivityEigenvalues<T> {
    pub fn to_array(&self) -> [T; 4] {
        [self.lam1, self.lam2, self.lam3, self.lam4]
    }

    pub fn sorted_desc(&self) -> [T; 4] {
        let mut v = self.to_array();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        v
    }

    pub fn min(&self) -> T {
        self.to_array().into_iter().fold(T::infinity(), T::min)
    }

    pub fn sum(&self) -> T {
        self.to_array().into_iter().sum()
    }
}

pub fn positivity_eigenvalues<T: Real>(p: &ClonerParams<T>) -> PositivityEigenvalues<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let quarter = T::lit(0.25);
    let root = p.t.hypot(p.t_xy);
    PositivityEigenvalues {
        lam1: (one + two * p.eta + p.t) * quarter,
        lam2: (one - two * p.eta + p.t) * quarter,
        lam3: (one - p.t + two * root) * quarter,
        lam4: (one - p.t - two * root) * quarter,
    }
}

/// (1 + η)/2.
pub fn clone_fidelity<T: Real>(p: &ClonerParams<T>) -> T {
    (T::one() + p.eta) * T::lit(0.5)
}
